"""zwlab: invisible-codepoint injection attacks on text pipelines, and the defense.

The package covers the full loop: a curated zero-width codepoint set,
sentence manipulation that targets negative words, a transparent text
pipeline (tokenize / vocabulary / OOV policy / encode) where the
attack's effect is observable, linear classifiers to measure it, the
input-validation guard that neutralizes it, and an experiment harness
that ties everything together deterministically.
"""

__version__ = "0.1.0"

from .attack import (
    ManipulationRecord,
    MaskKind,
    PoisonStats,
    Target,
    can_manipulate,
    inject_word,
    manipulate,
    poison_corpus,
)
from .codepoints import (
    CHARSET_VERSION,
    ZeroWidthSet,
    contains_invisible,
    format_codepoint,
    is_invisible,
    strip_invisible,
    zero_width_set,
)
from .defense import (
    DetectionHit,
    DetectionReport,
    GuardPolicy,
    Rejection,
    detect,
    discrepancy_probe,
    guard,
)
from .errors import DataError, StateError
from .harness import (
    Corpus,
    CorpusFormat,
    CorpusItem,
    ExperimentReport,
    emit_report,
    load_corpus,
    load_toy_corpus,
    make_toy_corpus,
    run_experiment,
    save_corpus,
    split_corpus,
    toy_corpus_path,
)
from .lexicon import (
    SentimentLexicon,
    load_lexicon,
    load_lexicon_file,
    sentence_negativity,
    starter_lexicon,
    stem,
    word_is_negative,
)
from .metrics import ScoreDistribution, asp, bleu4, jaccard, summarize
from .models import (
    AttackReport,
    FeatureSpec,
    LinearModel,
    Prediction,
    TrainConfig,
    attack_success,
    build_feature_spec,
    evaluate_accuracy,
    featurize,
    load_model,
    logistic_loss_and_grad,
    predict,
    save_model,
    train,
)
from .pipeline import (
    Count,
    Dense,
    Discard,
    IdfStats,
    Level,
    MapToUnk,
    OneHot,
    OovPolicy,
    Placeholders,
    PreprocessConfig,
    TfIdf,
    TokenizerSpec,
    Vocabulary,
    build_vocab,
    encode,
    fit_idf,
    index,
    load_vocab,
    preprocess,
    save_idf,
    save_vocab,
    tokenize,
)
