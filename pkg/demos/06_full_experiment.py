"""The end-to-end experiment on the shipped toy corpus.

Trains the {word,char} x {unk,discard} matrix, attacks the negative test
sentences under both masks, and prints the accuracy / attack-success
table plus the negativity collapse. Writes report files to
./experiment_output. Run:

    python demos/06_full_experiment.py
"""
from zwlab import emit_report, load_toy_corpus, run_experiment, split_corpus

corpus = load_toy_corpus()
train, valid, test = split_corpus(corpus, seed=42)
print(f"corpus: {len(corpus)} sentences -> {len(train)}/{len(valid)}/{len(test)} split")

report = run_experiment(train, valid, test, seed=42)
sizes = report.corpus_sizes
print(f"attackable negative test sentences: {sizes['real']} (mask corpora aligned 1:1)")

print()
header = f"{'config':<22}{'acc(test)':>10}{'asp real':>10}{'asp mask1':>10}{'asp mask2':>10}"
print(header)
print("-" * len(header))
for conf in report.configurations:
    print(
        f"{conf.config:<22}{conf.acc_test:>10.2f}{conf.asp_real:>10.2f}"
        f"{conf.asp_mask1:>10.2f}{conf.asp_mask2:>10.2f}"
    )

print()
print("negativity medians (the collapse and the recovery):")
for label in ("real", "mask1", "mask2", "sanitized"):
    print(f"  {label:<10} {report.negativity[label].median:.4f}")

paths = emit_report(report, "experiment_output", overwrite=True)
print()
print("report files:")
for path in paths:
    print("  ", path)
