"""Exception types shared across modules."""


class DataError(ValueError):
    """Malformed external input (corpus files, lexicon files, model files)."""


class StateError(RuntimeError):
    """An operation was invoked before its required state was prepared."""
