"""polyglot-forge: compile, harmonize, clean, audit, and mix multilingual corpora."""

__version__ = "0.1.0"

from .records import BiRecord, LanguageTag, MonoRecord, PairLabel  # noqa: F401
