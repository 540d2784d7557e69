"""critfix: critic-guided repair learning on a toy token language."""

from .lang import (
    Critique,
    ErrorCategory,
    OutOfVocabularyError,
    Token,
    critic,
    seq_from_text,
    seq_to_text,
    vocabulary,
)
from .align import EditOp, align, alignment_cost, edit_distance

__all__ = [
    "Critique",
    "ErrorCategory",
    "OutOfVocabularyError",
    "Token",
    "critic",
    "seq_from_text",
    "seq_to_text",
    "vocabulary",
    "EditOp",
    "align",
    "alignment_cost",
    "edit_distance",
]
