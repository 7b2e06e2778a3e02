"""Abductive explanations from cuttings of model classes and retraction operators."""

from .cutting import Cutting, build_lcr, build_lnr
from .errors import (AbductionError, InconsistentError, ParseError, UnsupportedError)
from .explain import Generic, Lcr, Lnr, Tableau, accepts, characterize, explains
from .pl import ModelSet, Signature, models, parse

__version__ = "0.1.0"

__all__ = [
    "AbductionError", "Cutting", "Generic", "InconsistentError", "Lcr", "Lnr", "ModelSet",
    "ParseError", "Signature", "Tableau", "UnsupportedError", "accepts", "build_lcr",
    "build_lnr", "characterize", "explains", "models", "parse",
]
