"""Exact and arbitrary-precision tools for the continued fraction of e^x E1(x)."""

from .errors import (
    DomainError,
    IdentityError,
    NoConvergence,
    ParseError,
    PrecisionExhausted,
    PrimeTooLarge,
    QDBreakdown,
    SingularCurve,
)
from .numeval import BigReal, EvalReport
from .polys import LaurentPoly, RatPoly
from .seriesqd import CoeffSeq, FactorialSeq

__version__ = "0.1.0"
