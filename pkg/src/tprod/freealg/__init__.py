"""The free unital associative algebra F<X> and its commutator ideals."""

from .multilinear import (
    ContainmentReport,
    MultilinearSpan,
    NonContainmentReport,
    canonical_witness,
    product_ideal_multilinear_span,
    tideal_multilinear_span,
    verify_containment,
    verify_noncontainment,
)
from .parser import ParseError, parse
from .poly import FreePoly, commutator, word_key, x
from .universal import universal_model

__all__ = [
    "ContainmentReport", "FreePoly", "MultilinearSpan", "NonContainmentReport", "ParseError",
    "canonical_witness", "commutator", "parse", "product_ideal_multilinear_span",
    "tideal_multilinear_span", "universal_model", "verify_containment", "verify_noncontainment",
    "word_key", "x",
]
