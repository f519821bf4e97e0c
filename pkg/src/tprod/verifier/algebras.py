"""Parse algebra specs such as ``grassmann:4,2`` into finite algebras."""

from __future__ import annotations

from ..algcore import FiniteAlgebra, tensor
from ..errors import UsageError
from ..scalar import FieldSpec

FAMILIES = ("grassmann", "groupquot", "universal")


def _factor(family: str, n: int, field: FieldSpec) -> FiniteAlgebra:
    if family == "grassmann":
        from ..grassmann import as_finite_algebra

        return as_finite_algebra(n, field)
    if family == "groupquot":
        if field.p != 2:
            raise UsageError("groupquot algebras live over fp:2")
        from ..grouplie import quotient_algebra

        return quotient_algebra(n)
    from ..freealg import universal_model

    return universal_model(n, field)


def build_algebra(spec: str, field: FieldSpec) -> FiniteAlgebra:
    """``family:S`` gives one factor, ``family:S,R`` the tensor product of two."""
    family, sep, rest = spec.partition(":")
    if not sep or family not in FAMILIES:
        raise UsageError(f"bad algebra spec {spec!r}; expected one of "
                         + ", ".join(f"{f}:S[,R]" for f in FAMILIES))
    try:
        sizes = [int(t) for t in rest.split(",")]
    except ValueError:
        raise UsageError(f"bad sizes in algebra spec {spec!r}") from None
    if not 1 <= len(sizes) <= 2 or any(s < 0 for s in sizes):
        raise UsageError(f"algebra spec {spec!r} needs one or two nonnegative sizes")
    factors = [_factor(family, s, field) for s in sizes]
    if len(factors) == 1:
        return factors[0]
    return tensor(*factors)
