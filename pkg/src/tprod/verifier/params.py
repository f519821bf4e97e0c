"""The integers attached to an m-list: N_k, N_{k,l} and r."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from ..errors import UsageError


@dataclass(frozen=True)
class Params:
    m: tuple
    N: int  # sum of m_i
    k: int
    ell: int  # number of odd m_i
    N_k: int
    N_kl: int
    r: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["m"] = list(self.m)
        return d


def params(m: Sequence[int]) -> Params:
    m = tuple(int(x) for x in m)
    if not m:
        raise UsageError("m must be nonempty")
    if any(x < 1 for x in m):
        raise UsageError(f"all m_i must be positive, got {m}")
    total = sum(m)
    k = len(m)
    ell = sum(1 for x in m if x % 2)
    N_k = total - k + 1
    N_kl = total - 2 * k + ell + 2
    r = total - 2 * k + ell
    assert N_kl == N_k - (k - ell - 1)
    assert r == N_kl - 2
    assert r % 2 == 0, r
    return Params(m, total, k, ell, N_k, N_kl, r)


def parse_m(text: str) -> tuple:
    try:
        m = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"bad m-list {text!r}; expected e.g. 3,2") from None
    params(m)
    return m
