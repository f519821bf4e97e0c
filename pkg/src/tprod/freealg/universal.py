"""Relatively free algebra F<x1..xm>/T^(3), truncated to multidegree <= (1, ..., 1).

Truncation is the quotient by the ideal of words with a repeated letter, so
the result is still associative and satisfies [a, b, c] = 0.  Its basis is
indexed by letter subsets S: for each S we keep the words whose
standardization is a non-pivot column of the T^(3) span in P_|S|.
"""

from __future__ import annotations

from itertools import combinations

from ..algcore import FiniteAlgebra
from ..errors import GuardError, UsageError
from ..scalar import QQ, FieldSpec
from .multilinear import perm_index, perm_words, tideal_multilinear_span

MAX_VARS = 6


def universal_model(mvars: int, field: FieldSpec = QQ, max_vars: int = MAX_VARS,
                    check: bool = True) -> FiniteAlgebra:
    """The truncated relatively free algebra U on ``mvars`` generators."""
    if mvars < 0:
        raise UsageError("mvars must be >= 0")
    if mvars > max_vars:
        raise GuardError(f"universal model on {mvars} generators exceeds guard {max_vars}")
    spans = {t: tideal_multilinear_span(3, t, field, max_degree=t) for t in range(1, mvars + 1)}
    # non-pivot standard words of each degree, in lex order
    reps = {0: [()]}
    for t, sp in spans.items():
        piv = set(sp.basis.pivots)
        reps[t] = [w for i, w in enumerate(perm_words(t)) if i not in piv]

    labels = []
    for t in range(mvars + 1):
        for S in combinations(range(1, mvars + 1), t):
            for w in reps[t]:
                labels.append(tuple(S[i - 1] for i in w))
    index = {w: i for i, w in enumerate(labels)}
    packed = field.p == 2

    def product(i, j):
        w = labels[i] + labels[j]
        if len(set(w)) < len(w):
            return 0 if packed else {}
        t = len(w)
        if t == 0:
            return 1 if packed else {0: field.one}
        letters = sorted(w)
        std = tuple(letters.index(a) + 1 for a in w)
        red = spans[t].basis.reduce({perm_index(t)[std]: field.one})
        words = perm_words(t)
        if packed:
            out = 0
            for k in red:
                out |= 1 << index[tuple(letters[a - 1] for a in words[k])]
            return out
        return {index[tuple(letters[a - 1] for a in words[k])]: c for k, c in red.items()}

    unit = 1 if packed else {0: field.one}
    gens = [(1 << index[(i,)]) if packed else {index[(i,)]: field.one} for i in range(1, mvars + 1)]
    return FiniteAlgebra(labels, product, field, unit, name=f"U_{mvars}", generators=gens, check=check)
