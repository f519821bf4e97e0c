"""Named, reproducible checks and the reports they produce.

Each :class:`Scenario` is bound to one anchor (a statement being checked,
listed in :data:`ANCHORS`) and one verdict kind.  A scenario's runner
returns ``(outcome, evidence)``; the verdict is ``verified`` when the
outcome is true and ``refuted`` otherwise, and a scenario is *as claimed*
when its verdict equals ``expect``.  Negative controls carry
``expect="refuted"``.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable

from ..algcore import DEFAULT_SEED, lie_chain, tensor
from ..errors import GuardError, PreconditionError, UsageError
from ..scalar import FieldSpec
from .params import params

EXPECTS = ("verified", "refuted", "any")  # "any": informational query
KINDS = ("containment", "non-containment", "identity", "vanishing", "witness")

# anchor id -> short statement; the coverage test checks that every anchor
# has at least one scenario in the default suite
ANCHORS: dict[str, str] = {
    "commutator-ideal": "T^(n) is spanned by products u*[a1..an]*v; membership is decided per multilinear component",
    "parameters": "N_{k,l} = N_k - (k - l - 1), r = N_{k,l} - 2 and r is even",
    "product-m+n-2": "T^(m) T^(n) is contained in T^(m+n-2)",
    "product-m+n-1": "T^(m) T^(n) is contained in T^(m+n-1) if m or n is odd (1/3 in F)",
    "product-all-odd": "T^(m1)...T^(mk) is contained in T^(N_k) when every m_i is odd",
    "product-some-odd": "T^(m1)...T^(mk) is contained in T^(N_{k,l}) when l of the m_i are odd",
    "sharp-all-odd": "T^(m1)...T^(mk) is not contained in T^(1+N_k)",
    "sharp-general": "T^(m1)...T^(mk) is not contained in T^(1+N_{k,l})",
    "witness-class": "the witness algebras are Lie nilpotent of class at most N_{k,l}",
    "tensor-commutator": "closed form for [g1 (x) h1, ..., g_l (x) h_l] when G, H have class <= 2",
    "tensor-vanishing": "if n-fold products of commutators vanish in H then L_{2n+1}(G (x) H) = 0",
    "tensor-unit-ends": "product formulas for commutators starting (and for even length ending) in G (x) 1",
    "grassmann-witness": "the commutator product in E_N (x) E_r equals +-2^(N_k-1) e_1..e_N (x) e_1..e_r",
    "group-normal-form": "every element of G_r is uniquely y^a prod (y_i, y_j)^b",
    "group-dij": "d_ij = (y_i, y_j) + 1 is central with d_ii = 0 and d_ij = d_ji",
    "group-ideal": "the ideal generated by S is proper and contains every element of S",
    "group-ideal-lie": "[u1, u2, u3] lies in I for all u_i in F G",
    "group-ideal-distinct": "d_{i1 i2}...d_{i(2l-1) i(2l)} is outside I when the indices are distinct",
    "group-witness": "the commutator product in F G_N / I (x) F G_r / I_r is nonzero",
    "char3-failure": "T^(3) T^(2) is not contained in T^(4) in characteristic 3",
    "triple-odd-any-field": "T^(3) T^(3) is contained in T^(5) in every characteristic",
    "alt-witness-algebra": "F<X>/T^(3) (truncated) satisfies [a, b, c] = 0",
}


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    anchor: str
    claim: str
    parameters: dict
    runner: Callable[[dict], tuple[bool, dict]]
    expect: str = "verified"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.anchor not in ANCHORS:
            raise ValueError(f"unknown anchor {self.anchor!r}")
        if self.expect not in EXPECTS:
            raise ValueError(f"expect must be one of {EXPECTS}")

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "anchor": self.anchor,
                "claim": self.claim, "expect": self.expect}


@dataclass
class Report:
    scenario: dict
    parameters: dict
    verdict: str  # verified | refuted | skipped
    evidence: dict
    timing: float
    seed: int | None

    @property
    def as_claimed(self) -> bool | None:
        """None for skipped scenarios."""
        if self.verdict == "skipped":
            return None
        return self.scenario["expect"] in ("any", self.verdict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {"scenario": self.scenario, "parameters": self.parameters, "verdict": self.verdict,
             "evidence": self.evidence, "timing": self.timing, "seed": self.seed}
        if not timing:
            del d["timing"]
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _jsonable(x):
    if isinstance(x, FieldSpec):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def run(scenario: Scenario) -> Report:
    """Execute one scenario; guard and precondition violations become skips."""
    p = scenario.parameters
    t0 = time.perf_counter()
    try:
        outcome, evidence = scenario.runner(p)
        verdict = "verified" if outcome else "refuted"
    except (GuardError, PreconditionError) as e:
        verdict, evidence = "skipped", {"reason": str(e)}
    return Report(scenario.describe(), _jsonable(p), verdict, _jsonable(evidence),
                  round(time.perf_counter() - t0, 3), p.get("seed"))


# ---------------------------------------------------------------- runners

def _field(p: dict) -> FieldSpec:
    f = p.get("field", "q")
    return f if isinstance(f, FieldSpec) else FieldSpec.parse(f)


def run_containment(p: dict) -> tuple[bool, dict]:
    from ..freealg import verify_containment

    rep = verify_containment(p["m"], p["target"], p["degree"], _field(p), p.get("max_degree"))
    ev = {"target_rank": rep.target_rank, "generators_checked": rep.generators_checked,
          "counterexample": None if rep.counterexample is None else str(rep.counterexample)}
    return rep.holds, ev


def run_noncontainment(p: dict) -> tuple[bool, dict]:
    from ..freealg import verify_noncontainment

    rep = verify_noncontainment(p["m"], p["target"], _field(p), p.get("max_degree"))
    ev = {"witness": str(rep.witness), "degree": sum(rep.m), "target_rank": rep.target_rank,
          "target_codim": rep.target_codim}
    return rep.witness_outside, ev


def run_membership(p: dict) -> tuple[bool, dict]:
    """``cases`` is a list of (n, degree, expr, expected membership or None)."""
    from ..freealg import parse, tideal_multilinear_span

    f = _field(p)
    rows = []
    ok = True
    for n, deg, expr, want in p["cases"]:
        span = tideal_multilinear_span(n, deg, f, p.get("max_degree"))
        poly = parse(expr, f)
        if not poly.is_multilinear(deg):
            raise UsageError(f"{expr!r} is not multilinear of degree {deg}")
        got = span.contains(poly)
        rows.append({"n": n, "degree": deg, "expr": expr, "member": got,
                     "normal_form": str(span.reduce(poly)), "rank": span.rank})
        if want is not None and got != want:
            ok = False
    return ok, {"cases": rows}


def run_parameters(p: dict) -> tuple[bool, dict]:
    rng = random.Random(p["seed"])
    for _ in range(p["samples"]):
        k = rng.randint(1, p["max_k"])
        params([rng.randint(1, p["max_mi"]) for _ in range(k)])  # asserts the identities
    examples = {",".join(map(str, m)): params(m).as_dict() for m in p["examples"]}
    ok = all(params(m).as_dict()[key] == val for m, want in p["expected"] for key, val in want.items())
    return ok, {"samples": p["samples"], "examples": examples}


def run_lie_class(p: dict) -> tuple[bool, dict]:
    from .algebras import build_algebra

    A = build_algebra(p["algebra"], _field(p))
    ch = lie_chain(A, p["limit"])
    return ch.vanishes_at(p["limit"]), {"dim": A.dim, "chain": ch.dims, "class_bound": ch.class_bound}


def _commutator_products_vanish(H, n: int) -> bool:
    """[f1, f2]...[f_{2n-1}, f_{2n}] = 0 on H, checked on basis brackets."""
    from itertools import product as cartesian

    brs = []
    for i in range(H.dim):
        for j in range(i + 1, H.dim):
            b = H.bracket(H.basis(i), H.basis(j))
            if b and b not in brs:
                brs.append(b)
    return all(not H.prod(*t) for t in cartesian(brs, repeat=n)) if brs else True


def run_tensor_vanishing(p: dict) -> tuple[bool, dict]:
    from ..grassmann import as_finite_algebra

    f = _field(p)
    G, H = as_finite_algebra(p["s"], f), as_finite_algebra(p["r"], f)
    n = p["n"]
    hyp = _commutator_products_vanish(H, n)
    A = tensor(G, H)
    ch = lie_chain(A, 2 * n + 1)
    return hyp and ch.vanishes_at(2 * n + 1), {"hypothesis_holds": hyp, "chain": ch.dims}


def _identity_evidence(reps) -> list:
    return [{"name": r.name, "length": r.length, "mode": r.mode, "trials": r.trials,
             "failures": r.failures, "nonzero": r.nonzero} for r in reps]


def run_lemma_cl(p: dict) -> tuple[bool, dict]:
    from ..lemmas import check_lemma_cl

    f = _field(p)
    reps = []
    for length in p["lengths"]:
        G, H = _lemma_factors(p, length, f)
        reps.append(check_lemma_cl(G, H, length, p["trials"], p["mode"], p["seed"]))
    return all(r.holds for r in reps), {"checks": _identity_evidence(reps)}


def _lemma_factors(p: dict, length: int, f: FieldSpec):
    if p["mode"] == "generators":
        from ..freealg import universal_model

        U = universal_model(length, f)
        return U, U
    from ..grassmann import as_finite_algebra

    return as_finite_algebra(p["s"], f), as_finite_algebra(p["r"], f)


def run_unit_ends(p: dict) -> tuple[bool, dict]:
    from ..grassmann import as_finite_algebra
    from ..lemmas import check_corollary_nilp2

    f = _field(p)
    G, H = as_finite_algebra(p["s"], f), as_finite_algebra(p["r"], f)
    reps = []
    for pair in p["pairs"]:
        reps += check_corollary_nilp2(G, H, pair, p["trials"], "random", p["seed"])
    return all(r.holds for r in reps), {"checks": _identity_evidence(reps)}


def run_case1(p: dict) -> tuple[bool, dict]:
    from ..grassmann import case1_witness

    pairs = lambda key: None if p.get(key) is None else [tuple(x) for x in p[key]]  # noqa: E731
    rep = case1_witness(p["m"], _field(p), pairs("mu"), pairs("mu_prime"))
    ev = {"dims": rep.dims, "N_k": rep.N_k, "N_kl": rep.N_kl, "r": rep.r,
          "delta": rep.delta, "delta_prime": rep.delta_prime,
          "product": _labels(rep.product), "expected": _labels(rep.expected),
          "chain": rep.chain.dims, "lie_bound_certified": rep.lie_bound_certified}
    return rep.match and rep.nonzero and rep.lie_bound_certified, ev


def _labels(d: dict) -> dict:
    def show(lab):
        g, h = lab
        return "e" + "".join(map(str, g)) + " (x) e" + "".join(map(str, h))
    return {show(k): str(v) for k, v in d.items()}


def run_case2(p: dict) -> tuple[bool, dict]:
    from ..grouplie import case2_witness

    rep = case2_witness(p["m"], max_rank=p.get("max_rank"))
    ev = {"dims": rep.dims, "N_kl": rep.N_kl, "r": rep.r, "product_nonzero": rep.product_nonzero,
          "form_match": rep.form_match, "product_terms": rep.product_terms,
          "chain": rep.chain.dims, "lie_bound_certified": rep.lie_bound_certified}
    return rep.product_nonzero and rep.form_match and rep.lie_bound_certified, ev


def run_group_order(p: dict) -> tuple[bool, dict]:
    from ..grouplie import GroupElement, elements, group_mul

    rng = random.Random(p["seed"])
    orders = {}
    ok = True
    for r in range(p["max_r"] + 1):
        els = elements(r)
        codes = {g.code for g in els}
        want = 2 ** (r + r * (r - 1) // 2)
        orders[r] = len(codes)
        ok &= len(els) == len(codes) == want
        # words in the generators collect to their normal form consistently
        for _ in range(p["words"]):
            w = [GroupElement.y(rng.randint(1, r), r) for _ in range(rng.randint(0, 8))] if r else []
            a = GroupElement(r, (), ())
            for g in w:
                a = group_mul(a, g)
            b = GroupElement(r, (), ())
            for g in reversed(w):
                b = group_mul(g, b)
            ok &= a == b
    return ok, {"orders": orders}


def run_group_dij(p: dict) -> tuple[bool, dict]:
    from ..grouplie import GroupAlgebraElement, GroupElement, d

    r = p["r"]
    ys = [GroupAlgebraElement.of(GroupElement.y(i, r)) for i in range(1, r + 1)]
    ok = True
    for i in range(1, r + 1):
        ok &= not d(i, i, r).bits
        for j in range(1, r + 1):
            dij = d(i, j, r)
            ok &= dij == d(j, i, r)
            ok &= all(dij * y == y * dij for y in ys)
    return ok, {"r": r}


def run_group_ideal(p: dict) -> tuple[bool, dict]:
    from ..grouplie import GroupAlgebraElement, build_ideal, s_generators, tables

    dims = {}
    ok = True
    for r in range(p["max_r"] + 1):
        I = build_ideal(r)
        ok &= all(s in I for s in s_generators(r))
        ok &= GroupAlgebraElement.one(r) not in I
        dims[r] = tables(r).order - I.dim
    return ok, {"quotient_dims": dims}


def run_group_ideal_lie(p: dict) -> tuple[bool, dict]:
    from ..grouplie import check_lemma_nilp22

    ok = check_lemma_nilp22(p["r"], p["trials"], p["seed"], terms=p.get("terms"))
    return ok, {"trials": p["trials"], "terms": p.get("terms")}


def run_group_distinct(p: dict) -> tuple[bool, dict]:
    from ..grouplie import build_ideal, d

    r = p["r"]
    I = build_ideal(r)
    outside = [list(ix) for ix in permutations(range(1, r + 1), 4)
               if d(ix[0], ix[1], r) * d(ix[2], ix[3], r) not in I]
    n_distinct = len(list(permutations(range(1, r + 1), 4)))
    inside = []
    for a, b, c in p["repeated"]:
        inside.append(d(a, c, r) * d(b, c, r) in I)
    ok = len(outside) == n_distinct and all(inside)
    return ok, {"distinct_outside": len(outside), "distinct_total": n_distinct,
                "repeated_inside": inside}


def run_alt_algebra(p: dict) -> tuple[bool, dict]:
    from ..freealg import universal_model

    U = universal_model(p["mvars"], _field(p))
    ch = lie_chain(U, 3)
    x1, x2, x3 = U.generators[:3]
    ok = ch.vanishes_at(3) and not U.commutator(x1, x2, x3) and bool(U.commutator(x1, x2))
    return ok, {"dim": U.dim, "chain": ch.dims}


# ---------------------------------------------------------------- registry

def _c(name, anchor, claim, m, target, degree, fld, expect="verified"):
    return Scenario(name, "containment", anchor, claim,
                    {"m": list(m), "target": target, "degree": degree, "field": fld},
                    run_containment, expect)


def _n(name, anchor, claim, m, target, fld="q"):
    return Scenario(name, "non-containment", anchor, claim,
                    {"m": list(m), "target": target, "field": fld}, run_noncontainment)


def default_scenarios() -> list[Scenario]:
    S = DEFAULT_SEED
    out = [
        Scenario("tideal-membership", "identity", "commutator-ideal",
                 "sample polynomials land in T^(n) exactly as predicted",
                 {"field": "q", "cases": [
                     [3, 3, "[x1,x2,x3]", True],
                     [2, 4, "[x1,x2]*[x3,x4]", True],
                     [3, 4, "[x1,x2]*[x3,x4]", False],
                     [3, 4, "[x1,x2]*[x3,x4] + [x1,x3]*[x2,x4]", True],
                     [3, 4, "x1*[x2,x3,x4]*1", True],
                     [4, 4, "[x1,x2,x3]*x4", False],
                 ]}, run_membership),
        Scenario("parameters", "identity", "parameters",
                 "N_{k,l} = N_k - (k-l-1), r = N_{k,l} - 2, r even",
                 {"seed": S, "samples": 200, "max_k": 5, "max_mi": 7,
                  "examples": [[2, 2], [3, 3], [2, 3]],
                  "expected": [[[2, 2], {"k": 2, "ell": 0, "N_k": 3, "N_kl": 2, "r": 0}],
                               [[3, 3], {"ell": 2, "N_k": 5, "N_kl": 6}],
                               [[2, 3], {"ell": 1, "N_k": 4, "N_kl": 4}]]},
                 run_parameters),
    ]
    for m, n, N in [(2, 2, 2), (3, 2, 3), (2, 3, 3), (3, 3, 4)]:
        for fld in ("q", "fp:5", "fp:2"):
            out.append(_c(f"product-m+n-2/{m},{n}/{fld}", "product-m+n-2",
                          f"T^({m})T^({n}) in T^({N}) at degree {m + n} over {fld}", (m, n), N, m + n, fld))
    out += [
        _c("product-m+n-1/3,2/q", "product-m+n-1", "T^(3)T^(2) in T^(4) at degree 5 over q",
           (3, 2), 4, 5, "q"),
        _c("char3-failure/3,2/fp:3", "char3-failure", "T^(3)T^(2) not in T^(4) at degree 5 over fp:3",
           (3, 2), 4, 5, "fp:3", expect="refuted"),
        _c("product-all-odd/3,3/q", "product-all-odd", "T^(3)T^(3) in T^(5) = T^(N_k) at degree 6 over q",
           (3, 3), 5, 6, "q"),
    ]
    for fld in ("fp:2", "fp:3"):
        out.append(_c(f"triple-odd/3,3/{fld}", "triple-odd-any-field",
                      f"T^(3)T^(3) in T^(5) at degree 6 over {fld}", (3, 3), 5, 6, fld))
    out.append(_c("product-some-odd/2,3/q", "product-some-odd",
                  "T^(2)T^(3) in T^(4) = T^(N_{2,1}) at degree 5 over q", (2, 3), 4, 5, "q"))
    for m, target in [((2,), 3), ((2, 2), 3), ((2, 3), 5), ((4,), 5)]:
        ms = ",".join(map(str, m))
        out.append(_n(f"sharp-general/{ms}", "sharp-general",
                      f"canonical witness for m=({ms}) is outside T^({target}) = T^(1+N_kl)", m, target))
    out.append(_n("sharp-all-odd/3,3", "sharp-all-odd",
                  "[x1,x2,x3][x4,x5,x6] is outside T^(6) = T^(1+N_k)", (3, 3), 6))
    for spec, limit in [("grassmann:4", 3), ("grassmann:5,2", 5), ("grassmann:4,2", 5)]:
        out.append(Scenario(f"witness-class/{spec}", "vanishing", "witness-class",
                            f"L_{limit}({spec}) = 0", {"algebra": spec, "limit": limit, "field": "q"},
                            run_lie_class))
    out += [
        Scenario("tensor-commutator/generators", "identity", "tensor-commutator",
                 "closed form holds on generators of the relatively free class-2 model",
                 {"mode": "generators", "lengths": [2, 3, 4, 5], "trials": 5, "seed": S, "field": "q"},
                 run_lemma_cl),
        Scenario("tensor-commutator/random", "identity", "tensor-commutator",
                 "closed form holds on random elements of E_3 (x) E_3",
                 {"mode": "random", "lengths": [2, 3, 4, 5], "trials": 100, "seed": S,
                  "s": 3, "r": 3, "field": "q"}, run_lemma_cl),
        # E_3 (x) E_3 kills most commutators of length >= 4; E_4 (x) E_4 does not
        Scenario("tensor-commutator/random-E4xE4", "identity", "tensor-commutator",
                 "closed form holds on random elements of E_4 (x) E_4 with nonzero sides",
                 {"mode": "random", "lengths": [2, 3, 4, 5], "trials": 100, "seed": S,
                  "s": 4, "r": 4, "field": "q"}, run_lemma_cl),
        Scenario("tensor-vanishing/E4xE2", "vanishing", "tensor-vanishing",
                 "products of 2 commutators vanish in E_2, so L_5(E_4 (x) E_2) = 0",
                 {"s": 4, "r": 2, "n": 2, "field": "q"}, run_tensor_vanishing),
        Scenario("tensor-unit-ends/E5xE4", "identity", "tensor-unit-ends",
                 "both product formulas hold on random elements of E_5 (x) E_4",
                 {"pairs": [[2, 3], [4, 5]], "trials": 100, "seed": S, "s": 5, "r": 4, "field": "q"},
                 run_unit_ends),
    ]
    for m in [(2, 2), (2, 3), (4,)]:
        ms = ",".join(map(str, m))
        out.append(Scenario(f"grassmann-witness/{ms}", "witness", "grassmann-witness",
                            f"closed-form product and L_(1+N_kl) = 0 for m=({ms})",
                            {"m": list(m), "field": "q"}, run_case1))
    out += [
        Scenario("group-normal-form", "identity", "group-normal-form",
                 "|G_r| = 2^(r + r(r-1)/2) and collection is consistent",
                 {"max_r": 4, "words": 50, "seed": S}, run_group_order),
        Scenario("group-dij", "identity", "group-dij", "d_ij central, d_ii = 0, d_ij = d_ji in F G_4",
                 {"r": 4}, run_group_dij),
        Scenario("group-ideal", "identity", "group-ideal", "S lies in I_r and 1 does not, r <= 4",
                 {"max_r": 4}, run_group_ideal),
        Scenario("group-ideal-lie", "identity", "group-ideal-lie", "[u1,u2,u3] in I_4 for random u_i",
                 {"r": 4, "trials": 100, "terms": 8, "seed": S}, run_group_ideal_lie),
        Scenario("group-ideal-distinct", "identity", "group-ideal-distinct",
                 "d_ab d_cd outside I_4 for distinct a,b,c,d; d_ac d_bc inside",
                 {"r": 4, "repeated": [[1, 2, 3], [1, 1, 2], [4, 2, 1]]}, run_group_distinct),
    ]
    for m in [(2,), (2, 2), (4,)]:
        ms = ",".join(map(str, m))
        out.append(Scenario(f"group-witness/{ms}", "witness", "group-witness",
                            f"nonzero product and L_(1+N_kl) = 0 over fp:2 for m=({ms})",
                            {"m": list(m), "field": "fp:2"}, run_case2))
    out.append(Scenario("alt-witness-algebra/U3", "vanishing", "alt-witness-algebra",
                        "L_3 of the truncated relatively free algebra on 3 letters is zero",
                        {"mvars": 3, "field": "q"}, run_alt_algebra))
    return out


REGISTRY: dict[str, Scenario] = {s.name: s for s in default_scenarios()}


def select(names: Iterable[str] | str = "all") -> list[Scenario]:
    """Look up scenarios by exact name or by prefix ("group-witness")."""
    if names == "all":
        return list(REGISTRY.values())
    if isinstance(names, str):
        names = [names]
    out = []
    for n in names:
        n = n.rstrip("/")
        hits = [s for s in REGISTRY.values() if s.name == n or s.name.startswith(n + "/")]
        if not hits:
            raise UsageError(f"unknown scenario {n!r}")
        out += [s for s in hits if s not in out]
    return out


def run_suite(names: Iterable[str] | str = "all", jobs: int = 1) -> list[Report]:
    scs = select(names)
    if jobs <= 1:
        return [run(s) for s in scs]
    with ProcessPoolExecutor(jobs) as ex:
        return list(ex.map(run, scs))


@dataclass
class SuiteSummary:
    reports: list = field(default_factory=list)

    @property
    def mismatches(self) -> list:
        return [r for r in self.reports if r.as_claimed is False]

    @property
    def skipped(self) -> list:
        return [r for r in self.reports if r.verdict == "skipped"]

    def exit_code(self) -> int:
        if self.mismatches:
            return 1
        return 2 if self.skipped else 0
