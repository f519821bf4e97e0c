"""Print dim L_k for a list of finite algebras (lower central chain table).

    python3 scripts/chain_table.py grassmann:4 grassmann:4,2 groupquot:2,2 --limit 6
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from tprod.algcore import lie_chain
from tprod.scalar import FieldSpec
from tprod.verifier.algebras import build_algebra

DEFAULT_SPECS = ["grassmann:3", "grassmann:4", "grassmann:4,2", "grassmann:5,2", "universal:3"]


@dataclass
class ChainConfig:
    specs: list[str] = field(default_factory=lambda: list(DEFAULT_SPECS))
    limit: int = 6
    field: str = "q"


def parse_args(argv=None) -> ChainConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("specs", nargs="*", default=list(DEFAULT_SPECS))
    ap.add_argument("--limit", type=int, default=ChainConfig.limit)
    ap.add_argument("--field", default=ChainConfig.field)
    return ChainConfig(**vars(ap.parse_args(argv)))


def main(argv=None) -> int:
    cfg = parse_args(argv)
    f = FieldSpec.parse(cfg.field)
    head = ["algebra", "dim"] + [f"L{k}" for k in range(2, cfg.limit + 1)] + ["class"]
    rows = []
    for spec in cfg.specs:
        A = build_algebra(spec, f if not spec.startswith("groupquot") else FieldSpec(2))
        ch = lie_chain(A, cfg.limit)
        dims = ch.dims + [0] * (cfg.limit - len(ch.dims)) if ch.reached_zero else ch.dims
        cells = [str(x) for x in dims] + ["?"] * (cfg.limit - len(dims))
        rows.append([spec] + cells + [str(ch.class_bound) if ch.class_bound is not None else f">={cfg.limit}"])
    widths = [max(len(r[i]) for r in rows + [head]) for i in range(len(head))]
    for r in [head] + rows:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
