#!/usr/bin/env python3
"""Prime-field cross-validation: rerun the key classifications over F_p
(p = 1 mod 8 so every needed root of unity exists) and diff the dimension
results against the rational/cyclotomic runs."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hopflab.precartier import classify
from hopflab.scalars import FieldSpec

CASES = [
    ("en:2", "en-a:[[1,0],[0,1]]"),
    ("h8", "h8pm:+1,-1"),
    ("h8", "h8omega:z8"),
    ("radford:2,2", None),
]

DIM_KEYS = ("precartier", "cartier", "z1", "z2", "b2", "h2")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=97)
    args = ap.parse_args()
    fp = FieldSpec("prime", p=args.prime)

    bad = 0
    for family, rtext in CASES:
        exact = classify(family, rtext)
        modp = classify(family, rtext, fp)
        diffs = {
            k: (exact.dims.get(k), modp.dims.get(k))
            for k in DIM_KEYS
            if exact.dims.get(k) != modp.dims.get(k)
        }
        mark = "ok" if not diffs else "DIFF"
        if diffs:
            bad += 1
        print(f"{mark:5s} {family:12s} r={rtext}  {exact.field} vs {modp.field}  dims={modp.dims}"
              + (f"  differences: {diffs}" if diffs else ""))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
