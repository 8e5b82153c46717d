#!/usr/bin/env python3
"""Build the 27-dimensional finitely correlated construction from the
commuting words 112/112/112 on the flip + two 3-cycles graph, decompose
it, and write the atomic graph as DOT.

    python scripts/build_27dim.py [out.dot]
"""

import sys

from polygraph import catalog
from polygraph.groupcons import (
    decompose,
    from_commuting_words,
    full_symmetry_subgroup,
    to_dot,
)

P = catalog.flip_cycle_cycle_3graph()
words = [tuple((i, int(ch)) for ch in "112") for i in (1, 2, 3)]
gc = from_commuting_words(P, words)
print(f"dimension {gc.dimension}, symmetry order {len(full_symmetry_subgroup(gc))}")
rep = decompose(gc)
print(f"{len(rep.summands)} irreducible summands of dimensions {sorted(set(rep.dimensions))}")
for n, s in enumerate(rep.summands):
    consts = [sorted(set(row))[0] for row in s.alpha]
    print(f"  summand {n}: dim {s.dimension}, constants "
          + ", ".join(f"{c.numerator}/{c.denominator}" for c in consts))

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(to_dot(gc) + "\n")
    print(f"wrote {sys.argv[1]}")
