#!/usr/bin/env python3
"""Count valid presentations and isomorphism classes for small
multiplicity vectors.

    python scripts/census.py 2,2 2,2,2
"""

import sys
import time

from polygraph.enumeration import enumerate_presentations, isomorphism_classes


def census(m):
    t0 = time.time()
    presentations = list(enumerate_presentations(m))
    classes = isomorphism_classes(presentations)
    dt = time.time() - t0
    sizes = sorted(c.size for c in classes)
    print(f"m={list(m)}: {len(presentations)} valid presentations, "
          f"{len(classes)} classes (orbit sizes {sizes}) [{dt:.1f}s]")


if __name__ == "__main__":
    args = sys.argv[1:] or ["2,2", "2,2,2"]
    for arg in args:
        census(tuple(int(x) for x in arg.split(",")))
