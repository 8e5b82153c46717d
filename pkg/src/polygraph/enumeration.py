"""Exhaustive generation of presentations and classification up to isomorphism.

An isomorphism of single-vertex k-graphs is a color permutation pi
(allowed only between colors of equal multiplicity) together with one
index relabeling per color, carrying the commutation tables of one
presentation onto the other.  Classification is by brute-force orbit
canonicalization: the class representative is the presentation whose
flattened table encoding is lexicographically least over the relabeling
orbit.  Everything here is desk scale (the search space is guarded by an
explicit budget).
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .kgraph import Presentation, PresentationError, Theta, validate_presentation

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"search space of {needed} tables exceeds budget {budget}")


def _env_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get("POLYGRAPH_BUDGET", DEFAULT_BUDGET))


Encoding = tuple[tuple[tuple[int, int], ...], ...]
# per color pair (sorted), the flattened table; together with (k, m) this
# pins the presentation.


def _encode(P: Presentation) -> Encoding:
    return tuple(flat for _, _, flat in P.theta)


def _tables_from_encoding(k: int, enc: Encoding) -> dict[tuple[int, int], tuple]:
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return dict(zip(pairs, enc))


def _all_tables(m_i: int, m_j: int) -> list[dict]:
    """Every permutation of {1..m_i} x {1..m_j}, in lexicographic order of
    the flattened value sequence."""
    domain = [(s, t) for s in range(1, m_i + 1) for t in range(1, m_j + 1)]
    return [dict(zip(domain, values)) for values in itertools.permutations(domain)]


def count_candidate_tables(m: Sequence[int]) -> int:
    k = len(m)
    total = 1
    for i in range(k):
        for j in range(i + 1, k):
            total *= math.factorial(m[i] * m[j])
    return total


def enumerate_presentations(m: Sequence[int], budget: int | None = None,
                            jobs: int = 1) -> Iterator[Presentation]:
    """Yield every valid presentation with multiplicities m exactly once,
    in lexicographic order of the flattened tables.

    Raises BudgetExceeded when the raw table count is above the budget
    (overridable via the POLYGRAPH_BUDGET environment variable).
    """
    m = tuple(m)
    k = len(m)
    budget = _env_budget(budget)
    needed = count_candidate_tables(m)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    per_pair = [_all_tables(m[i - 1], m[j - 1]) for (i, j) in pairs]
    if jobs > 1 and len(per_pair) >= 1 and len(per_pair[0]) > 1:
        yield from _enumerate_parallel(k, m, pairs, per_pair, jobs)
        return
    for combo in itertools.product(*per_pair):
        theta: Theta = dict(zip(pairs, combo))
        try:
            yield validate_presentation(k, m, theta)
        except PresentationError:
            continue


def _check_partition(args) -> list[Encoding]:
    k, m, pairs, first_index, rest_tables = args
    first = _all_tables(m[pairs[0][0] - 1], m[pairs[0][1] - 1])[first_index]
    out = []
    for combo in itertools.product(*rest_tables):
        theta = dict(zip(pairs, (first,) + combo))
        try:
            out.append(_encode(validate_presentation(k, m, theta)))
        except PresentationError:
            continue
    return out


def _enumerate_parallel(k, m, pairs, per_pair, jobs) -> Iterator[Presentation]:
    # Partition the search on the first pair's table; workers validate
    # independently and results are re-ordered deterministically.
    tasks = [(k, m, pairs, idx, per_pair[1:]) for idx in range(len(per_pair[0]))]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_check_partition, tasks):
            for enc in chunk:
                yield presentation_from_encoding(k, m, enc)


def presentation_from_encoding(k: int, m: tuple[int, ...], enc: Encoding) -> Presentation:
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    theta: Theta = {}
    for (i, j), flat in zip(pairs, enc):
        mj = m[j - 1]
        theta[(i, j)] = {(s, t): flat[(s - 1) * mj + (t - 1)]
                         for s in range(1, m[i - 1] + 1) for t in range(1, mj + 1)}
    return validate_presentation(k, m, theta)


@dataclass(frozen=True)
class Relabeling:
    """A candidate isomorphism: color permutation + per-color index maps.

    color_perm[i-1] is the image color of i; index_maps[i-1] maps old
    index s (of old color i) to the new index, 1-based tuples.
    """

    color_perm: tuple[int, ...]
    index_maps: tuple[tuple[int, ...], ...]

    def image_color(self, i: int) -> int:
        return self.color_perm[i - 1]

    def image_index(self, i: int, s: int) -> int:
        return self.index_maps[i - 1][s - 1]


def relabeling_group(m_src: Sequence[int], m_dst: Sequence[int] | None = None
                     ) -> Iterator[Relabeling]:
    """All color permutations carrying multiplicities m_src onto m_dst
    (m_src itself by default), with all per-color index relabelings."""
    if m_dst is None:
        m_dst = m_src
    k = len(m_src)
    for perm in itertools.permutations(range(1, k + 1)):
        if any(m_dst[perm[i] - 1] != m_src[i] for i in range(k)):
            continue
        index_choices = [list(itertools.permutations(range(1, m_src[i] + 1))) for i in range(k)]
        for maps in itertools.product(*index_choices):
            yield Relabeling(tuple(perm), tuple(maps))


def apply_relabeling(P: Presentation, rel: Relabeling) -> Presentation:
    """The presentation with every relation of P rewritten through rel.

    For colors i < j with images i' = pi(i), j' = pi(j):
      theta_ij(s,t) = (s',t')  becomes
        theta'_{i'j'}(rho_i s, rho_j t) = (rho_i s', rho_j t')   if i' < j'
        theta'_{j'i'}(rho_j t', rho_i s') = (rho_j t, rho_i s)   if i' > j'.
    """
    k, m = P.k, P.m
    m_new = [0] * k
    for i in range(1, k + 1):
        m_new[rel.image_color(i) - 1] = m[i - 1]
    new_theta: Theta = {(i, j): {} for i in range(1, k + 1) for j in range(i + 1, k + 1)}
    for (i, j), flat in P._pairs():
        mj = m[j - 1]
        ii, jj = rel.image_color(i), rel.image_color(j)
        for s in range(1, m[i - 1] + 1):
            for t in range(1, mj + 1):
                s2, t2 = flat[(s - 1) * mj + (t - 1)]
                a, b = rel.image_index(i, s), rel.image_index(j, t)
                a2, b2 = rel.image_index(i, s2), rel.image_index(j, t2)
                if ii < jj:
                    new_theta[(ii, jj)][(a, b)] = (a2, b2)
                else:
                    new_theta[(jj, ii)][(b2, a2)] = (b, a)
    return validate_presentation(k, tuple(m_new), new_theta)


def are_isomorphic(P1: Presentation, P2: Presentation) -> Relabeling | None:
    """A relabeling carrying P1 onto P2, if one exists."""
    if P1.k != P2.k or sorted(P1.m) != sorted(P2.m):
        return None
    target = _encode(P2)
    for rel in relabeling_group(P1.m, P2.m):
        mapped = apply_relabeling(P1, rel)
        if _encode(mapped) == target:
            return rel
    return None


def canonical_form(P: Presentation) -> tuple[Presentation, Relabeling]:
    """The lexicographically least relabeled copy of P, with the witness."""
    best: tuple[Encoding, Relabeling] | None = None
    for rel in relabeling_group(P.m):
        mapped = apply_relabeling(P, rel)
        if mapped.m != P.m:
            continue
        enc = _encode(mapped)
        if best is None or enc < best[0]:
            best = (enc, rel)
    assert best is not None
    return presentation_from_encoding(P.k, P.m, best[0]), best[1]


@dataclass(frozen=True)
class IsoClass:
    """An isomorphism class from an enumeration sweep."""

    representative: Presentation
    size: int
    relabeling: Relabeling  # witness mapping the first-seen member onto the representative


def isomorphism_classes(presentations: Iterable[Presentation]) -> list[IsoClass]:
    """Partition presentations by isomorphism (orbit canonicalization).

    Input elements are assumed pairwise distinct; class sizes sum to the
    input count.  Classes are returned sorted by representative encoding.
    """
    buckets: dict[Encoding, list] = {}
    reps: dict[Encoding, tuple[Presentation, Relabeling]] = {}
    for P in presentations:
        canon, rel = canonical_form(P)
        enc = _encode(canon)
        if enc not in buckets:
            buckets[enc] = []
            reps[enc] = (canon, rel)
        buckets[enc].append(P)
    out = []
    for enc in sorted(buckets):
        canon, rel = reps[enc]
        out.append(IsoClass(representative=canon, size=len(buckets[enc]), relabeling=rel))
    return out
