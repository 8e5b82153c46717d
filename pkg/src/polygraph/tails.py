"""Eventually periodic infinite tails and their window data.

An infinite tail is an infinite word using every color infinitely often;
here tails are the eventually periodic ones, stored as a finite preperiod
word plus a repeating block whose degree is strictly positive in every
coordinate.  The inductive-limit basis window attaches to each lattice
point n <= 0 the k-tuple of incoming letter indices sigma(n): coordinate
i is the last color-i letter of the unique prefix of degree -n + e_i.

Shift-tail equivalence (window data of one tail matching a translate of
the other's, below some threshold) is decided on a finite box sized from
the periods, the preperiods and the shift; the depth parameter scales the
box.  The symmetry search collects all small shifts under which a tail is
equivalent to itself and returns the lattice they generate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .intlinalg import hermite_normal_form, lattice_contains
from .kgraph import (
    Degree,
    Presentation,
    Word,
    check_word,
    deg_add,
    degree,
    extract_prefix,
    normal_form,
)


class InvalidTail(ValueError):
    """Rejected tail data (empty period or missing colors)."""


@dataclass(frozen=True)
class Tail:
    """preperiod . period . period . period ...  (words in normal form)."""

    presentation: Presentation
    preperiod: Word
    period: Word

    def __post_init__(self):
        P = self.presentation
        check_word(P, self.preperiod)
        check_word(P, self.period)
        dp = degree(P, self.period)
        if any(x < 1 for x in dp):
            raise InvalidTail(
                f"period degree {dp} must be >= 1 in every coordinate "
                "(every color must recur)")
        object.__setattr__(self, "preperiod", normal_form(P, self.preperiod))
        object.__setattr__(self, "period", normal_form(P, self.period))

    @property
    def preperiod_degree(self) -> Degree:
        return degree(self.presentation, self.preperiod)

    @property
    def period_degree(self) -> Degree:
        return degree(self.presentation, self.period)

    def unroll(self, target: Degree) -> Word:
        """A finite prefix word of degree >= target (componentwise)."""
        P = self.presentation
        pre, per = self.preperiod_degree, self.period_degree
        reps = 0
        for i in range(P.k):
            short = target[i] - pre[i]
            if short > 0:
                reps = max(reps, -(-short // per[i]))
        return normal_form(P, self.preperiod + self.period * reps)


def tail(P: Presentation, preperiod: Word, period: Word) -> Tail:
    return Tail(P, tuple(preperiod), tuple(period))


@dataclass(frozen=True)
class SigmaData:
    """Window data on the box -box <= n <= 0: values[n] = (t_1,...,t_k)."""

    box: Degree
    values: tuple[tuple[Degree, tuple[int, ...]], ...]

    def __getitem__(self, n: Degree) -> tuple[int, ...]:
        return dict(self.values)[n]

    def as_dict(self) -> dict[Degree, tuple[int, ...]]:
        return dict(self.values)


def sigma_data(t: Tail, box: Degree) -> SigmaData:
    """Window data of the tail on the box of lattice points -box <= n <= 0.

    For each n in the box and each color i, the value is the index of the
    last color-i letter of the degree (-n + e_i) prefix of the unrolled
    tail; unique factorization makes this well defined and independent of
    how far the tail is unrolled.
    """
    P = t.presentation
    word = t.unroll(deg_add(box, (1,) * P.k))
    values = {}
    for n in _box_points(box):
        values[n] = _sigma_at(P, word, n)
    return SigmaData(box=tuple(box), values=tuple(sorted(values.items())))


def _box_points(box: Degree):
    ranges = [range(0, -(b + 1), -1) for b in box]
    return itertools.product(*ranges)


def _sigma_at(P: Presentation, word: Word, n: Degree) -> tuple[int, ...]:
    minus_n = tuple(-x for x in n)
    out = []
    for i in range(1, P.k + 1):
        target = tuple(c + (1 if j == i - 1 else 0) for j, c in enumerate(minus_n))
        prefix, _ = extract_prefix(P, word, target)
        _, last = extract_prefix(P, prefix, minus_n)
        assert len(last) == 1 and last[0][0] == i
        out.append(last[0][1])
    return tuple(out)


@dataclass(frozen=True)
class EquivalenceTranscript:
    """Outcome of a finite-box shift-tail equivalence check."""

    shift: Degree
    equivalent: bool
    threshold: Degree
    bottom: Degree
    counterexample: Degree | None = None


def shift_tail_equivalent(t1: Tail, t2: Tail, p: Degree, depth: int = 2
                          ) -> EquivalenceTranscript:
    """Whether the window data satisfy sigma_1(n) = sigma_2(n + p) for all
    n <= threshold, tested down to a finite bottom.

    The threshold clears both preperiods and keeps n + p nonpositive; the
    tested region reaches depth * lcm(period degrees) below it.  Below the
    preperiods each data function repeats with its own period degree, so
    when the two tails share a period vector (in particular whenever
    t1 is t2) agreement on one full period slab propagates downward and
    the verdict is exact; for incommensurable periods it is a finite-box
    decision, refined by raising depth.
    """
    P = t1.presentation
    if t2.presentation != P:
        raise ValueError("tails over different presentations")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    pre1, pre2 = t1.preperiod_degree, t2.preperiod_degree
    per1, per2 = t1.period_degree, t2.period_degree
    threshold = tuple(-(max(a, b) + max(0, q)) for a, b, q in zip(pre1, pre2, p))
    bottom = tuple(t - depth * lcm(a, b) for t, a, b in zip(threshold, per1, per2))
    s1 = sigma_data(t1, tuple(-b for b in bottom)).as_dict()
    s2 = sigma_data(t2, tuple(-(b + q) for b, q in zip(bottom, p))).as_dict()
    for n in itertools.product(*[range(b, t + 1) for b, t in zip(bottom, threshold)]):
        if s2[deg_add(n, p)] != s1[n]:
            return EquivalenceTranscript(p, False, threshold, bottom, counterexample=n)
    return EquivalenceTranscript(p, True, threshold, bottom)


@dataclass(frozen=True)
class TailSymmetry:
    """Lower-bound symmetry lattice of a tail from a bounded shift search."""

    basis: tuple[tuple[int, ...], ...]
    bound: int
    depth: int
    generators: tuple[EquivalenceTranscript, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, p: Degree) -> bool:
        return lattice_contains(self.basis, p)


def tail_symmetry_group(t: Tail, bound: int = 2, depth: int = 2) -> TailSymmetry:
    """All shifts p with |p_i| <= bound under which t is self-equivalent,
    closed into a lattice (Hermite basis).  A lower bound for the full
    symmetry group: generators outside the search box are not found."""
    if bound < 1 or depth < 1:
        raise ValueError("bound and depth must be >= 1")
    hits = []
    for p in itertools.product(range(-bound, bound + 1), repeat=t.presentation.k):
        if all(x == 0 for x in p):
            continue
        transcript = shift_tail_equivalent(t, t, p, depth)
        if transcript.equivalent:
            hits.append(transcript)
    basis = hermite_normal_form([h.shift for h in hits])
    return TailSymmetry(basis=basis, bound=bound, depth=depth, generators=tuple(hits))


def splice_separating_tail(P: Presentation, bound: int = 2, depth: int = 2,
                           max_block_degree: int = 3) -> Tail:
    """A tail built to defeat every candidate shift |p_i| <= bound.

    Starting from a full-support pad block, repeatedly append the first
    word (by degree, then lexicographically) whose inclusion breaks
    p-shift self-equivalence for each surviving candidate p, re-verifying
    all candidates after each extension.  Mirrors the separating-word
    construction: a tail containing each separating block infinitely often
    cannot be eventually p-periodic.  The period is finally padded so its
    degree exceeds the bound (the period degree itself is always a
    symmetry of an eventually periodic tail, and must leave the box).
    """
    pad = tuple((i, 1) for i in range(1, P.k + 1))
    # start above the search box: the period degree of an eventually
    # periodic tail is always one of its symmetries, so keep it outside
    period = normal_form(P, pad * (bound + 1))

    def survivors(per: Word) -> list[Degree]:
        t0 = Tail(P, (), per)
        out = []
        for p in itertools.product(range(-bound, bound + 1), repeat=P.k):
            if all(x == 0 for x in p):
                continue
            if shift_tail_equivalent(t0, t0, p, depth).equivalent:
                out.append(p)
        return out

    for _round in range(4 * (2 * bound + 1) ** P.k):
        alive = survivors(period)
        if not alive:
            break
        p = alive[0]
        fixed = False
        for block in _blocks_by_degree(P, max_block_degree):
            candidate = normal_form(P, period + block)
            t0 = Tail(P, (), candidate)
            if not shift_tail_equivalent(t0, t0, p, depth).equivalent:
                period = candidate
                fixed = True
                break
        if not fixed:
            break  # no splice block of this size defeats p; give up on it
    return Tail(P, (), period)


def _blocks_by_degree(P: Presentation, max_total: int):
    from .kgraph import words_of_degree
    for total in range(1, max_total + 1):
        for degs in itertools.product(range(total + 1), repeat=P.k):
            if sum(degs) != total:
                continue
            yield from words_of_degree(P, degs)
