import itertools

import pytest

from polygraph import catalog
from polygraph.kgraph import normal_form
from polygraph.periodicity import symmetry_lattice
from polygraph.tails import (
    InvalidTail,
    shift_tail_equivalent,
    sigma_data,
    splice_separating_tail,
    tail,
    tail_symmetry_group,
)

FLIP = catalog.flip_2graph()
FWD = catalog.cycle3_forward_2graph()
T3 = catalog.transposition_kgraph(3, 2)


class TestTailType:
    def test_period_needs_every_color(self):
        with pytest.raises(InvalidTail):
            tail(FLIP, (), ((1, 1),))

    def test_words_normalized(self):
        t = tail(FLIP, ((2, 1), (1, 2)), ((2, 2), (1, 1)))
        assert t.preperiod == normal_form(FLIP, ((2, 1), (1, 2)))
        assert t.period[0][0] == 1

    def test_unroll_reaches_degree(self):
        t = tail(FLIP, ((1, 1),), ((1, 1), (2, 1)))
        w = t.unroll((3, 3))
        from polygraph.kgraph import degree
        assert all(a >= b for a, b in zip(degree(FLIP, w), (3, 3)))


class TestSigmaData:
    def test_constant_tail(self):
        t = tail(FLIP, (), ((1, 1), (2, 1)))
        data = sigma_data(t, (3, 3))
        assert all(v == (1, 1) for _, v in data.values)

    def test_transposition_tail_against_hand_oracle(self):
        # in a transposition family indices ride along positions, so the
        # window value at n is the (|n|+1)-th letter index of the period
        # stream 1,2,1 repeating, in every color
        t = tail(T3, (), ((1, 1), (2, 2), (3, 1)))
        data = sigma_data(t, (2, 2, 2))
        stream = [1, 2, 1]
        for n, v in data.values:
            expected = stream[(-sum(n)) % 3]
            assert v == (expected,) * 3

    def test_longer_unroll_agrees_on_common_box(self):
        t = tail(FLIP, ((1, 2),) , ((1, 1), (2, 2)))
        small = sigma_data(t, (2, 2)).as_dict()
        large = sigma_data(t, (5, 5)).as_dict()
        assert all(large[n] == v for n, v in small.items())

    def test_doubling_the_period_changes_nothing(self):
        t1 = tail(FLIP, (), ((1, 1), (2, 2)))
        t2 = tail(FLIP, (), normal_form(FLIP, ((1, 1), (2, 2)) * 2))
        assert sigma_data(t1, (4, 4)).as_dict() == sigma_data(t2, (4, 4)).as_dict()
        for p in itertools.product((-2, -1, 0, 1, 2), repeat=2):
            if p == (0, 0):
                continue
            assert (shift_tail_equivalent(t1, t1, p).equivalent
                    == shift_tail_equivalent(t2, t2, p).equivalent)


class TestShiftEquivalence:
    def test_zero_shift_reflexive(self):
        t = tail(FLIP, ((1, 2),), ((1, 1), (2, 1)))
        assert shift_tail_equivalent(t, t, (0, 0)).equivalent

    def test_preperiod_is_forgotten(self):
        t1 = tail(FLIP, (), ((1, 1), (2, 1)))
        t2 = tail(FLIP, ((1, 2), (2, 2)), ((1, 1), (2, 1)))
        assert shift_tail_equivalent(t1, t2, (0, 0)).equivalent

    def test_constant_tail_any_shift(self):
        t = tail(FLIP, (), ((1, 1), (2, 1)))
        for p in [(1, 0), (0, -2), (3, -1), (2, 2)]:
            assert shift_tail_equivalent(t, t, p).equivalent

    def test_counterexample_reported(self):
        # in the flip family the window value is a function of the total
        # degree: this tail's stream has period 4, so shifts of total 0 or
        # 4 work and shifts of total 1 or 2 fail
        t = tail(FLIP, (), ((1, 1), (1, 2), (2, 1), (2, 1)))
        assert shift_tail_equivalent(t, t, (1, -1)).equivalent
        assert shift_tail_equivalent(t, t, (2, 2)).equivalent
        for bad_shift in [(1, 0), (2, 0), (1, 1)]:
            verdict = shift_tail_equivalent(t, t, bad_shift)
            assert not verdict.equivalent and verdict.counterexample is not None

    def test_presentation_mismatch(self):
        t1 = tail(FLIP, (), ((1, 1), (2, 1)))
        t2 = tail(FWD, (), ((1, 1), (2, 1)))
        with pytest.raises(ValueError):
            shift_tail_equivalent(t1, t2, (0, 0))


class TestTailSymmetry:
    def test_constant_tail_full_lattice(self):
        t = tail(FLIP, (), ((1, 1), (2, 1)))
        sym = tail_symmetry_group(t, bound=2)
        assert sym.basis == ((1, 0), (0, 1))

    def test_symmetry_generators_form_a_group_within_bound(self):
        t = tail(FLIP, (), ((1, 1), (1, 2), (2, 1), (2, 1)))
        sym = tail_symmetry_group(t, bound=2)
        hits = {g.shift for g in sym.generators}
        for p in hits:
            assert tuple(-x for x in p) in hits
        for p, q in itertools.product(hits, repeat=2):
            s = tuple(a + b for a, b in zip(p, q))
            if s != (0, 0) and all(abs(x) <= 2 for x in s):
                assert s in hits

    def test_period_degree_is_always_a_symmetry(self):
        t = tail(FWD, (), ((1, 1), (1, 2), (2, 1)))
        sym = tail_symmetry_group(t, bound=3)
        assert sym.contains((2, 1))

    def test_spliced_tail_on_aperiodic_graph_has_no_symmetry(self):
        t = splice_separating_tail(FWD, bound=2, depth=2)
        sym = tail_symmetry_group(t, bound=2)
        assert sym.basis == ()

    def test_tail_symmetry_contains_graph_symmetry(self):
        # H_theta is the intersection over all tails, so any tail's group
        # contains it; check on the flip graph whose lattice is Z(1,-1)
        lat = symmetry_lattice(FLIP, bound=2)
        assert lat.basis == ((1, -1),)
        for period in [((1, 1), (2, 1)), ((1, 1), (1, 2), (2, 2), (2, 1))]:
            t = tail(FLIP, (), period)
            sym = tail_symmetry_group(t, bound=2)
            for v in lat.basis:
                assert sym.contains(v)
