import random

import pytest

from polygraph import catalog
from polygraph.enumeration import (
    BudgetExceeded,
    IsoClass,
    apply_relabeling,
    are_isomorphic,
    canonical_form,
    count_candidate_tables,
    enumerate_presentations,
    isomorphism_classes,
    relabeling_group,
)
from polygraph.kgraph import validate_presentation

# regression constants, recomputed independently during development by a
# raw itertools sweep with an inline cubic check
VALID_222 = 752
CLASSES_222 = 74


class TestEnumerate:
    def test_trivial_multiplicities(self):
        assert len(list(enumerate_presentations((1, 1)))) == 1

    def test_all_24_two_graphs(self):
        ps = list(enumerate_presentations((2, 2)))
        assert len(ps) == 24

    def test_enumeration_is_sorted_and_revalidates(self):
        ps = list(enumerate_presentations((2, 2)))
        encs = [p.theta for p in ps]
        assert encs == sorted(encs)
        for p in ps:
            validate_presentation(p.k, p.m, {pair: p.table(*pair)
                                             for pair in [(1, 2)]})

    def test_budget_guard(self):
        assert count_candidate_tables((2, 2, 2)) == 24 ** 3
        with pytest.raises(BudgetExceeded):
            list(enumerate_presentations((2, 2, 2), budget=100))

    def test_budget_env_override(self, monkeypatch):
        monkeypatch.setenv("POLYGRAPH_BUDGET", "10")
        with pytest.raises(BudgetExceeded):
            list(enumerate_presentations((2, 2)))

    def test_parallel_matches_serial(self):
        serial = [p.theta for p in enumerate_presentations((2, 2))]
        parallel = [p.theta for p in enumerate_presentations((2, 2), jobs=2)]
        assert serial == parallel

    def test_222_census(self):
        ps = list(enumerate_presentations((2, 2, 2)))
        assert len(ps) == VALID_222


class TestIsomorphism:
    def test_identity(self):
        P = catalog.flip_2graph()
        rel = are_isomorphic(P, P)
        assert rel is not None

    def test_flip_vs_square_distinct(self):
        assert are_isomorphic(catalog.flip_2graph(), catalog.square_2graph()) is None

    def test_forward_vs_reverse_cycle_distinct(self):
        assert are_isomorphic(catalog.cycle3_forward_2graph(),
                              catalog.cycle3_reverse_2graph()) is None

    def test_relabeled_copy_is_isomorphic(self):
        rng = random.Random(0)
        rels = list(relabeling_group((2, 2)))
        for P in list(enumerate_presentations((2, 2)))[:10]:
            rel = rng.choice(rels)
            Q = apply_relabeling(P, rel)
            witness = are_isomorphic(P, Q)
            assert witness is not None
            assert apply_relabeling(P, witness).theta == Q.theta

    def test_unequal_multiplicity_vectors(self):
        # flip-type tables on m=(1,2) vs the color-swapped copy on m=(2,1)
        P = validate_presentation(2, (1, 2), {(1, 2): {(1, 1): (1, 1), (1, 2): (1, 2)}})
        Q = validate_presentation(2, (2, 1), {(1, 2): {(1, 1): (1, 1), (2, 1): (2, 1)}})
        assert are_isomorphic(P, Q) is not None
        assert are_isomorphic(P, catalog.flip_2graph()) is None


class TestClasses:
    def test_nine_classes_of_two_graphs(self):
        classes = isomorphism_classes(enumerate_presentations((2, 2)))
        assert len(classes) == 9
        assert sum(c.size for c in classes) == 24

    def test_single_class_for_trivial_m(self):
        classes = isomorphism_classes(enumerate_presentations((1, 1)))
        assert len(classes) == 1 and classes[0].size == 1

    def test_canonicalize_commutes_with_relabeling(self):
        rng = random.Random(1)
        rels = list(relabeling_group((2, 2)))
        for P in list(enumerate_presentations((2, 2)))[::3]:
            canon, _ = canonical_form(P)
            canon2, _ = canonical_form(apply_relabeling(P, rng.choice(rels)))
            assert canon.theta == canon2.theta

    def test_representative_is_in_its_own_class(self):
        for c in isomorphism_classes(enumerate_presentations((2, 2))):
            assert isinstance(c, IsoClass)
            assert are_isomorphic(c.representative, c.representative) is not None
            canon, _ = canonical_form(c.representative)
            assert canon.theta == c.representative.theta

    def test_222_class_count(self):
        classes = isomorphism_classes(enumerate_presentations((2, 2, 2)))
        assert len(classes) == CLASSES_222
        assert sum(c.size for c in classes) == VALID_222
