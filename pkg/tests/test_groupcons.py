import itertools
import random
from fractions import Fraction

import pytest

from polygraph import catalog
from polygraph.groupcons import (
    FiniteAbelianGroup,
    GroupConstruction,
    InvalidConstruction,
    NotCommuting,
    PartialConstruction,
    cycle_construction,
    decompose,
    extend_to_group,
    from_commuting_words,
    full_symmetry_subgroup,
    group_construction,
    normalize_scalars,
    to_atomic_graph,
    to_dot,
    validate_group_construction,
    words_commute,
)
from polygraph.groupcons import _path_phase
from polygraph.phases import phase

FCC = catalog.flip_cycle_cycle_3graph()
FWD = catalog.cycle3_forward_2graph()
FLIP = catalog.flip_2graph()
T3 = catalog.transposition_kgraph(3, 2)

WORDS_112 = [tuple((i, int(ch)) for ch in "112") for i in (1, 2, 3)]


def gc27(alphas=None):
    return from_commuting_words(FCC, WORDS_112, alphas=alphas)


class TestFiniteAbelianGroup:
    def test_cyclic_product(self):
        G = FiniteAbelianGroup.cyclic_product([2, 3])
        assert G.order == 6
        assert G.reduce((5, -2)) == (1, 1)
        assert G.add((1, 2), (1, 2)) == (0, 1)

    def test_generator_orders_in_a_quotient(self):
        # Z^2 / <(2,1), (0,3)>: g_2 has order 3, g_1 has order 6
        G = FiniteAbelianGroup.from_kernel([(2, 1), (0, 3)])
        assert G.order == 6
        assert G.generator_order(2) == 3
        assert G.generator_order(1) == 6

    def test_infinite_quotient_rejected(self):
        with pytest.raises(ValueError):
            FiniteAbelianGroup.from_kernel([(1, -1)])


class TestValidation:
    def test_constant_construction_on_transposition_graph(self):
        G = FiniteAbelianGroup.cyclic_product([2, 2, 2])
        t = [[1] * 8] * 3
        alpha = [[phase(0)] * 8] * 3
        gc = group_construction(T3, G, t, alpha)
        assert gc.dimension == 8

    def test_single_site_perturbation_is_caught(self):
        base = gc27()
        t = [list(row) for row in base.t]
        t[0][5] = 3 - t[0][5]
        witness = validate_group_construction(FCC, base.group, t, base.alpha)
        assert witness is not None and witness[0] == "words"

    def test_scalar_condition_is_checked(self):
        base = gc27()
        alpha = [list(row) for row in base.alpha]
        alpha[0][5] = phase(1, 2)
        witness = validate_group_construction(FCC, base.group, base.t, alpha)
        assert witness is not None and witness[0] == "scalars"


class TestWordsCommute:
    def test_the_27dim_words_commute(self):
        assert words_commute(FCC, WORDS_112)

    def test_single_color_trivially_commutes(self):
        P1 = catalog.transposition_kgraph(1, 3)
        assert words_commute(P1, [((1, 2), (1, 1))])

    def test_forward_cycle_letters_do_not_commute(self):
        # the 3-cycle sends (1,1) to (1,2): e_1 f_1 = f_2 e_1 != f_1 e_1
        assert not words_commute(FWD, [((1, 1),), ((2, 1),)])

    def test_color_purity_enforced(self):
        with pytest.raises(ValueError):
            words_commute(FLIP, [((2, 1),), ((2, 1),)])


class TestFromCommutingWords:
    def test_27_dimensional_construction(self):
        gc = gc27()
        assert gc.dimension == 27
        assert len(full_symmetry_subgroup(gc)) == 9

    def test_single_letter_words_give_dimension_one(self):
        P = FLIP
        gc = from_commuting_words(P, [((1, 2),), ((2, 2),)])
        assert gc.dimension == 1
        assert gc.t == ((2,), (2,))

    def test_axis_values_read_off_the_words(self):
        gc = gc27()
        # word letters fill the axis right to left: t^i at s*g_i is the
        # (n_i + 1 - s)-th letter
        for i in (1, 2, 3):
            for s in (1, 2, 3):
                point = tuple(s % 3 if j == i - 1 else 0 for j in range(3))
                assert gc.t_at(i, point) == WORDS_112[i - 1][(3 - s) % 3][1]

    def test_introduction_order_is_irrelevant(self):
        base = gc27()
        for perm in itertools.permutations((1, 2, 3)):
            assert from_commuting_words(FCC, WORDS_112, color_order=list(perm)).t == base.t

    def test_non_commuting_words_rejected(self):
        with pytest.raises(NotCommuting):
            from_commuting_words(FWD, [((1, 1),), ((2, 1),)])

    def test_constant_alphas_stored(self):
        gc = gc27(alphas=[phase(1, 3)] * 3)
        assert all(a == Fraction(1, 3) for row in gc.alpha for a in row)


class TestCycleConstruction:
    def test_already_commuting_seeds_close_immediately(self):
        fam, lens = cycle_construction(FLIP, [((1, 1),), ((2, 1),)])
        assert lens == [1]
        assert fam == [((1, 1),), ((2, 1),)]

    def test_forward_cycle_seed_closes_in_three(self):
        fam, lens = cycle_construction(FWD, [((1, 1),), ((2, 1),)])
        assert lens == [3]
        assert fam[0] == ((1, 2), (1, 1), (1, 1))
        assert fam[1] == ((2, 1), (2, 2), (2, 1))
        assert words_commute(FWD, fam)

    def test_three_color_stages(self):
        fam, lens = cycle_construction(FCC, [((1, 2),), ((2, 1),), ((3, 1),)])
        assert len(fam) == 3
        assert words_commute(FCC, fam)
        assert len(lens) >= 1

    def test_outputs_always_commute_randomized(self):
        rng = random.Random(99)
        for P in (FWD, catalog.square_2graph(), FCC):
            for _ in range(10):
                seeds = []
                for i in range(1, P.k + 1):
                    seeds.append(tuple((i, rng.randint(1, P.m[i - 1]))
                                       for _ in range(rng.randint(1, 2))))
                fam, _ = cycle_construction(P, seeds)
                assert words_commute(P, fam)

    def test_long_word_dimension_bound(self):
        fam, _ = cycle_construction(FWD, [tuple((1, int(c)) for c in "1222"), ((2, 1),)])
        gc = from_commuting_words(FWD, fam)
        rep = decompose(gc)
        assert max(rep.dimensions) >= 6


class TestNormalizeScalars:
    def test_constant_input_returned_unchanged(self):
        gc = gc27(alphas=[phase(1, 3), phase(1, 3), phase(2, 3)])
        assert normalize_scalars(gc) is gc

    def test_scramble_and_recover(self):
        gc = gc27()
        G = gc.group
        rng = random.Random(5)
        d = [Fraction(rng.randint(0, 11), 12) for _ in range(G.order)]
        scrambled = group_construction(FCC, G, gc.t, [
            [(gc.alpha[i][n] + d[n] - d[G.sub_generator(n, i + 1)]) % 1
             for n in range(G.order)]
            for i in range(3)])
        assert any(len(set(row)) > 1 for row in scrambled.alpha)
        norm = normalize_scalars(scrambled)
        assert all(len(set(row)) == 1 for row in norm.alpha)
        for row in G.kernel:
            assert _path_phase(norm, row) == _path_phase(scrambled, row)

    def test_loop_phases_survive_on_every_closed_loop(self):
        # beyond the kernel basis: all small closed loops keep their phase
        gc = gc27(alphas=[phase(1, 3)] * 3)
        G = gc.group
        rng = random.Random(6)
        d = [Fraction(rng.randint(0, 2), 3) for _ in range(G.order)]
        scrambled = group_construction(FCC, G, gc.t, [
            [(gc.alpha[i][n] + d[n] - d[G.sub_generator(n, i + 1)]) % 1
             for n in range(G.order)]
            for i in range(3)])
        norm = normalize_scalars(scrambled)
        for loop in [(3, 0, 0), (0, 3, 0), (0, 0, 3), (3, 3, 0), (3, -3, 0)]:
            assert _path_phase(norm, loop) == _path_phase(scrambled, loop)


class TestSymmetryAndDecomposition:
    def test_full_symmetry_of_constant_construction(self):
        G = FiniteAbelianGroup.cyclic_product([2, 2, 2])
        gc = group_construction(T3, G, [[1] * 8] * 3, [[phase(0)] * 8] * 3)
        assert len(full_symmetry_subgroup(gc)) == 8

    def test_injective_axis_blocks_symmetry(self):
        # t^1 takes distinct values along the first axis, so the symmetry
        # subgroup meets that axis only in 0
        gc = from_commuting_words(FLIP, [((1, 1), (1, 2)), ((2, 1), (2, 2))])
        assert len(set(gc.t[0][gc.group.index((s, 0))] for s in (0, 1))) == 2
        sym = full_symmetry_subgroup(gc)
        assert [h for h in sym if h[1] == 0] == [(0, 0)]

    def test_27dim_decomposition(self):
        rep = decompose(gc27())
        assert len(rep.summands) == 9
        assert rep.dimensions == [3] * 9
        assert sum(rep.dimensions) == 27
        for s in rep.summands:
            assert len(full_symmetry_subgroup(s)) == 1
            for row in s.alpha:
                assert all(a.denominator in (1, 3) for a in row)

    def test_character_table_shape(self):
        rep = decompose(gc27())
        assert len(rep.character_table) == 9
        assert all(len(row) == len(rep.symmetry) for row in rep.character_table)
        # characters are distinct and the trivial one is present
        assert len(set(rep.character_table)) == 9
        assert tuple([Fraction(0)] * 9) in rep.character_table

    def test_trivial_symmetry_single_summand(self):
        parent = from_commuting_words(FLIP, [((1, 1), (1, 2)), ((2, 1), (2, 2))])
        irreducible = decompose(parent).summands[0]
        assert len(full_symmetry_subgroup(irreducible)) == 1
        rep = decompose(irreducible)
        assert len(rep.summands) == 1
        assert rep.summands[0].t == irreducible.t
        assert rep.summands[0].alpha == irreducible.alpha

    def test_summand_loop_phases_refine_the_parent(self):
        gc = gc27(alphas=[phase(1, 3)] * 3)
        rep = decompose(gc)
        # along the full kernel of the parent (C_3 axes), each summand's
        # loop phase matches the parent root of unity times the character
        # correction, and in particular is a cube root of unity
        for s in rep.summands:
            for row in s.group.kernel:
                assert _path_phase(s, row).denominator in (1, 3)


class TestExtendToGroup:
    def test_full_input_identity(self):
        gc = gc27()
        part = PartialConstruction.restriction(gc, gc.group.elements)
        out = extend_to_group(FCC, part)
        assert out.t == gc.t and out.alpha == gc.alpha

    def test_axis_data_reproduces_commuting_word_construction(self):
        gc = gc27()
        G = gc.group
        t = {}
        alpha = {}
        for i in (1, 2, 3):
            for s in range(3):
                v = G.reduce(tuple(-s if j == i - 1 else 0 for j in range(3)))
                t[(i, v)] = gc.t[i - 1][G.index(v)]
                alpha[(i, v)] = gc.alpha[i - 1][G.index(v)]
        out = extend_to_group(FCC, PartialConstruction(G, t, alpha))
        assert out.t == gc.t and out.alpha == gc.alpha

    def test_symmetric_box_extension_keeps_symmetry(self):
        gc = gc27()
        G = gc.group
        H = full_symmetry_subgroup(gc)
        domain = sorted({G.add(g, h) for g in G.elements if g[0] == 0 for h in H})
        part = PartialConstruction.restriction(gc, domain)
        out = extend_to_group(FCC, part, symmetry=H)
        out_sym = set(full_symmetry_subgroup(out))
        assert set(H) <= out_sym
        for g in domain:
            for i in (1, 2, 3):
                assert out.t_at(i, g) == gc.t_at(i, g)

    def test_single_point_bootstrap(self):
        gc = gc27()
        part = PartialConstruction.restriction(gc, [(0, 0, 0)])
        out = extend_to_group(FCC, part)
        assert out.dimension == 27
        assert out.t_at(1, (0, 0, 0)) == gc.t_at(1, (0, 0, 0))

    def test_inconsistent_seed_rejected(self):
        # flip constructions force t^1 = t^2 pointwise
        G = FiniteAbelianGroup.cyclic_product([2, 2])
        part = PartialConstruction(G, {(1, (0, 0)): 2, (2, (0, 0)): 1}, {})
        with pytest.raises(InvalidConstruction):
            extend_to_group(FLIP, part)

    def test_empty_seed_builds_something_valid(self):
        G = FiniteAbelianGroup.cyclic_product([2, 2])
        out = extend_to_group(FLIP, PartialConstruction(G, {}, {}))
        assert out.dimension == 4


class TestAtomicGraph:
    def test_edge_count_and_defect_freeness(self):
        gc = gc27()
        data = to_atomic_graph(gc)
        assert len(data["vertices"]) == 27
        assert len(data["edges"]) == 81
        incoming = {}
        for e in data["edges"]:
            key = (e["dst"], e["color"])
            incoming[key] = incoming.get(key, 0) + 1
        assert all(v == 1 for v in incoming.values())
        assert len(incoming) == 81

    def test_one_dimensional_graph_is_all_loops(self):
        gc = from_commuting_words(FLIP, [((1, 1),), ((2, 1),)])
        data = to_atomic_graph(gc)
        assert len(data["vertices"]) == 1
        assert all(e["src"] == e["dst"] for e in data["edges"])

    def test_dot_output_mentions_labels(self):
        gc = from_commuting_words(FLIP, [((1, 1),), ((2, 1),)])
        dot = to_dot(gc)
        assert dot.startswith("digraph")
        assert '1:1 (0/1)' in dot
