from __future__ import annotations

import pytest

from bruhat_cubulator import constructions as cx
from bruhat_cubulator.bruhat import interval
from bruhat_cubulator.search import cubulate, verify_certificate

from conftest import system


class TestNormalFormForest:
    def test_a3_paths(self, a3):
        forest = cx.normal_form_forest(a3)
        assert forest.is_path_forest()
        assert forest.path_label_sequences() == [(1,), (2, 1), (3, 2, 1)]

    def test_b3_paths(self, b3):
        forest = cx.normal_form_forest(b3)
        assert forest.is_path_forest()
        assert forest.path_label_sequences() == [(1,), (2, 1, 2), (3, 2, 1, 2, 3)]

    def test_d4_branches(self):
        forest = cx.normal_form_forest(system("D4"))
        assert not forest.is_path_forest()
        with pytest.raises(ValueError):
            forest.path_label_sequences()

    def test_root_path_counts_multiply_to_order(self, b3):
        forest = cx.normal_form_forest(b3)
        total = 1
        for j in range(b3.rank):
            total *= len(forest.root_paths(j))
        assert total == 48

    def test_infinite_rejected(self, atilde2):
        with pytest.raises(ValueError):
            cx.normal_form_forest(atilde2)


class TestPathForestCubulation:
    @pytest.mark.parametrize(
        "tag,params,tag_name",
        [
            ("A1", (1,), "nff-A"),
            ("A2", (1, 2), "nff-A"),
            ("A3", (1, 2, 3), "nff-A"),
            ("A4", (1, 2, 3, 4), "nff-A"),
            ("B2", (1, 3), "nff-B"),
            ("B3", (1, 3, 5), "nff-B"),
        ],
    )
    def test_families(self, tag, params, tag_name):
        res = cx.path_forest_cubulation(system(tag))
        assert res.lattice.params == params
        assert res.tag == tag_name
        assert verify_certificate(res.interval, res.certificate)

    def test_branching_forest_rejected(self):
        with pytest.raises(ValueError):
            cx.path_forest_cubulation(system("D4"))


class TestBoolean:
    def test_coxeter_element(self, a3):
        res = cx.standard_parabolic_coxeter_cubulation(a3.element((2, 1, 3)))
        assert res.lattice.params == (1, 1, 1)
        assert len(res.interval.vertices) == 8
        assert verify_certificate(res.interval, res.certificate)

    def test_identity(self, a3):
        res = cx.standard_parabolic_coxeter_cubulation(a3.identity)
        assert res.lattice.params == (0,)

    def test_repeated_letter_rejected(self, a3):
        with pytest.raises(ValueError):
            cx.standard_parabolic_coxeter_cubulation(a3.element((1, 2, 1)))


class TestDihedral:
    @pytest.mark.parametrize("tag,k", [("I2(5)", 3), ("I2(5)", 5), ("I2(7)", 4), ("Atilde1", 6)])
    def test_lengths(self, tag, k):
        sys = system(tag)
        word = tuple(1 if i % 2 == 0 else 2 for i in range(k)) if tag != "Atilde1" else tuple(
            0 if i % 2 == 0 else 1 for i in range(k)
        )
        res = cx.dihedral_cubulation(sys.element(word))
        assert res.lattice.params == (1, k - 1)
        assert verify_certificate(res.interval, res.certificate)

    def test_short_rejected(self):
        with pytest.raises(ValueError):
            cx.dihedral_cubulation(system("I2(5)").generator(1))

    def test_rank_guard(self, a3):
        with pytest.raises(ValueError):
            cx.dihedral_cubulation(a3.element((1, 2)))


class TestAffineFamily:
    def test_y_m_words(self, atilde2):
        assert cx.y_m(atilde2, 0).word == (1, 2, 1)
        assert cx.y_m(atilde2, 1).length == 5
        assert cx.y_m(atilde2, 3).length == 9
        with pytest.raises(ValueError):
            cx.y_m(atilde2, -1)

    def test_wrong_system_rejected(self, a3):
        with pytest.raises(ValueError):
            cx.y_m(a3, 1)
        with pytest.raises(ValueError):
            cx.atilde2_cubulation(system("Ctilde2"), 1)

    @pytest.mark.parametrize("m,params,size", [(1, (2, 1, 2), 18), (2, (2, 2, 3), 36), (3, (2, 3, 4), 60)])
    def test_small_members(self, atilde2, m, params, size):
        res = cx.atilde2_cubulation(atilde2, m)
        assert res.lattice.params == params
        assert len(res.interval.vertices) == size
        assert verify_certificate(res.interval, res.certificate)
        # the maximal lattice vertex maps onto the interval top
        top_coords = (2, m, m + 1)
        assert res.certificate.assignment[top_coords] == len(res.interval.vertices) - 1

    def test_m_zero_is_dihedral(self, atilde2):
        with pytest.raises(ValueError):
            cx.atilde2_cubulation(atilde2, 0)

    def test_search_agrees(self, atilde2):
        for m in (1, 2):
            y = cx.y_m(atilde2, m)
            assert cubulate(y).status == "Found"


class TestTrivialEnumeration:
    def test_short_range_classes(self, atilde2):
        pairs = cx.atilde2_trivial_enumeration(atilde2, 3)
        assert all(cx.all_trivial(y) for y, _ in pairs)
        # every element of length <= 3 has a trivial table: lengths 0-2 are
        # boolean or dihedral, and length 3 splits into six distinct-letter
        # elements and three dihedral-type elements
        lengths = sorted(y.length for y, _ in pairs)
        assert lengths == [0] + [1] * 3 + [2] * 6 + [3] * 9
        reps = {rep.word for _, rep in pairs}
        assert reps == {(), (1,), (1, 2), (1, 2, 0), (1, 2, 1)}

    def test_unmatched_class_at_length_four(self, atilde2):
        # a genuinely trivial length-4 class exists but no listed
        # representative has length 4, so the hard-error contract fires
        with pytest.raises(cx.ConstructionError):
            cx.atilde2_trivial_enumeration(atilde2, 4)
