"""Corner splittings, link/slice ideals, and liaison hypotheses.

Reassembly y*q + r == g is the defining identity of a split and is
checked exhaustively on small symmetric groups; the deletion fixtures
pin the corner-removal permutation and its diagram.
"""

import pytest

from schubgb.gvd import (
    KRReport,
    NotLowerOutsideCorner,
    Split,
    check_kr_hypotheses,
    delete_corner_permutation,
    q_ideal,
    split_on_corner,
    two_minor_polys,
)
from schubgb.idealgen import cdg_generators, fulton_generators
from schubgb.groebner import ideals_equal
from schubgb.permcomb import (
    coxeter_length,
    Cell,
    Permutation,
    essential_set,
    lower_outside_corners,
    rothe_diagram,
)
from schubgb.polycore import Budget, Polynomial, RowLex, Variable
from schubgb.verifier import symmetric_group


def reassemble(split, pair):
    y = Polynomial.variable(split.y, split.shape)
    return y * pair.q + pair.r


class TestSplit:
    def test_reassembly_exhaustive_s4(self):
        for w in symmetric_group(4):
            shape = (4, 4)
            order = RowLex(shape)
            source = {g.poly for g in cdg_generators(w)}
            for corner in sorted(lower_outside_corners(w)):
                s = split_on_corner(w, corner, order)
                rebuilt = {reassemble(s, p) for p in s.pairs}
                rebuilt |= {h.poly for h in s.h_list}
                assert rebuilt == source

    def test_y_absent_from_parts(self):
        w = Permutation.parse("315642")
        s = split_on_corner(w, (4, 4), RowLex((6, 6)))
        assert len(s.pairs) == 7 and len(s.h_list) == 17
        for p in s.pairs:
            for part in (p.q, p.r):
                for m, _ in part.terms():
                    assert s.y not in m.exponents
        for h in s.h_list:
            for m, _ in h.poly.terms():
                assert s.y not in m.exponents

    def test_pairs_inherit_source_labels(self):
        w = Permutation.parse("315642")
        s = split_on_corner(w, (4, 4), RowLex((6, 6)))
        for p in s.pairs:
            assert p.labels
            for lb in p.labels:
                assert lb.tag == "minor"
                assert lb.cell.row >= 4 and lb.cell.col >= 4

    def test_non_corner_rejected(self):
        w = Permutation.parse("315642")
        with pytest.raises(NotLowerOutsideCorner):
            split_on_corner(w, (1, 1), RowLex((6, 6)))

    def test_identity_has_no_corners(self):
        w = Permutation.parse("123")
        with pytest.raises(NotLowerOutsideCorner):
            split_on_corner(w, (1, 1), RowLex((3, 3)))

    def test_c_generators_merge_duplicates(self):
        w = Permutation.parse("315642")
        s = split_on_corner(w, (4, 4), RowLex((6, 6)))
        c = s.c_generators()
        polys = [g.poly for g in c]
        assert len(polys) == len(set(polys))


class TestDeleteCorner:
    @pytest.mark.parametrize(
        "word,corner,expected",
        [
            ("215634", (4, 4), "215436"),
            ("21", (1, 1), "12"),
            ("315642", (4, 4), "315462"),
        ],
    )
    def test_fixtures(self, word, corner, expected):
        w = Permutation.parse(word)
        w2 = delete_corner_permutation(w, corner)
        assert w2.images == Permutation.parse(expected).images

    def test_diagram_drops_exactly_the_corner(self):
        for w in symmetric_group(5):
            for corner in lower_outside_corners(w):
                w2 = delete_corner_permutation(w, corner)
                d1 = set(rothe_diagram(w).cells)
                d2 = set(rothe_diagram(w2).cells)
                assert d2 == d1 - {corner}
                assert coxeter_length(w2) == coxeter_length(w) - 1

    def test_new_essential_cells_confined(self):
        for w in symmetric_group(5):
            for corner in lower_outside_corners(w):
                w2 = delete_corner_permutation(w, corner)
                fresh = essential_set(w2).cells - essential_set(w).cells
                allowed = {
                    Cell(corner.row - 1, corner.col),
                    Cell(corner.row, corner.col - 1),
                }
                assert fresh <= allowed

    def test_non_corner_rejected(self):
        with pytest.raises(NotLowerOutsideCorner):
            delete_corner_permutation(Permutation.parse("315642"), (1, 2))


class TestQIdeal:
    def test_dominant_corner_gives_unit(self):
        q = q_ideal(Permutation.parse("321"), (2, 1))
        assert [g.degree for g in q] == [0]

    def test_21(self):
        q = q_ideal(Permutation.parse("21"), (1, 1))
        assert [g.degree for g in q] == [0]

    def test_enlarged_branch_36718245(self):
        w = Permutation.parse("36718245")
        corner = Cell(5, 5)
        assert lower_outside_corners(w) == frozenset({corner})
        s = split_on_corner(w, corner, RowLex((8, 8)))
        q = q_ideal(w, corner)
        assert len(q) == 80
        q_polys = {p.q for p in s.pairs}
        assert len(q_polys) == 18
        ideal_polys = {g.poly for g in q}
        assert q_polys <= ideal_polys
        for g in q:
            if g.poly in q_polys:
                continue
            assert any(
                lb.tag == "minor" and (lb.cell.row == 5 or lb.cell.col == 5)
                for lb in g.labels
            )


class TestTwoMinors:
    def test_pair_count(self):
        w = Permutation.parse("315642")
        s = split_on_corner(w, (4, 4), RowLex((6, 6)))
        k = len(s.pairs)
        assert len(two_minor_polys(s)) == k * (k - 1) // 2

    def test_single_pair_gives_none(self):
        w = Permutation.parse("21")
        s = split_on_corner(w, (1, 1), RowLex((2, 2)))
        assert two_minor_polys(s) == []

    def test_antisymmetry_makes_them_vanish_on_equal_pairs(self):
        w = Permutation.parse("315642")
        s = split_on_corner(w, (4, 4), RowLex((6, 6)))
        for f in two_minor_polys(s):
            assert f.shape == (6, 6)


class TestKRHypotheses:
    def test_315642_all_pass(self):
        report = check_kr_hypotheses(
            Permutation.parse("315642"), (4, 4), RowLex((6, 6))
        )
        assert report.all_pass and not report.degenerate
        assert report.details["heights"] == {"ideal": 7, "c": 7, "n": 6}

    def test_21543_c_fails(self):
        report = check_kr_hypotheses(
            Permutation.parse("21543"), (3, 4), RowLex((5, 5))
        )
        assert not report.c_groebner
        assert not report.all_pass

    def test_degenerate_corner_short_circuits(self):
        report = check_kr_hypotheses(
            Permutation.parse("21"), (1, 1), RowLex((2, 2))
        )
        assert report.degenerate and report.all_pass
        assert "reason" in report.details

    def test_report_serializes(self):
        import json

        report = check_kr_hypotheses(
            Permutation.parse("21"), (1, 1), RowLex((2, 2))
        )
        payload = json.loads(json.dumps(report.to_json()))
        assert payload["degenerate"] is True
        assert payload["corner"] == [1, 1]


class TestLinkIdeal:
    def test_n_equals_deleted_ideal_215634(self):
        w = Permutation.parse("215634")
        corner = Cell(4, 4)
        w2 = delete_corner_permutation(w, corner)
        assert w2.images == Permutation.parse("215436").images
        fresh = essential_set(w2).cells - essential_set(w).cells
        assert fresh == {Cell(3, 4), Cell(4, 3)}
        s = split_on_corner(w, corner, RowLex((6, 6)))
        assert ideals_equal(
            s.n_generators(),
            fulton_generators(w2),
            RowLex((6, 6)),
            Budget(10**6),
        )
