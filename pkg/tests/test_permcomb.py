"""Combinatorics layer: diagrams, rank matrices, patterns, obstructions.

Brute-force oracles: inversion counting for Coxeter length, direct rank
counting, and full subsequence scans for pattern containment.
"""

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubgb.permcomb import (
    Cell,
    Diagram,
    EIGHT_PATTERNS,
    MalformedPermutation,
    MalformedRankMatrix,
    OBSTRUCTION_KINDS,
    PatternTooLong,
    Permutation,
    avoids_all_eight,
    contains_pattern,
    coxeter_length,
    dominant_part,
    essential_set,
    identity,
    inverse,
    lower_outside_corners,
    obstruction,
    obstructions,
    rank_matrix,
    rothe_diagram,
    transpose_diagram,
)


def perms(max_n: int, min_n: int = 1):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1)))
    ).map(lambda images: Permutation(tuple(images)))


def brute_inversions(w: Permutation) -> int:
    return sum(
        1
        for i in range(1, w.n + 1)
        for j in range(i + 1, w.n + 1)
        if w(i) > w(j)
    )


def brute_rank(w: Permutation, i: int, j: int) -> int:
    return sum(1 for k in range(1, i + 1) if w(k) <= j)


def brute_contains(w: Permutation, v: Permutation) -> bool:
    for idx in combinations(range(1, w.n + 1), v.n):
        vals = [w(i) for i in idx]
        if all(
            (vals[a] < vals[b]) == (v(a + 1) < v(b + 1))
            for a in range(v.n)
            for b in range(v.n)
        ):
            return True
    return False


class TestPermutation:
    def test_parse_digits(self):
        assert Permutation.parse("315642").images == (3, 1, 5, 6, 4, 2)

    def test_parse_commas(self):
        w = Permutation.parse("10,1,2,3,4,5,6,7,8,9")
        assert w.n == 10 and w(1) == 10 and w(10) == 9

    def test_str_roundtrip(self):
        for text in ("1", "21", "315642"):
            assert str(Permutation.parse(text)) == text

    @pytest.mark.parametrize("bad", ["", "11", "12a", "132 4", "0,1", "1,3"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedPermutation):
            Permutation.parse(bad)

    def test_call_and_inverse(self):
        w = Permutation.parse("315642")
        assert [w(i) for i in range(1, 7)] == [3, 1, 5, 6, 4, 2]
        assert inverse(w).images == (2, 6, 1, 5, 3, 4)

    @given(perms(6))
    def test_inverse_involution(self, w):
        assert inverse(inverse(w)) == w


class TestRotheDiagram:
    def test_golden_315642(self):
        d = rothe_diagram(Permutation.parse("315642"))
        assert d.cells == {
            Cell(1, 1), Cell(1, 2), Cell(3, 2), Cell(3, 4),
            Cell(4, 2), Cell(4, 4), Cell(5, 2),
        }

    def test_identity_empty(self):
        assert len(rothe_diagram(identity(5))) == 0

    def test_21543(self):
        d = rothe_diagram(Permutation.parse("21543"))
        assert d.cells == {Cell(1, 1), Cell(3, 3), Cell(3, 4), Cell(4, 3)}

    @given(perms(7))
    def test_length_is_diagram_size_is_inversions(self, w):
        assert coxeter_length(w) == len(rothe_diagram(w)) == brute_inversions(w)

    @given(perms(7))
    def test_inverse_transposes_diagram(self, w):
        assert rothe_diagram(inverse(w)) == transpose_diagram(rothe_diagram(w))

    def test_diagram_bounds_checked(self):
        with pytest.raises(ValueError):
            Diagram(2, frozenset({Cell(3, 1)}))


class TestRankMatrix:
    def test_golden_315642_printed(self):
        expected = "\n".join(
            [
                "0 0 1 1 1 1",
                "1 1 2 2 2 2",
                "1 1 2 2 3 3",
                "1 1 2 2 3 4",
                "1 1 2 3 4 5",
                "1 2 3 4 5 6",
            ]
        )
        assert str(rank_matrix(Permutation.parse("315642"))) == expected

    @given(perms(7))
    def test_entries_match_brute_count(self, w):
        R = rank_matrix(w)
        for i in range(1, w.n + 1):
            for j in range(1, w.n + 1):
                assert R.entry(i, j) == brute_rank(w, i, j)

    def test_parse_roundtrip(self):
        from schubgb.permcomb import RankMatrix

        text = "0 1 1\n1 1 1\n2 2 2\n2 2 2"
        assert str(RankMatrix.parse(text)) == text

    @pytest.mark.parametrize(
        "text",
        [
            "0 1\n1",          # ragged
            "0 2",             # column step of 2
            "1 1\n0 1",        # decreasing down a column
            "-1 0",            # negative entry
            "",                # empty
        ],
    )
    def test_malformed(self, text):
        from schubgb.permcomb import RankMatrix

        with pytest.raises(MalformedRankMatrix):
            RankMatrix.parse(text)


class TestEssentialAndDominant:
    def test_golden_315642(self):
        w = Permutation.parse("315642")
        assert essential_set(w).cells == {Cell(1, 2), Cell(4, 4), Cell(5, 2)}
        assert dominant_part(w).cells == {Cell(1, 1), Cell(1, 2)}
        assert lower_outside_corners(w) == {Cell(4, 4), Cell(5, 2)}

    def test_21543(self):
        w = Permutation.parse("21543")
        assert essential_set(w).cells == {Cell(1, 1), Cell(3, 4), Cell(4, 3)}
        assert dominant_part(w).cells == {Cell(1, 1)}

    def test_5237164(self):
        w = Permutation.parse("5237164")
        assert dominant_part(w).cells == {
            Cell(1, 1), Cell(1, 2), Cell(1, 3), Cell(1, 4),
            Cell(2, 1), Cell(3, 1), Cell(4, 1),
        }
        assert lower_outside_corners(w) == {Cell(4, 6), Cell(6, 4)}

    def test_unique_corner_36718245(self):
        # diagram has essential cells in a 2x2 arrangement; only the
        # southeast one survives as a corner
        w = Permutation.parse("36718245")
        assert essential_set(w).cells == {
            Cell(3, 2), Cell(3, 5), Cell(5, 2), Cell(5, 5),
        }
        assert lower_outside_corners(w) == {Cell(5, 5)}

    @given(perms(7))
    def test_essential_cells_are_diagram_cells(self, w):
        d = rothe_diagram(w).cells
        ess = essential_set(w).cells
        assert ess <= d
        # essential cells have no diagram cell immediately south or east
        for c in ess:
            assert Cell(c.row + 1, c.col) not in d
            assert Cell(c.row, c.col + 1) not in d

    @given(perms(7))
    def test_dominant_part_is_young_diagram(self, w):
        dom = dominant_part(w).cells
        for c in dom:
            if c.row > 1:
                assert Cell(c.row - 1, c.col) in dom
            if c.col > 1:
                assert Cell(c.row, c.col - 1) in dom

    @given(perms(7))
    def test_corners_are_weakly_maximal_essential_cells(self, w):
        ess = essential_set(w).cells
        locs = lower_outside_corners(w)
        assert locs <= ess
        for c in locs:
            assert not any(
                o != c and o.row >= c.row and o.col >= c.col for o in ess
            )
        # every essential cell is dominated by some corner
        for e in ess:
            assert any(c.row >= e.row and c.col >= e.col for c in locs)


class TestPatternContainment:
    def test_witness_positions_and_values(self):
        w = Permutation.parse("13254")
        wit = contains_pattern(w, Permutation.parse("2143"))
        assert wit == (2, 3, 4, 5)
        assert tuple(w(i) for i in wit) == (3, 2, 5, 4)

    def test_avoids_3214(self):
        w = Permutation.parse("13254")
        assert contains_pattern(w, Permutation.parse("3214")) is None

    def test_pattern_too_long(self):
        with pytest.raises(PatternTooLong):
            contains_pattern(Permutation.parse("21"), Permutation.parse("321"))

    def test_each_pattern_contains_itself(self):
        for p in EIGHT_PATTERNS:
            assert contains_pattern(p, p) == tuple(range(1, p.n + 1))

    @given(perms(6), perms(4))
    @settings(max_examples=300)
    def test_matches_brute_force(self, w, v):
        if v.n > w.n:
            return
        assert (contains_pattern(w, v) is not None) == brute_contains(w, v)

    @given(perms(6), perms(4))
    @settings(max_examples=200)
    def test_witness_is_lex_least_occurrence(self, w, v):
        if v.n > w.n:
            return
        wit = contains_pattern(w, v)
        if wit is None:
            return
        occurrences = [
            idx
            for idx in combinations(range(1, w.n + 1), v.n)
            if all(
                (w(idx[a]) < w(idx[b])) == (v(a + 1) < v(b + 1))
                for a in range(v.n)
                for b in range(v.n)
            )
        ]
        assert wit == min(occurrences)

    def test_avoids_all_eight_5(self):
        ok, contained = avoids_all_eight(Permutation.parse("13254"))
        assert not ok and [str(p) for p in contained] == ["13254"]

    def test_avoids_all_eight_short_host(self):
        ok, contained = avoids_all_eight(Permutation.parse("4321"))
        assert ok and contained == ()

    def test_s5_containing_exactly_two(self):
        containing = [
            "".join(map(str, imgs))
            for imgs in permutations(range(1, 6))
            if not avoids_all_eight(Permutation(tuple(imgs)))[0]
        ]
        assert containing == ["13254", "21543"]


class TestObstructions:
    def test_21543_type1_witness(self):
        wit = obstruction(Permutation.parse("21543"), "type1")
        assert wit is not None
        assert wit.cells == (Cell(1, 1), Cell(3, 4), Cell(4, 3))

    def test_13254_type3_witness(self):
        wit = obstruction(Permutation.parse("13254"), "type3")
        assert wit is not None
        assert wit.cells == (Cell(2, 2), Cell(4, 4))

    def test_identity_has_none(self):
        obs = obstructions(identity(4))
        assert all(obs[k] is None for k in OBSTRUCTION_KINDS)

    def test_315642_has_none(self):
        obs = obstructions(Permutation.parse("315642"))
        assert all(obs[k] is None for k in OBSTRUCTION_KINDS)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            obstruction(Permutation.parse("21"), "type4")

    def test_type2_example_215364(self):
        assert obstruction(Permutation.parse("215364"), "type2") is not None

    @given(perms(6))
    @settings(max_examples=200)
    def test_witness_cells_lie_in_claimed_sets(self, w):
        d = rothe_diagram(w).cells
        ess = essential_set(w).cells
        dom = dominant_part(w).cells
        obs = obstructions(w)
        t1 = obs["type1"]
        if t1 is not None:
            rs, c1, c2 = t1.cells
            assert rs in dom and rs in ess
            assert {c1, c2} <= d
            assert c1.row != c2.row and c1.col != c2.col
            for c in (c1, c2):
                assert c.row > rs.row and c.col > rs.col
        t3 = obs["type3"]
        if t3 is not None:
            c1, c2 = t3.cells
            assert {c1, c2} <= ess - dom
            assert c2.row > c1.row and c2.col > c1.col
