"""Acceptance gate: one test per shipped criterion, each timed against its
stated budget.  Every test prints a single PASS line with its elapsed time
(visible with -s; the pytest verdict itself is the pass/fail record).

The headline claim quantifies over all n and all diagonal term orders;
desk-scale evidence is the exhaustive S_4/S_5/S_6 sweeps, the fixed-order
sampling, and the structural property suites.
"""

import time
from contextlib import contextmanager

from schubgb.groebner import (
    dimension_of_monomial_ideal,
    initial_ideal,
    is_groebner,
)
from schubgb.gvd import delete_corner_permutation
from schubgb.idealgen import cdg_generators, rank_matrix_generators
from schubgb.permcomb import (
    EIGHT_PATTERNS,
    Cell,
    Permutation,
    contains_pattern,
    coxeter_length,
    dominant_part,
    essential_set,
    lower_outside_corners,
    rank_matrix,
    rothe_diagram,
)
from schubgb.polycore import (
    AntiDiagonalLex,
    ColLex,
    MinorCalculator,
    RowLex,
    is_diagonal_order,
    lead_term,
)
from schubgb.verifier import (
    SweepConfig,
    load_fixture,
    sweep,
    symmetric_group,
    verify_lemmas,
    verify_rank_fixtures,
)


@contextmanager
def budget(number, label, seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, (
        f"criterion {number} ({label}) took {elapsed:.2f}s, budget {seconds}s"
    )
    print(f"PASS criterion {number}: {label} ({elapsed:.2f}s < {seconds}s)")


def test_criterion_01_golden_combinatorics():
    with budget(1, "golden combinatorics of 315642", 1):
        w = Permutation.parse("315642")
        assert set(rothe_diagram(w).cells) == {
            Cell(1, 1), Cell(1, 2), Cell(3, 2), Cell(3, 4),
            Cell(4, 2), Cell(4, 4), Cell(5, 2),
        }
        assert essential_set(w).cells == {Cell(1, 2), Cell(4, 4), Cell(5, 2)}
        assert coxeter_length(w) == 7
        assert lower_outside_corners(w) == frozenset(
            {Cell(4, 4), Cell(5, 2)}
        )
        assert dominant_part(w).cells == {Cell(1, 1), Cell(1, 2)}
        assert str(rank_matrix(w)) == (
            "0 0 1 1 1 1\n"
            "1 1 2 2 2 2\n"
            "1 1 2 2 3 3\n"
            "1 1 2 2 3 4\n"
            "1 1 2 3 4 5\n"
            "1 2 3 4 5 6"
        )


def test_criterion_02_pattern_fixtures():
    with budget(2, "pattern containment fixtures", 1):
        w = Permutation.parse("13254")
        wit = contains_pattern(w, Permutation.parse("2143"))
        assert wit is not None
        assert tuple(w(i) for i in wit) == (3, 2, 5, 4)
        assert contains_pattern(w, Permutation.parse("3214")) is None


def test_criterion_03_diagonal_order_property():
    with budget(3, "diagonal-order property at n=5", 10):
        shape = (5, 5)
        assert is_diagonal_order(RowLex(shape), 5, 4)
        assert is_diagonal_order(ColLex(shape), 5, 4)
        assert not is_diagonal_order(AntiDiagonalLex(shape), 5, 4)


def test_criterion_04_eight_patterns_fail():
    with budget(4, "all eight patterns fail with witness", 3600):
        for w in EIGHT_PATTERNS:
            shape = (w.n, w.n)
            report = is_groebner(cdg_generators(w), RowLex(shape))
            assert not report.is_groebner, str(w)
            assert report.failing_pair is not None, str(w)
            assert not report.failing_pair.remainder.is_zero(), str(w)


def test_criterion_05_s4_sweep():
    with budget(5, "S_4 sweep under both orders", 60):
        summary = sweep(SweepConfig(n=4, orders=("rowlex", "collex")))
        assert summary.total == 24
        assert summary.cdg_count == 24
        assert summary.non_cdg == {}
        assert summary.disagreements == []
        assert summary.ok


def test_criterion_06_s5_sweep():
    with budget(6, "S_5 sweep: exactly 13254 and 21543 fail", 1800):
        records = []
        summary = sweep(
            SweepConfig(n=5, orders=("rowlex", "collex")),
            records_sink=records.append,
        )
        assert summary.total == 120
        assert summary.cdg_count == 118
        assert sorted(summary.non_cdg["rowlex"]) == ["13254", "21543"]
        assert sorted(summary.non_cdg["collex"]) == ["13254", "21543"]
        assert summary.disagreements == []
        for record in records:
            verdicts = set(record["cdg_verdicts"].values())
            assert len(verdicts) == 1  # identical under both orders


def test_criterion_07_s6_sweep():
    with budget(7, "S_6 sweep: zero disagreements", 43200):
        summary = sweep(SweepConfig(n=6, orders=("rowlex",)))
        assert summary.total == 720
        assert summary.disagreements == []
        assert summary.budget_errors == []
        assert summary.ok


def test_criterion_08_diagram_lemma_suite():
    with budget(8, "diagram lemma suite through S_7", 600):
        report = verify_lemmas(7, suite="diagram")
        assert report.violations == []
        assert report.ok


def test_criterion_09_gvd_suite():
    with budget(9, "corner-splitting suite through S_5", 3600):
        report = verify_lemmas(5, suite="gvd")
        assert report.violations == []
        assert report.ok
        w2 = delete_corner_permutation(Permutation.parse("215634"), (4, 4))
        assert w2.images == Permutation.parse("215436").images


def test_criterion_10_height_check():
    with budget(10, "height equals Coxeter length on S_5", 1800):
        shape = (5, 5)
        order = RowLex(shape)
        checked = 0
        for w in symmetric_group(5):
            gens = cdg_generators(w)
            if not is_groebner(gens, order).is_groebner:
                continue
            leads = initial_ideal(gens, order, assume_groebner=True)
            height = 25 - dimension_of_monomial_ideal(leads, 25)
            assert height == coxeter_length(w), str(w)
            checked += 1
        assert checked == 118


def test_criterion_11_rank_matrix_fixtures():
    with budget(11, "bundled rank matrices fail the check", 60):
        report = verify_rank_fixtures()
        assert report.ok
        for name in ("N1", "N2"):
            assert report.results[name]["is_groebner"] is False
        assert load_fixture("N1.txt").rows == 4


def test_criterion_12_worked_lcm_fixture():
    with budget(12, "worked lead-term and LCM fixture", 1):
        w = Permutation.parse("5237164")
        shape = (7, 7)
        order = RowLex(shape)
        zeroed = [(c.row, c.col) for c in dominant_part(w)]
        assert sorted(zeroed) == [
            (1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (3, 1), (4, 1),
        ]
        calc = MinorCalculator(shape, zeroed)
        q_a = calc.minor((1, 2, 3), (2, 3, 5))
        h_b = calc.minor((2, 4, 5, 6), (1, 2, 3, 4))
        lt_q = lead_term(q_a, order)[0]
        lt_h = lead_term(h_b, order)[0]
        assert str(lt_q) == "x[1,5]*x[2,2]*x[3,3]"
        assert str(lt_h) == "x[2,2]*x[4,3]*x[5,1]*x[6,4]"
        lcm_key = order.lcm_key(order.key_of(lt_q), order.key_of(lt_h))
        assert str(order.monomial_of_key(lcm_key)) == (
            "x[1,5]*x[2,2]*x[3,3]*x[4,3]*x[5,1]*x[6,4]"
        )
