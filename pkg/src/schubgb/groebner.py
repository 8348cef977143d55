"""Buchberger verification and completion for labeled generating sets.

All heavy loops run in key space: each polynomial is compiled to a dict
from order key to coefficient, so lead-term selection is ``max(dict)`` and
divisibility is a componentwise comparison.  Verification checks every
S-pair against the fixed generator list; completion uses the normal
selection strategy (smallest LCM degree first) and returns the reduced
Gröbner basis, which is unique for a given ideal and order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .idealgen import Generator, GeneratorLabel, GeneratorSet
from .permcomb import Cell
from .polycore import (
    Budget,
    BudgetExceeded,
    Coeff,
    Monomial,
    Polynomial,
    TermOrder,
    ZeroPolynomial,
    _exact_div,
    divide_key_dicts,
    key_dict,
    poly_of_key_dict,
    poly_text,
    s_poly_key_dict,
)

__all__ = [
    "NotGroebner",
    "SPairVerdict",
    "GroebnerReport",
    "is_groebner",
    "buchberger_complete",
    "ideal_member",
    "ideals_equal",
    "initial_ideal",
    "dimension_of_monomial_ideal",
    "clear_completion_cache",
]


class NotGroebner(RuntimeError):
    """Initial ideal requested from a non-Gröbner set without completion."""


@dataclass(frozen=True)
class SPairVerdict:
    """Outcome of a single S-pair reduction."""

    pair: tuple[int, int]
    pair_labels: tuple[tuple[GeneratorLabel, ...], tuple[GeneratorLabel, ...]]
    skipped_by: Optional[str]
    remainder: Polynomial
    remainder_text: str

    @property
    def reduced_to_zero(self) -> bool:
        return self.remainder.is_zero()

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "pair_labels": [
                [str(lb) for lb in labels] for labels in self.pair_labels
            ],
            "skipped_by": self.skipped_by,
            "remainder": self.remainder_text,
        }


@dataclass(frozen=True)
class GroebnerReport:
    """Verdict of an S-pair verification run."""

    is_groebner: bool
    order_spec: str
    failing_pair: Optional[SPairVerdict]
    pairs_checked: int
    pairs_skipped: int
    elapsed: float
    generators: int

    def to_json(self) -> dict:
        return {
            "is_groebner": self.is_groebner,
            "order": self.order_spec,
            "failing_pair": None if self.failing_pair is None else self.failing_pair.to_json(),
            "pairs_checked": self.pairs_checked,
            "pairs_skipped": self.pairs_skipped,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "generators": self.generators,
        }


def _as_generator_set(G, order: TermOrder) -> GeneratorSet:
    """Accept a labeled set, bare generators, or bare polynomials."""
    if isinstance(G, GeneratorSet):
        return G
    gens = []
    for k, item in enumerate(G):
        if isinstance(item, Generator):
            gens.append(item)
        else:
            label = GeneratorLabel(Cell(0, 0), 0, (), (), f"adhoc{k}")
            gens.append(Generator(item, (label,)))
    shape = gens[0].poly.shape if gens else order.shape
    return GeneratorSet("adhoc", shape, tuple(gens))


def _ordered_generators(G: GeneratorSet, order: TermOrder) -> list[Generator]:
    """Canonical processing order: total degree ascending, lead monomial
    descending under the order, then label."""
    gens = [g for g in G.generators if not g.poly.is_zero()]

    def sort_key(g: Generator):
        lk = max(key_dict(g.poly, order))
        return (g.degree, tuple(-x for x in lk), g.labels)

    gens.sort(key=sort_key)
    return gens


def _compile(gens: Sequence[Generator], order: TermOrder):
    """Key dicts, lead keys, and lead coefficients for a generator list."""
    kds, leads, lcs = [], [], []
    for g in gens:
        kd = key_dict(g.poly, order)
        lk = max(kd)
        kds.append(kd)
        leads.append(lk)
        lcs.append(kd[lk])
    return kds, leads, lcs


def is_groebner(
    G: GeneratorSet,
    order: TermOrder,
    budget: Optional[Budget] = None,
    use_product_criterion: bool = True,
) -> GroebnerReport:
    """Check whether G is a Gröbner basis under the order by reducing every
    S-polynomial against the full list.  Stops at the first nonzero
    remainder.  The empty set is trivially Gröbner.

    Pairs whose lead monomials are coprime reduce to zero automatically and
    are skipped when the product criterion is enabled; disabling it only
    adds explicit reductions and never changes the verdict.
    """
    start = time.perf_counter()
    gens = _ordered_generators(_as_generator_set(G, order), order)
    if budget is None:
        budget = Budget()
    kds, leads, lcs = _compile(gens, order)
    divisors = list(zip(leads, lcs, kds))
    checked = skipped = 0
    failing: Optional[SPairVerdict] = None
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if use_product_criterion and order.coprime_keys(leads[i], leads[j]):
                skipped += 1
                continue
            work = s_poly_key_dict(kds[i], kds[j], order)
            rem = divide_key_dicts(work, divisors, budget)
            checked += 1
            if rem:
                rp = poly_of_key_dict(rem, order)
                failing = SPairVerdict(
                    (i, j),
                    (gens[i].labels, gens[j].labels),
                    None,
                    rp,
                    poly_text(rp, order),
                )
                break
        if failing is not None:
            break
    return GroebnerReport(
        is_groebner=failing is None,
        order_spec=order.spec(),
        failing_pair=failing,
        pairs_checked=checked,
        pairs_skipped=skipped,
        elapsed=time.perf_counter() - start,
        generators=len(gens),
    )


def _monic(kd: dict[tuple[int, ...], Coeff]) -> dict[tuple[int, ...], Coeff]:
    lc = kd[max(kd)]
    if lc == 1:
        return kd
    return {k: _exact_div(c, lc) for k, c in kd.items()}


_completion_cache: dict[tuple, GeneratorSet] = {}


def clear_completion_cache() -> None:
    _completion_cache.clear()


def _cache_key(G: GeneratorSet, order: TermOrder) -> tuple:
    polys = frozenset(
        tuple(sorted(g.poly.raw_terms().items())) for g in G.generators
    )
    return (order.spec(), G.shape, polys)


def buchberger_complete(
    G: GeneratorSet,
    order: TermOrder,
    budget: Optional[Budget] = None,
) -> GeneratorSet:
    """Reduced Gröbner basis of the ideal generated by G.

    Normal selection strategy: the pending pair with the smallest LCM
    degree runs first (ties by position), new elements are made monic, and
    the final basis is inter-reduced, so the output is the unique reduced
    basis of the ideal.  Results are cached per (order, generator set);
    cache hits ignore the budget.
    """
    G = _as_generator_set(G, order)
    ck = _cache_key(G, order)
    hit = _completion_cache.get(ck)
    if hit is not None:
        return hit
    if budget is None:
        budget = Budget()
    gens = _ordered_generators(G, order)
    basis: list[dict[tuple[int, ...], Coeff]] = []
    labels: list[tuple[GeneratorLabel, ...]] = []
    for g in gens:
        basis.append(_monic(key_dict(g.poly, order)))
        labels.append(g.labels)
    leads = [max(kd) for kd in basis]
    head = order.head_len
    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    derived = 0
    while pending:
        best = min(
            pending,
            key=lambda ij: (
                sum(order.lcm_key(leads[ij[0]], leads[ij[1]])[head:]),
                ij,
            ),
        )
        pending.discard(best)
        i, j = best
        if order.coprime_keys(leads[i], leads[j]):
            continue
        work = s_poly_key_dict(basis[i], basis[j], order)
        divisors = list(zip(leads, (kd[lk] for kd, lk in zip(basis, leads)), basis))
        rem = divide_key_dicts(work, divisors, budget)
        if rem:
            rem = _monic(rem)
            k = len(basis)
            basis.append(rem)
            leads.append(max(rem))
            derived += 1
            labels.append(
                (GeneratorLabel(Cell(0, 0), 0, (), (), f"gb{derived}"),)
            )
            pending.update((t, k) for t in range(k))
    return _finalize_reduced(basis, labels, leads, order, budget, G.style, G.shape, ck)


def _finalize_reduced(
    basis: list[dict[tuple[int, ...], Coeff]],
    labels: list[tuple[GeneratorLabel, ...]],
    leads: list[tuple[int, ...]],
    order: TermOrder,
    budget: Budget,
    style: str,
    shape,
    cache_key: tuple,
) -> GeneratorSet:
    """Minimalize lead terms, fully tail-reduce, and package the result."""
    keep = []
    for i, lk in enumerate(leads):
        redundant = False
        for j, other in enumerate(leads):
            if i == j:
                continue
            if all(a <= b for a, b in zip(other, lk)) and (
                other != lk or j < i
            ):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    reduced: list[dict[tuple[int, ...], Coeff]] = []
    kept_labels: list[tuple[GeneratorLabel, ...]] = []
    for pos, i in enumerate(keep):
        others = [keep[t] for t in range(len(keep)) if t != pos]
        divisors = [(leads[j], basis[j][leads[j]], basis[j]) for j in others]
        rem = divide_key_dicts(dict(basis[i]), divisors, budget)
        if not rem:
            continue
        reduced.append(_monic(rem))
        kept_labels.append(labels[i])
    out: list[Generator] = []
    for kd, lbs in zip(reduced, kept_labels):
        out.append(Generator(poly_of_key_dict(kd, order), lbs))
    out.sort(
        key=lambda g: (
            g.degree,
            tuple(-x for x in max(key_dict(g.poly, order))),
            g.labels,
        )
    )
    result = GeneratorSet(f"{style}+gb", tuple(shape), tuple(out))
    _completion_cache[cache_key] = result
    return result


def ideal_member(
    f: Polynomial,
    G: GeneratorSet,
    order: TermOrder,
    budget: Optional[Budget] = None,
) -> bool:
    """Whether f lies in the ideal generated by G: its normal form against
    the completed basis is zero."""
    if f.is_zero():
        return True
    gb = buchberger_complete(G, order, budget)
    if not gb.generators:
        return False
    if budget is None:
        budget = Budget()
    divisors = []
    for g in gb.generators:
        kd = key_dict(g.poly, order)
        lk = max(kd)
        divisors.append((lk, kd[lk], kd))
    rem = divide_key_dicts(key_dict(f, order), divisors, budget)
    return not rem


def ideals_equal(
    G1: GeneratorSet,
    G2: GeneratorSet,
    order: TermOrder,
    budget: Optional[Budget] = None,
) -> bool:
    """Whether G1 and G2 generate the same ideal.  Implemented as equality
    of reduced Gröbner bases, which is equivalent to mutual membership of
    all generators because the reduced basis of an ideal is unique."""
    G1 = _as_generator_set(G1, order)
    G2 = _as_generator_set(G2, order)
    if G1.shape != G2.shape:
        return False
    gb1 = buchberger_complete(G1, order, budget)
    gb2 = buchberger_complete(G2, order, budget)
    set1 = {frozenset(g.poly.raw_terms().items()) for g in gb1.generators}
    set2 = {frozenset(g.poly.raw_terms().items()) for g in gb2.generators}
    return set1 == set2


def initial_ideal(
    G: GeneratorSet,
    order: TermOrder,
    complete: bool = False,
    budget: Optional[Budget] = None,
    assume_groebner: bool = False,
) -> list[Monomial]:
    """Minimal monomial generators of the lead-term ideal of the ideal
    generated by G.  Requires G to already be a Gröbner basis unless
    ``complete`` is set, in which case the basis is completed first.
    ``assume_groebner`` skips the verification when the caller has already
    run it."""
    G = _as_generator_set(G, order)
    if complete:
        G = buchberger_complete(G, order, budget)
    elif not assume_groebner:
        report = is_groebner(G, order, budget)
        if not report.is_groebner:
            raise NotGroebner(
                "generator set is not a Gröbner basis under "
                f"{order.spec()}; pass complete=True to complete it first"
            )
    leads = []
    for g in G.generators:
        if g.poly.is_zero():
            continue
        kd = key_dict(g.poly, order)
        leads.append(order.exps_of_key(max(kd)))
    minimal: list[tuple[int, ...]] = []
    for e in sorted(set(leads), key=lambda t: (sum(t), t)):
        if not any(all(a <= b for a, b in zip(m, e)) for m in minimal):
            minimal.append(e)
    return [Monomial(G.shape, e) for e in sorted(minimal)]


def dimension_of_monomial_ideal(
    monomials: Iterable[Monomial], n_vars: int
) -> int:
    """Krull dimension of the quotient by a monomial ideal.

    Equals the maximum size of a variable subset containing no generator's
    support, computed on the radical.  The complement of such a subset must
    hit every support, so the height is the minimum hitting set size and
    the dimension is n_vars minus it.  The unit ideal gives -1 (the zero
    ring).
    """
    supports: set[frozenset[int]] = set()
    for m in monomials:
        sup = frozenset(i for i, e in enumerate(m.exps) if e > 0)
        if not sup:
            return -1
        supports.add(sup)
    if not supports:
        return n_vars
    minimal = [
        s for s in supports if not any(t < s for t in supports)
    ]
    minimal.sort(key=lambda s: (len(s), sorted(s)))
    return n_vars - _min_hitting_set(minimal)


def _min_hitting_set(sets: list[frozenset[int]]) -> int:
    """Branch and bound: pick an unhit set, branch on which of its
    variables joins the hitting set; prune with a disjoint-set packing
    lower bound."""
    best = len(sets)

    def packing_bound(remaining: list[frozenset[int]]) -> int:
        used: set[int] = set()
        count = 0
        for s in remaining:
            if not (s & used):
                count += 1
                used |= s
        return count

    def search(remaining: list[frozenset[int]], chosen: int) -> None:
        nonlocal best
        if not remaining:
            best = min(best, chosen)
            return
        if chosen + packing_bound(remaining) >= best:
            return
        target = min(remaining, key=len)
        for v in sorted(target):
            nxt = [s for s in remaining if v not in s]
            search(nxt, chosen + 1)

    search(sets, 0)
    return best
