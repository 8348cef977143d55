"""Exact sparse multivariate polynomials over grid variables x[i,j].

Monomials live on a fixed ``(nrows, ncols)`` grid and are stored as dense
exponent tuples in row-major order.  Every shipped term order maps a
monomial to a *key*, a tuple of nonnegative integers such that

* plain tuple comparison of keys realizes the order,
* componentwise addition of keys is monomial multiplication, and
* componentwise <= on keys is divisibility.

Reduction loops therefore operate on raw key tuples.  The key of a product
is the sum of keys because every key component (reindexed exponents, weight
totals, y-degrees) is linear in the exponent vector; this is why
WeightedDiagonal requires nonnegative weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

__all__ = [
    "ShapeMismatch",
    "ZeroPolynomial",
    "BudgetExceeded",
    "Budget",
    "DEFAULT_BUDGET",
    "Shape",
    "Coeff",
    "Variable",
    "Monomial",
    "Polynomial",
    "TermOrder",
    "RowLex",
    "ColLex",
    "AntiDiagonalLex",
    "WeightedDiagonal",
    "YCompatible",
    "parse_order",
    "ORDER_NAMES",
    "compare",
    "lead_term",
    "minor",
    "MinorCalculator",
    "s_polynomial",
    "reduce",
    "is_diagonal_order",
    "poly_text",
]

Shape = tuple[int, int]
Coeff = Union[int, Fraction]

DEFAULT_BUDGET = 10**6


class ShapeMismatch(ValueError):
    """Operands defined over different grids, or bad minor index sets."""


class ZeroPolynomial(ValueError):
    """The zero polynomial has no lead term."""


class BudgetExceeded(RuntimeError):
    """A reduction task ran out of its step budget."""

    def __init__(self, message: str, spent: int):
        super().__init__(message)
        self.spent = spent


class Budget:
    """Mutable step counter shared across the reductions of one task."""

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExceeded(
                f"reduction budget of {self.limit} steps exhausted", self.spent
            )


class Variable(NamedTuple):
    """The indeterminate x[row,col]."""

    row: int
    col: int

    def __str__(self) -> str:
        return f"x[{self.row},{self.col}]"


def _flat(var: Variable, shape: Shape) -> int:
    nrows, ncols = shape
    if not (1 <= var.row <= nrows and 1 <= var.col <= ncols):
        raise ShapeMismatch(f"{var} outside {nrows}x{ncols} grid")
    return (var.row - 1) * ncols + (var.col - 1)


def _unflat(idx: int, shape: Shape) -> Variable:
    ncols = shape[1]
    return Variable(idx // ncols + 1, idx % ncols + 1)


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _exact_div(a: Coeff, b: Coeff) -> Coeff:
    if b == 1:
        return a
    if b == -1:
        return -a
    return _norm_coeff(Fraction(a) / Fraction(b))


@dataclass(frozen=True)
class Monomial:
    """A monomial over one grid, as a dense exponent tuple."""

    shape: Shape
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        nrows, ncols = self.shape
        if len(self.exps) != nrows * ncols:
            raise ShapeMismatch("exponent tuple does not match grid size")
        if any(e < 0 for e in self.exps):
            raise ValueError("negative exponent")

    @classmethod
    def one(cls, shape: Shape) -> "Monomial":
        return cls(shape, (0,) * (shape[0] * shape[1]))

    @classmethod
    def from_exponents(cls, shape: Shape, exponents: dict[Variable, int]) -> "Monomial":
        exps = [0] * (shape[0] * shape[1])
        for var, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            exps[_flat(var, shape)] += e
        return cls(shape, tuple(exps))

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def exponents(self) -> dict[Variable, int]:
        return {
            _unflat(i, self.shape): e for i, e in enumerate(self.exps) if e > 0
        }

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.shape != other.shape:
            raise ShapeMismatch("grids differ")
        return Monomial(self.shape, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        if self.shape != other.shape:
            raise ShapeMismatch("grids differ")
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __str__(self) -> str:
        if not any(self.exps):
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e:
                v = _unflat(i, self.shape)
                parts.append(str(v) if e == 1 else f"{v}^{e}")
        return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("shape", "_terms", "_hash")

    def __init__(self, shape: Shape, terms: dict[tuple[int, ...], Coeff]):
        clean: dict[tuple[int, ...], Coeff] = {}
        for exps, coeff in terms.items():
            coeff = _norm_coeff(coeff)
            if coeff:
                clean[exps] = coeff
        self.shape = shape
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def zero(cls, shape: Shape) -> "Polynomial":
        return cls(shape, {})

    @classmethod
    def constant(cls, c: Coeff, shape: Shape) -> "Polynomial":
        return cls(shape, {(0,) * (shape[0] * shape[1]): c})

    @classmethod
    def variable(cls, var: Variable, shape: Shape) -> "Polynomial":
        exps = [0] * (shape[0] * shape[1])
        exps[_flat(var, shape)] = 1
        return cls(shape, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Monomial, Coeff]]) -> "Polynomial":
        items = list(terms)
        if not items:
            raise ValueError("from_terms needs at least one term; use zero(shape)")
        shape = items[0][0].shape
        acc: dict[tuple[int, ...], Coeff] = {}
        for mono, coeff in items:
            if mono.shape != shape:
                raise ShapeMismatch("grids differ")
            acc[mono.exps] = acc.get(mono.exps, 0) + coeff
        return cls(shape, acc)

    def is_zero(self) -> bool:
        return not self._terms

    def num_terms(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def terms(self) -> Iterator[tuple[Monomial, Coeff]]:
        for exps in sorted(self._terms):
            yield Monomial(self.shape, exps), self._terms[exps]

    def raw_terms(self) -> dict[tuple[int, ...], Coeff]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> Coeff:
        return self._terms.get(mono.exps, 0)

    def _check(self, other: "Polynomial") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch("grids differ")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc[exps] = acc.get(exps, 0) + coeff
        return Polynomial(self.shape, acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc[exps] = acc.get(exps, 0) - coeff
        return Polynomial(self.shape, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.shape, {e: -c for e, c in self._terms.items()})

    def scale(self, c: Coeff) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.shape)
        return Polynomial(self.shape, {e: coeff * c for e, coeff in self._terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        return Polynomial(self.shape, acc)

    def mul_term(self, exps: tuple[int, ...], coeff: Coeff) -> "Polynomial":
        if not coeff:
            return Polynomial.zero(self.shape)
        return Polynomial(
            self.shape,
            {
                tuple(a + b for a, b in zip(e, exps)): c * coeff
                for e, c in self._terms.items()
            },
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            items = frozenset(self._terms.items())
            object.__setattr__(self, "_hash", hash((self.shape, items)))
        return self._hash  # type: ignore[return-value]

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        return f"Polynomial({poly_text(self, RowLex(self.shape))})"


# ---------------------------------------------------------------------------
# term orders


class TermOrder:
    """Base class.  Subclasses fix a variable-significance permutation
    ``_perm`` (slice position -> flat variable index) and a number of head
    components prepended to the reindexed exponent slice."""

    shape: Shape
    head_len: int
    _perm: tuple[int, ...]

    def key(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        s = tuple(exps[p] for p in self._perm)
        return self.heads_from_slice(s) + s

    def heads_from_slice(self, slice_exps: tuple[int, ...]) -> tuple[int, ...]:
        return ()

    def exps_of_key(self, key: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * len(self._perm)
        for pos, flat_idx in enumerate(self._perm):
            out[flat_idx] = key[self.head_len + pos]
        return tuple(out)

    def lcm_key(self, ka: tuple[int, ...], kb: tuple[int, ...]) -> tuple[int, ...]:
        h = self.head_len
        s = tuple(max(a, b) for a, b in zip(ka[h:], kb[h:]))
        return self.heads_from_slice(s) + s

    def coprime_keys(self, ka: tuple[int, ...], kb: tuple[int, ...]) -> bool:
        h = self.head_len
        return all(a == 0 or b == 0 for a, b in zip(ka[h:], kb[h:]))

    def key_of(self, m: Monomial) -> tuple[int, ...]:
        if m.shape != self.shape:
            raise ShapeMismatch("monomial grid differs from order grid")
        return self.key(m.exps)

    def monomial_of_key(self, key: tuple[int, ...]) -> Monomial:
        return Monomial(self.shape, self.exps_of_key(key))

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec()!r})"


class RowLex(TermOrder):
    """Lexicographic with x[1,1] > x[1,2] > ... > x[2,1] > ... (row-major)."""

    head_len = 0

    def __init__(self, shape: Shape):
        self.shape = shape
        self._perm = tuple(range(shape[0] * shape[1]))

    def key(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        return exps

    def exps_of_key(self, key: tuple[int, ...]) -> tuple[int, ...]:
        return key

    def spec(self) -> str:
        return "rowlex"


class ColLex(TermOrder):
    """Lexicographic with x[1,1] > x[2,1] > ... > x[1,2] > ... (column-major)."""

    head_len = 0

    def __init__(self, shape: Shape):
        self.shape = shape
        nrows, ncols = shape
        self._perm = tuple(
            (i - 1) * ncols + (j - 1)
            for j in range(1, ncols + 1)
            for i in range(1, nrows + 1)
        )

    def spec(self) -> str:
        return "collex"


class AntiDiagonalLex(TermOrder):
    """Lexicographic reading each row right to left: x[1,n] > ... > x[1,1] >
    x[2,n] > ...; 2x2 minors lead anti-diagonally, so this order is not
    diagonal."""

    head_len = 0

    def __init__(self, shape: Shape):
        self.shape = shape
        nrows, ncols = shape
        self._perm = tuple(
            (i - 1) * ncols + (j - 1)
            for i in range(1, nrows + 1)
            for j in range(ncols, 0, -1)
        )

    def spec(self) -> str:
        return "antidiaglex"


class WeightedDiagonal(TermOrder):
    """Compare by total weight first, ties broken by RowLex.  Weights must be
    nonnegative integers (keys must stay monotone under multiplication)."""

    head_len = 1

    def __init__(self, weights: dict[Variable, int], shape: Shape):
        self.shape = shape
        nvars = shape[0] * shape[1]
        wvec = [0] * nvars
        for var, wt in weights.items():
            if not isinstance(wt, int) or wt < 0:
                raise ValueError(f"weight for {var} must be a nonnegative integer")
            wvec[_flat(var, shape)] = wt
        self._wvec = tuple(wvec)
        self._perm = tuple(range(nvars))

    def heads_from_slice(self, slice_exps: tuple[int, ...]) -> tuple[int, ...]:
        return (sum(w * e for w, e in zip(self._wvec, slice_exps) if e),)

    def spec(self) -> str:
        wt = ",".join(
            f"{_unflat(i, self.shape)}:{w}" for i, w in enumerate(self._wvec) if w
        )
        return f"weighted({wt})"


class YCompatible(TermOrder):
    """Compare by y-degree first, then by the base order."""

    def __init__(self, y: Variable, base: TermOrder):
        self.shape = base.shape
        self.y = y
        self.base = base
        self._perm = base._perm
        self.head_len = 1 + base.head_len
        self._y_flat = _flat(y, base.shape)
        self._y_slice_pos = base._perm.index(self._y_flat)

    def key(self, exps: tuple[int, ...]) -> tuple[int, ...]:
        return (exps[self._y_flat],) + self.base.key(exps)

    def heads_from_slice(self, slice_exps: tuple[int, ...]) -> tuple[int, ...]:
        return (slice_exps[self._y_slice_pos],) + self.base.heads_from_slice(slice_exps)

    def spec(self) -> str:
        return f"ycompat({self.y};{self.base.spec()})"


ORDER_NAMES = ("rowlex", "collex", "antidiaglex")


def parse_order(name: str, shape: Shape) -> TermOrder:
    """Build a shipped order from its CLI name."""
    if name == "rowlex":
        return RowLex(shape)
    if name == "collex":
        return ColLex(shape)
    if name == "antidiaglex":
        return AntiDiagonalLex(shape)
    raise ValueError(f"unknown order {name!r}; expected one of {ORDER_NAMES}")


def compare(order: TermOrder, a: Monomial, b: Monomial) -> str:
    """Total-order comparison, returned as "LT", "EQ", or "GT"."""
    ka, kb = order.key_of(a), order.key_of(b)
    if ka < kb:
        return "LT"
    if ka > kb:
        return "GT"
    return "EQ"


# ---------------------------------------------------------------------------
# key-space plumbing shared with the Buchberger machinery


def key_dict(f: Polynomial, order: TermOrder) -> dict[tuple[int, ...], Coeff]:
    """Compile a polynomial into an order-keyed term dict."""
    if f.shape != order.shape:
        raise ShapeMismatch("polynomial grid differs from order grid")
    key = order.key
    return {key(exps): coeff for exps, coeff in f._terms.items()}


def poly_of_key_dict(kd: dict[tuple[int, ...], Coeff], order: TermOrder) -> Polynomial:
    exps_of = order.exps_of_key
    return Polynomial(order.shape, {exps_of(k): c for k, c in kd.items()})


def divide_key_dicts(
    work: dict[tuple[int, ...], Coeff],
    divisors: Sequence[tuple[tuple[int, ...], Coeff, dict[tuple[int, ...], Coeff]]],
    budget: Budget,
    cofactors: Optional[list[dict[tuple[int, ...], Coeff]]] = None,
) -> dict[tuple[int, ...], Coeff]:
    """Deterministic multivariate division in key space.

    ``work`` is consumed.  At each step the first divisor (in list order)
    whose lead key divides the current lead key of ``work`` is applied;
    otherwise the lead term moves to the remainder.  Each step spends one
    budget unit.
    """
    remainder: dict[tuple[int, ...], Coeff] = {}
    while work:
        budget.spend()
        lt = max(work)
        c = work[lt]
        for idx, (dk, dc, dterms) in enumerate(divisors):
            if all(x <= y for x, y in zip(dk, lt)):
                q = tuple(y - x for x, y in zip(dk, lt))
                factor = _exact_div(c, dc)
                for k2, c2 in dterms.items():
                    kk = tuple(a + b for a, b in zip(q, k2))
                    nc = work.get(kk, 0) - factor * c2
                    if nc:
                        work[kk] = nc
                    else:
                        work.pop(kk, None)
                if cofactors is not None:
                    cof = cofactors[idx]
                    cof[q] = cof.get(q, 0) + factor
                break
        else:
            remainder[lt] = c
            del work[lt]
    return remainder


def s_poly_key_dict(
    fk: dict[tuple[int, ...], Coeff],
    gk: dict[tuple[int, ...], Coeff],
    order: TermOrder,
) -> dict[tuple[int, ...], Coeff]:
    """S-polynomial in key space, with both lead terms scaled to cancel."""
    kf, kg = max(fk), max(gk)
    cf, cg = fk[kf], gk[kg]
    kl = order.lcm_key(kf, kg)
    qf = tuple(b - a for a, b in zip(kf, kl))
    qg = tuple(b - a for a, b in zip(kg, kl))
    acc: dict[tuple[int, ...], Coeff] = {}
    for k, c in fk.items():
        kk = tuple(a + b for a, b in zip(k, qf))
        acc[kk] = acc.get(kk, 0) + _exact_div(c, cf)
    for k, c in gk.items():
        kk = tuple(a + b for a, b in zip(k, qg))
        nc = acc.get(kk, 0) - _exact_div(c, cg)
        if nc:
            acc[kk] = nc
        else:
            acc.pop(kk, None)
    return acc


# ---------------------------------------------------------------------------
# public operations


def lead_term(f: Polynomial, order: TermOrder) -> tuple[Monomial, Coeff]:
    """Maximal term of a nonzero polynomial under the order."""
    if f.is_zero():
        raise ZeroPolynomial("zero polynomial has no lead term")
    if f.shape != order.shape:
        raise ShapeMismatch("polynomial grid differs from order grid")
    key = order.key
    best = max(f._terms, key=key)
    return Monomial(f.shape, best), f._terms[best]


class MinorCalculator:
    """Minors of one grid of indeterminates with structural zeros, memoized
    on (rows, cols) index subsets so overlapping minors share cofactors."""

    def __init__(self, shape: Shape, zeroed: Iterable[tuple[int, int]] = ()):
        self.shape = shape
        self.zeroed = frozenset((r, c) for r, c in zeroed)
        self._nvars = shape[0] * shape[1]
        self._memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    def entry(self, row: int, col: int) -> Optional[Variable]:
        nrows, ncols = self.shape
        if not (1 <= row <= nrows and 1 <= col <= ncols):
            raise ShapeMismatch(f"({row},{col}) outside {nrows}x{ncols} grid")
        if (row, col) in self.zeroed:
            return None
        return Variable(row, col)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        rows = tuple(rows)
        cols = tuple(cols)
        if len(rows) != len(cols) or not rows:
            raise ShapeMismatch("row and column index sets must be equal and nonempty")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ShapeMismatch("repeated row or column index")
        for r in rows:
            self.entry(r, cols[0])
        for c in cols:
            self.entry(rows[0], c)
        return self._minor(tuple(sorted(rows)), tuple(sorted(cols)))

    def _minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        cached = self._memo.get((rows, cols))
        if cached is not None:
            return cached
        if len(rows) == 1:
            var = self.entry(rows[0], cols[0])
            poly = (
                Polynomial.zero(self.shape)
                if var is None
                else Polynomial.variable(var, self.shape)
            )
        else:
            acc: dict[tuple[int, ...], Coeff] = {}
            r0 = rows[0]
            rest_rows = rows[1:]
            for t, c in enumerate(cols):
                var = self.entry(r0, c)
                if var is None:
                    continue
                sub = self._minor(rest_rows, cols[:t] + cols[t + 1 :])
                if sub.is_zero():
                    continue
                sign = 1 if t % 2 == 0 else -1
                vidx = _flat(var, self.shape)
                for exps, coeff in sub._terms.items():
                    lifted = list(exps)
                    lifted[vidx] += 1
                    key = tuple(lifted)
                    nc = acc.get(key, 0) + sign * coeff
                    if nc:
                        acc[key] = nc
                    else:
                        acc.pop(key, None)
            poly = Polynomial(self.shape, acc)
        self._memo[(rows, cols)] = poly
        return poly


def minor(
    rows: Sequence[int],
    cols: Sequence[int],
    shape: Shape,
    zeroed: Iterable[tuple[int, int]] = (),
) -> Polynomial:
    """Determinant of the submatrix on the given rows and columns of the
    grid of indeterminates, with the listed positions set to zero.  Returns
    the zero polynomial when the minor vanishes identically."""
    return MinorCalculator(shape, zeroed).minor(rows, cols)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """(lcm/LT(f)) * f / lc(f) - (lcm/LT(g)) * g / lc(g)."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("s-polynomial needs nonzero inputs")
    fk = key_dict(f, order)
    gk = key_dict(g, order)
    return poly_of_key_dict(s_poly_key_dict(fk, gk, order), order)


def reduce(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order: TermOrder,
    budget: Optional[Budget] = None,
) -> tuple[Polynomial, list[Polynomial]]:
    """Deterministic division of f by an ordered basis list.

    Returns (remainder, cofactors) with f == sum(cofactor_i * basis_i) +
    remainder exactly, and no remainder term divisible by any basis lead
    term.
    """
    if any(g.is_zero() for g in basis):
        raise ZeroPolynomial("division by a zero polynomial")
    if budget is None:
        budget = Budget()
    divisors = []
    for g in basis:
        gk = key_dict(g, order)
        lk = max(gk)
        divisors.append((lk, gk[lk], gk))
    cof_dicts: list[dict[tuple[int, ...], Coeff]] = [{} for _ in basis]
    rem = divide_key_dicts(key_dict(f, order), divisors, budget, cof_dicts)
    cofactors = [poly_of_key_dict(cd, order) for cd in cof_dicts]
    return poly_of_key_dict(rem, order), cofactors


def is_diagonal_order(order: TermOrder, n: int, kmax: int) -> bool:
    """Whether the lead term of every minor of the generic n-by-n grid of
    size at most kmax is its main-diagonal product."""
    if kmax > n:
        raise ShapeMismatch("kmax exceeds grid size")
    if order.shape != (n, n):
        raise ShapeMismatch("order grid must be n-by-n")
    calc = MinorCalculator((n, n))
    indices = range(1, n + 1)
    for k in range(1, kmax + 1):
        for rows in combinations(indices, k):
            for cols in combinations(indices, k):
                poly = calc.minor(rows, cols)
                mono, _ = lead_term(poly, order)
                diag = Monomial.from_exponents(
                    (n, n), {Variable(r, c): 1 for r, c in zip(rows, cols)}
                )
                if mono != diag:
                    return False
    return True


def leibniz_minor(
    rows: Sequence[int],
    cols: Sequence[int],
    shape: Shape,
    zeroed: Iterable[tuple[int, int]] = (),
) -> Polynomial:
    """Minor via the permutation-sum formula; an independent cross-check of
    the cofactor expansion for small sizes."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols) or not rows:
        raise ShapeMismatch("row and column index sets must be equal and nonempty")
    zero = frozenset((r, c) for r, c in zeroed)
    k = len(rows)
    acc: dict[tuple[int, ...], Coeff] = {}
    for perm in permutations(range(k)):
        cells = [(rows[t], cols[perm[t]]) for t in range(k)]
        if any(cell in zero for cell in cells):
            continue
        sign = 1
        seen = [False] * k
        for start in range(k):
            if seen[start]:
                continue
            length = 0
            t = start
            while not seen[t]:
                seen[t] = True
                t = perm[t]
                length += 1
            if length % 2 == 0:
                sign = -sign
        exps = [0] * (shape[0] * shape[1])
        for r, c in cells:
            exps[_flat(Variable(r, c), shape)] += 1
        key = tuple(exps)
        nc = acc.get(key, 0) + sign
        if nc:
            acc[key] = nc
        else:
            acc.pop(key, None)
    return Polynomial(shape, acc)


# ---------------------------------------------------------------------------
# display


def _coeff_prefix(c: Coeff) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}*"


def poly_text(f: Polynomial, order: TermOrder) -> str:
    """Render with terms sorted descending under the order."""
    if f.is_zero():
        return "0"
    key = order.key
    parts = []
    for i, exps in enumerate(sorted(f._terms, key=key, reverse=True)):
        coeff = f._terms[exps]
        mono = str(Monomial(f.shape, exps))
        if i == 0:
            if mono == "1":
                parts.append(str(coeff))
            else:
                parts.append(_coeff_prefix(coeff) + mono)
        else:
            sign = " + " if coeff > 0 else " - "
            mag = abs(coeff)
            if mono == "1":
                parts.append(f"{sign}{mag}")
            else:
                parts.append(sign + _coeff_prefix(mag) + mono)
    return "".join(parts)
