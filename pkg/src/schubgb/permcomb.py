"""Permutation combinatorics on the n-by-n grid.

Rothe diagrams, rank matrices, essential and dominant sets, lower outside
corners, pattern containment, and the three diagram-level obstructions.

Cells are 1-indexed ``(row, col)`` pairs in matrix orientation: row 1 is the
top row, column 1 the leftmost column, so "southeast" means larger indices.
All objects are immutable and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple, Optional

__all__ = [
    "MalformedPermutation",
    "MalformedRankMatrix",
    "PatternTooLong",
    "Cell",
    "Permutation",
    "Diagram",
    "RankMatrix",
    "ObstructionWitness",
    "EIGHT_PATTERNS",
    "OBSTRUCTION_KINDS",
    "identity",
    "inverse",
    "rothe_diagram",
    "coxeter_length",
    "rank_matrix",
    "essential_set",
    "dominant_part",
    "lower_outside_corners",
    "transpose_diagram",
    "contains_pattern",
    "avoids_all_eight",
    "obstruction",
    "obstructions",
]


class MalformedPermutation(ValueError):
    """One-line notation that is not a bijection of {1..n}."""


class MalformedRankMatrix(ValueError):
    """A grid of integers violating the rank-matrix invariants."""


class PatternTooLong(ValueError):
    """The pattern has more entries than the host permutation."""


class Cell(NamedTuple):
    """A 1-indexed grid position."""

    row: int
    col: int

    def __str__(self) -> str:
        return f"({self.row},{self.col})"


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..n} in one-line notation.

    >>> w = Permutation.parse("315642")
    >>> w.n
    6
    >>> w(1), w(6)
    (3, 2)
    >>> str(w)
    '315642'
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n == 0 or sorted(self.images) != list(range(1, n + 1)):
            raise MalformedPermutation(f"not a bijection of 1..{n}: {self.images!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse one-line notation: a digit string when n <= 9, otherwise
        comma-separated integers.

        >>> Permutation.parse("21").images
        (2, 1)
        >>> Permutation.parse("3,1,5,6,4,2,10,7,8,9").n
        10
        """
        text = text.strip()
        try:
            if "," in text:
                images = tuple(int(part) for part in text.split(","))
            else:
                images = tuple(int(ch) for ch in text)
        except ValueError as exc:
            raise MalformedPermutation(f"cannot parse permutation {text!r}") from exc
        return cls(images)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.images)
        return ",".join(str(v) for v in self.images)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def inverse(w: Permutation) -> Permutation:
    """Group inverse.

    >>> str(inverse(Permutation.parse("214635")))
    '215364'
    """
    inv = [0] * w.n
    for i, v in enumerate(w.images, start=1):
        inv[v - 1] = i
    return Permutation(tuple(inv))


@dataclass(frozen=True)
class Diagram:
    """A finite set of cells inside the [1,n] x [1,n] grid."""

    n: int
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        for c in self.cells:
            if not (1 <= c.row <= self.n and 1 <= c.col <= self.n):
                raise ValueError(f"cell {c} outside [1,{self.n}]^2")

    def sorted_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(self.cells))

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.sorted_cells())

    def __len__(self) -> int:
        return len(self.cells)


def rothe_diagram(w: Permutation) -> Diagram:
    """Cells (i,j) with w(i) > j and w^-1(j) > i.

    >>> rothe_diagram(Permutation.parse("21")).sorted_cells()
    (Cell(row=1, col=1),)
    """
    inv = inverse(w).images
    cells = frozenset(
        Cell(i, j)
        for i in range(1, w.n + 1)
        for j in range(1, w(i))
        if inv[j - 1] > i
    )
    return Diagram(w.n, cells)


def coxeter_length(w: Permutation) -> int:
    """Number of inversions; equals the size of the Rothe diagram.

    >>> coxeter_length(Permutation.parse("315642"))
    7
    """
    images = w.images
    return sum(
        1
        for i, j in combinations(range(w.n), 2)
        if images[i] > images[j]
    )


@dataclass(frozen=True)
class RankMatrix:
    """A grid of nonnegative integers, weakly increasing along rows and
    columns with unit steps.

    Built from a permutation, entry(i,j) counts the k <= i with w(k) <= j.
    Grids may also be supplied directly (one row per line in text form), and
    need not be square.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = len(self.entries)
        if rows == 0:
            raise MalformedRankMatrix("empty matrix")
        cols = len(self.entries[0])
        if cols == 0 or any(len(r) != cols for r in self.entries):
            raise MalformedRankMatrix("ragged or empty rows")
        for i in range(rows):
            for j in range(cols):
                v = self.entries[i][j]
                if v < 0:
                    raise MalformedRankMatrix(f"negative entry at ({i + 1},{j + 1})")
                if j + 1 < cols and not 0 <= self.entries[i][j + 1] - v <= 1:
                    raise MalformedRankMatrix(
                        f"row step not in {{0,1}} at ({i + 1},{j + 1})"
                    )
                if i + 1 < rows and not 0 <= self.entries[i + 1][j] - v <= 1:
                    raise MalformedRankMatrix(
                        f"column step not in {{0,1}} at ({i + 1},{j + 1})"
                    )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    @classmethod
    def from_permutation(cls, w: Permutation) -> "RankMatrix":
        inv = inverse(w).images
        rows = []
        for i in range(1, w.n + 1):
            count = 0
            row = []
            for j in range(1, w.n + 1):
                if inv[j - 1] <= i:
                    count += 1
                row.append(count)
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def parse(cls, text: str) -> "RankMatrix":
        """Parse a matrix from text: one row per line, space-separated."""
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(tuple(int(tok) for tok in line.split()))
            except ValueError as exc:
                raise MalformedRankMatrix(f"bad row {line!r}") from exc
        return cls(tuple(rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


def rank_matrix(w: Permutation) -> RankMatrix:
    """
    >>> rank_matrix(Permutation.parse("321")).entries
    ((0, 0, 1), (0, 1, 2), (1, 2, 3))
    """
    return RankMatrix.from_permutation(w)


def essential_set(w: Permutation) -> Diagram:
    """Maximally-southeast cells of the Rothe diagram: those whose south and
    east neighbors lie outside it.

    >>> essential_set(Permutation.parse("315642")).sorted_cells()
    (Cell(row=1, col=2), Cell(row=4, col=4), Cell(row=5, col=2))
    """
    d = rothe_diagram(w)
    cells = frozenset(
        c
        for c in d.cells
        if Cell(c.row + 1, c.col) not in d.cells
        and Cell(c.row, c.col + 1) not in d.cells
    )
    return Diagram(w.n, cells)


def dominant_part(w: Permutation) -> Diagram:
    """Cells of the Rothe diagram with rank zero; always a partition shape
    anchored at (1,1).

    >>> dominant_part(Permutation.parse("315642")).sorted_cells()
    (Cell(row=1, col=1), Cell(row=1, col=2))
    """
    d = rothe_diagram(w)
    r = rank_matrix(w)
    cells = frozenset(c for c in d.cells if r.entry(c.row, c.col) == 0)
    return Diagram(w.n, cells)


def lower_outside_corners(w: Permutation) -> frozenset[Cell]:
    """Essential cells maximal under the componentwise order: no other
    essential cell lies weakly southeast (row >= and col >=).

    >>> sorted(lower_outside_corners(Permutation.parse("315642")))
    [Cell(row=4, col=4), Cell(row=5, col=2)]
    """
    ess = essential_set(w).cells
    return frozenset(
        c
        for c in ess
        if not any(o != c and o.row >= c.row and o.col >= c.col for o in ess)
    )


def transpose_diagram(d: Diagram) -> Diagram:
    return Diagram(d.n, frozenset(Cell(c.col, c.row) for c in d.cells))


def contains_pattern(w: Permutation, v: Permutation) -> Optional[tuple[int, ...]]:
    """The lexicographically least increasing index sequence i_1 < ... < i_k
    with w(i_a) < w(i_b) iff v(a) < v(b), or None when w avoids v.

    >>> contains_pattern(Permutation.parse("13254"), Permutation.parse("2143"))
    (2, 3, 4, 5)
    >>> contains_pattern(Permutation.parse("13254"), Permutation.parse("3214")) is None
    True
    """
    if v.n > w.n:
        raise PatternTooLong(f"pattern length {v.n} exceeds host length {w.n}")
    wi = w.images
    vi = v.images
    k = len(vi)
    chosen: list[int] = []

    def extend(start: int) -> bool:
        t = len(chosen)
        if t == k:
            return True
        for p in range(start, len(wi) - (k - t) + 1):
            val = wi[p]
            if all((wi[q] < val) == (vi[s] < vi[t]) for s, q in enumerate(chosen)):
                chosen.append(p)
                if extend(p + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return tuple(p + 1 for p in chosen)
    return None


EIGHT_PATTERNS: tuple[Permutation, ...] = tuple(
    Permutation.parse(s)
    for s in (
        "13254",
        "21543",
        "214635",
        "215364",
        "215634",
        "241635",
        "315264",
        "4261735",
    )
)


def avoids_all_eight(w: Permutation) -> tuple[bool, tuple[Permutation, ...]]:
    """Whether w avoids every pattern in EIGHT_PATTERNS, plus the sublist of
    patterns it does contain.

    >>> avoids_all_eight(Permutation.parse("1234"))
    (True, ())
    """
    contained = tuple(
        p
        for p in EIGHT_PATTERNS
        if p.n <= w.n and contains_pattern(w, p) is not None
    )
    return (not contained, contained)


OBSTRUCTION_KINDS = ("type1", "type2", "type3")


@dataclass(frozen=True)
class ObstructionWitness:
    """A witnessing cell tuple for one obstruction kind.

    For type1 and type2 the tuple is ((r,s), first cell, second cell); for
    type3 it is the two essential cells, the second strictly southeast of
    the first.
    """

    kind: str
    cells: tuple[Cell, ...]


def _dom_col_depth(dom: frozenset[Cell], j: int) -> int:
    # deepest dominant row in column j; 0 when the column misses Dom(w)
    return max((c.row for c in dom if c.col == j), default=0)


def _dom_row_depth(dom: frozenset[Cell], i: int) -> int:
    return max((c.col for c in dom if c.row == i), default=0)


def obstruction(w: Permutation, kind: str) -> Optional[ObstructionWitness]:
    """First witness (in lexicographic scan order) of the given obstruction
    kind, or None.

    type1: some (r,s) in Dom and Ess, and two diagram cells strictly
    southeast of it lying in distinct rows and distinct columns.

    type2: some (r,s) in Dom and Ess, and two essential cells strictly
    southeast of it in the same row whose columns have equal deepest dominant
    row (0 when a column misses the dominant part), or the symmetric
    same-column variant with equal deepest dominant column.

    type3: two essential cells outside the dominant part, one strictly
    southeast of the other.
    """
    if kind not in OBSTRUCTION_KINDS:
        raise ValueError(f"unknown obstruction kind {kind!r}")
    diagram = rothe_diagram(w).cells
    ess = essential_set(w).cells
    dom = dominant_part(w).cells
    dom_ess = sorted(dom & ess)

    if kind == "type1":
        diag_sorted = sorted(diagram)
        for rs in dom_ess:
            se = [c for c in diag_sorted if c.row > rs.row and c.col > rs.col]
            for c1, c2 in combinations(se, 2):
                if c1.row != c2.row and c1.col != c2.col:
                    return ObstructionWitness("type1", (rs, c1, c2))
        return None

    if kind == "type2":
        ess_sorted = sorted(ess)
        for rs in dom_ess:
            se = [c for c in ess_sorted if c.row > rs.row and c.col > rs.col]
            for c1, c2 in combinations(se, 2):
                if c1.row == c2.row:
                    if _dom_col_depth(dom, c1.col) == _dom_col_depth(dom, c2.col):
                        return ObstructionWitness("type2", (rs, c1, c2))
                elif c1.col == c2.col:
                    if _dom_row_depth(dom, c1.row) == _dom_row_depth(dom, c2.row):
                        return ObstructionWitness("type2", (rs, c1, c2))
        return None

    free = sorted(ess - dom)
    for c1, c2 in combinations(free, 2):
        if c2.row > c1.row and c2.col > c1.col:
            return ObstructionWitness("type3", (c1, c2))
    return None


def obstructions(w: Permutation) -> dict[str, Optional[ObstructionWitness]]:
    """Witness (or None) for every obstruction kind."""
    return {kind: obstruction(w, kind) for kind in OBSTRUCTION_KINDS}
