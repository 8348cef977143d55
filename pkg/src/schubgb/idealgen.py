"""Generating sets of Schubert determinantal ideals.

Three constructions from a permutation (naive full-grid, essential-set,
and dominant-zeroed essential-set generators) plus the analogous
construction from an arbitrary valid rank matrix.  Every generator carries
labels recording which cell, minor size, and index sets produced it;
identical polynomials arising from several cells are merged into one
generator with all labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .permcomb import (
    Cell,
    Permutation,
    RankMatrix,
    dominant_part,
    essential_set,
    rank_matrix,
)
from .polycore import (
    MinorCalculator,
    Polynomial,
    Shape,
    TermOrder,
    Variable,
    lead_term,
    poly_text,
)

__all__ = [
    "GeneratorLabel",
    "Generator",
    "GeneratorSet",
    "fulton_generators",
    "cdg_generators",
    "naive_generators",
    "rank_matrix_generators",
    "generators_by_style",
    "GENERATOR_STYLES",
]

GENERATOR_STYLES = ("fulton", "cdg", "naive")


@dataclass(frozen=True, order=True)
class GeneratorLabel:
    """Provenance of one polynomial: the rank condition cell, the minor
    size, and the exact row/column index sets.  Dominant-cell variable
    generators carry tag "dom", determinantal generators tag "minor"."""

    cell: Cell
    size: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    tag: str = "minor"

    def __str__(self) -> str:
        if self.tag == "dom":
            return f"dom {self.cell}"
        rows = ",".join(map(str, self.rows))
        cols = ",".join(map(str, self.cols))
        return f"minor {self.cell} rows({rows}) cols({cols})"


@dataclass(frozen=True)
class Generator:
    """One polynomial together with every label that produced it."""

    poly: Polynomial
    labels: tuple[GeneratorLabel, ...]

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def text(self, order: TermOrder) -> str:
        return poly_text(self.poly, order)

    def record(self, order: TermOrder) -> dict:
        mono, coeff = lead_term(self.poly, order)
        return {
            "degree": self.degree,
            "terms": self.poly.num_terms(),
            "lead": str(mono),
            "lead_coeff": str(coeff),
            "poly": self.text(order),
            "labels": [
                {
                    "cell": [lb.cell.row, lb.cell.col],
                    "size": lb.size,
                    "rows": list(lb.rows),
                    "cols": list(lb.cols),
                    "tag": lb.tag,
                }
                for lb in self.labels
            ],
        }


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, labeled generating set over one grid of indeterminates."""

    style: str
    shape: Shape
    generators: tuple[Generator, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __getitem__(self, idx: int) -> Generator:
        return self.generators[idx]

    def polys(self) -> list[Polynomial]:
        return [g.poly for g in self.generators]

    def records(self, order: TermOrder) -> list[dict]:
        return [g.record(order) for g in self.generators]


def _assemble(
    style: str,
    shape: Shape,
    dom_cells: Iterable[Cell],
    minor_tasks: Iterable[tuple[Cell, int]],
    calc: Optional[MinorCalculator] = None,
) -> GeneratorSet:
    """Shared constructor: variable generators for each dominant cell, all
    requested minors, zero minors dropped, duplicates merged, generators
    sorted by (degree, first label)."""
    if calc is None:
        calc = MinorCalculator(shape)
    by_poly: dict[Polynomial, list[GeneratorLabel]] = {}
    for cell in sorted(dom_cells):
        poly = Polynomial.variable(Variable(cell.row, cell.col), shape)
        label = GeneratorLabel(cell, 1, (cell.row,), (cell.col,), "dom")
        by_poly.setdefault(poly, []).append(label)
    for cell, size in minor_tasks:
        if size > cell.row or size > cell.col:
            continue
        for rows in combinations(range(1, cell.row + 1), size):
            for cols in combinations(range(1, cell.col + 1), size):
                poly = calc.minor(rows, cols)
                if poly.is_zero():
                    continue
                label = GeneratorLabel(cell, size, rows, cols)
                by_poly.setdefault(poly, []).append(label)
    gens = [
        Generator(poly, tuple(sorted(labels))) for poly, labels in by_poly.items()
    ]
    gens.sort(key=lambda g: (g.degree, g.labels[0]))
    return GeneratorSet(style, shape, tuple(gens))


def fulton_generators(w: Permutation) -> GeneratorSet:
    """Minors of size rank+1 of the northwest submatrix at every essential
    cell, over the generic grid.

    >>> from .permcomb import Permutation
    >>> len(fulton_generators(Permutation.parse("315642")))
    28
    >>> len(fulton_generators(Permutation.parse("12345")))
    0
    """
    n = w.n
    rank = rank_matrix(w)
    tasks = [
        (cell, rank.entry(cell.row, cell.col) + 1)
        for cell in sorted(essential_set(w))
    ]
    return _assemble("fulton", (n, n), (), tasks)


def cdg_generators(w: Permutation) -> GeneratorSet:
    """One variable per dominant cell, plus minors of size rank+1 at every
    essential cell outside the dominant part, computed on the grid with all
    dominant positions set to zero.

    >>> from .permcomb import Permutation
    >>> len(cdg_generators(Permutation.parse("315642")))
    24
    >>> gens = cdg_generators(Permutation.parse("21"))
    >>> [str(lb) for g in gens for lb in g.labels]
    ['dom (1,1)']
    """
    n = w.n
    rank = rank_matrix(w)
    dom = dominant_part(w)
    ess = essential_set(w)
    calc = MinorCalculator((n, n), zeroed=[(c.row, c.col) for c in dom])
    tasks = [
        (cell, rank.entry(cell.row, cell.col) + 1)
        for cell in sorted(ess)
        if cell not in dom
    ]
    return _assemble("cdg", (n, n), sorted(dom), tasks, calc)


def naive_generators(w: Permutation) -> GeneratorSet:
    """Minors of size rank+1 of the northwest submatrix at every cell of
    the full grid; a redundancy oracle for the essential-set construction.

    >>> from .permcomb import Permutation
    >>> from .polycore import RowLex
    >>> [g.text(RowLex((2, 2))) for g in naive_generators(Permutation.parse("21"))]
    ['x[1,1]']
    """
    n = w.n
    rank = rank_matrix(w)
    tasks = [
        (Cell(i, j), rank.entry(i, j) + 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    ]
    return _assemble("naive", (n, n), (), tasks)


def rank_matrix_generators(R: RankMatrix) -> GeneratorSet:
    """The dominant-zeroed construction applied to an arbitrary valid rank
    matrix: cells with entry zero become variable generators and force
    zeros in the grid; every cell contributes its (entry+1)-minors of the
    northwest submatrix of the zeroed grid.

    >>> from .permcomb import RankMatrix
    >>> R = RankMatrix.parse("0 1 1\\n1 1 1\\n2 2 2\\n2 2 2")
    >>> len(rank_matrix_generators(R))
    8
    """
    shape = (R.rows, R.cols)
    dom = [
        Cell(i, j)
        for i in range(1, R.rows + 1)
        for j in range(1, R.cols + 1)
        if R.entry(i, j) == 0
    ]
    calc = MinorCalculator(shape, zeroed=[(c.row, c.col) for c in dom])
    tasks = [
        (Cell(i, j), R.entry(i, j) + 1)
        for i in range(1, R.rows + 1)
        for j in range(1, R.cols + 1)
    ]
    return _assemble("rank_matrix", shape, dom, tasks, calc)


def generators_by_style(w: Permutation, style: str) -> GeneratorSet:
    """Dispatch on the CLI style name."""
    if style == "fulton":
        return fulton_generators(w)
    if style == "cdg":
        return cdg_generators(w)
    if style == "naive":
        return naive_generators(w)
    raise ValueError(f"unknown generator style {style!r}; expected one of {GENERATOR_STYLES}")
