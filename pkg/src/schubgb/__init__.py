"""Schubert determinantal ideals, dominant-zeroed generators, and diagonal
Gröbner basis verification."""

from .permcomb import (
    Cell,
    Diagram,
    EIGHT_PATTERNS,
    MalformedPermutation,
    MalformedRankMatrix,
    ObstructionWitness,
    PatternTooLong,
    Permutation,
    RankMatrix,
    avoids_all_eight,
    contains_pattern,
    coxeter_length,
    dominant_part,
    essential_set,
    inverse,
    lower_outside_corners,
    obstruction,
    obstructions,
    rank_matrix,
    rothe_diagram,
    transpose_diagram,
)
from .polycore import (
    AntiDiagonalLex,
    Budget,
    BudgetExceeded,
    ColLex,
    DEFAULT_BUDGET,
    Monomial,
    Polynomial,
    RowLex,
    ShapeMismatch,
    TermOrder,
    Variable,
    WeightedDiagonal,
    YCompatible,
    ZeroPolynomial,
    compare,
    is_diagonal_order,
    lead_term,
    minor,
    parse_order,
    poly_text,
    reduce,
    s_polynomial,
)
from .idealgen import (
    Generator,
    GeneratorLabel,
    GeneratorSet,
    cdg_generators,
    fulton_generators,
    naive_generators,
    rank_matrix_generators,
)
from .groebner import (
    GroebnerReport,
    NotGroebner,
    SPairVerdict,
    buchberger_complete,
    dimension_of_monomial_ideal,
    ideal_member,
    ideals_equal,
    initial_ideal,
    is_groebner,
)
from .gvd import (
    KRReport,
    NotLowerOutsideCorner,
    Split,
    SplitPair,
    YDegreeTooHigh,
    check_kr_hypotheses,
    delete_corner_permutation,
    q_ideal,
    split_on_corner,
    two_minor_polys,
)
from .verifier import (
    ClassificationRecord,
    SweepConfig,
    SweepSummary,
    classify,
    sweep,
    verify_lemmas,
    verify_rank_fixtures,
)

__version__ = "0.1.0"
