"""Guaranteed range bounds, positivity certificates, and global minimization
for polynomials and rational functions over simplices, via the simplicial
Bernstein form with exact rational arithmetic."""

__version__ = "0.1.0"

from .errors import (
    BadEdge,
    BernboundError,
    BudgetExhausted,
    ComponentExceeds,
    DegenerateSimplex,
    DegreeMismatch,
    DegreeTooLow,
    DenominatorNotPositive,
    DimensionMismatch,
    NonPositiveClaim,
    NonPositiveEpsilon,
    NotPositive,
    OrderExceedsDegree,
    SimplexMismatch,
)
from .rationals import Interval, interval_distance, parse_rational, format_rational
from .indexing import IndexSet, MultiIndex, binom_graded, binom_multi, enumerate_indices
from .powerpoly import PowerPoly
from .geometry import (
    Simplex,
    SubdivisionPlan,
    affine_pullback,
    barycentric,
    bisect_edge,
    diameter_sq,
    grid_point,
    longest_edge,
    round_length,
    split_round,
    standard_simplex,
)
from .polypatch import (
    BernsteinPatch,
    SecondDifferences,
    discretization_bound,
    to_bernstein,
    to_bernstein_standard,
)
from .ratpatch import (
    ConvergenceConstants,
    RationalPatch,
    Sharpness,
    convergence_constants,
    make_rational,
    rational_patch,
)
from .certify import (
    AprioriInfo,
    CertificateReport,
    ClaimedMinimum,
    CombinedDegrees,
    LeafRecord,
    Mode,
    Verdict,
    Witness,
    apriori_degree_combined,
    apriori_degree_omega,
    apriori_degree_pr,
    apriori_depth,
    cert_predicate,
    certify_global,
    certify_local,
    certify_negative,
    certify_sharpness,
)
from .optimize import (
    MinimizationResult,
    WorkItem,
    apriori_steps,
    local_bounds,
    minimize,
    validated_lower_bound,
)
