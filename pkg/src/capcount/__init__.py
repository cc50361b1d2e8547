"""Capacities of real stable polynomials and exact orientation/matching counts."""

from .bounds import (
    BoundReport,
    real_rooted_coefficient_bound,
    f_dr,
    g_factor,
    hoeffding_check,
    lasvergnas_bound,
    matching_lower_bound,
    eulerian_lower_bound,
    capacity_bound,
    verify,
)
from .capacity import (
    CapacityProblem,
    CapacityResult,
    capacity,
    capacity_of,
    capacity_preservation_check,
    log_objective,
    newton_polytope_contains,
)
from .counting import (
    CountResult,
    count_eulerian,
    count_orientations,
    count_orientations_bruteforce,
    count_perfect_matchings,
    matching_orientation_bijection_check,
)
from .polycore import (
    MultiGraph,
    SparsePolynomial,
    coefficient,
    evaluate,
    graph_polynomial,
    gurvits_polynomial,
    multiply,
    partial_derivative,
    restrict_to_line,
    slice_coefficient,
)
from .stability import (
    StabilityVerdict,
    certify_by_closure,
    is_real_rooted,
    power_sums,
    stability_test,
)

__version__ = "0.1.0"
