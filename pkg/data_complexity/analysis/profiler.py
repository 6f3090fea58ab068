from typing import Callable, Dict, Optional
import logging
import math

from data_complexity.analysis.config import MeasureConfig
from data_complexity.measures.linear import (
    fit_linear,
    l1_error_distance,
    l2_linear_error,
    l3_linear_nonlinearity
)
from data_complexity.measures.neighbors import (
    n1_boundary_fraction,
    n2_intra_inter_ratio,
    n3_loo_nn_error,
    n4_nn_nonlinearity,
    neighbor_table
)
from data_complexity.measures.overlap import (
    f1_max_fisher,
    f2_overlap_volume,
    f3_max_feature_efficiency
)
from data_complexity.measures.simplex import SOLVER_ID, LPNumericError
from data_complexity.measures.topology import t1_adherence_fraction, t2_points_per_dimension
from data_complexity.models.dataset import Dataset, bounding_diagonal, standardize_dataset
from data_complexity.models.profile import VARIANCE_CONVENTION, ComplexityProfile
from data_complexity.utils.distance_utils import pairwise_distances
from data_complexity.utils.random_utils import RNG_ALGORITHM

logger = logging.getLogger(__name__)

LP_MEASURES = ("L1", "L2", "L3")


class MeasureError(RuntimeError):
    """A measure could not be computed; names the measure and the problem."""

    def __init__(self, measure: str, problem: str, cause: Exception):
        self.measure = measure
        self.problem = problem
        self.cause = cause
        super().__init__(f"{problem}: {measure} failed: {cause}")


def compute_profile(
    ds: Dataset,
    seed: Optional[int] = None,
    config: Optional[MeasureConfig] = None,
    group: Optional[str] = None
) -> ComplexityProfile:
    """
    All twelve complexity measures of one problem.

    The seed feeds only the interpolated test sets of L3 and N4. The distance
    matrix and the LP solution are computed once and shared between measures.

    Args:
        ds: Two-class dataset
        seed: Test-set seed (defaults to config.seed)
        config: Measuring configuration
        group: Optional group tag for the profile

    Returns:
        ComplexityProfile: Measures, provenance and degenerate-case flags

    Raises:
        MeasureError: When the LP solver fails (attributed to L1, L2 and L3)
    """
    config = config or MeasureConfig()
    seed = config.seed if seed is None else seed
    flags = []
    if config.standardize:
        ds = standardize_dataset(ds)
        flags.append("standardized")

    distances = pairwise_distances(ds.points)
    values: Dict[str, float] = {
        "F1": f1_max_fisher(ds),
        "F2": f2_overlap_volume(ds),
        "F3": f3_max_feature_efficiency(ds),
    }

    try:
        fit = fit_linear(
            ds,
            pivot_tolerance=config.pivot_tolerance,
            feasibility_tolerance=config.separable_tolerance
        )
    except LPNumericError as exc:
        logger.error(f"{ds.name}: LP solver failed, {'/'.join(LP_MEASURES)} unavailable: {exc}")
        raise MeasureError(LP_MEASURES[0], ds.name, exc) from exc

    lp_measures: Dict[str, Callable[[], float]] = {
        "L1": lambda: l1_error_distance(ds, fit),
        "L2": lambda: l2_linear_error(ds, fit),
        "L3": lambda: l3_linear_nonlinearity(ds, seed, fit),
    }
    for measure, compute in lp_measures.items():
        values[measure] = compute()

    values.update({
        "N1": n1_boundary_fraction(ds, distances),
        "N2": n2_intra_inter_ratio(ds, distances),
        "N3": n3_loo_nn_error(ds, distances),
        "N4": n4_nn_nonlinearity(ds, seed),
        "T1": t1_adherence_fraction(ds, distances),
        "T2": t2_points_per_dimension(ds),
    })

    if math.isinf(values["F1"]):
        flags.append("F1_infinite")
    if math.isinf(values["N2"]):
        flags.append("N2_infinite")
    no_intra = neighbor_table(ds, distances).intra_index < 0
    if no_intra.any():
        flags.append("N2_singleton_excluded")
    if no_intra.all():
        flags.append("N2_no_intra_neighbors")
    if bounding_diagonal(ds) == 0:
        flags.append("L1_unit_diagonal")

    logger.debug(f"{ds.name}: profile computed (n={ds.n}, d={ds.dim}, seed={seed})")
    return ComplexityProfile(
        name=ds.name,
        n=ds.n,
        d=ds.dim,
        seed=seed,
        values=values,
        flags=tuple(flags),
        solver_id=SOLVER_ID,
        rng_algorithm=RNG_ALGORITHM,
        variance_convention=VARIANCE_CONVENTION,
        group=group
    )
