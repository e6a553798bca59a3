"""Random SPD and correlation matrices with graph-constrained zero patterns.

An undirected graph on ``{1, ..., p}`` fixes which off-diagonal entries
may be nonzero.  The package generates random symmetric positive
definite matrices respecting that pattern four ways: diagonally
dominant draws, Gram matrices of partially orthogonalized Gaussian
rows, exact uniform draws over the patterned correlation matrices for
chordal graphs, and a triangulate-then-project combination for general
graphs.  Supporting tools cover chordality testing, triangulation,
spectrum shifts, file formats and a command line.
"""

from .graph import (
    AcyclicOrientation,
    NotChordalError,
    UndirectedGraph,
    erdos_renyi,
    is_perfect_ordering,
    max_cardinality_search,
    orient_chordal,
    triangulate,
)
from .linalg import (
    BNParams,
    DegenerateRowError,
    chol_to_bn_params,
    gram,
    is_positive_definite,
    matches_pattern,
    mgs_partial_orthogonalize,
    rescale_to_correlation,
    sample_gaussian,
    shift_condition_number,
    shift_min_eigenvalue,
    sym_eigenvalues,
)
from .samplers import (
    METHODS,
    SamplerConfig,
    SamplerError,
    gaussian_entries,
    mh_u,
    sample_batch,
    sample_diagdom,
    sample_port,
    sample_port_chol,
    sample_uniform_chordal,
    uniform_perturbations,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicOrientation",
    "BNParams",
    "DegenerateRowError",
    "METHODS",
    "NotChordalError",
    "SamplerConfig",
    "SamplerError",
    "UndirectedGraph",
    "chol_to_bn_params",
    "erdos_renyi",
    "gaussian_entries",
    "gram",
    "is_perfect_ordering",
    "is_positive_definite",
    "matches_pattern",
    "max_cardinality_search",
    "mgs_partial_orthogonalize",
    "mh_u",
    "orient_chordal",
    "rescale_to_correlation",
    "sample_batch",
    "sample_diagdom",
    "sample_gaussian",
    "sample_port",
    "sample_port_chol",
    "sample_uniform_chordal",
    "shift_condition_number",
    "shift_min_eigenvalue",
    "sym_eigenvalues",
    "triangulate",
    "uniform_perturbations",
    "__version__",
]
