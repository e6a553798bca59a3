"""Dense symmetric-matrix kernels.

Matrices are plain ``numpy.ndarray`` values; symmetric and correlation
matrices are contracts checked by :func:`matches_pattern`,
:func:`is_positive_definite` and the I/O layer, not wrapper classes.
All functions are pure: inputs are never modified.

Eigenvalues, triangular factorisations and orthonormal bases are
delegated to LAPACK via ``numpy.linalg``; the contracts here are about
accuracy and the returned structure, not the algorithm used inside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import UndirectedGraph

__all__ = [
    "DegenerateRowError",
    "mgs_partial_orthogonalize",
    "gram",
    "sym_eigenvalues",
    "shift_min_eigenvalue",
    "shift_condition_number",
    "rescale_to_correlation",
    "matches_pattern",
    "is_positive_definite",
    "BNParams",
    "chol_to_bn_params",
    "sample_gaussian",
]


class DegenerateRowError(RuntimeError):
    """A row collapsed (norm below tolerance) during partial orthogonalization.

    Callers holding the random source should resample the input matrix.
    """

    def __init__(self, row: int, norm: float):
        self.row = row
        self.norm = norm
        super().__init__(
            f"row {row} degenerated during partial orthogonalization "
            f"(residual norm {norm:.3e})"
        )


def _as_square(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def mgs_partial_orthogonalize(
    q, g: UndirectedGraph, residual_tol: float = 1e-10
) -> np.ndarray:
    """Orthogonalize rows of ``q`` across non-adjacent vertex pairs.

    Rows are processed in ascending vertex order.  Row ``i`` is projected
    onto the orthogonal complement of the span of the already-processed
    rows ``{q_j : j < i, j not adjacent to i in g}``, then normalised to
    unit Euclidean norm.  Projecting against the span (through an
    orthonormal basis of it, with a second cleanup pass) is what makes
    every non-adjacent pair of output rows orthogonal; the rows of the
    span are generally not mutually orthogonal, so subtracting their
    individual projections once would not.

    Parameters
    ----------
    q : (p, p) array_like
        Full-rank input; rows are the vectors to orthogonalize.
    g : UndirectedGraph
        Adjacency deciding which pairs must become orthogonal.
    residual_tol : float
        If a row's norm falls below this after projection, the input is
        considered degenerate.

    Returns
    -------
    (p, p) ndarray
        Rows of unit norm with ``row_i . row_j == 0`` (up to roundoff)
        for every non-adjacent pair.

    Raises
    ------
    DegenerateRowError
        If any row's residual norm drops below ``residual_tol``.
    """
    q = np.array(q, dtype=float)
    q = _as_square(q, "q")
    p = q.shape[0]
    if g.p != p:
        raise ValueError(f"graph has {g.p} vertices but matrix is {p}x{p}")
    adj = g.adjacency_matrix()
    for i in range(p):
        against = [j for j in range(i) if not adj[i, j]]
        row = q[i]
        if against:
            basis, _ = np.linalg.qr(q[against].T)
            row = row - basis @ (basis.T @ row)
            row = row - basis @ (basis.T @ row)
        norm = np.linalg.norm(row)
        if norm < residual_tol:
            raise DegenerateRowError(i + 1, float(norm))
        q[i] = row / norm
    return q


def gram(q) -> np.ndarray:
    """Gram matrix ``q q^T``, symmetrised exactly in storage."""
    q = _as_square(q, "q")
    s = q @ q.T
    return 0.5 * (s + s.T)


def sym_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a symmetric matrix in ascending order.

    Raises ``numpy.linalg.LinAlgError`` if the underlying iteration
    fails to converge.
    """
    m = _as_square(m)
    return np.linalg.eigvalsh(m)


def shift_min_eigenvalue(m, eps: float) -> np.ndarray:
    """Add the smallest diagonal shift giving minimum eigenvalue >= eps.

    Returns ``m + (max(-lambda_min, 0) + eps) I``; off-diagonal entries
    are untouched, and every eigenvalue moves up by the same shift.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    m = _as_square(m)
    lam_min = sym_eigenvalues(m)[0]
    shift = max(-lam_min, 0.0) + eps
    out = m.copy()
    out[np.diag_indices_from(out)] += shift
    return out


def shift_condition_number(m, kappa0: float) -> np.ndarray:
    """Diagonal shift giving the matrix condition number ``kappa0``.

    Returns ``m + ((lambda_max - kappa0 lambda_min) / (kappa0 - 1)) I``,
    which makes the ratio of extreme eigenvalues exactly ``kappa0`` and
    leaves the result positive definite.

    Requires ``kappa0 > 1``, a positive largest eigenvalue, and a
    non-scalar matrix (a multiple of the identity has condition number 1
    after any shift).
    """
    if not kappa0 > 1:
        raise ValueError(f"kappa0 must exceed 1, got {kappa0}")
    m = _as_square(m)
    lam = sym_eigenvalues(m)
    lam_min, lam_max = lam[0], lam[-1]
    if lam_max <= 0:
        raise ValueError("largest eigenvalue must be positive")
    if lam_max == lam_min:
        raise ValueError("matrix is a multiple of the identity")
    shift = (lam_max - kappa0 * lam_min) / (kappa0 - 1.0)
    out = m.copy()
    out[np.diag_indices_from(out)] += shift
    return out


def rescale_to_correlation(m) -> np.ndarray:
    """Two-sided diagonal rescaling ``D^{-1/2} m D^{-1/2}`` to unit diagonal.

    Preserves the zero pattern, the off-diagonal sign pattern and
    positive definiteness; the diagonal is set to exactly 1.
    """
    m = _as_square(m)
    d = np.diag(m)
    if np.any(d <= 0):
        raise ValueError("all diagonal entries must be positive")
    s = np.sqrt(d)
    out = m / np.outer(s, s)
    np.fill_diagonal(out, 1.0)
    return out


def matches_pattern(m, g: UndirectedGraph, tol: float) -> bool:
    """True iff ``|m_ij| <= tol`` for every non-adjacent pair ``i != j``.

    The diagonal is never constrained.
    """
    m = _as_square(m)
    if g.p != m.shape[0]:
        raise ValueError(f"graph has {g.p} vertices but matrix is {m.shape[0]}x{m.shape[0]}")
    mask = ~g.adjacency_matrix()
    np.fill_diagonal(mask, False)
    return bool(np.all(np.abs(m[mask]) <= tol))


def is_positive_definite(m) -> bool:
    """Positive definiteness via triangular factorisation pivots."""
    m = _as_square(m)
    try:
        np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return False
    return True


@dataclass(frozen=True)
class BNParams:
    """Gaussian Bayesian network parameters of a triangular factor.

    ``coefficients`` is the strictly lower-triangular matrix of
    regression weights of each variable on its predecessors;
    ``variances`` holds the conditional variance of each variable given
    its parents.
    """

    coefficients: np.ndarray
    variances: np.ndarray


def chol_to_bn_params(u) -> BNParams:
    """Regression coefficients and conditional variances of a factor.

    For an upper-triangular ``u`` with positive diagonal, returns
    ``B`` with ``B[i, j] = -u[j, i] / u[i, i]`` for ``j < i`` and
    variances ``v[i] = 1 / u[i, i]^2``.  The factorisation identity
    ``(I - B)^T diag(v)^{-1} (I - B) = u u^T`` holds exactly up to
    roundoff.
    """
    u = _as_square(u, "u")
    if np.any(np.tril(u, -1) != 0):
        raise ValueError("factor must be upper triangular")
    d = np.diag(u)
    if np.any(d <= 0):
        raise ValueError("factor diagonal must be positive")
    coeffs = np.tril(-(u.T / d[:, None]), -1)
    variances = 1.0 / d**2
    return BNParams(coefficients=coeffs, variances=variances)


def sample_gaussian(sigma, n: int, seed) -> np.ndarray:
    """Draw ``n`` zero-mean Gaussian vectors with covariance ``sigma``.

    Uses the lower Cholesky factor transform of independent standard
    normals; deterministic given the seed.  Returns an ``(n, p)`` data
    matrix (one observation per row).
    """
    sigma = _as_square(sigma, "sigma")
    if n < 0:
        raise ValueError(f"sample count must be nonnegative, got {n}")
    try:
        lower = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance must be positive definite") from exc
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, sigma.shape[0]))
    return z @ lower.T
