"""Random symmetric positive-definite matrices with graph zero patterns.

Four generators over a common configuration:

``sample_diagdom``
    Diagonally dominant matrices: free entries on edges, diagonal set to
    the absolute row sum plus a positive perturbation.  Cheap, exact
    zeros, but concentrates mass near the diagonal as graphs grow dense.
``sample_port``
    Gram matrix of partially orthogonalized Gaussian rows: rows at
    non-adjacent pairs are made orthogonal, so their inner products
    vanish.  Spreads mass over a wider region than diagonal dominance.
``sample_uniform_chordal``
    Exact uniform draws from the set of correlation matrices with the
    given zero pattern, available when the graph is chordal.  Works row
    by row on a unit-upper-triangular factor in a perfect elimination
    order; each row is a hemisphere direction drawn by ``mh_u``.
``sample_port_chol``
    General graphs: draw the chordal factor on a triangulation of the
    graph, map it back to the original vertex labels, then partially
    orthogonalize against the original graph to restore the exact
    pattern.  Approximates the uniform law; coincides with it in
    distribution when the graph is already chordal.

Reproducibility contract: sample ``index`` of a batch depends only on
``(cfg.seed, index)`` plus static graph structure, never on batch size
or on other samples.  ``sample_batch(g, cfg, n, method)[k]`` is bitwise
identical to the single-sample call with ``index=k``.  Row-wise
hemisphere chains derive independent streams per ``(seed, index, row)``
so they can run vectorised across a batch without changing results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import NotChordalError, UndirectedGraph, max_cardinality_search, triangulate
from .linalg import DegenerateRowError, gram, mgs_partial_orthogonalize, rescale_to_correlation

__all__ = [
    "SamplerError",
    "SamplerConfig",
    "gaussian_entries",
    "uniform_perturbations",
    "mh_u",
    "sample_diagdom",
    "sample_port",
    "sample_uniform_chordal",
    "sample_port_chol",
    "sample_batch",
    "METHODS",
]

# Chains run vectorised over at most this many samples at a time; keeps
# the pre-drawn noise block (chunk x (burn_in + 2) x (alpha + 1)) small.
_CHAIN_CHUNK = 512


class SamplerError(RuntimeError):
    """Raised when repeated resampling fails to produce a usable draw."""


def gaussian_entries(rng: np.random.Generator, size: int) -> np.ndarray:
    """Default law for free matrix entries: standard normal."""
    return rng.standard_normal(size)


def uniform_perturbations(rng: np.random.Generator, size: int) -> np.ndarray:
    """Default law for diagonal perturbations: uniform on (0, 1)."""
    return rng.random(size)


@dataclass(frozen=True)
class SamplerConfig:
    """Shared knobs for all generators.

    Parameters
    ----------
    seed : int
        Root of every derived stream; must be a nonnegative integer.
    sigma_eps : float
        Standard deviation of the hemisphere proposal noise.
    burn_in : int
        Chain steps discarded before the retained state; the chain runs
        ``burn_in + 2`` steps in total.
    entry_law : callable(rng, size) -> ndarray
        Law of free off-diagonal entries (``sample_diagdom``) and of raw
        rows (``sample_port``).
    perturb_law : callable(rng, size) -> ndarray
        Law of the positive diagonal perturbations in ``sample_diagdom``;
        draws are redone entrywise until strictly positive, so a law
        with mass at or below zero is effectively truncated.
    residual_tol : float
        Row-collapse threshold forwarded to partial orthogonalization.
    max_resample : int
        Total attempts per sample before giving up with ``SamplerError``.
    """

    seed: int = 0
    sigma_eps: float = 0.5
    burn_in: int = 1000
    entry_law: Callable[[np.random.Generator, int], np.ndarray] = field(
        default=gaussian_entries
    )
    perturb_law: Callable[[np.random.Generator, int], np.ndarray] = field(
        default=uniform_perturbations
    )
    residual_tol: float = 1e-10
    max_resample: int = 10

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not self.sigma_eps > 0:
            raise ValueError(f"sigma_eps must be positive, got {self.sigma_eps}")
        if not isinstance(self.burn_in, (int, np.integer)) or self.burn_in < 0:
            raise ValueError(f"burn_in must be a nonnegative integer, got {self.burn_in!r}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")
        if not isinstance(self.max_resample, (int, np.integer)) or self.max_resample < 1:
            raise ValueError(f"max_resample must be at least 1, got {self.max_resample!r}")


# Second entropy element namespaces the derived streams; SeedSequence
# pads entropy lists with zeros, so lists of different lengths could
# otherwise alias.
_ENTRY_STREAM = 1
_CHAIN_STREAM = 2


def _sample_rng(seed: int, index: int) -> np.random.Generator:
    # Per-sample stream for entrywise generators.
    return np.random.default_rng([seed, _ENTRY_STREAM, index])


def _chain_rng(seed: int, index: int, row: int, attempt: int) -> np.random.Generator:
    # Per-row stream for hemisphere chains; the extra attempt component
    # gives fresh draws when a degenerate factor forces a resample.
    return np.random.default_rng([seed, _CHAIN_STREAM, index, row, attempt])


def _run_chains(
    alpha: int, gamma: int, sigma_eps: float, burn_in: int, rngs: list
) -> np.ndarray:
    """Run one hemisphere chain per generator in ``rngs``, vectorised.

    Returns an ``(len(rngs), alpha + 1)`` array of unit vectors with
    positive first coordinate.  Each chain consumes draws only from its
    own generator, so results do not depend on how calls are chunked.
    """
    m = len(rngs)
    if m > _CHAIN_CHUNK:
        parts = [
            _run_chains(alpha, gamma, sigma_eps, burn_in, rngs[k : k + _CHAIN_CHUNK])
            for k in range(0, m, _CHAIN_CHUNK)
        ]
        return np.vstack(parts)

    width = alpha + 1
    steps = burn_in + 2
    v = np.empty((m, width))
    noise = np.empty((m, steps, width))
    delta = np.empty((m, steps))
    for k, rng in enumerate(rngs):
        v[k] = rng.standard_normal(width)
        noise[k] = rng.normal(0.0, sigma_eps, size=(steps, width))
        delta[k] = rng.random(steps)

    v[:, 0] = np.abs(v[:, 0])
    v /= np.linalg.norm(v, axis=1)[:, None]
    for t in range(steps):
        prop = v + noise[:, t, :]
        prop /= np.linalg.norm(prop, axis=1)[:, None]
        ratio = np.maximum(prop[:, 0], 0.0) / v[:, 0]
        with np.errstate(over="ignore"):
            accept = (prop[:, 0] >= 0.0) & (delta[:, t] <= ratio**gamma)
        v[accept] = prop[accept]
    return v


def mh_u(alpha: int, gamma: int, cfg: SamplerConfig) -> np.ndarray:
    """One draw from the hemisphere density proportional to ``v_1^(gamma - 1)``.

    The state space is the set of unit vectors in ``alpha + 1``
    dimensions with positive first coordinate.  A random-walk chain is
    initialised at a normalised Gaussian vector with its first
    coordinate forced positive, then advanced ``cfg.burn_in + 2`` steps:
    Gaussian noise of scale ``cfg.sigma_eps`` is added, the proposal is
    renormalised, and it is accepted when its first coordinate is
    nonnegative and a uniform draw does not exceed the density ratio
    ``(v'_1 / v_1)^gamma`` (the extra power accounts for the chart
    volume of the move).  With ``gamma = 1`` the draw is uniform on the
    hemisphere.

    ``alpha = 0`` returns ``[1.0]`` directly, the only point of the
    state space, without consuming randomness.
    """
    if not isinstance(alpha, (int, np.integer)) or alpha < 0:
        raise ValueError(f"alpha must be a nonnegative integer, got {alpha!r}")
    if not isinstance(gamma, (int, np.integer)) or gamma < 1:
        raise ValueError(f"gamma must be a positive integer, got {gamma!r}")
    if alpha == 0:
        return np.ones(1)
    rng = np.random.default_rng(cfg.seed)
    return _run_chains(int(alpha), int(gamma), cfg.sigma_eps, cfg.burn_in, [rng])[0]


def _positive_perturbations(
    cfg: SamplerConfig, rng: np.random.Generator, size: int
) -> np.ndarray:
    pert = np.asarray(cfg.perturb_law(rng, size), dtype=float)
    if pert.shape != (size,):
        raise ValueError(f"perturb_law returned shape {pert.shape}, expected ({size},)")
    while True:
        bad = pert <= 0
        n_bad = int(bad.sum())
        if n_bad == 0:
            return pert
        pert[bad] = cfg.perturb_law(rng, n_bad)


def sample_diagdom(
    g: UndirectedGraph,
    cfg: SamplerConfig,
    as_correlation: bool = False,
    index: int = 0,
) -> np.ndarray:
    """One diagonally dominant draw with the zero pattern of ``g``.

    Edge entries are drawn from ``cfg.entry_law`` in lexicographic edge
    order, each diagonal entry is the absolute sum of its row plus a
    strictly positive perturbation, and non-edges hold exact zeros.
    Strict dominance makes the result positive definite.  With
    ``as_correlation`` the matrix is rescaled to unit diagonal, which
    keeps pattern, dominance and definiteness.
    """
    rng = _sample_rng(cfg.seed, index)
    p = g.p
    m = np.zeros((p, p))
    edges = g.sorted_edges()
    vals = np.asarray(cfg.entry_law(rng, len(edges)), dtype=float)
    if vals.shape != (len(edges),):
        raise ValueError(f"entry_law returned shape {vals.shape}, expected ({len(edges)},)")
    for (i, j), x in zip(edges, vals):
        m[i - 1, j - 1] = x
        m[j - 1, i - 1] = x
    pert = _positive_perturbations(cfg, rng, p)
    m[np.diag_indices(p)] = np.abs(m).sum(axis=1) + pert
    if as_correlation:
        m = rescale_to_correlation(m)
    return m


def sample_port(g: UndirectedGraph, cfg: SamplerConfig, index: int = 0) -> np.ndarray:
    """One partially orthogonalized Gram draw with the zero pattern of ``g``.

    A ``p x p`` matrix of ``cfg.entry_law`` draws (row-major) is
    partially orthogonalized against ``g`` and its Gram matrix is
    returned: a correlation matrix whose non-adjacent entries are zero
    to roundoff.  Degenerate draws are retried from the same stream up
    to ``cfg.max_resample`` times.
    """
    rng = _sample_rng(cfg.seed, index)
    p = g.p
    for _ in range(cfg.max_resample):
        raw = np.asarray(cfg.entry_law(rng, p * p), dtype=float)
        if raw.shape != (p * p,):
            raise ValueError(f"entry_law returned shape {raw.shape}, expected ({p * p},)")
        try:
            q = mgs_partial_orthogonalize(raw.reshape(p, p), g, cfg.residual_tol)
        except DegenerateRowError:
            continue
        return gram(q)
    raise SamplerError(
        f"no full-rank draw for sample {index} after {cfg.max_resample} attempts"
    )


def _perfect_order_structure(g: UndirectedGraph, order):
    """Children positions and parent counts of each position of ``order``.

    Position ``k`` holds vertex ``order[k]``; its children are the later
    neighbours, its parents the earlier ones.  Returned children lists
    are ascending, which fixes the coordinate layout of factor rows.
    """
    pos = {v: k for k, v in enumerate(order)}
    children = []
    parent_counts = []
    for k, v in enumerate(order):
        nbr_pos = [pos[w] for w in g.neighbors(v)]
        children.append(sorted(q for q in nbr_pos if q > k))
        parent_counts.append(sum(1 for q in nbr_pos if q < k))
    return children, parent_counts


def _draw_unit_factors(
    children, parent_counts, cfg: SamplerConfig, indices, attempt: int = 0
) -> np.ndarray:
    """Batched unit-row upper-triangular factors in position space.

    Row ``i`` of each factor is a hemisphere draw of dimension
    ``|children(i)| + 1`` under exponent ``|parents(i)| + 1``: the first
    coordinate lands on the diagonal, the rest on the child columns in
    ascending order.  Chains for different samples and rows never share
    a stream, so any batching gives identical output.
    """
    p = len(children)
    n = len(indices)
    u = np.zeros((n, p, p))
    for i in range(p):
        ch = children[i]
        alpha = len(ch)
        if alpha == 0:
            u[:, i, i] = 1.0
            continue
        gamma = parent_counts[i] + 1
        rngs = [_chain_rng(cfg.seed, k, i, attempt) for k in indices]
        v = _run_chains(alpha, gamma, cfg.sigma_eps, cfg.burn_in, rngs)
        u[:, i, i] = v[:, 0]
        u[:, i, ch] = v[:, 1:]
    return u


def _chordal_structure(g: UndirectedGraph):
    order, perfect = max_cardinality_search(g)
    if not perfect:
        raise NotChordalError(
            "graph is not chordal; sample_port_chol handles general graphs"
        )
    return order


def _batch_uniform_chordal(
    g: UndirectedGraph, cfg: SamplerConfig, indices
) -> np.ndarray:
    order = _chordal_structure(g)
    children, parent_counts = _perfect_order_structure(g, order)
    u = _draw_unit_factors(children, parent_counts, cfg, indices)
    s = u @ u.transpose(0, 2, 1)
    s = 0.5 * (s + s.transpose(0, 2, 1))
    # Undo the relabelling into perfect-order positions.
    perm = np.asarray(order) - 1
    out = np.empty_like(s)
    out[:, perm[:, None], perm[None, :]] = s
    return out


def sample_uniform_chordal(
    g: UndirectedGraph, cfg: SamplerConfig, index: int = 0
) -> np.ndarray:
    """One uniform draw from the correlation matrices patterned on ``g``.

    Requires ``g`` chordal (raises :class:`NotChordalError` otherwise).
    Vertices are relabelled into a perfect elimination order, a
    unit-row upper-triangular factor is drawn row by row through
    hemisphere chains weighted by the volume the row carries, the Gram
    matrix of the factor is formed, and the labelling is undone.  The
    result has unit diagonal, exact zeros at non-adjacent pairs and is
    positive definite; its law is uniform over that set.
    """
    return _batch_uniform_chordal(g, cfg, [index])[0]


def _factor_to_vertex_space(u: np.ndarray, order) -> np.ndarray:
    perm = np.asarray(order) - 1
    out = np.empty_like(u)
    out[perm[:, None], perm[None, :]] = u
    return out


def sample_port_chol(g: UndirectedGraph, cfg: SamplerConfig, index: int = 0) -> np.ndarray:
    """One approximate-uniform draw for an arbitrary graph pattern.

    The graph is triangulated, a uniform-law factor is drawn for the
    triangulation in its elimination order, the factor is mapped back to
    original vertex labels, and partial orthogonalization against ``g``
    removes the contribution of fill edges.  The returned Gram matrix is
    a correlation matrix with zeros (to roundoff) at all non-adjacent
    pairs of ``g``; for chordal graphs no fill is added and the law is
    the uniform one.
    """
    gp, order = triangulate(g)
    children, parent_counts = _perfect_order_structure(gp, order)
    for attempt in range(cfg.max_resample):
        u = _draw_unit_factors(children, parent_counts, cfg, [index], attempt)[0]
        q = _factor_to_vertex_space(u, order)
        try:
            q = mgs_partial_orthogonalize(q, g, cfg.residual_tol)
        except DegenerateRowError:
            continue
        return gram(q)
    raise SamplerError(
        f"no full-rank draw for sample {index} after {cfg.max_resample} attempts"
    )


def _batch_port_chol(g: UndirectedGraph, cfg: SamplerConfig, indices) -> np.ndarray:
    gp, order = triangulate(g)
    children, parent_counts = _perfect_order_structure(gp, order)
    u = _draw_unit_factors(children, parent_counts, cfg, indices)
    out = np.empty_like(u)
    for k, index in enumerate(indices):
        q = _factor_to_vertex_space(u[k], order)
        try:
            q = mgs_partial_orthogonalize(q, g, cfg.residual_tol)
        except DegenerateRowError:
            # Rare: fall back to the serial path, which retries with
            # fresh per-attempt streams and matches it bitwise.
            out[k] = sample_port_chol(g, cfg, index)
            continue
        out[k] = gram(q)
    return out


METHODS = ("diagdom", "port", "uniform", "portchol")


def sample_batch(
    g: UndirectedGraph,
    cfg: SamplerConfig,
    n: int,
    method: str,
    as_correlation: bool = False,
    start_index: int = 0,
) -> np.ndarray:
    """Draw ``n`` samples by the named method into an ``(n, p, p)`` array.

    ``method`` is one of ``METHODS``.  Sample ``k`` of the batch equals
    the corresponding single-sample call with ``index = start_index + k``
    bitwise; hemisphere-based methods vectorise their chains across the
    batch without changing that.  ``as_correlation`` only affects
    ``"diagdom"``; the other methods always return correlation matrices.
    """
    if n < 0:
        raise ValueError(f"sample count must be nonnegative, got {n}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    indices = list(range(start_index, start_index + n))
    if method == "uniform":
        if n == 0:
            _chordal_structure(g)  # still reject non-chordal graphs
            return np.empty((0, g.p, g.p))
        return _batch_uniform_chordal(g, cfg, indices)
    if method == "portchol":
        if n == 0:
            return np.empty((0, g.p, g.p))
        return _batch_port_chol(g, cfg, indices)
    out = np.empty((n, g.p, g.p))
    for k, index in enumerate(indices):
        if method == "diagdom":
            out[k] = sample_diagdom(g, cfg, as_correlation=as_correlation, index=index)
        else:
            out[k] = sample_port(g, cfg, index=index)
    return out
