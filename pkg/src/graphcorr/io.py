"""Text formats for graphs, matrices and batch summaries.

All writers emit deterministic bytes: fixed entry order, ``\\n`` line
endings and 17-significant-digit floats, so a value survives a
write/read round trip exactly and equal inputs produce equal files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import UndirectedGraph

__all__ = [
    "ParseError",
    "graph_to_text",
    "write_graph",
    "read_graph",
    "matrix_to_text",
    "write_matrix",
    "read_matrix",
    "write_data_matrix",
    "read_data_matrix",
    "SampleBatchSummary",
    "summarize_entries",
    "write_values_csv",
    "write_histogram_csv",
    "write_scatter_csv",
]

_SYMMETRY_TOL = 1e-12


class ParseError(ValueError):
    """Malformed input file; the message carries file and line context."""

    def __init__(self, path, line: int, reason: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {reason}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def graph_to_text(g: UndirectedGraph) -> str:
    """Edge-list text: vertex count line, then one ``i j`` line per edge.

    Edges appear in lexicographic order with ``i < j``, so equal graphs
    serialise to equal bytes.
    """
    lines = [str(g.p)]
    lines.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


def write_graph(path, g: UndirectedGraph) -> None:
    Path(path).write_text(graph_to_text(g), encoding="utf-8")


def read_graph(path) -> UndirectedGraph:
    """Parse an edge-list file written by :func:`write_graph`.

    Blank lines and lines starting with ``#`` are ignored.  The first
    payload line is the vertex count; every further line holds two
    integers ``i j`` with ``1 <= i < j <= p``.  Duplicate edges, numbers
    out of range and malformed lines raise :class:`ParseError` with the
    offending line number.
    """
    path = Path(path)
    p = None
    edges = []
    seen = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            if p is None:
                try:
                    p = int(text)
                except ValueError:
                    raise ParseError(path, lineno, f"vertex count expected, got {text!r}")
                if p < 1:
                    raise ParseError(path, lineno, f"vertex count must be positive, got {p}")
                continue
            parts = text.split()
            if len(parts) != 2:
                raise ParseError(path, lineno, f"edge line needs two integers, got {text!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(path, lineno, f"edge line needs two integers, got {text!r}")
            if not (1 <= i < j <= p):
                raise ParseError(
                    path, lineno, f"edge ({i}, {j}) must satisfy 1 <= i < j <= {p}"
                )
            if (i, j) in seen:
                raise ParseError(path, lineno, f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            edges.append((i, j))
    if p is None:
        raise ParseError(path, 0, "empty graph file: vertex count missing")
    return UndirectedGraph(p, edges)


def matrix_to_text(m: np.ndarray) -> str:
    rows = (",".join(_fmt(x) for x in row) for row in np.atleast_2d(m))
    return "\n".join(rows) + "\n"


def write_matrix(path, m) -> None:
    """Write a symmetric matrix as comma-separated rows.

    Entries carry 17 significant digits, enough for an exact float64
    round trip through :func:`read_matrix`.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    Path(path).write_text(matrix_to_text(m), encoding="utf-8")


def _read_rows(path) -> np.ndarray:
    path = Path(path)
    rows = []
    width = None
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text:
                continue
            parts = text.split(",")
            if width is None:
                width = len(parts)
            elif len(parts) != width:
                raise ParseError(
                    path, lineno, f"ragged row: {len(parts)} fields, expected {width}"
                )
            try:
                rows.append([float(x) for x in parts])
            except ValueError:
                raise ParseError(path, lineno, f"non-numeric field in {text!r}")
    if not rows:
        raise ParseError(path, 0, "empty matrix file")
    return np.asarray(rows)


def read_matrix(path) -> np.ndarray:
    """Read a square symmetric matrix written by :func:`write_matrix`.

    Asymmetry beyond 1e-12 (absolute) raises :class:`ParseError`;
    asymmetry within it, as can arise from decimal truncation by other
    tools, is repaired by averaging with the transpose.
    """
    m = _read_rows(path)
    if m.shape[0] != m.shape[1]:
        raise ParseError(path, 0, f"matrix must be square, got shape {m.shape}")
    skew = np.max(np.abs(m - m.T)) if m.size else 0.0
    if skew > _SYMMETRY_TOL:
        raise ParseError(path, 0, f"matrix is asymmetric (max |m - m^T| = {skew:.3e})")
    return 0.5 * (m + m.T)


def write_data_matrix(path, x) -> None:
    """Write an ``(n, p)`` data matrix, one observation per row."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError(f"data matrix must be 2-d, got shape {x.shape}")
    if x.shape[0] == 0:
        Path(path).write_text("", encoding="utf-8")
        return
    Path(path).write_text(matrix_to_text(x), encoding="utf-8")


def read_data_matrix(path) -> np.ndarray:
    """Read a data matrix written by :func:`write_data_matrix`.

    An empty file round-trips the zero-observation case.
    """
    if Path(path).stat().st_size == 0:
        return np.empty((0, 0))
    return _read_rows(path)


@dataclass(frozen=True)
class SampleBatchSummary:
    """Entrywise summary of a batch of matrices at chosen positions.

    Positions are 1-based ``(i, j)`` pairs.  Histograms share one fixed
    binning; values outside its range are counted in the underflow and
    overflow fields rather than dropped, so per-position counts always
    total ``n_samples``.
    """

    positions: tuple
    values: dict
    bin_edges: np.ndarray
    counts: dict
    underflow: dict
    overflow: dict
    n_samples: int
    scatter_pair: tuple | None = None
    scatter_xy: np.ndarray | None = None


def _check_position(pos, p: int):
    i, j = pos
    if not (1 <= i <= p and 1 <= j <= p):
        raise ValueError(f"position {pos} out of range for {p}x{p} matrices")
    return (int(i), int(j))


def summarize_entries(
    samples,
    positions,
    scatter_pair=None,
    bins: int = 100,
    value_range=(-1.0, 1.0),
) -> SampleBatchSummary:
    """Collect values and fixed-bin histograms of entries across a batch.

    Parameters
    ----------
    samples : (n, p, p) array_like
        The batch; ``n = 0`` is allowed and yields empty summaries.
    positions : iterable of (i, j)
        1-based entry positions to track.
    scatter_pair : ((i, j), (k, l)), optional
        Two positions whose per-sample value pairs are kept for a
        scatter plot.
    bins, value_range :
        Histogram layout; ``value_range`` defaults to the correlation
        range ``[-1, 1]``.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 3 or samples.shape[1] != samples.shape[2]:
        raise ValueError(f"samples must be (n, p, p), got shape {samples.shape}")
    if bins < 1:
        raise ValueError(f"bins must be positive, got {bins}")
    lo, hi = float(value_range[0]), float(value_range[1])
    if not lo < hi:
        raise ValueError(f"empty value range {value_range}")
    n, p = samples.shape[0], samples.shape[1]
    positions = tuple(_check_position(pos, p) for pos in positions)

    edges = np.linspace(lo, hi, bins + 1)
    values = {}
    counts = {}
    underflow = {}
    overflow = {}
    for i, j in positions:
        x = samples[:, i - 1, j - 1]
        values[(i, j)] = x
        inside, _ = np.histogram(x, bins=bins, range=(lo, hi))
        counts[(i, j)] = inside
        underflow[(i, j)] = int(np.sum(x < lo))
        overflow[(i, j)] = int(np.sum(x > hi))

    xy = None
    if scatter_pair is not None:
        a = _check_position(scatter_pair[0], p)
        b = _check_position(scatter_pair[1], p)
        scatter_pair = (a, b)
        xy = np.column_stack(
            [samples[:, a[0] - 1, a[1] - 1], samples[:, b[0] - 1, b[1] - 1]]
        )
    return SampleBatchSummary(
        positions=positions,
        values=values,
        bin_edges=edges,
        counts=counts,
        underflow=underflow,
        overflow=overflow,
        n_samples=n,
        scatter_pair=scatter_pair,
        scatter_xy=xy,
    )


def _pos_label(pos) -> str:
    return f"{pos[0]}-{pos[1]}"


def write_values_csv(path, summary: SampleBatchSummary) -> None:
    """Raw tracked values, one row per (position, sample): ``position,value``."""
    lines = ["position,value"]
    for pos in summary.positions:
        label = _pos_label(pos)
        lines.extend(f"{label},{_fmt(x)}" for x in summary.values[pos])
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_histogram_csv(path, summary: SampleBatchSummary) -> None:
    """Per-position histograms: ``position,bin_low,bin_high,count``.

    Underflow and overflow counts appear as rows with an infinite bound
    before and after each position's regular bins.
    """
    edges = summary.bin_edges
    lines = ["position,bin_low,bin_high,count"]
    for pos in summary.positions:
        label = _pos_label(pos)
        lines.append(f"{label},-inf,{_fmt(edges[0])},{summary.underflow[pos]}")
        for b, count in enumerate(summary.counts[pos]):
            lines.append(f"{label},{_fmt(edges[b])},{_fmt(edges[b + 1])},{count}")
        lines.append(f"{label},{_fmt(edges[-1])},inf,{summary.overflow[pos]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_scatter_csv(path, summary: SampleBatchSummary) -> None:
    """Per-sample value pairs of the scatter positions: ``x,y``."""
    if summary.scatter_xy is None:
        raise ValueError("summary has no scatter pair")
    lines = ["x,y"]
    lines.extend(f"{_fmt(x)},{_fmt(y)}" for x, y in summary.scatter_xy)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
