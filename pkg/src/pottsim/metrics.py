"""Solution-quality metrics and multi-iteration statistics.

Accuracy is the fraction of edges whose endpoints got different colors
(|E|-normalized, so a proper coloring scores 1.0). Batch statistics cover
best/mean accuracy, the pairwise Hamming matrix of the colorings, and the
correlation between first-stage cut quality and final coloring quality.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _sps

from .graph import Graph
from .scheduler import SolveResult

__all__ = [
    "RunStats",
    "coloring_accuracy",
    "cut_accuracy",
    "cut_value",
    "hamming",
    "hamming_min_rotation",
    "aggregate",
]


def coloring_accuracy(graph: Graph, coloring) -> float:
    """Fraction of edges with differently colored endpoints; 1.0 if no edges."""
    coloring = np.asarray(coloring)
    if len(coloring) != graph.n:
        raise ValueError("coloring length does not match node count")
    if graph.edge_count == 0:
        return 1.0
    good = np.count_nonzero(coloring[graph.ei] != coloring[graph.ej])
    return good / graph.edge_count


def cut_value(graph: Graph, partition) -> float:
    """Total weight of edges crossing the partition."""
    partition = np.asarray(partition)
    if len(partition) != graph.n:
        raise ValueError("partition length does not match node count")
    return float(np.sum(graph.w[partition[graph.ei] != partition[graph.ej]]))


def cut_accuracy(graph: Graph, partition, baseline_cut: float) -> float:
    """Achieved cut weight over the baseline cut.

    Can exceed 1.0 when the baseline is merely best-known; the value is
    reported as-is.
    """
    if baseline_cut <= 0:
        raise ValueError("baseline cut must be positive")
    return cut_value(graph, partition) / baseline_cut


def hamming(c1, c2) -> int:
    """Number of positions where the two colorings differ."""
    c1, c2 = np.asarray(c1), np.asarray(c2)
    if c1.shape != c2.shape:
        raise ValueError("colorings must have equal length")
    return int(np.count_nonzero(c1 != c2))


def hamming_min_rotation(c1, c2, k: int) -> int:
    """Hamming distance minimized over the k cyclic color rotations of c2."""
    c1, c2 = np.asarray(c1), np.asarray(c2)
    if c1.shape != c2.shape:
        raise ValueError("colorings must have equal length")
    return min(int(np.count_nonzero(c1 != (c2 + r) % k)) for r in range(k))


@dataclass
class RunStats:
    """Aggregate statistics over a batch of iterations on one graph."""

    per_iteration: list  # (cut_accuracy, coloring_accuracy, seed)
    best_accuracy: float
    mean_accuracy: float
    hamming_matrix: np.ndarray
    stage_correlation: float
    correlation_degenerate: bool = False
    spearman_correlation: float | None = None
    cut_baseline_note: str = "best-known"
    extras: dict = field(default_factory=dict)

    SCHEMA_VERSION = 1

    def to_dict(self) -> dict:
        return {
            "schema_version": self.SCHEMA_VERSION,
            "per_iteration": [
                {"cut_accuracy": c, "coloring_accuracy": a, "seed": s}
                for c, a, s in self.per_iteration
            ],
            "best_accuracy": self.best_accuracy,
            "mean_accuracy": self.mean_accuracy,
            "hamming_matrix": self.hamming_matrix.tolist(),
            "stage_correlation": self.stage_correlation,
            "correlation_degenerate": self.correlation_degenerate,
            "spearman_correlation": self.spearman_correlation,
            "cut_baseline_note": self.cut_baseline_note,
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def to_csv(self, path) -> None:
        """One row per iteration plus a trailing summary row."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "seed", "cut_accuracy", "coloring_accuracy"])
            for idx, (c, a, s) in enumerate(self.per_iteration):
                writer.writerow([idx, s, f"{c:.6f}", f"{a:.6f}"])
            writer.writerow(
                [
                    "summary",
                    "",
                    f"best={self.best_accuracy:.6f}",
                    f"mean={self.mean_accuracy:.6f}",
                ]
            )


def aggregate(results: list[SolveResult], graph: Graph) -> RunStats:
    """Fold per-iteration results into RunStats.

    Correlation is Pearson between cut and coloring accuracy across
    iterations; a constant series makes it undefined, reported as 0 with
    the degenerate flag set. Spearman is included alongside.
    """
    if not results:
        raise ValueError("need at least one result")
    for r in results:
        if len(r.coloring) != graph.n:
            raise ValueError("result does not match the graph")
    per_iteration = [(r.cut_accuracy, r.coloring_accuracy, r.seed) for r in results]
    col_acc = np.array([r.coloring_accuracy for r in results])
    cut_acc = np.array([r.cut_accuracy for r in results])

    m = len(results)
    hamming_matrix = np.zeros((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(a + 1, m):
            d = hamming(results[a].coloring, results[b].coloring)
            hamming_matrix[a, b] = hamming_matrix[b, a] = d

    degenerate = (
        m < 2 or np.all(cut_acc == cut_acc[0]) or np.all(col_acc == col_acc[0])
    )
    if degenerate:
        pearson, spearman = 0.0, 0.0
    else:
        pearson = float(_sps.pearsonr(cut_acc, col_acc).statistic)
        spearman = float(_sps.spearmanr(cut_acc, col_acc).statistic)

    return RunStats(
        per_iteration=per_iteration,
        best_accuracy=float(col_acc.max()),
        mean_accuracy=float(col_acc.mean()),
        hamming_matrix=hamming_matrix,
        stage_correlation=pearson,
        correlation_degenerate=bool(degenerate),
        spearman_correlation=spearman,
    )
