"""Energy evaluators: Ising, Potts, phase-interaction, and one-hot coloring.

All evaluators are pure functions of (graph, assignment) and return plain
floats. Spin conventions:

  * Ising spins are sigma in {-1, +1}.
  * Potts spins are integers in {0..N-1}.
  * Phase states are real angles; two-phase states use {0, pi}.
  * One-hot assignments are n x N matrices of {0, 1}; rows need not be
    one-hot (the uncolored penalty term charges for violations).
"""

from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = [
    "ising_energy",
    "phase_energy",
    "potts_energy",
    "ising_coloring_energy",
    "lyapunov_energy",
    "spins_to_sigma",
]


def spins_to_sigma(values) -> np.ndarray:
    """Map binary spins {0, 1} to Ising signs {+1, -1}."""
    values = np.asarray(values)
    return np.where(values == 0, 1.0, -1.0)


def _check_len(graph: Graph, vec, name: str) -> np.ndarray:
    arr = np.asarray(vec)
    if arr.shape[0] != graph.n:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {graph.n}")
    return arr


def ising_energy(graph: Graph, sigma) -> float:
    """Sum of J_ij * sigma_i * sigma_j over edges, sigma in {-1, +1}."""
    sigma = _check_len(graph, sigma, "sigma")
    return float(np.sum(graph.w * sigma[graph.ei] * sigma[graph.ej]))


def phase_energy(graph: Graph, phases) -> float:
    """Sum of J_ij * cos(theta_i - theta_j) over edges.

    Serves both the two-phase Ising case and the N-phase vector-Potts case.
    """
    phases = _check_len(graph, phases, "phases")
    return float(np.sum(graph.w * np.cos(phases[graph.ei] - phases[graph.ej])))


def potts_energy(graph: Graph, spins) -> float:
    """Sum of J_ij over monochromatic edges (Kronecker-delta interaction)."""
    spins = _check_len(graph, spins, "spins")
    return float(np.sum(graph.w * (spins[graph.ei] == spins[graph.ej])))


def ising_coloring_energy(graph: Graph, onehot, scale: float = 1.0) -> float:
    """One-hot binary encoding of N-coloring.

    scale * sum_i (1 - sum_k b_ik)^2  +  scale * sum_{(i,j) in E} sum_k b_ik * b_jk

    Zero exactly when every row is one-hot and no edge joins two nodes
    holding the same color bit. Both terms share one scale factor; edge
    weights do not enter the conflict term.
    """
    bits = np.asarray(onehot, dtype=np.float64)
    if bits.ndim != 2 or bits.shape[0] != graph.n:
        raise ValueError(f"one-hot matrix must be {graph.n} x N, got shape {bits.shape}")
    uncolored = np.sum((1.0 - bits.sum(axis=1)) ** 2)
    conflicts = np.sum(bits[graph.ei] * bits[graph.ej])
    return float(scale * (uncolored + conflicts))


def lyapunov_energy(graph: Graph, phases, gate, shil, params) -> float:
    """Composite objective the noiseless phase dynamics descend.

    K_c * sum over gated edges of J_ij * cos(theta_i - theta_j)
    minus (K_s / 2) * sum over injection-enabled nodes of cos(2 * (theta_i - phi_i)).

    The injection term has minima exactly at phi_i and phi_i + pi.
    """
    phases = _check_len(graph, phases, "phases")
    active = np.asarray(gate.active, dtype=bool)
    if active.shape[0] != graph.edge_count:
        raise ValueError("gate length does not match edge count")
    coupling = np.sum(
        graph.w[active] * np.cos(phases[graph.ei[active]] - phases[graph.ej[active]])
    )
    enabled = np.asarray(shil.enabled, dtype=bool)
    if enabled.shape[0] != graph.n:
        raise ValueError("injection config length does not match node count")
    phi = np.asarray(shil.select, dtype=np.float64)
    locking = np.sum(np.cos(2.0 * (phases[enabled] - phi[enabled])))
    return float(params.coupling * coupling - 0.5 * params.locking * locking)
