"""Stochastic phase dynamics of the coupled-oscillator network.

The model is a Kuramoto-type phase reduction: each oscillator carries a
phase in [0, 2*pi), anti-ferromagnetic coupling pushes connected phases
apart, and second-harmonic injection locks phases to {phi, phi + pi}.
Integration is explicit Euler-Maruyama with a fixed step, so trajectories
are bit-reproducible given a seed. One simulation time unit corresponds to
one nanosecond of the hardware schedule; the carrier frequency is
abstracted away (phases are relative to the carrier).

Update rule per step:

  theta_i += dt * ( coupling * sum_{j~i, gated} J_ij * sin(theta_i - theta_j)
                    - locking * e_i * sin(2 * (theta_i - phi_i)) )
             + noise * sqrt(dt) * xi_i

with xi standard normal. Positive J_ij drives coupled phases apart. This is
gradient descent on hamiltonian.lyapunov_energy plus white phase noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .graph import Graph

__all__ = [
    "PhaseState",
    "CouplingGate",
    "ShilConfig",
    "DynamicsParams",
    "TrajectoryRecorder",
    "random_init",
    "step",
    "evolve",
    "wrap_phases",
]

TWO_PI = 2.0 * math.pi


def wrap_phases(phases: np.ndarray) -> np.ndarray:
    """Wrap angles into [0, 2*pi); values landing exactly on 2*pi map to 0."""
    wrapped = np.mod(phases, TWO_PI)
    # mod can return 2*pi for tiny negative inputs
    wrapped[wrapped >= TWO_PI] = 0.0
    return wrapped


@dataclass(frozen=True)
class PhaseState:
    """Oscillator phases (each in [0, 2*pi)) plus the simulation clock."""

    phases: np.ndarray
    time: float = 0.0

    @property
    def n(self) -> int:
        return len(self.phases)


@dataclass(frozen=True)
class CouplingGate:
    """Per-edge coupling enable mask (the partitioning control)."""

    active: np.ndarray

    @classmethod
    def all_on(cls, graph: Graph) -> "CouplingGate":
        return cls(np.ones(graph.edge_count, dtype=bool))

    @classmethod
    def all_off(cls, graph: Graph) -> "CouplingGate":
        return cls(np.zeros(graph.edge_count, dtype=bool))


@dataclass(frozen=True)
class ShilConfig:
    """Per-node injection-locking enable and lock-phase select.

    select holds the lock reference phi_i; the two-stage 4-coloring machine
    uses phi = 0 (locks {0, pi}) and phi = pi/2 (locks {pi/2, 3*pi/2}).
    select is meaningful only where enabled.
    """

    enabled: np.ndarray
    select: np.ndarray

    @classmethod
    def off(cls, n: int) -> "ShilConfig":
        return cls(np.zeros(n, dtype=bool), np.zeros(n))

    @classmethod
    def uniform(cls, n: int, phi: float) -> "ShilConfig":
        return cls(np.ones(n, dtype=bool), np.full(n, float(phi)))


@dataclass(frozen=True)
class DynamicsParams:
    """Physical constants of the phase model.

    coupling: edge interaction strength (1/time)
    locking:  injection-locking strength (1/time)
    noise:    phase jitter amplitude (rad/sqrt(time))
    dt:       Euler-Maruyama step (time)
    """

    coupling: float = 1.0
    locking: float = 2.5
    noise: float = 0.05
    dt: float = 0.01

    def __post_init__(self):
        if self.coupling < 0 or self.locking < 0 or self.noise < 0:
            raise ValueError("coupling, locking, and noise must be nonnegative")
        if self.dt <= 0:
            raise ValueError("dt must be positive")

    def check_stability(self, graph: Graph) -> None:
        """dt * max(coupling * max_degree, 2 * locking) must stay below 0.5."""
        rate = max(self.coupling * graph.max_degree(), 2.0 * self.locking)
        if self.dt * rate >= 0.5:
            raise ValueError(
                f"unstable step: dt * max(coupling * max_degree, 2 * locking) "
                f"= {self.dt * rate:.3f} >= 0.5"
            )

    def with_noise(self, noise: float) -> "DynamicsParams":
        return replace(self, noise=noise)


@dataclass
class TrajectoryRecorder:
    """Samples (time, phases) every sample_every steps, including step 0."""

    sample_every: int = 1
    times: list = field(default_factory=list)
    samples: list = field(default_factory=list)

    def record(self, state: PhaseState, step_index: int) -> None:
        if step_index % self.sample_every == 0:
            self.times.append(state.time)
            self.samples.append(state.phases.copy())

    def to_csv(self, path) -> None:
        n = len(self.samples[0]) if self.samples else 0
        header = "time," + ",".join(f"theta_{i}" for i in range(n))
        rows = np.column_stack([np.array(self.times), np.array(self.samples)])
        np.savetxt(path, rows, delimiter=",", header=header, comments="")


def random_init(n: int, rng: np.random.Generator) -> PhaseState:
    """Phases drawn independently and uniformly from [0, 2*pi), time 0."""
    if n < 1:
        raise ValueError("need at least one oscillator")
    return PhaseState(rng.uniform(0.0, TWO_PI, size=n), time=0.0)


def _drift(phases, graph, gate, shil, params):
    active = gate.active
    s = graph.w[active] * np.sin(phases[graph.ei[active]] - phases[graph.ej[active]])
    torque = np.bincount(graph.ei[active], weights=s, minlength=graph.n)
    torque -= np.bincount(graph.ej[active], weights=s, minlength=graph.n)
    d = params.coupling * torque
    if params.locking > 0.0:
        lock = np.where(
            shil.enabled, np.sin(2.0 * (phases - shil.select)), 0.0
        )
        d -= params.locking * lock
    return d


def _check_dims(state, graph, gate, shil):
    if state.n != graph.n:
        raise ValueError(f"state has {state.n} phases, graph has {graph.n} nodes")
    if len(gate.active) != graph.edge_count:
        raise ValueError("gate length does not match edge count")
    if len(shil.enabled) != graph.n or len(shil.select) != graph.n:
        raise ValueError("injection config length does not match node count")


def step(
    state: PhaseState,
    graph: Graph,
    gate: CouplingGate,
    shil: ShilConfig,
    params: DynamicsParams,
    rng: np.random.Generator | None = None,
    xi: np.ndarray | None = None,
) -> PhaseState:
    """Advance one Euler-Maruyama step.

    Noise increments come from rng unless an explicit xi vector is passed
    (used by tests that need per-node noise streams). With noise == 0
    neither is consulted.
    """
    _check_dims(state, graph, gate, shil)
    params.check_stability(graph)
    phases = state.phases + params.dt * _drift(state.phases, graph, gate, shil, params)
    if params.noise > 0.0:
        if xi is None:
            if rng is None:
                raise ValueError("noise > 0 requires an rng or explicit xi")
            xi = rng.standard_normal(graph.n)
        phases = phases + params.noise * math.sqrt(params.dt) * xi
    return PhaseState(wrap_phases(phases), time=state.time + params.dt)


def evolve(
    state: PhaseState,
    duration: float,
    graph: Graph,
    gate: CouplingGate,
    shil: ShilConfig,
    params: DynamicsParams,
    rng: np.random.Generator | None = None,
    recorder: TrajectoryRecorder | None = None,
) -> PhaseState:
    """Integrate for ceil(duration / dt) steps; deterministic given the seed."""
    if duration < 0:
        raise ValueError("duration must be nonnegative")
    _check_dims(state, graph, gate, shil)
    params.check_stability(graph)
    n_steps = math.ceil(duration / params.dt - 1e-12)
    phases = state.phases.copy()
    t = state.time
    sqrt_dt = math.sqrt(params.dt)
    for k in range(n_steps):
        if recorder is not None:
            recorder.record(PhaseState(phases, t), k)
        phases += params.dt * _drift(phases, graph, gate, shil, params)
        if params.noise > 0.0:
            phases += params.noise * sqrt_dt * rng.standard_normal(graph.n)
        phases = wrap_phases(phases)
        t += params.dt
    out = PhaseState(phases, time=t)
    if recorder is not None:
        recorder.record(out, n_steps)
    return out
