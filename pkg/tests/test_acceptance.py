"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s`. The scaling checks on the
1024- and 2116-node benchmarks dominate the runtime (a few minutes total).
"""

import itertools
import math
import os
import time

import numpy as np
import pytest

from pottsim.cli import main, run_batch, RunConfig
from pottsim.dynamics import (
    CouplingGate,
    DynamicsParams,
    PhaseState,
    ShilConfig,
    evolve,
    step,
)
from pottsim.graph import Graph, kings_graph, save_graph
from pottsim.hamiltonian import (
    ising_coloring_energy,
    ising_energy,
    lyapunov_energy,
    phase_energy,
    spins_to_sigma,
)
from pottsim.metrics import coloring_accuracy
from pottsim.oracle import brute_force_maxcut, exact_coloring, stripe_cut_value
from pottsim.scheduler import solve_4coloring

TWO_PI = 2 * math.pi


def report(criterion, detail):
    print(f"PASS criterion {criterion}: {detail}", flush=True)


@pytest.fixture(scope="module")
def batch_400():
    results, stats = run_batch(kings_graph(20), RunConfig(iterations=40, master_seed=0))
    return results, stats


class TestCriterion1SmallBenchmark:
    def test_49_node_exact_and_mean(self):
        t0 = time.perf_counter()
        results, stats = run_batch(kings_graph(7), RunConfig(iterations=40, master_seed=0))
        elapsed = time.perf_counter() - t0
        assert stats.best_accuracy == 1.0
        assert stats.mean_accuracy >= 0.95
        assert elapsed < 30.0
        report(1, f"49-node best {stats.best_accuracy:.2f}, "
                  f"mean {stats.mean_accuracy:.4f}, {elapsed:.1f}s")


class TestCriterion2Scaling:
    def test_400_node_best(self, batch_400):
        _, stats = batch_400
        assert stats.best_accuracy >= 0.94
        report(2, f"400-node best {stats.best_accuracy:.4f}")

    @pytest.mark.parametrize("side", [32, 46])
    def test_large_smoke(self, side):
        t0 = time.perf_counter()
        _, stats = run_batch(kings_graph(side), RunConfig(iterations=40, master_seed=0))
        elapsed = time.perf_counter() - t0
        assert stats.best_accuracy >= 0.93
        assert elapsed < 900.0
        report(2, f"{side * side}-node best {stats.best_accuracy:.4f}, {elapsed:.0f}s")


class TestCriterion3StageCorrelation:
    def test_positive_pearson(self, batch_400):
        _, stats = batch_400
        assert not stats.correlation_degenerate
        assert stats.stage_correlation > 0.0
        report(3, f"pearson(cut, coloring) = {stats.stage_correlation:.3f}")


class TestCriterion4SolutionDiversity:
    def test_distinct_colorings(self, batch_400):
        results, _ = batch_400
        distinct = len({tuple(r.coloring.tolist()) for r in results})
        assert distinct >= 30
        report(4, f"{distinct}/40 pairwise-distinct colorings")


class TestCriterion5DynamicsProperties:
    def test_a_lyapunov_descent(self):
        rng = np.random.default_rng(101)
        for _ in range(100):
            n = int(rng.integers(2, 8))
            edges = [
                (i, j, float(rng.uniform(0.2, 1.0)))
                for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6
            ]
            g = Graph(n, edges)
            params = DynamicsParams(noise=0.0, dt=0.01)
            gate = CouplingGate(np.asarray(rng.random(g.edge_count) < 0.8))
            shil = ShilConfig(
                enabled=np.asarray(rng.random(n) < 0.7),
                select=np.asarray(rng.choice([0.0, math.pi / 2], n)),
            )
            state = PhaseState(rng.uniform(0, TWO_PI, n))
            energy = lyapunov_energy(g, state.phases, gate, shil, params)
            for _ in range(1000):
                state = step(state, g, gate, shil, params)
                new_energy = lyapunov_energy(g, state.phases, gate, shil, params)
                assert new_energy <= energy + 1e-9
                energy = new_energy
        report(5, "lyapunov non-increasing on 100 noiseless trajectories")

    @pytest.mark.parametrize("phi", [0.0, math.pi / 2])
    def test_b_lock_fixed_points(self, phi):
        g = Graph(1, [])
        params = DynamicsParams(coupling=0.0, locking=1.0, noise=0.0, dt=0.01)
        gate, shil = CouplingGate.all_off(g), ShilConfig.uniform(1, phi)
        rng = np.random.default_rng(103)
        checked = 0
        while checked < 100:
            theta0 = float(rng.uniform(0, TWO_PI))
            unstable = min(
                abs(math.remainder(theta0 - phi - math.pi / 2, TWO_PI)),
                abs(math.remainder(theta0 - phi + math.pi / 2, TWO_PI)),
            )
            if unstable < 0.02:
                continue
            out = evolve(PhaseState(np.array([theta0])), 15.0, g, gate, shil, params)
            dist = min(
                abs(math.remainder(out.phases[0] - phi, TWO_PI)),
                abs(math.remainder(out.phases[0] - phi - math.pi, TWO_PI)),
            )
            assert dist < 1e-3
            checked += 1
        report(5, f"100 random starts lock to {{phi, phi+pi}} for phi={phi:.3f}")

    def test_c_two_oscillator_anti_phase(self):
        g = Graph(2, [(0, 1, 1.0)])
        params = DynamicsParams(coupling=1.0, locking=0.0, noise=0.0, dt=0.01)
        gate, shil = CouplingGate.all_on(g), ShilConfig.off(2)
        out = evolve(PhaseState(np.array([0.0, math.pi / 2])), 20.0, g, gate, shil, params)
        delta = abs(float(np.mod(out.phases[0] - out.phases[1] + math.pi, TWO_PI) - math.pi))
        assert abs(delta - math.pi) < 0.01
        report(5, f"anti-phase |delta - pi| = {abs(delta - math.pi):.2e}")


def desk_scale_graphs():
    """Paths, cycles, complete graphs, kings(2), kings(3) induced subgraphs."""
    graphs = []
    for n in range(2, 9):
        graphs.append(("path", Graph(n, [(i, i + 1, 1.0) for i in range(n - 1)])))
    for n in range(3, 9):
        edges = [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]
        graphs.append(("cycle", Graph(n, edges)))
    for n in range(2, 6):
        graphs.append(
            ("complete", Graph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)]))
        )
    graphs.append(("kings2", kings_graph(2)))
    k3 = kings_graph(3)
    for removed in (0, 4, 8):  # corner, center, corner
        keep = [v for v in range(9) if v != removed]
        remap = {v: i for i, v in enumerate(keep)}
        edges = [(remap[i], remap[j], w) for i, j, w in k3.edges if i != removed and j != removed]
        graphs.append((f"kings3-minus-{removed}", Graph(8, edges)))
    return graphs


class TestCriterion6OracleEquivalence:
    def test_solver_matches_oracle_at_desk_scale(self):
        solved = 0
        for name, g in desk_scale_graphs():
            colorable = exact_coloring(g, 4) is not None
            if not colorable:
                continue
            best = 0.0
            for s in range(50):
                best = max(best, solve_4coloring(g, seed=s).coloring_accuracy)
                if best == 1.0:
                    break
            assert best == 1.0, f"{name}: best accuracy {best} over 50 seeds"
            solved += 1
        assert solved >= 15
        report(6, f"best-of-50 solves exactly color all {solved} colorable desk graphs")

    def test_stripe_equals_brute_force(self):
        for side in (2, 3):
            assert brute_force_maxcut(kings_graph(side))[0] == stripe_cut_value(side)
        report(6, "stripe cut matches exhaustive max-cut on kings(2), kings(3)")


class TestCriterion7EnergyCrossChecks:
    def test_phase_equals_ising_at_binary_phases(self):
        rng = np.random.default_rng(107)
        for _ in range(100):
            n = int(rng.integers(2, 12))
            edges = [
                (i, j, float(rng.normal()))
                for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
            ]
            g = Graph(n, edges)
            bits = rng.integers(0, 2, n)
            diff = phase_energy(g, bits * math.pi) - ising_energy(g, spins_to_sigma(bits))
            assert abs(diff) < 1e-12
        report(7, "phase energy equals Ising energy at binary phases (100 cases)")

    def test_onehot_zero_iff_proper(self):
        def proper(bits, g):
            if any(sum(row) != 1 for row in bits):
                return False
            colors = [row.index(1) for row in bits]
            return all(colors[i] != colors[j] for i, j, _ in g.edges)

        cases = [
            Graph(2, [(0, 1, 1.0)]),
            Graph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]),
            Graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]),
            kings_graph(2),
        ]
        for g in cases:
            for n_colors in (2, 3):
                for flat in itertools.product([0, 1], repeat=g.n * n_colors):
                    bits = [
                        list(flat[i * n_colors : (i + 1) * n_colors])
                        for i in range(g.n)
                    ]
                    zero = ising_coloring_energy(g, bits) == 0.0
                    assert zero == proper(bits, g)
        report(7, "one-hot energy zero iff proper coloring (exhaustive n<=4, N<=3)")


class TestCriterion8Determinism:
    def test_byte_identical_command_reruns(self, tmp_path):
        graph_path = tmp_path / "g.json"
        save_graph(kings_graph(3), graph_path)
        dirs = [tmp_path / "run_a", tmp_path / "run_b"]
        for d in dirs:
            rc = main([
                "solve", "-g", str(graph_path), "--colors", "4",
                "--iters", "5", "--seed", "42", "-o", str(d),
            ])
            assert rc == 0
        names = sorted(os.listdir(dirs[0]))
        assert names == sorted(os.listdir(dirs[1]))
        for name in names:
            assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()
        report(8, f"{len(names)} result files byte-identical across reruns")
