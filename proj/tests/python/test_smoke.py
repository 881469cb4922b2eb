import math

import numpy as np
import pytest

import kronspec as ks


def cycle(n):
    return ks.build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return ks.build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_graph_basics():
    star = ks.build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert star.degrees == [3, 1, 1, 1]
    assert ks.edge_density(star) == 0.5
    assert ks.is_bipartite(star)
    vals, vecs = ks.sym_eig(ks.laplacian(star))
    assert np.allclose(vals, [0, 1, 1, 4])
    assert np.allclose(vecs.T @ vecs, np.eye(4))
    with pytest.raises(ValueError):
        ks.build_graph(3, [(1, 1)])


def test_kronecker_matches_numpy():
    g = ks.erdos_renyi(6, 0.5, 1)
    h = ks.erdos_renyi(5, 0.5, 2)
    p = ks.kronecker_graph(g, h)
    assert np.array_equal(p.adjacency_matrix(), np.kron(g.adjacency_matrix(), h.adjacency_matrix()))


def test_regular_factors_exact():
    g1, g2 = cycle(4), complete(3)
    exact = np.linalg.eigvalsh(ks.laplacian(ks.kronecker_graph(g1, g2)))
    say = ks.sayama_spectrum(
        list(ks.sym_eigvals(ks.laplacian(g1))), g1.sorted_degrees(),
        list(ks.sym_eigvals(ks.laplacian(g2))), g2.sorted_degrees())
    nor = ks.normalized_estimate(
        list(ks.sym_eigvals(ks.normalized_laplacian(g1))), g1.sorted_degrees(),
        list(ks.sym_eigvals(ks.normalized_laplacian(g2))), g2.sorted_degrees())
    assert np.allclose(say["sorted"], exact, atol=1e-9)
    assert np.allclose(nor["sorted"], exact, atol=1e-9)
    assert len(say["values"]) == 12


def test_mean_rms_matches_correlation():
    g1 = ks.generate_connected("ER", 15, 0.3, 3)
    g2 = ks.generate_connected("ER", 9, 0.5, 4)
    _, w1 = ks.sym_eig(ks.laplacian(g1))
    _, w2 = ks.sym_eig(ks.laplacian(g2))
    prof = ks.correlation_profile(g1, g2, w1, w2)
    r1 = [r for i, j, r in prof if i == 0]
    assert np.allclose(r1, ks.mean_rms_ratio(g1.degrees), atol=1e-10)


def test_theory_values():
    assert math.isclose(ks.expected_r1j(30, 0.1), math.sqrt(2.9 / 3.8))
    assert ks.expected_kron_normalized_spectrum(3, 3) == [(0.0, 1), (1.5, 2), (1.5, 2), (0.75, 4)]
    assert ks.asymptotic_polynomial(1, 0.5) >= 0


def test_small_experiment(tmp_path):
    cfg = {"model": "ER", "orders": [8, 10], "density": 0.4, "runs": 3,
           "output_dir": str(tmp_path / "out"), "kde_grid_size": 32}
    a = ks.run_experiment(cfg, write=True)
    b = ks.run_experiment(cfg)
    assert a["profiles"]["normalized"]["median"] == b["profiles"]["normalized"]["median"]
    assert len(a["profiles"]["sayama"]["median"]) == 79
    assert (tmp_path / "out" / "report.json").exists()
    with pytest.raises(ValueError):
        ks.run_experiment({"runs": 0})
