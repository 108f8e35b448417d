import math

import numpy as np
import pytest

from alphax import (
    ConvergenceError,
    NonEquitablePartitionError,
    alpha_index,
    alpha_matrix,
    disjoint_union,
    enumerate_graphs,
    extremal_fs,
    extremal_qt,
    f_inequality,
    jacobi_eigh,
    join_quotient_index,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_empty,
    make_path,
    nikiforov_lower_bound,
    power_iteration,
    quotient_matrix,
    signless_laplacian_index,
)
from alphax.spectral import _jacobi_kernel_py
from conftest import random_graph


def test_alpha_matrix_single_edge():
    for a in (0.0, 0.3, 1.0):
        m = alpha_matrix(make_complete(2), a)
        assert np.allclose(m, [[a, 1 - a], [1 - a, a]])


def test_alpha_matrix_endpoints():
    g = make_path(4)
    adj = alpha_matrix(g, 0.0)
    assert adj[0, 0] == 0 and adj[0, 1] == 1
    deg = alpha_matrix(g, 1.0)
    assert np.allclose(np.diag(deg), g.degrees()) and deg[0, 1] == 0
    # 2*A_{1/2} is the signless Laplacian D + A
    q = 2 * alpha_matrix(g, 0.5)
    assert np.allclose(q, alpha_matrix(g, 1.0) + alpha_matrix(g, 0.0))
    with pytest.raises(ValueError):
        alpha_matrix(g, 1.5)


def test_alpha_index_trivial_values():
    assert abs(alpha_index(make_empty(5), 0.7).rho) < 1e-12
    for n in (2, 5, 9):
        for a in (0.0, 0.4, 1.0):
            assert abs(alpha_index(make_complete(n), a).rho - (n - 1)) < 1e-9
    r = alpha_index(make_complete_bipartite(1, 3), 0.5)
    assert abs(r.rho - 2.0) < 1e-10
    with pytest.raises(ValueError):
        alpha_index(make_empty(0), 0.5)
    with pytest.raises(ValueError):
        alpha_index(make_path(2), 0.5, tol=0.0)


def test_result_certificates(rng):
    for _ in range(25):
        g = random_graph(rng.randint(1, 12), rng.random(), rng)
        a = rng.random()
        r = alpha_index(g, a)
        m = alpha_matrix(g, a)
        assert r.residual <= 1e-10
        assert abs(np.linalg.norm(r.vector) - 1.0) < 1e-12
        assert np.linalg.norm(m @ r.vector - r.rho * r.vector) <= 1e-10
        assert -1e-12 <= r.rho <= g.n - 1 + 1e-12


def test_perron_positive_connected():
    for g in enumerate_graphs(5, connected_only=True):
        r = alpha_index(g, 0.3)
        assert np.all(r.vector > 0)
        scaled = r.perron_scaled()
        assert abs(scaled.max() - 1.0) < 1e-12


def test_jacobi_kernels_agree_with_numpy(rng):
    for _ in range(20):
        n = rng.randint(1, 20)
        m = np.array([[rng.gauss(0, 1) for _ in range(n)] for _ in range(n)])
        m = (m + m.T) / 2
        w, v, _ = jacobi_eigh(m)
        assert np.allclose(w, np.linalg.eigvalsh(m), atol=1e-9)
        assert np.allclose(v @ np.diag(w) @ v.T, m, atol=1e-9)
        # pure python fallback kernel reaches the same spectrum
        a = m.copy()
        vv = np.eye(n)
        _jacobi_kernel_py(a, vv, 1e-13 * max(1.0, np.linalg.norm(m)), 60)
        assert np.allclose(np.sort(np.diag(a)), w, atol=1e-9)


def test_power_iteration_cross_checks(rng):
    # includes the bipartite adjacency case where +-rho are tied without a shift
    g = make_complete_bipartite(3, 4)
    m = alpha_matrix(g, 0.0)
    rho, vec, iters = power_iteration(m, shift=1.0)
    assert abs(rho - math.sqrt(12)) < 1e-9
    for _ in range(10):
        h = random_graph(rng.randint(2, 10), 0.5, rng)
        a = rng.random()
        m = alpha_matrix(h, a)
        rho, _, _ = power_iteration(m, shift=a * h.n + 1.0)
        assert abs(rho - alpha_index(h, a).rho) < 1e-9


def test_power_iteration_degenerate_top_converges():
    # twin regular components: the top eigenvalue is doubly degenerate
    g = disjoint_union(make_complete(4), make_complete(4))
    rho, _, _ = power_iteration(alpha_matrix(g, 0.3), shift=2.0)
    assert abs(rho - 3.0) < 1e-9


def test_power_iteration_iteration_cap():
    m = alpha_matrix(make_path(20), 0.0)
    with pytest.raises(ConvergenceError) as exc:
        power_iteration(m, shift=1.0, tol=1e-14, max_iter=3)
    assert exc.value.residual < 1.0


def test_regular_graph_closure():
    for n in range(2, 7):
        for g in enumerate_graphs(n):
            degs = g.degrees()
            if len(set(degs)) != 1:
                continue
            d = degs[0]
            rho0 = alpha_index(g, 0.0).rho
            for a in (0.25, 0.5, 0.75):
                assert abs(alpha_index(g, a).rho - (a * d + (1 - a) * rho0)) <= 1e-9


def test_vertex_deletion_interlacing():
    for n in range(2, 7):
        for g in enumerate_graphs(n):
            rho = alpha_index(g, 0.4).rho
            for v in range(n):
                assert alpha_index(g.delete_vertex(v), 0.4).rho <= rho + 1e-12


def test_signless_laplacian_values():
    assert signless_laplacian_index(make_empty(4)) == 0.0
    assert abs(signless_laplacian_index(make_complete(2)) - 2.0) < 2e-10
    assert abs(signless_laplacian_index(make_cycle(4)) - 4.0) < 2e-10
    assert abs(signless_laplacian_index(make_complete_bipartite(1, 3)) - 4.0) < 2e-10


def test_join_quotient_index_hand_values():
    # n=4, s=1, alpha=1/2: x^2 - 2x, largest root 2
    assert abs(join_quotient_index(4, 1, 0.5) - 2.0) < 1e-14
    # n=5, s=1, alpha=0: adjacency radius of the 4-star, sqrt(4)
    assert abs(join_quotient_index(5, 1, 0.0) - 2.0) < 1e-14
    assert abs(join_quotient_index(10, 2, 0.3)
               - alpha_index(extremal_fs(10, 2), 0.3).rho) < 1e-9
    with pytest.raises(ValueError):
        join_quotient_index(3, 3, 0.5)


def test_f_inequality():
    with pytest.raises(ValueError):
        f_inequality(1.0, 5, 1, 0.0)
    assert not f_inequality(0.0, 4, 1, 0.5)
    for (n, s, a) in ((5, 1, 0.3), (9, 2, 0.5), (15, 3, 0.7)):
        rho = join_quotient_index(n, s, a)
        assert f_inequality(rho, n, s, a)
    # rho = alpha*n reduces to alpha*n >= (1-alpha)(n-s)s
    assert f_inequality(0.9 * 20, 20, 1, 0.9) == (0.9 * 20 >= 0.1 * 19)


def test_nikiforov_bounds():
    b = nikiforov_lower_bound(10, 1, 0.5)
    assert abs(b.basic - 4.5) < 1e-14
    assert abs(b.threshold - 1.0) < 1e-12
    assert b.strong is not None and abs(b.strong - 4.5) < 1e-12
    # below the threshold the strong bound is absent
    b = nikiforov_lower_bound(10, 2, 0.1)
    assert b.strong is None and b.threshold > 10
    with pytest.raises(ValueError):
        nikiforov_lower_bound(5, 1, 1.0)
    with pytest.raises(ValueError):
        nikiforov_lower_bound(1, 2, 0.5)


def test_quotient_matrix_path():
    q = quotient_matrix(make_path(3), [(0, 2), (1,)])
    assert np.allclose(q.counts, [[0, 1], [2, 0]])
    a = 0.3
    assert np.allclose(q.alpha_weighted(a), [[a, 1 - a], [2 * (1 - a), 2 * a]])
    assert abs(q.alpha_index(a) - alpha_index(make_path(3), a).rho) < 1e-9


def test_quotient_matrix_join_partitions():
    for (n, s) in ((7, 1), (9, 2), (12, 3)):
        g = extremal_fs(n, s)
        q = quotient_matrix(g, [tuple(range(s)), tuple(range(s, n))])
        for a in (0.2, 0.5, 0.8):
            assert abs(q.alpha_index(a) - join_quotient_index(n, s, a)) < 1e-9
    # matched part is equitable only when n-t is even
    g = extremal_qt(10, 2)
    q = quotient_matrix(g, [tuple(range(2)), tuple(range(2, 10))])
    assert abs(q.alpha_index(0.6) - alpha_index(g, 0.6).rho) < 1e-9


def test_quotient_matrix_errors():
    with pytest.raises(NonEquitablePartitionError) as exc:
        quotient_matrix(make_path(4), [(0, 1), (2, 3)])
    assert "vertices" in str(exc.value)
    g = extremal_qt(9, 2)  # odd matched part: isolated vertex breaks equitability
    with pytest.raises(NonEquitablePartitionError):
        quotient_matrix(g, [tuple(range(2)), tuple(range(2, 9))])
    with pytest.raises(ValueError):
        quotient_matrix(make_path(3), [(0,), (1,)])
    with pytest.raises(ValueError):
        quotient_matrix(make_path(3), [(0, 1), (1, 2)])
