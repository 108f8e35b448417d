"""A_alpha matrices, certified largest-eigenvalue computation, and the
closed-form spectral bounds.

The primary eigensolver is cyclic Jacobi on the full dense symmetric
matrix (orders are <= 64 here), stopping when the off-diagonal Frobenius
norm falls below 1e-13 relative to the matrix scale.  Every result is
certified by its residual, and a shifted power iteration serves as an
independent cross-check of the largest eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

DEFAULT_TOL = 1e-10
OFF_DIAGONAL_TOL = 1e-13
TIE_TOL = 1e-9


class ConvergenceError(ArithmeticError):
    """Eigensolver failed to certify a result; carries the best residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed directly (never by
    subtracting the diagonal, which cancels catastrophically near zero)."""
    od = a - np.diag(np.diag(a))
    return float(np.linalg.norm(od))


def _jacobi_kernel_py(a: np.ndarray, v: np.ndarray, threshold: float, max_sweeps: int) -> int:
    """Cyclic Jacobi sweeps, vectorized row/column rotations."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        if _off_norm(a) <= threshold:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold / (4.0 * n):
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return max_sweeps


def _jacobi_kernel_scalar(a, v, threshold, max_sweeps):
    """Same sweeps with scalar loops; the numba-compiled hot path."""
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= threshold:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold / (4.0 * n):
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0.0 else -1.0
                t = sign / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip = a[p, i]
                    aiq = a[q, i]
                    a[p, i] = c * aip - s * aiq
                    a[q, i] = s * aip + c * aiq
                for i in range(n):
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - s * aiq
                    a[i, q] = s * aip + c * aiq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
    return max_sweeps


if _HAVE_NUMBA:
    _jacobi_kernel = njit(cache=True)(_jacobi_kernel_scalar)
else:  # pragma: no cover
    _jacobi_kernel = _jacobi_kernel_py


def jacobi_eigh(m: np.ndarray, off_tol: float = OFF_DIAGONAL_TOL,
                max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray, int]:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    Returns (eigenvalues ascending, eigenvector columns, sweep count).
    """
    a = np.array(m, dtype=np.float64)
    n = a.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0)), 0
    v = np.eye(n)
    scale = math.sqrt((a * a).sum())
    threshold = off_tol * max(1.0, scale)
    sweeps = _jacobi_kernel(a, v, threshold, max_sweeps)
    off = _off_norm(a)
    if off > threshold:
        raise ConvergenceError("Jacobi sweeps did not reach the off-diagonal threshold", off)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def power_iteration(m: np.ndarray, shift: float, tol: float = DEFAULT_TOL,
                    max_iter: int = 200_000) -> tuple[float, np.ndarray, int]:
    """Dominant eigenpair of m via power iteration on m + shift*I.

    The shift must make the largest eigenvalue of m strictly dominant in
    magnitude; any positive shift does for entrywise-nonnegative m.
    Deterministic all-ones start (never orthogonal to a Perron vector).
    """
    n = m.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    x = np.full(n, 1.0 / math.sqrt(n))
    rho = float(x @ (m @ x))
    best = math.inf
    for it in range(1, max_iter + 1):
        y = m @ x + shift * x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise ConvergenceError("shift failed to establish dominance", best)
        x = y / norm
        rho = float(x @ (m @ x))
        residual = float(np.linalg.norm(m @ x - rho * x))
        best = min(best, residual)
        if residual <= tol:
            return rho, x, it
    raise ConvergenceError(f"power iteration exceeded {max_iter} iterations", best)


# -- A_alpha assembly and index ----------------------------------------


def alpha_matrix(g: Graph, alpha: float) -> np.ndarray:
    """alpha*D + (1-alpha)*A; diagonal alpha*deg(v), off-diagonal (1-alpha) per edge."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0,1], got {alpha}")
    n = g.n
    m = np.zeros((n, n))
    for v in range(n):
        m[v, v] = alpha * g.degree(v)
        row = g.rows[v]
        for u in range(v + 1, n):
            if row >> u & 1:
                m[v, u] = m[u, v] = 1.0 - alpha
    return m


@dataclass(frozen=True)
class SpectralResult:
    """Largest eigenvalue with a certified unit eigenvector."""

    rho: float
    vector: np.ndarray
    residual: float
    method_iterations: int

    def perron_scaled(self) -> np.ndarray:
        """The eigenvector rescaled so its maximum entry is 1."""
        top = float(np.max(self.vector))
        if top <= 0.0:
            raise ValueError("eigenvector has no positive maximum entry")
        return self.vector / top


def alpha_index(g: Graph, alpha: float, tol: float = DEFAULT_TOL,
                cross_check: bool = True) -> SpectralResult:
    """Largest eigenvalue of A_alpha(G), Jacobi primary, power-iteration checked."""
    if g.n < 1:
        raise ValueError("alpha_index needs at least one vertex")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    m = alpha_matrix(g, alpha)
    w, vecs, sweeps = jacobi_eigh(m)
    rho = float(w[-1])
    x = vecs[:, -1].copy()
    # orient so the dominant entry is positive (Perron sign convention)
    top = int(np.argmax(np.abs(x)))
    if x[top] < 0:
        x = -x
    residual = float(np.linalg.norm(m @ x - rho * x))
    if residual > tol:
        raise ConvergenceError("Jacobi result failed residual certification", residual)
    if cross_check:
        rho_pi, _, _ = power_iteration(m, shift=alpha * g.n + 1.0, tol=tol)
        if abs(rho_pi - rho) > 10.0 * tol:
            raise ConvergenceError(
                f"Jacobi/power-iteration disagreement {abs(rho_pi - rho):.3e}", residual
            )
    return SpectralResult(rho=rho, vector=x, residual=residual, method_iterations=sweeps)


def signless_laplacian_index(g: Graph, tol: float = DEFAULT_TOL) -> float:
    """Largest eigenvalue of D+A, computed as 2*rho_{1/2} and verified directly."""
    q = 2.0 * alpha_index(g, 0.5, tol).rho
    direct = alpha_matrix(g, 0.5) * 2.0
    w, _, _ = jacobi_eigh(direct)
    if abs(q - float(w[-1])) > 2.0 * tol:
        raise ConvergenceError("signless Laplacian consistency check failed",
                               abs(q - float(w[-1])))
    return q


# -- closed forms -------------------------------------------------------


def join_quotient_index(n: int, s: int, alpha: float) -> float:
    """Index of K_s joined with n-s independent vertices, from its 2x2 quotient.

    Largest root of x^2 - (alpha*n + s - 1)x + (2*alpha*n - alpha*s - alpha
    - n + s)s, evaluated with the cancellation-safe quadratic form.
    """
    if not n > s >= 1:
        raise ValueError(f"need n > s >= 1, got n={n}, s={s}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0,1], got {alpha}")
    b = -(alpha * n + s - 1.0)
    c = (2.0 * alpha * n - alpha * s - alpha - n + s) * s
    disc = b * b - 4.0 * c
    assert disc >= 0.0, f"negative discriminant {disc} for n={n}, s={s}, alpha={alpha}"
    if b == 0.0:
        return math.sqrt(disc) / 2.0
    qq = -(b + math.copysign(math.sqrt(disc), b)) / 2.0
    return max(qq, c / qq)


def f_inequality(rho: float, n: int, s: int, alpha: float) -> bool:
    """Whether rho*(rho + 1 - alpha*n) >= (1-alpha)(n-s)s."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {alpha}")
    return rho * (rho + 1.0 - alpha * n) >= (1.0 - alpha) * (n - s) * s


@dataclass(frozen=True)
class NikiforovBounds:
    basic: float
    strong: float | None
    threshold: float


def nikiforov_lower_bound(n: int, k: int, alpha: float) -> NikiforovBounds:
    """Lower bounds on the alpha-index of K_k joined with n-k independent vertices.

    basic = alpha*(n-1) + (1-alpha)*(k-1) always; the stronger bound
    alpha*n + (2k-1-(2k+1)alpha)/(2alpha) applies once n reaches the
    stated threshold.
    """
    if not n >= k >= 1:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0,1), got {alpha}")
    basic = alpha * (n - 1) + (1.0 - alpha) * (k - 1)
    threshold = ((2 * k - 1) ** 2 / (2.0 * alpha * alpha)
                 - (8 * k * k - 2 * k - 1) / (2.0 * alpha)
                 + 2 * k * (k + 1))
    strong = None
    if n >= threshold:
        strong = alpha * n + (2 * k - 1 - (2 * k + 1) * alpha) / (2.0 * alpha)
    return NikiforovBounds(basic=basic, strong=strong, threshold=threshold)


# -- equitable partitions -----------------------------------------------


class NonEquitablePartitionError(ValueError):
    """Partition is not equitable; names a violating vertex pair."""


@dataclass(frozen=True)
class QuotientMatrix:
    """Cross-degree matrix of an equitable vertex partition."""

    cells: tuple[tuple[int, ...], ...]
    counts: np.ndarray  # counts[i][j] = neighbors in cell j of any vertex of cell i

    def alpha_weighted(self, alpha: float) -> np.ndarray:
        """Quotient of A_alpha: alpha*total-degree diagonal plus (1-alpha)*counts."""
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0,1], got {alpha}")
        degrees = self.counts.sum(axis=1)
        return alpha * np.diag(degrees) + (1.0 - alpha) * self.counts

    def alpha_index(self, alpha: float) -> float:
        """Largest eigenvalue of the alpha-weighted quotient.

        Symmetrized by cell sizes (n_i * counts_ij = n_j * counts_ji for
        equitable partitions) so the certified symmetric solver applies.
        """
        sizes = np.array([len(c) for c in self.cells], dtype=float)
        scale = np.sqrt(sizes)
        m = self.alpha_weighted(alpha)
        sym = m * scale[:, None] / scale[None, :]
        assert np.max(np.abs(sym - sym.T)) < 1e-9, "symmetrization failed"
        sym = (sym + sym.T) / 2.0
        w, _, _ = jacobi_eigh(sym)
        return float(w[-1])


def quotient_matrix(g: Graph, cells) -> QuotientMatrix:
    """Cross-degree quotient of a vertex partition, verified equitable."""
    cells = tuple(tuple(sorted(c)) for c in cells)
    seen: set[int] = set()
    for cell in cells:
        if not cell:
            raise ValueError("empty cell in partition")
        for v in cell:
            if v in seen or not 0 <= v < g.n:
                raise ValueError(f"vertex {v} repeated or out of range")
            seen.add(v)
    if len(seen) != g.n:
        raise ValueError("cells do not cover the vertex set")
    k = len(cells)
    counts = np.zeros((k, k))
    for i, cell in enumerate(cells):
        for j, other in enumerate(cells):
            other_mask = 0
            for u in other:
                other_mask |= 1 << u
            first = (g.rows[cell[0]] & other_mask).bit_count()
            for v in cell[1:]:
                d = (g.rows[v] & other_mask).bit_count()
                if d != first:
                    raise NonEquitablePartitionError(
                        f"vertices {cell[0]} and {v} of cell {i} have "
                        f"{first} vs {d} neighbors in cell {j}"
                    )
            counts[i, j] = first
    return QuotientMatrix(cells=cells, counts=counts)
