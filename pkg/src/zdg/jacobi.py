"""Dense symmetric eigenvalues by cyclic Jacobi rotations.

Small matrices get plain cyclic-by-row sweeps. Larger ones start with
block-cyclic sweeps: the matrix is cut into index blocks, and for every
pair of blocks one cyclic sweep is run on the (2b x 2b) principal
submatrix, the accumulated rotation being applied to the rest of the
matrix with a single matrix product. Once the off-diagonal mass is small
the solver drops back to scalar sweeps, which converge quadratically.

Rotations whose pivot is below ``tol * ||S||_F / N`` are skipped; when a
whole sweep skips everything, the off-diagonal norm is already under the
stopping threshold.
"""

from __future__ import annotations

from functools import cache

import numpy as np

MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12
BLOCK_SIZE = 32
# off-diagonal norm (relative) below which block sweeps stop paying off
BLOCK_PHASE_END = 1e-3


class NotSymmetricError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def _scalar_sweep_py(a, v, thresh):
    """One cyclic-by-row sweep on ``a`` in place; rotations accumulate in ``v``.

    ``v`` may be a 0x0 array, in which case no vectors are tracked.
    Returns the number of rotations applied.
    """
    n = a.shape[0]
    track = v.shape[0] == n
    rotations = 0
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            if abs(apq) <= thresh:
                continue
            rotations += 1
            app = a[p, p]
            aqq = a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            if theta == 0.0:
                t = 1.0
            else:
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                apk = a[p, k]
                aqk = a[q, k]
                a[p, k] = c * apk - s * aqk
                a[q, k] = s * apk + c * aqk
            for k in range(n):
                a[k, p] = a[p, k]
                a[k, q] = a[q, k]
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            if track:
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return rotations


@cache
def _kernel():
    """Compiled sweep; numba is imported on first use to keep imports cheap."""
    import numba

    return numba.njit(cache=True)(_scalar_sweep_py)


def _scalar_sweep(a, v, thresh) -> int:
    return _kernel()(a, v, thresh)


_NO_VECTORS = np.zeros((0, 0))


def off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    d = a.copy()
    np.fill_diagonal(d, 0.0)
    return float(np.linalg.norm(d))


def _round_robin(m: int) -> list[list[tuple[int, int]]]:
    """Tournament schedule: m-1 rounds of m/2 disjoint pairs (m even)."""
    others = list(range(1, m))
    rounds = []
    for r in range(m - 1):
        ring = [0] + others[r:] + others[:r]
        rounds.append([(ring[i], ring[m - 1 - i]) for i in range(m // 2)])
    return rounds


def _block_sweep(a: np.ndarray, blocks: list[np.ndarray], schedule, skip: float) -> None:
    nb = len(blocks)
    for rnd in schedule:
        for i, j in rnd:
            if i >= nb or j >= nb:
                continue
            idx = np.concatenate([blocks[i], blocks[j]])
            sub = a[np.ix_(idx, idx)]
            if off_norm(sub) <= skip:
                continue
            v = np.eye(len(idx))
            _scalar_sweep(sub, v, 0.0)
            rows = v.T @ a[idx, :]
            rows[:, idx] = sub
            a[idx, :] = rows
            a[:, idx] = rows.T


def jacobi_eigenvalues(
    s,
    tol: float = 1e-12,
    max_sweeps: int = MAX_SWEEPS,
    block_size: int = BLOCK_SIZE,
) -> np.ndarray:
    """Ascending eigenvalues of the real symmetric matrix ``s``.

    Iterates until the off-diagonal Frobenius norm is at most
    ``tol * ||s||_F``. ``tol`` is floored at ``4 * eps * N``, below which
    rounding in the rotations themselves keeps the norm from shrinking.
    """
    a = np.array(s, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if not np.allclose(a, a.T, rtol=0.0, atol=SYMMETRY_TOL * max(1.0, scale)):
        raise NotSymmetricError("matrix is not symmetric")
    a = np.ascontiguousarray((a + a.T) / 2)
    if n == 1 or scale == 0.0:
        return np.sort(np.diagonal(a).copy())

    target = max(tol, 4 * np.finfo(float).eps * n) * scale
    sweeps = 0
    if n > 2 * block_size:
        blocks = [np.arange(i, min(i + block_size, n)) for i in range(0, n, block_size)]
        schedule = _round_robin(len(blocks) + len(blocks) % 2)
        while sweeps < max_sweeps and off_norm(a) > max(BLOCK_PHASE_END * scale, target):
            _block_sweep(a, blocks, schedule, target / len(blocks))
            sweeps += 1
    while off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        _scalar_sweep(a, _NO_VECTORS, target / n)
        sweeps += 1
    return np.sort(np.diagonal(a).copy())
