"""GMRES residual histories (Arnoldi with modified Gram-Schmidt, Givens rotations)."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class GmresTrace:
    """``residual_norms[k]`` is the GMRES residual after k steps; entry 0 is ||b||."""

    residual_norms: np.ndarray
    breakdown: bool = False
    descriptor: dict = field(default_factory=dict)
    seed: int | None = None


def gmres_run(A, b, n_max: int, descriptor: dict | None = None, seed: int | None = None) -> GmresTrace:
    """Run n_max GMRES steps from x0 = 0 and record ``min ||p(A) b||`` over p(0) = 1, deg p <= k.

    A (lucky) breakdown stops the iteration early with residual 0.
    """
    A = np.asarray(A, dtype=complex)
    b = np.asarray(b, dtype=complex).ravel()
    N = A.shape[0]
    if A.shape != (N, N) or b.shape != (N,):
        raise DimensionMismatch(f"A {A.shape} and b {b.shape} are incompatible")
    beta = float(np.linalg.norm(b))
    res = [beta]
    if beta == 0.0:
        return GmresTrace(np.array(res), True, descriptor or {}, seed)
    m = min(n_max, N)
    V = np.zeros((N, m + 1), dtype=complex)
    H = np.zeros((m + 1, m), dtype=complex)
    cs = np.zeros(m, dtype=complex)
    sn = np.zeros(m, dtype=complex)
    g = np.zeros(m + 1, dtype=complex)
    g[0] = beta
    V[:, 0] = b / beta
    scale = max(1.0, float(np.linalg.norm(A, 1)))
    breakdown = False
    for j in range(m):
        w = A @ V[:, j]
        for i in range(j + 1):
            H[i, j] = np.vdot(V[:, i], w)
            w = w - H[i, j] * V[:, i]
        h_next = float(np.linalg.norm(w))
        H[j + 1, j] = h_next
        for i in range(j):
            top = np.conj(cs[i]) * H[i, j] + np.conj(sn[i]) * H[i + 1, j]
            H[i + 1, j] = -sn[i] * H[i, j] + cs[i] * H[i + 1, j]
            H[i, j] = top
        r = np.hypot(abs(H[j, j]), h_next)
        if r == 0.0:
            breakdown = True
            break
        cs[j], sn[j] = H[j, j] / r, h_next / r
        H[j, j], H[j + 1, j] = r, 0.0
        g[j + 1] = -sn[j] * g[j]
        g[j] = np.conj(cs[j]) * g[j]
        res.append(float(abs(g[j + 1])))
        if h_next <= 1e-14 * scale:
            breakdown = True
            res[-1] = 0.0
            break
        V[:, j + 1] = w / h_next
    return GmresTrace(np.array(res), breakdown, descriptor or {}, seed)


def write_trace_csv(path, trace: GmresTrace, bounds=None) -> None:
    """One row per GMRES step k >= 1; the trivial step 0 (residual ||b||) is omitted."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["iteration", "residual"] + (["bound"] if bounds is not None else []))
        for k, r in enumerate(trace.residual_norms):
            if k == 0:
                continue
            row = [k, repr(float(r))]
            if bounds is not None:
                bk = bounds[k] if k < len(bounds) else None
                row.append("" if bk is None else repr(float(bk)))
            writer.writerow(row)
