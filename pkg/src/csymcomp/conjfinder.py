"""Search for a symmetric-unitary conjugation certificate on truncated matrices.

A finite matrix T admits a conjugation symmetry exactly when T U = U T^t
for some symmetric unitary U.  We parametrize U = V V^t with V unitary
(so symmetry and unitarity hold by construction) and minimize the defect
||T U - U T^t||_F by Riemannian gradient descent on the unitary group:
the Euclidean gradient is projected onto the skew-Hermitian tangent
directions and steps are taken along the group exponential.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .compop import OperatorMatrix
from .errors import DomainError

#: Armijo sufficient-decrease constant and halving cap.
ARMIJO_C1 = 1e-4
MAX_HALVINGS = 50
REORTHO_EVERY = 25


@dataclass
class OptimizeOptions:
    restarts: int = 8
    max_iters: int = 300
    step: float = 1.0
    tol: float = 1e-13
    grad_tol: float = 1e-13
    seed: int = 42


@dataclass
class ResidualReport:
    best_residual: float
    best_U: np.ndarray
    iterations: int
    restarts: int
    trace: list[tuple[int, int, float]] = field(default_factory=list)
    seed: int = 0


def _as_matrix(t) -> np.ndarray:
    if isinstance(t, OperatorMatrix):
        return t.data
    return np.asarray(t, dtype=np.complex128)


def _unitarity_defect(u: np.ndarray) -> float:
    n = u.shape[0]
    return float(np.linalg.norm(u.conj().T @ u - np.eye(n)))


def residual(t, u: np.ndarray, tol: float = 1e-8) -> float:
    """Normalized defect ||T U - U T^t||_F / ||T||_F for symmetric unitary U."""
    tm = _as_matrix(t)
    u = np.asarray(u, dtype=np.complex128)
    if _unitarity_defect(u) > tol:
        raise DomainError("U is not unitary within tolerance")
    if np.linalg.norm(u - u.T) > tol:
        raise DomainError("U is not symmetric within tolerance")
    tnorm = np.linalg.norm(tm)
    return float(np.linalg.norm(tm @ u - u @ tm.T)) / tnorm


def _defect_sq(tm: np.ndarray, v: np.ndarray) -> float:
    u = v @ v.T
    r = tm @ u - u @ tm.T
    return float(np.vdot(r, r).real)


def _euclidean_gradient(tm: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Gradient of ||T V V^t - V V^t T^t||_F^2 with respect to V."""
    u = v @ v.T
    r = tm @ u - u @ tm.T
    s = tm.conj().T @ r - r @ tm.conj()
    return 2.0 * (s + s.T) @ v.conj()

def _project_tangent(v: np.ndarray, grad: np.ndarray) -> np.ndarray:
    """Skew-Hermitian coordinate A of the Riemannian gradient V A."""
    w = v.conj().T @ grad
    return 0.5 * (w - w.conj().T)


def _reorthonormalize(v: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(v)
    # fix the phase freedom so the result is a continuous function of v
    d = np.diagonal(r)
    phases = d / np.abs(d)
    return q * phases


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return _reorthonormalize(z)


def _descend(tm: np.ndarray, v0: np.ndarray, opts: OptimizeOptions, restart: int, trace):
    """One gradient-descent run; returns (V, defect^2, iterations used)."""
    tnorm_sq = float(np.vdot(tm, tm).real)
    v = v0
    f = _defect_sq(tm, v)
    trace.append((restart, 0, np.sqrt(f / tnorm_sq)))
    it = 0
    a_prev = None
    step_prev = None
    for it in range(1, opts.max_iters + 1):
        if np.sqrt(f / tnorm_sq) <= opts.tol:
            break
        grad = _euclidean_gradient(tm, v)
        a = _project_tangent(v, grad)
        gnorm = np.linalg.norm(a)
        if gnorm <= opts.grad_tol * max(tnorm_sq, 1.0):
            break
        # Barzilai-Borwein trial step from the previous move in tangent
        # coordinates (capped at opts.step); plain gradient descent with a
        # fixed initial step crawls on this objective
        trial = opts.step
        if a_prev is not None:
            s_vec = -step_prev * a_prev
            y_vec = a - a_prev
            sy = abs(np.vdot(s_vec, y_vec).real)
            if sy > 0.0:
                trial = min(opts.step, float(np.vdot(s_vec, s_vec).real / sy))
        # A is skew-Hermitian: diagonalize iA (Hermitian) once, then every
        # trial step along the group exponential is a cheap rescaling
        evals, evecs = np.linalg.eigh(1j * a)
        step = trial
        accepted = False
        for _ in range(MAX_HALVINGS):
            exp_step = (evecs * np.exp(1j * step * evals)) @ evecs.conj().T
            v_new = v @ exp_step
            f_new = _defect_sq(tm, v_new)
            if f_new <= f - ARMIJO_C1 * step * gnorm**2:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        a_prev, step_prev = a, step
        v, f = v_new, f_new
        if it % REORTHO_EVERY == 0:
            v = _reorthonormalize(v)
            f = _defect_sq(tm, v)
        trace.append((restart, it, np.sqrt(f / tnorm_sq)))
    return v, f, it


def optimize(t, opts: OptimizeOptions | None = None) -> ResidualReport:
    """Minimize the conjugation defect over symmetric unitaries U = V V^t.

    Restart 0 starts from the identity; later restarts from seeded random
    unitaries.  Deterministic for a fixed seed.  Non-convergence is a
    valid report, not an error.
    """
    if opts is None:
        opts = OptimizeOptions()
    tm = _as_matrix(t)
    n = tm.shape[0]
    rng = np.random.default_rng(opts.seed)
    tnorm = np.linalg.norm(tm)

    best_res = np.inf
    best_u = np.eye(n, dtype=np.complex128)
    trace: list[tuple[int, int, float]] = []
    total_iters = 0
    for restart in range(max(1, opts.restarts)):
        v0 = np.eye(n, dtype=np.complex128) if restart == 0 else _random_unitary(rng, n)
        v, f, used = _descend(tm, v0, opts, restart, trace)
        total_iters += used
        res = float(np.sqrt(max(f, 0.0)) / tnorm)
        if res < best_res:
            best_res = res
            best_u = v @ v.T
        if best_res <= opts.tol:
            break
    return ResidualReport(
        best_residual=best_res,
        best_U=best_u,
        iterations=total_iters,
        restarts=max(1, opts.restarts),
        trace=trace,
        seed=opts.seed,
    )


def discrimination_study(symbols, truncations, opts: OptimizeOptions | None = None):
    """Best residual per (symbol, truncation); rows for CSV emission.

    ``symbols`` is an iterable of (name, MobiusMap).  Matrices are built
    fresh at each truncation with the shared options.
    """
    from .compop import matrix_of_composition

    if opts is None:
        opts = OptimizeOptions()
    rows = []
    for name, phi in symbols:
        for n in truncations:
            m = matrix_of_composition(phi, n)
            report = optimize(m, opts)
            rows.append(
                {
                    "symbol": name,
                    "truncation": n,
                    "best_residual": report.best_residual,
                    "iterations": report.iterations,
                    "restarts": report.restarts,
                    "seed": report.seed,
                }
            )
    return rows


def write_study_csv(rows, path) -> None:
    fieldnames = ["symbol", "truncation", "best_residual", "iterations", "restarts", "seed"]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row[k] for k in fieldnames})
