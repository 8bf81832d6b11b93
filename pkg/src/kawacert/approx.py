"""Non-rigorous floating-point numerics: Galerkin Newton solve, the
approximate-inverse matrix B, and approximate eigenpairs.

Everything here works in "folded" coordinates y_0 = u_0, y_n = sqrt(2) u_n
(n >= 1), in which the two-sided l2 norm is the euclidean norm and the
linearization diag(l) + 2 lam3 * Conv(U0) is a symmetric matrix.  The
rigorous modules re-verify every quantity produced here, so plain float
arithmetic (and FFT seeding) is fine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import NoConvergence, SingularTruncation
from .kawahara import KawaharaParams
from .sequences import EVEN, ODD, FourierSeq, conv_matrix_float


@dataclass
class NewtonConfig:
    n_modes: int = 300          # N_0: stored window of the solution
    d: float = 50.0
    max_iter: int = 40
    residual_tol: float = 1e-13

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.residual_tol <= 0:
            raise ValueError("residual_tol must be positive")


@dataclass
class NewtonResult:
    seq: FourierSeq
    residuals: List[float] = field(default_factory=list)
    trivial: bool = False


def _fold_weights(n):
    w = np.full(n + 1, np.sqrt(2.0))
    w[0] = 1.0
    return w


def sech2_seed(p: KawaharaParams, cfg: NewtonConfig) -> np.ndarray:
    """Cosine coefficients of the KdV soliton A sech^2(beta x) on (-d, d).

    A = -3/(2 lam3), beta = 1/(2 sqrt(lam1)): the closed-form soliton of
    u - lam1 u'' + lam3 u^2 = 0 used to initialize Newton.
    """
    lam1, _, lam3 = p.lam_floats()
    A = -1.5 / lam3
    beta = 0.5 / np.sqrt(lam1)
    m = 1
    while m < 8 * (cfg.n_modes + 1):
        m *= 2
    x = -cfg.d + 2.0 * cfg.d * np.arange(m) / m
    f = A / np.cosh(beta * x) ** 2
    spec = np.fft.fft(f) / m
    n = np.arange(cfg.n_modes + 1)
    coeffs = np.real(spec[: cfg.n_modes + 1]) * (-1.0) ** n
    return coeffs


def _residual_folded(y, l_vals, lam3, d):
    n = len(y) - 1
    w = _fold_weights(n)
    u = y / w
    quad = np.convolve(_two_sided_f(u), _two_sided_f(u))[2 * n: 3 * n + 1]
    return l_vals * y + lam3 * quad * w


def _two_sided_f(u):
    return np.concatenate([u[:0:-1], u])


def newton_solve(p: KawaharaParams, cfg: NewtonConfig,
                 seed: Optional[np.ndarray] = None) -> NewtonResult:
    """Damped Newton on the Galerkin system pi^{N0} F(pi^{N0} U) = 0.

    Returns the folded-back coefficient sequence; raises NoConvergence with
    the residual history when the tolerance is not met.
    """
    lam1, lam2, lam3 = p.lam_floats()
    n = cfg.n_modes
    freqs = np.arange(n + 1) / (2.0 * cfg.d)
    l_vals = p.symbol_floats(freqs)
    u = sech2_seed(p, cfg) if seed is None else np.asarray(seed, dtype=np.float64).copy()
    if len(u) != n + 1:
        raise ValueError("seed length must be n_modes + 1")
    w = _fold_weights(n)
    y = u * w
    history = []
    res = _residual_folded(y, l_vals, lam3, cfg.d)
    history.append(float(np.linalg.norm(res)))
    for _ in range(cfg.max_iter):
        if history[-1] <= cfg.residual_tol:
            break
        J = np.diag(l_vals) + 2.0 * lam3 * conv_matrix_float(y / w, range(n + 1),
                                                             range(n + 1))
        try:
            step = np.linalg.solve(J, res)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"Jacobian solve failed: {exc}", history) from None
        t = 1.0
        for _ in range(20):
            y_try = y - t * step
            r_try = _residual_folded(y_try, l_vals, lam3, cfg.d)
            if np.linalg.norm(r_try) < history[-1] or history[-1] <= 1e-12:
                break
            t *= 0.5
        y = y - t * step
        res = _residual_folded(y, l_vals, lam3, cfg.d)
        history.append(float(np.linalg.norm(res)))
    if history[-1] > cfg.residual_tol:
        raise NoConvergence(
            f"residual {history[-1]:.3e} > tol {cfg.residual_tol:.3e} "
            f"after {len(history) - 1} iterations", history)
    u_out = y / w
    trivial = bool(np.linalg.norm(u_out) < 1e-8)
    return NewtonResult(seq=FourierSeq(cfg.d, u_out, EVEN),
                        residuals=history, trivial=trivial)


def build_B(u_mid: np.ndarray, p: KawaharaParams, N: int, d: float,
            parity: str = EVEN, nu: float = 0.0) -> np.ndarray:
    """Float correction matrix B with I + B approximating the inverse of
    I + DG(U0) L_nu^{-1} on the window, in folded coordinates.

    nu shifts and normalizes the symbol to (l - nu)/(1 - nu); nu = 0 is the
    soliton case.  Raises SingularTruncation when the inversion fails.
    """
    _, _, lam3 = p.lam_floats()
    delta = 1.0 - nu
    idx = range(N + 1) if parity == EVEN else range(1, N + 1)
    m = len(list(idx))
    freqs = np.array(list(idx)) / (2.0 * d)
    l_vals = (p.symbol_floats(freqs) - nu) / delta
    A = conv_matrix_float(u_mid, idx, idx, parity=parity)
    M = np.eye(m) + (2.0 * lam3 / delta) * A / l_vals[None, :]
    try:
        Minv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SingularTruncation(str(exc)) from None
    if not np.all(np.isfinite(Minv)):
        raise SingularTruncation("non-finite entries in the truncated inverse")
    return Minv - np.eye(m)


@dataclass
class ApproxEig:
    nu: float
    vec: FourierSeq
    parity: str
    residual: float


def approx_eigs(U0: FourierSeq, p: KawaharaParams, N: int, count: int = 3
                ) -> List[ApproxEig]:
    """Lowest eigenpairs of the truncated symmetric operator L + DG(U0).

    Both parity blocks are solved (the kernel mode from translation lives
    in the odd block) and the merged spectrum is returned sorted.
    """
    _, _, lam3 = p.lam_floats()
    d = U0.d
    u_mid = U0.mid()
    out = []
    for parity in (EVEN, ODD):
        idx = list(range(N + 1)) if parity == EVEN else list(range(1, N + 1))
        freqs = np.array(idx) / (2.0 * d)
        l_vals = p.symbol_floats(freqs)
        A = np.diag(l_vals) + 2.0 * lam3 * conv_matrix_float(u_mid, idx, idx,
                                                             parity=parity)
        sym_defect = float(np.max(np.abs(A - A.T)))
        if sym_defect > 1e-11 * max(1.0, float(np.max(np.abs(A)))):
            raise SingularTruncation(f"eigenproblem matrix not symmetric: {sym_defect}")
        A = 0.5 * (A + A.T)
        vals, vecs = np.linalg.eigh(A)
        for j in range(min(count, len(vals))):
            y = vecs[:, j]
            resid = float(np.linalg.norm(A @ y - vals[j] * y))
            if parity == EVEN:
                u = y / _fold_weights(N)
            else:
                u = np.concatenate([[0.0], y / np.sqrt(2.0)])
            out.append(ApproxEig(nu=float(vals[j]),
                                 vec=FourierSeq(d, u, parity),
                                 parity=parity, residual=resid))
    out.sort(key=lambda e: e.nu)
    return out[:count]
