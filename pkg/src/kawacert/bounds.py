"""Certified Newton-Kantorovich bounds for the soliton problem.

Y0 bounds ||A F(u0)||_l, Z1 the periodic part of the inverse defect
||I - A DF(u0)||_l, Zu the unbounded-domain correction, and Z2 the
Lipschitz constant of the derivative.  The operator window is N; sequences
are stored to N0 >= N.  Because the quadratic nonlinearity couples index
windows as pi^N DG = pi^N DG pi^{N+N0}, the finite defect blocks are
assembled on the exact window K = N + N0 (for N0 <= N this coincides with
the usual 2N window).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .intervals import IArray, Interval, imatmul, op_norm2_upper
from .kawahara import (KawaharaParams, cosh_weight_series, geometry_Cd,
                       residual_F, tail_max_inv_l, weighted_self_inner)
from .sequences import EVEN, FourierSeq, conv_matrix_interval


@dataclass
class BoundSet:
    Y0: Interval
    Z1N: Interval
    Z1_tail: Interval
    Z1: Interval
    Zu1: Interval
    Zu2: Interval
    Zu: Interval
    Z2_coeff: Interval
    normB: Interval
    N: int
    N0: int
    d: float

    def __post_init__(self):
        q = (self.Z1N ** 2 + self.Z1_tail ** 2).sqrt_nonneg()
        if self.Z1.hi < q.lo:
            raise ValueError("Z1 below its components")
        for name in ("Y0", "Z1", "Zu", "Z2_coeff"):
            if getattr(self, name).hi < 0:
                raise ValueError(f"negative bound {name}")

    @property
    def Z_total(self):
        """Z1 + Zu, the full inverse-defect bound."""
        return self.Z1 + self.Zu


def norm_B(B_float: np.ndarray, tight: bool = True) -> Interval:
    """max{1, ||pi^N + B||_2} as an upper-bound interval."""
    M = IArray(np.eye(B_float.shape[0]) + B_float)
    up = op_norm2_upper(M, tight=tight)
    return Interval(1.0, max(1.0, up))


def bound_Y0(U0: FourierSeq, B_float: np.ndarray, p: KawaharaParams,
             N: int, psi: Optional[FourierSeq] = None) -> Interval:
    """Upper bound of ||A F(u0)||_l = sqrt(|O|) ||(I + B) F(U0)||_2."""
    R = residual_F(U0, p, psi)
    y = R.folded()
    m = B_float.shape[0]
    head = IArray(y.lo[:m].copy(), y.hi[:m].copy())
    tail = IArray(y.lo[m:].copy(), y.hi[m:].copy())
    Bi = IArray(B_float)
    corr = imatmul(Bi, head.reshape(-1, 1)).reshape(-1)
    v1 = head + corr
    total = Interval(0.0, v1.norm2_upper()) ** 2 + Interval(0.0, tail.norm2_upper()) ** 2
    return Interval(2.0 * U0.d).sqrt() * total.sqrt_nonneg()


def bound_Z1(U0: FourierSeq, B_float: np.ndarray, p: KawaharaParams,
             N: int, tight: bool = True):
    """(Z1N, Z1_tail, Z1) for the even soliton problem.

    Z1N collects the two finite blocks of I - B(I + DG(U0) L^{-1});
    the tail is Young's bound ||V0||_1 max_{|n|>N} 1/l(n~).
    """
    d = U0.d
    N0 = U0.n_stored
    K = N + N0
    V0 = U0.scale(p.lam3 * Interval(2.0))
    rows_w = list(range(N + 1))
    cols_k = list(range(K + 1))

    freqs_k = U0.freq_array(upto=K)
    l_cols = p.symbol.at_freqs(freqs_k)
    G = conv_matrix_interval(V0, rows_w, cols_k, parity=EVEN)
    inv_l = IArray(np.ones(len(cols_k))).divide_pos(l_cols)
    GL = G * IArray(np.broadcast_to(inv_l.lo, G.shape).copy(),
                    np.broadcast_to(inv_l.hi, G.shape).copy())

    IB = IArray(np.eye(N + 1) + B_float)
    M1 = imatmul(IB, GL)
    pad_lo = np.zeros((N + 1, K + 1))
    pad_hi = np.zeros((N + 1, K + 1))
    pad_lo[:, : N + 1] = B_float
    pad_hi[:, : N + 1] = B_float
    block1 = -(IArray(pad_lo, pad_hi) + M1)
    b1 = Interval(0.0, op_norm2_upper(block1, tight=tight))

    rows_t = list(range(N + 1, K + 1))
    G2 = conv_matrix_interval(V0, rows_t, rows_w, parity=EVEN)
    inv_l_w = IArray(np.ones(N + 1)).divide_pos(p.symbol.at_freqs(U0.freq_array(upto=N)))
    G2L = G2 * IArray(np.broadcast_to(inv_l_w.lo, G2.shape).copy(),
                      np.broadcast_to(inv_l_w.hi, G2.shape).copy())
    b2 = Interval(0.0, op_norm2_upper(G2L, tight=tight))

    tail = V0.norm_l1() * tail_max_inv_l(p, N, d)
    tail = Interval(0.0, tail.hi)
    Z1N = (b1 ** 2 + b2 ** 2).sqrt_nonneg()
    Z1 = (Z1N ** 2 + tail ** 2).sqrt_nonneg()
    return Z1N, tail, Z1


def bound_Zu(U0: FourierSeq, normB: Interval, p: KawaharaParams,
             weighted_inner: Optional[Interval] = None):
    """(Zu1, Zu2, Zu) from the exponential-kernel estimates.

    weighted_inner may supply a precomputed enclosure of (V0, V0*E)_2 (the
    d-sweep passes the closed-form value of an analytic profile); default
    is the direct interval convolution against the cosh series.
    """
    d = U0.d
    a = p.a_decay
    if weighted_inner is None:
        V0 = U0.scale(p.lam3 * Interval(2.0))
        E = cosh_weight_series(a, d, 2 * U0.n_stored)
        weighted_inner = weighted_self_inner(V0, E)
    S = Interval(0.0, max(weighted_inner.hi, 0.0))
    box = Interval(2.0 * d)
    e2 = (-(a * Interval(2.0 * d))).exp()
    zu1_sq = box * (p.C0 ** 2) * e2 * S / a
    Zu1 = Interval(0.0, zu1_sq.sqrt_nonneg().hi)
    e4 = (-(a * Interval(4.0 * d))).exp()
    zu2_sq = zu1_sq + e4 * geometry_Cd(a, d) * (p.C0 ** 2) * box * S
    Zu2 = Interval(0.0, zu2_sq.sqrt_nonneg().hi)
    Zu = normB * (Zu1 ** 2 + Zu2 ** 2).sqrt_nonneg()
    return Zu1, Zu2, Interval(0.0, Zu.hi)


def bound_Z2(p: KawaharaParams, normB: Interval) -> Interval:
    """Z2(r) = 2 kappa max{1, ||pi^N + B||_2}; r-independent for a
    quadratic nonlinearity."""
    return Interval(2.0) * p.kappa * normB


def profile_weighted_inner(amplitude: float, beta: Interval, a: Interval,
                           d: float) -> Interval:
    """(V, V*E)_2 for the analytic profile v(x) = amplitude * e^{-beta|x|}.

    Closed form of (1/|O|) integral of v^2 cosh(2ax); avoids the
    catastrophic cancellation of the coefficient route and powers the
    Zu-decay sweep.  Requires beta >= a (profile at least as localized as
    the kernel).
    """
    diff = beta - a
    if diff.lo < -1e-6 * max(1.0, a.mag):
        raise ValueError("profile must decay at least as fast as the kernel")
    V2 = Interval(amplitude) ** 2
    dd = Interval(d)
    one = Interval(1.0)
    s_minus = Interval(2.0) * diff
    if s_minus.lo <= 0.0:
        # beta ~ a: integral of e^{-s x} over (0, d) is at most d e^{|s.lo| d}
        growth = (Interval(-s_minus.lo) * dd).exp()
        first = Interval(0.0, (dd * growth).hi)
    else:
        first = (one - (-(s_minus * dd)).exp()) / s_minus
    s_plus = Interval(2.0) * (beta + a)
    second = (one - (-(s_plus * dd)).exp()) / s_plus
    return V2 * (first + second) / Interval(2.0 * d)


def compute_bounds(U0: FourierSeq, B_float: np.ndarray, p: KawaharaParams,
                   N: int, psi: Optional[FourierSeq] = None,
                   tight: bool = True) -> BoundSet:
    nb = norm_B(B_float, tight=tight)
    Y0 = bound_Y0(U0, B_float, p, N, psi=psi)
    Z1N, Z1_tail, Z1 = bound_Z1(U0, B_float, p, N, tight=tight)
    Zu1, Zu2, Zu = bound_Zu(U0, nb, p)
    Z2 = bound_Z2(p, nb)
    return BoundSet(Y0=Y0, Z1N=Z1N, Z1_tail=Z1_tail, Z1=Z1, Zu1=Zu1, Zu2=Zu2,
                    Zu=Zu, Z2_coeff=Z2, normB=nb, N=N, N0=U0.n_stored, d=U0.d)
