"""Certified constants and residual evaluation for the Kawahara model.

The normalized steady equation is  u + lam3 u^2 - lam1 u'' + lam2 u'''' = 0
with symbol  l(xi) = 1 + lam1 (2 pi xi)^2 + lam2 (2 pi xi)^4.  In the
variable y = 2 pi xi the quartic 1 + lam1 y^2 + lam2 y^4 has roots
{b + ia, -b + ia, b - ia, -b - ia}; a is the x-space decay rate of the
convolution kernel of L^{-1} and drives every exponential estimate.

Eigenvalue shifts reuse the same machinery: (l - nu)/(1 - nu) is again of
Kawahara form with lambdas scaled by 1/(1 - nu), see ``derived_params``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NegativeInner, ParamsOutOfRange
from .intervals import IArray, Interval, PI, _adn, _aup
from .sequences import DiagSymbol, FourierSeq, apply_diag, conv

TWO_PI = PI * 2


def _sym_value(lam1: Interval, lam2: Interval, xi: Interval) -> Interval:
    y2 = (TWO_PI * xi) ** 2
    return Interval(1.0) + lam1 * y2 + lam2 * (y2 ** 2)


@dataclass(frozen=True)
class KawaharaParams:
    """Certified parameter pack; lambdas are intervals, symbol included."""

    lam1: Interval
    lam2: Interval
    lam3: Interval
    a_decay: Interval
    b_osc: Interval
    C0: Interval
    kappa: Interval
    inv_l_norm2: Interval           # upper bound of ||1/l||_{L^2(R)}
    symbol: DiagSymbol
    T: Optional[Interval] = None
    c: Optional[Interval] = None
    d: Optional[float] = None

    def lam_floats(self):
        return self.lam1.mid, self.lam2.mid, self.lam3.mid

    def symbol_floats(self, freqs: np.ndarray) -> np.ndarray:
        l1, l2, _ = self.lam_floats()
        y2 = (2.0 * np.pi * freqs) ** 2
        return 1.0 + l1 * y2 + l2 * y2 * y2


def _kernel_constants(lam1, lam2):
    """Roots a, b of the quartic (in y = 2 pi xi) and the kernel bound C0."""
    if not lam1.strictly_positive() or not lam2.strictly_positive():
        raise ParamsOutOfRange("lambda_1, lambda_2 must be certified positive")
    disc = lam1 ** 2 - Interval(4.0) * lam2
    if not disc.strictly_negative():
        raise ParamsOutOfRange(
            "lambda_1^2 - 4 lambda_2 must be certified negative (complex roots)")
    w1 = -lam1 / (Interval(2.0) * lam2)
    w2 = (abs(disc)).sqrt() / (Interval(4.0) * lam2)
    a = ((w1 ** 2 + Interval(4.0) * (w2 ** 2)).sqrt() - w1) / Interval(2.0)
    a = a.sqrt()
    b = w2 / a
    C0 = (a + b) / (Interval(4.0) * lam2 * a * b * (a ** 2 + b ** 2))
    return a, b, C0


def _inv_l_norm2_bound(lam2):
    """Closed-form upper bound of ||1/l||_2: sqrt(3 / (8 sqrt(2) lam2^{1/4}))."""
    root4 = lam2.sqrt().sqrt()
    val = Interval(3.0) / (Interval(8.0) * Interval(2.0).sqrt() * root4)
    return val.sqrt()


def discrete_inv_l2_sum(lam1, lam2, d, n_window=None):
    """Certified upper bound of sum over all n in Z of 1/l(n/(2d))^2.

    Window part is summed directly; the tail uses monotonicity of l on
    xi > 0 (lam1 > 0) and l(xi) >= lam2 (2 pi xi)^4.
    """
    if n_window is None:
        n_window = max(64, int(8 * d))
    total = Interval(1.0)  # n = 0 term: l(0) = 1
    two = Interval(2.0)
    for n in range(1, n_window + 1):
        xi = Interval(n / (2.0 * d)).inflate_ulp()
        total = total + two / (_sym_value(lam1, lam2, xi) ** 2)
    xi0 = Interval(n_window / (2.0 * d)).inflate_ulp(2)
    # tail: 2 * integral_{n_window}^{inf} dt / l(t/2d)^2 <= 4d/(7 lam2^2 (2pi)^8 xi0^7)
    denom = Interval(7.0) * (lam2 ** 2) * (TWO_PI ** 8) * (xi0 ** 7)
    tail = Interval(4.0 * d) / denom
    return total + tail


def make_params(T, c, d=None, kappa_window=None) -> KawaharaParams:
    """Certified parameter map (T, c) -> lambdas, kernel constants, kappa.

    T, c may be Interval or decimal string/float.  When d is given the
    Banach-algebra constant also dominates the periodic (discrete) bound so
    the periodic corollary can reuse it.
    """
    T = T if isinstance(T, Interval) else Interval.from_decimal(T)
    c = c if isinstance(c, Interval) else Interval.from_decimal(c)
    third = Interval(1.0) / Interval(3.0)
    t_hi = (Interval(480.0).sqrt() - Interval(10.0)) / Interval(30.0)
    if not T.lo > third.hi:
        raise ParamsOutOfRange(f"need T > 1/3, got T in [{T.lo}, {T.hi}]")
    if not T.hi <= t_hi.lo:
        raise ParamsOutOfRange(f"need T <= (-10+sqrt(480))/30, got T up to {T.hi}")
    aT = (Interval(1.0) - Interval(3.0) * T) / Interval(6.0)
    bT = (Interval(19.0) - Interval(30.0) * T - Interval(45.0) * (T ** 2)) / Interval(360.0)
    one_minus_c = Interval(1.0) - c
    if not one_minus_c.strictly_positive():
        raise ParamsOutOfRange("need c < 1")
    if not bT.strictly_positive():
        raise ParamsOutOfRange("b(T) must be certified positive")
    c_hi = Interval(1.0) - (aT ** 2) / (Interval(4.0) * bT)
    if not c.hi < c_hi.lo:
        raise ParamsOutOfRange("need c < 1 - a(T)^2/(4 b(T)) strictly")
    lam1 = -aT / one_minus_c
    lam2 = bT / one_minus_c
    lam3 = Interval(3.0) / (Interval(4.0) * one_minus_c)
    p = derived_params(lam1, lam2, lam3, d=d, kappa_window=kappa_window)
    return KawaharaParams(lam1=p.lam1, lam2=p.lam2, lam3=p.lam3,
                          a_decay=p.a_decay, b_osc=p.b_osc, C0=p.C0,
                          kappa=p.kappa, inv_l_norm2=p.inv_l_norm2,
                          symbol=p.symbol, T=T, c=c, d=d)


def derived_params(lam1, lam2, lam3, d=None, kappa_window=None) -> KawaharaParams:
    """Parameter pack straight from certified lambdas (eigen shifts, sweep)."""
    a, b, C0 = _kernel_constants(lam1, lam2)
    inv_l2 = _inv_l_norm2_bound(lam2)
    kappa = lam3 * inv_l2
    if d is not None:
        disc = discrete_inv_l2_sum(lam1, lam2, d, n_window=kappa_window)
        kappa_disc = lam3 * disc.sqrt() / Interval(2.0 * d).sqrt()
        kappa = Interval(max(kappa.lo, kappa_disc.lo), max(kappa.hi, kappa_disc.hi))
    symbol = DiagSymbol(
        evaluate=lambda xi, l1=lam1, l2=lam2: _sym_value(l1, l2, xi),
        tag="l", even=True)
    return KawaharaParams(lam1=lam1, lam2=lam2, lam3=lam3, a_decay=a, b_osc=b,
                          C0=C0, kappa=kappa, inv_l_norm2=inv_l2,
                          symbol=symbol, d=d)


def shifted_params(p: KawaharaParams, nu: Interval, d=None) -> KawaharaParams:
    """Parameters of the normalized shifted symbol (l - nu)/(1 - nu)."""
    delta = Interval(1.0) - nu
    if not delta.strictly_positive():
        raise ParamsOutOfRange(f"need nu < 1, got [{nu.lo}, {nu.hi}]")
    return derived_params(p.lam1 / delta, p.lam2 / delta, p.lam3 / delta, d=d)


def quartic_at_roots(p: KawaharaParams):
    """Evaluate 1 + lam1 y^2 + lam2 y^4 at the enclosed complex roots.

    Returns (real part, imaginary part); both must contain zero.
    """
    a, b = p.a_decay, p.b_osc
    y2_re = b ** 2 - a ** 2
    y2_im = Interval(2.0) * a * b
    y4_re = y2_re ** 2 - y2_im ** 2
    y4_im = Interval(2.0) * y2_re * y2_im
    re = Interval(1.0) + p.lam1 * y2_re + p.lam2 * y4_re
    im = p.lam1 * y2_im + p.lam2 * y4_im
    return re, im


def tail_max_inv_l(p: KawaharaParams, N: int, d: float) -> Interval:
    """max over |n| > N of 1/l(n/(2d)), via certified monotonicity.

    lam1, lam2 > 0 makes l strictly increasing on xi > 0 (the only
    stationary point is xi = 0), so the max sits at |n| = N + 1.
    """
    if not (p.lam1.strictly_positive() and p.lam2.strictly_positive()):
        raise ParamsOutOfRange("monotonicity certificate requires positive lambdas")
    xi = Interval((N + 1) / (2.0 * d)).inflate_ulp()
    return Interval(1.0) / _sym_value(p.lam1, p.lam2, xi)


def residual_F(U: FourierSeq, p: KawaharaParams, psi: Optional[FourierSeq] = None
               ) -> FourierSeq:
    """F(U) = L U + lam3 * (U * U) - Psi, stored to twice the input size."""
    LU = apply_diag(p.symbol, U)
    quad = conv(U, U).scale(p.lam3)
    out = LU.padded(quad.n_stored) + quad
    if psi is not None:
        out = out - psi.padded(out.n_stored)
    return out


def cosh_weight_series(a: Interval, d: float, n_needed: int) -> FourierSeq:
    """Fourier coefficients of cosh(2 a x) on (-d, d).

    Closed form (derived, oracle-validated in tests):
        E_n = (-1)^n * 2 a sinh(2 a d) / (d ((2a)^2 + (pi n / d)^2)).
    """
    two_a = Interval(2.0) * a
    sh = (two_a * Interval(d)).sinh()
    num = two_a * sh
    lo = np.empty(n_needed + 1)
    hi = np.empty(n_needed + 1)
    for n in range(n_needed + 1):
        om = PI * Interval(n) / Interval(d)
        den = Interval(d) * (two_a ** 2 + om ** 2)
        val = num / den
        if n % 2 == 1:
            val = -val
        lo[n] = val.lo
        hi[n] = val.hi
    return FourierSeq(d, IArray(lo, hi), parity="even")


def geometry_Cd(a: Interval, d: float) -> Interval:
    """C(d) = 4d + 4 e^{-ad} / (a (1 - e^{-3ad/2})) + 2 / (a (1 - e^{-2ad}))."""
    ad = a * Interval(d)
    if not ad.strictly_positive():
        raise ParamsOutOfRange("need a d > 0")
    one = Interval(1.0)
    t1 = Interval(4.0 * d).inflate_ulp()
    t2 = Interval(4.0) * (-ad).exp() / (a * (one - (-(ad * Interval(1.5))).exp()))
    t3 = Interval(2.0) / (a * (one - (-(ad * Interval(2.0))).exp()))
    return t1 + t2 + t3


def appendix_integral(a: Interval, d: float, n: int, x, z, which: str) -> Interval:
    """Closed forms of the exponential overlap integrals (test oracles).

    which: 'exponential_d'   -> integral over (-d, d)
           'exponential_dn'  -> integral over (-d, d) + 2dn
           'exponential_inf' -> integral over R (x, z play alpha, beta)
    """
    x = x if isinstance(x, Interval) else Interval(float(x))
    z = z if isinstance(z, Interval) else Interval(float(z))
    one = Interval(1.0)
    two = Interval(2.0)
    if which == "exponential_inf":
        dist = abs(x - z)
        return (dist + one / a) * (-(a * dist)).exp()
    if which == "exponential_dn":
        return appendix_integral(a, d, n, -z, -x, "exponential_d")
    if which != "exponential_d":
        raise ValueError(f"unknown integral kind {which!r}")
    if n == 0:
        dist = abs(z - x)
        main = (dist + one / a) * (-(a * dist)).exp()
        s = x + z
        corr = (-(a * two * Interval(d))).exp() * ((a * s).exp() + (-(a * s)).exp()) \
            / (two * a)
        return main - corr
    if n < 0:
        return appendix_integral(a, d, -n, -x, -z, "exponential_d")
    dd = Interval(d)
    first = (dd - x + one / (two * a)) * (-(a * (Interval(2 * n) * dd + z - x))).exp()
    second = (-(a * (Interval(2 * (n + 1)) * dd + z + x))).exp() / (two * a)
    return first - second


def weighted_self_inner(V: FourierSeq, E: FourierSeq) -> Interval:
    """(V, V * E)_2 over the full two-sided index set.

    Equals (1/|Omega_0|) * integral of v(x)^2 cosh(2ax) when E is the cosh
    series; a square by construction, so a decidedly negative enclosure
    signals a bug.  V*V is formed first: its enclosure is tight, and only
    the final dot against the huge-magnitude E coefficients carries the
    unavoidable cancellation.
    """
    W = conv(V, V)
    if E.n_stored < W.n_stored:
        raise ValueError(
            f"weight series too short: need index {W.n_stored}, have {E.n_stored}")
    acc = W.coeffs * IArray(E.coeffs.lo[: W.n_stored + 1],
                            E.coeffs.hi[: W.n_stored + 1])
    doubled_lo = acc.lo.copy()
    doubled_hi = acc.hi.copy()
    doubled_lo[1:] *= 2.0
    doubled_hi[1:] *= 2.0
    out = IArray(_adn(doubled_lo), _aup(doubled_hi)).sum()
    if out.lo < 0.0 and abs(out.lo) > out.width:
        raise NegativeInner(
            f"(V, V*E) enclosure [{out.lo}, {out.hi}] is decisively negative")
    return out
