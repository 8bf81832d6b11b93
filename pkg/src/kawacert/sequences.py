"""Fourier coefficient sequences on the box (-d, d) and their operators.

A sequence stores one-sided data for a real function on (-d, d) extended
by zero outside.  Parity fixes the two-sided completion:

* even: coefficients u_n real with u_{-n} = u_n; the function is
  u(x) = u_0 + 2 sum_{n>=1} u_n cos(pi n x / d).
* odd: stored values s_n are the imaginary parts, u_n = i s_n with
  s_{-n} = -s_n (s_0 = 0); the function is -2 sum_{n>=1} s_n sin(pi n x/d).

All rigorous norms are two-sided: ||U||_2^2 = u_0^2 + 2 sum_{n>=1} u_n^2.
Convolution is the direct two-sided sum folded back to one-sided storage
(no FFT on the rigorous path).  Matrix representations act on "folded"
coordinates y_n = c_n u_n with c_0 = 1, c_n = sqrt(2), in which the
two-sided l2 inner product is the плain dot product and convolution by an
even sequence is a symmetric matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import DomainMismatch, SymbolSingular
from .intervals import IArray, Interval, iconv_full, _adn, _aup

EVEN = "even"
ODD = "odd"


class FourierSeq:
    """Truncated coefficient sequence on (-d, d) with fixed parity.

    coeffs is an IArray (interval sequence) or float ndarray; index n runs
    0..N_stored.  Odd sequences must store 0 at index 0.  An optional exact
    rational payload (list of Fraction) rides along when the sequence was
    produced by the exact trace projector; interval views stay authoritative.
    """

    __slots__ = ("d", "parity", "coeffs", "_exact")

    def __init__(self, d, coeffs, parity=EVEN, exact=None):
        if parity not in (EVEN, ODD):
            raise ValueError(f"parity must be '{EVEN}' or '{ODD}'")
        self.d = float(d)
        if self.d <= 0:
            raise ValueError("half-width d must be positive")
        if isinstance(coeffs, IArray):
            self.coeffs = coeffs
        else:
            arr = np.asarray(coeffs, dtype=np.float64)
            self.coeffs = IArray(arr, arr.copy())
        if parity == ODD and len(self.coeffs) and not (
                self.coeffs.lo[0] <= 0.0 <= self.coeffs.hi[0]):
            raise ValueError("odd sequence must have zero 0-th coefficient")
        self.parity = parity
        self._exact = exact

    # -- basics ---------------------------------------------------------

    @property
    def n_stored(self):
        return len(self.coeffs) - 1

    @property
    def box_measure(self):
        """|Omega_0| = 2d as an exact float (d is a config float)."""
        return 2.0 * self.d

    def is_interval(self):
        return bool(np.any(self.coeffs.lo != self.coeffs.hi))

    def mid(self):
        return self.coeffs.mid()

    def copy(self):
        return FourierSeq(self.d, self.coeffs.copy(), self.parity, exact=self._exact)

    def padded(self, n):
        """Same sequence stored up to index n >= n_stored."""
        if n < self.n_stored:
            raise ValueError("padded() cannot truncate")
        lo = np.zeros(n + 1)
        hi = np.zeros(n + 1)
        lo[: len(self.coeffs)] = self.coeffs.lo
        hi[: len(self.coeffs)] = self.coeffs.hi
        exact = None
        if self._exact is not None:
            exact = list(self._exact) + [Fraction(0)] * (n - self.n_stored)
        return FourierSeq(self.d, IArray(lo, hi), self.parity, exact=exact)

    def _check_compatible(self, other):
        if self.d != other.d:
            raise DomainMismatch(f"boxes differ: d={self.d} vs {other.d}")

    def __add__(self, other):
        self._check_compatible(other)
        if self.parity != other.parity:
            raise DomainMismatch("parity mismatch in addition")
        n = max(self.n_stored, other.n_stored)
        a, b = self.padded(n), other.padded(n)
        return FourierSeq(self.d, a.coeffs + b.coeffs, self.parity)

    def __sub__(self, other):
        self._check_compatible(other)
        if self.parity != other.parity:
            raise DomainMismatch("parity mismatch in subtraction")
        n = max(self.n_stored, other.n_stored)
        a, b = self.padded(n), other.padded(n)
        return FourierSeq(self.d, a.coeffs - b.coeffs, self.parity)

    def scale(self, c):
        return FourierSeq(self.d, self.coeffs * c, self.parity)

    def __repr__(self):
        return (f"FourierSeq(d={self.d}, parity={self.parity}, "
                f"N={self.n_stored}, interval={self.is_interval()})")

    # -- frequencies ------------------------------------------------------

    def freq(self, n):
        """Rescaled frequency n/(2d) as a tight interval."""
        td = 2.0 * self.d
        q = n / td
        return Interval(q).inflate_ulp()

    def freq_array(self, upto=None):
        n = np.arange((self.n_stored if upto is None else upto) + 1, dtype=np.float64)
        q = n / (2.0 * self.d)
        return IArray(_adn(q), _aup(q))

    # -- norms ------------------------------------------------------------

    def fold_weights(self, upto=None):
        n = (self.n_stored if upto is None else upto) + 1
        w = np.full(n, np.sqrt(2.0))
        if n:
            w[0] = 1.0
        return w

    def folded(self, upto=None):
        """Interval vector y with y_0 = u_0, y_n = sqrt(2) u_n (n >= 1)."""
        seq = self if upto is None else self.padded(max(upto, self.n_stored))
        c = seq.coeffs if upto is None else IArray(seq.coeffs.lo[: upto + 1],
                                                   seq.coeffs.hi[: upto + 1])
        root2 = Interval(2.0).sqrt()
        y = c * root2
        out = IArray(y.lo.copy(), y.hi.copy())
        if len(out):
            out.lo[0] = c.lo[0]
            out.hi[0] = c.hi[0]
        return out

    def norm_l2(self):
        """Two-sided l2 norm, as an upper-bound/lower-bound interval."""
        y = self.folded()
        return Interval(y.norm2_lower(), y.norm2_upper())

    def norm_l1(self):
        """Two-sided l1 norm upper bound: |u_0| + 2 sum |u_n|."""
        m = self.coeffs.mag()
        doubled = m.copy()
        if len(doubled):
            doubled[1:] *= 2.0
        s = IArray(doubled, doubled.copy()).sum()
        return Interval(max(0.0, s.lo), s.hi)

    def norm_xl(self, symbol):
        """Weighted norm ||L U||_2 for a diagonal symbol."""
        return apply_diag(symbol, self).norm_l2()

    def function_l2_upper(self):
        """Upper bound of the L2(R) norm of the represented function."""
        return (self.norm_l2() * Interval(self.box_measure).sqrt()).hi


@dataclass(frozen=True)
class DiagSymbol:
    """Diagonal Fourier-multiplier symbol xi -> interval value."""

    evaluate: Callable[[Interval], Interval]
    tag: str = ""
    even: bool = True

    def at_freqs(self, freqs: IArray) -> IArray:
        vals = [self.evaluate(freqs[i]) for i in range(len(freqs))]
        return IArray.from_intervals(vals)

    def __call__(self, xi):
        return self.evaluate(xi if isinstance(xi, Interval) else Interval(float(xi)))


@dataclass
class SeqOperator:
    """Finite window block plus an analytic diagonal tail."""

    window: int
    block: IArray
    tail: Optional[DiagSymbol] = None
    parity: str = EVEN


def conv(U: FourierSeq, V: FourierSeq) -> FourierSeq:
    """Discrete convolution folded to one-sided storage.

    even*even -> even, odd*odd -> even (with the i^2 = -1 sign), and
    even*odd -> odd.  Result is stored up to N_U + N_V.
    """
    U._check_compatible(V)
    nu, nv = U.n_stored, V.n_stored
    uf = _two_sided(U)
    vf = _two_sided(V)
    w = iconv_full(uf, vf)  # index m runs -(nu+nv) .. +(nu+nv)
    n_out = nu + nv
    centre = nu + nv
    if U.parity == V.parity:
        out_parity = EVEN
        sign = -1.0 if U.parity == ODD else 1.0
        lo = sign * w.lo if sign > 0 else -w.hi
        hi = sign * w.hi if sign > 0 else -w.lo
        pos = IArray(lo[centre:], hi[centre:])
        return FourierSeq(U.d, pos, out_parity)
    # mixed parity: i * (s conv u) stays odd; pull out the stored imag part
    pos = IArray(w.lo[centre:].copy(), w.hi[centre:].copy())
    pos.lo[0] = 0.0
    pos.hi[0] = 0.0
    return FourierSeq(U.d, pos, ODD)


def _two_sided(U: FourierSeq) -> IArray:
    """Real two-sided payload: even -> symmetric u, odd -> antisymmetric s."""
    n = U.n_stored
    lo = np.empty(2 * n + 1)
    hi = np.empty(2 * n + 1)
    lo[n:] = U.coeffs.lo
    hi[n:] = U.coeffs.hi
    if U.parity == EVEN:
        lo[:n] = U.coeffs.lo[1:][::-1]
        hi[:n] = U.coeffs.hi[1:][::-1]
    else:
        lo[:n] = -U.coeffs.hi[1:][::-1]
        hi[:n] = -U.coeffs.lo[1:][::-1]
    return IArray(lo, hi)


def apply_diag(symbol: DiagSymbol, U: FourierSeq, invert=False) -> FourierSeq:
    """Coefficient-wise multiplication by symbol(n/(2d))."""
    if not symbol.even:
        raise SymbolSingular(
            f"symbol '{symbol.tag}' is parity-odd; not usable in this pipeline")
    vals = symbol.at_freqs(U.freq_array())
    if invert:
        if np.all(vals.lo > 0.0):
            coeffs = U.coeffs.divide_pos(vals)
        elif np.all(vals.hi < 0.0):
            coeffs = (-U.coeffs).divide_pos(-vals)
        else:
            raise SymbolSingular(f"symbol '{symbol.tag}' contains zero on the grid")
    else:
        coeffs = U.coeffs * vals
    return FourierSeq(U.d, coeffs, U.parity)


def derivative(U: FourierSeq) -> FourierSeq:
    """d/dx in coefficient space; flips parity.

    even u_n -> odd storage s_n = (pi n / d) u_n  (u'_n = i 2 pi n~ u_n);
    odd s_n -> even u_n = -(pi n / d) s_n.
    """
    n = np.arange(U.n_stored + 1, dtype=np.float64)
    fac_arr = n * np.pi / U.d
    fac = IArray(_adn(_adn(fac_arr)), _aup(_aup(fac_arr)))  # pi rounding + division
    vals = U.coeffs * fac
    if U.parity == EVEN:
        out = IArray(vals.lo.copy(), vals.hi.copy())
        out.lo[0] = 0.0
        out.hi[0] = 0.0
        return FourierSeq(U.d, out, ODD)
    return FourierSeq(U.d, -vals, EVEN)


def project(U: FourierSeq, N: int, which: str) -> FourierSeq:
    """pi^N keeps |n| <= N; pi_N zeroes them."""
    if which not in ("low", "high"):
        raise ValueError("which must be 'low' (pi^N) or 'high' (pi_N)")
    lo = U.coeffs.lo.copy()
    hi = U.coeffs.hi.copy()
    cut = min(N + 1, len(lo))
    if which == "low":
        lo[cut:] = 0.0
        hi[cut:] = 0.0
    else:
        lo[:cut] = 0.0
        hi[:cut] = 0.0
    return FourierSeq(U.d, IArray(lo, hi), U.parity)


def sample(U: FourierSeq, points) -> np.ndarray:
    """Float evaluation of the represented function on a grid (plots only)."""
    x = np.asarray(points, dtype=np.float64)
    c = U.mid()
    n = np.arange(U.n_stored + 1)
    phases = np.outer(x, n * np.pi / U.d)
    if U.parity == EVEN:
        vals = np.cos(phases) @ (c * np.where(n == 0, 1.0, 2.0))
    else:
        vals = np.sin(phases) @ (c * -2.0)
    return vals


def conv_matrix_interval(U: FourierSeq, rows, cols, parity=EVEN) -> IArray:
    """Folded-coordinate matrix of W -> U * W on the given index windows.

    U must be even (the multiplier in this problem always is).  `parity` is
    the parity of the operand space.  Entries: T1 +/- T2 with
    T1[n,k] = u_{|n-k|}, T2[n,k] = u_{n+k}, scaled by s_n s_k where
    s_0 = 1/sqrt(2), s_n = 1 (even operand); odd operands have no 0 slot
    and take T1 - T2 unscaled.
    """
    if U.parity != EVEN:
        raise DomainMismatch("convolution matrices require an even multiplier")
    r = np.asarray(rows, dtype=np.intp)
    k = np.asarray(cols, dtype=np.intp)
    idx1 = np.abs(r[:, None] - k[None, :])
    idx2 = r[:, None] + k[None, :]
    pad = int(max(idx1.max(initial=0), idx2.max(initial=0)))
    Up = U.padded(max(pad, U.n_stored))
    lo, hi = Up.coeffs.lo, Up.coeffs.hi
    if parity == EVEN:
        T = IArray(_adn(lo[idx1] + lo[idx2]), _aup(hi[idx1] + hi[idx2]))
        s_r = np.where(r == 0, 1.0 / np.sqrt(2.0), 1.0)
        s_k = np.where(k == 0, 1.0 / np.sqrt(2.0), 1.0)
        S = np.outer(s_r, s_k)
        # s entries are 1, 1/sqrt(2) or 1/2; bound the irrational factor outward
        S_int = IArray(_adn(S, 3), _aup(S, 3))
        return T * S_int
    if np.any(r == 0) or np.any(k == 0):
        raise DomainMismatch("odd-parity windows must not contain index 0")
    return IArray(_adn(lo[idx1] - hi[idx2]), _aup(hi[idx1] - lo[idx2]))


def conv_matrix_float(u_mid: np.ndarray, rows, cols, parity=EVEN) -> np.ndarray:
    """Float version of conv_matrix_interval for the approximation path."""
    r = np.asarray(rows, dtype=np.intp)
    k = np.asarray(cols, dtype=np.intp)
    idx1 = np.abs(r[:, None] - k[None, :])
    idx2 = r[:, None] + k[None, :]
    pad = max(int(max(idx1.max(initial=0), idx2.max(initial=0))) + 1, len(u_mid))
    u = np.zeros(pad)
    u[: len(u_mid)] = u_mid
    if parity == EVEN:
        T = u[idx1] + u[idx2]
        s_r = np.where(r == 0, 1.0 / np.sqrt(2.0), 1.0)
        s_k = np.where(k == 0, 1.0 / np.sqrt(2.0), 1.0)
        return T * np.outer(s_r, s_k)
    return u[idx1] - u[idx2]
