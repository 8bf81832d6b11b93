"""Rigorous interval arithmetic with outward rounding.

Directed rounding is realized by stepping results outward with
``nextafter`` rather than by switching the FPU rounding mode: every basic
float operation is correctly rounded (error <= 1/2 ulp), so widening each
endpoint by one representable number encloses the exact result.  Library
functions (exp, sin, ...) are not correctly rounded on every platform, so
they get a wider safety margin (see _LIBM_STEPS).  The containment test
suite in tests/test_intervals.py exercises this with randomized sampling.

Matrix/vector containers keep lo/hi as numpy arrays.  Products use the
midpoint-radius method: the midpoint product runs through BLAS and the
radius adds an a-priori bound on the accumulated float error (standard
gamma_n = n*u/(1-n*u) analysis, valid for any summation order and for
FMA-based kernels; no Strassen-like algorithm is assumed).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DivisionByZeroInterval, DomainError, NotVerified

_EPS = 2.0 ** -53
# Underflow guard added per accumulated operation; vastly larger than the
# true bound (n * 2^-1074) on purpose.
_ETA = 1e-300

# Outward ulp steps for libm functions that are not correctly rounded.
_LIBM_STEPS = {"exp": 2, "log": 2, "sin": 2, "cos": 2, "cosh": 3, "sinh": 3, "atan": 2}


def _up(x, steps=1):
    for _ in range(steps):
        x = math.nextafter(x, math.inf)
    return x


def _dn(x, steps=1):
    for _ in range(steps):
        x = math.nextafter(x, -math.inf)
    return x


def _gamma(n):
    """Safe upper bound for n*u / (1 - n*u)."""
    t = (n + 2) * _EPS
    if t >= 0.5:
        raise ValueError("dimension too large for float error analysis")
    return _up(t / (1.0 - t), 4)


def _pow_dn(x, n):
    """Lower bound of x**n for x >= 0."""
    r = x
    for _ in range(n - 1):
        r = _dn(r * x)
    return r


def _pow_up(x, n):
    r = x
    for _ in range(n - 1):
        r = _up(r * x)
    return r


class Interval:
    """Closed real interval [lo, hi] with outward-rounded arithmetic."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("NaN endpoint")
        if lo > hi:
            raise ValueError(f"lo > hi: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- constructors -------------------------------------------------

    @classmethod
    def from_decimal(cls, s):
        """Tight enclosure of a decimal string (used for config input)."""
        x = Fraction(str(s).strip())
        f = float(x)
        lo, hi = f, f
        if Fraction(f) > x:
            lo = math.nextafter(f, -math.inf)
        elif Fraction(f) < x:
            hi = math.nextafter(f, math.inf)
        return cls(lo, hi)

    @classmethod
    def hull(cls, values):
        values = list(values)
        return cls(min(v.lo for v in values), max(v.hi for v in values))

    # -- queries ------------------------------------------------------

    @property
    def mid(self):
        m = self.lo + 0.5 * (self.hi - self.lo)
        return min(max(m, self.lo), self.hi)

    @property
    def width(self):
        return _up(self.hi - self.lo)

    @property
    def mag(self):
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x):
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def strictly_positive(self):
        return self.lo > 0.0

    def strictly_negative(self):
        return self.hi < 0.0

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, float)):
            return Interval(float(x))
        return NotImplemented

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __abs__(self):
        if self.lo >= 0:
            return Interval(self.lo, self.hi)
        if self.hi <= 0:
            return Interval(-self.hi, -self.lo)
        return Interval(0.0, max(-self.lo, self.hi))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(_dn(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(_dn(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_dn(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.lo <= 0.0 <= o.hi:
            raise DivisionByZeroInterval(f"0 in divisor [{o.lo}, {o.hi}]")
        q = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_dn(min(q)), _up(max(q)))

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def __pow__(self, n):
        # directed-rounded repeated multiplication; libm pow is not
        # guaranteed within 1 ulp
        if not isinstance(n, int) or n < 0:
            raise DomainError("only nonnegative integer powers")
        if n == 0:
            return Interval(1.0)
        if self.lo >= 0:
            return Interval(_pow_dn(self.lo, n), _pow_up(self.hi, n))
        if self.hi <= 0:
            if n % 2 == 0:
                return Interval(_pow_dn(-self.hi, n), _pow_up(-self.lo, n))
            return Interval(-_pow_up(-self.lo, n), -_pow_dn(-self.hi, n))
        if n % 2 == 0:
            return Interval(0.0, _pow_up(max(-self.lo, self.hi), n))
        return Interval(-_pow_up(-self.lo, n), _pow_up(self.hi, n))

    def sqrt(self):
        if self.lo < 0:
            raise DomainError(f"sqrt of negative interval [{self.lo}, {self.hi}]")
        return Interval(max(0.0, _dn(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def sqrt_nonneg(self):
        """sqrt after intersecting with [0, inf); for quantities that are
        nonnegative by construction but whose enclosure dipped below zero
        through outward rounding."""
        if self.hi < 0:
            raise DomainError(f"decisively negative: [{self.lo}, {self.hi}]")
        return Interval(max(self.lo, 0.0), self.hi).sqrt()

    def exp(self):
        if self.lo == self.hi == 0.0:
            return Interval(1.0)
        k = _LIBM_STEPS["exp"]
        return Interval(max(0.0, _dn(math.exp(self.lo), k)), _up(math.exp(self.hi), k))

    def log(self):
        if self.lo <= 0:
            raise DomainError("log needs a strictly positive interval")
        k = _LIBM_STEPS["log"]
        return Interval(_dn(math.log(self.lo), k), _up(math.log(self.hi), k))

    def cosh(self):
        k = _LIBM_STEPS["cosh"]
        a = abs(self)
        lo = 1.0 if a.lo == 0.0 else _dn(math.cosh(a.lo), k)
        return Interval(max(1.0, lo), _up(math.cosh(a.hi), k))

    def sinh(self):
        k = _LIBM_STEPS["sinh"]
        return Interval(_dn(math.sinh(self.lo), k), _up(math.sinh(self.hi), k))

    def _sincos(self, fn, maximizer_offset):
        # Range of sin/cos over [lo, hi]: endpoint values plus +-1 whenever a
        # critical point may fall inside; the candidate test is conservative
        # (float pi rounded both ways), results clamped to [-1, 1].
        k = _LIBM_STEPS["sin"]
        if self.hi - self.lo >= 2.0 * math.pi:
            return Interval(-1.0, 1.0)
        vals = [_dn(fn(self.lo), k), _up(fn(self.lo), k),
                _dn(fn(self.hi), k), _up(fn(self.hi), k)]
        lo, hi = min(vals), max(vals)
        pi_lo = math.nextafter(math.pi, 0.0)
        pi_hi = math.nextafter(math.pi, 4.0)
        # maxima of fn at maximizer_offset + 2*pi*n; minima at offset + pi + 2*pi*n
        for off, is_max in ((maximizer_offset, True), (maximizer_offset + math.pi, False)):
            n_lo = math.floor((self.lo - off) / (2.0 * pi_hi)) - 1
            n_hi = math.ceil((self.hi - off) / (2.0 * pi_lo)) + 1
            for n in range(n_lo, n_hi + 1):
                c_lo = _dn(off + 2.0 * pi_lo * n if n >= 0 else off + 2.0 * pi_hi * n, 2)
                c_hi = _up(off + 2.0 * pi_hi * n if n >= 0 else off + 2.0 * pi_lo * n, 2)
                if c_hi >= self.lo and c_lo <= self.hi:
                    if is_max:
                        hi = 1.0
                    else:
                        lo = -1.0
        return Interval(max(lo, -1.0), min(hi, 1.0))

    def sin(self):
        return self._sincos(math.sin, math.pi / 2.0)

    def cos(self):
        return self._sincos(math.cos, 0.0)

    def inflate_ulp(self, steps=1):
        return Interval(_dn(self.lo, steps), _up(self.hi, steps))


PI = Interval(math.nextafter(math.pi, 0.0), math.nextafter(math.pi, 4.0))
TWO_PI = PI * 2


def isqrt_upper(x):
    """Upper bound of sqrt of an upper bound (helper for norm math)."""
    return _up(math.sqrt(x))


# ---------------------------------------------------------------------------
# numpy-backed interval arrays
# ---------------------------------------------------------------------------


def _aup(x, steps=1):
    for _ in range(steps):
        x = np.nextafter(x, np.inf)
    return x


def _adn(x, steps=1):
    for _ in range(steps):
        x = np.nextafter(x, -np.inf)
    return x


class IArray:
    """Interval vector/matrix: two float arrays of identical shape."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = np.asarray(lo, dtype=np.float64)
        hi = lo.copy() if hi is None else np.asarray(hi, dtype=np.float64)
        if lo.shape != hi.shape:
            raise ValueError("shape mismatch")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
            raise ValueError("NaN endpoint")
        if np.any(lo > hi):
            raise ValueError("lo > hi entry")
        self.lo = lo
        self.hi = hi

    # -- constructors / basics ----------------------------------------

    @classmethod
    def zeros(cls, shape):
        return cls(np.zeros(shape), np.zeros(shape))

    @classmethod
    def eye(cls, n):
        return cls(np.eye(n), np.eye(n))

    @classmethod
    def from_intervals(cls, ivs):
        ivs = list(ivs)
        return cls(np.array([v.lo for v in ivs]), np.array([v.hi for v in ivs]))

    @property
    def shape(self):
        return self.lo.shape

    @property
    def ndim(self):
        return self.lo.ndim

    def __len__(self):
        return self.lo.shape[0]

    def __getitem__(self, idx):
        lo = self.lo[idx]
        if np.isscalar(lo) or lo.ndim == 0:
            return Interval(float(lo), float(self.hi[idx]))
        return IArray(np.array(lo, copy=True), np.array(self.hi[idx], copy=True))

    def __setitem__(self, idx, value):
        if isinstance(value, Interval):
            self.lo[idx] = value.lo
            self.hi[idx] = value.hi
        elif isinstance(value, IArray):
            self.lo[idx] = value.lo
            self.hi[idx] = value.hi
        else:
            self.lo[idx] = value
            self.hi[idx] = value

    def copy(self):
        return IArray(self.lo.copy(), self.hi.copy())

    @property
    def T(self):
        return IArray(self.lo.T.copy(), self.hi.T.copy())

    def reshape(self, *shape):
        return IArray(self.lo.reshape(*shape), self.hi.reshape(*shape))

    def mid(self):
        m = self.lo + 0.5 * (self.hi - self.lo)
        return np.clip(m, self.lo, self.hi)

    def rad_up(self):
        m = self.mid()
        r = _aup(np.maximum(self.hi - m, m - self.lo))
        return np.where(self.hi == self.lo, 0.0, r)

    def mid_rad(self):
        m = self.mid()
        r = _aup(np.maximum(self.hi - m, m - self.lo))
        return m, np.where(self.hi == self.lo, 0.0, r)

    def mag(self):
        return np.maximum(np.abs(self.lo), np.abs(self.hi))

    def mignitude(self):
        out = np.minimum(np.abs(self.lo), np.abs(self.hi))
        out[(self.lo < 0) & (self.hi > 0)] = 0.0
        return out

    def width(self):
        return _aup(self.hi - self.lo)

    def contains(self, x):
        if isinstance(x, IArray):
            return bool(np.all(self.lo <= x.lo) and np.all(x.hi <= self.hi))
        x = np.asarray(x, dtype=np.float64)
        return bool(np.all(self.lo <= x) and np.all(x <= self.hi))

    def contains_zero_entrywise(self):
        return bool(np.all(self.lo <= 0.0) and np.all(self.hi >= 0.0))

    def inflate_ulp(self, steps=1):
        return IArray(_adn(self.lo, steps), _aup(self.hi, steps))

    def __repr__(self):
        return f"IArray(shape={self.shape}, max_width={float(np.max(self.width())) if self.lo.size else 0.0:.3e})"

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, IArray):
            return x
        if isinstance(x, Interval):
            return IArray(np.array(x.lo), np.array(x.hi))
        arr = np.asarray(x, dtype=np.float64)
        return IArray(arr, arr.copy())

    def __neg__(self):
        return IArray(-self.hi, -self.lo)

    def __add__(self, other):
        o = self._coerce(other)
        return IArray(_adn(self.lo + o.lo), _aup(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return IArray(_adn(self.lo - o.hi), _aup(self.hi - o.lo))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        if isinstance(other, Interval):
            other = IArray(np.array(other.lo), np.array(other.hi))
        o = self._coerce(other)
        p1 = self.lo * o.lo
        p2 = self.lo * o.hi
        p3 = self.hi * o.lo
        p4 = self.hi * o.hi
        lo = np.minimum(np.minimum(p1, p2), np.minimum(p3, p4))
        hi = np.maximum(np.maximum(p1, p2), np.maximum(p3, p4))
        return IArray(_adn(lo), _aup(hi))

    __rmul__ = __mul__

    def square(self):
        p1 = self.lo * self.lo
        p2 = self.hi * self.hi
        lo = np.minimum(p1, p2)
        hi = np.maximum(p1, p2)
        lo[(self.lo <= 0) & (self.hi >= 0)] = 0.0
        return IArray(_adn(lo), _aup(hi))

    def divide_pos(self, other):
        """Division by an interval array certified entrywise positive."""
        o = self._coerce(other)
        if np.any(o.lo <= 0.0):
            raise DivisionByZeroInterval("divisor not strictly positive")
        lo = np.minimum(self.lo / o.lo, self.lo / o.hi)
        hi = np.maximum(self.hi / o.lo, self.hi / o.hi)
        return IArray(_adn(lo), _aup(hi))

    # -- reductions ----------------------------------------------------

    def sum(self, axis=None):
        n = self.lo.size if axis is None else self.lo.shape[axis]
        g = _gamma(n)
        slo = np.sum(self.lo, axis=axis)
        shi = np.sum(self.hi, axis=axis)
        pad = _aup(g * np.maximum(np.sum(np.abs(self.lo), axis=axis),
                                  np.sum(np.abs(self.hi), axis=axis)) + n * _ETA)
        lo = _adn(slo - pad)
        hi = _aup(shi + pad)
        if np.isscalar(lo) or lo.ndim == 0:
            return Interval(float(lo), float(hi))
        return IArray(lo, hi)

    def dot(self, other):
        o = self._coerce(other)
        return (self * o).sum()

    def norm2_upper(self):
        """Upper bound of the euclidean norm of every point in the box."""
        m = self.mag().ravel()
        s = float(np.dot(m, m))
        s = _up(s * (1.0 + _gamma(m.size)) + m.size * _ETA, 2)
        return isqrt_upper(s)

    def norm2_lower(self):
        m = self.mignitude().ravel()
        s = float(np.dot(m, m))
        s = max(0.0, _dn(s * (1.0 - _gamma(m.size)), 2))
        return max(0.0, _dn(math.sqrt(s)))

    def norm1_upper(self):
        """For matrices: max column sum of magnitudes, rounded up."""
        m = self.mag()
        if m.ndim == 1:
            s = float(np.sum(m))
            return _up(s * (1.0 + _gamma(m.size)) + m.size * _ETA, 2)
        cols = np.sum(m, axis=0)
        s = float(np.max(cols))
        return _up(s * (1.0 + _gamma(m.shape[0])) + m.shape[0] * _ETA, 2)

    def norminf_upper(self):
        m = self.mag()
        if m.ndim == 1:
            return float(np.max(m)) if m.size else 0.0
        rows = np.sum(m, axis=1)
        s = float(np.max(rows)) if m.size else 0.0
        return _up(s * (1.0 + _gamma(m.shape[1])) + m.shape[1] * _ETA, 2)

    # -- products -------------------------------------------------------

    def __matmul__(self, other):
        o = self._coerce(other)
        return imatmul(self, o)


def _mm_up(X, Y):
    """Entrywise upper bound of X @ Y for nonnegative float X, Y."""
    n = X.shape[-1]
    P = X @ Y
    g = _gamma(n)
    return _aup(P * (1.0 + 3.0 * g) + (n + 4) * _ETA, 2)


def imatmul(A, B):
    """Enclosure of the product of two interval matrices (Rump's method)."""
    Am, Ar = A.mid_rad()
    Bm, Br = B.mid_rad()
    n = Am.shape[-1] if Am.ndim > 1 else Am.shape[0]
    P = Am @ Bm
    aAm = np.abs(Am)
    g = _gamma(n)
    R = _mm_up(aAm, Br)
    R = _aup(R + _mm_up(Ar, _aup(np.abs(Bm) + Br)))
    R = _aup(R + _aup(g * _mm_up(aAm, np.abs(Bm))))
    R = _aup(R + (n + 4) * _ETA)
    return IArray(_adn(P - R), _aup(P + R))


def iconv_full(A, B):
    """Enclosure of the full discrete convolution of two interval vectors.

    numpy's convolve is direct multiply-accumulate, so the gamma error
    analysis applies entrywise with n = min(len A, len B) terms.
    """
    Am, Ar = A.mid_rad()
    Bm, Br = B.mid_rad()
    n = min(Am.size, Bm.size)
    g = _gamma(n)
    P = np.convolve(Am, Bm)
    aAm = np.abs(Am)
    aBm = np.abs(Bm)
    R = _aup(np.convolve(aAm, Br) * (1.0 + 3.0 * g) + (n + 4) * _ETA, 2)
    R = _aup(R + _aup(np.convolve(Ar, _aup(aBm + Br)) * (1.0 + 3.0 * g) + (n + 4) * _ETA, 2))
    R = _aup(R + _aup(g * _aup(np.convolve(aAm, aBm) * (1.0 + 3.0 * g) + (n + 4) * _ETA, 2)))
    return IArray(_adn(P - R), _aup(P + R))


# ---------------------------------------------------------------------------
# certified linear algebra
# ---------------------------------------------------------------------------


def verified_solve(M, rhs, R=None):
    """Enclose the solution set of M x = rhs.

    M, rhs: IArray (n x n, n x m or length-n).  R: float approximate
    inverse of mid(M); computed on the fly when omitted.  Certification is
    the Neumann test ||I - R M||_inf < 1; raises NotVerified otherwise.
    """
    vec = rhs.ndim == 1
    B = rhs.reshape(-1, 1) if vec else rhs
    n = M.shape[0]
    if R is None:
        try:
            R = np.linalg.inv(M.mid())
        except np.linalg.LinAlgError as exc:
            raise NotVerified(f"approximate inverse failed: {exc}") from None
    if not np.all(np.isfinite(R)):
        raise NotVerified("approximate inverse is not finite")
    Ri = IArray(R, R.copy())
    E = IArray.eye(n) - imatmul(Ri, M)
    alpha = E.norminf_upper()
    if not alpha < 1.0:
        raise NotVerified(f"||I - RM||_inf = {alpha} >= 1")
    X0 = R @ B.mid()
    res = B - imatmul(M, IArray(X0, X0.copy()))
    corr = imatmul(Ri, res)
    out_lo = np.empty_like(X0)
    out_hi = np.empty_like(X0)
    for j in range(X0.shape[1]):
        cj = IArray(corr.lo[:, j], corr.hi[:, j])
        beta = _up(cj.norminf_upper() / _dn(1.0 - alpha), 2)
        extra = _up(alpha * beta, 2)
        out_lo[:, j] = _adn(X0[:, j] + cj.lo - extra)
        out_hi[:, j] = _aup(X0[:, j] + cj.hi + extra)
    X = IArray(out_lo, out_hi)
    return IArray(X.lo[:, 0], X.hi[:, 0]) if vec else X


def _interval_cholesky_ok(S):
    """True when the interval Cholesky recursion completes with positive
    pivots, which certifies every symmetric matrix in S positive definite."""
    n = S.shape[0]
    Llo = np.zeros((n, n))
    Lhi = np.zeros((n, n))
    for j in range(n):
        row = IArray(Llo[j, :j].copy(), Lhi[j, :j].copy())
        d = S[j, j] - row.square().sum() if j else S[j, j]
        if not isinstance(d, Interval):
            d = Interval(float(d.lo), float(d.hi))
        if d.lo <= 0.0:
            return False
        piv = d.sqrt()
        Llo[j, j] = piv.lo
        Lhi[j, j] = piv.hi
        if j + 1 < n:
            block = IArray(Llo[j + 1:, :j].copy(), Lhi[j + 1:, :j].copy())
            if j:
                prods = block * IArray(np.broadcast_to(row.lo, block.shape).copy(),
                                       np.broadcast_to(row.hi, block.shape).copy())
                dots = prods.sum(axis=1)
                c = IArray(S.lo[j + 1:, j].copy(), S.hi[j + 1:, j].copy()) - dots
            else:
                c = IArray(S.lo[j + 1:, j].copy(), S.hi[j + 1:, j].copy())
            col = c.divide_pos(IArray(np.full(c.shape, piv.lo), np.full(c.shape, piv.hi)))
            Llo[j + 1:, j] = col.lo
            Lhi[j + 1:, j] = col.hi
    return True


def sym_lambda_max_upper(S):
    """Certified upper bound of lambda_max over symmetric members of S."""
    mid = 0.5 * (S.mid() + S.mid().T)
    try:
        lam = float(np.linalg.eigvalsh(mid)[-1])
    except np.linalg.LinAlgError:
        lam = S.norminf_upper()
    slack0 = S.rad_up().sum() + abs(lam) * 1e-10 + 1e-290
    n = S.shape[0]
    for k in range(30):
        sigma = _up(lam + slack0 * (4.0 ** k), 2)
        shifted = IArray(np.diag(np.full(n, sigma)), np.diag(np.full(n, sigma))) - S
        if _interval_cholesky_ok(shifted):
            return sigma
    return min(_up(math.sqrt(_up(S.norm1_upper() * S.norminf_upper()))) ** 2,
               S.norminf_upper())


def op_norm2_upper(M, tight=False):
    """Upper bound on ||A||_2 for every real A in M.

    Default is the cheap sqrt(||.||_1 ||.||_inf) bound; tight=True runs a
    certified positive-definite shift test on the Gram matrix.
    """
    if M.lo.size == 0:
        return 0.0
    loose = _up(math.sqrt(_up(M.norm1_upper() * M.norminf_upper())))
    if not tight:
        return loose
    rows, cols = M.shape
    G = imatmul(M, M.T) if rows <= cols else imatmul(M.T, M)
    lam = sym_lambda_max_upper(G)
    return min(loose, isqrt_upper(max(lam, 0.0)))


def float_mag_norm2_lower(A):
    """Float largest singular value of a point matrix (test oracle aid)."""
    return float(np.linalg.svd(np.asarray(A, dtype=np.float64), compute_uv=False)[0])
