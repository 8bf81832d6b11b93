"""Finite trace matrix and weighted projection onto trace-free sequences.

A finite sequence on (-d, d) extends by zero to a function on R; the
extension lies in H^k(R) exactly when the first k one-sided boundary
derivatives vanish.  For a sequence with coefficients u_p the j-th
derivative at x = +-d is proportional to sum_p u_p (pi p / d)^j (-1)^p over
the two-sided index set, so (dropping the per-row constants (pi/d)^j and
i^j, which do not change the kernel) the retained trace rows are

    even parity:  j in {0, 2, ...}:  u_0 delta_{j0} + 2 sum_{p>=1} u_p p^j (-1)^p
    odd parity:   j in {1, 3, ...}:  2 sum_{p>=1} s_p p^j (-1)^p

Rows of the дropped parity vanish identically by the two-sided symmetry.
The projection P(U) = U - D M (M* D M)^{-1} M* U (adjoints in the
two-sided l2 inner product, i.e. weighted by w_p = 1 or 2 in one-sided
storage) is evaluated in exact rational arithmetic: the trace rows are
integers after row scaling, and the weight D is a rational surrogate of
diag(1/l(n~)) (any positive diagonal gives a valid trace-free projection;
the choice only tunes decay).  Exactness makes Gamma P(U) = 0 and
P(P(U)) = P(U) hold on the nose, and the interval view just rounds the
rationals outward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .errors import NotVerified, WindowTooSmall
from .intervals import IArray, Interval, _adn, _aup
from .sequences import EVEN, ODD, FourierSeq


@dataclass
class TraceSetup:
    """Precomputed exact data for the projection on one window."""

    N: int
    k: int
    d: float
    parity: str
    rows: List[int]                    # retained derivative orders
    gamma: List[List[Fraction]]        # scaled trace rows, exact
    weight: List[Fraction]             # rational surrogate of 1/l(n~)
    gram_inv: List[List[Fraction]]     # (M* D M)^{-1}, exact
    gamma_interval: IArray             # outward rounding of gamma

    def trace_values(self, U: FourierSeq) -> IArray:
        """Interval enclosure of the scaled trace functionals of U."""
        Up = U.padded(self.N) if U.n_stored < self.N else U
        if Up.n_stored > self.N:
            raise NotVerified("sequence wider than the trace window")
        vals = []
        for row in range(len(self.rows)):
            g = self.gamma_interval[row]
            vals.append((Up.coeffs * g).sum())
        return IArray.from_intervals(vals)


def _trace_row(j: int, N: int) -> List[Fraction]:
    row = [Fraction(0)] * (N + 1)
    if j == 0:
        row[0] = Fraction(1)
    for p in range(1, N + 1):
        row[p] = Fraction(2 * (p ** j) * (-1) ** p)
    scale = max(abs(v) for v in row)
    return [v / scale for v in row]


def build_trace(N: int, k: int, d: float, parity: str = EVEN,
                symbol=None) -> TraceSetup:
    """Assemble the retained trace rows and the exact Gram inverse.

    symbol: optional callable xi -> Interval used for the decay weight; the
    weight is snapped to a rational near 1/symbol(n/(2d)).  Defaults to the
    flat weight when omitted.
    """
    if 2 * N + 1 <= k:
        raise WindowTooSmall(f"2N+1 = {2 * N + 1} <= k = {k}")
    rows = [j for j in range(k) if (j % 2 == 0) == (parity == EVEN)]
    gamma = [_trace_row(j, N) for j in rows]

    weight = []
    for p in range(N + 1):
        if symbol is None:
            weight.append(Fraction(1))
        else:
            val = symbol(Interval(p / (2.0 * d)).inflate_ulp())
            w = 1.0 / max(val.mid, 1e-300)
            weight.append(Fraction(w).limit_denominator(10 ** 15))
    # two-sided l2 weight in one-sided storage
    wl2 = [Fraction(1)] + [Fraction(2)] * N

    r = len(rows)
    gram = [[Fraction(0)] * r for _ in range(r)]
    for a in range(r):
        for b in range(r):
            gram[a][b] = sum(gamma[a][p] * gamma[b][p] * weight[p] / wl2[p]
                             for p in range(N + 1))
    gram_inv = _exact_inverse(gram)

    g_lo = np.empty((r, N + 1))
    g_hi = np.empty((r, N + 1))
    for a in range(r):
        for p in range(N + 1):
            f = float(gamma[a][p])
            g_lo[a, p] = f if Fraction(f) <= gamma[a][p] else np.nextafter(f, -np.inf)
            g_hi[a, p] = f if Fraction(f) >= gamma[a][p] else np.nextafter(f, np.inf)
    return TraceSetup(N=N, k=k, d=d, parity=parity, rows=rows, gamma=gamma,
                      weight=weight, gram_inv=gram_inv,
                      gamma_interval=IArray(g_lo, g_hi))


def _exact_inverse(A: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(A)
    M = [row[:] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            raise NotVerified("trace Gram matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [row[n:] for row in M]


def _exact_coeffs(U: FourierSeq, n: int) -> List[Fraction]:
    if U._exact is not None:
        vals = list(U._exact)
    else:
        mid = U.mid()
        vals = [Fraction(float(v)) for v in mid]
    vals += [Fraction(0)] * (n + 1 - len(vals))
    return vals[: n + 1]


def _project_exact(setup: TraceSetup, u: List[Fraction]) -> List[Fraction]:
    wl2 = [Fraction(1)] + [Fraction(2)] * setup.N
    r = len(setup.rows)
    t = [sum(setup.gamma[a][p] * u[p] for p in range(setup.N + 1)) for a in range(r)]
    s = [sum(setup.gram_inv[a][b] * t[b] for b in range(r)) for a in range(r)]
    out = list(u)
    for p in range(setup.N + 1):
        corr = sum(setup.gamma[a][p] * s[a] for a in range(r))
        out[p] = u[p] - setup.weight[p] / wl2[p] * corr
    return out


def project_trace_free(U: FourierSeq, setup: TraceSetup) -> FourierSeq:
    """Certified projection of U onto the trace-free subspace.

    The exact image of mid(U) is computed in rationals; when U carries
    interval uncertainty the linear map's action on the radius box is added
    with an entrywise bound, so the result encloses P(u) for every u in U.
    """
    if U.parity != setup.parity:
        raise NotVerified("trace setup parity does not match the sequence")
    if U.n_stored > setup.N:
        raise NotVerified("sequence wider than the trace window (need U = pi^N U)")
    u = _exact_coeffs(U, setup.N)
    out = _project_exact(setup, u)

    lo = np.empty(setup.N + 1)
    hi = np.empty(setup.N + 1)
    for p, v in enumerate(out):
        f = float(v)
        lo[p] = f if Fraction(f) <= v else np.nextafter(f, -np.inf)
        hi[p] = f if Fraction(f) >= v else np.nextafter(f, np.inf)

    # with an exact payload the interval endpoints are merely its outward
    # view, so the box branch would double-count the rounding
    rad = np.zeros(1) if U._exact is not None else U.coeffs.rad_up()
    if float(np.max(rad, initial=0.0)) > 0.0:
        # |P| box bound: |I - Q| rad, Q the correction operator
        r = len(setup.rows)
        Q = np.zeros((setup.N + 1, setup.N + 1))
        wl2 = np.array([1.0] + [2.0] * setup.N)
        G = np.array([[float(v) for v in row] for row in setup.gamma])
        Ginv = np.array([[float(v) for v in row] for row in setup.gram_inv])
        Wt = np.array([float(v) for v in setup.weight])
        Q = (Wt / wl2)[:, None] * (G.T @ Ginv @ G)
        amp = np.abs(np.eye(setup.N + 1) - Q) @ np.pad(rad, (0, setup.N + 1 - rad.size))
        amp = _aup(amp * (1.0 + 1e-9) + 1e-300, 2)
        lo = _adn(lo - amp)
        hi = _aup(hi + amp)
        exact_payload: Optional[List[Fraction]] = None
    else:
        exact_payload = out
    return FourierSeq(U.d, IArray(lo, hi), U.parity, exact=exact_payload)
