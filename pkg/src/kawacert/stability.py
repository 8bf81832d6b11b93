"""Orbital stability of the proven soliton via Albert's criterion.

With the spectral conditions (P1)-(P3) certified (simple negative nu_1, no
other negative eigenvalue, simple kernel eigenvalue 0), stability follows
from the certified negativity of the integral of u~ DF_e(u~)^{-1} u~.  The
test function is approximated by a float solve V of
(L_e + DG_e(U0)) V = U0 on the stored window, trace-projected so its zero
extension is smooth; the bound is verify-don't-trust: any candidate V
works because the defect enters through the computed eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .contraction import ProofCertificate
from .eigen import EigenCertificate, ExclusionReport
from .errors import NeumannFails, NotVerified
from .intervals import IArray, Interval
from .kawahara import KawaharaParams
from .sequences import EVEN, FourierSeq, conv, conv_matrix_float
from .traces import build_trace, project_trace_free


@dataclass
class StabilityReport:
    C1: Interval
    eps: Interval
    tau: Interval
    verdict: str                   # "Stable" | "Inconclusive"
    main_term: Interval
    residual_norm: Interval
    V: Optional[FourierSeq] = None

    @property
    def stable(self):
        return self.verdict == "Stable"


def bound_C1(soliton: ProofCertificate, kappa: Interval) -> Interval:
    """C1 = C / (1 - 2 kappa C r0) with C the certified inverse-norm bound."""
    if not soliton.proven:
        raise NotVerified("soliton certificate not proven")
    C = soliton.inverse_norm_bound
    r0 = soliton.r0
    q = Interval(2.0) * kappa * C * r0
    if not q.hi < 1.0:
        raise NeumannFails(f"2 kappa C r0 = {q.hi} >= 1")
    return Interval(0.0, (C / (Interval(1.0) - q)).hi)


def _spectral_conditions(eigen_certs: List[EigenCertificate],
                         report: ExclusionReport) -> None:
    certs = sorted(eigen_certs, key=lambda c: c.nu.mid)
    if len(certs) != 3 or not all(c.proven and c.simple for c in certs):
        raise NotVerified("need three proven simple eigencouples")
    if not certs[0].nu.hi < 0.0:
        raise NotVerified("(P1) failed: nu_1 not certified negative")
    if not certs[1].nu.contains(0.0):
        raise NotVerified("(P3) failed: kernel enclosure misses 0")
    if report.status != "Covered":
        raise NotVerified("(P2) failed: exclusion report incomplete")


def albert_check(U0: FourierSeq, p: KawaharaParams,
                 soliton: ProofCertificate,
                 eigen_certs: List[EigenCertificate],
                 report: ExclusionReport,
                 refine_steps: int = 2) -> StabilityReport:
    """Certified upper bound tau of the Albert integral; Stable iff tau < 0."""
    _spectral_conditions(eigen_certs, report)
    C1 = bound_C1(soliton, p.kappa)
    d = U0.d
    n0 = U0.n_stored
    box_root = Interval(2.0 * d).sqrt()

    # float solve (L + DG(U0)) V = U0 on the stored window, with iterative
    # refinement, then trace projection
    _, _, lam3 = p.lam_floats()
    freqs = np.arange(n0 + 1) / (2.0 * d)
    l_vals = p.symbol_floats(freqs)
    w = np.full(n0 + 1, np.sqrt(2.0))
    w[0] = 1.0
    A = np.diag(l_vals) + 2.0 * lam3 * conv_matrix_float(U0.mid(),
                                                         range(n0 + 1),
                                                         range(n0 + 1))
    rhs = U0.mid() * w
    y = np.linalg.solve(A, rhs)
    for _ in range(max(0, refine_steps)):
        y = y + np.linalg.solve(A, rhs - A @ y)
    V = project_trace_free(FourierSeq(d, y / w, EVEN),
                           build_trace(n0, 4, d, parity=EVEN))

    # residual ||U0 - (L_e + DG_e(U0)) V||_2 in intervals
    lnv = p.symbol.at_freqs(V.freq_array())
    LV = FourierSeq(d, V.coeffs * lnv, EVEN)
    QV = conv(U0, V).scale(p.lam3 * Interval(2.0))
    res = LV.padded(QV.n_stored) + QV - U0.padded(QV.n_stored)
    res_norm = Interval(0.0, res.folded().norm2_upper())

    v_l = Interval(0.0, FourierSeq(d, V.coeffs * lnv, EVEN).folded().norm2_upper())
    v_l = v_l * box_root            # ||v||_l on the line
    eps = C1 * box_root * res_norm \
        + Interval(2.0) * box_root * p.kappa * C1 * soliton.r0 * v_l

    u_l2 = Interval(0.0, U0.folded().norm2_upper())
    main = Interval(2.0 * d) * (U0.padded(V.n_stored).folded() * V.folded()).sum()
    r0 = soliton.r0
    tau = main + eps * box_root * u_l2 \
        + Interval(2.0) * C1 * (box_root * u_l2 + r0) * r0
    verdict = "Stable" if tau.hi < 0.0 else "Inconclusive"
    return StabilityReport(C1=C1, eps=Interval(0.0, eps.hi),
                           tau=Interval(tau.lo, tau.hi), verdict=verdict,
                           main_term=main, residual_norm=res_norm, V=V)
