"""Radii-polynomial evaluation and the soliton proof certificate.

The contraction closes when p(r) = Z2 r^2 / 2 - (1 - Z1 - Zu) r + Y0 is
certified negative at some r > 0.  r0 is the outward-rounded smaller root
(inflated one ulp and re-verified by direct sign evaluation, never trusted
from the formula alone); r_max is an inward-rounded larger root at which
the polynomial is re-verified too, giving the uniqueness radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import NotVerified
from .intervals import Interval, _dn, _up
from .kawahara import KawaharaParams, discrete_inv_l2_sum
from .bounds import BoundSet


@dataclass
class ProofCertificate:
    bounds: BoundSet
    status: str                      # "Proven" | "Failed"
    reason: str = ""
    r0: Optional[Interval] = None
    r_max: Optional[Interval] = None
    inverse_norm_bound: Optional[Interval] = None
    periodic: str = "NotChecked"     # "Proven" | "NotChecked" | "Failed"
    periodic_radius: Optional[Interval] = None
    input_hashes: dict = field(default_factory=dict)

    @property
    def proven(self):
        return self.status == "Proven"


def _poly_value(b: BoundSet, r: Interval) -> Interval:
    half = Interval(0.5)
    return half * b.Z2_coeff * (r ** 2) - (Interval(1.0) - b.Z_total) * r + b.Y0


def solve_radii(Y0: Interval, Z_total: Interval, Z2: Interval):
    """Verified (r0, r_max) for Z2 r^2/2 - (1 - Z) r + Y0 < 0, or None.

    The naive interval quadratic formula cancels catastrophically (gap and
    sqrt(disc) agree to ~12 digits), so candidate roots are built from the
    dominant-balance approximations r0 ~ Y0/gap and r_max ~ 2 gap/Z2 and
    certified by direct sign evaluation.
    """
    one = Interval(1.0)
    gap = one - Z_total
    if not gap.strictly_positive():
        return None, None, f"Z1+Zu >= 1 (upper {Z_total.hi})"
    disc = gap ** 2 - Interval(2.0) * Z2 * Y0
    if not disc.strictly_positive():
        return None, None, "discriminant not certified positive"

    def value(r: float) -> Interval:
        ri = Interval(r)
        return Interval(0.5) * Z2 * (ri ** 2) - gap * ri + Y0

    base = max(Y0.hi / gap.lo, 5e-324)
    r0 = None
    for eps in (1e-9, 1e-6, 1e-3, 0.1, 1.0, 10.0):
        cand = _up(base * (1.0 + eps), 4)
        if value(cand).strictly_negative():
            r0 = cand
            break
    if r0 is None:
        return None, None, "sign re-check at r0 failed"
    r_max = r0
    for eps in (1e-6, 1e-4, 1e-2, 0.3):
        cand = _dn(2.0 * gap.lo / Z2.hi * (1.0 - eps), 4)
        if cand > r0 and value(cand).strictly_negative():
            r_max = cand
            break
    return Interval(0.0, r0), Interval(r_max), ""


def check_contraction(b: BoundSet) -> ProofCertificate:
    r0, r_max, reason = solve_radii(b.Y0, b.Z_total, b.Z2_coeff)
    if r0 is None:
        return ProofCertificate(bounds=b, status="Failed", reason=reason)
    gap = Interval(1.0) - b.Z_total
    inv_bound = b.normB / gap
    return ProofCertificate(bounds=b, status="Proven", r0=r0, r_max=r_max,
                            inverse_norm_bound=Interval(0.0, inv_bound.hi))


def check_periodic(cert: ProofCertificate, p: KawaharaParams) -> ProofCertificate:
    """Periodic corollary: same data proves a periodic solution on the box.

    Requires kappa to dominate the discrete bound
    lam3 * (sum_n 1/l(n~)^2)^{1/2} / sqrt(|O|); the scaled radii polynomial
    is then re-verified at r~ = r0 / sqrt(|O|).
    """
    if not cert.proven:
        cert.periodic = "Failed"
        cert.reason = cert.reason or "soliton proof not established"
        return cert
    b = cert.bounds
    box = Interval(2.0 * b.d)
    disc_sum = discrete_inv_l2_sum(p.lam1, p.lam2, b.d)
    kappa_needed = p.lam3 * disc_sum.sqrt() / box.sqrt()
    if not p.kappa.hi >= kappa_needed.hi:
        cert.periodic = "Failed"
        cert.reason = "kappa discrete condition violated"
        return cert
    r_tilde = Interval(cert.r0.hi) / box.sqrt()
    y0p = b.Y0 / box.sqrt()
    z2p = b.Z2_coeff * box.sqrt()
    rt = Interval(_up(r_tilde.hi, 4))
    val = Interval(0.5) * z2p * (rt ** 2) - (Interval(1.0) - b.Z_total) * rt + y0p
    if not val.strictly_negative():
        cert.periodic = "Failed"
        cert.reason = "periodic radii polynomial not negative"
        return cert
    cert.periodic = "Proven"
    cert.periodic_radius = rt
    return cert
