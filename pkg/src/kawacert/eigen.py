"""Eigenvalue enclosures and spectral exclusion for L + DG(u~).

Certification of an eigencouple uses the augmented (bordered) system

    Fbar(nu, v) = ( (u_k - v, u_k)_{l_k},  L_nu v + DG(u~) v / (1 - nu_k) )

with L_nu = (L - nu I)/(1 - nu_k): the normalized shifted symbol is again
of Kawahara form, so the soliton machinery (defect blocks, kernel decay
bounds) carries over verbatim with lambdas scaled by 1/(1 - nu_k).  The
passage from the computable u_0 to the proven soliton u~ costs the norm of
D G(u~) - D G(u_0), controlled by 2 lam3 ||1/l||_2 r0.

Exclusion of the remaining spectrum combines three certified ingredients:

* a Garding floor: every eigenvalue satisfies nu >= 1 - 2 lam3 ||u~||_inf;
* Neumann resolvent steps: a bound C on ||(L - nu* + DG(u~))^{-1}||_{2,2}
  makes (nu* - 1/C, nu* + 1/C) eigenvalue-free;
* bordered crossings: plain resolvent steps cannot approach an eigenvalue,
  so around each proven nu_k the bordered operator B(nu) (invertible across
  the eigenvalue) is certified on an interval I, and eigenvalues in I are
  exactly the zeros of the Schur scalar mu(nu) there (self-adjointness
  makes mu vanish at every eigenvalue once B(nu) is invertible); an
  interval-Newton step on mu confines those zeros to a tight hole around
  nu_k.

Both parity blocks (the operator commutes with reflection) are swept
separately; the direct sum exhausts the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .bounds import norm_B
from .contraction import ProofCertificate
from .errors import NuOutOfRange, ParamsOutOfRange, SweepStalled
from .intervals import IArray, Interval, imatmul, op_norm2_upper, _adn, _aup
from .kawahara import (KawaharaParams, cosh_weight_series, geometry_Cd,
                       shifted_params, tail_max_inv_l)
from .sequences import (EVEN, ODD, FourierSeq, conv, conv_matrix_float,
                        conv_matrix_interval)
from .traces import TraceSetup, build_trace, project_trace_free


def _window(parity: str, N: int) -> List[int]:
    return list(range(N + 1)) if parity == EVEN else list(range(1, N + 1))


def _sym_values_vec(p: KawaharaParams, d: float, idx, nu: Interval,
                    delta: Interval) -> IArray:
    """(l(n~) - nu)/delta on the given indices, vectorized."""
    n = np.asarray(list(idx), dtype=np.float64)
    q = n / (2.0 * d)
    xi = IArray(_adn(q), _aup(q))
    two_pi = Interval(2.0) * Interval(math.nextafter(math.pi, 0.0),
                                      math.nextafter(math.pi, 4.0))
    y2 = (xi * two_pi).square()
    vals = y2 * p.lam1 + y2.square() * p.lam2 + 1.0
    shifted = vals - nu
    inv_delta = Interval(1.0) / delta
    return shifted * inv_delta


@dataclass
class EigenProblem:
    k: int
    parity: str
    nu0: float
    delta: Interval
    Vk: FourierSeq                 # trace-projected, normalized eigenvector
    p_shift: KawaharaParams
    p_base: KawaharaParams
    r0: Interval
    N: int
    d: float
    eta: Interval = field(default=None)

    def __post_init__(self):
        if self.eta is None:
            ln = _sym_values_vec(self.p_base, self.d,
                                 range(self.Vk.n_stored + 1),
                                 Interval(self.nu0), self.delta)
            y = self.Vk.folded()
            w = y * ln
            self.eta = Interval(2.0 * self.d) * (w * w).sum()


@dataclass
class AugmentedBounds:
    Y0: Interval
    Z1: Interval                   # finite blocks + tail + passage
    Zu: Interval
    Z2: Interval
    normB: Interval
    B_aug: np.ndarray              # float window matrix (scalar slot first)
    residual_head: float = 0.0

    @property
    def Z_total(self):
        return self.Z1 + self.Zu


@dataclass
class EigenCertificate:
    k: int
    parity: str
    nu: Interval
    radius: Interval
    simple: bool
    status: str
    reason: str = ""
    bounds: Optional[AugmentedBounds] = None
    problem: Optional[EigenProblem] = None

    @property
    def proven(self):
        return self.status == "Proven"


def build_augmented(k: int, nu_approx: float, V_approx: FourierSeq,
                    p: KawaharaParams, soliton: ProofCertificate,
                    N: int, trace_setup: Optional[TraceSetup] = None
                    ) -> EigenProblem:
    """Trace-project and normalize the approximate eigenvector; certify the
    spectral window 1 - nu > 0 and build the shifted parameter pack."""
    d = V_approx.d
    nu_i = Interval(nu_approx)
    delta = Interval(1.0) - nu_i
    if not delta.strictly_positive():
        raise NuOutOfRange(f"need nu < 1, got {nu_approx}")
    try:
        p_shift = shifted_params(p, nu_i)
    except ParamsOutOfRange as exc:
        raise NuOutOfRange(str(exc)) from None
    if trace_setup is None:
        trace_setup = build_trace(V_approx.n_stored, 4, d, parity=V_approx.parity)
    Vp = project_trace_free(V_approx, trace_setup)
    ln = _sym_values_vec(p, d, range(Vp.n_stored + 1), nu_i, delta)
    y = Vp.folded()
    nrm = float(np.linalg.norm(y.mid() * ln.mid())) * math.sqrt(2.0 * d)
    if nrm <= 0:
        raise NuOutOfRange("approximate eigenvector vanishes")
    Vn = Vp.scale(Interval(1.0 / nrm))
    return EigenProblem(k=k, parity=V_approx.parity, nu0=nu_approx, delta=delta,
                        Vk=Vn, p_shift=p_shift, p_base=p,
                        r0=soliton.r0, N=N, d=d)


def _augmented_window_matrix(ep: EigenProblem, idx_rows, idx_cols,
                             U0: FourierSeq, interval: bool):
    """Blocks of C = DFbar Lbar^{-1} - I on the given windows (no scalar
    slot; the callers glue the scalar row/column)."""
    p = ep.p_base
    delta = ep.delta
    fac = (p.lam3 * Interval(2.0)) / delta
    if interval:
        A = conv_matrix_interval(U0.scale(fac), idx_rows, idx_cols, parity=ep.parity)
        linv = IArray(np.ones(len(idx_cols))).divide_pos(
            _sym_values_vec(p, ep.d, idx_cols, Interval(ep.nu0), delta))
        return A * IArray(np.broadcast_to(linv.lo, A.shape).copy(),
                          np.broadcast_to(linv.hi, A.shape).copy())
    A = conv_matrix_float(U0.mid() * (2.0 * p.lam3.mid / delta.mid),
                          idx_rows, idx_cols, parity=ep.parity)
    lmid = _sym_values_vec(p, ep.d, idx_cols, Interval(ep.nu0), delta).mid()
    return A / lmid[None, :]


def _scalar_row(ep: EigenProblem, idx) -> IArray:
    """Row functional -(L_nu U_k) restricted to idx, folded coordinates."""
    top = max(idx)
    V = ep.Vk.padded(top) if ep.Vk.n_stored < top else ep.Vk
    ln = _sym_values_vec(ep.p_base, ep.d, range(V.n_stored + 1),
                         Interval(ep.nu0), ep.delta)
    y = V.folded() * ln
    sel = np.asarray(list(idx), dtype=np.intp)
    return -IArray(y.lo[sel].copy(), y.hi[sel].copy())


def _scalar_col(ep: EigenProblem, idx) -> IArray:
    """Column -(sqrt|O| / delta) y(U_k) restricted to idx."""
    top = max(idx)
    V = ep.Vk.padded(top) if ep.Vk.n_stored < top else ep.Vk
    y = V.folded()
    sel = np.asarray(list(idx), dtype=np.intp)
    fac = Interval(2.0 * ep.d).sqrt() / ep.delta
    return -(IArray(y.lo[sel].copy(), y.hi[sel].copy()) * fac)


def build_augmented_B(ep: EigenProblem, U0: FourierSeq) -> np.ndarray:
    """Float inverse-correction of the augmented window operator."""
    idx = _window(ep.parity, ep.N)
    m = len(idx)
    C = np.zeros((m + 1, m + 1))
    C[0, 0] = -1.0
    row = _scalar_row(ep, idx)
    C[0, 1:] = row.mid()
    col = _scalar_col(ep, idx)
    C[1:, 0] = col.mid()
    C[1:, 1:] = _augmented_window_matrix(ep, idx, idx, U0, interval=False)
    M = np.eye(m + 1) + C
    return np.linalg.inv(M) - np.eye(m + 1)


def eigen_bounds(ep: EigenProblem, U0: FourierSeq,
                 B_aug: Optional[np.ndarray] = None,
                 tight: bool = True) -> AugmentedBounds:
    """Y0, Z1, Zu, Z2 for the augmented eigencouple system."""
    if B_aug is None:
        B_aug = build_augmented_B(ep, U0)
    p = ep.p_base
    d = ep.d
    N, N0 = ep.N, U0.n_stored
    K = N + N0
    idx_w = _window(ep.parity, N)
    idx_k = _window(ep.parity, K)
    idx_t = [i for i in idx_k if i > N]
    m = len(idx_w)
    box_root = Interval(2.0 * d).sqrt()
    nb = norm_B(B_aug, tight=tight)
    pass_fac = (p.lam3 * Interval(2.0) / ep.delta) * p.inv_l_norm2 * ep.r0

    # ---- residual (first component vanishes by construction) ----------
    ln_full = _sym_values_vec(p, d, range(ep.Vk.n_stored + 1),
                              Interval(ep.nu0), ep.delta)
    LV = FourierSeq(d, ep.Vk.coeffs * ln_full, ep.parity)
    QV = conv(U0, ep.Vk).scale(p.lam3 * Interval(2.0) / ep.delta)
    F2 = LV.padded(QV.n_stored) + QV
    yF = F2.folded()
    sel_w = np.asarray(idx_w, dtype=np.intp)
    head = IArray(yF.lo[sel_w].copy(), yF.hi[sel_w].copy())
    mask = np.ones(len(yF.lo), dtype=bool)
    mask[sel_w] = False
    if ep.parity == ODD:
        mask[0] = False
    tail_vec = IArray(yF.lo[mask].copy(), yF.hi[mask].copy())
    Bi = IArray(B_aug)
    b_col = IArray(B_aug[:, 1:].copy())
    corr = imatmul(b_col, head.reshape(-1, 1)).reshape(-1)
    scalar_part = Interval(float(corr.lo[0]), float(corr.hi[0]))
    fun_part = head + IArray(corr.lo[1:].copy(), corr.hi[1:].copy())
    fun_sq = Interval(0.0, fun_part.norm2_upper()) ** 2 \
        + Interval(0.0, tail_vec.norm2_upper()) ** 2
    y0_fin = ((scalar_part ** 2) + Interval(2.0 * d) * fun_sq).sqrt_nonneg()
    vk_l2 = Interval(0.0, ep.Vk.folded().norm2_upper())
    y0_pass = nb * pass_fac * box_root * vk_l2
    Y0 = Interval(0.0, (y0_fin + y0_pass).hi)

    # ---- Z1 finite blocks ---------------------------------------------
    CK_lo = np.zeros((m + 1, len(idx_k) + 1))
    CK_hi = np.zeros((m + 1, len(idx_k) + 1))
    CK = IArray(CK_lo, CK_hi)
    CK[0, 0] = Interval(-1.0)
    CK[0, 1:] = _scalar_row(ep, idx_k)
    CK[1:, 0] = _scalar_col(ep, idx_w)
    blk = _augmented_window_matrix(ep, idx_w, idx_k, U0, interval=True)
    CK[1:, 1:] = blk
    eye_pad = np.zeros((m + 1, len(idx_k) + 1))
    eye_pad[0, 0] = 1.0
    for i, n in enumerate(idx_w):
        eye_pad[i + 1, 1 + idx_k.index(n)] = 1.0
    IBa = IArray(np.eye(m + 1) + B_aug)
    ICK = CK + IArray(eye_pad.copy(), eye_pad.copy())
    block1 = IArray(eye_pad.copy(), eye_pad.copy()) - imatmul(IBa, ICK)
    b1 = Interval(0.0, op_norm2_upper(block1, tight=tight))

    col_t = _scalar_col(ep, idx_t)
    blk_t = _augmented_window_matrix(ep, idx_t, idx_w, U0, interval=True)
    B2_lo = np.zeros((len(idx_t), m + 1))
    B2_hi = np.zeros((len(idx_t), m + 1))
    block2 = IArray(B2_lo, B2_hi)
    block2[:, 0] = col_t
    block2[:, 1:] = blk_t
    b2 = Interval(0.0, op_norm2_upper(block2, tight=tight))

    tail = (p.lam3 * Interval(2.0) / ep.delta) * U0.norm_l1() \
        * tail_max_inv_l(ep.p_shift, N, d)
    z1_fin = (b1 ** 2 + b2 ** 2 + Interval(0.0, tail.hi) ** 2).sqrt_nonneg()
    Z1 = Interval(0.0, (z1_fin + nb * pass_fac).hi)

    # ---- Zu with the shifted kernel ------------------------------------
    Zu = _zu_shifted(ep.p_shift, U0, ep.delta, nb)

    # ---- Z2: constant bilinear second derivative -----------------------
    Z2 = nb / ep.delta
    return AugmentedBounds(Y0=Y0, Z1=Z1, Zu=Zu, Z2=Z2, normB=nb, B_aug=B_aug)


def _zu_shifted(p_shift: KawaharaParams, U0: FourierSeq, delta: Interval,
                nb: Interval,
                inner_cache: Optional[dict] = None) -> Interval:
    """max{1,||B||} sqrt(Zu1^2 + Zu2^2) for the multiplier (2 lam3/delta) u0.

    p_shift carries the shifted kernel constants (a', C0'); the inner
    product reuses the cached U0*U0 when supplied.
    """
    d = U0.d
    a = p_shift.a_decay
    fac = (p_shift.lam3 * Interval(2.0)) ** 2  # lam3/delta is in p_shift
    if inner_cache is not None and "W" in inner_cache:
        W = inner_cache["W"]
    else:
        W = conv(U0, U0)
        if inner_cache is not None:
            inner_cache["W"] = W
    E = cosh_weight_series(a, d, W.n_stored)
    acc = W.coeffs * E.coeffs
    dl = acc.lo.copy()
    dh = acc.hi.copy()
    dl[1:] *= 2.0
    dh[1:] *= 2.0
    inner = IArray(dl, dh).sum()
    S = Interval(0.0, max((fac * inner).hi, 0.0))
    box = Interval(2.0 * d)
    e2 = (-(a * Interval(2.0 * d))).exp()
    zu1_sq = box * (p_shift.C0 ** 2) * e2 * S / a
    e4 = (-(a * Interval(4.0 * d))).exp()
    zu2_sq = zu1_sq + e4 * geometry_Cd(a, d) * (p_shift.C0 ** 2) * box * S
    return Interval(0.0, (nb * (zu1_sq + zu2_sq).sqrt_nonneg()).hi)


def prove_eigencouple(ep: EigenProblem, ab: AugmentedBounds) -> EigenCertificate:
    """Radii polynomial for the augmented system; nu enclosure nu0 +- R."""
    from .contraction import solve_radii
    r0, _, reason = solve_radii(ab.Y0, ab.Z_total, ab.Z2)
    if r0 is None:
        return EigenCertificate(k=ep.k, parity=ep.parity, nu=Interval(ep.nu0),
                                radius=Interval(0.0), simple=False,
                                status="Failed", reason=reason,
                                bounds=ab, problem=ep)
    R = Interval(0.0, r0.hi)
    nu_enc = Interval(ep.nu0) + Interval(-R.hi, R.hi)
    return EigenCertificate(k=ep.k, parity=ep.parity, nu=nu_enc, radius=R,
                            simple=True, status="Proven", bounds=ab, problem=ep)


# ---------------------------------------------------------------------------
# exclusion machinery
# ---------------------------------------------------------------------------


@dataclass
class SweepStep:
    nu_star: float
    C: float                        # certified resolvent bound (upper)
    covered: Tuple[float, float]


@dataclass
class CrossingRecord:
    k: int
    parity: str
    interval: Tuple[float, float]
    hole: Tuple[float, float]       # eigenvalues inside `interval` live here
    mu_at_center: Tuple[float, float]
    mu_prime: Tuple[float, float]


@dataclass
class ExclusionReport:
    floor: float
    floor_bound: Tuple[float, float]
    steps: Dict[str, List[SweepStep]]
    crossings: Dict[str, List[CrossingRecord]]
    holes: List[Tuple[float, float]]
    gaps_verified: List[Tuple[float, float]]
    total_steps: int
    status: str = "Covered"

    def covered_sets(self, parity: str):
        iv = [s.covered for s in self.steps[parity]]
        iv += [c.interval for c in self.crossings[parity]]
        return _merge_intervals(iv)


def _merge_intervals(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _covers(merged, lo, hi, holes):
    """True when [lo, hi] minus the holes is inside the merged union."""
    segments = [(lo, hi)]
    for h_lo, h_hi in holes:
        nxt = []
        for s_lo, s_hi in segments:
            if h_hi <= s_lo or h_lo >= s_hi:
                nxt.append((s_lo, s_hi))
                continue
            if s_lo < h_lo:
                nxt.append((s_lo, h_lo))
            if h_hi < s_hi:
                nxt.append((h_hi, s_hi))
        segments = nxt
    for s_lo, s_hi in segments:
        ok = any(m_lo <= s_lo and s_hi <= m_hi for m_lo, m_hi in merged)
        if not ok:
            return False
    return True


def garding_floor(U0: FourierSeq, p: KawaharaParams, r0: Interval) -> Interval:
    """Certified lower bound of the whole spectrum of L + DG(u~).

    For an eigencouple (nu, w): nu ||w||^2 = (L w, w) + 2 lam3 (u~ w, w)
    >= (1 - 2 lam3 ||u~||_inf) ||w||^2, with
    ||u~||_inf <= ||U0||_1 + ||1/l||_2 r0.
    """
    sup_u = U0.norm_l1() + p.inv_l_norm2 * r0
    return Interval(1.0) - Interval(2.0) * p.lam3 * sup_u


class SweepContext:
    """Caches shared across resolvent steps (per parity)."""

    def __init__(self, U0: FourierSeq, p: KawaharaParams, r0: Interval,
                 N_sweep: int, slack: float = 0.9, tight: bool = True):
        self.U0 = U0
        self.p = p
        self.r0 = r0
        self.N = N_sweep
        self.d = U0.d
        self.slack = slack
        self.tight = tight
        self.N0 = U0.n_stored
        self.K = self.N + self.N0
        self._G = {}
        self._W = conv(U0, U0)
        self.u_norm_l1 = U0.norm_l1()

    def _mats(self, parity):
        if parity not in self._G:
            idx_w = _window(parity, self.N)
            idx_k = _window(parity, self.K)
            idx_t = [i for i in idx_k if i > self.N]
            G1 = conv_matrix_interval(self.U0, idx_w, idx_k, parity=parity)
            G2 = conv_matrix_interval(self.U0, idx_t, idx_w, parity=parity)
            self._G[parity] = (idx_w, idx_k, idx_t, G1, G2)
        return self._G[parity]

    def step(self, nu_star: float, parity: str) -> Optional[SweepStep]:
        """Certified resolvent bound at nu_star; None when it cannot close."""
        p = self.p
        delta_f = 1.0 - nu_star
        if delta_f <= 0:
            return None
        nu_i = Interval(nu_star)
        delta = Interval(1.0) - nu_i
        try:
            p_shift = shifted_params(p, nu_i)
        except ParamsOutOfRange:
            return None
        idx_w, idx_k, idx_t, G1, G2 = self._mats(parity)
        m = len(idx_w)
        try:
            B = _build_B_shifted(self.U0.mid(), p, self.N, self.d, parity, nu_star)
        except Exception:
            return None
        nb = norm_B(B, tight=self.tight)
        fac = p.lam3 * Interval(2.0) / delta
        linv_k = IArray(np.ones(len(idx_k))).divide_pos(
            _sym_values_vec(p, self.d, idx_k, nu_i, delta))
        GL = (G1 * fac) * IArray(np.broadcast_to(linv_k.lo, G1.shape).copy(),
                                 np.broadcast_to(linv_k.hi, G1.shape).copy())
        IB = IArray(np.eye(m) + B)
        M1 = imatmul(IB, GL)
        # pi^N - (pi^N + B)(I + DG L^{-1}) restricted to the K window;
        # idx_w are the first m entries of idx_k for both parities
        eye_pad = np.zeros(G1.shape)
        eye_pad[:, :m] = np.eye(m)
        B_pad = np.zeros(G1.shape)
        B_pad[:, :m] = B
        block1 = IArray(eye_pad.copy(), eye_pad.copy()) \
            - (IArray(eye_pad + B_pad) + M1)
        b1 = Interval(0.0, op_norm2_upper(block1, tight=self.tight))
        linv_w = IArray(np.ones(m)).divide_pos(
            _sym_values_vec(p, self.d, idx_w, nu_i, delta))
        G2L = (G2 * fac) * IArray(np.broadcast_to(linv_w.lo, G2.shape).copy(),
                                  np.broadcast_to(linv_w.hi, G2.shape).copy())
        b2 = Interval(0.0, op_norm2_upper(G2L, tight=self.tight))
        tail = fac * self.u_norm_l1 * tail_max_inv_l(p_shift, self.N, self.d)
        Zu = _zu_shifted(p_shift, self.U0, delta, nb,
                         inner_cache={"W": self._W})
        Z_tot = (b1 ** 2 + b2 ** 2 + Interval(0.0, tail.hi) ** 2).sqrt_nonneg() + Zu
        if not Z_tot.hi < 1.0:
            return None
        C_D = nb / (Interval(1.0) - Z_tot)
        C_22 = C_D / delta
        q = C_22 * Interval(2.0) * p.lam3 * p.inv_l_norm2 * self.r0
        if not q.hi < 1.0:
            return None
        C_u = C_22 / (Interval(1.0) - q)
        radius = self.slack / C_u.hi
        if not (radius > 0 and math.isfinite(radius)):
            return None
        return SweepStep(nu_star=nu_star, C=C_u.hi,
                         covered=(nu_star - radius, nu_star + radius))


def _build_B_shifted(u_mid, p, N, d, parity, nu):
    from .approx import build_B
    return build_B(u_mid, p, N, d, parity=parity, nu=nu)


def sweep_segment(ctx: SweepContext, parity: str, lo: float, hi: float,
                  max_steps: int = 4000) -> List[SweepStep]:
    """Cover [lo, hi] with certified resolvent intervals, left to right."""
    steps = []
    nu = lo
    covered_to = lo
    for _ in range(max_steps):
        s = ctx.step(nu, parity)
        if s is None:
            raise SweepStalled(f"no certificate at nu* = {nu} ({parity})", nu_star=nu)
        steps.append(s)
        covered_to = max(covered_to, s.covered[1])
        if covered_to >= hi:
            return steps
        advance = ctx.slack * (s.covered[1] - s.nu_star)
        if advance <= 1e-13 * max(1.0, abs(nu)):
            raise SweepStalled(f"step underflow at nu* = {nu} ({parity})", nu_star=nu)
        nu = min(nu + advance, hi)
    raise SweepStalled(f"exceeded {max_steps} steps in [{lo}, {hi}] ({parity})",
                       nu_star=nu)


# ---------------------------------------------------------------------------
# bordered crossing certificates
# ---------------------------------------------------------------------------


def _bordered_float_solve(ep: EigenProblem, U0: FourierSeq, rhs_scalar: float,
                          rhs_fun: Optional[np.ndarray]):
    """Float solve of the bordered window system B(nu_k) x = rhs.

    Unknowns (mu, y_window); equations: phi(v) = rhs_scalar and
    mu psi + (L - nu_k) v / delta + DG(u0) v / delta = rhs_fun.
    """
    idx = _window(ep.parity, ep.N)
    m = len(idx)
    p = ep.p_base
    d = ep.d
    lnk = _sym_values_vec(p, d, idx, Interval(ep.nu0), ep.delta).mid()
    yk_full = ep.Vk.folded().mid()
    sel = np.asarray(idx, dtype=np.intp)
    yk = yk_full[sel] if len(yk_full) > max(idx) else np.pad(
        yk_full, (0, max(idx) + 1 - len(yk_full)))[sel]
    ln_sq_row = -2.0 * d * (lnk ** 2) * yk          # phi(v) row on y-coords
    A = conv_matrix_float(U0.mid(), idx, idx, parity=ep.parity)
    block = np.diag(lnk) + (2.0 * p.lam3.mid / ep.delta.mid) * A
    M = np.zeros((m + 1, m + 1))
    M[0, 1:] = ln_sq_row
    M[1:, 0] = -yk / ep.delta.mid
    M[1:, 1:] = block
    rhs = np.zeros(m + 1)
    rhs[0] = rhs_scalar
    if rhs_fun is not None:
        rhs[1:] = rhs_fun
    x = np.linalg.solve(M, rhs)
    return float(x[0]), x[1:]


def _unfold_window(ep: EigenProblem, y: np.ndarray) -> FourierSeq:
    idx = _window(ep.parity, ep.N)
    u = np.zeros(ep.N + 1)
    for i, n in enumerate(idx):
        u[n] = y[i] / (1.0 if n == 0 else math.sqrt(2.0))
    return FourierSeq(ep.d, u, ep.parity)


def _bordered_residual_norm(ep: EigenProblem, U0: FourierSeq, mu_hat: float,
                            V: FourierSeq, rhs_scalar: Interval,
                            rhs_fun: Optional[FourierSeq],
                            rhs_fun_ball: Interval,
                            nu_range: Interval) -> Interval:
    """Upper bound of ||B(nu) x_hat - rhs||_{H2} over nu in nu_range.

    rhs_fun_ball adds a ball (L2 norm) of uncertainty to the function rhs.
    """
    p = ep.p_base
    d = ep.d
    box_root = Interval(2.0 * d).sqrt()
    # first component: phi(v) - rhs_scalar
    ln_full = _sym_values_vec(p, d, range(ep.Vk.n_stored + 1),
                              Interval(ep.nu0), ep.delta)
    Vp = V.padded(ep.Vk.n_stored) if V.n_stored < ep.Vk.n_stored else V
    lnV = _sym_values_vec(p, d, range(Vp.n_stored + 1),
                          Interval(ep.nu0), ep.delta)
    yk = ep.Vk.padded(Vp.n_stored).folded() * lnV
    yv = Vp.folded() * lnV
    c1 = -(Interval(2.0 * d) * (yk * yv).sum()) - rhs_scalar
    # second component: mu psi + (l - nu)/delta V + (2 lam3/delta) U0*V - rhs
    shift_vals = _sym_values_vec(p, d, range(Vp.n_stored + 1), nu_range,
                                 ep.delta)
    LV = FourierSeq(d, Vp.coeffs * shift_vals, ep.parity)
    QV = conv(U0, Vp).scale(p.lam3 * Interval(2.0) / ep.delta)
    psi_term = ep.Vk.scale(Interval(mu_hat) * Interval(-1.0) / ep.delta)
    c2 = LV.padded(QV.n_stored) + QV + psi_term.padded(QV.n_stored)
    if rhs_fun is not None:
        c2 = c2 - rhs_fun.padded(c2.n_stored)
    c2_norm = Interval(0.0, c2.folded().norm2_upper()) * box_root
    # passage DG(u~) - DG(u0) applied to V
    v_l2 = Interval(0.0, Vp.folded().norm2_upper()) * box_root
    pas = (p.lam3 * Interval(2.0) / ep.delta) * p.inv_l_norm2 * ep.r0 * v_l2
    total_fun = c2_norm + pas + rhs_fun_ball
    return ((c1 ** 2) + (total_fun ** 2)).sqrt_nonneg()


def crossing_certificate(ep: EigenProblem, U0: FourierSeq,
                         ab: AugmentedBounds, cert: EigenCertificate,
                         half_width: Optional[float] = None
                         ) -> Optional[CrossingRecord]:
    """Certify an interval I around nu_k where eigenvalues can only sit in a
    tight hole: B(nu) invertible on I and the Schur scalar mu has its zeros
    (= all eigenvalues of the parity block in I, by self-adjointness)
    confined by one interval-Newton step."""
    nbar = ab.normB
    gap0 = Interval(1.0) - ab.Z_total
    if not gap0.strictly_positive():
        return None
    if half_width is None:
        # leave half the defect budget to the nu-variation
        half_width = 0.45 * gap0.lo * ep.delta.lo / nbar.hi
    s = Interval(half_width)
    growth = nbar * s / ep.delta
    gap_I = gap0 - growth
    if not gap_I.strictly_positive():
        return None
    Cb = nbar / gap_I
    nu_range = Interval(ep.nu0) + Interval(-s.hi, s.hi)

    eta = ep.eta
    mu_hat, y_hat = _bordered_float_solve(ep, U0, eta.mid, None)
    Vsol = project_trace_free(_unfold_window(ep, y_hat),
                              build_trace(ep.N, 4, ep.d, parity=ep.parity))
    res_c = _bordered_residual_norm(ep, U0, mu_hat, Vsol, eta, None,
                                    Interval(0.0), Interval(ep.nu0))
    err_c = Cb * res_c
    mu_center = Interval(mu_hat) + Interval(-err_c.hi, err_c.hi)

    # derivative system: B(nu) x' = (0, v(nu)/delta)
    mup_hat, yp_hat = _bordered_float_solve(
        ep, U0, 0.0, y_hat / ep.delta.mid)
    Vp_sol = project_trace_free(_unfold_window(ep, yp_hat),
                                build_trace(ep.N, 4, ep.d, parity=ep.parity))
    res_I = _bordered_residual_norm(ep, U0, mu_hat, Vsol, eta, None,
                                    Interval(0.0), nu_range)
    err_I = Cb * res_I                     # ||x(nu) - x_hat||_{H1} over I
    rhs_fun = Vsol.scale(Interval(1.0) / ep.delta)
    ball = (err_I / ep.delta) * Interval(1.0)   # ||v(nu) - v_hat||_2 / delta
    res_p = _bordered_residual_norm(ep, U0, mup_hat, Vp_sol, Interval(0.0),
                                    rhs_fun, ball, nu_range)
    err_p = Cb * res_p
    mu_prime = Interval(mup_hat) + Interval(-err_p.hi, err_p.hi)
    if mu_prime.contains(0.0):
        return None
    # mu is strictly monotone on I, so it has at most one zero there; all
    # eigenvalues of the parity block inside I are zeros of mu, and the
    # contraction provides one inside cert.nu -- hence
    # spectrum cap I = {nu*} subset N(I) cap cert.nu.
    newton = Interval(ep.nu0) - mu_center / mu_prime
    if not (cert.nu.lo >= nu_range.lo and cert.nu.hi <= nu_range.hi):
        return None
    hole_lo = max(newton.lo, cert.nu.lo)
    hole_hi = min(newton.hi, cert.nu.hi)
    if hole_lo > hole_hi:
        return None  # inconsistent: would contradict the proven couple
    if newton.lo <= nu_range.lo or newton.hi >= nu_range.hi:
        return None
    return CrossingRecord(k=ep.k, parity=ep.parity,
                          interval=(nu_range.lo, nu_range.hi),
                          hole=(hole_lo, hole_hi),
                          mu_at_center=(mu_center.lo, mu_center.hi),
                          mu_prime=(mu_prime.lo, mu_prime.hi))


def exclusion_sweep(U0: FourierSeq, p: KawaharaParams,
                    soliton: ProofCertificate,
                    eigen_certs: List[EigenCertificate],
                    N_sweep: int = 100, slack: float = 0.9,
                    max_steps: int = 10000,
                    tight: bool = True) -> ExclusionReport:
    """Prove the spectrum below nu_3 is exactly {nu_1, nu_2, nu_3}.

    Covers [floor, nu_3] for both parity blocks with resolvent steps plus
    one bordered crossing per proven eigenvalue of that parity; the Garding
    floor handles (-inf, floor].
    """
    certs = sorted(eigen_certs, key=lambda c: c.nu.mid)
    if not all(c.proven for c in certs):
        raise SweepStalled("exclusion requires all eigencertificates proven")
    fl = garding_floor(U0, p, soliton.r0)
    floor = fl.lo
    hi_target = max(c.nu.hi for c in certs)
    steps: Dict[str, List[SweepStep]] = {EVEN: [], ODD: []}
    crossings: Dict[str, List[CrossingRecord]] = {EVEN: [], ODD: []}
    holes: List[Tuple[float, float]] = []
    ctx = SweepContext(U0, p, soliton.r0, N_sweep, slack=slack, tight=tight)
    budget = max_steps

    for parity in (EVEN, ODD):
        own = [c for c in certs if c.parity == parity]
        # crossing certificates for this parity's eigenvalues
        xrecs = []
        for c in own:
            rec = None
            hw = None
            for _ in range(6):
                rec = crossing_certificate(c.problem, U0, c.bounds, c,
                                           half_width=hw)
                if rec is not None:
                    break
                hw = 0.3 * (hw if hw is not None else
                            0.45 * (1 - c.bounds.Z_total.hi)
                            * c.problem.delta.lo / c.bounds.normB.hi)
            if rec is None:
                raise SweepStalled(
                    f"no crossing certificate for nu_{c.k} ({parity})",
                    nu_star=c.nu.mid)
            xrecs.append(rec)
            holes.append(rec.hole)
        crossings[parity] = xrecs
        # sweep the segments between crossings
        segment_edges = [floor]
        for rec in sorted(xrecs, key=lambda r: r.interval[0]):
            segment_edges += [rec.interval[0], rec.interval[1]]
        segment_edges.append(hi_target)
        for a, b in zip(segment_edges[::2], segment_edges[1::2]):
            if b <= a:
                continue
            seg = sweep_segment(ctx, parity, a, b, max_steps=budget)
            steps[parity] += seg
            budget -= len(seg)
            if budget <= 0:
                raise SweepStalled("step budget exhausted", nu_star=b)

    # authoritative eigenvalue enclosures: hull of contraction ball and hole
    enclosures = []
    for c in certs:
        rec = next(r for r in crossings[c.parity] if r.k == c.k)
        enclosures.append((min(c.nu.lo, rec.hole[0]), max(c.nu.hi, rec.hole[1])))
    enclosures.sort()
    gaps = [(floor, enclosures[0][0]),
            (enclosures[0][1], enclosures[1][0]),
            (enclosures[1][1], enclosures[2][0])]
    ok = True
    for lo, hi in gaps:
        for parity in (EVEN, ODD):
            merged = _merge_intervals(
                [s.covered for s in steps[parity]]
                + [r.interval for r in crossings[parity]])
            own_holes = [r.hole for r in crossings[parity]]
            if not _covers(merged, lo, hi, own_holes):
                ok = False
    total = sum(len(v) for v in steps.values())
    return ExclusionReport(floor=floor, floor_bound=(fl.lo, fl.hi),
                           steps=steps, crossings=crossings, holes=enclosures,
                           gaps_verified=gaps, total_steps=total,
                           status="Covered" if ok else "Uncovered")
