"""Pipeline driver: approx -> prove -> eigs -> exclude -> stability,
plus certify (bundle) and export-plot.

Each stage reads the JSON artifacts of its prerequisites, records their
hashes, and writes its own artifact atomically.  Exit codes: 0 success,
2 missing artifact, 3 config error, 4 soliton proof failed, 5 eigenvalue
proof failed, 6 exclusion failed, 7 stability inconclusive, 1 unexpected.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import approx, bounds, contraction, eigen, stability
from .errors import (ConfigError, KawacertError, MissingArtifact,
                     NoConvergence, SweepStalled)
from .intervals import Interval
from .kawahara import make_params
from .sequences import EVEN, ODD, FourierSeq, derivative, sample
from .serialize import (file_hash, interval_to_json, read_artifact,
                        seq_from_json, seq_to_json, write_artifact)
from .traces import build_trace, project_trace_free

EXIT_OK = 0
EXIT_MISSING = 2
EXIT_CONFIG = 3
EXIT_PROOF = 4
EXIT_EIGEN = 5
EXIT_EXCLUDE = 6
EXIT_STABILITY = 7


@dataclass
class RunConfig:
    T: str = "0.35"
    c: str = "0.9"
    d: float = 50.0
    N: int = 120
    N0: int = 300
    k_trace: int = 4
    newton_max_iter: int = 60
    newton_tol: float = 1e-13
    sweep_N: int = 100
    sweep_slack: float = 0.9
    plot_points: int = 2048
    zu_sweep_d: list = field(default_factory=lambda: [30.0, 40.0, 50.0, 60.0])

    @classmethod
    def load(cls, path):
        if path is None:
            return cls()
        try:
            with open(path) as f:
                raw = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}")
        cfg = cls()
        newton = raw.pop("newton", {})
        sweep = raw.pop("sweep", {})
        for key, val in raw.items():
            if not hasattr(cfg, key):
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
        cfg.newton_max_iter = int(newton.get("max_iter", cfg.newton_max_iter))
        cfg.newton_tol = float(newton.get("tol", cfg.newton_tol))
        cfg.sweep_N = int(sweep.get("N_sweep", cfg.sweep_N))
        cfg.sweep_slack = float(sweep.get("slack", cfg.sweep_slack))
        cfg.validate()
        return cfg

    def validate(self):
        if not (0 < self.N <= self.N0):
            raise ConfigError("need 0 < N <= N0")
        if self.d <= 0 or self.k_trace <= 0 or self.sweep_N <= 0:
            raise ConfigError("counts and sizes must be positive")
        if not (0 < self.sweep_slack < 1):
            raise ConfigError("sweep slack must be in (0, 1)")

    def echo(self):
        return {
            "T": self.T, "c": self.c, "d": self.d, "N": self.N,
            "N0": self.N0, "k_trace": self.k_trace,
            "newton": {"max_iter": self.newton_max_iter, "tol": self.newton_tol},
            "sweep": {"N_sweep": self.sweep_N, "slack": self.sweep_slack},
        }


class Stage:
    def __init__(self, cfg: RunConfig, out_dir: str, verbose: bool = False,
                 jobs: int = 1):
        self.cfg = cfg
        self.out = out_dir
        self.verbose = verbose
        self.jobs = max(1, jobs)
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name):
        return os.path.join(self.out, name)

    def log(self, msg):
        if self.verbose:
            print(msg, file=sys.stderr)

    def need(self, name):
        p = self.path(name)
        if not os.path.exists(p):
            raise MissingArtifact(f"required artifact missing: {p} "
                                  f"(run the upstream stage first)")
        return p

    # -- shared reconstruction -----------------------------------------

    def params(self):
        return make_params(self.cfg.T, self.cfg.c, d=self.cfg.d)

    def load_u0(self):
        art = read_artifact(self.need("u0_approx.json"))
        seq = seq_from_json(art["u0"])
        setup = build_trace(seq.n_stored, self.cfg.k_trace, seq.d, parity=EVEN)
        return project_trace_free(seq, setup), art

    def load_soliton(self, p, U0):
        art = read_artifact(self.need("soliton.json"))
        if art["status"] != "Proven":
            raise KawacertError("soliton certificate is not Proven")
        b = bounds.compute_bounds(U0, self._B(U0, p), p, self.cfg.N)
        cert = contraction.check_contraction(b)
        cert.input_hashes = art.get("input_hashes", {})
        return cert, art

    def _B(self, U0, p):
        return approx.build_B(U0.mid()[: self.cfg.N + 1], p, self.cfg.N,
                              self.cfg.d)

    def eigen_certificates(self, p, U0, soliton_cert):
        art = read_artifact(self.need("eigens.json"))
        certs = []
        for entry in art["eigenvalues"]:
            vec = seq_from_json(entry["vector"])
            ep = eigen.build_augmented(entry["k"], entry["nu0"], vec, p,
                                       soliton_cert, self.cfg.N)
            ab = eigen.eigen_bounds(ep, U0)
            ec = eigen.prove_eigencouple(ep, ab)
            if not ec.proven:
                raise KawacertError(f"eigencouple {entry['k']} reproof failed")
            certs.append(ec)
        return certs, art

    # -- stages ----------------------------------------------------------

    def run_approx(self):
        p = self.params()
        cfg = approx.NewtonConfig(n_modes=self.cfg.N0, d=self.cfg.d,
                                  max_iter=self.cfg.newton_max_iter,
                                  residual_tol=self.cfg.newton_tol)
        res = approx.newton_solve(p, cfg)
        payload = {
            "config": self.cfg.echo(),
            "u0": seq_to_json(res.seq),
            "residual_history": res.residuals,
            "trivial_branch": res.trivial,
        }
        h = write_artifact(self.path("u0_approx.json"), payload,
                           timestamp=_now())
        self.log(f"approx: residual {res.residuals[-1]:.3e}, hash {h[:12]}")
        return EXIT_OK

    def run_prove(self):
        p = self.params()
        U0, art = self.load_u0()
        b = bounds.compute_bounds(U0, self._B(U0, p), p, self.cfg.N)
        cert = contraction.check_contraction(b)
        cert = contraction.check_periodic(cert, p)
        payload = {
            "config": self.cfg.echo(),
            "status": cert.status,
            "reason": cert.reason,
            "periodic": cert.periodic,
            "bounds": _bounds_json(b),
            "U0": seq_to_json(U0),
            "input_hashes": {"u0_approx.json": file_hash(self.path("u0_approx.json"))},
        }
        if cert.proven:
            payload["r0"] = interval_to_json(cert.r0)
            payload["r_max"] = interval_to_json(cert.r_max)
            payload["inverse_norm"] = interval_to_json(cert.inverse_norm_bound)
            if cert.periodic_radius is not None:
                payload["periodic_radius"] = interval_to_json(cert.periodic_radius)
        write_artifact(self.path("soliton.json"), payload, timestamp=_now())
        self.log(f"prove: {cert.status}, periodic {cert.periodic}")
        return EXIT_OK if cert.proven and cert.periodic == "Proven" else EXIT_PROOF

    def run_eigs(self):
        p = self.params()
        U0, _ = self.load_u0()
        cert, _ = self.load_soliton(p, U0)
        if not cert.proven:
            return EXIT_PROOF
        approx_pairs = approx.approx_eigs(U0, p, self.cfg.N0, count=3)

        def prove_one(args):
            k, pair = args
            if k == 2:
                nu0 = 0.0
                vec = FourierSeq(self.cfg.d, derivative(U0).mid(), ODD)
            else:
                nu0, vec = pair.nu, pair.vec
            ep = eigen.build_augmented(k, nu0, vec, p, cert, self.cfg.N)
            ab = eigen.eigen_bounds(ep, U0)
            ec = eigen.prove_eigencouple(ep, ab)
            return (k, nu0, vec, ec)

        tasks = list(enumerate(approx_pairs, start=1))
        if self.jobs > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                results = list(pool.map(prove_one, tasks))
        else:
            results = [prove_one(t) for t in tasks]
        entries = []
        ok = True
        for k, nu0, vec, ec in results:
            ok = ok and ec.proven
            entries.append({
                "k": k,
                "parity": ec.parity,
                "nu0": nu0,
                "status": ec.status,
                "reason": ec.reason,
                "enclosure": interval_to_json(ec.nu),
                "radius": interval_to_json(ec.radius),
                "simple": ec.simple,
                "vector": seq_to_json(FourierSeq(vec.d, vec.mid(), vec.parity)),
            })
            self.log(f"eigs: nu_{k} {ec.status} radius {ec.radius.hi:.2e}")
        payload = {
            "config": self.cfg.echo(),
            "eigenvalues": entries,
            "input_hashes": {
                "u0_approx.json": file_hash(self.path("u0_approx.json")),
                "soliton.json": file_hash(self.path("soliton.json")),
            },
        }
        write_artifact(self.path("eigens.json"), payload, timestamp=_now())
        return EXIT_OK if ok else EXIT_EIGEN

    def run_exclude(self):
        p = self.params()
        U0, _ = self.load_u0()
        cert, _ = self.load_soliton(p, U0)
        certs, _ = self.eigen_certificates(p, U0, cert)
        report = eigen.exclusion_sweep(U0, p, cert, certs,
                                       N_sweep=self.cfg.sweep_N,
                                       slack=self.cfg.sweep_slack)
        payload = {
            "config": self.cfg.echo(),
            "status": report.status,
            "floor": interval_to_json(Interval(*report.floor_bound)),
            "gaps": [list(g) for g in report.gaps_verified],
            "holes": [list(h) for h in report.holes],
            "total_steps": report.total_steps,
            "parities": {
                par: {
                    "steps": [{"nu_star": s.nu_star, "C": s.C,
                               "covered": list(s.covered)}
                              for s in report.steps[par]],
                    "crossings": [{"k": r.k, "interval": list(r.interval),
                                   "hole": list(r.hole),
                                   "mu_center": list(r.mu_at_center),
                                   "mu_prime": list(r.mu_prime)}
                                  for r in report.crossings[par]],
                } for par in (EVEN, ODD)
            },
            "input_hashes": {
                "u0_approx.json": file_hash(self.path("u0_approx.json")),
                "soliton.json": file_hash(self.path("soliton.json")),
                "eigens.json": file_hash(self.path("eigens.json")),
            },
        }
        write_artifact(self.path("exclusion.json"), payload, timestamp=_now())
        self.log(f"exclude: {report.status} in {report.total_steps} steps")
        return EXIT_OK if report.status == "Covered" else EXIT_EXCLUDE

    def run_stability(self):
        p = self.params()
        U0, _ = self.load_u0()
        cert, _ = self.load_soliton(p, U0)
        certs, _ = self.eigen_certificates(p, U0, cert)
        excl_art = read_artifact(self.need("exclusion.json"))
        report = _report_stub(excl_art)
        sr = stability.albert_check(U0, p, cert, certs, report)
        payload = {
            "config": self.cfg.echo(),
            "verdict": sr.verdict,
            "tau": interval_to_json(sr.tau),
            "C1": interval_to_json(sr.C1),
            "eps": interval_to_json(sr.eps),
            "main_term": interval_to_json(sr.main_term),
            "residual_norm": interval_to_json(sr.residual_norm),
            "input_hashes": {
                name: file_hash(self.path(name))
                for name in ("u0_approx.json", "soliton.json",
                             "eigens.json", "exclusion.json")
            },
        }
        write_artifact(self.path("stability.json"), payload, timestamp=_now())
        self.log(f"stability: {sr.verdict} tau <= {sr.tau.hi:.4f}")
        return EXIT_OK if sr.stable else EXIT_STABILITY

    def run_certify(self):
        names = ["u0_approx.json", "soliton.json", "eigens.json",
                 "exclusion.json", "stability.json"]
        bundle = {"config": self.cfg.echo(), "artifacts": {}, "input_hashes": {}}
        for name in names:
            art = read_artifact(self.need(name))
            bundle["artifacts"][name.removesuffix(".json")] = art
            bundle["input_hashes"][name] = file_hash(self.path(name))
        proven = (bundle["artifacts"]["soliton"]["status"] == "Proven"
                  and all(e["status"] == "Proven"
                          for e in bundle["artifacts"]["eigens"]["eigenvalues"])
                  and bundle["artifacts"]["exclusion"]["status"] == "Covered"
                  and bundle["artifacts"]["stability"]["verdict"] == "Stable")
        bundle["status"] = "Proven" if proven else "Incomplete"
        write_artifact(self.path("certificate.json"), bundle, timestamp=_now())
        self.log(f"certify: {bundle['status']}")
        return EXIT_OK if proven else EXIT_PROOF

    def run_export_plot(self):
        U0, _ = self.load_u0()
        xs = np.linspace(-self.cfg.d, self.cfg.d, self.cfg.plot_points)
        vals = sample(U0, xs)
        with open(self.path("u0.csv"), "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["x", "u0"])
            for x, v in zip(xs, vals):
                w.writerow([repr(float(x)), repr(float(v))])
        # Zu decay sweep at fixed physical profile v = e^{-a |x|}
        p = self.params()
        rows = []
        for dv in self.cfg.zu_sweep_d:
            inner = bounds.profile_weighted_inner(1.0, p.a_decay, p.a_decay,
                                                  float(dv))
            stub = FourierSeq(float(dv), np.zeros(4), EVEN)
            zu1, zu2, _ = bounds.bound_Zu(stub, Interval(1.0), p,
                                          weighted_inner=inner)
            rows.append((float(dv), zu1.hi, zu2.hi,
                         2.0 * math.log(zu1.hi) if zu1.hi > 0 else float("-inf")))
        with open(self.path("zu_sweep.csv"), "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["d", "Zu1", "Zu2", "log_Zu1_sq"])
            for row in rows:
                w.writerow([repr(v) for v in row])
        ds = np.array([r[0] for r in rows])
        logs = np.array([r[3] for r in rows])
        slope = float(np.polyfit(ds, logs, 1)[0])
        self.log(f"export-plot: zu slope {slope:.4f} vs -2a = {-2 * p.a_decay.mid:.4f}")
        return EXIT_OK


def _report_stub(art) -> eigen.ExclusionReport:
    """Rebuild an ExclusionReport object from its artifact."""
    steps = {}
    crossings = {}
    for par in (EVEN, ODD):
        block = art["parities"][par]
        steps[par] = [eigen.SweepStep(s["nu_star"], s["C"], tuple(s["covered"]))
                      for s in block["steps"]]
        crossings[par] = [eigen.CrossingRecord(
            k=r["k"], parity=par, interval=tuple(r["interval"]),
            hole=tuple(r["hole"]), mu_at_center=tuple(r["mu_center"]),
            mu_prime=tuple(r["mu_prime"])) for r in block["crossings"]]
    from .serialize import interval_from_json
    fl = interval_from_json(art["floor"])
    return eigen.ExclusionReport(
        floor=fl.lo, floor_bound=(fl.lo, fl.hi), steps=steps,
        crossings=crossings, holes=[tuple(h) for h in art["holes"]],
        gaps_verified=[tuple(g) for g in art["gaps"]],
        total_steps=art["total_steps"], status=art["status"])


def _bounds_json(b) -> dict:
    return {
        "Y0": interval_to_json(b.Y0),
        "Z1N": interval_to_json(b.Z1N),
        "Z1_tail": interval_to_json(b.Z1_tail),
        "Z1": interval_to_json(b.Z1),
        "Zu1": interval_to_json(b.Zu1),
        "Zu2": interval_to_json(b.Zu2),
        "Zu": interval_to_json(b.Zu),
        "Z2": interval_to_json(b.Z2_coeff),
        "normB": interval_to_json(b.normB),
        "N": b.N, "N0": b.N0, "d": b.d,
    }


def _now():
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="kawacert",
        description="Computer-assisted existence/stability certificates for "
                    "a Kawahara soliton")
    parser.add_argument("command",
                        choices=["approx", "prove", "eigs", "exclude",
                                 "stability", "certify", "export-plot"])
    parser.add_argument("--config", default=None, help="JSON run config")
    parser.add_argument("--out", default="artifacts", help="output directory")
    parser.add_argument("--stage-artifacts", default=None,
                        help="directory holding upstream artifacts "
                             "(defaults to --out)")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)

    try:
        cfg = RunConfig.load(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = args.stage_artifacts or args.out
    stage = Stage(cfg, out_dir, verbose=args.verbose, jobs=args.jobs)
    runner = {
        "approx": stage.run_approx,
        "prove": stage.run_prove,
        "eigs": stage.run_eigs,
        "exclude": stage.run_exclude,
        "stability": stage.run_stability,
        "certify": stage.run_certify,
        "export-plot": stage.run_export_plot,
    }[args.command]
    try:
        return runner()
    except MissingArtifact as exc:
        print(f"missing artifact: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoConvergence as exc:
        print(f"approximation failed: {exc}", file=sys.stderr)
        return EXIT_PROOF
    except SweepStalled as exc:
        print(f"exclusion failed: {exc}", file=sys.stderr)
        return EXIT_EXCLUDE
    except KawacertError as exc:
        print(f"stage failed: {exc}", file=sys.stderr)
        return EXIT_PROOF


if __name__ == "__main__":
    sys.exit(main())
