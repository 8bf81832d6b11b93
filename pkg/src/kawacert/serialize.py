"""JSON artifacts: outward-rounded decimal intervals, exact hex floats,
atomic writes, and content hashes for replayable certificates."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from decimal import Decimal, ROUND_CEILING, ROUND_FLOOR
from typing import Optional

import numpy as np

from .intervals import IArray, Interval
from .sequences import FourierSeq


def _dec_out(x: float, direction: str) -> str:
    if x == 0.0:
        return "0"
    q = Decimal(x).quantize(Decimal(f"1e{Decimal(x).adjusted() - 17}"),
                            rounding=ROUND_FLOOR if direction == "down"
                            else ROUND_CEILING)
    return format(q, "e")


def interval_to_json(iv: Interval) -> dict:
    return {
        "dec": f"[{_dec_out(iv.lo, 'down')},{_dec_out(iv.hi, 'up')}]",
        "hex": [float(iv.lo).hex(), float(iv.hi).hex()],
    }


def interval_from_json(obj) -> Interval:
    if isinstance(obj, dict) and "hex" in obj:
        return Interval(float.fromhex(obj["hex"][0]), float.fromhex(obj["hex"][1]))
    if isinstance(obj, dict) and "dec" in obj:
        lo, hi = obj["dec"].strip("[]").split(",")
        return Interval(float(lo), float(hi))
    raise ValueError(f"not an interval payload: {obj!r}")


def seq_to_json(seq: FourierSeq) -> dict:
    out = {"d": seq.d, "parity": seq.parity}
    if seq.is_interval():
        out["coeffs"] = [f"[{_dec_out(float(lo), 'down')},{_dec_out(float(hi), 'up')}]"
                         for lo, hi in zip(seq.coeffs.lo, seq.coeffs.hi)]
        out["coeffs_hex"] = [[float(lo).hex(), float(hi).hex()]
                             for lo, hi in zip(seq.coeffs.lo, seq.coeffs.hi)]
    else:
        out["coeffs"] = [repr(float(v)) for v in seq.coeffs.lo]
        out["coeffs_hex"] = [float(v).hex() for v in seq.coeffs.lo]
    return out


def seq_from_json(obj) -> FourierSeq:
    hexes = obj.get("coeffs_hex")
    if hexes and isinstance(hexes[0], list):
        lo = np.array([float.fromhex(a) for a, _ in hexes])
        hi = np.array([float.fromhex(b) for _, b in hexes])
        return FourierSeq(obj["d"], IArray(lo, hi), obj["parity"])
    if hexes:
        vals = np.array([float.fromhex(h) for h in hexes])
    else:
        vals = np.array([float(s) for s in obj["coeffs"]])
    return FourierSeq(obj["d"], vals, obj["parity"])


def canonical_dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def payload_hash(payload: dict) -> str:
    scrubbed = {k: v for k, v in payload.items() if k != "meta"}
    return hashlib.sha256(canonical_dumps(scrubbed).encode()).hexdigest()


def write_artifact(path: str, payload: dict, timestamp: Optional[str] = None) -> str:
    """Atomic JSON write; returns the content hash (timestamp excluded)."""
    h = payload_hash(payload)
    payload = dict(payload)
    meta = dict(payload.get("meta", {}))
    meta["sha256"] = h
    if timestamp is not None:
        meta["created"] = timestamp
    payload["meta"] = meta
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(payload, f, sort_keys=True, indent=1)
            f.write("\n")
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return h


def read_artifact(path: str) -> dict:
    with open(path) as f:
        return json.load(f)


def file_hash(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
