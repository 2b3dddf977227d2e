"""Empirical census: stream primes, compute ord_g(p) and r_g(p), tally residue classes.

A run covers the first ``n_primes`` primes.  They are processed in fixed
chunks; each chunk yields a private :class:`CensusTally` and chunks are merged
in order, so the result does not depend on the number of worker processes.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .gdecomp import InvalidBase, decompose, parse_g
from .ntkernel import (
    MAX_PRIME_COUNT,
    Factorization,
    factorize,
    first_primes,
    legendre,
    smallest_factor_table,
)

CHECKPOINT_VERSION = 1
CHUNK = 1 << 16
_SPF_LIMIT = 1 << 24


class CheckpointError(RuntimeError):
    """The checkpoint file is unreadable, corrupt, or belongs to a different run."""


def multiplicative_order(t: int, p: int, fact: Factorization | None = None) -> int:
    """Least k >= 1 with t^k = 1 mod p; ``fact`` is the factorization of p - 1."""
    t %= p
    if t == 0:
        raise ValueError("t must be a unit mod p")
    if fact is None:
        fact = factorize(p - 1) if p > 2 else Factorization(())
    o = p - 1
    for q, _ in fact:
        while o % q == 0 and pow(t, o // q, p) == 1:
            o //= q
    return o


@dataclass(frozen=True)
class CensusSpec:
    """Joint (p mod d1, ord mod d2) pairs and the moduli for index tallies."""

    pairs: tuple = ((1, 2), (4, 4), (3, 3), (8, 4), (9, 3))
    index_moduli: tuple = (3, 4)

    def to_json(self):
        return {"pairs": [list(x) for x in self.pairs], "index_moduli": list(self.index_moduli)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(tuple(x) for x in obj["pairs"]), tuple(obj["index_moduli"]))


VIOLATIONS = ("ord_times_index", "p3mod4_ord0mod4", "p3mod4_legendre", "p2mod3_ord0mod3")


@dataclass
class CensusTally:
    g: Fraction
    spec: CensusSpec
    counts: dict = field(default_factory=dict)  # (d1, d2) -> int array of shape (d1, d2)
    index_counts: dict = field(default_factory=dict)  # d -> int array of shape (d,)
    skipped: int = 0
    total: int = 0
    max_prime: int = 0
    violations: dict = field(default_factory=dict)

    @classmethod
    def empty(cls, g: Fraction, spec: CensusSpec) -> "CensusTally":
        return cls(
            g,
            spec,
            {pr: np.zeros(pr, dtype=np.int64) for pr in spec.pairs},
            {d: np.zeros(d, dtype=np.int64) for d in spec.index_moduli},
            violations={k: 0 for k in VIOLATIONS},
        )

    def merge(self, other: "CensusTally") -> "CensusTally":
        if other.g != self.g or other.spec != self.spec:
            raise ValueError("cannot merge tallies of different runs")
        return CensusTally(
            self.g,
            self.spec,
            {k: self.counts[k] + other.counts[k] for k in self.counts},
            {k: self.index_counts[k] + other.index_counts[k] for k in self.index_counts},
            self.skipped + other.skipped,
            self.total + other.total,
            max(self.max_prime, other.max_prime),
            {k: self.violations[k] + other.violations[k] for k in self.violations},
        )

    # ratios use all examined primes as denominator, skipped ones included
    def order_ratio(self, d2: int, j: int, a1: int = 0, d1: int = 1) -> float:
        """Share of primes p = a1 mod d1 whose order is j mod d2."""
        for (e1, e2), arr in self.counts.items():
            if e2 == d2 and e1 % d1 == 0:
                rows = [a for a in range(e1) if a % d1 == a1 % d1]
                return float(arr[rows, j % d2].sum()) / self.total
        raise KeyError(f"no tally for class mod {d1} with order mod {d2}")

    def index_ratio(self, d: int, a: int) -> float:
        return float(self.index_counts[d][a % d]) / self.total

    def to_json(self):
        return {
            "g": str(self.g),
            "spec": self.spec.to_json(),
            "counts": [[list(k), v.tolist()] for k, v in self.counts.items()],
            "index_counts": [[k, v.tolist()] for k, v in self.index_counts.items()],
            "skipped": self.skipped,
            "total": self.total,
            "max_prime": self.max_prime,
            "violations": dict(self.violations),
        }

    @classmethod
    def from_json(cls, obj) -> "CensusTally":
        return cls(
            Fraction(obj["g"]),
            CensusSpec.from_json(obj["spec"]),
            {tuple(k): np.array(v, dtype=np.int64) for k, v in obj["counts"]},
            {int(k): np.array(v, dtype=np.int64) for k, v in obj["index_counts"]},
            obj["skipped"],
            obj["total"],
            obj["max_prime"],
            dict(obj["violations"]),
        )

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()

    def __eq__(self, other):
        return isinstance(other, CensusTally) and self.to_json() == other.to_json()


@lru_cache(maxsize=2)
def _spf(limit: int) -> np.ndarray:
    return smallest_factor_table(limit)


def _factor_pm1(p: int, spf) -> Factorization:
    if spf is None:
        return factorize(p - 1)
    n, pairs = p - 1, []
    while n > 1:
        q = int(spf[n])
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        pairs.append((q, e))
    return Factorization(tuple(pairs))


def tally_primes(g: Fraction, ps: np.ndarray, spec: CensusSpec) -> CensusTally:
    """Census of one block of primes."""
    g1, g2 = g.numerator, g.denominator
    top = int(ps[-1]) if len(ps) else 0
    spf = _spf(1 << max(16, top.bit_length())) if top <= _SPF_LIMIT else None
    counted, ords, idxs = [], [], []
    viol = {k: 0 for k in VIOLATIONS}
    skipped = 0
    for p in ps.tolist():
        a, b = g1 % p, g2 % p
        if a == 0 or b == 0:
            skipped += 1
            continue
        t = a * pow(b, -1, p) % p
        o = multiplicative_order(t, p, _factor_pm1(p, spf)) if p > 2 else 1
        idx = (p - 1) // o
        if o * idx != p - 1:
            viol["ord_times_index"] += 1
        if p % 4 == 3:
            if o % 4 == 0:
                viol["p3mod4_ord0mod4"] += 1
            if (o % 4 == 2) != (legendre(t, p) == -1):
                viol["p3mod4_legendre"] += 1
        if p % 3 == 2 and o % 3 == 0:
            viol["p2mod3_ord0mod3"] += 1
        counted.append(p)
        ords.append(o)
        idxs.append(idx)
    P = np.array(counted, dtype=np.int64)
    O = np.array(ords, dtype=np.int64)
    I = np.array(idxs, dtype=np.int64)
    out = CensusTally.empty(g, spec)
    for d1, d2 in spec.pairs:
        flat = np.bincount((P % d1) * d2 + O % d2, minlength=d1 * d2)
        out.counts[(d1, d2)] += flat.reshape(d1, d2)
    for d in spec.index_moduli:
        out.index_counts[d] += np.bincount(I % d, minlength=d)
    out.skipped = skipped
    out.total = len(ps)
    out.max_prime = top
    out.violations = viol
    return out


def _worker(args):
    g, ps, spec = args
    return tally_primes(Fraction(g), ps, spec)


def _run_key(g: Fraction, n_primes: int, spec: CensusSpec) -> dict:
    return {"g": str(g), "n_primes": n_primes, "spec": spec.to_json(), "chunk": CHUNK}


def _write_checkpoint(path, key, done: int, tally: CensusTally, last_digest: str):
    body = {"version": CHECKPOINT_VERSION, "run": key, "chunks_done": done,
            "tally": tally.to_json(), "last_chunk_digest": last_digest}
    payload = json.dumps(body, sort_keys=True)
    body["hash"] = hashlib.sha256(payload.encode()).hexdigest()
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(body, fh, sort_keys=True)
    os.replace(tmp, path)


def _read_checkpoint(path, key):
    try:
        with open(path) as fh:
            body = json.load(fh)
        stored = body.pop("hash")
    except (OSError, ValueError, KeyError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest() != stored:
        raise CheckpointError(f"checkpoint {path} fails its content hash")
    if body.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint version {body.get('version')} is not supported")
    if body["run"] != key:
        raise CheckpointError("checkpoint belongs to a different run")
    return body["chunks_done"], CensusTally.from_json(body["tally"]), body["last_chunk_digest"]


def census_run(g, n_primes: int, spec: CensusSpec | None = None, jobs: int = 1,
               checkpoint: str | None = None) -> CensusTally:
    """Tally ord_g(p) and r_g(p) over the first ``n_primes`` primes."""
    g = parse_g(g)
    decompose(g)  # rejects -1, 0, 1
    if n_primes < 1:
        raise ValueError("n_primes must be positive")
    if n_primes > MAX_PRIME_COUNT:
        raise ValueError(f"n_primes exceeds the resource guard {MAX_PRIME_COUNT}")
    spec = spec or CensusSpec()
    ps = first_primes(n_primes)
    chunks = [ps[i : i + CHUNK] for i in range(0, len(ps), CHUNK)]
    key = _run_key(g, n_primes, spec)
    tally, done, last = CensusTally.empty(g, spec), 0, ""
    if checkpoint and os.path.exists(checkpoint):
        done, tally, last = _read_checkpoint(checkpoint, key)
        if done:
            # re-verify the last completed chunk before trusting the rest
            if tally_primes(g, chunks[done - 1], spec).digest() != last:
                raise CheckpointError("last completed chunk does not reproduce")
    todo = chunks[done:]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_worker, [(str(g), c, spec) for c in todo])
            for part in results:
                tally = tally.merge(part)
                done += 1
                if checkpoint:
                    _write_checkpoint(checkpoint, key, done, tally, part.digest())
    else:
        for c in todo:
            part = tally_primes(g, c, spec)
            tally = tally.merge(part)
            done += 1
            if checkpoint:
                _write_checkpoint(checkpoint, key, done, tally, part.digest())
    return tally


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RESORDER_JOBS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# comparisons with the closed forms


def census_compare(g, d: int, n_primes: int, jobs: int = 1, tally: CensusTally | None = None):
    """Rows (label, analytic DensityValue, empirical ratio) for each class and the difference."""
    from .densities import delta_order

    if d not in (3, 4):
        raise ValueError("d must be 3 or 4")
    gp = decompose(g)
    spec = CensusSpec(pairs=((1, d),), index_moduli=())
    if tally is None:
        tally = census_run(gp.g, n_primes, spec, jobs)
    rows = []
    for a in range(d):
        rows.append((f"delta({a},{d})", delta_order(gp, d, a), tally.order_ratio(d, a)))
    other = 2 if d == 3 else 3
    diff = delta_order(gp, d, 1) - delta_order(gp, d, other)
    rows.append((f"delta(1,{d})-delta({other},{d})", diff, tally.order_ratio(d, 1) - tally.order_ratio(d, other)))
    return rows, tally


def avg_local_density(d: int, n_primes: int) -> list[float]:
    """Average over the first n_primes primes of the local densities delta(p; a, d)."""
    if d < 1:
        raise ValueError("d must be positive")
    ps = first_primes(n_primes)
    top = int(ps[-1])
    spf = _spf(1 << max(16, top.bit_length())) if top <= _SPF_LIMIT else None
    sums = [[] for _ in range(d)]
    for p in ps.tolist():
        n = p - 1
        acc = [0] * d
        divs = [(1, 1)]  # (divisor, phi(divisor))
        for q, e in _factor_pm1(p, spf) if p > 2 else ():
            divs = [(r * q**k, f * (q - 1) * q ** (k - 1) if k else f) for r, f in divs for k in range(e + 1)]
        for r, f in divs:
            acc[r % d] += f
        for a in range(d):
            sums[a].append(acc[a] / n)
    return [math.fsum(s) / len(ps) for s in sums]


__all__ = [
    "CensusSpec",
    "CensusTally",
    "CheckpointError",
    "InvalidBase",
    "avg_local_density",
    "census_compare",
    "census_run",
    "default_jobs",
    "multiplicative_order",
    "tally_primes",
]
