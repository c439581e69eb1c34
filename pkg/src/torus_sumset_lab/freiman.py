"""Desk-scale scans of the Freiman-type structure conjectures in Z_p.

Three statements are checked, each of the form "small sumset implies that
some dilate n*A sits in a short interval":

* ``sz``: |A+A| = 2|A| + r - 1 <= p/2 + |A| - 2 and r <= |A| - 3 imply
  that some n*A lies in an interval of length |A| + r;
* ``pair``: the two-set version, which also asks for an interval of length
  at least |A| + |B| - 1 inside n*(A+B);
* ``trio``: the symmetric three-set version.

Exhaustive scans walk orbit representatives (affine orbits for the first
set, translation classes for the others) and account for every subset.
Sampled scans draw instances from a seeded generator in fixed-size blocks,
so the result does not depend on how blocks are spread over workers.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .zp import ZpSet, _check_prime, _cover, _dilate_bits, _elements, _rotl, _runs_bits, _sumset_bits

DEFAULT_LIMITS = {"sz": 23, "pair": 11, "trio": 7}
LIMIT_ENV = "TSL_EXHAUSTIVE_LIMIT"
SAMPLE_BLOCK = 1 << 15
WITNESS_SAMPLE = 5
MAX_FAILURES = 100

REGIME_NOTE = (
    "the proven small-r regimes (r <= c p - 1.2 with c = 3.1e-1549, or p > 2^94) are empty at "
    "this p; the scan tests the full conjectured statement instead"
)


class ExhaustiveLimitError(ValueError):
    pass


def exhaustive_limits(override: Optional[str] = None) -> dict:
    """Limits per scan, from ``override`` or the environment, else the defaults.

    Accepts a single integer for all three scans or ``sz/pair/trio``.
    """
    text = override if override is not None else os.environ.get(LIMIT_ENV)
    limits = dict(DEFAULT_LIMITS)
    if not text:
        return limits
    parts = str(text).split("/")
    try:
        values = [int(x) for x in parts]
    except ValueError:
        raise ValueError(f"bad exhaustive limit {text!r}; expected N or N/N/N") from None
    if len(values) == 1:
        values = values * 3
    if len(values) != 3:
        raise ValueError(f"bad exhaustive limit {text!r}; expected N or N/N/N")
    return dict(zip(("sz", "pair", "trio"), values))


@dataclass
class Certificate:
    conjecture: str
    p: int
    mode: str
    kind: str
    orbits_scanned: int
    admissible: int
    failures: list = field(default_factory=list)
    witness_sample: list = field(default_factory=list)
    wall_ms: int = 0
    seed: Optional[int] = None
    budget: Optional[int] = None
    subsets_accounted: Optional[int] = None
    admissible_weighted: Optional[int] = None
    failure_count: int = 0
    note: str = REGIME_NOTE

    @property
    def verified(self) -> bool:
        return self.kind in ("verified", "verified-sampled")

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_ms")
        return d

    def to_json(self, timing: bool = True, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=indent)


# --- orbit enumeration --------------------------------------------------------


def _orbit_images(bits: int, p: int, affine: bool = True) -> np.ndarray:
    """All images a*A + b as int64 masks (a != 0 if ``affine``, else a = 1); p <= 62."""
    if not bits:
        return np.zeros(1, dtype=np.int64)
    e = np.asarray(_elements(bits, p), dtype=np.int64)
    a = np.arange(1, p, dtype=np.int64) if affine else np.ones(1, dtype=np.int64)
    b = np.arange(p, dtype=np.int64)
    img = (a[:, None, None] * e[None, None, :] + b[None, :, None]) % p
    return np.left_shift(np.int64(1), img).sum(axis=2).ravel()


def affine_canonical(A: ZpSet) -> ZpSet:
    """Least bitmask (as an integer) over the orbit {a*A + b : a != 0}."""
    p = A.p
    if p <= 62:
        return ZpSet(p, int(_orbit_images(A.bits, p).min()))
    best = None
    for a in range(1, p):
        d = _dilate_bits(A.bits, a, p)
        for b in range(p):
            m = _rotl(d, b, p)
            if best is None or m < best:
                best = m
    return ZpSet(p, best if best is not None else 0)


def enumerate_orbits(p: int, affine: bool = True, chunk: int = 4096):
    """Orbit representatives in increasing order with their orbit sizes.

    Each representative is the least mask of its orbit. The sizes sum to 2^p.
    """
    _check_prime(p)
    if p > 30:
        raise ExhaustiveLimitError(f"orbit enumeration needs 2^{p} flags; p = {p} is too large")
    total = 1 << p
    seen = np.zeros(total, dtype=bool)
    reps, sizes = [], []
    pos = 0
    while pos < total:
        block = seen[pos : pos + chunk]
        off = int(block.argmin())
        if block[off]:
            pos += block.size
            continue
        rep = pos + off
        img = np.unique(_orbit_images(rep, p, affine))
        seen[img] = True
        reps.append(rep)
        sizes.append(int(img.size))
        pos = rep + 1
    return reps, sizes


# --- hypotheses and conclusions at the bitset level ------------------------------


def _cover_len(bits: int, p: int) -> int:
    c = _cover(bits, p)
    return p if c is None else c[1]


def sz_r(bits: int, p: int) -> Optional[int]:
    """r for an admissible instance of the one-set statement, else None."""
    c = bits.bit_count()
    ss = _sumset_bits(bits, bits, p).bit_count()
    r = ss - 2 * c + 1
    if r >= 0 and 2 * ss <= p + 2 * c - 4 and r <= c - 3:
        return r
    return None


def _sz_witness(bits: int, p: int, r: int):
    bound = bits.bit_count() + r
    for n in range(1, (p - 1) // 2 + 1):
        c = _cover(_dilate_bits(bits, n, p), p)
        if c is not None and c[1] <= bound:
            return n, c
    return None


def check_sz_conclusion(A: ZpSet, r: int):
    """First n in 1..(p-1)/2 with n*A inside an interval of length <= |A| + r.

    Returns ``(n, (start, length))`` or None. Scanning half the residues is
    enough because n and -n give covers of equal length.
    """
    if not A.bits:
        raise ValueError("A must be non-empty")
    return _sz_witness(A.bits, A.p, r)


def pair_r(a: int, b: int, p: int) -> Optional[int]:
    ca, cb = a.bit_count(), b.bit_count()
    if cb == 0 or ca < cb:
        return None
    s = _sumset_bits(a, b, p).bit_count()
    r = s - ca - cb + 1
    if r >= 0 and 2 * s <= p + ca + cb - 4 and r <= cb - 3:
        return r
    return None


def _longest_run(bits: int, p: int):
    runs = _runs_bits(bits, p)
    if not runs:
        return None
    return max(runs, key=lambda st: (st[1], -st[0]))


def _pair_witness(a: int, b: int, p: int, r: int):
    ca, cb = a.bit_count(), b.bit_count()
    ab = _sumset_bits(a, b, p)
    for n in range(1, (p - 1) // 2 + 1):
        I = _cover(_dilate_bits(a, n, p), p)
        if I is None or I[1] > ca + r:
            continue
        J = _cover(_dilate_bits(b, n, p), p)
        if J is None or J[1] > cb + r:
            continue
        K = _longest_run(_dilate_bits(ab, n, p), p)
        if K is not None and K[1] >= ca + cb - 1:
            return n, I, J, K
    return None


def check_pair_conclusion(A: ZpSet, B: ZpSet, r: int):
    """First n serving all three intervals I ⊇ n*A, J ⊇ n*B, K ⊆ n*(A+B)."""
    return _pair_witness(A.bits, B.bits, A.p, r)


def trio_r(a1: int, a2: int, a3: int, p: int) -> Optional[int]:
    """Least r >= 0 making the three-set hypotheses hold, or None if none does."""
    cs = (a1.bit_count(), a2.bit_count(), a3.bit_count())
    r = max(0, p - sum(cs) + 1)
    if min(cs) <= r + 2:
        return None
    if _sumset_bits(_sumset_bits(a1, a2, p), a3, p).bit_count() >= p:
        return None
    return r


def _trio_witness(sets, p: int, r: int):
    for n in range(1, (p - 1) // 2 + 1):
        out = []
        for s in sets:
            c = _cover(_dilate_bits(s, n, p), p)
            if c is None or c[1] > s.bit_count() + r:
                break
            out.append(c)
        else:
            return n, out
    return None


def check_trio_conclusion(A1: ZpSet, A2: ZpSet, A3: ZpSet, r: int):
    return _trio_witness((A1.bits, A2.bits, A3.bits), A1.p, r)


# --- records --------------------------------------------------------------------


def _el(bits: int, p: int) -> list:
    return _elements(bits, p)


def _sz_record(bits, p, r, w):
    rec = {"A": _el(bits, p), "r": r}
    if w is not None:
        rec.update(n=w[0], interval=list(w[1]))
    return rec


def _pair_record(a, b, p, r, w):
    rec = {"A": _el(a, p), "B": _el(b, p), "r": r}
    if w is not None:
        rec.update(n=w[0], I=list(w[1]), J=list(w[2]), K=list(w[3]))
    return rec


def _trio_record(sets, p, r, w):
    rec = {f"A{j + 1}": _el(s, p) for j, s in enumerate(sets)}
    rec["r"] = r
    if w is not None:
        rec["n"] = w[0]
        for j, c in enumerate(w[1]):
            rec[f"I{j + 1}"] = list(c)
    return rec


class _Tally:
    def __init__(self):
        self.scanned = 0
        self.admissible = 0
        self.admissible_weighted = 0
        self.accounted = 0
        self.failures: list = []
        self.failure_count = 0
        self.witnesses: list = []

    def merge(self, other: _Tally) -> None:
        self.scanned += other.scanned
        self.admissible += other.admissible
        self.admissible_weighted += other.admissible_weighted
        self.accounted += other.accounted
        self.failure_count += other.failure_count
        room = MAX_FAILURES - len(self.failures)
        self.failures.extend(other.failures[: max(room, 0)])
        room = WITNESS_SAMPLE - len(self.witnesses)
        self.witnesses.extend(other.witnesses[: max(room, 0)])

    def hit(self, weight, record, ok):
        self.admissible += 1
        self.admissible_weighted += weight
        if ok:
            if len(self.witnesses) < WITNESS_SAMPLE:
                self.witnesses.append(record)
        else:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(record)


def _split(items: list, jobs: int) -> list:
    jobs = max(1, min(jobs, len(items) or 1))
    step = -(-len(items) // jobs) if items else 1
    return [items[i : i + step] for i in range(0, len(items), step)] or [[]]


def _run_parts(worker, parts: list, jobs: int) -> _Tally:
    total = _Tally()
    if jobs <= 1 or len(parts) <= 1:
        results = [worker(part) for part in parts]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(worker, parts))
    for t in results:
        total.merge(t)
    return total


def _kind(t: _Tally, sampled: bool) -> str:
    if t.failure_count:
        return "counterexample"
    if sampled:
        return "verified-sampled" if t.admissible else "budget-exhausted"
    return "verified"


def _limit_check(name: str, p: int, limit: Optional[int]) -> None:
    lim = exhaustive_limits()[name] if limit is None else limit
    if p > lim:
        raise ExhaustiveLimitError(
            f"p = {p} exceeds the exhaustive limit {lim} for the {name} scan; "
            "pass a sample budget for a sampled scan"
        )


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


# --- workers (module level so they can be pickled) --------------------------------


def _sz_exhaustive_worker(args):
    p, items = args
    t = _Tally()
    for rep, size in items:
        t.scanned += 1
        t.accounted += size
        r = sz_r(rep, p)
        if r is None:
            continue
        w = _sz_witness(rep, p, r)
        t.hit(size, _sz_record(rep, p, r, w), w is not None)
    return t


def _pair_exhaustive_worker(args):
    p, a_items, necklaces = args
    t = _Tally()
    for a, asize in a_items:
        for b, bsize in necklaces:
            t.scanned += 1
            t.accounted += asize * bsize
            r = pair_r(a, b, p)
            if r is None:
                continue
            w = _pair_witness(a, b, p, r)
            t.hit(asize * bsize, _pair_record(a, b, p, r, w), w is not None)
    return t


def _trio_exhaustive_worker(args):
    p, a_items, necklaces = args
    t = _Tally()
    for a1, s1 in a_items:
        for a2, s2 in necklaces:
            for a3, s3 in necklaces:
                t.scanned += 1
                weight = s1 * s2 * s3
                t.accounted += weight
                r = trio_r(a1, a2, a3, p)
                if r is None:
                    continue
                sets = (a1, a2, a3)
                w = _trio_witness(sets, p, r)
                t.hit(weight, _trio_record(sets, p, r, w), w is not None)
    return t


# --- sampling ----------------------------------------------------------------------


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _structured_masks(rng, count: int, p: int, dil=None, sizes=None) -> list:
    """Random subsets of short intervals, dilated and translated; a quarter are uniform.

    ``dil`` fixes the dilation per row (to correlate several sets); ``sizes``
    fixes the cardinality per row.
    """
    c = rng.integers(1, p + 1, size=count) if sizes is None else sizes
    slack = rng.integers(0, 4, size=count)
    L = np.minimum(c + slack, p)
    keys = rng.random((count, p))
    cols = np.arange(p)[None, :]
    keys[cols >= L[:, None]] = 2.0
    ranks = keys.argsort(axis=1).argsort(axis=1)
    chosen = ranks < c[:, None]
    a = rng.integers(1, p, size=count) if dil is None else dil
    b = rng.integers(0, p, size=count)
    pos = (a[:, None] * np.arange(p)[None, :] + b[:, None]) % p
    uniform = rng.random(count) < 0.25
    coin = rng.random((count, p)) < 0.5
    if p <= 62:
        weights = np.left_shift(np.int64(1), pos)
        structured = np.where(chosen, weights, 0).sum(axis=1)
        plain = np.where(coin, np.left_shift(np.int64(1), np.arange(p)), 0).sum(axis=1)
        return np.where(uniform, plain, structured).tolist()
    out = []
    for i in range(count):
        idx = np.flatnonzero(coin[i]) if uniform[i] else pos[i][chosen[i]]
        m = 0
        for j in idx.tolist():
            m |= 1 << j
        out.append(m)
    return out


def _sample_worker(args):
    name, p, seed, block, count = args
    rng = _block_rng(seed, block)
    t = _Tally()
    if name == "sz":
        for a in _structured_masks(rng, count, p):
            t.scanned += 1
            r = sz_r(a, p) if a else None
            if r is None:
                continue
            w = _sz_witness(a, p, r)
            t.hit(1, _sz_record(a, p, r, w), w is not None)
    elif name == "pair":
        dil = rng.integers(1, p, size=count)
        xs = _structured_masks(rng, count, p, dil=dil)
        ys = _structured_masks(rng, count, p, dil=dil)
        for a, b in zip(xs, ys):
            if a.bit_count() < b.bit_count():
                a, b = b, a
            t.scanned += 1
            r = pair_r(a, b, p)
            if r is None:
                continue
            w = _pair_witness(a, b, p, r)
            t.hit(1, _pair_record(a, b, p, r, w), w is not None)
    else:
        dil = rng.integers(1, p, size=count)
        cols = [_structured_masks(rng, count, p, dil=dil) for _ in range(3)]
        for sets in zip(*cols):
            t.scanned += 1
            r = trio_r(*sets, p)
            if r is None:
                continue
            w = _trio_witness(sets, p, r)
            t.hit(1, _trio_record(sets, p, r, w), w is not None)
    return t


class _TrioTables:
    """Lookup tables over all 2^p masks, for vectorized trio sampling at small p."""

    def __init__(self, p: int):
        n = 1 << p
        masks = np.arange(n, dtype=np.int64)
        full = n - 1
        self.p = p
        self.pop = np.zeros(n, dtype=np.int64)
        for j in range(p):
            self.pop += (masks >> j) & 1
        sums = np.zeros((n, n), dtype=np.uint16)
        for j in range(p):
            rot = ((masks << j) | (masks >> (p - j))) & full if j else masks
            has = ((masks >> j) & 1).astype(bool)
            sums[:, has] |= rot[:, None].astype(np.uint16)
        self.sums = sums
        self.cover = np.array([_cover_len(int(m), p) if m else 0 for m in range(n)], dtype=np.int64)
        half = (p - 1) // 2
        self.dil = np.zeros((half + 1, n), dtype=np.int64)
        for k in range(1, half + 1):
            img = np.zeros(n, dtype=np.int64)
            for j in range(p):
                img |= ((masks >> j) & 1) << (k * j % p)
            self.dil[k] = img

    def scan(self, a1, a2, a3):
        p = self.p
        c1, c2, c3 = self.pop[a1], self.pop[a2], self.pop[a3]
        r = np.maximum(0, p - (c1 + c2 + c3) + 1)
        total = self.pop[self.sums[self.sums[a1, a2].astype(np.int64), a3].astype(np.int64)]
        adm = (np.minimum(np.minimum(c1, c2), c3) > r + 2) & (total < p)
        witness_n = np.zeros(a1.size, dtype=np.int64)
        for n in range(self.dil.shape[0] - 1, 0, -1):
            ok = (
                (self.cover[self.dil[n][a1]] <= c1 + r)
                & (self.cover[self.dil[n][a2]] <= c2 + r)
                & (self.cover[self.dil[n][a3]] <= c3 + r)
            )
            witness_n[ok] = n
        return adm, r, witness_n


_TABLES: dict = {}


def _trio_table_worker(args):
    p, seed, block, count = args
    if p not in _TABLES:
        _TABLES[p] = _TrioTables(p)
    tb = _TABLES[p]
    rng = _block_rng(seed, block)
    dil = rng.integers(1, p, size=count)
    cols = [np.array(_structured_masks(rng, count, p, dil=dil), dtype=np.int64) for _ in range(3)]
    adm, r, wn = tb.scan(*cols)
    t = _Tally()
    t.scanned = count
    for i in np.flatnonzero(adm).tolist():
        sets = (int(cols[0][i]), int(cols[1][i]), int(cols[2][i]))
        ri = int(r[i])
        n = int(wn[i])
        w = _trio_witness(sets, p, ri) if n else None
        t.hit(1, _trio_record(sets, p, ri, w), n > 0)
    return t


TABLE_LIMIT = 11


def _sampled(name: str, p: int, budget: int, seed: int, jobs: int) -> _Tally:
    blocks = []
    left, i = budget, 0
    while left > 0:
        n = min(SAMPLE_BLOCK, left)
        blocks.append((i, n))
        left -= n
        i += 1
    if name == "trio" and p <= TABLE_LIMIT:
        tasks = [(p, seed, b, n) for b, n in blocks]
        worker = _trio_table_worker
    else:
        tasks = [(name, p, seed, b, n) for b, n in blocks]
        worker = _sample_worker
    total = _Tally()
    if jobs <= 1 or len(tasks) <= 1:
        results = map(worker, tasks)
    else:
        ex = ProcessPoolExecutor(max_workers=jobs)
        results = list(ex.map(worker, tasks))
        ex.shutdown()
    for t in results:
        total.merge(t)
    return total


# --- public scans ---------------------------------------------------------------------


def _certificate(name, p, mode, t: _Tally, t0, seed=None, budget=None) -> Certificate:
    sampled = mode == "sampled"
    return Certificate(
        conjecture=name,
        p=p,
        mode=mode,
        kind=_kind(t, sampled),
        orbits_scanned=t.scanned,
        admissible=t.admissible,
        failures=t.failures,
        witness_sample=t.witnesses,
        wall_ms=_ms(t0),
        seed=seed,
        budget=budget,
        subsets_accounted=None if sampled else t.accounted,
        admissible_weighted=None if sampled else t.admissible_weighted,
        failure_count=t.failure_count,
    )


def verify_conjecture_sz(
    p: int, budget: Optional[int] = None, seed: int = 0, jobs: int = 1, limit: Optional[int] = None
) -> Certificate:
    """Scan the one-set statement over Z_p: exhaustively, or ``budget`` samples."""
    _check_prime(p)
    t0 = time.perf_counter()
    if budget is not None:
        return _certificate("sz", p, "sampled", _sampled("sz", p, budget, seed, jobs), t0, seed, budget)
    _limit_check("sz", p, limit)
    reps, sizes = enumerate_orbits(p)
    parts = [(p, part) for part in _split(list(zip(reps, sizes)), jobs)]
    t = _run_parts(_sz_exhaustive_worker, parts, jobs)
    if t.accounted != 1 << p:
        raise AssertionError("orbit sizes do not account for every subset")
    return _certificate("sz", p, "exhaustive", t, t0)


def verify_conjecture_pair(
    p: int, budget: Optional[int] = None, seed: int = 0, jobs: int = 1, limit: Optional[int] = None
) -> Certificate:
    _check_prime(p)
    t0 = time.perf_counter()
    if budget is not None:
        t = _sampled("pair", p, budget, seed, jobs)
        return _certificate("pair", p, "sampled", t, t0, seed, budget)
    _limit_check("pair", p, limit)
    reps, sizes = enumerate_orbits(p)
    necklaces = list(zip(*enumerate_orbits(p, affine=False)))
    parts = [(p, part, necklaces) for part in _split(list(zip(reps, sizes)), jobs)]
    t = _run_parts(_pair_exhaustive_worker, parts, jobs)
    if t.accounted != 1 << (2 * p):
        raise AssertionError("pair accounting does not cover every pair")
    return _certificate("pair", p, "exhaustive", t, t0)


def verify_conjecture_trio(
    p: int, budget: Optional[int] = None, seed: int = 0, jobs: int = 1, limit: Optional[int] = None
) -> Certificate:
    _check_prime(p)
    t0 = time.perf_counter()
    if budget is not None:
        t = _sampled("trio", p, budget, seed, jobs)
        return _certificate("trio", p, "sampled", t, t0, seed, budget)
    _limit_check("trio", p, limit)
    reps, sizes = enumerate_orbits(p)
    necklaces = list(zip(*enumerate_orbits(p, affine=False)))
    parts = [(p, part, necklaces) for part in _split(list(zip(reps, sizes)), jobs)]
    t = _run_parts(_trio_exhaustive_worker, parts, jobs)
    if t.accounted != 1 << (3 * p):
        raise AssertionError("trio accounting does not cover every triple")
    return _certificate("trio", p, "exhaustive", t, t0)


# --- trio to pair deduction -------------------------------------------------------------


@dataclass(frozen=True)
class Deduction:
    shift: int
    complement_set: ZpSet
    s: int
    n: Optional[int]
    pair_form_holds: bool
    trio_conclusion_holds: bool

    @property
    def consistent(self) -> bool:
        return not self.pair_form_holds or self.trio_conclusion_holds


def deduce_pair_from_trio(A1: ZpSet, A2: ZpSet, A3: ZpSet) -> Deduction:
    """Run the three-set instance through its two-set reformulation.

    A3 is translated so that 0 is not in A1 + A2 + A3; then A3 lies in
    C = -(A1+A2)^c. With s = |A1+A2| - |A1| - |A2| + 1, an n putting A1, A2
    and C in intervals of lengths |A1|+s, |A2|+s, |C|+s must also serve the
    three-set conclusion for the original sets.
    """
    p = A1.p
    r = trio_r(A1.bits, A2.bits, A3.bits, p)
    if r is None:
        raise ValueError("not an admissible three-set instance")
    total = A1 + A2 + A3
    x = total.complement().elements()[0]
    A3t = A3.translate(-x)
    AB = A1 + A2
    C = AB.complement().negate()
    if A3t.bits & ~C.bits:
        raise AssertionError("translated A3 is not inside -(A1+A2)^c")
    s = len(AB) - len(A1) - len(A2) + 1
    if s > r:
        raise AssertionError(f"s = {s} exceeds r = {r}")
    w = _trio_witness((A1.bits, A2.bits, C.bits), p, s) if C.bits else None
    if w is None:
        return Deduction(-x % p, C, s, None, False, False)
    n = w[0]
    ok = all(
        _cover_len(_dilate_bits(S.bits, n, p), p) <= len(S) + r for S in (A1, A2, A3)
    )
    return Deduction(-x % p, C, s, n, True, ok)


# --- independent re-check --------------------------------------------------------------


def _plain_sum(X, Y, p):
    return {(x + y) % p for x in X for y in Y}


def _in_interval(X, start, length, p):
    return all((x - start) % p < length for x in X)


def _plain_covers(X, p):
    """Lengths of every cyclic interval containing X, by brute force."""
    best = p
    for start in range(p):
        for length in range(1, p + 1):
            if _in_interval(X, start, length, p):
                best = min(best, length)
                break
    return best


def _plain_run(X, start, length, p):
    return all((start + j) % p in X for j in range(length))


def recheck_certificate(cert) -> bool:
    """Re-verify every recorded witness and failure using plain Python sets.

    Accepts a :class:`Certificate`, its dict, or its JSON text.
    """
    if isinstance(cert, Certificate):
        d = cert.to_dict()
    elif isinstance(cert, str):
        d = json.loads(cert)
    else:
        d = cert
    p, name = d["p"], d["conjecture"]
    for rec in d["witness_sample"]:
        if not _recheck_record(name, p, rec, witness=True):
            return False
    for rec in d["failures"]:
        if not _recheck_record(name, p, rec, witness=False):
            return False
    expect_fail = d["kind"] == "counterexample"
    return expect_fail == bool(d["failures"])


def _recheck_record(name, p, rec, witness: bool) -> bool:
    r = rec["r"]
    if name == "sz":
        A = set(rec["A"])
        ss = len(_plain_sum(A, A, p))
        if not (ss == 2 * len(A) + r - 1 and 2 * ss <= p + 2 * len(A) - 4 and 0 <= r <= len(A) - 3):
            return False
        if witness:
            n = rec["n"]
            st, ln = rec["interval"]
            return ln <= len(A) + r and _in_interval({n * a % p for a in A}, st, ln, p)
        return all(_plain_covers({n * a % p for a in A}, p) > len(A) + r for n in range(1, p))
    if name == "pair":
        A, B = set(rec["A"]), set(rec["B"])
        AB = _plain_sum(A, B, p)
        if not (
            len(A) >= len(B)
            and len(AB) == len(A) + len(B) + r - 1
            and 2 * len(AB) <= p + len(A) + len(B) - 4
            and 0 <= r <= len(B) - 3
        ):
            return False
        if witness:
            n = rec["n"]
            nA, nB = {n * a % p for a in A}, {n * b % p for b in B}
            nAB = {n * x % p for x in AB}
            (i0, il), (j0, jl), (k0, kl) = rec["I"], rec["J"], rec["K"]
            return (
                il <= len(A) + r
                and jl <= len(B) + r
                and kl >= len(A) + len(B) - 1
                and _in_interval(nA, i0, il, p)
                and _in_interval(nB, j0, jl, p)
                and _plain_run(nAB, k0, kl, p)
            )
        target = len(A) + len(B) - 1
        for n in range(1, p):
            nA, nB = {n * a % p for a in A}, {n * b % p for b in B}
            nAB = {n * x % p for x in AB}
            if _plain_covers(nA, p) <= len(A) + r and _plain_covers(nB, p) <= len(B) + r:
                if any(_plain_run(nAB, s, target, p) for s in range(p)):
                    return False
        return True
    sets = [set(rec[f"A{j}"]) for j in (1, 2, 3)]
    total = _plain_sum(_plain_sum(sets[0], sets[1], p), sets[2], p)
    sizes = [len(S) for S in sets]
    if not (min(sizes) > r + 2 and sum(sizes) > p - r and len(total) < p and r >= 0):
        return False
    if witness:
        n = rec["n"]
        for j, S in enumerate(sets, start=1):
            st, ln = rec[f"I{j}"]
            if ln > len(S) + r or not _in_interval({n * x % p for x in S}, st, ln, p):
                return False
        return True
    for n in range(1, p):
        if all(_plain_covers({n * x % p for x in S}, p) <= len(S) + r for S in sets):
            return False
    return True
