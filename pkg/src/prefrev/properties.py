"""Decision procedures with witnesses: ISP, GSP, PR, APR, dictatorship.

Every checker scans a fixed canonical order (profiles by index, pairs
lexicographic, coalitions by size then lexicographic, deviations by
canonical order) and reports the first failure it meets, so witnesses are
reproducible.  Internal parallelism partitions the scan into fixed blocks
whose results are reduced to the canonical minimum; the reported witness
and the ``checked`` count are therefore independent of the worker count and
schedule.

``checked`` is the number of elementary cases up to and including the
witness (or the full case space when the property holds).

Definitions implemented, for an outcome pair x = phi(P), y = phi(Q):

* ISP fails if some voter v and deviation Q_v make phi(Q_v, P_-v) strictly
  better than phi(P) under P_v.
* GSP fails if some non-empty coalition D and deviation Q_D (every member
  changing their report; restricting to that loses no manipulations) give
  every member a strict gain under their true order.
* PR holds if whenever x != y there is one voter v with x weakly best
  against y under P_v, y weakly best against x under Q_v, and P_v != Q_v.
* APR holds if both conditions hold but possibly at two different voters,
  each of whom changed their report.  APR is equivalent to GSP.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import ArgumentError, ResourceGuardError
from .orders import WeakOrder, format_order
from .domains import DEFAULT_PROFILE_GUARD, Domain
from .scf import Profile, Scf, evaluate, profile_at, profile_strides, tabulate

#: Pairwise scans ((P, Q) pairs, and the equally sized normalized GSP
#: deviation space) get their own ceilings on top of the profile guard.
DEFAULT_PAIR_GUARD = 2_000_000_000
DEFAULT_GSP_GUARD = 100_000_000

_ISP_BLOCK = 2048
_PAIR_BLOCK = 256


# ---------------------------------------------------------------------------
# Witnesses and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ManipulationWitness:
    """A coalition (possibly a single voter) that gains by misreporting.

    Every member's deviation differs from their truthful report, and every
    member strictly prefers ``outcome_dev`` to ``outcome_true`` under their
    truthful order.
    """

    coalition: tuple[int, ...]
    truthful: Profile
    deviation: tuple[WeakOrder, ...]
    outcome_true: int
    outcome_dev: int

    def deviated_profile(self) -> Profile:
        return self.truthful.replace_many(dict(zip(self.coalition, self.deviation)))


@dataclass(frozen=True)
class VoterAnalysis:
    voter: int
    weak_pref_p: bool  # phi(P) weakly best against phi(Q) under P_v
    weak_pref_q: bool  # phi(Q) weakly best against phi(P) under Q_v
    changed: bool


@dataclass(frozen=True)
class PrViolation:
    """An ordered profile pair with differing outcomes and no witnessing voter."""

    kind: str  # "pr" | "apr"
    profile_p: Profile
    profile_q: Profile
    outcome_p: int
    outcome_q: int
    analysis: tuple[VoterAnalysis, ...]


@dataclass(frozen=True)
class DictatorCounter:
    voter: int
    profile: Profile
    outcome: int


@dataclass
class PropertyReport:
    property: str
    holds: bool
    witness: Any
    checked: int
    elapsed: float
    scf: Scf = field(repr=False, compare=False, default=None)


# ---------------------------------------------------------------------------
# Domain context (cached per Domain instance)
# ---------------------------------------------------------------------------


class _Ctx:
    __slots__ = (
        "domain", "n", "k", "sizes", "strides", "count",
        "ranks", "np_ranks", "np_digits", "tops",
    )

    def __init__(self, domain: Domain):
        self.domain = domain
        self.n = domain.n
        self.k = domain.k
        self.sizes = tuple(len(fs) for fs in domain.feasible)
        self.strides = profile_strides(domain)
        self.count = domain.profile_count()
        self.ranks = tuple(
            tuple(order.ranks for order in fs) for fs in domain.feasible
        )
        self.np_ranks = None
        self.np_digits = None
        self.tops = None

    def build_numpy(self) -> None:
        if self.np_ranks is None:
            self.np_ranks = [
                np.array([order.ranks for order in fs], dtype=np.int8)
                for fs in self.domain.feasible
            ]
            idx = np.arange(self.count, dtype=np.int64)
            self.np_digits = [
                ((idx // self.strides[v]) % self.sizes[v]).astype(np.int32)
                for v in range(self.n)
            ]

    def build_tops(self) -> None:
        if self.tops is None:
            self.tops = tuple(
                tuple(order.top_set() for order in fs) for fs in self.domain.feasible
            )


_CTX_CACHE: dict[int, _Ctx] = {}


def _ctx_for(domain: Domain) -> _Ctx:
    ctx = _CTX_CACHE.get(id(domain))
    if ctx is None or ctx.domain is not domain:
        if len(_CTX_CACHE) > 64:
            _CTX_CACHE.clear()
        ctx = _Ctx(domain)
        _CTX_CACHE[id(domain)] = ctx
    return ctx


def _prepare(scf: Scf, max_profiles: int, want_list: bool = True):
    ctx = _ctx_for(scf.domain)
    table = tabulate(scf, max_profiles).table
    return ctx, table, table.tolist() if want_list else None


def _digits_at(sizes, index):
    digits = [0] * len(sizes)
    for v in range(len(sizes) - 1, -1, -1):
        digits[v] = index % sizes[v]
        index //= sizes[v]
    return digits


def _advance(digits, sizes) -> None:
    v = len(sizes) - 1
    while v >= 0:
        digits[v] += 1
        if digits[v] < sizes[v]:
            return
        digits[v] = 0
        v -= 1


# ---------------------------------------------------------------------------
# Deterministic block scanning
# ---------------------------------------------------------------------------


def _scan_blocks(num_items, cases_per_item, scan_block, parallelism, block_size):
    """Run ``scan_block(lo, hi) -> (scanned, payload|None)`` over fixed blocks.

    Returns ``(checked, payload)`` where ``checked`` is the canonical ordinal
    of the witness case (or the full case count).  The result does not depend
    on the block size or on the worker schedule: blocks before the first
    failing one are fully scanned by construction.
    """
    blocks = [
        (lo, min(lo + block_size, num_items))
        for lo in range(0, num_items, block_size)
    ]
    acc = 0
    if parallelism <= 1:
        for lo, hi in blocks:
            scanned, payload = scan_block(lo, hi)
            if payload is not None:
                return acc + scanned, payload
            acc += (hi - lo) * cases_per_item
        return acc, None
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        for (lo, hi), result in zip(blocks, pool.map(lambda b: scan_block(*b), blocks)):
            scanned, payload = result
            if payload is not None:
                return acc + scanned, payload
            acc += (hi - lo) * cases_per_item
    return acc, None


# ---------------------------------------------------------------------------
# ISP
# ---------------------------------------------------------------------------


def check_isp(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
) -> PropertyReport:
    """No single voter can gain by misreporting."""
    t0 = time.perf_counter()
    ctx, _, tbl = _prepare(scf, max_profiles)
    n, sizes, strides, ranks = ctx.n, ctx.sizes, ctx.strides, ctx.ranks
    cases_per_profile = sum(m - 1 for m in sizes)

    def scan_block(lo, hi):
        digits = _digits_at(sizes, lo)
        scanned = 0
        for pidx in range(lo, hi):
            out = tbl[pidx]
            for v in range(n):
                d = digits[v]
                rk = ranks[v][d]
                r_out = rk[out]
                base = pidx - d * strides[v]
                stride = strides[v]
                for w in range(sizes[v]):
                    if w == d:
                        continue
                    scanned += 1
                    dev = tbl[base + w * stride]
                    if rk[dev] < r_out:
                        return scanned, (pidx, v, w, out, dev)
            _advance(digits, sizes)
        return scanned, None

    checked, payload = _scan_blocks(
        ctx.count, cases_per_profile, scan_block, parallelism, _ISP_BLOCK
    )
    witness = None
    if payload is not None:
        pidx, v, w, out, dev = payload
        witness = ManipulationWitness(
            (v,), profile_at(scf.domain, pidx),
            (scf.domain.feasible[v][w],), out, dev,
        )
    return PropertyReport(
        "isp", payload is None, witness, checked, time.perf_counter() - t0, scf
    )


# ---------------------------------------------------------------------------
# GSP
# ---------------------------------------------------------------------------


def check_gsp(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
    max_cases: int = DEFAULT_GSP_GUARD,
) -> PropertyReport:
    """No coalition can make every member strictly better off.

    Only deviations where every coalition member changes their report are
    enumerated; a manipulation with a passive member induces one by the
    sub-coalition of active members, so nothing is lost.
    """
    t0 = time.perf_counter()
    ctx, _, tbl = _prepare(scf, max_profiles)
    n, sizes, strides, ranks = ctx.n, ctx.sizes, ctx.strides, ctx.ranks
    coalitions = [
        c for size in range(1, n + 1) for c in itertools.combinations(range(n), size)
    ]
    # Summed over all coalitions the normalized deviation space per profile
    # is exactly count - 1 (each deviation is a distinct profile).
    cases_per_profile = ctx.count - 1
    total = ctx.count * cases_per_profile
    if total > max_cases:
        raise ResourceGuardError(
            f"group manipulation scan needs {total} cases, guard is {max_cases}"
        )

    def scan_block(lo, hi):
        digits = _digits_at(sizes, lo)
        scanned = 0
        for pidx in range(lo, hi):
            out = tbl[pidx]
            for coalition in coalitions:
                if any(sizes[v] < 2 for v in coalition):
                    continue
                rows = [ranks[v][digits[v]] for v in coalition]
                options = [
                    [
                        (w - digits[v]) * strides[v]
                        for w in range(sizes[v])
                        if w != digits[v]
                    ]
                    for v in coalition
                ]
                for deltas in itertools.product(*options):
                    scanned += 1
                    dev = tbl[pidx + sum(deltas)]
                    if dev == out:
                        continue
                    if all(rk[dev] < rk[out] for rk in rows):
                        return scanned, (pidx, coalition, deltas, out, dev)
            _advance(digits, sizes)
        return scanned, None

    checked, payload = _scan_blocks(
        ctx.count, cases_per_profile, scan_block, parallelism, _ISP_BLOCK
    )
    witness = None
    if payload is not None:
        pidx, coalition, deltas, out, dev = payload
        digits = _digits_at(sizes, pidx)
        deviation = tuple(
            scf.domain.feasible[v][digits[v] + delta // strides[v]]
            for v, delta in zip(coalition, deltas)
        )
        witness = ManipulationWitness(
            coalition, profile_at(scf.domain, pidx), deviation, out, dev
        )
    return PropertyReport(
        "gsp", payload is None, witness, checked, time.perf_counter() - t0, scf
    )


# ---------------------------------------------------------------------------
# PR / APR (one shared pairwise scan)
# ---------------------------------------------------------------------------


def _pair_ordinal(lo, i, j, count):
    # Cases of a row are the count-1 columns j != i, scanned left to right.
    return (i - lo) * (count - 1) + j - (1 if j > i else 0) + 1


def _pair_scan(scf, wanted, parallelism, max_profiles, max_pairs):
    t0 = time.perf_counter()
    ctx, table, _ = _prepare(scf, max_profiles, want_list=False)
    count = ctx.count
    total = count * (count - 1)
    if total > max_pairs:
        raise ResourceGuardError(
            f"pairwise scan needs {total} ordered pairs, guard is {max_pairs}"
        )
    ctx.build_numpy()
    n = ctx.n
    r_own = [ctx.np_ranks[v][ctx.np_digits[v], table] for v in range(n)]

    def scan_block(lo, hi):
        ti = table[lo:hi]
        neq = table[None, :] != ti[:, None]
        pr_ok = np.zeros(neq.shape, dtype=bool)
        apr1 = np.zeros(neq.shape, dtype=bool)
        apr2 = np.zeros(neq.shape, dtype=bool)
        for v in range(n):
            rv, dv, own = ctx.np_ranks[v], ctx.np_digits[v], r_own[v]
            di = dv[lo:hi]
            w1 = own[lo:hi][:, None] <= rv[di[:, None], table[None, :]]
            w2 = own[None, :] <= rv[dv[None, :], ti[:, None]]
            ch = di[:, None] != dv[None, :]
            w1 &= ch
            w2 &= ch
            pr_ok |= w1 & w2
            apr1 |= w1
            apr2 |= w2
        found = {}
        if "pr" in wanted:
            viol = neq & ~pr_ok
            pos = int(viol.argmax())
            if viol.flat[pos]:
                i, j = lo + pos // count, pos % count
                found["pr"] = (_pair_ordinal(lo, i, j, count), (i, j))
        if "apr" in wanted:
            viol = neq & ~(apr1 & apr2)
            pos = int(viol.argmax())
            if viol.flat[pos]:
                i, j = lo + pos // count, pos % count
                found["apr"] = (_pair_ordinal(lo, i, j, count), (i, j))
        return found

    blocks = [
        (lo, min(lo + _PAIR_BLOCK, count)) for lo in range(0, count, _PAIR_BLOCK)
    ]
    pending = set(wanted)
    results: dict[str, tuple[int, tuple[int, int] | None]] = {}
    acc = 0

    def consume(block, found):
        nonlocal acc
        lo, hi = block
        for prop in list(pending):
            if prop in found:
                ordinal, pair = found[prop]
                results[prop] = (acc + ordinal, pair)
                pending.discard(prop)
        acc += (hi - lo) * (count - 1)

    if parallelism <= 1:
        for block in blocks:
            consume(block, scan_block(*block))
            if not pending:
                break
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            for block, found in zip(blocks, pool.map(lambda b: scan_block(*b), blocks)):
                consume(block, found)
                if not pending:
                    break
    for prop in pending:
        results[prop] = (total, None)

    elapsed = time.perf_counter() - t0
    reports = {}
    for prop in wanted:
        checked, pair = results[prop]
        witness = None
        if pair is not None:
            witness = _pr_violation(scf, prop, pair[0], pair[1], table)
        reports[prop] = PropertyReport(
            prop, pair is None, witness, checked, elapsed, scf
        )
    return reports


def _pr_violation(scf, kind, i, j, table) -> PrViolation:
    p = profile_at(scf.domain, i)
    q = profile_at(scf.domain, j)
    a, b = int(table[i]), int(table[j])
    analysis = tuple(
        VoterAnalysis(
            v,
            p[v].weakly_prefers(a, b),
            q[v].weakly_prefers(b, a),
            p[v] != q[v],
        )
        for v in range(scf.domain.n)
    )
    return PrViolation(kind, p, q, a, b, analysis)


def check_pr(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
    max_pairs: int = DEFAULT_PAIR_GUARD,
) -> PropertyReport:
    """Preference reversal: one voter witnesses both weak comparisons and changed."""
    return _pair_scan(scf, ("pr",), parallelism, max_profiles, max_pairs)["pr"]


def check_apr(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
    max_pairs: int = DEFAULT_PAIR_GUARD,
) -> PropertyReport:
    """Almost preference reversal: the two sides may be witnessed by different voters."""
    return _pair_scan(scf, ("apr",), parallelism, max_profiles, max_pairs)["apr"]


def check_pr_apr(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
    max_pairs: int = DEFAULT_PAIR_GUARD,
) -> dict[str, PropertyReport]:
    """Both pairwise properties from a single scan."""
    return _pair_scan(scf, ("pr", "apr"), parallelism, max_profiles, max_pairs)


# ---------------------------------------------------------------------------
# Dictatorship
# ---------------------------------------------------------------------------


def check_dictator(
    scf: Scf,
    *,
    parallelism: int = 1,
    max_profiles: int = DEFAULT_PROFILE_GUARD,
) -> PropertyReport:
    """Some voter always receives one of their top alternatives."""
    t0 = time.perf_counter()
    ctx, _, tbl = _prepare(scf, max_profiles)
    ctx.build_tops()
    sizes = ctx.sizes
    checked = 0
    counters: list[DictatorCounter] = []
    dictator = None
    for v in range(ctx.n):
        tops = ctx.tops[v]
        digits = _digits_at(sizes, 0)
        counter = None
        for pidx in range(ctx.count):
            checked += 1
            if tbl[pidx] not in tops[digits[v]]:
                counter = DictatorCounter(v, profile_at(scf.domain, pidx), tbl[pidx])
                break
            _advance(digits, sizes)
        if counter is None:
            dictator = v
            break
        counters.append(counter)
    holds = dictator is not None
    witness = dictator if holds else tuple(counters)
    return PropertyReport(
        "dictator", holds, witness, checked, time.perf_counter() - t0, scf
    )


# ---------------------------------------------------------------------------
# Witness re-validation (independent of the checker internals)
# ---------------------------------------------------------------------------


def revalidate_witness(scf: Scf, prop: str, witness: Any) -> bool:
    """Recompute a witness with plain :func:`evaluate` calls."""
    if prop in ("isp", "gsp"):
        w: ManipulationWitness = witness
        if not w.coalition or len(w.coalition) != len(set(w.coalition)):
            return False
        if prop == "isp" and len(w.coalition) != 1:
            return False
        if evaluate(scf, w.truthful) != w.outcome_true:
            return False
        deviated = w.deviated_profile()
        if evaluate(scf, deviated) != w.outcome_dev:
            return False
        for v, dev_order in zip(w.coalition, w.deviation):
            if dev_order == w.truthful[v]:
                return False
            if not w.truthful[v].strictly_prefers(w.outcome_dev, w.outcome_true):
                return False
        return True
    if prop in ("pr", "apr"):
        v: PrViolation = witness
        a = evaluate(scf, v.profile_p)
        b = evaluate(scf, v.profile_q)
        if a != v.outcome_p or b != v.outcome_q or a == b:
            return False
        for voter in range(scf.domain.n):
            wp = v.profile_p[voter].weakly_prefers(a, b)
            wq = v.profile_q[voter].weakly_prefers(b, a)
            ch = v.profile_p[voter] != v.profile_q[voter]
            rec = v.analysis[voter]
            if (wp, wq, ch) != (rec.weak_pref_p, rec.weak_pref_q, rec.changed):
                return False
        if v.kind == "pr":
            return not any(
                r.weak_pref_p and r.weak_pref_q and r.changed for r in v.analysis
            )
        return not (
            any(r.weak_pref_p and r.changed for r in v.analysis)
            and any(r.weak_pref_q and r.changed for r in v.analysis)
        )
    if prop == "dictator":
        if isinstance(witness, int):
            from .scf import iter_profiles

            return all(
                evaluate(scf, p) in p[witness].top_set()
                for p in iter_profiles(scf.domain)
            )
        counters: tuple[DictatorCounter, ...] = witness
        if sorted(c.voter for c in counters) != list(range(scf.domain.n)):
            return False
        return all(
            evaluate(scf, c.profile) == c.outcome
            and c.outcome not in c.profile[c.voter].top_set()
            for c in counters
        )
    raise ArgumentError(f"unknown property {prop!r}")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

CHECKERS: dict[str, Callable[..., PropertyReport]] = {
    "isp": check_isp,
    "gsp": check_gsp,
    "pr": check_pr,
    "apr": check_apr,
    "dictator": check_dictator,
}


def _profile_strs(profile: Profile, alts) -> list[str]:
    return [format_order(order, alts) for order in profile.orders]


def witness_to_dict(prop: str, witness: Any, scf: Scf):
    alts = scf.domain.alts
    if witness is None:
        return None
    if isinstance(witness, ManipulationWitness):
        return {
            "type": "manipulation",
            "coalition": [v + 1 for v in witness.coalition],
            "truthful": _profile_strs(witness.truthful, alts),
            "deviation": {
                str(v + 1): format_order(order, alts)
                for v, order in zip(witness.coalition, witness.deviation)
            },
            "outcome_true": alts.names[witness.outcome_true],
            "outcome_dev": alts.names[witness.outcome_dev],
        }
    if isinstance(witness, PrViolation):
        return {
            "type": "pr-violation",
            "kind": witness.kind,
            "profile_p": _profile_strs(witness.profile_p, alts),
            "profile_q": _profile_strs(witness.profile_q, alts),
            "outcome_p": alts.names[witness.outcome_p],
            "outcome_q": alts.names[witness.outcome_q],
            "analysis": [
                {
                    "voter": rec.voter + 1,
                    "weak_pref_p": rec.weak_pref_p,
                    "weak_pref_q": rec.weak_pref_q,
                    "changed": rec.changed,
                }
                for rec in witness.analysis
            ],
        }
    if isinstance(witness, int):
        return {"type": "dictator", "voter": witness + 1}
    return {
        "type": "dictator-failure",
        "candidates": [
            {
                "voter": c.voter + 1,
                "counter_profile": _profile_strs(c.profile, alts),
                "outcome": alts.names[c.outcome],
            }
            for c in witness
        ],
    }


def witness_from_dict(data: dict, scf: Scf):
    """Rebuild a witness from its serialized form (for replay/recheck)."""
    from .orders import parse_order

    alts = scf.domain.alts

    def _profile(items):
        return Profile(tuple(parse_order(text, alts) for text in items))

    kind = data["type"]
    if kind == "manipulation":
        coalition = tuple(v - 1 for v in data["coalition"])
        return ManipulationWitness(
            coalition,
            _profile(data["truthful"]),
            tuple(parse_order(data["deviation"][str(v + 1)], alts) for v in coalition),
            alts.index_of(data["outcome_true"]),
            alts.index_of(data["outcome_dev"]),
        )
    if kind == "pr-violation":
        p = _profile(data["profile_p"])
        q = _profile(data["profile_q"])
        analysis = tuple(
            VoterAnalysis(
                rec["voter"] - 1, rec["weak_pref_p"], rec["weak_pref_q"], rec["changed"]
            )
            for rec in data["analysis"]
        )
        return PrViolation(
            data["kind"], p, q,
            alts.index_of(data["outcome_p"]), alts.index_of(data["outcome_q"]),
            analysis,
        )
    if kind == "dictator":
        return data["voter"] - 1
    if kind == "dictator-failure":
        return tuple(
            DictatorCounter(
                c["voter"] - 1, _profile(c["counter_profile"]),
                alts.index_of(c["outcome"]),
            )
            for c in data["candidates"]
        )
    raise ArgumentError(f"unknown witness type {kind!r}")


def report_to_dict(report: PropertyReport, include_timing: bool = False) -> dict:
    """Canonical structured form; timing is volatile and off by default."""
    doc = {"property": report.property, "holds": report.holds}
    witness = witness_to_dict(report.property, report.witness, report.scf)
    if witness is not None:
        doc["witness"] = witness
    doc["checked"] = report.checked
    if include_timing:
        doc["elapsed_ms"] = round(report.elapsed * 1000.0, 3)
    return doc
