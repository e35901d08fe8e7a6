"""Exhaustive and randomized sweeps over Boolean functions.

Every check here is a proven inequality, so a failure means a defect in
this package. Sweeps stop at the first failing function and report it with
a serialized counterexample.

Per-function work is independent. With ``jobs > 1`` chunks run in worker
processes and results are merged in function order, so the report does not
depend on scheduling.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from . import kernels
from .core import MultilinearPoly, TruthTable, point_to_string, mask_to_string
from .errors import CapExceeded, InvalidParams
from .maxonomial import WordOracle, run_algorithm_a
from .measures import DEFAULT_LIMITS, Limits, MeasureReport, decision_tree_depth, ndeg, qe_lower_bound

ALL_CHECKS = (
    "theorem2",
    "theorem3",
    "theorem4_derived",
    "lemma1",
    "alg_a_bounds",
    "ndeg_bound",
    "average_case",
)
EXHAUSTIVE_MAX_N = 4
RNG_NAME = "numpy.random.PCG64"


# -- exact-query bound in derived form --------------------------------------

@dataclass(frozen=True)
class Theorem4Record:
    d: int
    deg: int
    qe_lower: int
    two_deg_cubed: int
    sixteen_qe_lower_cubed: int
    exact: bool
    consistent: bool

    def to_document(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "deg": self.deg,
            "qe_lower": self.qe_lower,
            "two_deg_cubed": self.two_deg_cubed,
            "sixteen_qe_lower_cubed": self.sixteen_qe_lower_cubed,
            "exact": self.exact,
            "consistent": self.consistent,
            "qe_computed": False,
        }


def derived_theorem4_report(report: MeasureReport) -> Theorem4Record:
    """Compare D against 16 * ceil(deg/2)**3, the bound reachable without Q_E.

    ``exact`` is set when deg is even, where 16 * qe_lower**3 equals 2 * deg**3;
    for odd deg the comparison is looser. True Q_E is never computed.
    """
    if report.deg is None or report.d is None:
        raise InvalidParams("report needs deg and d")
    deg, d = report.deg, report.d
    q = report.qe_lower if report.qe_lower is not None else qe_lower_bound(deg)
    two = 2 * deg**3
    sixteen = 16 * q**3
    return Theorem4Record(
        d=d, deg=deg, qe_lower=q, two_deg_cubed=two, sixteen_qe_lower_cubed=sixteen,
        exact=deg % 2 == 0, consistent=d <= two and d <= sixteen,
    )


# -- configuration and report -----------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    mode: str = "exhaustive"
    n: int = 3
    count: int = 0
    seed: int = 0
    checks: tuple[str, ...] = ALL_CHECKS
    limits: Limits = DEFAULT_LIMITS
    # None means every function; otherwise a seeded sample of this size.
    ndeg_sample: int | None = None
    audit_traces: bool = False
    exhaustive_max_n: int = EXHAUSTIVE_MAX_N
    jobs: int = 1

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise InvalidParams(f"mode must be exhaustive or random, got {self.mode!r}")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise InvalidParams(f"unknown checks: {', '.join(sorted(unknown))}")
        object.__setattr__(self, "checks", tuple(c for c in ALL_CHECKS if c in self.checks))
        if not 1 <= self.n <= 20:
            raise InvalidParams(f"n={self.n} outside 1..20")
        if self.mode == "exhaustive" and self.n > self.exhaustive_max_n:
            raise CapExceeded("exhaustive sweep", self.n, self.exhaustive_max_n)
        if self.mode == "random" and self.count < 1:
            raise InvalidParams("random mode needs count >= 1")
        if self.jobs < 1:
            raise InvalidParams("jobs must be >= 1")
        lim = self.limits
        needs = {
            "bs": {"theorem2", "theorem3", "alg_a_bounds", "ndeg_bound", "average_case"},
            "d": {"theorem3", "theorem4_derived", "ndeg_bound"},
            "ndeg": {"ndeg_bound"},
        }
        caps = {"bs": lim.bs_cap, "d": max(lim.dt_cap, _dt_reach(lim)), "ndeg": lim.ndeg_cap}
        for measure, users in needs.items():
            if users & set(self.checks) and self.n > caps[measure]:
                raise CapExceeded(measure, self.n, caps[measure])

    @classmethod
    def default(cls, mode: str, n: int, **kw) -> SweepConfig:
        """Defaults used by the CLI: reference-evaluator audit at n <= 3, ndeg off above n = 5."""
        kw.setdefault("audit_traces", n <= 3)
        if "checks" not in kw and mode == "random" and n > 5:
            kw["checks"] = tuple(c for c in ALL_CHECKS if c != "ndeg_bound")
        return cls(mode=mode, n=n, **kw)

    @property
    def total(self) -> int:
        return 1 << (1 << self.n) if self.mode == "exhaustive" else self.count

    def to_document(self) -> dict[str, Any]:
        doc = {
            "mode": self.mode,
            "n": self.n,
            "checks": list(self.checks),
            "ndeg_sample": self.ndeg_sample,
            "audit_traces": self.audit_traces,
            "caps": {"bs": self.limits.bs_cap, "d": self.limits.dt_cap, "ndeg": self.limits.ndeg_cap},
        }
        if self.mode == "random":
            doc.update(count=self.count, seed=self.seed, generator=RNG_NAME)
        elif self.ndeg_sample is not None:
            doc.update(seed=self.seed)
        return doc


def _dt_reach(lim: Limits) -> int:
    n = lim.dt_cap
    while 3 ** (n + 1) * (n + 1) <= lim.dt_work_budget:
        n += 1
    return n


@dataclass
class FindingsReport:
    config: dict[str, Any]
    functions_checked: int = 0
    pass_counts: dict[str, int] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)
    runtime_seconds: float | None = None
    backend: str = kernels.BACKEND

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_document(self, include_runtime: bool = False) -> dict[str, Any]:
        doc = {
            "config": self.config,
            "functions_checked": self.functions_checked,
            "pass_counts": self.pass_counts,
            "stats": self.stats,
            "failures": self.failures,
            "status": "pass" if self.ok else "fail",
        }
        if include_runtime:
            doc["runtime_seconds"] = self.runtime_seconds
            doc["backend"] = self.backend
        return doc

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_document(include_runtime), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> FindingsReport:
        return cls(
            config=doc["config"],
            functions_checked=doc["functions_checked"],
            pass_counts=doc["pass_counts"],
            stats=doc["stats"],
            failures=doc["failures"],
            runtime_seconds=doc.get("runtime_seconds"),
            backend=doc.get("backend", kernels.BACKEND),
        )

    def to_table(self, include_runtime: bool = False) -> str:
        cfg = self.config
        head = f"sweep: mode={cfg['mode']} n={cfg['n']}"
        if cfg["mode"] == "random":
            head += f" count={cfg['count']} seed={cfg['seed']} generator={cfg['generator']}"
        lines = [head, f"functions checked: {self.functions_checked}", "", f"{'check':<18}{'passed':>12}"]
        for name, cnt in self.pass_counts.items():
            lines.append(f"{name:<18}{cnt:>12}")
        lines.append("")
        for key in sorted(self.stats):
            lines.append(f"{key}: {self.stats[key]}")
        lines.append("")
        if self.failures:
            lines.append(f"FAILURES ({len(self.failures)}):")
            for f in self.failures:
                lines.append(f"  [{f['check']}] {f['function']} point={f.get('point')} {f['detail']}")
        else:
            lines.append("status: pass (0 failures)")
        if include_runtime and self.runtime_seconds is not None:
            lines.append(f"runtime: {self.runtime_seconds:.2f}s backend={self.backend}")
        return "\n".join(lines) + "\n"


# -- per-function checks ----------------------------------------------------

@lru_cache(maxsize=None)
def _popcounts(size: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(size)], dtype=np.int32)


def _fail(out, check, tt, detail, point=None, trace=None):
    out["failures"].append({
        "check": check,
        "index": out["index"],
        "function": tt.to_text(),
        "point": None if point is None else point_to_string(point, tt.n),
        "detail": detail,
        "trace": trace,
    })


def _trace_doc(coeffs: np.ndarray, n: int, x: int):
    p = MultilinearPoly(n, {int(m): int(coeffs[m]) for m in np.flatnonzero(coeffs)})
    try:
        _, trace = run_algorithm_a(p, WordOracle(x, n))
    except Exception as exc:  # counterexample capture must not mask the original failure
        return {"error": repr(exc)}
    return trace.to_document()


def check_function(index: int, tt: TruthTable, checks: tuple[str, ...], limits: Limits,
                   do_ndeg: bool, audit: bool) -> dict[str, Any]:
    """Run every enabled check on one function; returns a plain record."""
    n = tt.n
    size = 1 << n
    bits = tt.as_array()
    enabled = set(checks)
    out: dict[str, Any] = {"index": index, "passed": [], "failures": []}
    coeffs = kernels.mobius(bits.astype(np.int64), n)
    pcs = _popcounts(size)
    nz = coeffs != 0
    deg = int(pcs[nz].max()) if nz.any() else 0
    out["deg"] = deg

    need_bs = enabled & {"theorem2", "theorem3", "alg_a_bounds", "ndeg_bound", "average_case"}
    need_d = enabled & {"theorem3", "theorem4_derived", "ndeg_bound"}
    prof = kernels.bs_profile(bits, n) if need_bs else None
    bs = int(prof.max()) if prof is not None else None
    d = decision_tree_depth(tt, limits) if need_d else None
    nd = ndeg(tt, limits) if ("ndeg_bound" in enabled and do_ndeg) else None
    out.update(bs=bs, d=d, ndeg=nd)

    if "theorem2" in enabled:
        if bs <= 2 * deg * deg:
            out["passed"].append("theorem2")
        else:
            _fail(out, "theorem2", tt, f"bs={bs} > 2*deg^2={2 * deg * deg}", int(np.argmax(prof)))

    if "theorem3" in enabled:
        bad = []
        if deg > d:
            bad.append(f"deg={deg} > D={d}")
        if d > deg * bs:
            bad.append(f"D={d} > deg*bs={deg * bs}")
        if d > 2 * deg**3:
            bad.append(f"D={d} > 2*deg^3={2 * deg**3}")
        if bad:
            _fail(out, "theorem3", tt, "; ".join(bad))
        else:
            out["passed"].append("theorem3")

    if "theorem4_derived" in enabled:
        rec = derived_theorem4_report(MeasureReport(n=n, deg=deg, d=d, qe_lower=qe_lower_bound(deg)))
        if rec.consistent:
            out["passed"].append("theorem4_derived")
        else:
            _fail(out, "theorem4_derived", tt, json.dumps(rec.to_document(), sort_keys=True))

    if "ndeg_bound" in enabled and nd is not None:
        bad = []
        if nd > deg:
            bad.append(f"ndeg={nd} > deg={deg}")
        if d > bs * nd:
            bad.append(f"D={d} > bs*ndeg={bs * nd}")
        if bad:
            _fail(out, "ndeg_bound", tt, "; ".join(bad))
        else:
            out["passed"].append("ndeg_bound")

    if "lemma1" in enabled:
        checked, fw, fm = kernels.lemma1_scan(bits, coeffs, n)
        out["lemma1_pairs"] = int(checked)
        if fw < 0:
            out["passed"].append("lemma1")
        else:
            _fail(out, "lemma1", tt, f"no sensitive block inside maxonomial {mask_to_string(int(fm), n)}", int(fw))

    if enabled & {"alg_a_bounds", "average_case"}:
        values, rounds, queries = kernels.alg_a_profile(coeffs, n)
        out["runs"] = size
        out["max_rounds"] = int(rounds.max())
        out["max_queries"] = int(queries.max())
        out["sum_rounds"] = int(rounds.sum())
        out["sum_bs_x"] = int(prof.sum())
        if "alg_a_bounds" in enabled:
            wrong = np.flatnonzero(values != bits)
            over_rounds = np.flatnonzero(rounds > prof)
            over_queries = np.flatnonzero(queries > deg * prof)
            if wrong.size:
                x = int(wrong[0])
                _fail(out, "alg_a_bounds", tt, f"output {int(values[x])} != f(X)={int(bits[x])}", x, _trace_doc(coeffs, n, x))
            elif over_rounds.size:
                x = int(over_rounds[0])
                _fail(out, "alg_a_bounds", tt, f"rounds={int(rounds[x])} > bs_X={int(prof[x])}", x, _trace_doc(coeffs, n, x))
            elif over_queries.size:
                x = int(over_queries[0])
                _fail(out, "alg_a_bounds", tt, f"queries={int(queries[x])} > deg*bs_X={deg * int(prof[x])}", x, _trace_doc(coeffs, n, x))
            elif audit:
                _audit(out, tt, coeffs, values, rounds, queries)
            else:
                out["passed"].append("alg_a_bounds")
        if "average_case" in enabled:
            if out["sum_rounds"] <= out["sum_bs_x"]:
                out["passed"].append("average_case")
            else:
                _fail(out, "average_case", tt, f"mean rounds {out['sum_rounds']}/{size} > mean bs_X {out['sum_bs_x']}/{size}")
    return out


def _audit(out, tt, coeffs, values, rounds, queries):
    """Replay the reference evaluator on every input and compare with the kernel."""
    n = tt.n
    p = MultilinearPoly(n, {int(m): int(coeffs[m]) for m in np.flatnonzero(coeffs)})
    for x in range(1 << n):
        value, trace = run_algorithm_a(p, WordOracle(x, n))
        try:
            trace.check()
        except AssertionError as exc:
            _fail(out, "alg_a_bounds", tt, f"trace invariant: {exc}", x, trace.to_document())
            return
        if (value, len(trace.rounds), trace.total_queries) != (int(values[x]), int(rounds[x]), int(queries[x])):
            _fail(out, "alg_a_bounds", tt, "kernel and reference evaluator disagree", x, trace.to_document())
            return
    out["passed"].append("alg_a_bounds")


# -- sweep driver -----------------------------------------------------------

def _tables(cfg: SweepConfig) -> list[int] | range:
    if cfg.mode == "exhaustive":
        return range(cfg.total)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    size = 1 << cfg.n
    out = []
    for _ in range(cfg.count):
        bits = rng.integers(0, 2, size=size, dtype=np.uint8)
        out.append(int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little"))
    return out


def _ndeg_indices(cfg: SweepConfig) -> set[int] | None:
    if "ndeg_bound" not in cfg.checks:
        return set()
    if cfg.ndeg_sample is None or cfg.ndeg_sample >= cfg.total:
        return None
    return set(random.Random(cfg.seed).sample(range(cfg.total), cfg.ndeg_sample))


def _run_chunk(args):
    n, start, values, checks, limits, ndeg_idx, audit = args
    records = []
    for offset, value in enumerate(values):
        idx = start + offset
        do_ndeg = ndeg_idx is None or idx in ndeg_idx
        rec = check_function(idx, TruthTable.from_int(n, value), checks, limits, do_ndeg, audit)
        records.append(rec)
        if rec["failures"]:
            break
    return records


def _ratio_update(stats, key, num, den, idx, tt_int):
    if den == 0:
        return
    r = Fraction(num, den)
    cur = stats.get(key)
    if cur is None or r > cur[0]:
        stats[key] = (r, idx, tt_int)


def run_sweep(cfg: SweepConfig, chunk_size: int = 4096) -> FindingsReport:
    """Run every enabled check over the configured function space."""
    t0 = time.perf_counter()
    tables = _tables(cfg)
    ndeg_idx = _ndeg_indices(cfg)
    chunks = []
    for start in range(0, cfg.total, chunk_size):
        vals = list(tables[start:start + chunk_size])
        sub = None if ndeg_idx is None else {i for i in ndeg_idx if start <= i < start + len(vals)}
        chunks.append((cfg.n, start, vals, cfg.checks, cfg.limits, sub, cfg.audit_traces))

    report = FindingsReport(config=cfg.to_document())
    report.pass_counts = {c: 0 for c in cfg.checks}
    acc = _Accumulator(cfg)

    def consume(records):
        for rec in records:
            acc.add(rec, tables[rec["index"]])
            if rec["failures"]:
                return False
        return True

    if cfg.jobs == 1:
        for ch in chunks:
            if not consume(_run_chunk(ch)):
                break
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for records in pool.map(_run_chunk, chunks):
                if not consume(records):
                    break

    acc.finish(report)
    report.runtime_seconds = time.perf_counter() - t0
    return report


class _Accumulator:
    """Folds per-function records in index order."""

    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg
        self.count = 0
        self.passes = {c: 0 for c in cfg.checks}
        self.failures: list[dict] = []
        self.ratios: dict[str, tuple] = {}
        self.tight: dict[str, list] = {}
        self.counters: dict[str, int] = {}
        self.max_rounds = 0
        self.max_queries = 0

    def _bump(self, key, by=1):
        self.counters[key] = self.counters.get(key, 0) + by

    def _tight(self, key, idx, tt_int):
        self._bump(key)
        if key not in self.tight:
            self.tight[key] = [idx, tt_int]

    def add(self, rec, tt_int):
        n = self.cfg.n
        self.count += 1
        idx = rec["index"]
        for c in rec["passed"]:
            self.passes[c] += 1
        self.failures.extend(rec["failures"])
        deg, bs, d, nd = rec["deg"], rec["bs"], rec["d"], rec["ndeg"]
        if d is not None and deg > 0:
            _ratio_update(self.ratios, "max_d_over_deg_cubed", d, deg**3, idx, tt_int)
            if d == deg:
                self._tight("functions_with_d_eq_deg", idx, tt_int)
            if bs is not None and d == deg * bs:
                self._tight("functions_with_d_eq_deg_times_bs", idx, tt_int)
            if nd is not None:
                self._bump("functions_with_ndeg")
                if d == bs * nd:
                    self._tight("functions_with_d_eq_bs_times_ndeg", idx, tt_int)
        if bs is not None:
            _ratio_update(self.ratios, "max_bs_over_deg_squared", bs, deg**2, idx, tt_int)
        if "lemma1_pairs" in rec:
            self._bump("lemma1_point_maxonomial_pairs", rec["lemma1_pairs"])
        if "runs" in rec:
            self._bump("alg_a_runs", rec["runs"])
            self.max_rounds = max(self.max_rounds, rec["max_rounds"])
            self.max_queries = max(self.max_queries, rec["max_queries"])

    def finish(self, report: FindingsReport):
        n = self.cfg.n
        report.functions_checked = self.count
        report.pass_counts = self.passes
        report.failures = self.failures
        stats: dict[str, Any] = dict(sorted(self.counters.items()))
        for key, (r, idx, tt_int) in sorted(self.ratios.items()):
            stats[key] = {"value": f"{r.numerator}/{r.denominator}", "index": idx,
                          "function": TruthTable.from_int(n, tt_int).to_text()}
        for key, (idx, tt_int) in sorted(self.tight.items()):
            stats[key + "_first"] = {"index": idx, "function": TruthTable.from_int(n, tt_int).to_text()}
        if self.counters.get("alg_a_runs"):
            stats["alg_a_max_rounds"] = self.max_rounds
            stats["alg_a_max_queries"] = self.max_queries
        report.stats = stats
