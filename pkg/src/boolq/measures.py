"""Exact complexity measures: block sensitivity, decision-tree depth, ndeg.

All engines are brute force and exact. Size limits live in :class:`Limits`
and are configuration, not hard-coded ceilings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields
from typing import Any

import numpy as np

from . import kernels
from .core import (
    TruthTable,
    degree,
    evaluate,
    point_to_string,
    poly_from_truth_table,
    popcount,
    MultilinearPoly,
)
from .errors import BudgetExceeded, CapExceeded, BoolqError
from .linalg import nullspace


@dataclass(frozen=True)
class Limits:
    bs_cap: int = 12
    dt_cap: int = 10
    ndeg_cap: int = 10
    # 3**n * n subcube updates; allows n = 12 beyond the guaranteed cap.
    dt_work_budget: int = 3**12 * 12


DEFAULT_LIMITS = Limits()


def _check_cap(measure: str, n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(measure, n, cap)


# -- block sensitivity ------------------------------------------------------

def block_sensitivity_at(tt: TruthTable, x: int, limits: Limits = DEFAULT_LIMITS) -> tuple[int, list[int]]:
    """bs_x(f) with one maximum family of disjoint sensitive blocks.

    The witness blocks are inclusion-minimal sensitive blocks, listed in the
    order the DP backtrack finds them.
    """
    _check_cap("block_sensitivity", tt.n, limits.bs_cap)
    if not 0 <= x < 1 << tt.n:
        raise ValueError(f"point {x} out of range for n={tt.n}")
    best, minimal = kernels.packing_table(tt.as_array(), tt.n, x)
    blocks = []
    s = (1 << tt.n) - 1
    while s:
        low = s & -s
        rest = s ^ low
        if best[s] == best[rest]:
            s = rest
            continue
        t = rest
        while True:
            blk = t | low
            if minimal[blk] and 1 + best[s ^ blk] == best[s]:
                break
            if t == 0:
                raise AssertionError("packing table backtrack failed")
            t = (t - 1) & rest
        blocks.append(blk)
        s ^= blk
    return int(best[-1]), blocks


def bs_profile(tt: TruthTable, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
    """Array of bs_x(f) indexed by point."""
    _check_cap("block_sensitivity", tt.n, limits.bs_cap)
    return kernels.bs_profile(tt.as_array(), tt.n)


def block_sensitivity(tt: TruthTable, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    """(bs(f), smallest point attaining it)."""
    prof = bs_profile(tt, limits)
    x = int(np.argmax(prof))
    return int(prof[x]), x


# -- decision-tree depth ----------------------------------------------------

def relevant_variables(tt: TruthTable) -> int:
    """Mask of variables the function actually depends on."""
    arr = tt.as_array()
    mask = 0
    for j in range(tt.n):
        view = arr.reshape(-1, 2, 1 << j)
        if np.any(view[:, 0, :] != view[:, 1, :]):
            mask |= 1 << j
    return mask


def decision_tree_depth(tt: TruthTable, limits: Limits = DEFAULT_LIMITS) -> int:
    """Exact D(f) by the minimax recursion, memoized over subcubes.

    D(const) = 0 and D(f) = min over free i of 1 + max(D(f|x_i=0), D(f|x_i=1)).
    Every subfunction reachable by fixing variables is a subcube of the
    input cube, so the memo is a dense array over the 3**n subcubes.
    Above ``limits.dt_cap`` the run proceeds only while 3**n * n fits the
    work budget; otherwise BudgetExceeded reports deg(f) <= D(f) <= #relevant.
    """
    n = tt.n
    if n > limits.dt_cap and 3**n * n > limits.dt_work_budget:
        lower = degree(poly_from_truth_table(tt))
        upper = popcount(relevant_variables(tt))
        raise BudgetExceeded(
            f"decision tree depth at n={n} needs {3**n * n} steps, budget {limits.dt_work_budget}",
            lower=lower, upper=upper,
        )
    return int(kernels.dt_depth(tt.as_array(), n))


# -- nondeterministic degree ------------------------------------------------

def _monomials_upto(n: int, d: int) -> list[int]:
    return [m for m in range(1 << n) if popcount(m) <= d]


def _split(tt: TruthTable) -> tuple[list[int], list[int]]:
    zeros = [x for x, b in enumerate(tt.bits) if not b]
    ones = [x for x, b in enumerate(tt.bits) if b]
    return zeros, ones


def _primal_feasible(tt, d, zeros, ones):
    """Nullspace of the degree-<=d monomial evaluations on the 0-inputs.

    Returns (feasible, monomials, basis). Feasible iff every 1-input sees a
    basis polynomial that is nonzero there.
    """
    monos = _monomials_upto(tt.n, d)
    rows = [[1 if m & ~z == 0 else 0 for m in monos] for z in zeros]
    basis = nullspace(rows, len(monos))
    for y in ones:
        if not any(sum(v for m, v in zip(monos, vec) if m & ~y == 0) for vec in basis):
            return False, monos, basis
    return True, monos, basis


def _dual_feasible(tt, d, zeros, ones):
    """Same question posed on the values at the 1-inputs.

    A function vanishing on the 0-inputs with values v_y on the 1-inputs has
    degree <= d iff sum over 1-inputs y subset S of (-1)^|y| v_y is 0 for
    every |S| > d. Feasible iff no coordinate is forced to zero.
    """
    high = [s for s in range(1 << tt.n) if popcount(s) > d]
    rows = [[1 if y & ~s == 0 else 0 for y in ones] for s in high]
    basis = nullspace(rows, len(ones))
    for k in range(len(ones)):
        if not any(vec[k] for vec in basis):
            return False, high, basis
    return True, high, basis


def _use_dual(tt: TruthTable, d: int, zeros, ones) -> bool:
    primal = len(zeros) * sum(1 for m in range(1 << tt.n) if popcount(m) <= d)
    dual = len(ones) * sum(1 for m in range(1 << tt.n) if popcount(m) > d)
    return dual < primal


def ndeg_feasible(tt: TruthTable, d: int, method: str = "primal") -> bool:
    """Does a degree-<=d polynomial nonzero exactly on f's 1-inputs exist?

    ``method`` is "primal" (nullspace over monomial coefficients), "dual"
    (nullspace over values at 1-inputs) or "auto" (smaller system).
    """
    zeros, ones = _split(tt)
    if method == "auto":
        method = "dual" if _use_dual(tt, d, zeros, ones) else "primal"
    if method == "primal":
        return _primal_feasible(tt, d, zeros, ones)[0]
    if method == "dual":
        return _dual_feasible(tt, d, zeros, ones)[0]
    raise ValueError(f"unknown method {method!r}")


def ndeg(tt: TruthTable, limits: Limits = DEFAULT_LIMITS, method: str = "auto") -> int:
    """Nondeterministic degree: least d admitting p with p(x) != 0 iff f(x) = 1."""
    _check_cap("ndeg", tt.n, limits.ndeg_cap)
    for d in range(tt.n + 1):
        if ndeg_feasible(tt, d, method):
            return d
    raise AssertionError("f itself has degree <= n; unreachable")


def ndeg_witness(tt: TruthTable, d: int, seed: int = 0, attempts: int = 64) -> MultilinearPoly:
    """Construct a degree-<=d polynomial vanishing exactly off f's 1-inputs.

    Takes random integer combinations of the primal nullspace basis until one
    is nonzero on every 1-input. Raises BoolqError if degree d is infeasible.
    """
    zeros, ones = _split(tt)
    ok, monos, basis = _primal_feasible(tt, d, zeros, ones)
    if not ok:
        raise BoolqError(f"no nondeterministic polynomial of degree <= {d}")
    if not basis:
        return MultilinearPoly(tt.n)
    rng = random.Random(seed)
    span = 2 * len(ones) + 1
    for _ in range(attempts):
        weights = [rng.randint(1, span) for _ in basis]
        coeffs = [sum(w * vec[k] for w, vec in zip(weights, basis)) for k in range(len(monos))]
        p = MultilinearPoly(tt.n, zip(monos, coeffs))
        if all(evaluate(p, y) != 0 for y in ones):
            return p
        span *= 2
    raise BoolqError("no witness found; increase attempts")


def verify_ndeg_witness(tt: TruthTable, p: MultilinearPoly, d: int) -> bool:
    """Independent check: deg p <= d, p = 0 on 0-inputs, p != 0 on 1-inputs."""
    if degree(p) > d:
        return False
    return all((evaluate(p, x) != 0) == bool(b) for x, b in enumerate(tt.bits))


# -- report -----------------------------------------------------------------

@dataclass
class MeasureReport:
    n: int
    deg: int | None = None
    bs: int | None = None
    bs_witness_point: int | None = None
    bs_profile: list[int] | None = None
    d: int | None = None
    ndeg: int | None = None
    qe_lower: int | None = None
    slack_2deg2_minus_bs: int | None = None
    slack_degbs_minus_d: int | None = None
    slack_2deg3_minus_d: int | None = None
    slack_bsndeg_minus_d: int | None = None
    unavailable: dict[str, str] = field(default_factory=dict)

    def slacks(self) -> dict[str, int | None]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name.startswith("slack_")}

    def to_document(self) -> dict[str, Any]:
        doc = {f.name: getattr(self, f.name) for f in fields(self)}
        if self.bs_witness_point is not None:
            doc["bs_witness_point"] = point_to_string(self.bs_witness_point, self.n)
        return doc

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> MeasureReport:
        from .core import point_from_string

        kwargs = dict(doc)
        if kwargs.get("bs_witness_point") is not None:
            kwargs["bs_witness_point"] = point_from_string(kwargs["bs_witness_point"])
        return cls(**kwargs)


def qe_lower_bound(deg: int) -> int:
    """ceil(deg/2): the exact quantum query lower bound from the degree."""
    return (deg + 1) // 2


def measure_report(tt: TruthTable, limits: Limits = DEFAULT_LIMITS, profile: bool = False) -> MeasureReport:
    """All measures for one function; capped measures are marked unavailable."""
    rep = MeasureReport(n=tt.n)
    rep.deg = degree(poly_from_truth_table(tt))
    rep.qe_lower = qe_lower_bound(rep.deg)
    try:
        prof = bs_profile(tt, limits)
        x = int(np.argmax(prof))
        rep.bs, rep.bs_witness_point = int(prof[x]), x
        if profile:
            rep.bs_profile = [int(v) for v in prof]
    except (CapExceeded, BudgetExceeded) as exc:
        rep.unavailable["bs"] = str(exc)
    try:
        rep.d = decision_tree_depth(tt, limits)
    except (CapExceeded, BudgetExceeded) as exc:
        rep.unavailable["d"] = str(exc)
    try:
        rep.ndeg = ndeg(tt, limits)
    except (CapExceeded, BudgetExceeded) as exc:
        rep.unavailable["ndeg"] = str(exc)
    deg, bs, d, nd = rep.deg, rep.bs, rep.d, rep.ndeg
    if bs is not None:
        rep.slack_2deg2_minus_bs = 2 * deg**2 - bs
    if d is not None:
        rep.slack_2deg3_minus_d = 2 * deg**3 - d
        if bs is not None:
            rep.slack_degbs_minus_d = deg * bs - d
            if nd is not None:
                rep.slack_bsndeg_minus_d = bs * nd - d
    return rep


def sensitive_blocks(tt: TruthTable, x: int) -> list[int]:
    """Every nonempty block B with f(x^B) != f(x)."""
    v = tt.bits[x]
    return [b for b in range(1, 1 << tt.n) if tt.bits[x ^ b] != v]


__all__ = [
    "Limits", "DEFAULT_LIMITS", "MeasureReport", "block_sensitivity_at",
    "block_sensitivity", "bs_profile", "decision_tree_depth", "ndeg",
    "ndeg_feasible", "ndeg_witness", "verify_ndeg_witness", "measure_report",
    "qe_lower_bound", "relevant_variables", "sensitive_blocks",
]
