"""Named function families with analytically known measures (test fixtures)."""

from __future__ import annotations

from dataclasses import dataclass

from .core import MAX_N, TruthTable
from .errors import InvalidParams, UnknownMeasure

FAMILIES = ("const0", "const1", "dictator", "and", "or", "parity", "majority", "address")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise InvalidParams(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")
        if self.name == "address":
            if self.k is None:
                if self.n is None:
                    raise InvalidParams("address needs k (or n = k + 2**k)")
                k = next((k for k in range(1, 5) if k + (1 << k) == self.n), None)
                if k is None:
                    raise InvalidParams(f"address: n={self.n} is not of the form k + 2**k")
                object.__setattr__(self, "k", k)
            if self.k < 1 or self.k + (1 << self.k) > MAX_N:
                raise InvalidParams(f"address: k={self.k} out of range")
            if self.n is not None and self.n != self.k + (1 << self.k):
                raise InvalidParams(f"address: n must equal k + 2**k = {self.k + (1 << self.k)}")
            object.__setattr__(self, "n", self.k + (1 << self.k))
            return
        if self.n is None or not 1 <= self.n <= MAX_N:
            raise InvalidParams(f"{self.name}: n must be in 1..{MAX_N}")
        if self.k is not None:
            raise InvalidParams(f"{self.name} takes no k parameter")
        if self.name == "majority" and self.n % 2 == 0:
            raise InvalidParams("majority is defined for odd n only")


def _address(k):
    def fn(x):
        a = sum(x[i] << i for i in range(k))
        return x[k + a]
    return fn


def make_family(spec: FamilySpec) -> TruthTable:
    n = spec.n
    fn = {
        "const0": lambda x: 0,
        "const1": lambda x: 1,
        "dictator": lambda x: x[0],
        "and": all,
        "or": any,
        "parity": lambda x: sum(x) % 2,
        "majority": lambda x: 2 * sum(x) > n,
        "address": _address(spec.k) if spec.name == "address" else None,
    }[spec.name]
    return TruthTable.from_function(n, fn)


MEASURE_NAMES = ("deg", "bs", "d", "ndeg")


def expected_measures(spec: FamilySpec) -> dict[str, int]:
    """Closed-form measures known for the family; unknown ones are omitted.

    Raises UnknownMeasure when nothing is known in closed form.
    """
    n, name = spec.n, spec.name
    if name in ("const0", "const1"):
        known = dict(deg=0, bs=0, d=0, ndeg=0)
    elif name == "dictator":
        known = dict(deg=1, bs=1, d=1, ndeg=1)
    elif name == "and":
        known = dict(deg=n, bs=n, d=n, ndeg=n)
    elif name == "or":
        known = dict(deg=n, bs=n, d=n, ndeg=1)
    elif name == "parity":
        known = dict(deg=n, bs=n, d=n)
    elif name == "majority":
        known = dict(bs=(n + 1) // 2, d=n)
    elif name == "address":
        known = dict(deg=spec.k + 1, d=spec.k + 1)
    else:
        known = {}
    if not known:
        raise UnknownMeasure(f"no closed-form measures for {name}")
    return dict(known)


def expected_measure(spec: FamilySpec, measure: str) -> int:
    if measure not in MEASURE_NAMES:
        raise InvalidParams(f"unknown measure {measure!r}")
    known = expected_measures(spec)
    if measure not in known:
        raise UnknownMeasure(f"{spec.name}: {measure} has no closed form here")
    return known[measure]
