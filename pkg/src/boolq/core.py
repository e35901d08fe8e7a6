"""Truth tables, multilinear polynomials and the operations between them.

Bit convention used everywhere: variable x_j (1-based) is bit j-1 of a mask
or point index, so truth-table index i is the point whose x_1 is the least
significant bit of i. Monomials are masks over the same bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import InvalidParams, NonBooleanPolynomial, ParseError

MAX_N = 20


def popcount(v: int) -> int:
    return bin(v).count("1")


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParams(f"variable count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_N:
        raise InvalidParams(f"variable count {n} outside 1..{MAX_N}")


def flip(x: int, block: int) -> int:
    """Return the point x with every variable in ``block`` negated."""
    return x ^ block


def point_from_string(text: str, n: int | None = None) -> int:
    """Parse a point written x_1 first, e.g. ``"101"`` means x1=1, x2=0, x3=1."""
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise ParseError(f"point must be a non-empty 0/1 string, got {text!r}")
    if n is not None and len(text) != n:
        raise ParseError(f"point has {len(text)} bits, function has n={n}")
    return sum(1 << j for j, ch in enumerate(text) if ch == "1")


def point_to_string(x: int, n: int) -> str:
    return "".join("1" if (x >> j) & 1 else "0" for j in range(n))


def mask_to_string(mask: int, n: int) -> str:
    return "0b" + format(mask, f"0{max(n, 1)}b")


def mask_from_string(text: str) -> int:
    s = str(text).strip()
    if s.startswith(("0b", "0B")):
        s = s[2:]
    if not s or any(ch not in "01" for ch in s):
        raise ParseError(f"bad monomial mask {text!r}")
    return int(s, 2)


def mask_variables(mask: int) -> list[int]:
    """1-based variable indices present in ``mask``, ascending."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


@dataclass(frozen=True)
class TruthTable:
    """A total Boolean function on ``n`` variables as 2**n bits."""

    n: int
    bits: bytes

    def __post_init__(self):
        _check_n(self.n)
        bits = bytes(self.bits)
        if len(bits) != 1 << self.n:
            raise InvalidParams(f"truth table for n={self.n} needs {1 << self.n} bits, got {len(bits)}")
        if bits.strip(b"\x00\x01"):
            raise InvalidParams("truth table entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_int(cls, n: int, value: int) -> TruthTable:
        """Bit i of ``value`` is f(point i)."""
        _check_n(n)
        size = 1 << n
        if not 0 <= value < 1 << size:
            raise InvalidParams(f"table integer out of range for n={n}")
        raw = value.to_bytes((size + 7) // 8, "little")
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size]
        return cls(n, arr.tobytes())

    @classmethod
    def from_function(cls, n: int, fn) -> TruthTable:
        """Tabulate ``fn`` applied to the list of bits [x1, ..., xn]."""
        _check_n(n)
        bits = bytes(1 if fn([(i >> j) & 1 for j in range(n)]) else 0 for i in range(1 << n))
        return cls(n, bits)

    @classmethod
    def parse(cls, text: str) -> TruthTable:
        return parse_truth_table(text)

    def __call__(self, x: int) -> int:
        return self.bits[x]

    def __len__(self) -> int:
        return len(self.bits)

    def to_int(self) -> int:
        packed = np.packbits(self.as_array(), bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def as_array(self) -> np.ndarray:
        return np.frombuffer(self.bits, dtype=np.uint8)

    def is_constant(self) -> bool:
        return self.bits.count(1) in (0, len(self.bits))

    def to_text(self, hex: bool = False) -> str:
        if hex:
            return f"n={self.n};hex={_bits_to_hex(self.bits)}"
        return f"n={self.n};bits=" + "".join("1" if b else "0" for b in self.bits)

    def __str__(self) -> str:
        return self.to_text()


def _bits_to_hex(bits: bytes) -> str:
    padded = bits + b"\x00" * (-len(bits) % 4)
    digits = []
    for k in range(0, len(padded), 4):
        nib = padded[k] | padded[k + 1] << 1 | padded[k + 2] << 2 | padded[k + 3] << 3
        digits.append("0123456789abcdef"[nib])
    return "".join(digits)


def parse_truth_table(text: str) -> TruthTable:
    """Parse ``n=<k>;bits=<0/1 string>`` or ``n=<k>;hex=<nibbles>``.

    Hex digits are little-endian nibbles: the first digit carries bits 0..3
    with bit 0 as its least significant bit. For n < 2 one digit is used and
    its unused high bits must be zero.
    """
    fields = {}
    for part in text.strip().split(";"):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {part!r}")
        key = key.strip().lower()
        if key in fields:
            raise ParseError(f"duplicate field {key!r}")
        fields[key] = val.strip()
    if "n" not in fields:
        raise ParseError("missing n=")
    try:
        n = int(fields.pop("n"))
    except ValueError:
        raise ParseError("n must be an integer") from None
    if not 1 <= n <= MAX_N:
        raise ParseError(f"n={n} outside 1..{MAX_N}")
    size = 1 << n
    if set(fields) == {"bits"}:
        s = fields["bits"]
        if any(ch not in "01" for ch in s):
            raise ParseError("bits must contain only 0 and 1")
        if len(s) != size:
            raise ParseError(f"n={n} needs {size} bits, got {len(s)}")
        return TruthTable(n, bytes(1 if ch == "1" else 0 for ch in s))
    if set(fields) == {"hex"}:
        s = fields["hex"].lower()
        ndig = max(1, size // 4)
        if len(s) != ndig:
            raise ParseError(f"n={n} needs {ndig} hex digits, got {len(s)}")
        try:
            nibbles = [int(ch, 16) for ch in s]
        except ValueError:
            raise ParseError("invalid hex digit") from None
        out = bytearray()
        for nib in nibbles:
            out.extend((nib >> k) & 1 for k in range(4))
        if any(out[size:]):
            raise ParseError("hex padding bits must be zero")
        return TruthTable(n, bytes(out[:size]))
    raise ParseError("expected exactly one of bits= or hex= alongside n=")


class MultilinearPoly:
    """Sparse integer multilinear polynomial: monomial mask -> nonzero coefficient.

    Zero coefficients passed to the constructor are dropped. Instances are
    immutable and hashable.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        _check_n(n)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        limit = 1 << n
        for mask, coeff in items:
            mask = int(mask)
            if not 0 <= mask < limit:
                raise InvalidParams(f"monomial mask {mask:#b} uses variables beyond n={n}")
            coeff = int(coeff)
            if coeff:
                clean[mask] = clean.get(mask, 0) + coeff
                if not clean[mask]:
                    del clean[mask]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultilinearPoly is immutable")

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, tuple(self.terms.items()))))
        return self._hash

    def __repr__(self):
        return f"MultilinearPoly(n={self.n}, terms={dict(self.terms)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask, c in self.terms.items():
            mono = "*".join(f"x{j}" for j in mask_variables(mask))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms.items())

    def is_constant(self) -> bool:
        return all(mask == 0 for mask in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise InvalidParams("polynomial is not constant")
        return self.terms.get(0, 0)

    def dense(self) -> np.ndarray:
        arr = np.zeros(1 << self.n, dtype=np.int64)
        for mask, c in self.terms.items():
            arr[mask] = c
        return arr

    def to_document(self) -> dict:
        return poly_to_document(self)


@dataclass(frozen=True)
class PartialAssignment:
    """Fixed values for a subset of variables, keyed by 1-based index."""

    bindings: Mapping[int, int]

    def __post_init__(self):
        clean = {}
        for j, v in dict(self.bindings).items():
            if not isinstance(j, (int, np.integer)) or j < 1:
                raise InvalidParams(f"variable index must be a positive integer, got {j!r}")
            if v not in (0, 1):
                raise InvalidParams(f"x{j} bound to {v!r}, expected 0 or 1")
            clean[int(j)] = int(v)
        object.__setattr__(self, "bindings", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_masks(cls, fixed: int, values: int) -> PartialAssignment:
        """Bind every variable in ``fixed`` to its bit in ``values``."""
        return cls({j: (values >> (j - 1)) & 1 for j in mask_variables(fixed)})

    @property
    def fixed_mask(self) -> int:
        return sum(1 << (j - 1) for j in self.bindings)

    @property
    def ones_mask(self) -> int:
        return sum(1 << (j - 1) for j, v in self.bindings.items() if v)

    def check(self, n: int) -> None:
        bad = [j for j in self.bindings if j > n]
        if bad:
            raise InvalidParams(f"assignment binds x{bad[0]} but n={n}")

    def merge(self, x: int) -> int:
        """Point equal to ``x`` on free variables and to the bindings elsewhere."""
        return (x & ~self.fixed_mask) | self.ones_mask

    def __len__(self):
        return len(self.bindings)


def _as_point(x, n: int) -> int:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        x = int(x)
        if not 0 <= x < 1 << n:
            raise InvalidParams(f"point {x} out of range for n={n}")
        return x
    bits = list(x)
    if len(bits) != n:
        raise InvalidParams(f"point has {len(bits)} bits, expected {n}")
    return sum(1 << j for j, b in enumerate(bits) if b)


def poly_from_truth_table(tt: TruthTable) -> MultilinearPoly:
    """The unique multilinear polynomial representing ``tt``."""
    coeffs = kernels.mobius(tt.as_array().astype(np.int64), tt.n)
    nz = np.flatnonzero(coeffs)
    return MultilinearPoly(tt.n, zip(nz.tolist(), coeffs[nz].tolist()))


def evaluate(p: MultilinearPoly, x) -> int:
    """Exact value of ``p`` at a Boolean point (index or bit sequence)."""
    x = _as_point(x, p.n)
    return sum(c for mask, c in p.terms.items() if mask & ~x == 0)


def restrict(p: MultilinearPoly, a: PartialAssignment) -> MultilinearPoly:
    """Substitute the bound variables of ``a`` into ``p``."""
    a.check(p.n)
    if not a.bindings:
        return p
    fixed = a.fixed_mask
    zeros = fixed & ~a.ones_mask
    out: dict[int, int] = {}
    for mask, c in p.terms.items():
        if mask & zeros:
            continue
        key = mask & ~fixed
        out[key] = out.get(key, 0) + c
    return MultilinearPoly(p.n, out)


def degree(p: MultilinearPoly) -> int:
    """Maximum monomial size; 0 for constants including the zero polynomial."""
    return max((popcount(m) for m in p.terms), default=0)


def maxonomials(p: MultilinearPoly) -> list[int]:
    """All highest-degree monomial masks of a nonconstant polynomial, ascending."""
    d = degree(p)
    if d == 0:
        raise InvalidParams("constant polynomial has no maxonomial")
    return [m for m in p.terms if popcount(m) == d]


def first_maxonomial(p: MultilinearPoly) -> int:
    """Smallest-mask monomial among those of maximal degree."""
    return maxonomials(p)[0]


def truth_table_from_poly(p: MultilinearPoly) -> TruthTable:
    """Tabulate ``p`` on the cube; raise NonBooleanPolynomial on any value outside {0,1}."""
    vals = p.dense()
    n = p.n
    for i in range(n):
        view = vals.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]
    bad = np.flatnonzero((vals != 0) & (vals != 1))
    if bad.size:
        x = int(bad[0])
        raise NonBooleanPolynomial(x, int(vals[x]))
    return TruthTable(n, vals.astype(np.uint8).tobytes())


def poly_to_document(p: MultilinearPoly) -> dict:
    return {
        "n": p.n,
        "terms": [{"mask": mask_to_string(m, p.n), "coeff": c} for m, c in p.terms.items()],
    }


def poly_from_document(doc: Mapping) -> MultilinearPoly:
    try:
        n = int(doc["n"])
        terms = doc["terms"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("polynomial document needs 'n' and 'terms'") from None
    if not 1 <= n <= MAX_N:
        raise ParseError(f"n={n} outside 1..{MAX_N}")
    out: dict[int, int] = {}
    for rec in terms:
        try:
            mask = mask_from_string(rec["mask"])
            coeff = rec["coeff"]
        except (KeyError, TypeError):
            raise ParseError(f"bad term record {rec!r}") from None
        if not isinstance(coeff, int) or isinstance(coeff, bool):
            raise ParseError(f"coefficient must be an integer, got {coeff!r}")
        if mask >= 1 << n:
            raise ParseError(f"mask {rec['mask']} uses variables beyond n={n}")
        if mask in out:
            raise ParseError(f"duplicate mask {rec['mask']}")
        out[mask] = coeff
    return MultilinearPoly(n, out)


def poly_to_json(p: MultilinearPoly) -> str:
    return json.dumps(poly_to_document(p))


def parse_poly(text: str) -> MultilinearPoly:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"polynomial is not valid JSON: {exc}") from None
    return poly_from_document(doc)


def all_points(n: int) -> Sequence[int]:
    return range(1 << n)
