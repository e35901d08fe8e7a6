"""The maxonomial evaluator and everything built on it.

The evaluator repeatedly picks the first maxonomial of the current
polynomial, queries all of its variables, and substitutes the answers,
until the polynomial is constant. Each round's queried set is disjoint from
earlier ones because substitution removes queried variables from every
remaining monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    MultilinearPoly,
    PartialAssignment,
    degree,
    evaluate,
    first_maxonomial,
    flip,
    mask_from_string,
    mask_to_string,
    mask_variables,
    point_to_string,
    popcount,
    restrict,
    truth_table_from_poly,
)
from .errors import BudgetExceeded, InvalidParams, NonBooleanPolynomial, ParseError, RepeatedQuery, WitnessNotFound


# -- oracles ----------------------------------------------------------------

class QueryOracle:
    """Answers variable queries; every index may be asked at most once."""

    def __init__(self, n: int):
        self.n = n
        self.queried: set[int] = set()
        self.order: list[int] = []

    @property
    def count(self) -> int:
        return len(self.order)

    def query(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise InvalidParams(f"query index {i} outside 1..{self.n}")
        if i in self.queried:
            raise RepeatedQuery(f"x{i} queried twice")
        bit = int(self._answer(i))
        if bit not in (0, 1):
            raise InvalidParams(f"oracle answered {bit!r} for x{i}")
        self.queried.add(i)
        self.order.append(i)
        return bit

    def _answer(self, i: int) -> int:
        raise NotImplementedError


class WordOracle(QueryOracle):
    """Answers from a fixed input word given as a point index."""

    def __init__(self, x: int, n: int):
        if not 0 <= x < 1 << n:
            raise InvalidParams(f"point {x} out of range for n={n}")
        super().__init__(n)
        self.x = x

    def _answer(self, i):
        return (self.x >> (i - 1)) & 1


class CountingOracle(QueryOracle):
    """Wraps a plain ``answer(i) -> bit`` callable with counting and repeat checks."""

    def __init__(self, answer: Callable[[int], int], n: int):
        super().__init__(n)
        self._fn = answer

    def _answer(self, i):
        return self._fn(i)


class AdversaryOracle(QueryOracle):
    """Answers chosen by a strategy that sees the query history; keeps a transcript.

    ``strategy(i, transcript)`` returns the bit for x_i given the list of
    (index, bit) answers given so far.
    """

    def __init__(self, strategy: Callable[[int, list[tuple[int, int]]], int], n: int):
        super().__init__(n)
        self.strategy = strategy
        self.transcript: list[tuple[int, int]] = []

    def _answer(self, i):
        bit = int(self.strategy(i, list(self.transcript)))
        self.transcript.append((i, bit))
        return bit


class _NeedAnswer(Exception):
    def __init__(self, var):
        self.var = var


class _ScriptedOracle(QueryOracle):
    """Replays a prefix of answers, then signals which variable comes next."""

    def __init__(self, answers: list[int], n: int):
        super().__init__(n)
        self.answers = answers

    def _answer(self, i):
        k = len(self.order)
        if k >= len(self.answers):
            raise _NeedAnswer(i)
        return self.answers[k]


# -- traces -----------------------------------------------------------------

@dataclass(frozen=True)
class Round:
    maxonomial: int
    degree_before: int
    queries: tuple[tuple[int, int], ...]
    degree_after: int

    @property
    def queried_mask(self) -> int:
        return sum(1 << (j - 1) for j, _ in self.queries)


@dataclass
class QueryTrace:
    n: int
    rounds: list[Round] = field(default_factory=list)
    result: int | None = None

    @property
    def total_queries(self) -> int:
        return sum(len(r.queries) for r in self.rounds)

    def check(self) -> None:
        """Assert the structural invariants of an evaluator run."""
        seen = 0
        for k, r in enumerate(self.rounds):
            q = r.queried_mask
            assert len(r.queries) == r.degree_before, f"round {k}: {len(r.queries)} queries at degree {r.degree_before}"
            assert q == r.maxonomial, f"round {k}: queried set differs from the maxonomial"
            assert not q & seen, f"round {k}: re-queried variables"
            assert r.degree_after <= r.degree_before
            seen |= q

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "result": self.result,
            "total_queries": self.total_queries,
            "rounds": [
                {
                    "maxonomial": mask_to_string(r.maxonomial, self.n),
                    "degree_before": r.degree_before,
                    "queries": [[j, v] for j, v in r.queries],
                    "degree_after": r.degree_after,
                }
                for r in self.rounds
            ],
        }

    @classmethod
    def from_document(cls, doc: dict) -> QueryTrace:
        try:
            rounds = [
                Round(
                    maxonomial=mask_from_string(r["maxonomial"]),
                    degree_before=int(r["degree_before"]),
                    queries=tuple((int(j), int(v)) for j, v in r["queries"]),
                    degree_after=int(r["degree_after"]),
                )
                for r in doc["rounds"]
            ]
            trace = cls(n=int(doc["n"]), rounds=rounds, result=doc["result"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad trace document: {exc}") from None
        if "total_queries" in doc and doc["total_queries"] != trace.total_queries:
            raise ParseError("total_queries disagrees with rounds")
        return trace


# -- the evaluator ----------------------------------------------------------

EAGER_CHECK_MAX_N = 16


def run_algorithm_a(p: MultilinearPoly, oracle: QueryOracle, eager_check: bool = False) -> tuple[int, QueryTrace]:
    """Evaluate the function represented by ``p`` on the oracle's hidden word.

    With ``eager_check`` (n <= 16) the polynomial is first tabulated and
    rejected if it is not Boolean-valued; otherwise only the final constant
    is checked.
    """
    if oracle.n != p.n:
        raise InvalidParams(f"oracle has n={oracle.n}, polynomial has n={p.n}")
    if eager_check and p.n <= EAGER_CHECK_MAX_N:
        truth_table_from_poly(p)
    trace = QueryTrace(n=p.n)
    while not p.is_constant():
        m = first_maxonomial(p)
        before = degree(p)
        answers = tuple((j, oracle.query(j)) for j in mask_variables(m))
        p = restrict(p, PartialAssignment(dict(answers)))
        trace.rounds.append(Round(m, before, answers, degree(p)))
    value = p.constant_value()
    if value not in (0, 1):
        raise NonBooleanPolynomial(None, value)
    trace.result = value
    return value, trace


def evaluate_word(p: MultilinearPoly, x: int) -> tuple[int, QueryTrace]:
    """Run the evaluator against a fixed-word oracle for point ``x``."""
    return run_algorithm_a(p, WordOracle(x, p.n))


# -- maxonomial flip lemma --------------------------------------------------

def _submasks_ascending(mask: int) -> Iterable[int]:
    vars_ = [1 << (j - 1) for j in mask_variables(mask)]
    for t in range(1, 1 << len(vars_)):
        yield sum(b for k, b in enumerate(vars_) if (t >> k) & 1)


def lemma1_witness(p: MultilinearPoly, w: int, m: int) -> int:
    """Smallest nonempty block B inside maxonomial ``m`` with p(w^B) != p(w)."""
    d = degree(p)
    if d == 0 or p.terms.get(m, 0) == 0 or popcount(m) != d:
        raise InvalidParams(f"{mask_to_string(m, p.n)} is not a maxonomial of the polynomial")
    base = evaluate(p, w)
    for b in _submasks_ascending(m):
        if evaluate(p, flip(w, b)) != base:
            return b
    raise WitnessNotFound(
        f"no sensitive block inside maxonomial {mask_to_string(m, p.n)} at point "
        f"{point_to_string(w, p.n)} for polynomial {p}"
    )


# -- decision trees ---------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    var: int | None = None
    zero: int | None = None
    one: int | None = None
    leaf: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None


@dataclass
class DecisionTree:
    """Nodes in a flat list; node 0 is the root."""

    n: int
    nodes: list[TreeNode]

    def evaluate(self, x: int) -> int:
        node = self.nodes[0]
        while not node.is_leaf:
            node = self.nodes[node.one if (x >> (node.var - 1)) & 1 else node.zero]
        return node.leaf

    def depth(self) -> int:
        def rec(k):
            node = self.nodes[k]
            if node.is_leaf:
                return 0
            return 1 + max(rec(node.zero), rec(node.one))
        return rec(0)

    def leaves(self) -> int:
        return sum(1 for node in self.nodes if node.is_leaf)

    def validate(self) -> None:
        """No variable repeats on any root-to-leaf path; every id is valid."""
        def rec(k, path):
            node = self.nodes[k]
            if node.is_leaf:
                if node.leaf not in (0, 1):
                    raise InvalidParams(f"leaf {k} labelled {node.leaf}")
                return
            if node.var in path:
                raise InvalidParams(f"x{node.var} repeats below node {k}")
            rec(node.zero, path | {node.var})
            rec(node.one, path | {node.var})
        rec(0, frozenset())

    def to_text(self) -> str:
        lines = [f"tree n={self.n} nodes={len(self.nodes)}"]
        for k, node in enumerate(self.nodes):
            if node.is_leaf:
                lines.append(f"{k} leaf={node.leaf}")
            else:
                lines.append(f"{k} var={node.var} zero={node.zero} one={node.one}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> DecisionTree:
        lines = [ln.split() for ln in text.strip().splitlines()]
        try:
            header = dict(kv.split("=") for kv in lines[0][1:])
            n, count = int(header["n"]), int(header["nodes"])
            nodes = []
            for k, parts in enumerate(lines[1:]):
                if int(parts[0]) != k:
                    raise ValueError(f"node ids out of order at line {k + 2}")
                kv = dict(p.split("=") for p in parts[1:])
                if "leaf" in kv:
                    nodes.append(TreeNode(leaf=int(kv["leaf"])))
                else:
                    nodes.append(TreeNode(var=int(kv["var"]), zero=int(kv["zero"]), one=int(kv["one"])))
        except (IndexError, KeyError, ValueError) as exc:
            raise ParseError(f"bad tree text: {exc}") from None
        if len(nodes) != count:
            raise ParseError(f"header says {count} nodes, found {len(nodes)}")
        return cls(n, nodes)

    def to_document(self) -> dict:
        nodes = []
        for node in self.nodes:
            if node.is_leaf:
                nodes.append({"leaf": node.leaf})
            else:
                nodes.append({"var": node.var, "zero": node.zero, "one": node.one})
        return {"n": self.n, "depth": self.depth(), "leaves": self.leaves(), "nodes": nodes}

    @classmethod
    def from_document(cls, doc: dict) -> DecisionTree:
        try:
            nodes = [TreeNode(leaf=int(d["leaf"])) if "leaf" in d
                     else TreeNode(var=int(d["var"]), zero=int(d["zero"]), one=int(d["one"]))
                     for d in doc["nodes"]]
            return cls(int(doc["n"]), nodes)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad tree document: {exc}") from None

    def to_dot(self) -> str:
        out = ["digraph decision_tree {", "  node [fontname=Helvetica];"]
        for k, node in enumerate(self.nodes):
            if node.is_leaf:
                out.append(f'  n{k} [shape=box, label="{node.leaf}"];')
            else:
                out.append(f'  n{k} [shape=ellipse, label="x{node.var}"];')
                out.append(f'  n{k} -> n{node.zero} [label="0", style=dashed];')
                out.append(f'  n{k} -> n{node.one} [label="1"];')
        out.append("}")
        return "\n".join(out) + "\n"


DEFAULT_NODE_BUDGET = 1 << 20


def compile_decision_tree(p: MultilinearPoly, node_budget: int = DEFAULT_NODE_BUDGET) -> DecisionTree:
    """Unroll the evaluator over every sequence of oracle answers.

    Each node is found by replaying the evaluator against a scripted oracle
    holding the answers on the path so far, so the tree is exactly the
    evaluator's query strategy.
    """
    nodes: list[TreeNode | None] = []

    def explore(answers: list[int]) -> int:
        if len(nodes) >= node_budget:
            raise BudgetExceeded(f"decision tree exceeds {node_budget} nodes")
        k = len(nodes)
        nodes.append(None)
        try:
            value, _ = run_algorithm_a(p, _ScriptedOracle(answers, p.n))
        except _NeedAnswer as need:
            zero = explore(answers + [0])
            one = explore(answers + [1])
            nodes[k] = TreeNode(var=need.var, zero=zero, one=one)
        else:
            nodes[k] = TreeNode(leaf=value)
        return k

    explore([])
    return DecisionTree(p.n, nodes)
