"""Boolean-function query complexity toolkit.

Exact multilinear representations, block sensitivity, decision-tree depth
and nondeterministic degree, the maxonomial evaluator with its query
traces, and sweeps that check the degree/query-complexity bounds on every
function of small arity.
"""

from .core import (
    MultilinearPoly,
    PartialAssignment,
    TruthTable,
    degree,
    evaluate,
    first_maxonomial,
    flip,
    maxonomials,
    parse_poly,
    parse_truth_table,
    poly_from_truth_table,
    restrict,
    truth_table_from_poly,
)
from .errors import (
    BoolqError,
    BudgetExceeded,
    CapExceeded,
    InvalidParams,
    NonBooleanPolynomial,
    ParseError,
    RepeatedQuery,
    UnknownMeasure,
    WitnessNotFound,
)
from .families import FamilySpec, expected_measures, make_family
from .harness import FindingsReport, SweepConfig, derived_theorem4_report, run_sweep
from .kernels import BACKEND
from .maxonomial import (
    AdversaryOracle,
    CountingOracle,
    DecisionTree,
    QueryOracle,
    QueryTrace,
    WordOracle,
    compile_decision_tree,
    lemma1_witness,
    run_algorithm_a,
)
from .measures import (
    Limits,
    MeasureReport,
    block_sensitivity,
    block_sensitivity_at,
    decision_tree_depth,
    measure_report,
    ndeg,
)

__version__ = "0.1.0"
