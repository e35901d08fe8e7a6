"""Both kernel backends agree with each other and with the brute-force oracles."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boolq import kernels
from boolq.core import TruthTable

from conftest import all_tables, random_tables
from oracles import algorithm_a_dense, block_sensitivity_packing, decision_tree_depth_plain, interpolate


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_mobius(backend, tables3):
    for t in tables3:
        c = backend.mobius(t.as_array().astype(np.int64), 3)
        assert {m: int(v) for m, v in enumerate(c) if v} == interpolate(t.bits, 3)


def test_bs_profile_vs_packing(backend, tables3):
    for t in tables3:
        prof = backend.bs_profile(t.as_array(), 3)
        assert [int(v) for v in prof] == [block_sensitivity_packing(t.bits, 3, x) for x in range(8)]


def test_dt_depth_vs_plain(backend, tables3):
    for t in tables3:
        assert backend.dt_depth(t.as_array(), 3) == decision_tree_depth_plain(t.bits, 3)


def test_alg_a_profile_vs_dense(backend, tables3):
    for t in tables3:
        poly = interpolate(t.bits, 3)
        coeffs = np.zeros(8, dtype=np.int64)
        for m, c in poly.items():
            coeffs[m] = c
        values, rounds, queries = backend.alg_a_profile(coeffs, 3)
        for x in range(8):
            assert (int(values[x]), int(rounds[x]), int(queries[x])) == algorithm_a_dense(poly, 3, x)


def test_lemma1_scan_counts(backend):
    # OR2: single maxonomial, 4 points -> 4 pairs, no failure
    bits = np.array([0, 1, 1, 1], dtype=np.uint8)
    coeffs = np.array([0, 1, 1, -1], dtype=np.int64)
    assert tuple(int(v) for v in backend.lemma1_scan(bits, coeffs, 2)) == (4, -1, -1)
    assert tuple(int(v) for v in backend.lemma1_scan(np.ones(4, np.uint8), np.array([1, 0, 0, 0]), 2)) == (0, -1, -1)


def test_lemma1_scan_reports_failure(backend):
    # A fake "maxonomial" that the table is insensitive to must be reported.
    bits = np.array([0, 0, 0, 0], dtype=np.uint8)
    coeffs = np.array([0, 0, 0, 5], dtype=np.int64)
    checks, w, m = backend.lemma1_scan(bits, coeffs, 2)
    assert (int(w), int(m)) == (0, 3)


@pytest.mark.skipif(kernels.compiled_backend() is None, reason="compiled kernels not built")
@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 2**32 - 1))
def test_backends_identical(n, seed):
    py, cy = kernels.python_backend, kernels.compiled_backend()
    (t,) = random_tables(n, 1, seed)
    bits = t.as_array()
    c_py = py.mobius(bits.astype(np.int64), n)
    c_cy = cy.mobius(bits.astype(np.int64), n)
    assert np.array_equal(c_py, c_cy)
    assert np.array_equal(py.bs_profile(bits, n), cy.bs_profile(bits, n))
    assert py.dt_depth(bits, n) == cy.dt_depth(bits, n)
    for a, b in zip(py.alg_a_profile(c_py, n), cy.alg_a_profile(c_cy, n)):
        assert np.array_equal(a, b)
    assert tuple(map(int, py.lemma1_scan(bits, c_py, n))) == tuple(map(int, cy.lemma1_scan(bits, c_cy, n)))
    x = seed % (1 << n)
    for a, b in zip(py.packing_table(bits, n, x), cy.packing_table(bits, n, x)):
        assert np.array_equal(a, b)


def test_dt_depth_n4_sample_vs_plain(backend):
    for t in all_tables(4)[::997]:
        assert backend.dt_depth(t.as_array(), 4) == decision_tree_depth_plain(t.bits, 4)


def test_dt_depth_parity(backend):
    for n in range(1, 7):
        par = TruthTable.from_function(n, lambda x: sum(x) % 2)
        assert backend.dt_depth(par.as_array(), n) == n
