import json

import pytest
from hypothesis import given, settings, strategies as st

from boolq.core import (
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
    point_from_string,
    point_to_string,
    poly_from_truth_table,
    poly_to_json,
    popcount,
    restrict,
    truth_table_from_poly,
)
from boolq.errors import InvalidParams, NonBooleanPolynomial, ParseError

from conftest import all_tables
from oracles import interpolate

OR2 = MultilinearPoly(2, {0b01: 1, 0b10: 1, 0b11: -1})
PARITY2 = MultilinearPoly(2, {0b01: 1, 0b10: 1, 0b11: -2})


def tt(text):
    return parse_truth_table(text)


class TestPolyFromTruthTable:
    def test_and2(self):
        assert dict(poly_from_truth_table(tt("n=2;bits=0001")).terms) == {0b11: 1}

    def test_or2(self):
        assert poly_from_truth_table(tt("n=2;bits=0111")) == OR2

    def test_parity2(self):
        assert poly_from_truth_table(tt("n=2;bits=0110")) == PARITY2

    def test_const0_is_empty(self):
        assert dict(poly_from_truth_table(tt("n=3;bits=00000000")).terms) == {}

    def test_matches_interpolation_oracle(self, tables3):
        for t in tables3:
            assert dict(poly_from_truth_table(t).terms) == interpolate(t.bits, 3)

    def test_coefficient_bound(self, tables3):
        for t in tables3:
            for m, c in poly_from_truth_table(t).terms.items():
                assert abs(c) <= 2 ** popcount(m)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(OR2, (1, 1)) == 1
        assert evaluate(MultilinearPoly(3), 5) == 0
        assert evaluate(PARITY2, (1, 1)) == 0
        assert evaluate(PARITY2, 0b01) == 1

    def test_bad_arity(self):
        with pytest.raises(InvalidParams):
            evaluate(OR2, (1, 1, 1))


class TestRestrict:
    def test_x1_zero(self):
        assert dict(restrict(OR2, PartialAssignment({1: 0})).terms) == {0b10: 1}

    def test_x1_one(self):
        assert dict(restrict(OR2, PartialAssignment({1: 1})).terms) == {0: 1}

    def test_empty_is_identity(self):
        assert restrict(OR2, PartialAssignment({})) is OR2

    def test_out_of_range(self):
        with pytest.raises(InvalidParams):
            restrict(OR2, PartialAssignment({3: 1}))

    @settings(max_examples=200, deadline=None)
    @given(n=st.integers(1, 6), data=st.data())
    def test_soundness(self, n, data):
        bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
        p = poly_from_truth_table(TruthTable(n, bytes(bits)))
        fixed = data.draw(st.integers(0, (1 << n) - 1))
        values = data.draw(st.integers(0, (1 << n) - 1))
        a = PartialAssignment.from_masks(fixed, values)
        q = restrict(p, a)
        assert degree(q) <= degree(p)
        assert all(m & fixed == 0 for m in q.terms)
        for x in range(1 << n):
            assert evaluate(q, x) == evaluate(p, a.merge(x))


class TestDegreeAndMaxonomial:
    def test_degree(self):
        assert degree(OR2) == 2
        assert degree(MultilinearPoly(2, {0: 1})) == 0
        assert degree(MultilinearPoly(2)) == 0

    @pytest.mark.parametrize("n", range(1, 9))
    def test_parity_degree(self, n):
        par = TruthTable.from_function(n, lambda x: sum(x) % 2)
        assert degree(poly_from_truth_table(par)) == n

    def test_first_maxonomial(self):
        assert first_maxonomial(OR2) == 0b11
        assert first_maxonomial(MultilinearPoly(3, {0b011: 1, 0b110: 1})) == 0b011

    def test_constant_has_none(self):
        with pytest.raises(InvalidParams):
            first_maxonomial(MultilinearPoly(2, {0: 1}))

    def test_first_maxonomial_properties(self, tables3):
        for t in tables3:
            p = poly_from_truth_table(t)
            if p.is_constant():
                continue
            m = first_maxonomial(p)
            assert popcount(m) == degree(p)
            assert m == min(maxonomials(p))
            assert first_maxonomial(p) == m


class TestFlip:
    def test_examples(self):
        assert flip(0b0000, 0b0101) == 0b0101
        assert flip(0b1011, 0) == 0b1011
        assert flip(0b1111, 0b1111) == 0

    @given(st.integers(0, (1 << 20) - 1), st.integers(0, (1 << 20) - 1))
    def test_involution(self, x, b):
        assert flip(flip(x, b), b) == x


class TestTruthTableFromPoly:
    def test_and2(self):
        assert truth_table_from_poly(MultilinearPoly(2, {0b11: 1})) == tt("n=2;bits=0001")

    def test_round_trip_all_n3(self, tables3):
        for t in tables3:
            assert truth_table_from_poly(poly_from_truth_table(t)) == t

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(1, 10), data=st.data())
    def test_round_trip_random(self, n, data):
        value = data.draw(st.integers(0, (1 << (1 << n)) - 1))
        t = TruthTable.from_int(n, value)
        assert truth_table_from_poly(poly_from_truth_table(t)) == t

    def test_non_boolean(self):
        with pytest.raises(NonBooleanPolynomial) as exc:
            truth_table_from_poly(MultilinearPoly(2, {0: 2}))
        assert exc.value.point == 0 and exc.value.value == 2

    def test_non_boolean_witness_point(self):
        with pytest.raises(NonBooleanPolynomial) as exc:
            truth_table_from_poly(MultilinearPoly(2, {0b01: 1, 0b10: 1}))
        assert exc.value.point == 3 and exc.value.value == 2


class TestFormats:
    def test_bits_round_trip(self, tables3):
        for t in tables3:
            assert parse_truth_table(t.to_text()) == t
            assert parse_truth_table(t.to_text(hex=True)) == t

    def test_index_convention(self):
        t = tt("n=2;bits=0100")
        assert t(0b01) == 1  # x1 = 1, x2 = 0
        assert point_from_string("10") == 0b01
        assert point_to_string(0b01, 2) == "10"

    def test_hex_little_endian_nibbles(self):
        # bits 0..3 = 0,1,1,1 -> nibble 0b1110 = e
        assert tt("n=2;bits=0111").to_text(hex=True) == "n=2;hex=e"
        assert tt("n=3;hex=1f").bits == bytes([1, 0, 0, 0, 1, 1, 1, 1])
        assert tt("n=1;hex=2") == tt("n=1;bits=01")

    @pytest.mark.parametrize("bad", [
        "n=2;bits=011", "n=2;bits=01a1", "bits=0111", "n=x;bits=01", "n=2", "n=2;bits=0111;hex=e",
        "n=1;hex=4", "n=3;hex=zz", "n=0;bits=0", "n=21;bits=0",
    ])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_truth_table(bad)

    def test_poly_document(self):
        doc = json.loads(poly_to_json(OR2))
        assert doc == {"n": 2, "terms": [{"mask": "0b01", "coeff": 1}, {"mask": "0b10", "coeff": 1},
                                         {"mask": "0b11", "coeff": -1}]}
        assert parse_poly(poly_to_json(OR2)) == OR2

    def test_poly_round_trip(self, tables3):
        for t in tables3:
            p = poly_from_truth_table(t)
            assert parse_poly(poly_to_json(p)) == p

    @pytest.mark.parametrize("bad", [
        "not json", '{"terms": []}', '{"n": 2, "terms": [{"mask": "0b111", "coeff": 1}]}',
        '{"n": 2, "terms": [{"mask": "0b11", "coeff": 1.5}]}',
        '{"n": 2, "terms": [{"mask": "0b11", "coeff": 1}, {"mask": "0b011", "coeff": 1}]}',
    ])
    def test_poly_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_poly(bad)


class TestTypes:
    def test_zero_coefficients_dropped(self):
        assert dict(MultilinearPoly(2, {0b01: 0, 0b10: 3}).terms) == {0b10: 3}

    def test_poly_immutable_and_hashable(self):
        with pytest.raises(AttributeError):
            OR2.n = 3
        with pytest.raises(TypeError):
            OR2.terms[0] = 1
        assert hash(OR2) == hash(MultilinearPoly(2, {3: -1, 2: 1, 1: 1}))

    def test_truth_table_length(self):
        with pytest.raises(InvalidParams):
            TruthTable(2, bytes(3))
        with pytest.raises(InvalidParams):
            TruthTable(1, b"\x00\x02")

    def test_partial_assignment_validation(self):
        with pytest.raises(InvalidParams):
            PartialAssignment({0: 1})
        with pytest.raises(InvalidParams):
            PartialAssignment({1: 2})

    def test_from_int_to_int(self):
        for v in (0, 1, 0xBEEF, (1 << 16) - 1):
            assert TruthTable.from_int(4, v).to_int() == v
