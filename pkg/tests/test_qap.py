import random

import pytest
from hypothesis import given, strategies as st

from oracles import fuzz_instance
from zkqap.algebra import Polynomial, default_field
from zkqap.circuit import compile_source
from zkqap.errors import LengthMismatch, UnsatisfiedConstraints
from zkqap.qap import assemble, build_qap, cofactor

F = default_field()
half = F.frac(1, 2)


def poly(*coeffs):
    """Lowest degree first."""
    return Polynomial([F(c) for c in coeffs], F)


@pytest.fixture(scope="module")
def honest(calc):
    return calc.witness({"w": 1, "a": 3, "b": 2})


def test_target_vanishes_on_constraint_points(calc_qap):
    assert calc_qap.target == poly(-6, 11, -6, 1)
    assert all(calc_qap.target(j) == 0 for j in (1, 2, 3))


def test_variable_polynomials_match_worked_example(calc_qap):
    i = calc_qap.names.index
    assert calc_qap.left[i("a")] == poly(3, F.frac(-5, 2), half)
    assert calc_qap.right[i("m")] == poly(-3, 4, -1)
    assert calc_qap.out[i("v")] == poly(-3, 4, -1)
    assert calc_qap.left[i("one")].is_zero


def test_polynomials_interpolate_constraint_columns(calc_qap):
    r1cs = calc_qap.r1cs
    for ops, side in zip(calc_qap.operands(), ("left", "right", "out")):
        for var in range(r1cs.n + 1):
            for j, con in enumerate(r1cs.constraints, 1):
                assert ops[var](j) == getattr(con, side).get(var, 0)


def test_assembled_operands_and_cofactor(calc_qap, honest):
    L, R, O = assemble(calc_qap, honest)
    assert L == poly(7, -5, 1)
    assert R == poly(4, F.frac(-5, 2), half)
    assert O == poly(16, F.frac(-25, 2), F.frac(5, 2))
    assert cofactor(L, R, O, calc_qap.target) == poly(-2, half)


def test_assemble_agrees_with_explicit_sum(calc_qap, honest):
    vals = honest.ints()
    for ops, fast in zip(calc_qap.operands(), assemble(calc_qap, honest)):
        explicit = Polynomial.zero(F)
        for v, p in zip(vals, ops):
            explicit = explicit + p.scale(v)
        assert explicit == fast


def test_tampered_output_is_not_divisible(calc_qap, honest):
    bad = honest.replace(calc_qap.names.index("v"), 7)
    with pytest.raises(UnsatisfiedConstraints):
        cofactor(*assemble(calc_qap, bad), calc_qap.target)


def test_witness_length_is_checked(calc_qap, honest):
    with pytest.raises(LengthMismatch):
        assemble(calc_qap, honest.ints()[:-1])


def test_evaluate_at_matches_polynomials(calc_qap):
    s = F(987654321)
    for ops, values in zip(calc_qap.operands(), calc_qap.evaluate_at(s)):
        assert values == [ops[i](s).value for i in range(len(ops))]


def test_zero_degree_hazards():
    q = build_qap(compile_source("def f(a, b) -> x { x = a * b; }").r1cs)
    assert set(q.zero_degree_hazards) == {1, 2, 3}
    assert build_qap(compile_source("def f(a) -> z { y = a * a; z = y * y; }").r1cs).zero_degree_hazards == ()


def test_satisfaction_iff_divisibility():
    rng = random.Random(5)
    for _ in range(100):
        circuit, _, w = fuzz_instance(rng)
        q = build_qap(circuit.r1cs)
        h = cofactor(*assemble(q, w), q.target)
        assert h.degree <= q.d - 2
        i = rng.randrange(1, q.n + 1)
        bad = w.replace(i, w[i] + rng.randrange(1, F.p))
        L, R, O = assemble(q, bad)
        divisible = ((L * R - O) % q.target).is_zero
        assert divisible == circuit.r1cs.is_satisfied(bad)


@given(st.integers(0, 1), st.integers(0, 50), st.integers(0, 50))
def test_calc_divisibility_property(calc, calc_qap, w, a, b):
    wit = calc.witness({"w": w, "a": a, "b": b})
    L, R, O = assemble(calc_qap, wit)
    h = cofactor(L, R, O, calc_qap.target)
    assert L * R - O == h * calc_qap.target
