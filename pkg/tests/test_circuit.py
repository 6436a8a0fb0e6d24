import random

import pytest

from oracles import fuzz_instance, interpret
from zkqap.algebra import default_field
from zkqap.circuit import R1CS, compile_source, parse, tokenize
from zkqap.errors import (
    AssertionFailed,
    DivisionByZero,
    DuplicateAssignment,
    FormatError,
    MissingInput,
    NonQuadratic,
    ParseError,
    UndefinedVariable,
    WitnessError,
)

F = default_field()


def named(r1cs, lc):
    return {r1cs.names[i]: F.signed(c) for i, c in lc.items()}


def test_calc_flattens_to_worked_example(calc):
    r = calc.r1cs
    assert (r.d, r.n, r.m) == (3, 5, 2)
    assert r.names[0] == "one" and r.public_names == ("w", "v")
    rows = [tuple(named(r, lc) for lc in c.sides()) for c in r.constraints]
    assert rows == [
        ({"a": 1}, {"b": 1}, {"m": 1}),
        ({"w": 1}, {"m": 1, "a": -1, "b": -1}, {"v": 1, "a": -1, "b": -1}),
        ({"w": 1}, {"w": 1}, {"w": 1}),
    ]


def test_calc_witness_values(calc):
    w = calc.witness({"w": 1, "a": 3, "b": 2})
    assert w["m"] == 6 and w["v"] == 6 and w[0] == 1
    assert calc.r1cs.is_satisfied(w)
    assert calc.witness({"w": 0, "a": 4, "b": 2})["v"] == 6


def test_calc_booleanity(calc):
    with pytest.raises(AssertionFailed):
        calc.witness({"w": 2, "a": 3, "b": 2})


def test_addition_is_multiplied_by_one():
    r = compile_source("def f(a, b) -> x { x = a + b; }").r1cs
    assert r.d == 1
    c = r.constraints[0]
    assert named(r, c.left) == {"a": 1, "b": 1}
    assert named(r, c.right) == {"one": 1}
    assert named(r, c.out) == {"x": 1}


def test_range_gadget():
    r = compile_source("def f(a) -> x { x = a; assert_range(a, 4); }").r1cs
    decomposition = r.constraints[1]
    assert named(r, decomposition.left) == {"a": 1}
    assert named(r, decomposition.right) == {"one": 1}
    assert named(r, decomposition.out) == {"a.bit0": 1, "a.bit1": 2, "a.bit2": 4, "a.bit3": 8}
    for k, c in enumerate(r.constraints[2:]):
        bit = f"a.bit{k}"
        assert all(named(r, lc) == {bit: 1} for lc in c.sides())


def test_range_gadget_witness():
    c = compile_source("def f(a) -> x { x = a; assert_range(a, 4); }")
    w = c.witness({"a": 11})
    assert [w[f"a.bit{k}"].value for k in range(4)] == [1, 1, 0, 1]
    assert c.r1cs.is_satisfied(w)
    with pytest.raises(AssertionFailed):
        c.witness({"a": 16})


def test_division_encoding():
    c = compile_source("def f(a, b) -> r { r = a / b; }")
    con = c.r1cs.constraints[0]
    r = c.r1cs
    assert (named(r, con.left), named(r, con.right), named(r, con.out)) == ({"b": 1}, {"r": 1}, {"a": 1})
    w = c.witness({"a": 12, "b": 4})
    assert w["r"] == 3
    with pytest.raises(DivisionByZero):
        c.witness({"a": 1, "b": 0})


def test_division_by_constants():
    c = compile_source("def f(a) -> r { r = a / 2 + 1; }")
    assert c.r1cs.d == 1
    assert c.witness({"a": 8})["r"] == 5
    with pytest.raises(NonQuadratic):
        compile_source("def f(a) -> r { r = a / (3 - 3); }")
    with pytest.raises(NonQuadratic):
        compile_source("def f(a) -> r { r = a / (a - a); }")


def test_nested_products_get_temporaries():
    c = compile_source("def f(a, b, c) -> x { x = a * b * c + (a + 1) * (b - 1); }")
    assert any(name.startswith("tmp.") for name in c.r1cs.names)
    w = c.witness({"a": 2, "b": 3, "c": 4})
    assert w["x"] == 2 * 3 * 4 + 3 * 2
    assert c.r1cs.is_satisfied(w)


def test_negative_literals_are_field_elements():
    c = compile_source("def f(a) -> x { x = -3 * a + -(a * a); }")
    assert c.witness({"a": 2})["x"] == F(-10)


def test_parse_errors():
    with pytest.raises(ParseError) as err:
        parse("")
    assert (err.value.line, err.value.col) == (1, 1)
    with pytest.raises(ParseError) as err:
        parse("def f(a) -> x {\n  x = a +;\n}")
    assert (err.value.line, err.value.col) == (2, 10)
    with pytest.raises(ParseError):
        parse("def f(a) -> x { x = a $ 2; }")
    with pytest.raises(ParseError):
        parse("def f(a) -> x { assert_range(a, 0); x = a; }")


def test_single_assignment():
    with pytest.raises(DuplicateAssignment):
        parse("def f(a, b) -> x { x = a * b; x = a; }")
    with pytest.raises(DuplicateAssignment):
        parse("def f(a) -> x { a = 1; x = a; }")
    with pytest.raises(DuplicateAssignment):
        parse("def f(a, a) -> x { x = a; }")


def test_use_before_assignment():
    with pytest.raises(UndefinedVariable):
        parse("def f(a) -> x { x = y; y = a; }")
    with pytest.raises(UndefinedVariable):
        parse("def f(a) -> x { assert_bool(q); x = a; }")
    with pytest.raises(UndefinedVariable):
        parse("def f(a) -> x { y = a; }")


def test_comments_and_multiple_outputs():
    src = "# header\ndef f(pub a, b) -> (x, y) { # body\n x = a * b; y = x + 1; }"
    c = compile_source(src)
    assert c.r1cs.public_names == ("a", "x", "y")
    assert [t[0] for t in tokenize("a -> b")] == ["ident", "->", "ident", "eof"]


def test_witness_input_errors(calc):
    with pytest.raises(MissingInput):
        calc.witness({"w": 1, "a": 3})
    with pytest.raises(WitnessError):
        calc.witness({"w": 1, "a": 3, "b": 2, "zz": 1})


def test_public_indices_ignore_private_order():
    a = compile_source("def f(pub p, x, y) -> o { o = p * x + y; }").r1cs
    b = compile_source("def f(y, pub p, x) -> o { o = p * x + y; }").r1cs
    assert a.names[: a.m + 1] == b.names[: b.m + 1] == ("one", "p", "o")


def test_r1cs_json_round_trip(calc):
    text = calc.r1cs.to_json()
    back = R1CS.from_json(text)
    assert back == calc.r1cs and back.to_json() == text
    with pytest.raises(FormatError):
        R1CS.from_json('{"n": 1}')


def test_fuzz_soundness_of_flattening():
    rng = random.Random(11)
    for _ in range(100):
        circuit, _, w = fuzz_instance(rng)
        r1cs = circuit.r1cs
        assert r1cs.is_satisfied(w)
        # each constraint touches a variable on every side
        assert all(all(lc for lc in c.sides()) for c in r1cs.constraints)
        # inputs may be unconstrained (unused, or cancelled as in p - p), computed values may not
        params = {p.name for p in circuit.program.params}
        for i in range(1, r1cs.n + 1):
            if r1cs.names[i] in params:
                continue
            assert not r1cs.is_satisfied(w.replace(i, w[i] + rng.randrange(1, F.p)))


def test_fuzz_semantics_preserved():
    rng = random.Random(12)
    for _ in range(100):
        circuit, _, w = fuzz_instance(rng)
        inputs = {p.name: w[p.name].value for p in circuit.program.params}
        env = interpret(circuit.program, inputs, F.p)
        for name, value in env.items():
            assert w[name] == value
