import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from zkqap.algebra import Field, Polynomial, default_field
from zkqap.errors import BackendMismatch, FormatError, InsufficientPowers
from zkqap.group import (
    GroupElement,
    TargetElement,
    default_backend,
    encrypt,
    eval_encrypted_poly,
    group_mul,
    group_scale,
    inspect_exponent,
    pairing,
    parse_tagged,
    simulation_backend,
    target_pow,
)

B = default_backend()
F = default_field()
scalar = st.integers(min_value=0, max_value=F.p - 1)


def test_encrypt_zero_is_identity():
    assert encrypt(0) == B.identity


def test_homomorphic_addition_and_scaling():
    assert group_mul(encrypt(3), encrypt(2)) == encrypt(5)
    assert group_scale(encrypt(3), 2) == encrypt(6)
    assert encrypt(5) * encrypt(3).inverse() == encrypt(2)
    assert encrypt(5) / encrypt(3) == encrypt(2)
    assert encrypt(7) * encrypt(0) == encrypt(7)
    assert group_scale(encrypt(7), 1) == encrypt(7)
    assert group_scale(encrypt(7), 0) == B.identity


def test_scaling_accepts_field_elements():
    assert encrypt(3) ** F(4) == encrypt(12)
    assert encrypt(F(3)) == encrypt(3)


def test_pairing_examples():
    assert pairing(encrypt(3), encrypt(2)) == B.target_exp(6)
    assert pairing(encrypt(11), encrypt(5)) == pairing(encrypt(5), encrypt(11))
    a, b, c, d = 3, 4, 5, 6
    combined = pairing(encrypt(a), encrypt(b)) * pairing(encrypt(c), encrypt(d))
    assert combined == B.target_exp(a * b + c * d)


def test_pairing_rejects_target_elements():
    gt = pairing(encrypt(2), encrypt(3))
    with pytest.raises(TypeError):
        pairing(gt, encrypt(1))
    with pytest.raises(TypeError):
        pairing(encrypt(1), gt)
    with pytest.raises(TypeError):
        gt * encrypt(1)
    with pytest.raises(TypeError):
        encrypt(1) * gt


def test_backend_mismatch():
    other = simulation_backend(Field(2**31 - 1))
    with pytest.raises(BackendMismatch):
        encrypt(1) * other.encrypt(1)
    with pytest.raises(BackendMismatch):
        pairing(encrypt(1), other.encrypt(1))


def test_eval_encrypted_cubic():
    s = 12345
    p = Polynomial([0, 2, -3, 1])
    powers = [encrypt(pow(s, i, F.p)) for i in range(4)]
    assert eval_encrypted_poly(p, powers) == encrypt(p(s))
    assert eval_encrypted_poly([F(9)], powers) == powers[0] ** 9
    assert eval_encrypted_poly([0, 0, 0], powers) == B.identity


def test_eval_encrypted_needs_enough_powers():
    powers = [encrypt(1), encrypt(5)]
    with pytest.raises(InsufficientPowers):
        eval_encrypted_poly([1, 2, 3], powers)


def test_serialization_round_trip():
    for v in (0, 1, 2**40 + 3, F.p - 1):
        e = encrypt(v)
        assert len(e.hex()) == 2 * B.element_width
        assert B.from_hex(e.hex()) == e
        assert parse_tagged(e.tagged()) == e
        assert e.tagged().startswith(B.backend_id + "/")


def test_serialization_rejects_bad_input():
    with pytest.raises(FormatError):
        B.from_hex("00")
    with pytest.raises(FormatError):
        B.from_hex("ff" * B.element_width)
    with pytest.raises(FormatError):
        parse_tagged("nonsense")


def test_exponent_hidden_from_repr():
    e = encrypt(123456789)
    assert "123456789" not in repr(e)


def test_inspection_needs_test_mode():
    code = "from zkqap.group import encrypt, inspect_exponent; inspect_exponent(encrypt(3))"
    env = {k: v for k, v in os.environ.items() if k != "ZKQAP_TEST_MODE"}
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert res.returncode != 0 and "TransparencyDisabled" in res.stderr
    assert inspect_exponent(encrypt(3)) == 3


@given(scalar, scalar, scalar)
def test_bilinearity(a, b, k):
    A, Bx = encrypt(a), encrypt(b)
    assert pairing(A ** k, Bx) == target_pow(pairing(A, Bx), k)
    assert pairing(A, Bx ** k) == target_pow(pairing(A, Bx), k)


def test_homomorphism_random():
    rng = random.Random(8)
    for _ in range(200):
        a, b, k = (rng.randrange(F.p) for _ in range(3))
        assert encrypt(a) * encrypt(b) == encrypt(a + b)
        assert group_scale(encrypt(a), k) == encrypt(a * k)


@given(st.lists(scalar, min_size=1, max_size=17), scalar)
def test_encrypted_evaluation_matches_plain(coeffs, s):
    p = Polynomial(coeffs, F)
    powers = [encrypt(pow(s, i, F.p)) for i in range(len(coeffs))]
    assert eval_encrypted_poly(p, powers) == encrypt(p(s))


def test_type_tags():
    assert isinstance(encrypt(1), GroupElement)
    assert isinstance(pairing(encrypt(1), encrypt(1)), TargetElement)
