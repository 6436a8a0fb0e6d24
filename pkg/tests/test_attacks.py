import random

import pytest

from zkqap.circuit import compile_source
from zkqap.errors import AttackFailed
from zkqap.group import inspect_exponent
from zkqap.pinocchio import (
    SQUARE_CHAIN,
    SQUARE_WITH_FLAG,
    Variant,
    attack_beta_malleate,
    attack_inconsistent_variable,
    attack_swap_operands,
    setup,
    setup_with_trapdoor,
    verify,
    verify_checks,
)
from zkqap.qap import build_qap

# one, w, v, a, b, m: private operands swapped (m b = a), public ones kept, so (w - a - b)(m - a - b) = v
SWAPPED = [1, 0, 40, 6, 2, 3]


@pytest.fixture(scope="module")
def chain_qap():
    return build_qap(compile_source(SQUARE_CHAIN).r1cs)


@pytest.fixture(scope="module")
def flag_qap():
    return build_qap(compile_source(SQUARE_WITH_FLAG).r1cs)


def test_swapped_witness_violates_original(calc):
    assert not calc.r1cs.is_satisfied(SWAPPED)


@pytest.mark.parametrize("seed", range(5))
def test_operand_swap(calc_qap, seed):
    weak_pk, weak_vk = setup(calc_qap, 2, random.Random(seed), Variant.NAIVE_ALPHA)
    assert verify(weak_vk, attack_swap_operands(weak_pk, calc_qap, SWAPPED), [0, 40])
    pk, vk = setup(calc_qap, 2, random.Random(seed), Variant.FINAL)
    checks = verify_checks(vk, attack_swap_operands(pk, calc_qap, SWAPPED), [0, 40])
    assert not checks["restriction"] and not all(checks.values())


@pytest.mark.parametrize("seed", range(5))
def test_inconsistent_variable(chain_qap, seed):
    weak_pk, weak_vk = setup(chain_qap, 0, random.Random(seed), Variant.PER_OPERAND_ALPHA)
    assert verify(weak_vk, attack_inconsistent_variable(weak_pk, chain_qap, 3, 5), [])
    pk, vk = setup(chain_qap, 0, random.Random(seed), Variant.FINAL)
    checks = verify_checks(vk, attack_inconsistent_variable(pk, chain_qap, 3, 5), [])
    assert checks == {"restriction": True, "consistency": False, "operation": True}


def test_inconsistent_values_really_differ(chain_qap):
    pk, _, toxic = setup_with_trapdoor(chain_qap, 0, random.Random(0), Variant.PER_OPERAND_ALPHA)
    proof = attack_inconsistent_variable(pk, chain_qap, 3, 5)
    iy = chain_qap.names.index("y")
    s = toxic.s
    l_y, r_y = chain_qap.left[iy](s), chain_qap.right[iy](s)
    # y contributes 13 * l_y(s) on the left but 5 * r_y(s) on the right
    l_rest = inspect_exponent(proof.l) - (13 * l_y).value
    r_rest = inspect_exponent(proof.r) - (5 * r_y).value
    ix = chain_qap.names.index("x")
    assert l_rest % l_y.field.p == (3 * chain_qap.left[ix](s)).value
    assert r_rest % r_y.field.p == (3 * chain_qap.right[ix](s)).value


@pytest.mark.parametrize("seed", range(5))
def test_beta_malleation(flag_qap, seed):
    weak_pk, weak_vk = setup(flag_qap, 0, random.Random(seed), Variant.UNMASKED_BETA)
    assert verify(weak_vk, attack_beta_malleate(weak_pk, weak_vk, flag_qap), [])
    pk, vk = setup(flag_qap, 0, random.Random(seed), Variant.FINAL)
    assert not verify(vk, attack_beta_malleate(pk, vk, flag_qap), [])


def test_attacks_refuse_unsuitable_circuits(calc_qap):
    pk, vk = setup(calc_qap, 2, random.Random(0))
    with pytest.raises(AttackFailed):
        attack_inconsistent_variable(pk, calc_qap, 3, 5)
    with pytest.raises(AttackFailed):
        attack_beta_malleate(pk, vk, calc_qap)
    with pytest.raises(AttackFailed):
        attack_swap_operands(pk, calc_qap, [1, 1, 40, 6, 2, 3])
