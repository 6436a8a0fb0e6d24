"""Forgeries against the weakened protocol variants.

Each attack builds a proof for a statement the prover should not be able to
prove. Against its matching weak variant the proof verifies; against
``Variant.FINAL`` the same strategy is rejected.
"""
from __future__ import annotations

from ..errors import AttackFailed, UnsatisfiedConstraints
from ..group import eval_encrypted_poly
from ..qap import QAP, assemble_operand, cofactor
from .protocol import Proof, ProvingKey, VerificationKey, prove

SQUARE_CHAIN = "def sq(x) -> z { y = x * x; z = y * y; }"
SQUARE_WITH_FLAG = "def sq(a, w) -> b { b = a * a; assert_bool(w); }"


def _cofactor(L, R, O, qap):
    try:
        return cofactor(L, R, O, qap.target)
    except UnsatisfiedConstraints:
        raise AttackFailed("forged operands do not satisfy the operation check") from None


def forge_with_assignments(pk: ProvingKey, qap: QAP, left, right, out, beta) -> Proof:
    """Proof whose operands use separate value vectors per operand.

    ``beta`` is the vector used for the consistency term. Public entries
    (indices 0..m) must match what the verifier will supply.
    """
    f = qap.field
    L = assemble_operand(qap.left, left, f)
    R = assemble_operand(qap.right, right, f)
    O = assemble_operand(qap.out, out, f)
    h = _cofactor(L, R, O, qap)
    k = pk.m + 1
    me = pk.backend.multiexp
    return Proof(
        me(pk.l[k:], left[k:]),
        me(pk.r[k:], right[k:]),
        me(pk.o[k:], out[k:]),
        eval_encrypted_poly(h, pk.powers),
        me(pk.l_alpha, left[k:]),
        me(pk.r_alpha, right[k:]),
        me(pk.o_alpha, out[k:]),
        me(pk.z, beta[k:]),
    )


def attack_swap_operands(pk: ProvingKey, qap: QAP, w, swap: bool = True) -> Proof:
    """Prove O x R = L instead of L x R = O by exchanging the left and output slots.

    ``w`` must satisfy the swapped system. Works only when one alpha covers
    every operand, because the left slot then carries output-shifted terms.
    """
    if not swap:
        return prove(pk, qap, w, zk=False)
    vals = w.ints() if hasattr(w, "ints") else [int(v) for v in w]
    f = qap.field
    m = pk.m
    pub = vals[: m + 1] + [0] * (len(vals) - m - 1)
    mine = [0] * (m + 1) + vals[m + 1 :]
    # the verifier still adds its public share on the original sides
    L = assemble_operand(qap.out, mine, f) + assemble_operand(qap.left, pub, f)
    R = assemble_operand(qap.right, vals, f)
    O = assemble_operand(qap.left, mine, f) + assemble_operand(qap.out, pub, f)
    h = _cofactor(L, R, O, qap)
    k = m + 1
    me = pk.backend.multiexp
    priv = vals[k:]
    return Proof(
        me(pk.o[k:], priv),
        me(pk.r[k:], priv),
        me(pk.l[k:], priv),
        eval_encrypted_poly(h, pk.powers),
        me(pk.o_alpha, priv),
        me(pk.r_alpha, priv),
        me(pk.l_alpha, priv),
        me(pk.z, priv),
    )


def _lookup(qap: QAP, *names):
    try:
        return [qap.names.index(n) for n in names]
    except ValueError:
        raise AttackFailed(f"circuit lacks variables {names}") from None


def attack_inconsistent_variable(pk: ProvingKey, qap: QAP, x: int, v_r: int) -> Proof:
    """Give y different values in the left and right operands of z = y * y.

    Under one shared beta the consistency check only sees
    beta (v_l w + v_r w + v_o u) with w = l_y(s) = r_y(s), u = o_y(s);
    choosing v_l = 2 v_o - v_r and reporting v_o in the checksum balances it.
    Needs the :data:`SQUARE_CHAIN` circuit with every variable private.
    """
    p = qap.field.p
    ix, iy, iz = _lookup(qap, "x", "y", "z")
    if qap.left[iy] != qap.right[iy]:
        raise AttackFailed("y must have identical left and right polynomials")
    v_o = x * x % p
    v_l = (2 * v_o - v_r) % p
    z = v_l * v_r % p
    if pk.m != 0:
        raise AttackFailed("attack expects every variable to be prover-owned")

    def vec(y_value):
        out = [0] * (qap.n + 1)
        out[0], out[ix], out[iy], out[iz] = 1, x % p, y_value, z
        return out

    # the consistency checksum sees y = v_o
    return forge_with_assignments(pk, qap, vec(v_l), vec(v_r % p), vec(v_o), vec(v_o))


def attack_beta_malleate(pk: ProvingKey, vk: VerificationKey, qap: QAP, a: int = 2, shift: int = 3) -> Proof:
    """Use a = 2 on the left and a + shift on the right of b = a * a.

    The extra constant on the right operand is paid for with g, g^{alpha_r}
    and the published g^{beta_r}. Without raw betas (the gamma-masked keys)
    the best available substitute is g^{beta gamma}, which does not balance.
    Needs the :data:`SQUARE_WITH_FLAG` circuit with every variable private.
    """
    p = qap.field.p
    ia, ib, iw = _lookup(qap, "a", "b", "w")
    if pk.m != 0:
        raise AttackFailed("attack expects every variable to be prover-owned")
    n = qap.n + 1
    vals = [0] * n
    vals[0], vals[ia], vals[ib], vals[iw] = 1, a % p, a * (a + shift) % p, 0
    f = qap.field
    L = assemble_operand(qap.left, vals, f)
    R = assemble_operand(qap.right, vals, f) + shift
    O = assemble_operand(qap.out, vals, f)
    h = _cofactor(L, R, O, qap)
    me = pk.backend.multiexp
    mine = vals[1:]
    beta_r = vk.beta_r if vk.beta_r is not None else vk.beta_gamma
    return Proof(
        me(pk.l[1:], mine),
        me(pk.r[1:], mine) * vk.g ** shift,
        me(pk.o[1:], mine),
        eval_encrypted_poly(h, pk.powers),
        me(pk.l_alpha, mine),
        me(pk.r_alpha, mine) * vk.alpha_r ** shift,
        me(pk.o_alpha, mine),
        me(pk.z, mine) * beta_r ** shift,
    )
