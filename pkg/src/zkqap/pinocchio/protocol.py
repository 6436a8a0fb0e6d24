"""Setup, proving and verification for QAP statements.

:class:`Variant` selects between the final protocol and three deliberately
weakened predecessors that exist only so the attack suite has something to
break. Everything user-facing uses ``Variant.FINAL``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, fields
from typing import Sequence

from .. import testing
from ..algebra import Polynomial, lagrange_basis
from ..errors import (
    BackendMismatch,
    DegenerateQap,
    LengthMismatch,
    PublicCountOutOfRange,
    PublicInputLengthMismatch,
    TransparencyDisabled,
)
from ..group import BilinearBackend, GroupElement, eval_encrypted_poly, pairing, simulation_backend
from ..kop import Toxic
from ..qap import QAP, assemble, cofactor


class Variant(enum.Enum):
    NAIVE_ALPHA = "naive-alpha"  # one alpha for every operand, no consistency check
    PER_OPERAND_ALPHA = "per-operand-alpha"  # alpha per operand, one shared beta, unmasked
    UNMASKED_BETA = "unmasked-beta"  # beta per operand, raw g^beta published
    FINAL = "final"  # rho-ingrained generators, beta masked by gamma

    @property
    def code(self) -> int:
        return list(Variant).index(self)

    @classmethod
    def from_code(cls, code: int) -> Variant:
        return list(cls)[code]


@dataclass(frozen=True)
class Secrets:
    s: int
    rho_l: int
    rho_r: int
    alpha_l: int
    alpha_r: int
    alpha_o: int
    beta_l: int
    beta_r: int
    beta_o: int
    gamma: int


def sample_secrets(qap: QAP, rng: random.Random, variant: Variant) -> Secrets:
    p = qap.field.p

    def rand():
        return rng.randrange(1, p)

    s = rand()
    while s <= qap.d:  # t(s) = 0 would void every check
        s = rand()
    if variant is Variant.NAIVE_ALPHA:
        alpha = rand()
        return Secrets(s, 1, 1, alpha, alpha, alpha, 0, 0, 0, 1)
    alphas = (rand(), rand(), rand())
    if variant is Variant.PER_OPERAND_ALPHA:
        beta = rand()
        return Secrets(s, 1, 1, *alphas, beta, beta, beta, 1)
    if variant is Variant.UNMASKED_BETA:
        return Secrets(s, 1, 1, *alphas, rand(), rand(), rand(), 1)
    rho_l, rho_r = rand(), rand()
    beta = rand()
    return Secrets(s, rho_l, rho_r, *alphas, beta, beta, beta, rand())


@dataclass(frozen=True)
class ProvingKey:
    variant: Variant
    d: int
    n: int
    m: int
    powers: tuple  # g^{s^k}, k = 0..d
    l: tuple  # g_l^{l_i(s)}, i = 0..n
    r: tuple
    o: tuple
    l_alpha: tuple  # g_l^{alpha_l l_i(s)}, i = m+1..n
    r_alpha: tuple
    o_alpha: tuple
    z: tuple  # g_l^{beta l_i(s)} g_r^{beta r_i(s)} g_o^{beta o_i(s)}, i = m+1..n
    l_t: GroupElement  # zero-knowledge terms: t(s) multiples
    r_t: GroupElement
    o_t: GroupElement
    l_alpha_t: GroupElement
    r_alpha_t: GroupElement
    o_alpha_t: GroupElement
    l_beta_t: GroupElement
    r_beta_t: GroupElement
    o_beta_t: GroupElement

    @property
    def backend(self) -> BilinearBackend:
        return self.l_t.backend


@dataclass(frozen=True)
class VerificationKey:
    variant: Variant
    d: int
    n: int
    m: int
    g: GroupElement
    o_t: GroupElement  # g_o^{t(s)}
    l: tuple  # public slots i = 0..m
    r: tuple
    o: tuple
    alpha_l: GroupElement
    alpha_r: GroupElement
    alpha_o: GroupElement
    gamma: GroupElement
    beta_gamma: GroupElement
    # only the unmasked variant publishes these
    beta_l: GroupElement | None = None
    beta_r: GroupElement | None = None
    beta_o: GroupElement | None = None

    @property
    def backend(self) -> BilinearBackend:
        return self.g.backend


@dataclass(frozen=True)
class Proof:
    l: GroupElement
    r: GroupElement
    o: GroupElement
    h: GroupElement
    l_shift: GroupElement
    r_shift: GroupElement
    o_shift: GroupElement
    z: GroupElement

    def elements(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def replace(self, slot: str, element: GroupElement) -> Proof:
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals[slot] = element
        return Proof(**vals)

    @property
    def backend(self) -> BilinearBackend:
        return self.l.backend


PROOF_SLOTS = tuple(f.name for f in fields(Proof))


def _check_public_count(qap: QAP, m: int):
    if not 0 <= m < qap.n:
        raise PublicCountOutOfRange(f"public count {m} must be in [0, {qap.n})")
    hazards = [i for i in qap.zero_degree_hazards if i > m]
    if hazards:
        names = ", ".join(qap.names[i] for i in hazards)
        raise DegenerateQap(f"constant-only variable polynomials for: {names}")


def _check_backend(qap: QAP, backend: BilinearBackend):
    if backend.order != qap.field.p:
        raise BackendMismatch(f"group order {backend.order} differs from the QAP field {qap.field.p}")


def _build_keys(qap, m, variant, secrets, powers, base_l, base_r, base_o, base_t):
    """Assemble both keys from encryptions of l_i(s), r_i(s), o_i(s), t(s)."""
    p = qap.field.p
    sec = secrets
    rho_o = sec.rho_l * sec.rho_r % p
    rl, rr, ro = sec.rho_l, sec.rho_r, rho_o
    g = powers[0]
    priv = range(m + 1, qap.n + 1)
    z = tuple(
        base_l[i] ** (sec.beta_l * rl) * base_r[i] ** (sec.beta_r * rr) * base_o[i] ** (sec.beta_o * ro)
        for i in priv
    )
    pk = ProvingKey(
        variant,
        qap.d,
        qap.n,
        m,
        tuple(powers),
        tuple(e ** rl for e in base_l),
        tuple(e ** rr for e in base_r),
        tuple(e ** ro for e in base_o),
        tuple(base_l[i] ** (rl * sec.alpha_l) for i in priv),
        tuple(base_r[i] ** (rr * sec.alpha_r) for i in priv),
        tuple(base_o[i] ** (ro * sec.alpha_o) for i in priv),
        z,
        base_t ** rl,
        base_t ** rr,
        base_t ** ro,
        base_t ** (rl * sec.alpha_l),
        base_t ** (rr * sec.alpha_r),
        base_t ** (ro * sec.alpha_o),
        base_t ** (rl * sec.beta_l),
        base_t ** (rr * sec.beta_r),
        base_t ** (ro * sec.beta_o),
    )
    pub = range(m + 1)
    raw_beta = {}
    if variant is Variant.UNMASKED_BETA:
        raw_beta = dict(beta_l=g ** sec.beta_l, beta_r=g ** sec.beta_r, beta_o=g ** sec.beta_o)
    vk = VerificationKey(
        variant,
        qap.d,
        qap.n,
        m,
        g,
        base_t ** ro,
        tuple(base_l[i] ** rl for i in pub),
        tuple(base_r[i] ** rr for i in pub),
        tuple(base_o[i] ** ro for i in pub),
        g ** sec.alpha_l,
        g ** sec.alpha_r,
        g ** sec.alpha_o,
        g ** sec.gamma,
        g ** (sec.beta_l * sec.gamma),
        **raw_beta,
    )
    return pk, vk


def setup_from_secrets(
    qap: QAP, m: int, secrets: Secrets, variant: Variant = Variant.FINAL, backend: BilinearBackend | None = None
) -> tuple[ProvingKey, VerificationKey]:
    """Deterministic key generation for known secrets (oracle and test use)."""
    _check_public_count(qap, m)
    backend = backend or simulation_backend(qap.field)
    _check_backend(qap, backend)
    p = qap.field.p
    s = secrets.s % p
    ls, rs, os_ = qap.evaluate_at(s)
    s_pow = [1] * (qap.d + 1)
    for k in range(1, qap.d + 1):
        s_pow[k] = s_pow[k - 1] * s % p
    enc = backend.encrypt
    return _build_keys(
        qap,
        m,
        variant,
        secrets,
        [enc(v) for v in s_pow],
        [enc(v) for v in ls],
        [enc(v) for v in rs],
        [enc(v) for v in os_],
        enc(qap.target(s).value),
    )


def setup(
    qap: QAP, m: int, rng: random.Random | None = None, variant: Variant = Variant.FINAL,
    backend: BilinearBackend | None = None,
) -> tuple[ProvingKey, VerificationKey]:
    """Sample fresh secrets, build the keys, and let the secrets go out of scope."""
    _check_public_count(qap, m)
    secrets = sample_secrets(qap, rng or random.SystemRandom(), variant)
    return setup_from_secrets(qap, m, secrets, variant, backend)


def setup_with_trapdoor(qap: QAP, m: int, rng: random.Random, variant: Variant = Variant.FINAL):
    """Like :func:`setup` but also returns the secrets. Test mode only."""
    if not testing.active():
        raise TransparencyDisabled("trapdoor retention requires test mode")
    secrets = sample_secrets(qap, rng, variant)
    pk, vk = setup_from_secrets(qap, m, secrets, variant)
    return pk, vk, Toxic(**vars(secrets))


def setup_from_powers(
    qap: QAP, m: int, powers: Sequence[GroupElement], rng: random.Random | None = None,
    variant: Variant = Variant.FINAL, secrets: Secrets | None = None,
) -> tuple[ProvingKey, VerificationKey]:
    """Keys whose s comes from a ceremony: only g^{s^k} is known, not s.

    The remaining secrets (alphas, beta, gamma, rhos) are sampled locally;
    any ``secrets.s`` is ignored.
    """
    _check_public_count(qap, m)
    if len(powers) < qap.d + 1:
        raise LengthMismatch(f"need {qap.d + 1} powers, transcript has {len(powers)}")
    powers = tuple(powers[: qap.d + 1])
    if secrets is None:
        secrets = sample_secrets(qap, rng or random.SystemRandom(), variant)
    backend = powers[0].backend
    _check_backend(qap, backend)
    basis = lagrange_basis(qap.d, qap.field)
    enc_basis = [eval_encrypted_poly(b, powers) for b in basis]

    def lift(ops):
        return [backend.multiexp([enc_basis[j - 1] for j in col], list(col.values())) for col in ops._columns]

    return _build_keys(
        qap, m, variant, secrets, powers, lift(qap.left), lift(qap.right), lift(qap.out),
        eval_encrypted_poly(qap.target, powers),
    )


def prove(
    pk: ProvingKey, qap: QAP, w, rng: random.Random | None = None, zk: bool = True, deltas=None
) -> Proof:
    """Encrypted evaluation of the prover's share of L, R, O plus h.

    With ``zk`` each operand is shifted by delta * t(s) and h absorbs the
    difference. ``deltas`` pins (delta_l, delta_r, delta_o) for tests.
    """
    p = qap.field.p
    vals = w.ints() if hasattr(w, "ints") else [int(v) % p for v in w]
    if len(vals) != pk.n + 1 or qap.n != pk.n or qap.d != pk.d:
        raise LengthMismatch("witness, QAP and proving key sizes disagree")
    L, R, O = assemble(qap, vals)
    h = cofactor(L, R, O, qap.target)
    if not zk:
        dl = dr = do = 0
    elif deltas is not None:
        dl, dr, do = (int(x) % p for x in deltas)
    else:
        rng = rng or random.SystemRandom()
        dl, dr, do = (rng.randrange(1, p) for _ in range(3))
    if dl or dr or do:
        t = qap.target
        h = h + R.scale(dl) + L.scale(dr) + t.scale(dl * dr) - Polynomial.constant(do, qap.field)
    mine = vals[pk.m + 1 :]
    backend = pk.backend
    me = backend.multiexp
    return Proof(
        me(pk.l[pk.m + 1 :], mine) * pk.l_t ** dl,
        me(pk.r[pk.m + 1 :], mine) * pk.r_t ** dr,
        me(pk.o[pk.m + 1 :], mine) * pk.o_t ** do,
        eval_encrypted_poly(h, pk.powers),
        me(pk.l_alpha, mine) * pk.l_alpha_t ** dl,
        me(pk.r_alpha, mine) * pk.r_alpha_t ** dr,
        me(pk.o_alpha, mine) * pk.o_alpha_t ** do,
        me(pk.z, mine) * pk.l_beta_t ** dl * pk.r_beta_t ** dr * pk.o_beta_t ** do,
    )


def public_commitments(vk: VerificationKey, public_inputs) -> tuple[GroupElement, GroupElement, GroupElement]:
    """The verifier's own share g_l^{L_v(s)}, g_r^{R_v(s)}, g_o^{O_v(s)}."""
    if len(public_inputs) != vk.m:
        raise PublicInputLengthMismatch(f"expected {vk.m} public values, got {len(public_inputs)}")
    backend = vk.backend
    pub = list(public_inputs)
    return tuple(ops[0] * backend.multiexp(ops[1:], pub) for ops in (vk.l, vk.r, vk.o))


def verify_checks(vk: VerificationKey, proof: Proof, public_inputs) -> dict[str, bool]:
    """Named results of the restriction, consistency and operation checks."""
    if proof.backend != vk.backend:
        raise BackendMismatch(f"proof uses {proof.backend.backend_id}, key uses {vk.backend.backend_id}")
    g = vk.g
    lv, rv, ov = public_commitments(vk, public_inputs)
    restriction = (
        pairing(proof.l_shift, g) == pairing(proof.l, vk.alpha_l)
        and pairing(proof.r_shift, g) == pairing(proof.r, vk.alpha_r)
        and pairing(proof.o_shift, g) == pairing(proof.o, vk.alpha_o)
    )
    if vk.variant is Variant.NAIVE_ALPHA:
        consistency = True  # this variant has no consistency check at all
    elif vk.variant is Variant.UNMASKED_BETA:
        consistency = (
            pairing(proof.l, vk.beta_l) * pairing(proof.r, vk.beta_r) * pairing(proof.o, vk.beta_o)
            == pairing(proof.z, g)
        )
    else:
        consistency = pairing(proof.l * proof.r * proof.o, vk.beta_gamma) == pairing(proof.z, vk.gamma)
    operation = pairing(proof.l * lv, proof.r * rv) == pairing(vk.o_t, proof.h) * pairing(proof.o * ov, g)
    return {"restriction": restriction, "consistency": consistency, "operation": operation}


def verify(vk: VerificationKey, proof: Proof, public_inputs) -> bool:
    return all(verify_checks(vk, proof, public_inputs).values())
