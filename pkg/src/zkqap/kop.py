"""Proving knowledge of a polynomial with known roots.

The progression runs from a plaintext check (:func:`interactive_check`) to
the non-interactive encrypted protocol (:func:`poly_setup`,
:func:`poly_prove`, :func:`poly_verify`). :func:`forge_without_alpha` shows
why the verifier needs the alpha-shifted powers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import testing
from .algebra import FieldElement, Polynomial
from .errors import InsufficientPowers, NotDivisible, TransparencyDisabled
from .group import (
    BilinearBackend,
    GroupElement,
    eval_encrypted_poly,
    pairing,
    simulation_backend,
)


def interactive_check(p: Polynomial, t: Polynomial, r) -> bool:
    """Plaintext protocol: the prover hands over h, the verifier tests p(r) = t(r) h(r)."""
    h, rem = divmod(p, t)
    if not rem.is_zero:
        return False
    return p(r) == t(r) * h(r)


class Toxic:
    """Setup secrets kept for white-box tests. Refuses to be pickled or printed."""

    __slots__ = ("_values",)

    def __init__(self, **values):
        if not testing.active():
            raise TransparencyDisabled("trapdoor retention requires test mode")
        object.__setattr__(self, "_values", dict(values))

    def __getattr__(self, name):
        try:
            return self._values[name]
        except KeyError:
            raise AttributeError(name) from None

    def __setattr__(self, name, value):
        raise AttributeError("trapdoor is read-only")

    def __reduce__(self):
        raise TypeError("trapdoor values cannot be serialized")

    def __repr__(self):
        return f"<Toxic {sorted(self._values)}>"


@dataclass(frozen=True)
class PolyCrs:
    powers: tuple  # g^{s^i}, i = 0..d
    alpha_powers: tuple  # g^{alpha s^i}
    g_alpha: GroupElement
    g_t: GroupElement

    @property
    def degree(self) -> int:
        return len(self.powers) - 1

    @property
    def backend(self) -> BilinearBackend:
        return self.g_t.backend

    @property
    def g(self) -> GroupElement:
        return self.powers[0]


@dataclass(frozen=True)
class PolyProof:
    g_p: GroupElement
    g_h: GroupElement
    g_p_shift: GroupElement

    def rerandomize(self, k) -> PolyProof:
        return PolyProof(self.g_p ** k, self.g_h ** k, self.g_p_shift ** k)


def _nonzero(field, rng) -> int:
    return rng.randrange(1, field.p)


def crs_from_secrets(t: Polynomial, d: int, s, alpha, backend: BilinearBackend | None = None) -> PolyCrs:
    """Deterministic CRS for known secrets; used by setup and as a test oracle."""
    backend = backend or simulation_backend(t.field)
    p = backend.order
    s, alpha = int(s) % p, int(alpha) % p
    s_pow = [1] * (d + 1)
    for i in range(1, d + 1):
        s_pow[i] = s_pow[i - 1] * s % p
    powers = tuple(backend.encrypt(v) for v in s_pow)
    alpha_powers = tuple(backend.encrypt(alpha * v) for v in s_pow)
    return PolyCrs(powers, alpha_powers, backend.encrypt(alpha), eval_encrypted_poly(t, powers))


def poly_setup(
    t: Polynomial,
    d: int,
    rng: random.Random,
    backend: BilinearBackend | None = None,
    retain_trapdoor: bool = False,
) -> tuple[PolyCrs, Toxic | None]:
    if t.is_zero or d < t.degree:
        raise ValueError(f"CRS degree {d} cannot hold a target of degree {t.degree}")
    s = _nonzero(t.field, rng)
    alpha = _nonzero(t.field, rng)
    crs = crs_from_secrets(t, d, s, alpha, backend)
    toxic = Toxic(s=s, alpha=alpha) if retain_trapdoor else None
    return crs, toxic


def poly_prove(crs: PolyCrs, p: Polynomial, t: Polynomial, rng: random.Random, delta=None) -> PolyProof:
    """Honest prover: refuses unless t divides p; blinds everything by a fresh delta."""
    if p.degree > crs.degree:
        raise InsufficientPowers(f"degree {p.degree} exceeds CRS degree {crs.degree}")
    h, rem = divmod(p, t)
    if not rem.is_zero:
        raise NotDivisible(f"remainder {rem} is not zero")
    if delta is None:
        delta = _nonzero(p.field, rng)
    return PolyProof(
        eval_encrypted_poly(p, crs.powers) ** delta,
        eval_encrypted_poly(h, crs.powers) ** delta,
        eval_encrypted_poly(p, crs.alpha_powers) ** delta,
    )


def restriction_check(crs: PolyCrs, proof: PolyProof) -> bool:
    return pairing(proof.g_p_shift, crs.g) == pairing(proof.g_p, crs.g_alpha)


def cofactor_check(crs: PolyCrs, g_p: GroupElement, g_h: GroupElement) -> bool:
    return pairing(g_p, crs.g) == pairing(crs.g_t, g_h)


def poly_verify_checks(crs: PolyCrs, proof: PolyProof) -> dict[str, bool]:
    return {
        "restriction": restriction_check(crs, proof),
        "cofactor": cofactor_check(crs, proof.g_p, proof.g_h),
    }


def poly_verify(crs: PolyCrs, proof: PolyProof) -> bool:
    return all(poly_verify_checks(crs, proof).values())


def forge_without_alpha(crs: PolyCrs, rng: random.Random | None = None, rho=None) -> tuple[GroupElement, GroupElement]:
    """Pick a random h and claim p = t h: returns (g^{t(s) rho}, g^{rho}).

    Satisfies the cofactor pairing without knowing any p. There is no way to
    produce the matching alpha-shifted element.
    """
    if rho is None:
        rho = _nonzero(crs.backend.field, rng or random.SystemRandom())
    if isinstance(rho, FieldElement):
        rho = rho.value
    return crs.g_t ** rho, crs.g ** rho
