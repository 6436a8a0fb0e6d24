"""Sequential multi-party generation of the powers-of-s CRS.

Each participant raises the published powers by their own secrets and
publishes encryptions of those secrets, so anyone can check with pairings
that the new CRS is layered on the previous one. One honest participant
is enough to keep the composite secret unknown.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field

from .algebra import Polynomial
from .errors import FormatError, InvalidPriorTranscript, UnverifiedTranscript
from .group import (
    BilinearBackend,
    GroupElement,
    backend_from_id,
    default_backend,
    eval_encrypted_poly,
    pairing,
)
from .kop import PolyCrs

CHECKS = ("structure", "chain", "alpha_shift", "layering", "distinct")


@dataclass(frozen=True)
class Contribution:
    index: int
    powers: tuple  # accumulated g^{s^i}, i = 0..d
    alpha: GroupElement
    alpha_powers: tuple  # accumulated g^{alpha s^i}
    own_powers: tuple  # participant's g^{s_P^i}
    own_alpha: GroupElement
    own_alpha_powers: tuple

    @property
    def degree(self) -> int:
        return len(self.powers) - 1

    @property
    def backend(self) -> BilinearBackend:
        return self.alpha.backend

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "powers": [e.hex() for e in self.powers],
            "alpha": self.alpha.hex(),
            "alphaPowers": [e.hex() for e in self.alpha_powers],
            "ownPowers": [e.hex() for e in self.own_powers],
            "ownAlpha": self.own_alpha.hex(),
            "ownAlphaPowers": [e.hex() for e in self.own_alpha_powers],
        }

    @classmethod
    def from_dict(cls, data: dict, backend: BilinearBackend) -> Contribution:
        try:
            seq = lambda key: tuple(backend.from_hex(h) for h in data[key])
            return cls(
                int(data["index"]),
                seq("powers"),
                backend.from_hex(data["alpha"]),
                seq("alphaPowers"),
                seq("ownPowers"),
                backend.from_hex(data["ownAlpha"]),
                seq("ownAlphaPowers"),
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed contribution: {exc}") from None


def initial(d: int, backend: BilinearBackend | None = None) -> Contribution:
    """The bare-generator starting point (all secrets equal to 1)."""
    if d < 1:
        raise ValueError("degree must be positive")
    backend = backend or default_backend()
    g = backend.g
    ones = (g,) * (d + 1)
    return Contribution(0, ones, g, ones, ones, g, ones)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple = ()  # (contribution index, check name)

    def __bool__(self):
        return self.ok

    @property
    def failed_checks(self) -> set:
        return {name for _, name in self.failures}


@dataclass(frozen=True)
class CeremonyTranscript:
    degree: int
    backend: BilinearBackend = dc_field(default_factory=default_backend)
    contributions: tuple = ()

    @property
    def start(self) -> Contribution:
        return initial(self.degree, self.backend)

    @property
    def latest(self) -> Contribution:
        return self.contributions[-1] if self.contributions else self.start

    def extend(self, contribution: Contribution) -> CeremonyTranscript:
        return CeremonyTranscript(self.degree, self.backend, self.contributions + (contribution,))

    def to_json(self) -> str:
        doc = {
            "backend": self.backend.backend_id,
            "degree": self.degree,
            "contributions": [c.to_dict() for c in self.contributions],
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> CeremonyTranscript:
        try:
            doc = json.loads(text)
            backend = backend_from_id(doc["backend"])
            contribs = tuple(Contribution.from_dict(c, backend) for c in doc["contributions"])
            return cls(int(doc["degree"]), backend, contribs)
        except (ValueError, KeyError, TypeError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed transcript: {exc}") from None


def _powers(backend: BilinearBackend, base: int, d: int) -> list[int]:
    out = [1] * (d + 1)
    for i in range(1, d + 1):
        out[i] = out[i - 1] * base % backend.order
    return out


def contribute(prev, rng: random.Random, secrets=None) -> Contribution:
    """Layer fresh secrets (s_P, alpha_P) on top of ``prev``.

    ``prev`` is a transcript (verified first) or a bare contribution.
    ``secrets`` overrides sampling; used by tests and oracles.
    """
    if isinstance(prev, CeremonyTranscript):
        verdict = verify_transcript(prev)
        if not verdict:
            raise InvalidPriorTranscript(f"prior transcript fails: {list(verdict.failures)}")
        prev = prev.latest
    backend, d = prev.backend, prev.degree
    if secrets is None:
        s = rng.randrange(2, backend.order)
        a = rng.randrange(2, backend.order)
    else:
        s, a = (int(v) % backend.order for v in secrets)
    s_pow = _powers(backend, s, d)
    powers = tuple(prev.powers[i] ** s_pow[i] for i in range(d + 1))
    alpha = prev.alpha ** a
    alpha_powers = tuple(prev.alpha_powers[i] ** (a * s_pow[i]) for i in range(d + 1))
    own_powers = tuple(backend.encrypt(v) for v in s_pow)
    own_alpha_powers = tuple(backend.encrypt(a * v) for v in s_pow)
    return Contribution(prev.index + 1, powers, alpha, alpha_powers, own_powers, backend.encrypt(a), own_alpha_powers)


def _chain_ok(powers, g) -> bool:
    return all(pairing(powers[i], g) == pairing(powers[1], powers[i - 1]) for i in range(2, len(powers)))


def _shift_ok(powers, alpha, alpha_powers, g) -> bool:
    return all(pairing(p, alpha) == pairing(ap, g) for p, ap in zip(powers, alpha_powers))


def verify_contribution(prev: Contribution, cur: Contribution, distinct: bool = False) -> Verdict:
    """Pairing audit of ``cur`` against its predecessor; names every failed check."""
    failed = []
    g = prev.backend.g
    d = prev.degree
    sequences = (cur.powers, cur.alpha_powers, cur.own_powers, cur.own_alpha_powers)
    if (
        cur.backend != prev.backend
        or cur.index != prev.index + 1
        or any(len(seq) != d + 1 for seq in sequences)
        or cur.powers[0] != g
        or cur.own_powers[0] != g
        or cur.alpha_powers[0] != cur.alpha
        or cur.own_alpha_powers[0] != cur.own_alpha
    ):
        return Verdict(False, ((cur.index, "structure"),))
    if not (_chain_ok(cur.powers, g) and _chain_ok(cur.own_powers, g)):
        failed.append("chain")
    if not (
        _shift_ok(cur.powers, cur.alpha, cur.alpha_powers, g)
        and _shift_ok(cur.own_powers, cur.own_alpha, cur.own_alpha_powers, g)
    ):
        failed.append("alpha_shift")
    layered = pairing(cur.alpha, g) == pairing(prev.alpha, cur.own_alpha) and all(
        pairing(cur.powers[i], g) == pairing(prev.powers[i], cur.own_powers[i])
        and pairing(cur.alpha_powers[i], g) == pairing(prev.alpha_powers[i], cur.own_alpha_powers[i])
        for i in range(d + 1)
    )
    if not layered:
        failed.append("layering")
    # a secret equal to 1 leaves the CRS unchanged; only detectable by comparison
    if distinct and (cur.own_powers[1] == g or cur.own_alpha == g):
        failed.append("distinct")
    return Verdict(not failed, tuple((cur.index, name) for name in failed))


def verify_transcript(transcript: CeremonyTranscript, distinct: bool = False) -> Verdict:
    failures = []
    prev = transcript.start
    for cur in transcript.contributions:
        if cur.degree != transcript.degree:
            failures.append((cur.index, "structure"))
        else:
            failures.extend(verify_contribution(prev, cur, distinct).failures)
        prev = cur
    return Verdict(not failures, tuple(failures))


def finalize(t: Polynomial, transcript: CeremonyTranscript) -> PolyCrs:
    """The accumulated CRS with g^{t(s)} computed from the final powers."""
    if not transcript.contributions:
        raise UnverifiedTranscript("transcript has no contributions")
    verdict = verify_transcript(transcript)
    if not verdict:
        raise UnverifiedTranscript(f"failed checks: {list(verdict.failures)}")
    if t.degree > transcript.degree:
        raise UnverifiedTranscript(f"target degree {t.degree} exceeds CRS degree {transcript.degree}")
    last = transcript.latest
    return PolyCrs(last.powers, last.alpha_powers, last.alpha, eval_encrypted_poly(t, last.powers))
