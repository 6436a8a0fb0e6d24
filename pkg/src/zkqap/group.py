"""Opaque bilinear group: "encrypted" values g^v and the pairing e(., .).

Only group operations combine elements; exponents are not readable through
the public interface. :class:`ExponentSimulation`, the only shipped backend,
represents g^v by v itself. That is algebraically exact and completely
insecure, and every artifact it touches carries its backend id.
"""
from __future__ import annotations

import abc
from functools import lru_cache
from typing import Sequence

from . import kernels, testing
from .algebra import Field, FieldElement, Polynomial, default_field
from .errors import BackendMismatch, FormatError, InsufficientPowers, TransparencyDisabled


class BilinearBackend(abc.ABC):
    """A symmetric pairing group of prime order.

    Subclasses work on opaque handles; :class:`GroupElement` and
    :class:`TargetElement` wrap them.
    """

    backend_id: str
    field: Field

    @property
    def order(self) -> int:
        return self.field.p

    # handle-level operations
    @abc.abstractmethod
    def _generator(self): ...

    @abc.abstractmethod
    def _identity(self): ...

    @abc.abstractmethod
    def _op(self, a, b): ...

    @abc.abstractmethod
    def _scale(self, a, k: int): ...

    @abc.abstractmethod
    def _pair(self, a, b): ...

    @abc.abstractmethod
    def _gt_op(self, a, b): ...

    @abc.abstractmethod
    def _gt_scale(self, a, k: int): ...

    @abc.abstractmethod
    def _encode(self, a) -> bytes: ...

    @abc.abstractmethod
    def _decode(self, raw: bytes): ...

    def _multiexp(self, handles, scalars):
        acc = self._identity()
        for h, k in zip(handles, scalars):
            acc = self._op(acc, self._scale(h, k))
        return acc

    # public surface
    @property
    def g(self) -> GroupElement:
        return GroupElement(self, self._generator())

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity())

    def encrypt(self, v) -> GroupElement:
        return GroupElement(self, self._scale(self._generator(), _scalar(self, v)))

    def target_exp(self, v) -> TargetElement:
        """e(g, g)^v."""
        return pairing(self.g, self.g) ** v

    def random_element(self, rng) -> GroupElement:
        return self.encrypt(rng.randrange(self.order))

    def multiexp(self, elements: Sequence[GroupElement], scalars) -> GroupElement:
        """prod elements[i] ** scalars[i]."""
        handles = []
        for el in elements:
            _same(self, el.backend)
            handles.append(el._h)
        ks = [_scalar(self, k) for k in scalars]
        return GroupElement(self, self._multiexp(handles, ks))

    @property
    def element_width(self) -> int:
        return (self.order.bit_length() + 7) // 8

    def decode(self, raw: bytes) -> GroupElement:
        if len(raw) != self.element_width:
            raise FormatError(f"group element must be {self.element_width} bytes, got {len(raw)}")
        return GroupElement(self, self._decode(raw))

    def from_hex(self, text: str) -> GroupElement:
        if len(text) != 2 * self.element_width:
            raise FormatError(f"group element hex must be {2 * self.element_width} chars")
        try:
            raw = bytes.fromhex(text)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        return self.decode(raw)

    def __eq__(self, other):
        return isinstance(other, BilinearBackend) and other.backend_id == self.backend_id

    def __hash__(self):
        return hash(self.backend_id)

    def __repr__(self):
        return f"<{type(self).__name__} {self.backend_id}>"


def _scalar(backend: BilinearBackend, k) -> int:
    if isinstance(k, FieldElement):
        if k.field.p != backend.order:
            raise BackendMismatch("scalar field does not match group order")
        return k.value
    return int(k) % backend.order


def _same(a: BilinearBackend, b: BilinearBackend):
    if a is not b and a.backend_id != b.backend_id:
        raise BackendMismatch(f"{a.backend_id} vs {b.backend_id}")


class ExponentSimulation(BilinearBackend):
    """Group of order p simulated by its exponents: g^v is stored as v mod p.

    Pairing multiplies exponents. Exact, fast, and NOT hiding.
    """

    insecure = True

    def __init__(self, field: Field | None = None):
        self.field = field or default_field()
        self.backend_id = f"expsim-{self.field.p:x}"

    def _generator(self):
        return 1

    def _identity(self):
        return 0

    def _op(self, a, b):
        return (a + b) % self.field.p

    def _scale(self, a, k):
        return a * k % self.field.p

    def _pair(self, a, b):
        return a * b % self.field.p

    def _gt_op(self, a, b):
        return (a + b) % self.field.p

    def _gt_scale(self, a, k):
        return a * k % self.field.p

    def _encode(self, a):
        return a.to_bytes(self.element_width, "big")

    def _decode(self, raw):
        v = int.from_bytes(raw, "big")
        if v >= self.field.p:
            raise FormatError("encoded exponent out of range")
        return v

    def _multiexp(self, handles, scalars):
        return kernels.dot(handles, scalars, self.field.p)


@lru_cache(maxsize=None)
def _simulation(p: int) -> ExponentSimulation:
    return ExponentSimulation(Field(p))


def default_backend() -> ExponentSimulation:
    return _simulation(default_field().p)


def simulation_backend(field: Field) -> ExponentSimulation:
    return _simulation(field.p)


def backend_from_id(backend_id: str) -> BilinearBackend:
    kind, _, order = backend_id.partition("-")
    if kind != "expsim" or not order:
        raise FormatError(f"unknown backend id {backend_id!r}")
    try:
        p = int(order, 16)
    except ValueError:
        raise FormatError(f"bad backend id {backend_id!r}") from None
    return _simulation(p)


class GroupElement:
    """g^v for a hidden v. ``*`` is the group law, ``**`` scales the exponent."""

    __slots__ = ("backend", "_h")

    def __init__(self, backend: BilinearBackend, handle):
        self.backend = backend
        self._h = handle

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        _same(self.backend, other.backend)
        return GroupElement(self.backend, self.backend._op(self._h, other._h))

    def __pow__(self, k):
        return GroupElement(self.backend, self.backend._scale(self._h, _scalar(self.backend, k)))

    def inverse(self) -> GroupElement:
        return self ** -1

    def __truediv__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.backend == other.backend and self._h == other._h

    def __hash__(self):
        return hash((self.backend.backend_id, self.to_bytes()))

    def to_bytes(self) -> bytes:
        return self.backend._encode(self._h)

    def hex(self) -> str:
        return self.to_bytes().hex()

    def tagged(self) -> str:
        """Backend-tagged serialization, ``<backend id>/<hex>``."""
        return f"{self.backend.backend_id}/{self.hex()}"

    def __repr__(self):
        return f"<GroupElement {self.backend.backend_id} #{self.to_bytes()[-3:].hex()}>"


class TargetElement:
    """An element of the pairing's output group; not a valid pairing input."""

    __slots__ = ("backend", "_h")

    def __init__(self, backend: BilinearBackend, handle):
        self.backend = backend
        self._h = handle

    def __mul__(self, other):
        if not isinstance(other, TargetElement):
            return NotImplemented
        _same(self.backend, other.backend)
        return TargetElement(self.backend, self.backend._gt_op(self._h, other._h))

    def __pow__(self, k):
        return TargetElement(self.backend, self.backend._gt_scale(self._h, _scalar(self.backend, k)))

    def inverse(self) -> TargetElement:
        return self ** -1

    def __eq__(self, other):
        if not isinstance(other, TargetElement):
            return NotImplemented
        return self.backend == other.backend and self._h == other._h

    def __hash__(self):
        return hash(("GT", self.backend.backend_id, self._h))

    def __repr__(self):
        return f"<TargetElement {self.backend.backend_id}>"


def parse_tagged(text: str) -> GroupElement:
    backend_id, sep, body = text.partition("/")
    if not sep:
        raise FormatError("missing backend tag")
    return backend_from_id(backend_id).from_hex(body)


def encrypt(v, backend: BilinearBackend | None = None) -> GroupElement:
    if backend is None:
        backend = simulation_backend(v.field) if isinstance(v, FieldElement) else default_backend()
    return backend.encrypt(v)


def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def group_scale(a: GroupElement, k) -> GroupElement:
    return a ** k


def pairing(a: GroupElement, b: GroupElement) -> TargetElement:
    if not isinstance(a, GroupElement) or not isinstance(b, GroupElement):
        raise TypeError("pairing inputs must be source-group elements")
    _same(a.backend, b.backend)
    return TargetElement(a.backend, a.backend._pair(a._h, b._h))


def target_pow(x: TargetElement, k) -> TargetElement:
    return x ** k


def eval_encrypted_poly(coeffs, powers: Sequence[GroupElement]) -> GroupElement:
    """prod powers[i] ** coeffs[i]; equals g^{p(s)} when powers[i] = g^{s^i}."""
    if isinstance(coeffs, Polynomial):
        coeffs = coeffs.coeffs
    coeffs = list(coeffs)
    if len(coeffs) > len(powers):
        raise InsufficientPowers(
            f"polynomial needs {len(coeffs)} powers, only {len(powers)} provided"
        )
    if not powers:
        raise InsufficientPowers("no powers provided")
    backend = powers[0].backend
    return backend.multiexp(powers[: len(coeffs)], coeffs)


def inspect_exponent(element) -> int:
    """Discrete log of a simulated element. Test mode only."""
    if not testing.active():
        raise TransparencyDisabled("exponent inspection requires test mode")
    if not isinstance(element.backend, ExponentSimulation):
        raise TypeError("only the simulation backend is transparent")
    return element._h
