"""Binary ``ZKPC`` container and JSON mirror for keys and proofs.

Binary layout (big-endian)::

    b"ZKPC" | version u16 | id_len u16 | backend id | kind u8 | variant u8
    | d u32 | n u32 | m u32 | count u32 | count x (len u16 | element bytes)

Elements appear in the declaration order of the key or proof fields, lists
flattened in index order.
"""
from __future__ import annotations

import json
import struct
from dataclasses import fields

from ..errors import FormatError
from ..group import BilinearBackend, backend_from_id
from .protocol import Proof, ProvingKey, Variant, VerificationKey

MAGIC = b"ZKPC"
VERSION = 1
KINDS = {ProvingKey: 1, VerificationKey: 2, Proof: 3}
_KIND_NAMES = {ProvingKey: "proving-key", VerificationKey: "verification-key", Proof: "proof"}
_META = ("variant", "d", "n", "m")


def _layout(cls, variant: Variant, d: int, n: int, m: int) -> list[tuple[str, int | None]]:
    """(field name, list length or None for a single element) in wire order."""
    lengths = {
        "powers": d + 1,
        "l": n + 1 if cls is ProvingKey else m + 1,
        "l_alpha": n - m,
        "z": n - m,
    }
    for a, b in (("r", "l"), ("o", "l"), ("r_alpha", "l_alpha"), ("o_alpha", "l_alpha")):
        lengths[a] = lengths[b]
    out = []
    for f in fields(cls):
        if f.name in _META:
            continue
        if cls is VerificationKey and f.name.startswith("beta_") and f.name != "beta_gamma":
            if variant is not Variant.UNMASKED_BETA:
                continue
        out.append((f.name, lengths.get(f.name) if cls is not Proof else None))
    return out


def _meta(obj):
    if isinstance(obj, Proof):
        return Variant.FINAL, 0, 0, 0
    return obj.variant, obj.d, obj.n, obj.m


def _flatten(obj, layout):
    for name, length in layout:
        value = getattr(obj, name)
        if length is None:
            yield value
        else:
            if len(value) != length:
                raise FormatError(f"{name} has {len(value)} elements, expected {length}")
            yield from value


def dumps(obj) -> bytes:
    cls = type(obj)
    variant, d, n, m = _meta(obj)
    backend = obj.backend
    elements = list(_flatten(obj, _layout(cls, variant, d, n, m)))
    bid = backend.backend_id.encode("ascii")
    head = MAGIC + struct.pack(">HH", VERSION, len(bid)) + bid
    head += struct.pack(">BBIIII", KINDS[cls], variant.code, d, n, m, len(elements))
    body = b"".join(struct.pack(">H", len(raw)) + raw for raw in (e.to_bytes() for e in elements))
    return head + body


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise FormatError("truncated container")
        out = self.data[self.pos : self.pos + k]
        self.pos += k
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def _rebuild(cls, variant, d, n, m, backend: BilinearBackend, elements):
    layout = _layout(cls, variant, d, n, m)
    expected = sum(1 if length is None else length for _, length in layout)
    if len(elements) != expected:
        raise FormatError(f"container holds {len(elements)} elements, layout needs {expected}")
    it = iter(elements)
    values = {}
    for name, length in layout:
        values[name] = next(it) if length is None else tuple(next(it) for _ in range(length))
    if cls is Proof:
        return Proof(**values)
    return cls(variant, d, n, m, **values)


def loads(data: bytes, expect=None):
    """Parse a container; ``expect`` restricts the accepted object type."""
    rd = _Reader(data)
    if rd.take(4) != MAGIC:
        raise FormatError("not a ZKPC container")
    version, id_len = rd.unpack(">HH")
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    try:
        backend = backend_from_id(rd.take(id_len).decode("ascii"))
    except UnicodeDecodeError:
        raise FormatError("backend id is not ASCII") from None
    kind, vcode, d, n, m, count = rd.unpack(">BBIIII")
    classes = {v: k for k, v in KINDS.items()}
    if kind not in classes or vcode >= len(Variant):
        raise FormatError("unknown object kind or variant")
    cls = classes[kind]
    if expect is not None and cls is not expect:
        raise FormatError(f"expected a {_KIND_NAMES[expect]}, found a {_KIND_NAMES[cls]}")
    if cls is not Proof and not 0 <= m < n:
        raise FormatError("inconsistent key dimensions")
    elements = []
    for _ in range(count):
        (size,) = rd.unpack(">H")
        elements.append(backend.decode(rd.take(size)))
    if rd.pos != len(data):
        raise FormatError("trailing bytes after container")
    return _rebuild(cls, Variant.from_code(vcode), d, n, m, backend, elements)


def to_json(obj) -> str:
    cls = type(obj)
    variant, d, n, m = _meta(obj)
    layout = _layout(cls, variant, d, n, m)
    elements = {}
    for name, length in layout:
        value = getattr(obj, name)
        elements[name] = value.hex() if length is None else [e.hex() for e in value]
    doc = {
        "format": "zkpc-json",
        "version": VERSION,
        "backend": obj.backend.backend_id,
        "kind": _KIND_NAMES[cls],
        "variant": variant.value,
        "d": d,
        "n": n,
        "m": m,
        "elements": elements,
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def from_json(text: str):
    try:
        doc = json.loads(text)
        if doc.get("format") != "zkpc-json" or doc.get("version") != VERSION:
            raise FormatError("not a zkpc-json document")
        cls = {v: k for k, v in _KIND_NAMES.items()}[doc["kind"]]
        backend = backend_from_id(doc["backend"])
        variant = Variant(doc["variant"])
        d, n, m = int(doc["d"]), int(doc["n"]), int(doc["m"])
        flat = []
        for name, length in _layout(cls, variant, d, n, m):
            value = doc["elements"][name]
            if length is None:
                flat.append(backend.from_hex(value))
            else:
                if len(value) != length:
                    raise FormatError(f"{name} has {len(value)} elements, expected {length}")
                flat.extend(backend.from_hex(h) for h in value)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed zkpc-json document: {exc}") from None
    return _rebuild(cls, variant, d, n, m, backend, flat)
