"""Rank-1 constraint systems and witnesses."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ..algebra import Field, FieldElement, default_field
from ..errors import FormatError, LengthMismatch

ONE = "one"


@dataclass(frozen=True)
class Constraint:
    """<left, v> * <right, v> = <out, v>, each side a sparse {index: coefficient}."""

    left: dict
    right: dict
    out: dict

    def sides(self):
        return self.left, self.right, self.out


def _dot(lc: dict, values: Sequence[int], p: int) -> int:
    return sum(c * values[i] for i, c in lc.items()) % p


@dataclass(frozen=True)
class Witness:
    values: tuple  # FieldElement per variable, values[0] == 1
    names: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, key):
        if isinstance(key, str):
            return self.values[self.names.index(key)]
        return self.values[key]

    def ints(self) -> list[int]:
        return [v.value for v in self.values]

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    def replace(self, index: int, value) -> Witness:
        field = self.values[0].field
        vals = list(self.values)
        vals[index] = field(value)
        return Witness(tuple(vals), self.names)


@dataclass(frozen=True)
class R1CS:
    field: Field
    names: tuple  # index -> variable name; names[0] == "one"
    m: int  # public variables occupy indices 1..m
    constraints: tuple

    @property
    def n(self) -> int:
        return len(self.names) - 1

    @property
    def d(self) -> int:
        return len(self.constraints)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def _values(self, w) -> list[int]:
        vals = w.ints() if isinstance(w, Witness) else [int(v) % self.field.p for v in w]
        if len(vals) != self.n + 1:
            raise LengthMismatch(f"witness has {len(vals)} values, system has {self.n + 1} variables")
        return vals

    def violated(self, w) -> list[int]:
        """1-based indices of constraints the assignment fails."""
        p = self.field.p
        vals = self._values(w)
        bad = []
        for j, c in enumerate(self.constraints, 1):
            if _dot(c.left, vals, p) * _dot(c.right, vals, p) % p != _dot(c.out, vals, p):
                bad.append(j)
        return bad

    def is_satisfied(self, w) -> bool:
        return not self.violated(w)

    def public_values(self, w: Witness) -> list[FieldElement]:
        return list(w.values[1 : self.m + 1])

    @property
    def public_names(self) -> tuple:
        return self.names[1 : self.m + 1]

    def to_json(self) -> str:
        def side(lc):
            return {str(i): f"0x{c:x}" for i, c in sorted(lc.items())}

        doc = {
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "modulus": f"0x{self.field.p:x}",
            "varNames": list(self.names),
            "constraints": [{"l": side(c.left), "r": side(c.right), "o": side(c.out)} for c in self.constraints],
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> R1CS:
        try:
            doc = json.loads(text)
            field = Field(int(doc["modulus"], 16)) if "modulus" in doc else default_field()
            names = tuple(doc["varNames"])
            constraints = tuple(
                Constraint(*({int(i): int(c, 16) % field.p for i, c in con[k].items()} for k in "lro"))
                for con in doc["constraints"]
            )
            out = cls(field, names, int(doc["m"]), constraints)
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise FormatError(f"malformed R1CS file: {exc}") from None
        if out.n != doc["n"] or out.d != doc["d"] or not 0 <= out.m <= out.n:
            raise FormatError("R1CS header does not match its body")
        if any(not 0 <= i <= out.n for c in constraints for lc in c.sides() for i in lc):
            raise FormatError("constraint references an unknown variable")
        return out
