"""R1CS to quadratic arithmetic program.

Constraint j is mapped to the point x = j. Each variable gets three
polynomials (left, right, output) interpolating its coefficient in every
constraint, and the target t(x) = (x - 1)...(x - d) vanishes on all of them.
A witness satisfies the system exactly when t divides L R - O.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import kernels
from .algebra import Field, Polynomial, interpolate_domain, lagrange_basis, lagrange_basis_at, vanishing_poly
from .circuit.r1cs import R1CS, Witness
from .errors import LengthMismatch, UnsatisfiedConstraints

SIDES = ("left", "right", "out")


class VariablePolynomials(Sequence):
    """Lazy, cached view of one operand's polynomials l_i (or r_i, o_i)."""

    def __init__(self, field: Field, d: int, columns: list[dict]):
        self._field = field
        self._d = d
        self._columns = columns  # per variable: {constraint j (1-based): coefficient}
        self._cache: dict[int, Polynomial] = {}

    def __len__(self):
        return len(self._columns)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        if i not in self._cache:
            col = self._columns[i]
            if not col:
                poly = Polynomial.zero(self._field)
            else:
                basis = lagrange_basis(self._d, self._field)
                rows = [basis[j - 1] for j in col]
                coeffs = kernels.lincomb(rows, list(col.values()), self._field.p)
                poly = Polynomial._trusted(self._field, coeffs)
            self._cache[i] = poly
        return self._cache[i]

    def column(self, i: int) -> dict:
        return dict(self._columns[i])

    def evaluate(self, basis_values: list[int]) -> list[int]:
        """Every polynomial at one point, given the Lagrange basis values there."""
        p = self._field.p
        return [sum(c * basis_values[j - 1] for j, c in col.items()) % p for col in self._columns]


@dataclass(frozen=True)
class QAP:
    r1cs: R1CS

    @property
    def field(self) -> Field:
        return self.r1cs.field

    @property
    def d(self) -> int:
        return self.r1cs.d

    @property
    def n(self) -> int:
        return self.r1cs.n

    @property
    def names(self) -> tuple:
        return self.r1cs.names

    @cached_property
    def target(self) -> Polynomial:
        return vanishing_poly(self.d, self.field)

    def _columns(self, side: str) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.n + 1)]
        for j, con in enumerate(self.r1cs.constraints, 1):
            for i, c in getattr(con, side).items():
                cols[i][j] = c
        return cols

    @cached_property
    def left(self) -> VariablePolynomials:
        return VariablePolynomials(self.field, self.d, self._columns("left"))

    @cached_property
    def right(self) -> VariablePolynomials:
        return VariablePolynomials(self.field, self.d, self._columns("right"))

    @cached_property
    def out(self) -> VariablePolynomials:
        return VariablePolynomials(self.field, self.d, self._columns("out"))

    def operands(self):
        return self.left, self.right, self.out

    def evaluate_at(self, s) -> tuple[list[int], list[int], list[int]]:
        """(l_i(s), r_i(s), o_i(s)) for all i, in O(d + nonzeros)."""
        lam = lagrange_basis_at(self.d, s, self.field)
        return tuple(ops.evaluate(lam) for ops in self.operands())

    @cached_property
    def zero_degree_hazards(self) -> tuple[int, ...]:
        """Variables whose only nonzero polynomial is a nonzero constant.

        Their consistency term in the proving key would leak an encrypted
        beta, so setup refuses them (for prover-owned variables).
        """
        flagged = []
        for i in range(self.n + 1):
            cols = [ops.column(i) for ops in self.operands()]
            nonzero = [c for c in cols if c]
            if len(nonzero) != 1:
                continue
            col = nonzero[0]
            if len(col) == self.d and len(set(col.values())) == 1:
                flagged.append(i)
        return tuple(flagged)

    def to_json(self) -> str:
        """Debug dump: variable name -> coefficient hex lists per operand."""
        doc = {
            "d": self.d,
            "target": [f"0x{c:x}" for c in self.target.coeffs],
            "variables": {
                name: {side: [f"0x{c:x}" for c in ops[i].coeffs] for side, ops in zip("lro", self.operands())}
                for i, name in enumerate(self.names)
            },
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def build_qap(r1cs: R1CS) -> QAP:
    if r1cs.d < 1:
        raise ValueError("QAP needs at least one constraint")
    if r1cs.d >= r1cs.field.p:
        raise ValueError("more constraints than field points")
    return QAP(r1cs)


def _values(qap: QAP, w) -> list[int]:
    vals = w.ints() if isinstance(w, Witness) else [int(v) % qap.field.p for v in w]
    if len(vals) != qap.n + 1:
        raise LengthMismatch(f"witness has {len(vals)} values, QAP has {qap.n + 1} variables")
    return vals


def assemble(qap: QAP, w) -> tuple[Polynomial, Polynomial, Polynomial]:
    """L = sum v_i l_i, R = sum v_i r_i, O = sum v_i o_i (v_0 = 1 included)."""
    vals = _values(qap, w)
    p = qap.field.p
    out = []
    for side in SIDES:
        # L(j) is the constraint's dot product, so interpolate those directly
        evals = [sum(c * vals[i] for i, c in getattr(con, side).items()) % p for con in qap.r1cs.constraints]
        out.append(interpolate_domain(evals, qap.field))
    return tuple(out)


def assemble_operand(ops: VariablePolynomials, vals: Sequence[int], field: Field) -> Polynomial:
    """sum vals[i] * ops[i]; the slow, explicit path used by attacks and tests."""
    d = ops._d
    evals = [0] * d
    for i, v in enumerate(vals):
        for j, c in ops._columns[i].items():
            evals[j - 1] += c * v
    return interpolate_domain(evals, field)


def cofactor(L: Polynomial, R: Polynomial, O: Polynomial, t: Polynomial) -> Polynomial:
    """h = (L R - O) / t, refusing when the division leaves a remainder."""
    h, rem = divmod(L * R - O, t)
    if not rem.is_zero:
        raise UnsatisfiedConstraints("L*R - O is not divisible by the target polynomial")
    return h
