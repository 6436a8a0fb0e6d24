"""Flattening programs into R1CS and computing witnesses.

Every intermediate value is either a linear combination (a dict from
variable index to coefficient) or a pending product ``A * B + C``. A product
becomes a constraint only when it is assigned, or when it has to feed
another multiplication, in which case it is materialized into a temporary.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import Field, default_field
from ..errors import AssertionFailed, DivisionByZero, MissingInput, NonQuadratic, WitnessError
from .r1cs import ONE, R1CS, Constraint, Witness
from .syntax import AssertBool, AssertRange, Assign, BinOp, Neg, Num, Program, Var


@dataclass
class _Product:
    a: dict
    b: dict
    c: dict


def _clean(lc: dict, p: int) -> dict:
    return {i: c % p for i, c in lc.items() if c % p}


def _add(x: dict, y: dict, p: int, k: int = 1) -> dict:
    out = dict(x)
    for i, c in y.items():
        out[i] = (out.get(i, 0) + k * c) % p
    return {i: c for i, c in out.items() if c}


def _scale(x: dict, k: int, p: int) -> dict:
    return _clean({i: c * k for i, c in x.items()}, p)


def _constant(lc: dict):
    """Value of a constant combination, or None if it involves a variable."""
    if all(i == 0 for i in lc):
        return lc.get(0, 0)
    return None


@dataclass(frozen=True)
class Circuit:
    """A compiled program: the constraint system plus the recipe for its witness."""

    program: Program
    r1cs: R1CS
    steps: tuple

    @property
    def field(self) -> Field:
        return self.r1cs.field

    def witness(self, inputs: dict) -> Witness:
        return witness(self, inputs)


class _Flattener:
    def __init__(self, prog: Program, field: Field):
        self.p = field.p
        self.field = field
        self.names = [ONE] + prog.public_params + list(prog.outputs) + prog.private_params
        self.index = {name: i for i, name in enumerate(self.names)}
        self.constraints = []
        self.steps = []
        self.temps = 0

    def fresh(self, name: str | None = None) -> int:
        if name is None:
            self.temps += 1
            name = f"tmp.{self.temps}"
        self.index[name] = len(self.names)
        self.names.append(name)
        return self.index[name]

    def slot(self, name: str) -> int:
        # outputs are pre-allocated; other assignment targets are created here
        return self.index[name] if name in self.index else self.fresh(name)

    def emit(self, a: dict, b: dict, c: dict):
        if not c:
            # a * b = 0 rewritten as a * (b + 1) = a so every side names a variable
            b, c = _add(b, {0: 1}, self.p), dict(a)
        self.constraints.append(Constraint(a, b, c))

    def materialize(self, value) -> dict:
        if isinstance(value, dict):
            return value
        target = self.fresh()
        self.bind_product(target, value)
        return {target: 1}

    def bind_product(self, target: int, prod: _Product):
        self.emit(prod.a, prod.b, _add({target: 1}, prod.c, self.p, -1))
        self.steps.append(("mul", target, prod.a, prod.b, prod.c))

    def bind_quotient(self, target: int, num: dict, den: dict):
        self.emit(den, {target: 1}, num)
        self.steps.append(("div", target, num, den))

    def quotient(self, node: BinOp):
        """(numerator, denominator) for a division by a non-constant."""
        num = self.materialize(self.compile(node.left))
        den = self.materialize(self.compile(node.right))
        return num, den

    def compile(self, node):
        p = self.p
        if isinstance(node, Num):
            return _clean({0: node.value}, p)
        if isinstance(node, Var):
            return {self.index[node.name]: 1}
        if isinstance(node, Neg):
            inner = self.compile(node.operand)
            if isinstance(inner, dict):
                return _scale(inner, -1, p)
            return _Product(_scale(inner.a, -1, p), inner.b, _scale(inner.c, -1, p))
        left = self.compile(node.left)
        if node.op in "+-":
            right = self.compile(node.right)
            k = 1 if node.op == "+" else -1
            if isinstance(left, _Product) and isinstance(right, _Product):
                right = self.materialize(right)
            if isinstance(right, _Product):
                return _Product(_scale(right.a, k, p), right.b, _add(_scale(right.c, k, p), left, p))
            if isinstance(left, _Product):
                return _Product(left.a, left.b, _add(left.c, right, p, k))
            return _add(left, right, p, k)
        right = self.compile(node.right)
        if node.op == "*":
            for this, other in ((left, right), (right, left)):
                k = _constant(this) if isinstance(this, dict) else None
                if k is not None:
                    if isinstance(other, dict):
                        return _scale(other, k, p)
                    return _Product(_scale(other.a, k, p), other.b, _scale(other.c, k, p))
            return _Product(self.materialize(left), self.materialize(right), {})
        # division
        if isinstance(right, dict) and _constant(right) is not None:
            k = _constant(right)
            if k == 0:
                where = f"{node.pos[0]}:{node.pos[1]}"
                raise NonQuadratic(f"{where}: division by an expression that is always zero")
            inv = pow(k, -1, p)
            if isinstance(left, dict):
                return _scale(left, inv, p)
            return _Product(_scale(left.a, inv, p), left.b, _scale(left.c, inv, p))
        target = self.fresh()
        self.bind_quotient(target, self.materialize(left), self.materialize(right))
        return {target: 1}

    def assign(self, stmt: Assign):
        expr = stmt.expr
        if isinstance(expr, BinOp) and expr.op == "/":
            right = self.compile(expr.right)
            if not (isinstance(right, dict) and _constant(right) is not None):
                num = self.materialize(self.compile(expr.left))
                self.bind_quotient(self.slot(stmt.target), num, self.materialize(right))
                return
        value = self.compile(expr)
        target = self.slot(stmt.target)
        if isinstance(value, _Product):
            self.bind_product(target, value)
        else:
            if value:
                self.emit(value, {0: 1}, {target: 1})
            else:
                self.emit({target: 1, 0: 1}, {0: 1}, {0: 1})
            self.steps.append(("lin", target, value))

    def assert_bool(self, name: str):
        i = self.index[name]
        self.emit({i: 1}, {i: 1}, {i: 1})
        self.steps.append(("bool", i))

    def assert_range(self, name: str, bits: int):
        i = self.index[name]
        if 1 << bits >= self.p:
            raise NonQuadratic(f"range of {bits} bits does not fit the field")
        idx = [self.fresh(f"{name}.bit{k}") for k in range(bits)]
        self.emit({i: 1}, {0: 1}, {b: 1 << k for k, b in enumerate(idx)})
        self.steps.append(("bits", i, tuple(idx)))
        for b in idx:
            self.emit({b: 1}, {b: 1}, {b: 1})


def flatten(prog: Program, field: Field | None = None) -> R1CS:
    return compile_program(prog, field).r1cs


def compile_program(prog: Program, field: Field | None = None) -> Circuit:
    field = field or default_field()
    fl = _Flattener(prog, field)
    for stmt in prog.statements:
        if isinstance(stmt, Assign):
            fl.assign(stmt)
        elif isinstance(stmt, AssertBool):
            fl.assert_bool(stmt.name)
        elif isinstance(stmt, AssertRange):
            fl.assert_range(stmt.name, stmt.bits)
    m = len(prog.public_params) + len(prog.outputs)
    r1cs = R1CS(field, tuple(fl.names), m, tuple(fl.constraints))
    return Circuit(prog, r1cs, tuple(fl.steps))


def compile_source(source: str, field: Field | None = None) -> Circuit:
    from .parser import parse

    return compile_program(parse(source), field)


def witness(circuit: Circuit, inputs: dict) -> Witness:
    """Evaluate the program on ``inputs`` (name -> int or field element)."""
    field = circuit.field
    p = field.p
    names = circuit.r1cs.names
    prog = circuit.program
    params = [param.name for param in prog.params]
    unknown = set(inputs) - set(params)
    if unknown:
        raise WitnessError(f"unknown inputs: {', '.join(sorted(unknown))}")
    vals: list = [None] * len(names)
    vals[0] = 1
    for name in params:
        if name not in inputs:
            raise MissingInput(f"missing input {name!r}")
        vals[names.index(name)] = int(inputs[name]) % p

    def dot(lc):
        return sum(c * vals[i] for i, c in lc.items()) % p

    for step in circuit.steps:
        kind = step[0]
        if kind == "lin":
            vals[step[1]] = dot(step[2])
        elif kind == "mul":
            _, target, a, b, c = step
            vals[target] = (dot(a) * dot(b) + dot(c)) % p
        elif kind == "div":
            _, target, num, den = step
            divisor = dot(den)
            if divisor == 0:
                raise DivisionByZero(f"division by zero while computing {names[target]!r}")
            vals[target] = dot(num) * pow(divisor, -1, p) % p
        elif kind == "bool":
            if vals[step[1]] not in (0, 1):
                raise AssertionFailed(f"{names[step[1]]} = {field.signed(vals[step[1]])} is not boolean")
        elif kind == "bits":
            _, i, bit_idx = step
            value = vals[i]
            if value >> len(bit_idx):
                raise AssertionFailed(
                    f"{names[i]} = {field.signed(value)} does not fit in {len(bit_idx)} bits"
                )
            for k, b in enumerate(bit_idx):
                vals[b] = value >> k & 1
    return Witness(tuple(field(v) for v in vals), names)
