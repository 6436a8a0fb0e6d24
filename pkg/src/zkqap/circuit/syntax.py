"""Syntax tree for the circuit language."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple[int, int]


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"
    pos: tuple[int, int]


Expr = Union[Num, Var, Neg, BinOp]


@dataclass(frozen=True)
class Assign:
    target: str
    expr: Expr
    pos: tuple[int, int]


@dataclass(frozen=True)
class AssertBool:
    name: str
    pos: tuple[int, int]


@dataclass(frozen=True)
class AssertRange:
    name: str
    bits: int
    pos: tuple[int, int]


Statement = Union[Assign, AssertBool, AssertRange]


@dataclass(frozen=True)
class Param:
    name: str
    public: bool


@dataclass(frozen=True)
class Program:
    name: str
    params: tuple[Param, ...]
    outputs: tuple[str, ...]
    statements: tuple[Statement, ...]

    @property
    def public_params(self) -> list[str]:
        return [p.name for p in self.params if p.public]

    @property
    def private_params(self) -> list[str]:
        return [p.name for p in self.params if not p.public]
