"""Circuit language front end: parsing, flattening to R1CS, witness generation."""
from .compiler import Circuit, compile_program, compile_source, flatten, witness
from .parser import parse, tokenize
from .r1cs import ONE, R1CS, Constraint, Witness
from .syntax import Program

__all__ = [
    "Circuit",
    "Constraint",
    "ONE",
    "Program",
    "R1CS",
    "Witness",
    "compile_program",
    "compile_source",
    "flatten",
    "parse",
    "tokenize",
    "witness",
]
