"""Command-line interface.

Exit codes: 0 success or accept, 1 malformed input or other error, 2 reject.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import ceremony as cer
from .algebra import Field, Polynomial, default_field, vanishing_poly
from .circuit import R1CS, compile_source
from .errors import ZkError
from .group import backend_from_id, simulation_backend
from .kop import PolyCrs, PolyProof, forge_without_alpha, interactive_check, poly_prove, poly_setup, poly_verify_checks
from .pinocchio import Proof, ProvingKey, VerificationKey, dumps, loads, prove, setup, setup_from_powers, verify_checks
from .qap import build_qap

EXIT_OK, EXIT_ERROR, EXIT_REJECT = 0, 1, 2


class Reject(Exception):
    """A check failed; maps to exit code 2."""


def _rng(args) -> random.Random:
    return random.Random(args.seed) if args.seed is not None else random.SystemRandom()


def _field(args) -> Field:
    return Field(args.modulus) if args.modulus else default_field()


def _warn(backend):
    if getattr(backend, "insecure", False):
        print(f"warning: insecure backend {backend.backend_id} (exponents are not hidden)", file=sys.stderr)


def _int(text: str) -> int:
    text = text.strip()
    neg = text.startswith("-")
    body = text[1:] if neg else text
    value = int(body, 16) if body.lower().startswith("0x") else int(body, 10)
    return -value if neg else value


def parse_assignments(text: str | None) -> dict[str, int]:
    """``"w=1,a=0x3,b=-2"`` -> {"w": 1, "a": 3, "b": -2}."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"expected name=value, got {item!r}")
        try:
            out[name.strip()] = _int(value)
        except ValueError:
            raise ValueError(f"bad number {value!r} for {name.strip()!r}") from None
    return out


def _read(path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path, data):
    if isinstance(data, bytes):
        Path(path).write_bytes(data)
    else:
        Path(path).write_text(data, encoding="utf-8")


def _load(path, cls):
    return loads(Path(path).read_bytes(), expect=cls)


def _check_backend(args):
    if args.backend != "expsim":
        raise ValueError(f"unknown backend {args.backend!r}; only 'expsim' is available")


# --- circuit pipeline -------------------------------------------------------


def cmd_compile(args) -> int:
    _check_backend(args)
    circuit = compile_source(_read(args.source), _field(args))
    r1cs = circuit.r1cs
    out = args.output or str(Path(args.source).with_suffix(".r1cs.json"))
    _write(out, r1cs.to_json())
    if args.qap:
        _write(args.qap, build_qap(r1cs).to_json())
    print(f"{circuit.program.name}: d={r1cs.d} constraints, n={r1cs.n} variables + one, m={r1cs.m} public")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_setup(args) -> int:
    _check_backend(args)
    r1cs = R1CS.from_json(_read(args.r1cs))
    qap = build_qap(r1cs)
    backend = simulation_backend(r1cs.field)
    _warn(backend)
    if args.transcript:
        transcript = cer.CeremonyTranscript.from_json(_read(args.transcript))
        if transcript.backend != backend:
            raise ValueError("transcript backend does not match the circuit field")
        verdict = cer.verify_transcript(transcript)
        if not verdict:
            raise Reject(_describe(verdict))
        if not transcript.contributions:
            raise ValueError("transcript has no contributions")
        pk, vk = setup_from_powers(qap, r1cs.m, transcript.latest.powers, _rng(args))
    else:
        pk, vk = setup(qap, r1cs.m, _rng(args), backend=backend)
    _write(args.pk, dumps(pk))
    _write(args.vk, dumps(vk))
    print(f"wrote {args.pk} and {args.vk} (d={qap.d}, n={qap.n}, m={r1cs.m})")
    return EXIT_OK


def cmd_prove(args) -> int:
    _check_backend(args)
    pk = _load(args.pk, ProvingKey)
    backend = pk.backend
    _warn(backend)
    circuit = compile_source(_read(args.source), backend.field)
    qap = build_qap(circuit.r1cs)
    if (qap.n, qap.d, circuit.r1cs.m) != (pk.n, pk.d, pk.m):
        raise ValueError("proving key was not generated for this circuit")
    w = circuit.witness(parse_assignments(args.inputs))
    proof = prove(pk, qap, w, _rng(args), zk=not args.no_zk)
    _write(args.output, dumps(proof))
    field = circuit.field
    public = ",".join(f"{name}={field.signed(v.value)}" for name, v in zip(circuit.r1cs.public_names, circuit.r1cs.public_values(w)))
    print(f"public: {public}")
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    _check_backend(args)
    vk = _load(args.vk, VerificationKey)
    proof = _load(args.proof, Proof)
    _warn(vk.backend)
    if proof.backend != vk.backend:
        raise ValueError(f"proof backend {proof.backend.backend_id} differs from key backend {vk.backend.backend_id}")
    r1cs = R1CS.from_json(_read(args.r1cs))
    if r1cs.field.p != vk.backend.order or r1cs.m != vk.m:
        raise ValueError("R1CS file does not match the verification key")
    given = parse_assignments(args.public)
    names = r1cs.public_names
    missing = [n for n in names if n not in given]
    extra = sorted(set(given) - set(names))
    if missing or extra:
        raise ValueError(f"public assignment mismatch (missing: {missing}, unexpected: {extra})")
    checks = verify_checks(vk, proof, [given[n] for n in names])
    for name, ok in checks.items():
        print(f"{name:12s} {'pass' if ok else 'FAIL'}")
    if not all(checks.values()):
        print("reject")
        return EXIT_REJECT
    print("accept")
    return EXIT_OK


# --- ceremony ---------------------------------------------------------------


def _describe(verdict) -> str:
    return "; ".join(f"contribution {i}: {name} check failed" for i, name in verdict.failures)


def cmd_ceremony(args) -> int:
    _check_backend(args)
    if args.action == "init":
        backend = simulation_backend(_field(args))
        _warn(backend)
        _write(args.output, cer.CeremonyTranscript(args.degree, backend).to_json())
        print(f"wrote empty transcript of degree {args.degree} to {args.output}")
        return EXIT_OK
    transcript = cer.CeremonyTranscript.from_json(_read(args.transcript))
    _warn(transcript.backend)
    if args.action == "contribute":
        verdict = cer.verify_transcript(transcript)
        if not verdict:
            raise Reject(_describe(verdict))
        contribution = cer.contribute(transcript, _rng(args))
        out = args.output or args.transcript
        _write(out, transcript.extend(contribution).to_json())
        print(f"added contribution {contribution.index}; wrote {out}")
        return EXIT_OK
    if args.action == "verify":
        verdict = cer.verify_transcript(transcript, distinct=args.distinct)
        if not verdict:
            print(_describe(verdict))
            print("reject")
            return EXIT_REJECT
        print(f"{len(transcript.contributions)} contributions verified")
        print("accept")
        return EXIT_OK
    # finalize
    verdict = cer.verify_transcript(transcript)
    if not verdict:
        raise Reject(_describe(verdict))
    t = vanishing_poly(args.target_degree or transcript.degree, transcript.backend.field)
    crs = cer.finalize(t, transcript)
    _write(args.output, crs_to_json(crs, t))
    print(f"wrote CRS of degree {crs.degree} to {args.output}")
    return EXIT_OK


def crs_to_json(crs: PolyCrs, t: Polynomial) -> str:
    doc = {
        "backend": crs.backend.backend_id,
        "degree": crs.degree,
        "target": [f"0x{c:x}" for c in t.coeffs],
        "powers": [e.hex() for e in crs.powers],
        "alphaPowers": [e.hex() for e in crs.alpha_powers],
        "alpha": crs.g_alpha.hex(),
        "gT": crs.g_t.hex(),
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def crs_from_json(text: str) -> tuple[PolyCrs, Polynomial]:
    doc = json.loads(text)
    backend = backend_from_id(doc["backend"])
    seq = lambda key: tuple(backend.from_hex(h) for h in doc[key])
    t = Polynomial([int(c, 16) for c in doc["target"]], backend.field)
    return PolyCrs(seq("powers"), seq("alphaPowers"), backend.from_hex(doc["alpha"]), backend.from_hex(doc["gT"])), t


# --- polynomial demo --------------------------------------------------------


def cmd_polydemo(args) -> int:
    _check_backend(args)
    field = _field(args)
    rng = _rng(args)
    coeffs = [_int(c) for c in args.poly.split(",")]
    p = Polynomial(list(reversed(coeffs)), field)
    t = Polynomial.from_roots([_int(r) for r in args.roots.split(",")], field)
    print(f"p(x) = {p}")
    print(f"t(x) = {t}")
    r = field(args.point)
    h, rem = divmod(p, t)
    print(f"plaintext: p({r}) = {p(r)}, t({r}) = {t(r)}")
    if not rem.is_zero:
        print(f"t does not divide p: remainder {rem}; the honest prover refuses")
        return EXIT_REJECT
    print(f"plaintext: h(x) = {h}, check p(r) = t(r) h(r): {'pass' if interactive_check(p, t, r) else 'FAIL'}")
    backend = simulation_backend(field)
    _warn(backend)
    crs, _ = poly_setup(t, max(p.degree, t.degree), rng, backend)
    proof = poly_prove(crs, p, t, rng)
    checks = poly_verify_checks(crs, proof)
    print("encrypted proof: " + ", ".join(f"{k} {'pass' if v else 'FAIL'}" for k, v in checks.items()))
    z_p, z_h = forge_without_alpha(crs, rng)
    forged = PolyProof(z_p, z_h, backend.random_element(rng))
    checks = poly_verify_checks(crs, forged)
    print("forgery without alpha: " + ", ".join(f"{k} {'pass' if v else 'FAIL'}" for k, v in checks.items()))
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="deterministic randomness (testing only)")
    common.add_argument("--modulus", type=_int, help="prime field modulus (default 2^61-1)")
    common.add_argument("--backend", default="expsim", help="group backend (only 'expsim')")

    parser = argparse.ArgumentParser(prog="zkqap", description="Compile, prove and verify QAP statements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", parents=[common], help="compile a .zkc program to R1CS JSON")
    p.add_argument("source")
    p.add_argument("-o", "--output")
    p.add_argument("--qap", help="also write a QAP debug dump here")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("setup", parents=[common], help="generate proving and verification keys")
    p.add_argument("r1cs")
    p.add_argument("--pk", default="pk.zkpc")
    p.add_argument("--vk", default="vk.zkpc")
    p.add_argument("--transcript", help="take the powers of s from a ceremony transcript")
    p.set_defaults(func=cmd_setup)

    p = sub.add_parser("prove", parents=[common], help="compute a proof")
    p.add_argument("source")
    p.add_argument("--pk", default="pk.zkpc")
    p.add_argument("--inputs", required=True, help="k=v,... for every parameter")
    p.add_argument("--no-zk", action="store_true", help="skip the zero-knowledge blinding")
    p.add_argument("-o", "--output", default="proof.zkpc")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", parents=[common], help="check a proof against public values")
    p.add_argument("--vk", default="vk.zkpc")
    p.add_argument("--proof", default="proof.zkpc")
    p.add_argument("--r1cs", required=True, help="R1CS file, for public variable names")
    p.add_argument("--public", default="", help="k=v,... for every public variable")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ceremony", help="multi-party CRS generation")
    csub = p.add_subparsers(dest="action", required=True)
    c = csub.add_parser("init", parents=[common])
    c.add_argument("-d", "--degree", type=int, required=True)
    c.add_argument("-o", "--output", default="transcript.json")
    c = csub.add_parser("contribute", parents=[common])
    c.add_argument("transcript")
    c.add_argument("-o", "--output", help="defaults to updating the transcript in place")
    c = csub.add_parser("verify", parents=[common])
    c.add_argument("transcript")
    c.add_argument("--distinct", action="store_true", help="also flag contributions that change nothing")
    c = csub.add_parser("finalize", parents=[common])
    c.add_argument("transcript")
    c.add_argument("--target-degree", type=int, help="t(x) = (x-1)...(x-k); default k = degree")
    c.add_argument("-o", "--output", default="crs.json")
    p.set_defaults(func=cmd_ceremony)

    p = sub.add_parser("polydemo", parents=[common], help="walk through the polynomial-knowledge protocol")
    p.add_argument("--poly", default="1,-3,2,0", help="coefficients, highest degree first")
    p.add_argument("--roots", default="1,2", help="roots of the target polynomial")
    p.add_argument("--point", type=_int, default=23, help="plaintext evaluation point")
    p.set_defaults(func=cmd_polydemo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "ceremony" and args.action == "init" and args.degree < 1:
            raise ValueError("degree must be positive")
        return args.func(args)
    except Reject as exc:
        print(f"reject: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except (ZkError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
