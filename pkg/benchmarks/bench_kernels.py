"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 64,256,1000] [--repeat 5]

Also times a full setup + prove + verify on a generated chain circuit with
each implementation, by swapping the dispatch target in place.
"""
import argparse
import random
import timeit

from zkqap import _pykernels, kernels
from zkqap.algebra import DEFAULT_MODULUS

P = DEFAULT_MODULUS


def kernel_cases(n, rng):
    a = [rng.randrange(P) for _ in range(n)]
    b = [rng.randrange(P) for _ in range(n)]
    den = [rng.randrange(P) for _ in range(n // 2)] + [1]
    rows = [[rng.randrange(P) for _ in range(n)] for _ in range(32)]
    scalars = [rng.randrange(P) for _ in range(32)]
    x = rng.randrange(P)
    return {
        "poly_mul": lambda m: m.poly_mul(a, b, P),
        "poly_divrem": lambda m: m.poly_divrem(a + b, den, P),
        "poly_eval": lambda m: m.poly_eval(a, x, P),
        "synthetic_div": lambda m: m.synthetic_div(a, x, P),
        "lincomb(32 rows)": lambda m: m.lincomb(rows, scalars, P),
        "dot": lambda m: m.dot(a, b, P),
    }


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10**6:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def pipeline(k):
    from zkqap.circuit import compile_source
    from zkqap.pinocchio import prove, setup, verify
    from zkqap.qap import build_qap

    lines = ["x1 = a * a + 1;"] + [f"x{i} = x{i - 1} * a + {i};" for i in range(2, k + 1)]
    circuit = compile_source(f"def chain(pub a) -> x{k} {{ {' '.join(lines)} }}")
    w = circuit.witness({"a": 3})

    def run():
        qap = build_qap(circuit.r1cs)  # fresh, so cached polynomials are rebuilt
        pk, vk = setup(qap, circuit.r1cs.m, random.Random(1))
        proof = prove(pk, qap, w, random.Random(2))
        assert verify(vk, proof, [v.value for v in circuit.r1cs.public_values(w)])

    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,256,1000")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--chain", type=int, default=1000, help="constraints in the end-to-end circuit")
    args = ap.parse_args()

    compiled = kernels.compiled
    if compiled is None:
        print("compiled kernels unavailable; only the Python fallback can be timed")
    impls = [("python", _pykernels)] + ([("compiled", compiled)] if compiled else [])
    rng = random.Random(0)
    print(f"{'kernel':18s} {'n':>6s} " + " ".join(f"{name:>12s}" for name, _ in impls) + "   speedup")
    for n in (int(s) for s in args.sizes.split(",")):
        for label, fn in kernel_cases(n, rng).items():
            times = [best(lambda m=mod: fn(m), args.repeat) for _, mod in impls]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(f"{label:18s} {n:6d} " + " ".join(f"{t * 1e6:10.1f}us" for t in times) + f"  {speed}")

    run = pipeline(args.chain)
    totals = []
    saved = kernels.compiled
    for name, mod in impls:
        kernels.compiled = mod if mod is not _pykernels else None
        totals.append(min(timeit.repeat(run, number=1, repeat=3)))
        print(f"setup+prove+verify, d={args.chain}, {name}: {totals[-1]:.3f}s")
    kernels.compiled = saved
    if len(totals) > 1:
        print(f"end-to-end speedup: {totals[0] / totals[1]:.1f}x")


if __name__ == "__main__":
    main()
