"""Pure-Python implementations of the modular polynomial kernels.

Every function takes and returns plain lists of ints reduced into ``[0, p)``.
Inputs are dense coefficient vectors, lowest degree first; outputs are not
trimmed of trailing zeros (the caller canonicalizes).
"""


def poly_mul(a, b, p):
    if not a or not b:
        return []
    if min(len(a), len(b)) < 16:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % p for c in out]
    # Kronecker substitution: pack both operands into big integers with slots
    # wide enough to hold a full convolution sum, multiply once, unpack.
    slot_bits = 2 * p.bit_length() + min(len(a), len(b)).bit_length() + 1
    slot = (slot_bits + 7) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(slot, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(slot, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(n * slot, "little")
    return [int.from_bytes(raw[k * slot:(k + 1) * slot], "little") % p for k in range(n)]


def poly_divrem(num, den, p):
    """Long division; ``den[-1]`` must be nonzero and invertible mod p."""
    num = list(num)
    dn = len(den)
    if len(num) < dn:
        return [], num
    inv_lead = pow(den[-1], -1, p)
    q = [0] * (len(num) - dn + 1)
    for k in range(len(num) - dn, -1, -1):
        c = num[k + dn - 1] % p * inv_lead % p
        q[k] = c
        if c:
            for j in range(dn):
                num[k + j] -= c * den[j]
    return q, [x % p for x in num[:dn - 1]]


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def synthetic_div(a, root, p):
    """Divide by (x - root); returns (quotient, remainder)."""
    if not a:
        return [], 0
    q = [0] * (len(a) - 1)
    acc = 0
    for k in range(len(a) - 1, 0, -1):
        acc = (acc * root + a[k]) % p
        q[k - 1] = acc
    rem = (acc * root + a[0]) % p
    return q, rem


def lincomb(vectors, scalars, p):
    """Sum of scalars[k] * vectors[k]; vectors may differ in length."""
    width = max((len(v) for v in vectors), default=0)
    out = [0] * width
    for v, s in zip(vectors, scalars):
        if s:
            for i, c in enumerate(v):
                out[i] += s * c
    return [c % p for c in out]


def dot(a, b, p):
    return sum(x * y for x, y in zip(a, b)) % p
