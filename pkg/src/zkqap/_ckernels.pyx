# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular polynomial kernels for moduli below 2**63.

Same contracts as the pure-Python module; products are formed in 128-bit
registers and reduced immediately.
"""
from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    """
    typedef unsigned __int128 zk_u128;
    """
    # declared as a 64-bit type for Cython's benefit; C sees the 128-bit typedef
    ctypedef unsigned long long u128 "zk_u128"


cdef u64* _load(seq, Py_ssize_t n, u64 p) except NULL:
    cdef u64* buf = <u64*>malloc((n if n > 0 else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u64>(seq[i] % p)
    return buf


cdef list _dump(u64* buf, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


cdef inline u64 _mulmod(u64 a, u64 b, u64 p) nogil:
    return <u64>((<u128>a * b) % p)


cdef inline u64 _addmod(u64 a, u64 b, u64 p) nogil:
    cdef u64 s = a + b
    if s >= p:
        s -= p
    return s


def poly_mul(a, b, p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef u64 m = p
    cdef u64* x = _load(a, na, m)
    cdef u64* y = _load(b, nb, m)
    cdef Py_ssize_t n = na + nb - 1
    cdef u128* acc = <u128*>malloc(n * sizeof(u128))
    cdef u64* out = <u64*>malloc(n * sizeof(u64))
    cdef Py_ssize_t i, j
    cdef u128 bound = (<u128>1) << 127
    try:
        with nogil:
            for i in range(n):
                acc[i] = 0
            for i in range(na):
                if x[i] == 0:
                    continue
                for j in range(nb):
                    acc[i + j] += <u128>x[i] * y[j]
                    if acc[i + j] >= bound:
                        acc[i + j] %= m
            for i in range(n):
                out[i] = <u64>(acc[i] % m)
        return _dump(out, n)
    finally:
        free(x); free(y); free(acc); free(out)


def poly_divrem(num, den, p):
    cdef Py_ssize_t nn = len(num), dn = len(den)
    if nn < dn:
        return [], [int(c) % p for c in num]
    cdef u64 m = p
    cdef u64 inv_lead = pow(int(den[dn - 1]), -1, p)
    cdef u64* r = _load(num, nn, m)
    cdef u64* d = _load(den, dn, m)
    cdef Py_ssize_t qn = nn - dn + 1
    cdef u64* q = <u64*>malloc(qn * sizeof(u64))
    cdef Py_ssize_t k, j
    cdef u64 c, neg
    try:
        with nogil:
            for k in range(qn - 1, -1, -1):
                c = _mulmod(r[k + dn - 1], inv_lead, m)
                q[k] = c
                if c != 0:
                    neg = m - c
                    for j in range(dn):
                        r[k + j] = _addmod(r[k + j], _mulmod(neg, d[j], m), m)
        return _dump(q, qn), _dump(r, dn - 1)
    finally:
        free(r); free(d); free(q)


def poly_eval(a, x, p):
    cdef Py_ssize_t n = len(a)
    cdef u64 m = p
    cdef u64 xv = x % p
    cdef u64* c = _load(a, n, m)
    cdef u64 acc = 0
    cdef Py_ssize_t k
    try:
        with nogil:
            for k in range(n - 1, -1, -1):
                acc = _addmod(_mulmod(acc, xv, m), c[k], m)
        return acc
    finally:
        free(c)


def synthetic_div(a, root, p):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return [], 0
    cdef u64 m = p
    cdef u64 rt = root % p
    cdef u64* c = _load(a, n, m)
    cdef u64* q = <u64*>malloc((n if n > 1 else 1) * sizeof(u64))
    cdef u64 acc = 0
    cdef Py_ssize_t k
    try:
        with nogil:
            for k in range(n - 1, 0, -1):
                acc = _addmod(_mulmod(acc, rt, m), c[k], m)
                q[k - 1] = acc
            acc = _addmod(_mulmod(acc, rt, m), c[0], m)
        return _dump(q, n - 1), acc
    finally:
        free(c); free(q)


def lincomb(vectors, scalars, p):
    cdef Py_ssize_t width = 0, k, i, nv
    for v in vectors:
        if len(v) > width:
            width = len(v)
    cdef u64 m = p
    cdef u64* out = <u64*>malloc((width if width > 0 else 1) * sizeof(u64))
    cdef u64 s
    cdef u64* buf
    try:
        for i in range(width):
            out[i] = 0
        for v, sc in zip(vectors, scalars):
            s = sc % p
            if s == 0:
                continue
            nv = len(v)
            buf = _load(v, nv, m)
            with nogil:
                for i in range(nv):
                    out[i] = _addmod(out[i], _mulmod(s, buf[i], m), m)
            free(buf)
        return _dump(out, width)
    finally:
        free(out)


def dot(a, b, p):
    cdef Py_ssize_t n = min(len(a), len(b)), i
    cdef u64 m = p
    cdef u64* x = _load(a, n, m)
    cdef u64* y = _load(b, n, m)
    cdef u64 acc = 0
    try:
        with nogil:
            for i in range(n):
                acc = _addmod(acc, _mulmod(x[i], y[i], m), m)
        return acc
    finally:
        free(x); free(y)
