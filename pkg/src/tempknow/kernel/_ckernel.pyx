# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row recurrence; same contract as ``_pykernel``."""

name = "cython"

cdef enum:
    OP_TRUE = 0
    OP_FALSE = 1
    OP_ATOM = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5
    OP_SINCE = 6
    OP_SSINCE = 7


cdef int _row(const int[::1] ops, const int[::1] lhs, const int[::1] rhs,
              const unsigned char* prev, unsigned int mask,
              unsigned char* out) nogil:
    cdef Py_ssize_t i, m = ops.shape[0]
    cdef int op
    for i in range(m):
        op = ops[i]
        if op == OP_ATOM:
            out[i] = (mask >> lhs[i]) & 1
        elif op == OP_NOT:
            out[i] = 1 - out[lhs[i]]
        elif op == OP_AND:
            out[i] = out[lhs[i]] & out[rhs[i]]
        elif op == OP_OR:
            out[i] = out[lhs[i]] | out[rhs[i]]
        elif op == OP_SINCE:
            if prev == NULL:
                out[i] = out[rhs[i]]
            else:
                out[i] = out[rhs[i]] | (out[lhs[i]] & prev[i])
        elif op == OP_SSINCE:
            if prev == NULL:
                out[i] = 0
            else:
                out[i] = out[lhs[i]] & (prev[rhs[i]] | prev[i])
        elif op == OP_TRUE:
            out[i] = 1
        elif op == OP_FALSE:
            out[i] = 0
        else:
            return -1
    return 0


def step(prog, prev, unsigned int mask):
    cdef const int[::1] ops = prog.ops
    cdef Py_ssize_t m = ops.shape[0]
    out = bytearray(m)
    cdef unsigned char[::1] o = out
    cdef const unsigned char[::1] p
    cdef const unsigned char* pp = NULL
    if m == 0:
        return b""
    if prev is not None:
        p = prev
        pp = &p[0]
    if _row(ops, prog.lhs, prog.rhs, pp, mask, &o[0]) < 0:
        raise ValueError("bad opcode")
    return bytes(out)


def run(prog, masks):
    cdef const int[::1] ops = prog.ops
    cdef const int[::1] lhs = prog.lhs
    cdef const int[::1] rhs = prog.rhs
    cdef Py_ssize_t m = ops.shape[0]
    cdef Py_ssize_t n = len(masks), a
    buf = bytearray(m * n)
    if m == 0 or n == 0:
        return [b""] * n
    cdef unsigned char[::1] b = buf
    cdef unsigned int[::1] mk
    from array import array
    mk = array("I", masks)
    with nogil:
        for a in range(n):
            if _row(ops, lhs, rhs, NULL if a == 0 else &b[(a - 1) * m], mk[a], &b[a * m]) < 0:
                with gil:
                    raise ValueError("bad opcode")
    raw = bytes(buf)
    return [raw[a * m:(a + 1) * m] for a in range(n)]


def successors(prog, prev):
    cdef const int[::1] ops = prog.ops
    cdef const int[::1] lhs = prog.lhs
    cdef const int[::1] rhs = prog.rhs
    cdef Py_ssize_t m = ops.shape[0]
    cdef unsigned int k = 1u << len(prog.letters), v
    buf = bytearray(m * k)
    if m == 0:
        return [b""] * k
    cdef unsigned char[::1] b = buf
    cdef const unsigned char[::1] p
    cdef const unsigned char* pp = NULL
    if prev is not None:
        p = prev
        pp = &p[0]
    with nogil:
        for v in range(k):
            if _row(ops, lhs, rhs, pp, v, &b[v * m]) < 0:
                with gil:
                    raise ValueError("bad opcode")
    raw = bytes(buf)
    return [raw[v * m:(v + 1) * m] for v in range(k)]
