"""Reference implementation of the row recurrence in plain Python."""
from .program import (
    OP_AND, OP_ATOM, OP_FALSE, OP_NOT, OP_OR, OP_SINCE, OP_SSINCE, OP_TRUE,
)

name = "python"


def step(prog, prev, mask):
    """Row at the next state. ``prev`` is None at state 0."""
    ops, lhs, rhs = prog.ops, prog.lhs, prog.rhs
    out = bytearray(len(ops))
    first = prev is None
    for i, op in enumerate(ops):
        if op == OP_ATOM:
            out[i] = (mask >> lhs[i]) & 1
        elif op == OP_NOT:
            out[i] = 1 - out[lhs[i]]
        elif op == OP_AND:
            out[i] = out[lhs[i]] & out[rhs[i]]
        elif op == OP_OR:
            out[i] = out[lhs[i]] | out[rhs[i]]
        elif op == OP_SINCE:
            if first:
                out[i] = out[rhs[i]]
            else:
                out[i] = out[rhs[i]] | (out[lhs[i]] & prev[i])
        elif op == OP_SSINCE:
            if not first:
                out[i] = out[lhs[i]] & (prev[rhs[i]] | prev[i])
        elif op == OP_TRUE:
            out[i] = 1
        elif op != OP_FALSE:
            raise ValueError(f"bad opcode {op}")
    return bytes(out)


def run(prog, masks):
    rows = []
    prev = None
    for mask in masks:
        prev = step(prog, prev, mask)
        rows.append(prev)
    return rows


def successors(prog, prev):
    return [step(prog, prev, mask) for mask in range(1 << len(prog.letters))]
