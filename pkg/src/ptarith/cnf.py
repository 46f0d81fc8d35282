"""Tseitin translation of tableau circuits into CNF with clauses of width <= 3.

Input bit j is variable j + 1.  Lights that are constant at time 0 are
folded away; every remaining AND of two literals and OR of two literals gets
a fresh variable, so long gates become chains of width-3 clauses.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .sat import Cnf
from .tableau import Circuit

TRUE, FALSE = True, False


@dataclass
class CnfTranslation:
    cnf: Cnf
    inputs: tuple                 # variable of input bit j
    accept: object                # literal, or a constant bool
    lights: dict = field(repr=False, default_factory=dict)   # (i, j, s) -> literal or bool
    gates: list = field(repr=False, default_factory=list)


class _Builder:
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.clauses: list = []
        self.ands: dict = {}
        self.ors: dict = {}
        self.gates: list = []     # (op, out, p, q) in creation order

    def fresh(self) -> int:
        self.nvars += 1
        return self.nvars

    def and2(self, p: int, q: int) -> int:
        if p == q:
            return p
        if p == -q:
            return FALSE
        key = (min(p, q), max(p, q))
        u = self.ands.get(key)
        if u is None:
            u = self.fresh()
            self.clauses += [(-u, p), (-u, q), (u, -p, -q)]
            self.gates.append(("and", u, p, q))
            self.ands[key] = u
        return u

    def or2(self, p: int, q: int) -> int:
        if p == q:
            return p
        if p == -q:
            return TRUE
        key = (min(p, q), max(p, q))
        o = self.ors.get(key)
        if o is None:
            o = self.fresh()
            self.clauses += [(o, -p), (o, -q), (-o, p, q)]
            self.gates.append(("or", o, p, q))
            self.ors[key] = o
        return o

    def conj(self, parts: list):
        lits = []
        for p in parts:
            if p is FALSE:
                return FALSE
            if p is not TRUE:
                lits.append(p)
        if not lits:
            return TRUE
        acc = lits[0]
        for l in lits[1:]:
            acc = self.and2(acc, l)
            if acc is FALSE:
                return FALSE
        return acc

    def disj(self, parts: list):
        lits = []
        for p in parts:
            if p is TRUE:
                return TRUE
            if p is not FALSE and p not in lits:
                lits.append(p)
        if not lits:
            return FALSE
        acc = lits[0]
        for l in lits[1:]:
            acc = self.or2(acc, l)
            if acc is TRUE:
                return TRUE
        return acc


def circuit_to_cnf(C: Circuit, force_accept: bool = False) -> CnfTranslation:
    b = _Builder(C.n)
    inputs = tuple(range(1, C.n + 1))
    light: dict = {}
    for j in range(C.T):
        for s in range(C.k):
            if j < C.n:
                x = inputs[j]
                if s == C.layer0(j, 1):
                    light[0, j, s] = x
                elif s == C.layer0(j, 0):
                    light[0, j, s] = -x
                else:
                    light[0, j, s] = FALSE
            else:
                light[0, j, s] = s == 2
    for i in range(1, C.T):
        for j in range(C.T):
            sets = C.sets[C.cell_class(j)]
            for s in range(C.k):
                terms = []
                for a, mid, c in sets[s]:
                    parts = [light[i - 1, j, mid]]
                    if a is not None:
                        parts.append(light[i - 1, j - 1, a])
                    if c is not None:
                        parts.append(light[i - 1, j + 1, c])
                    terms.append(b.conj(parts))
                light[i, j, s] = b.disj(terms)
    J = C.output_cell
    if J < C.T:
        accept = b.disj([light[C.T - 1, J, s] for s in C.accept_elements()])
    else:
        accept = FALSE
    if force_accept:
        if accept is FALSE:
            z = b.fresh()
            b.clauses += [(z,), (-z,)]
        elif accept is not TRUE:
            b.clauses.append((accept,))
    used = {abs(l) for cl in b.clauses for l in cl}
    for v in range(1, b.nvars + 1):
        if v not in used:
            b.clauses.append((v, -v))
    return CnfTranslation(Cnf(b.nvars, b.clauses), inputs, accept, light, b.gates)


def restrict_model(tr: CnfTranslation, model) -> str:
    """Input bits read off a model."""
    return "".join("1" if model[v] else "0" for v in tr.inputs)


def extend_to_model(tr: CnfTranslation, bits: str) -> list:
    """The assignment forced by an input: evaluate the gate definitions in order."""
    val = [False] * (tr.cnf.nvars + 1)
    for v, ch in zip(tr.inputs, bits):
        val[v] = ch == "1"
    for op, out, p, q in tr.gates:
        a, b = _lit(val, p), _lit(val, q)
        val[out] = (a and b) if op == "and" else (a or b)
    return val


def _lit(val, l: int) -> bool:
    return val[l] if l > 0 else not val[-l]
