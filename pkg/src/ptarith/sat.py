"""CNF formulas, a DPLL solver and the 3-CNF code over naturals.

A Cnf3Code is the sequence code of [varcount, l1, l2, ...] with literals in
zig-zag form (2v for +v, 2v+1 for -v).  A natural is a valid code when it
decodes, the literal count is a multiple of three, every literal names a
variable in [1, varcount], and varcount does not exceed the literal count
(so the variable count never exceeds the bit length of the code).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .godel import decode_seq, encode_seq
from .tm import bitlen, register_size


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class Cnf:
    nvars: int
    clauses: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for cl in self.clauses:
            for lit in cl:
                if lit == 0 or abs(lit) > self.nvars:
                    raise CnfError(f"literal {lit} out of range 1..{self.nvars}")

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def satisfied_by(self, model: Sequence[bool]) -> bool:
        """model[v] is the value of variable v (index 0 unused)."""
        return all(any(model[abs(l)] == (l > 0) for l in cl) for cl in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.nvars} {len(self.clauses)}"]
        lines += [" ".join(map(str, cl)) + " 0" for cl in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Cnf:
    nvars = nclauses = None
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"bad problem line {raw!r}")
            nvars, nclauses = int(parts[2]), int(parts[3])
            continue
        if nvars is None:
            raise CnfError("clause before the problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if nvars is None:
        raise CnfError("missing problem line")
    if current:
        clauses.append(current)
    if len(clauses) != nclauses:
        raise CnfError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return Cnf(nvars, clauses)


# -- DPLL ---------------------------------------------------------------------------

UNSAT = None


def solve(cnf: Cnf):
    """A model as a list of booleans indexed by variable (index 0 unused), or UNSAT.

    Complete DPLL with unit propagation over two watched literals.  Branching
    picks the lowest unassigned variable and tries false first.
    """
    n = cnf.nvars
    val = [0] * (n + 1)          # 1 true, -1 false, 0 open
    clauses = []
    units = []
    for cl in cnf.clauses:
        lits = list(dict.fromkeys(cl))
        if any(-l in lits for l in lits):
            continue
        if not lits:
            return UNSAT
        if len(lits) == 1:
            units.append(lits[0])
        else:
            clauses.append(lits)
    watches: dict = {}
    for idx, cl in enumerate(clauses):
        watches.setdefault(cl[0], []).append(idx)
        watches.setdefault(cl[1], []).append(idx)

    trail: list = []

    def value(lit):
        v = val[abs(lit)]
        return v if lit > 0 else -v

    def assign(lit):
        val[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)

    def propagate(start: int) -> bool:
        i = start
        while i < len(trail):
            false_lit = -trail[i]
            i += 1
            watching = watches.get(false_lit)
            if not watching:
                continue
            keep = []
            ok = True
            for j, ci in enumerate(watching):
                cl = clauses[ci]
                if cl[0] == false_lit:
                    cl[0], cl[1] = cl[1], cl[0]
                if value(cl[0]) == 1:
                    keep.append(ci)
                    continue
                for t in range(2, len(cl)):
                    if value(cl[t]) != -1:
                        cl[1], cl[t] = cl[t], cl[1]
                        watches.setdefault(cl[1], []).append(ci)
                        break
                else:
                    keep.append(ci)
                    if value(cl[0]) == -1:
                        keep.extend(watching[j + 1:])
                        ok = False
                        break
                    assign(cl[0])
            watches[false_lit] = keep
            if not ok:
                return False
        return True

    for u in units:
        if value(u) == -1:
            return UNSAT
        if value(u) == 0:
            assign(u)
    if not propagate(0):
        return UNSAT

    decisions: list = []   # (trail length before decision, literal, flipped)
    next_var = 1
    while True:
        while next_var <= n and val[next_var] != 0:
            next_var += 1
        if next_var > n:
            return [False] + [v == 1 for v in val[1:]]
        mark = len(trail)
        decisions.append((mark, -next_var, False))
        assign(-next_var)
        ok = propagate(mark)
        while not ok:
            while decisions and decisions[-1][2]:
                decisions.pop()
            if not decisions:
                return UNSAT
            mark, lit, _ = decisions.pop()
            for l in trail[mark:]:
                val[abs(l)] = 0
            del trail[mark:]
            next_var = min(next_var, abs(lit))
            decisions.append((mark, -lit, True))
            assign(-lit)
            ok = propagate(mark)
        next_var = 1 if not decisions else next_var


def brute_force(cnf: Cnf):
    """First model in lexicographic order (false before true), or UNSAT."""
    for bits in product((False, True), repeat=cnf.nvars):
        model = [False, *bits]
        if cnf.satisfied_by(model):
            return model
    return UNSAT


# -- 3-CNF codes ---------------------------------------------------------------------

def encode_literal(lit: int) -> int:
    return 2 * lit if lit > 0 else 2 * (-lit) + 1


def decode_literal(z: int) -> int:
    return z // 2 if z % 2 == 0 else -(z // 2)


def encode_cnf3(cnf: Cnf) -> int:
    if any(len(cl) != 3 for cl in cnf.clauses):
        raise CnfError("a 3-CNF code needs exactly three literals per clause")
    lits = [encode_literal(l) for cl in cnf.clauses for l in cl]
    if cnf.nvars > len(lits):
        raise CnfError("variable count exceeds the literal count")
    return encode_seq([cnf.nvars, *lits])


def decode_cnf3(x: int) -> Cnf | None:
    xs = decode_seq(x)
    if xs is None:
        return None
    nvars, lits = xs[0], xs[1:]
    if len(lits) % 3 or nvars > len(lits):
        return None
    if any(z < 2 or z // 2 > nvars for z in lits):
        return None
    out = [decode_literal(z) for z in lits]
    return Cnf(nvars, [out[i:i + 3] for i in range(0, len(out), 3)])


def pad_to_3(cnf: Cnf) -> Cnf:
    """Repeat literals so every clause has exactly three."""
    out = []
    for cl in cnf.clauses:
        if not cl or len(cl) > 3:
            raise CnfError("clauses must have 1 to 3 literals")
        out.append((list(cl) * 3)[:3])
    return Cnf(cnf.nvars, out)


def size_3sat(x: int) -> int:
    cnf = decode_cnf3(x)
    return bitlen(x) if cnf is None else max(cnf.nvars, 1)


register_size("3sat", size_3sat)


def sat_relation(x: int) -> bool:
    """x ∈ R_3SAT: x codes a satisfiable 3-CNF."""
    cnf = decode_cnf3(x)
    return cnf is not None and solve(cnf) is not UNSAT


def satisfying_assignment(x: int) -> int | None:
    """Least assignment (bit v-1 = value of variable v) satisfying code x."""
    cnf = decode_cnf3(x)
    if cnf is None:
        return None
    for a in range(1 << cnf.nvars):
        model = [False] + [bool(a >> (v - 1) & 1) for v in range(1, cnf.nvars + 1)]
        if cnf.satisfied_by(model):
            return a
    return None


def decsat_check(e: int, x: int) -> bool:
    """U(e, (1, #SAT, x)) accepts  iff  x ∈ R_3SAT."""
    from .decision import run_decider
    from .meta import sat_family
    return run_decider(e, sat_family(), x).accepted == sat_relation(x)
