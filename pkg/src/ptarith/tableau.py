"""Tableau circuits for bounded runs.

For a machine with ℓ states the cell alphabet has k = 3 + 3ℓ elements:
0, 1, 2 are the plain tape symbols 0, 1, _ and 3 + 3i + b marks the head in
state i over symbol b.  The circuit has T = n^c rows (times 0..T-1) and T
cells per row; light[i, j, s] is on iff cell j holds element s at time i.
Row 0 transcribes the input; each later light is an OR over the triples
(a, b, c) in A_s of AND(light[i-1, j-1, a], light[i-1, j, b], light[i-1, j+1, c]).
At j = 0 and j = T-1 the missing neighbour is dropped, so those gates use
pairs instead of triples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .tm import BASE_ALPHABET, MachineError, TMDescription

DEFAULT_CAP = 4096
ABSENT = None

CLASSES = ("inner", "left", "right", "single")


class TableauError(MachineError):
    pass


@dataclass(frozen=True)
class Elements:
    """Index arithmetic for cell elements of one machine."""
    machine: TMDescription

    @property
    def k(self) -> int:
        return 3 + 3 * len(self.machine.states)

    def head(self, state: str, symbol: int) -> int:
        return 3 + 3 * self.machine.state_index(state) + symbol

    def is_head(self, s: int) -> bool:
        return s >= 3

    def split(self, s: int) -> tuple:
        """(state name or None, symbol index)."""
        if s < 3:
            return None, s
        i, b = divmod(s - 3, 3)
        return self.machine.states[i], b

    def next(self, a, b: int, c) -> int | None:
        """Element of the middle cell one step later, or None if inconsistent."""
        m = self.machine
        heads = [x for x in (a, b, c) if x is not None and x >= 3]
        if len(heads) > 1:
            return None
        if b >= 3:
            q, x = self.split(b)
            if q in m.halting:
                return b
            _, y, _ = m.delta[(q, BASE_ALPHABET[x])]
            return BASE_ALPHABET.index(y)
        if a is not None and a >= 3:
            q, x = self.split(a)
            if q not in m.halting:
                q2, _, d = m.delta[(q, BASE_ALPHABET[x])]
                if d == "R":
                    return self.head(q2, b)
        if c is not None and c >= 3:
            q, x = self.split(c)
            if q not in m.halting:
                q2, _, d = m.delta[(q, BASE_ALPHABET[x])]
                if d == "L":
                    return self.head(q2, b)
        return b


def _check_alphabet(m: TMDescription):
    if m.alphabet != BASE_ALPHABET:
        raise TableauError("the tableau needs the tape alphabet to be exactly 0 1 _")


def transition_sets(m: TMDescription) -> dict:
    """{class: {s: sorted tuple of (a, b, c)}} with None for a missing neighbour."""
    _check_alphabet(m)
    el = Elements(m)
    k = el.k
    full = list(range(k))
    sides = {"inner": (full, full), "left": ([None], full), "right": (full, [None]),
             "single": ([None], [None])}
    out = {}
    for cls, (left, right) in sides.items():
        table: dict = {s: [] for s in range(k)}
        for a in left:
            for b in range(k):
                for c in right:
                    s = el.next(a, b, c)
                    if s is not None:
                        table[s].append((a, b, c))
        out[cls] = {s: tuple(v) for s, v in table.items()}
    return out


@dataclass(frozen=True)
class Circuit:
    machine: TMDescription = field(repr=False)
    n: int
    c: int
    T: int
    k: int
    output_cell: int = 1

    @cached_property
    def sets(self) -> dict:
        return transition_sets(self.machine)

    @property
    def gate_count(self) -> int:
        return self.T * self.T * self.k

    @cached_property
    def elements(self) -> Elements:
        return Elements(self.machine)

    def cell_class(self, j: int) -> str:
        if self.T == 1:
            return "single"
        if j == 0:
            return "left"
        if j == self.T - 1:
            return "right"
        return "inner"

    def accept_elements(self) -> tuple:
        return tuple(self.elements.head(self.machine.accept, b) for b in range(3))

    def reject_elements(self) -> tuple:
        return tuple(self.elements.head(self.machine.reject, b) for b in range(3))

    def layer0(self, j: int, bit: int | None) -> int:
        """Element of cell j at time 0 when the input bit there is `bit`."""
        if j >= self.n:
            return 2
        if j == 0:
            return self.elements.head(self.machine.start, bit)
        return bit

    @cached_property
    def _arrays(self):
        triples = set()
        for cls in CLASSES:
            for s, ts in self.sets[cls].items():
                for t in ts:
                    triples.add((t, s))
        k = self.k
        order = sorted(triples, key=lambda ts: (ts[1], tuple(-1 if v is None else v for v in ts[0])))
        ta = np.array([k if t[0] is None else t[0] for t, _ in order], dtype=np.intp)
        tb = np.array([t[1] for t, _ in order], dtype=np.intp)
        tc = np.array([k if t[2] is None else t[2] for t, _ in order], dtype=np.intp)
        onehot = np.zeros((len(order), k), dtype=np.int32)
        onehot[np.arange(len(order)), [s for _, s in order]] = 1
        return ta, tb, tc, onehot


def tableau(m: TMDescription, c: int, n: int, cap: int = DEFAULT_CAP, output_cell: int = 1) -> Circuit:
    _check_alphabet(m)
    if n < 1 or c < 1:
        raise TableauError("n and c must be at least 1")
    T = n ** c
    if T > cap:
        raise TableauError(f"n^c = {T} exceeds the cap {cap}")
    return Circuit(m, n, c, T, 3 + 3 * len(m.states), output_cell)


def _check_input(C: Circuit, bits: str):
    if len(bits) != C.n or set(bits) - {"0", "1"}:
        raise TableauError(f"input must be a bit string of length {C.n}")


def initial_row(C: Circuit, bits: str) -> np.ndarray:
    _check_input(C, bits)
    row = np.zeros((C.T, C.k), dtype=bool)
    for j in range(C.T):
        row[j, C.layer0(j, int(bits[j]) if j < C.n else None)] = True
    return row


def lights(C: Circuit, bits: str) -> np.ndarray:
    """The full light table, shape (T, T, k)."""
    ta, tb, tc, onehot = C._arrays
    T, k = C.T, C.k
    out = np.zeros((T, T, k), dtype=bool)
    out[0] = initial_row(C, bits)
    padded = np.zeros((T + 2, k + 1), dtype=bool)
    padded[0, k] = padded[T + 1, k] = True
    for i in range(1, T):
        padded[1:T + 1, :k] = out[i - 1]
        fired = padded[0:T][:, ta] & padded[1:T + 1][:, tb] & padded[2:T + 2][:, tc]
        out[i] = (fired.astype(np.int32) @ onehot) > 0
    return out


def eval_circuit(C: Circuit, bits: str) -> bool:
    """Accept iff an accept-state light is on at the output cell of the last row."""
    table = lights(C, bits)
    J = C.output_cell
    if J >= C.T:
        return False
    return bool(table[C.T - 1, J, list(C.accept_elements())].any())


def one_hot(table: np.ndarray) -> bool:
    return bool((table.sum(axis=2) == 1).all())


def pack_lights(table: np.ndarray) -> int:
    """Bit i·T·k + j·k + s of the result is light[i, j, s]."""
    flat = table.reshape(-1).astype(np.uint8)
    return int.from_bytes(np.packbits(flat, bitorder="little").tobytes(), "little")


def emit_circuit(C: Circuit) -> str:
    """Line-based gate list."""
    lines = [f"# tableau n={C.n} c={C.c} T={C.T} k={C.k} gates={C.gate_count} output_cell={C.output_cell}"]
    for j in range(C.T):
        for s in range(C.k):
            if j < C.n:
                bits = [b for b in (0, 1) if C.layer0(j, b) == s]
                rhs = f"INPUTDEF x{j}={bits[0]}" if bits else "CONST0"
            else:
                rhs = "CONST1" if s == 2 else "CONST0"
            lines.append(f"light 0 {j} {s} = {rhs}")
    fmt = lambda v: "-" if v is None else str(v)
    for i in range(1, C.T):
        for j in range(C.T):
            table = C.sets[C.cell_class(j)]
            for s in range(C.k):
                ts = table[s]
                if not ts:
                    lines.append(f"light {i} {j} {s} = CONST0")
                    continue
                body = " ".join(f"AND({fmt(a)},{fmt(b)},{fmt(c)})" for a, b, c in ts)
                lines.append(f"light {i} {j} {s} = OR{{ {body} }}")
    return "\n".join(lines) + "\n"
