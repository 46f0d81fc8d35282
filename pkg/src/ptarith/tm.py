"""Deterministic single-tape Turing machines, bounded runs and machine codes.

A machine code is the sequence code of the pair [t, c], where t is the
sequence code of the flat list

    [|Q|, |Γ|, start, accept, reject, (q, s, q', s', d) for each transition]

with states and symbols indexed by declaration order and d = 0 for L, 1 for
R.  Transitions are listed for the non-halting states in (state, symbol)
order.  Since every machine has at least two states, a leading 0 is free to
tag extension codes:  [0, 1, pid, params...] names a registered program and
[0, 2, a, b] the sequential composition "run a, feed its output to b".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .godel import decode_seq, encode_seq

BLANK = "_"
BASE_ALPHABET = ("0", "1", BLANK)
_EXTRA_POOL = "abcdefghijklmnopqrstuvwxyz#$%&*+=@^~ABCDEFGHIJKLMNOPQRSTUVWXYZ"
MOVES = ("L", "R")

KIND_PROGRAM = 1
KIND_COMPOSE = 2


class MachineError(ValueError):
    pass


class AlreadyHalted(MachineError):
    pass


def bits_of(w: int) -> str:
    """[w]: binary representation, with [0] = "0"."""
    if w < 0:
        raise MachineError("inputs are natural numbers")
    return format(w, "b")


def bitlen(w: int) -> int:
    return w.bit_length() or 1


# -- machine descriptions -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TMDescription:
    states: tuple
    alphabet: tuple
    start: str
    accept: str
    reject: str
    delta: Mapping = field(repr=False)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", dict(self.delta))
        self.validate()

    def validate(self):
        st, al = self.states, self.alphabet
        if len(set(st)) != len(st) or len(st) < 2:
            raise MachineError("states must be distinct and at least two")
        if len(set(al)) != len(al) or al[:3] != BASE_ALPHABET:
            raise MachineError("alphabet must start with 0 1 _ and have no duplicates")
        if any(len(s) != 1 for s in al):
            raise MachineError("tape symbols are single characters")
        for q in (self.start, self.accept, self.reject):
            if q not in st:
                raise MachineError(f"unknown state {q!r}")
        if self.accept == self.reject:
            raise MachineError("accept and reject states must differ")
        halting = {self.accept, self.reject}
        for (q, s), (q2, s2, d) in self.delta.items():
            if q not in st or q2 not in st or s not in al or s2 not in al or d not in MOVES:
                raise MachineError(f"bad transition {q} {s} -> {q2} {s2} {d}")
            if q in halting:
                raise MachineError(f"transition out of halting state {q!r}")
        for q in st:
            if q in halting:
                continue
            for s in al:
                if (q, s) not in self.delta:
                    raise MachineError(f"delta undefined on ({q}, {s})")

    def flat(self) -> list:
        si = {q: i for i, q in enumerate(self.states)}
        ai = {s: i for i, s in enumerate(self.alphabet)}
        out = [len(self.states), len(self.alphabet), si[self.start], si[self.accept], si[self.reject]]
        for q in self.states:
            if q in (self.accept, self.reject):
                continue
            for s in self.alphabet:
                q2, s2, d = self.delta[(q, s)]
                out += [si[q], ai[s], si[q2], ai[s2], MOVES.index(d)]
        return out

    def __eq__(self, other):
        return isinstance(other, TMDescription) and self.flat() == other.flat()

    def __hash__(self):
        return hash(tuple(self.flat()))

    @property
    def halting(self) -> tuple:
        return (self.accept, self.reject)

    def state_index(self, q: str) -> int:
        return self.states.index(q)

    def to_text(self) -> str:
        lines = [f"states: {' '.join(self.states)}", f"start: {self.start}",
                 f"accept: {self.accept}", f"reject: {self.reject}",
                 f"alphabet: {' '.join(self.alphabet)}"]
        for q in self.states:
            for s in self.alphabet:
                if (q, s) in self.delta:
                    q2, s2, d = self.delta[(q, s)]
                    lines.append(f"{q} {s} -> {q2} {s2} {d}")
        return "\n".join(lines) + "\n"


def parse_machine(text: str, name: str = "") -> TMDescription:
    header: dict = {}
    delta: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.strip().startswith("alphabet") else raw.strip()
        if not line:
            continue
        if "->" in line:
            lhs, rhs = line.split("->", 1)
            l, r = lhs.split(), rhs.split()
            if len(l) != 2 or len(r) != 3:
                raise MachineError(f"line {lineno}: transition must read 'q s -> q2 s2 L|R'")
            if (l[0], l[1]) in delta:
                raise MachineError(f"line {lineno}: duplicate transition for ({l[0]}, {l[1]})")
            delta[(l[0], l[1])] = (r[0], r[1], r[2])
            continue
        if ":" not in line:
            raise MachineError(f"line {lineno}: cannot parse {raw!r}")
        key, value = (p.strip() for p in line.split(":", 1))
        if key not in ("states", "start", "accept", "reject", "alphabet"):
            raise MachineError(f"line {lineno}: unknown directive {key!r}")
        if key in header:
            raise MachineError(f"line {lineno}: repeated directive {key!r}")
        header[key] = value.split()
    for key in ("states", "start", "accept", "reject", "alphabet"):
        if key not in header:
            raise MachineError(f"missing directive {key!r}")
    for key in ("start", "accept", "reject"):
        if len(header[key]) != 1:
            raise MachineError(f"{key} takes exactly one state")
    return TMDescription(header["states"], header["alphabet"], header["start"][0],
                         header["accept"][0], header["reject"][0], delta, name)


def machine_from_flat(xs: list) -> TMDescription:
    """Inverse of TMDescription.flat with canonical names q0.., 0 1 _ a b ..."""
    if len(xs) < 5:
        raise MachineError("flat list too short")
    nq, ng, start, acc, rej = xs[:5]
    if nq < 2 or ng < 3 or ng > 3 + len(_EXTRA_POOL):
        raise MachineError("bad state or alphabet count")
    states = [f"q{i}" for i in range(nq)]
    alphabet = list(BASE_ALPHABET) + list(_EXTRA_POOL[:ng - 3])
    if max(start, acc, rej) >= nq:
        raise MachineError("state index out of range")
    body = xs[5:]
    expected = (nq - (2 if acc != rej else 1)) * ng
    if len(body) != 5 * expected:
        raise MachineError("transition list is not total")
    delta: dict = {}
    order = [(q, s) for q in range(nq) if q not in (acc, rej) for s in range(ng)]
    for k, (q, s) in enumerate(order):
        a, b, q2, s2, d = body[5 * k:5 * k + 5]
        if (a, b) != (q, s) or q2 >= nq or s2 >= ng or d > 1:
            raise MachineError("transition list out of canonical order")
        delta[(states[q], alphabet[s])] = (states[q2], alphabet[s2], MOVES[d])
    return TMDescription(states, alphabet, states[start], states[acc], states[rej], delta)


# -- configurations and stepping -----------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    left: str
    state: str
    right: str

    def __str__(self):
        return f"{self.left}[{self.state}]{self.right}"


def start_configuration(m: TMDescription, input_bits: str) -> Configuration:
    return Configuration("", m.start, input_bits or BLANK)


def step(m: TMDescription, c: Configuration) -> Configuration:
    if c.state in m.halting:
        raise AlreadyHalted(f"already halted in {c.state}")
    right = c.right or BLANK
    q2, s2, d = m.delta[(c.state, right[0])]
    rest = right[1:]
    if d == "R":
        return Configuration(c.left + s2, q2, rest or BLANK)
    if not c.left:
        return Configuration("", q2, BLANK + s2 + rest)
    return Configuration(c.left[:-1], q2, c.left[-1] + s2 + rest)


# -- verdicts ----------------------------------------------------------------

ACCEPT, REJECT, TIMEOUT = "accept", "reject", "timeout"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded run.

    Accepting runs carry the final tape contents (blanks trimmed from both
    ends); the accept state doubles as the halting state of machines that
    compute a function, and `output` reads that tape.
    """
    kind: str
    steps_used: int
    tape: str | None = None
    diagnostic: str = ""

    @property
    def accepted(self) -> bool:
        return self.kind == ACCEPT

    @property
    def output(self) -> str | None:
        return self.tape if self.kind == ACCEPT else None

    @property
    def output_value(self) -> int | None:
        s = self.output
        if not s or set(s) - {"0", "1"}:
            return None
        return int(s, 2)

    def same_behavior(self, other: "Verdict") -> bool:
        return (self.kind, self.steps_used, self.output) == (other.kind, other.steps_used, other.output)

    def __str__(self):
        out = f" output={self.output}" if self.output is not None else ""
        diag = f" ({self.diagnostic})" if self.diagnostic else ""
        return f"{self.kind} steps={self.steps_used}{out}{diag}"


class _Compiled:
    """Integer tables for fast simulation."""

    def __init__(self, m: TMDescription):
        self.m = m
        si = {q: i for i, q in enumerate(m.states)}
        ai = {s: i for i, s in enumerate(m.alphabet)}
        self.si, self.ai = si, ai
        g = len(m.alphabet)
        self.g = g
        self.table = [None] * (len(m.states) * g)
        for (q, s), (q2, s2, d) in m.delta.items():
            self.table[si[q] * g + ai[s]] = (si[q2], ai[s2], 1 if d == "R" else -1)
        self.accept, self.reject = si[m.accept], si[m.reject]
        self.start = si[m.start]


_COMPILED: dict = {}


def _compiled(m: TMDescription) -> _Compiled:
    key = id(m)
    got = _COMPILED.get(key)
    if got is None or got.m is not m:
        if len(_COMPILED) > 4096:
            _COMPILED.clear()
        got = _compiled_new = _Compiled(m)
        _COMPILED[key] = _compiled_new
    return got


def run_bounded(m: TMDescription, input_bits: str, bound: int, trace: bool = False):
    """Run from the start configuration for at most `bound` transitions.

    Returns a Verdict, or (Verdict, [Configuration...]) when trace is set.
    """
    if bound < 0:
        raise MachineError("bound must be a natural number")
    if set(input_bits) - {"0", "1"}:
        raise MachineError("input must be a bit string")
    if trace:
        return _run_traced(m, input_bits, bound)
    cm = _compiled(m)
    blank = cm.ai[BLANK]
    tape = bytearray(cm.ai[ch] for ch in input_bits) or bytearray([blank])
    head, q, steps = 0, cm.start, 0
    table, g, acc, rej = cm.table, cm.g, cm.accept, cm.reject
    while q != acc and q != rej:
        if steps >= bound:
            return Verdict(TIMEOUT, steps)
        q, sym, move = table[q * g + tape[head]]
        tape[head] = sym
        head += move
        if head < 0:
            tape[0:0] = bytes([blank]) * 64
            head += 64
        elif head >= len(tape):
            tape.extend(bytes([blank]) * max(64, len(tape)))
        steps += 1
    text = "".join(m.alphabet[b] for b in tape).strip(BLANK)
    return Verdict(ACCEPT if q == acc else REJECT, steps, text)


def _run_traced(m: TMDescription, input_bits: str, bound: int):
    c = start_configuration(m, input_bits)
    configs = [c]
    steps = 0
    while c.state not in m.halting:
        if steps >= bound:
            return Verdict(TIMEOUT, steps), configs
        c = step(m, c)
        configs.append(c)
        steps += 1
    text = (c.left + c.right).strip(BLANK)
    kind = ACCEPT if c.state == m.accept else REJECT
    return Verdict(kind, steps, text), configs


# -- machine codes -----------------------------------------------------------

@dataclass(frozen=True)
class ProgramMachine:
    """A registered procedure standing in for a large machine."""
    pid: int
    params: tuple = ()


@dataclass(frozen=True)
class Composite:
    """Run `first`, then run `second` on its output."""
    first: int
    second: int


@dataclass(frozen=True)
class InvalidCode:
    reason: str

    def __bool__(self):
        return False


def encode_machine(m: TMDescription, c: int) -> int:
    return encode_seq([encode_seq(m.flat()), c])


def program_code(pid: int, params: Iterable[int] = (), c: int = 1) -> int:
    return encode_seq([encode_seq([0, KIND_PROGRAM, pid, *params]), c])


def compose_code(first: int, second: int, c: int = 1) -> int:
    return encode_seq([encode_seq([0, KIND_COMPOSE, first, second]), c])


_DECODED: dict = {}


def decode_machine(code: int):
    """(machine, c) for a well-formed code, otherwise an InvalidCode marker."""
    got = _DECODED.get(code)
    if got is not None:
        return got
    got = _decode_machine(code)
    if code.bit_length() > 4096:
        if len(_DECODED) > 64:
            _DECODED.clear()
        _DECODED[code] = got
    return got


def _decode_machine(code: int):
    outer = decode_seq(code)
    if outer is None or len(outer) != 2:
        return InvalidCode("not a pair code")
    t, c = outer
    xs = decode_seq(t)
    if xs is None:
        return InvalidCode("machine part is not a sequence code")
    if xs[0] == 0:
        if len(xs) >= 3 and xs[1] == KIND_PROGRAM:
            return ProgramMachine(xs[2], tuple(xs[3:])), c
        if len(xs) == 4 and xs[1] == KIND_COMPOSE:
            return Composite(xs[2], xs[3]), c
        return InvalidCode("unknown extension tag")
    try:
        return machine_from_flat(xs), c
    except MachineError as exc:
        return InvalidCode(str(exc))


# -- size functions -------------------------------------------------------------

SIZE_FUNCTIONS: dict = {"bitlen": bitlen}


def register_size(name: str, fn: Callable[[int], int]):
    SIZE_FUNCTIONS[name] = fn


def size_of(fn_id: str, w: int) -> int:
    if fn_id == "3sat" and "3sat" not in SIZE_FUNCTIONS:
        from . import sat  # noqa: F401  (registers the size function)
    try:
        fn = SIZE_FUNCTIONS[fn_id]
    except KeyError:
        raise MachineError(f"unknown size function {fn_id!r}") from None
    return fn(w)


# -- programs and the universal machine --------------------------------------------

class StepLimit(Exception):
    pass


class Meter:
    """Step counter for registered programs."""

    def __init__(self, bound: int):
        self.bound = bound
        self.used = 0

    def charge(self, n: int = 1):
        self.used += n
        if self.used > self.bound:
            self.used = self.bound
            raise StepLimit()


@dataclass(frozen=True)
class Program:
    pid: int
    name: str
    run: Callable  # (params, w, meter, ctx) -> (kind, output natural or None)
    doc: str = ""
    prefix_stage: bool = False    # runs under the prefix fuel when first in a composition


PROGRAMS: dict = {}


def register_program(pid: int, name: str, doc: str = "", prefix_stage: bool = False):
    def deco(fn):
        if pid in PROGRAMS and PROGRAMS[pid].run is not fn:
            raise MachineError(f"program id {pid} already registered")
        PROGRAMS[pid] = Program(pid, name, fn, doc, prefix_stage)
        return fn
    return deco


def _ensure_programs():
    from . import programs  # noqa: F401


@dataclass
class RunContext:
    size_fn: str = "bitlen"
    prefix_fuel: int = 10 ** 7
    depth: int = 0
    count_construction: bool = False


def universal_ptm(code: int, w: int, size_fn: str = "bitlen", size: int | None = None,
                  ctx: RunContext | None = None) -> Verdict:
    """U_PTM: run the machine coded by `code` on [w] for Size(w)^c steps.

    Invalid codes reject.  `size` overrides the size function.
    """
    ctx = ctx or RunContext(size_fn=size_fn)
    if ctx.depth > 64:
        return Verdict(REJECT, 0, diagnostic="composition nesting too deep")
    decoded = decode_machine(code)
    if isinstance(decoded, InvalidCode):
        return Verdict(REJECT, 0, diagnostic=f"invalid code: {decoded.reason}")
    machine, c = decoded
    n = size if size is not None else size_of(size_fn, w)
    bound = n ** c
    if isinstance(machine, TMDescription):
        return run_bounded(machine, bits_of(w), bound)
    sub = RunContext(size_fn, ctx.prefix_fuel, ctx.depth + 1, ctx.count_construction)
    if isinstance(machine, Composite):
        first = universal_ptm(machine.first, w, size=ctx.prefix_fuel, ctx=sub) \
            if _is_prefix_stage(machine.first) else universal_ptm(machine.first, w, size_fn, ctx=sub)
        mid = first.output_value
        if mid is None:
            return Verdict(REJECT, 0, diagnostic=f"prefix stage produced no output ({first.kind})")
        return universal_ptm(machine.second, mid, size_fn, size, ctx=sub)
    _ensure_programs()
    prog = PROGRAMS.get(machine.pid)
    if prog is None:
        return Verdict(REJECT, 0, diagnostic=f"unknown program id {machine.pid}")
    meter = Meter(bound)
    try:
        kind, out = prog.run(machine.params, w, meter, sub)
    except StepLimit:
        return Verdict(TIMEOUT, meter.bound)
    tape = bits_of(out) if (kind == ACCEPT and out is not None) else ("" if kind == ACCEPT else None)
    return Verdict(kind, meter.used, tape)


def _is_prefix_stage(code: int) -> bool:
    """Plain machines and printer programs get the prefix fuel in first position."""
    d = decode_machine(code)
    if isinstance(d, InvalidCode):
        return False
    if isinstance(d[0], TMDescription):
        return True
    if isinstance(d[0], ProgramMachine):
        _ensure_programs()
        prog = PROGRAMS.get(d[0].pid)
        return prog is not None and prog.prefix_stage
    return False
