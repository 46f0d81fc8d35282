"""The universal machine written in arithmetic: PTM-Acc and PTM-Out.

Acc(e, w, s) says that e codes a plain machine (t, c) which accepts [w]
within s^c steps; Out(e, w, s, b) adds that the final tape, blank-trimmed,
reads [b].  Both are bounded formulas with e free, built in three layers:

* a decode witness D (fixed width fields of W = |(|e|)| + 1 bits) holding
  the character positions, lengths and values of the flat list inside t,
  plus a transition table indexed by (state, symbol);
* checks tying D to the bits of e and to the validity rules of machine
  codes, so that D exists iff e is a plain machine code and is then unique;
* a light table Y over rows 0..P and columns 0..2P (P = s^c) with the head
  starting in column P, so the head can never leave the window.

Cell elements are 0..g-1 for tape symbols and g + g·q + y for the head in
state q over symbol y (g = |Γ|).  Codes of registered programs and
compositions make the decode fail, so the formulas are false for them.

Every quantifier over a witness carries a hint computed from an independent
Python decode, which is what makes evaluation feasible; the formulas pin
each witness uniquely, so a hinted check decides the formula exactly.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .evaluate import EvalError, compile_term
from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, Iff, Implies, Len,
    Lt, Monus, Mul, Not, Or, Pow, Succ, Term, Var, Zero, big_and, big_or, le, num,
)
from .godel import decode_seq, encode_seq
from .tm import _EXTRA_POOL, InvalidCode, TMDescription, decode_machine

ONE = Succ(Zero())
TWO = num(2)
MAX_ALPHABET = 3 + len(_EXTRA_POOL)
WITNESS_CAP = 1 << 24          # light-table bits materialized for a hint


def _pow2(t: Term) -> Term:
    return Pow(TWO, t)


def _dbl(t: Term) -> Term:
    return Add(t, t)


def _sum(terms: Sequence[Term]) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


class Scope:
    """Fresh bound variables and the witness hints attached to them."""

    def __init__(self, start: int):
        self.top = start
        self.hints: dict = {}

    def fresh(self, hint: Callable | None = None) -> int:
        v = self.top
        self.top += 1
        if hint is not None:
            self.hints[v] = hint
        return v

    def read(self, D: Term, idx: Term, W: Term, use: Callable[[Term], Formula]) -> Formula:
        """∃v < 2^W (v is field idx of D ∧ use(v)), hinted with the field value."""
        dv, iv, wv = compile_term(D), compile_term(idx), compile_term(W)

        def hint(env):
            w = wv(env)
            return (dv(env) >> (iv(env) * w)) & ((1 << w) - 1)
        v = self.fresh(hint)
        u = self.fresh()
        same = ForAll(u, Eq(Bit(D, Add(Mul(idx, W), Var(u))), Bit(Var(v), Var(u))), W)
        return Exists(v, And(same, use(Var(v))), _pow2(W))

    def reads(self, D: Term, idxs: Sequence[Term], W: Term, use: Callable) -> Formula:
        """Nested reads of several fields; use receives the value terms."""
        def go(i: int, got: list) -> Formula:
            if i == len(idxs):
                return use(*got)
            return self.read(D, idxs[i], W, lambda v: go(i + 1, got + [v]))
        return go(0, [])


# -- character streams of sequence codes ------------------------------------------

@dataclass(frozen=True)
class Chars:
    """hi/lo bits of forward character q of some sequence code.

    A digit d has hi = 1, lo = d; a comma has hi = 0, lo = 1.
    """
    hi: Callable[[Term], Term]
    lo: Callable[[Term], Term]

    def valid(self, q: Term) -> Formula:
        return Not(And(Eq(self.hi(q), Zero()), Eq(self.lo(q), Zero())))


def direct_chars(g: Term) -> Chars:
    return Chars(lambda q: Bit(g, Succ(_dbl(q))), lambda q: Bit(g, _dbl(q)))


def inner_chars(e: Term, Lt: Term) -> Chars:
    """Characters of the first component t of e, read through e's digits."""
    return Chars(lambda q: Bit(e, _dbl(Monus(Monus(Lt, TWO), _dbl(q)))),
                 lambda q: Bit(e, _dbl(Monus(Monus(Lt, ONE), _dbl(q)))))


def seq_decode(sc: Scope, ch: Chars, L: Term, D: Term, base: int, W: Term,
               rest: Callable[[Term], Formula]) -> Formula:
    """D holds [M, (pos, len, val) * M] from field `base` on, for the L characters.

    The checks pin every field, so D is determined by the character stream.
    rest receives the term for M.
    """
    def f(i: Term) -> Term:
        return Add(num(base), i)

    def entry(r: Term, use: Callable) -> Formula:
        three_r = Mul(num(3), r)
        return sc.reads(D, [f(Add(three_r, num(1))), f(Add(three_r, num(2))), f(Add(three_r, num(3)))],
                        W, use)

    def body(M: Term) -> Formula:
        q, r, u = sc.fresh(), sc.fresh(), sc.fresh()
        Q, R, U = Var(q), Var(r), Var(u)

        def per_entry(pos: Term, ln: Term, val: Term) -> Formula:
            end = Add(pos, ln)
            nxt = sc.read(D, f(Add(Mul(num(3), Succ(R)), num(1))), W,
                          lambda p2: Eq(p2, Succ(end)))
            return big_and([
                le(ONE, ln), le(end, L), Lt(val, _pow2(ln)),
                ForAll(u, And(Eq(ch.hi(Add(pos, U)), ONE),
                              Eq(Bit(val, Monus(Monus(ln, ONE), U)), ch.lo(Add(pos, U)))), ln),
                Implies(Lt(ONE, ln), Eq(ch.lo(pos), ONE)),
                Implies(Lt(Succ(R), M), And(Eq(ch.hi(end), Zero()), nxt)),
                Implies(Eq(Succ(R), M), Eq(end, L)),
            ])
        return big_and([
            le(ONE, M), le(M, L),
            ForAll(q, ch.valid(Q), L),
            sc.read(D, f(num(1)), W, lambda p0: Eq(p0, Zero())),
            ForAll(r, entry(R, per_entry), M),
            rest(M),
        ])
    return sc.read(D, f(Zero()), W, body)


# -- decoding a machine code ---------------------------------------------------------

@dataclass(frozen=True)
class MachineInfo:
    """Terms for the decoded header of a plain machine code."""
    D: Term
    W: Term
    c: Term
    M: Term
    nQ: Term
    g: Term
    start: Term
    acc: Term
    rej: Term
    acc_var: int
    rej_var: int

    @property
    def table_base(self) -> Term:
        return Add(num(2), Mul(num(3), self.M))

    @property
    def k(self) -> Term:
        return Add(self.g, Mul(self.g, self.nQ))

    def halting(self, q: Term) -> Formula:
        return Or(Eq(q, self.acc), Eq(q, self.rej))


def entry_value(sc: Scope, D: Term, W: Term, r: Term, use: Callable) -> Formula:
    """Value of flat-list entry r (fields: Lt, M, then pos/len/val triples)."""
    return sc.read(D, Add(Mul(num(3), r), num(4)), W, use)


def transition(sc: Scope, mi: MachineInfo, q: Term, y: Term, use: Callable) -> Formula:
    """Read (q', y', d) for δ(q, y) from the table part of D."""
    idx = Add(mi.table_base, Mul(num(3), Add(Mul(q, mi.g), y)))
    return sc.reads(mi.D, [idx, Add(idx, ONE), Add(idx, TWO)], mi.W, use)


def _record(sc: Scope, D: Term, W: Term, r: Term, use: Callable) -> Formula:
    first = Add(num(5), Mul(num(5), r))
    idxs = [Add(Mul(num(3), Add(first, num(i))), num(4)) for i in range(5)]
    return sc.reads(D, idxs, W, use)


def _machine_rules(sc: Scope, mi: MachineInfo) -> Formula:
    nQ, g, acc, rej, D, W = mi.nQ, mi.g, mi.acc, mi.rej, mi.D, mi.W
    nrec = Mul(Monus(nQ, TWO), g)
    r, z = sc.fresh(), sc.fresh()
    R = Var(r)

    def only_halting_between(lo_t: Term | None, hi_t: Term) -> Formula:
        zz = sc.fresh()
        Z = Var(zz)
        cond = mi.halting(Z) if lo_t is None else Implies(Lt(lo_t, Z), mi.halting(Z))
        return ForAll(zz, cond, hi_t)

    def per_record(q, s, q2, s2, d) -> Formula:
        def follow(qn, sn, *_):
            return And(Implies(Lt(Succ(s), g), And(Eq(qn, q), Eq(sn, Succ(s)))),
                       Implies(Eq(Succ(s), g), big_and([Eq(sn, Zero()), Lt(q, qn),
                                                         only_halting_between(q, qn)])))
        return big_and([
            Lt(q, nQ), Not(mi.halting(q)), Lt(s, g), Lt(q2, nQ), Lt(s2, g), Lt(d, TWO),
            Implies(Eq(R, Zero()), And(Eq(s, Zero()), only_halting_between(None, q))),
            Implies(Lt(Succ(R), nrec), _record(sc, D, W, Succ(R), follow)),
            Implies(Eq(Succ(R), nrec), And(Eq(Succ(s), g), only_halting_between(q, nQ))),
        ])

    qv, yv = sc.fresh(), sc.fresh()
    Qv, Yv = Var(qv), Var(yv)

    def rank_hint(env):
        q, y = env[qv], env[yv]
        a, b = env[mi.acc_var], env[mi.rej_var]
        return (q - (a < q) - (b < q)) * env_g(env) + y
    env_g = compile_term(g)
    rv = sc.fresh(rank_hint)

    def table_entry(tq, ts, td) -> Formula:
        found = Exists(rv, _record(sc, D, W, Var(rv), lambda q1, s1, q2, s2, d: big_and([
            Eq(q1, Qv), Eq(s1, Yv), Eq(tq, q2), Eq(ts, s2), Eq(td, d)])), nrec)
        return Or(big_and([mi.halting(Qv), Eq(tq, Zero()), Eq(ts, Zero()), Eq(td, Zero())]),
                  And(Not(mi.halting(Qv)), found))

    fields = Add(Add(num(2), Mul(num(3), mi.M)), Mul(num(3), Mul(nQ, g)))
    return big_and([
        Lt(ONE, nQ), le(num(3), g), le(g, num(MAX_ALPHABET)),
        Lt(mi.start, nQ), Lt(acc, nQ), Lt(rej, nQ), Not(Eq(acc, rej)),
        Eq(mi.M, Add(num(5), Mul(num(5), nrec))),
        ForAll(r, _record(sc, D, W, R, per_record), nrec),
        ForAll(qv, ForAll(yv, transition(sc, mi, Qv, Yv, table_entry), g), nQ),
        Lt(D, _pow2(Mul(W, fields))),
    ])


def machine_decode(sc: Scope, e: Term, rest: Callable[[MachineInfo], Formula]) -> Formula:
    """∃c ∃D: e is the code of a plain machine with exponent c, decoded into D."""
    ev = compile_term(e)

    def fields(env):
        got = decode_fields(ev(env))
        return None if got is None else got

    W = Succ(Len(Len(e)))
    c_var = sc.fresh(lambda env: (fields(env) or (None, None))[0])
    d_var = sc.fresh(lambda env: (fields(env) or (None, None))[1])
    le_var = sc.fresh(lambda env: ev(env).bit_length() // 2)
    C, D, Le = Var(c_var), Var(d_var), Var(le_var)
    q = sc.fresh()
    Q = Var(q)
    e_hi = lambda t: Bit(e, Succ(_dbl(t)))
    e_lo = lambda t: Bit(e, _dbl(t))

    def with_lt(Lt_: Term) -> Formula:
        lh_var = sc.fresh(lambda env: env[Lt_.index] // 2)
        Lh = Var(lh_var)
        q2 = sc.fresh()
        Q2 = Var(q2)
        c_chars = Monus(Le, Succ(Lt_))
        outer = big_and([
            le(ONE, Lt_), Lt(Succ(Lt_), Le),
            ForAll(q2, Iff(Eq(Q2, Lt_), Eq(e_hi(Q2), Zero())), Le),
            Implies(Lt(ONE, Lt_), Eq(e_lo(Zero()), ONE)),
            Implies(Lt(ONE, c_chars), Eq(e_lo(Succ(Lt_)), ONE)),
            Lt(C, _pow2(c_chars)),
            ForAll(q2, Implies(Lt(Lt_, Q2), Eq(Bit(C, Monus(Monus(Le, ONE), Q2)), e_lo(Q2))), Le),
        ])

        def with_m(M: Term) -> Formula:
            def header(nQ, g, st, acc, rej):
                mi = MachineInfo(D, W, C, M, nQ, g, st, acc, rej, acc.index, rej.index)
                return And(_machine_rules(sc, mi), rest(mi))
            idxs = [Add(Mul(num(3), num(i)), num(4)) for i in range(5)]
            return sc.reads(D, idxs, W, header)
        inner = Exists(lh_var, And(Eq(_dbl(Lh), Lt_),
                                   seq_decode(sc, inner_chars(e, Lt_), Lh, D, 1, W, with_m)), Succ(Lt_))
        return And(outer, inner)

    body = Exists(le_var, big_and([
        Eq(_dbl(Le), Len(e)),
        ForAll(q, Not(And(Eq(e_hi(Q), Zero()), Eq(e_lo(Q), Zero()))), Le),
        sc.read(D, Zero(), W, with_lt),
    ]), Succ(Len(e)))
    Le_sq = Mul(Len(e), Len(e))
    d_bound = _pow2(Mul(W, Add(Add(Mul(num(3), Le_sq), Mul(num(3), Len(e))), num(2))))
    return Exists(c_var, Exists(d_var, body, d_bound), _pow2(Len(e)))


_FIELDS: OrderedDict = OrderedDict()


def decode_fields(e: int):
    """(c, D) for a plain machine code e, else None.  Independent of the formulas."""
    got = _FIELDS.get(e)
    if got is not None or e in _FIELDS:
        return got
    got = _decode_fields(e)
    _FIELDS[e] = got
    if len(_FIELDS) > 256:
        _FIELDS.popitem(last=False)
    return got


def _decode_fields(e: int):
    d = decode_machine(e)
    if isinstance(d, InvalidCode) or not isinstance(d[0], TMDescription):
        return None
    _, c = d
    t, _ = decode_seq(e)
    xs = decode_seq(t)
    entries, pos = [], 0
    for v in xs:
        n = len(format(v, "b"))
        entries += [pos, n, v]
        pos += n + 1
    nq, g, _start, acc, rej = xs[:5]
    recs = {(xs[i], xs[i + 1]): xs[i + 2:i + 5] for i in range(5, len(xs), 5)}
    table = []
    for q in range(nq):
        for y in range(g):
            table += [0, 0, 0] if q in (acc, rej) else recs[(q, y)]
    fields = [len(format(t, "b")), len(xs)] + entries + table
    W = e.bit_length().bit_length() + 1
    if any(f >> W for f in fields):
        raise AssertionError("a field of a valid machine code does not fit its width")
    D = 0
    for i, f in enumerate(fields):
        D |= f << (i * W)
    return c, D


# -- inputs ----------------------------------------------------------------------

class InputModel:
    """How tape cell p of the input [w] is read from the formula's variables."""
    length: Term

    def char(self, sc: Scope, p: Term, v: Term) -> Formula:
        raise NotImplementedError

    def value(self, env) -> int:
        raise NotImplementedError


class PlainInput(InputModel):
    def __init__(self, w: Term):
        self.w = w
        self.length = Len(w)
        self._ev = compile_term(w)

    def char(self, sc, p, v):
        return Eq(Bit(self.w, Monus(Monus(Len(self.w), ONE), p)), v)

    def value(self, env):
        return self._ev(env)


class TupleInput(InputModel):
    """[w] for w = ⟨t1, ..., tn⟩: cells are the bit pairs of the reversed list.

    Counting characters u from the end of the forward string, the last
    component occupies u < |tn| with digit u equal to bit u of tn; a comma
    follows, then component n-1, and so on.  Cell p is the hi bit of
    character p div 2 when p is even and its lo bit when p is odd.
    """

    def __init__(self, parts: Sequence[Term]):
        self.parts = list(parts)
        self._evs = [compile_term(t) for t in self.parts]
        offsets: list = [None] * len(self.parts)
        acc: Term = Zero()
        for i in range(len(self.parts) - 1, -1, -1):
            offsets[i] = acc
            acc = Succ(Add(acc, Len(self.parts[i])))
        self.offsets = offsets
        self.chars = Monus(acc, ONE)
        self.length = _dbl(self.chars)

    def char(self, sc, p, v):
        pv = compile_term(p)
        u_var = sc.fresh(lambda env: pv(env) // 2)
        h_var = sc.fresh(lambda env: pv(env) % 2)
        U, H = Var(u_var), Var(h_var)
        cases = []
        for i, t in enumerate(self.parts):
            off, n = self.offsets[i], Len(t)
            digit = And(Implies(Eq(H, Zero()), Eq(v, ONE)),
                        Implies(Eq(H, ONE), Eq(v, Bit(t, Monus(U, off)))))
            cases.append(big_and([le(off, U), Lt(U, Add(off, n)), digit]))
            if i > 0:
                cases.append(And(Eq(U, Add(off, n)), Eq(v, H)))
        return Exists(u_var, Exists(h_var, And(Eq(p, Add(_dbl(U), H)), big_or(cases)), TWO),
                      self.chars)

    def value(self, env):
        return encode_seq([ev(env) for ev in self._evs])


# -- the light table -------------------------------------------------------------------

@dataclass
class Witness:
    y: int
    cells: np.ndarray       # (P+1, 2P+1) element per cell
    accepted: bool
    head: tuple             # (column, symbol) of the head in the last row
    span: tuple | None      # first and last non-blank column of the final tape


_BY_Y: OrderedDict = OrderedDict()
_RUNS: OrderedDict = OrderedDict()


def _remember(cache: OrderedDict, key, value, size: int = 32):
    cache[key] = value
    if len(cache) > size:
        cache.popitem(last=False)


def window_witness(e: int, w: int, s: int) -> Witness | None:
    """The light table of the run of plain machine e on [w] for s^c steps."""
    key = (e, w, s)
    got = _RUNS.get(key)
    if got is not None or key in _RUNS:
        return got
    got = _window_witness(e, w, s)
    _remember(_RUNS, key, got)
    if got is not None:
        _remember(_BY_Y, id(got.y), got)
    return got


def _window_witness(e: int, w: int, s: int):
    d = decode_machine(e)
    if isinstance(d, InvalidCode) or not isinstance(d[0], TMDescription):
        return None
    m, c = d
    xs = m.flat()
    nq, g, start, acc, rej = xs[:5]
    P = s ** c
    C = 2 * P + 1
    k = g + g * nq
    if (P + 1) * C * k > WITNESS_CAP:
        raise EvalError(f"light table of {(P + 1) * C * k} bits exceeds the witness cap")
    delta = {(xs[i], xs[i + 1]): xs[i + 2:i + 5] for i in range(5, len(xs), 5)}
    bits = format(w, "b")
    tape = [2] * C
    for p, ch in enumerate(bits[:P + 1]):
        tape[P + p] = int(ch)
    head, q = P, start
    cells = np.empty((P + 1, C), dtype=np.int64)
    for i in range(P + 1):
        row = np.array(tape, dtype=np.int64)
        row[head] = g + g * q + tape[head]
        cells[i] = row
        if i == P or q in (acc, rej):
            continue
        q2, y2, dmove = delta[(q, tape[head])]
        tape[head] = y2
        q = q2
        head += 1 if dmove else -1
    last = cells[P]
    hcol = int(np.nonzero(last >= g)[0][0])
    hq, hy = divmod(int(last[hcol]) - g, g)
    flat = np.zeros(((P + 1) * C, k), dtype=bool)
    flat[np.arange((P + 1) * C), cells.reshape(-1)] = True
    y = int.from_bytes(np.packbits(flat.reshape(-1), bitorder="little").tobytes(), "little")
    syms = [int(v) if v < g else (int(v) - g) % g for v in last]
    syms += [int(ch) for ch in bits[P + 1:]]
    nonblank = [j for j, v in enumerate(syms) if v != 2]
    span = (nonblank[0], nonblank[-1]) if nonblank else None
    return Witness(y, cells, hq == acc, (hcol, hy), span)


def _witness_of(y: int) -> Witness | None:
    wit = _BY_Y.get(id(y))
    return wit if wit is not None and wit.y is y else None


@dataclass
class Tableau:
    """Terms of one light table, for building the per-cell formulas."""
    sc: Scope
    mi: MachineInfo
    inp: InputModel
    s: Term
    Y: Term
    y_var: int

    @property
    def P(self) -> Term:
        return Pow(self.s, self.mi.c)

    @property
    def C(self) -> Term:
        return Succ(_dbl(self.P))

    def light(self, i: Term, j: Term, x: Term) -> Formula:
        idx = Add(Mul(Add(Mul(i, self.C), j), self.mi.k), x)
        return Eq(Bit(self.Y, idx), ONE)

    def split(self, z: Term, use: Callable) -> Formula:
        """z is a head element g + g·q + y; use(q, y)."""
        mi = self.mi
        zv, gv = compile_term(z), compile_term(mi.g)

        def qh(env):
            a, g = zv(env), gv(env)
            return (a - g) // g if a >= g else None

        def yh(env):
            a, g = zv(env), gv(env)
            return (a - g) % g if a >= g else None
        q, y = self.sc.fresh(qh), self.sc.fresh(yh)
        Q, Yy = Var(q), Var(y)
        return Exists(q, Exists(y, And(Eq(z, Add(mi.g, Add(Mul(mi.g, Q), Yy))), use(Q, Yy)), mi.g), mi.nQ)

    def step(self, a: Term, b: Term, d: Term, x: Term) -> Formula:
        """The middle cell becomes x when its neighbourhood is (a, b, d)."""
        mi, sc = self.mi, self.sc
        hd = lambda z: Not(Lt(z, mi.g))
        one_head = big_and([Not(And(hd(a), hd(b))), Not(And(hd(a), hd(d))), Not(And(hd(b), hd(d)))])
        centre = And(hd(b), self.split(b, lambda q, y: Or(
            And(mi.halting(q), Eq(x, b)),
            And(Not(mi.halting(q)), transition(sc, mi, q, y, lambda tq, ts, td: Eq(x, ts))))))

        def mover(z: Term, way: int, arrive: bool) -> Formula:
            def moved(tq, ts, td):
                cond = Eq(td, num(way))
                if arrive:
                    cond = And(cond, Eq(x, Add(mi.g, Add(Mul(mi.g, tq), b))))
                return cond
            return And(hd(z), self.split(z, lambda q, y: And(
                Not(mi.halting(q)), transition(sc, mi, q, y, moved))))
        plain = And(Not(hd(b)), big_or([
            mover(a, 1, True), mover(d, 0, True),
            big_and([Not(mover(a, 1, False)), Not(mover(d, 0, False)), Eq(x, b)]),
        ]))
        return And(one_head, Or(centre, plain))

    def iset(self) -> Formula:
        sc, mi, P = self.sc, self.mi, self.P
        j, x = sc.fresh(), sc.fresh()
        J, X = Var(j), Var(x)

        def input_cell(p: Term, make: Callable[[Term], Formula]) -> Formula:
            pv = compile_term(p)
            ch_hint = lambda env: _input_bit(self.inp, env, pv(env))
            v = sc.fresh(ch_hint)
            return Exists(v, And(self.inp.char(sc, p, Var(v)), make(Var(v))), TWO)
        pos = Monus(J, P)
        init = big_or([
            And(Lt(J, P), Eq(X, TWO)),
            And(Eq(J, P), input_cell(Zero(), lambda v: Eq(X, Add(mi.g, Add(Mul(mi.g, mi.start), v))))),
            big_and([Lt(P, J), Lt(pos, self.inp.length), input_cell(pos, lambda v: Eq(X, v))]),
            big_and([Lt(P, J), Not(Lt(pos, self.inp.length)), Eq(X, TWO)]),
        ])
        return ForAll(j, ForAll(x, Iff(self.light(Zero(), J, X), init), mi.k), self.C)

    def trans(self) -> Formula:
        sc, mi = self.sc, self.mi
        i, j, x = sc.fresh(), sc.fresh(), sc.fresh()
        I, J, X = Var(i), Var(j), Var(x)
        y_var = self.y_var

        def nb(dj: int):
            def hint(env):
                wit = _witness_of(env[y_var])
                if wit is None:
                    return None
                col = env[j] + dj
                if not 0 <= col < wit.cells.shape[1]:
                    return 2
                return int(wit.cells[env[i], col])
            return hint
        a, b, d = sc.fresh(nb(-1)), sc.fresh(nb(0)), sc.fresh(nb(1))
        A, B, Dd = Var(a), Var(b), Var(d)
        eta0 = Or(And(Eq(J, Zero()), Eq(A, TWO)), And(Lt(Zero(), J), self.light(I, Monus(J, ONE), A)))
        eta1 = self.light(I, J, B)
        eta2 = Or(And(Eq(Succ(J), self.C), Eq(Dd, TWO)),
                  And(Lt(Succ(J), self.C), self.light(I, Succ(J), Dd)))
        k = mi.k
        rhs = Exists(a, And(eta0, Exists(b, And(eta1, Exists(d, And(eta2, self.step(A, B, Dd, X)), k)), k)), k)
        cell = Iff(self.light(Succ(I), J, X), rhs)
        return ForAll(i, ForAll(j, ForAll(x, cell, k), self.C), self.P)

    def accepted(self) -> Formula:
        sc, mi, y_var = self.sc, self.mi, self.y_var

        def col(env):
            wit = _witness_of(env[y_var])
            return None if wit is None else wit.head[0]

        def sym(env):
            wit = _witness_of(env[y_var])
            return None if wit is None else wit.head[1]
        j, y = sc.fresh(col), sc.fresh(sym)
        return Exists(j, Exists(y, self.light(self.P, Var(j), Add(mi.g, Add(Mul(mi.g, mi.acc), Var(y)))),
                                mi.g), self.C)

    def symbol(self, j: Term, v: Term) -> Formula:
        """Final-tape symbol in column j (columns past the window are input or blank)."""
        sc, mi, P = self.sc, self.mi, self.P
        x = sc.fresh(lambda env: _final_element(env, self.y_var, j_ev, env))
        j_ev = compile_term(j)
        X = Var(x)
        in_window = Exists(x, And(self.light(P, j, X), Or(
            And(Lt(X, mi.g), Eq(v, X)),
            And(Not(Lt(X, mi.g)), self.split(X, lambda q, y: Eq(v, y))))), mi.k)
        pos = Monus(j, P)
        outside = Or(And(Lt(pos, self.inp.length), self.inp.char(sc, pos, v)),
                     And(Not(Lt(pos, self.inp.length)), Eq(v, TWO)))
        return Or(And(Lt(j, self.C), in_window), And(Not(Lt(j, self.C)), outside))

    def output_is(self, b: Term) -> Formula:
        """The blank-trimmed final tape is a non-empty bit string with value b."""
        sc, y_var = self.sc, self.y_var

        def span(idx):
            def hint(env):
                wit = _witness_of(env[y_var])
                return None if wit is None or wit.span is None else wit.span[idx]
            return hint
        f, l, j, u = sc.fresh(span(0)), sc.fresh(span(1)), sc.fresh(), sc.fresh()
        F, L, J, U = Var(f), Var(l), Var(j), Var(u)
        width = Add(self.C, self.inp.length)
        bl = lambda t: self.symbol(t, TWO)
        dv = sc.fresh()
        digits = ForAll(u, Exists(dv, And(self.symbol(Add(F, U), Var(dv)),
                                          Eq(Bit(b, Monus(Monus(L, F), U)), Var(dv))), TWO),
                        Succ(Monus(L, F)))
        return Exists(f, Exists(l, big_and([
            le(F, L),
            ForAll(j, Implies(Or(Lt(J, F), Lt(L, J)), bl(J)), width),
            digits,
            Lt(b, _pow2(Succ(Monus(L, F)))),
        ]), width), width)

    def bound(self) -> Term:
        return _pow2(Mul(Mul(Succ(self.P), self.C), self.mi.k))


def _input_bit(inp: InputModel, env, p: int):
    bits = format(inp.value(env), "b")
    return int(bits[p]) if 0 <= p < len(bits) else None


def _final_element(env, y_var: int, j_ev, _):
    wit = _witness_of(env[y_var])
    if wit is None:
        return None
    j = j_ev(env)
    return int(wit.cells[-1, j]) if 0 <= j < wit.cells.shape[1] else None


def _tableau_formula(sc: Scope, e: Term, inp: InputModel, s: Term, final: Callable) -> Formula:
    ev, sv = compile_term(e), compile_term(s)

    def rest(mi: MachineInfo) -> Formula:
        def y_hint(env):
            wit = window_witness(ev(env), inp.value(env), sv(env))
            return None if wit is None else wit.y
        y_var = sc.fresh(y_hint)
        tab = Tableau(sc, mi, inp, s, Var(y_var), y_var)
        body = big_and([tab.iset(), tab.trans(), tab.accepted(), final(tab)])
        return ExistsUnique(y_var, body, tab.bound())
    return machine_decode(sc, e, rest)


def acc_formula(sc: Scope, e: Term, inp: InputModel, s: Term) -> Formula:
    """PTM-Acc: the plain machine e accepts the input within s^c steps."""
    return _tableau_formula(sc, e, inp, s, lambda tab: Eq(Zero(), Zero()))


def out_formula(sc: Scope, e: Term, inp: InputModel, s: Term, b: Term) -> Formula:
    """PTM-Out: e accepts the input within s^c steps leaving [b] on the tape."""
    return _tableau_formula(sc, e, inp, s, lambda tab: tab.output_is(b))
