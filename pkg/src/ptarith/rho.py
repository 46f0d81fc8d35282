"""The formula ρ_R(x) of a machine: the tableau written in arithmetic.

    ρ_R(x) ≡ ∃n < S|x| (n = |x| ∧ ∃!y < 2^(n^2c · k) (ISET(x,y) ∧ TRANS(y) ∧ EVAL(y)))

y packs the light table: bit i·T·k + j·k + s of y is light[i, j, s] with
T = n^c.  ISET transcribes [x] into row 0 (most significant bit at cell 0),
TRANS ties every later light to its three predecessors through the case
table Step(a, b, c, s) ⇔ (a, b, c) ∈ A_s, and EVAL reads the accept lights
at the output cell of the last row.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, FormulaFamily, Iff,
    Implies, Len, Lt, Monus, Mul, Not, Or, Pow, Succ, Term, Var, Zero,
    big_and, big_or, num,
)
from .tableau import Elements, _check_alphabet, lights, pack_lights, tableau
from .tm import BASE_ALPHABET, TMDescription, bits_of

X, N, Y, I, J, S, A, B, C = range(1, 10)
ONE = Succ(Zero())


def _bit_on(y: Term, index: Term) -> Formula:
    return Eq(Bit(y, index), ONE)


def _T(c: int) -> Term:
    return Pow(Var(N), num(c))


def _index(i: Term, j: Term, s: Term, T: Term, k: int) -> Term:
    return Add(Add(Mul(Mul(i, T), num(k)), Mul(j, num(k))), s)


def build_iset(m: TMDescription, c: int) -> Formula:
    """Row 0: the head over the first input bit, then the bits, then blanks."""
    el = Elements(m)
    k, T = el.k, _T(c)
    n, x = Var(N), Var(X)
    j, s = Var(J), Var(S)
    top = Monus(n, ONE)
    init = big_or([
        And(Eq(j, Zero()), Eq(s, Add(num(el.head(m.start, 0)), Bit(x, top)))),
        big_and([Lt(Zero(), j), Lt(j, n), Eq(s, Bit(x, Monus(top, j)))]),
        And(Not(Lt(j, n)), Eq(s, num(2))),
    ])
    return ForAll(J, ForAll(S, Iff(_bit_on(Var(Y), Add(Mul(j, num(k)), s)), init), num(k)), T)


def _heads(el: Elements, m: TMDescription, halting: bool | None = None, move: str | None = None):
    for q in m.states:
        if halting is not None and (q in m.halting) != halting:
            continue
        for b in range(3):
            h = el.head(q, b)
            if move is None:
                yield q, b, h
                continue
            if q in m.halting:
                continue
            if m.delta[(q, BASE_ALPHABET[b])][2] == move:
                yield q, b, h


def build_step(m: TMDescription, left_absent: Formula, right_absent: Formula) -> Formula:
    """Step(a, b, c, s): the middle cell becomes s.  Equivalent to (a, b, c) ∈ A_s."""
    el = Elements(m)
    a, b, c, s = Var(A), Var(B), Var(C), Var(S)
    three = num(3)
    a_head = And(Not(left_absent), Not(Lt(a, three)))
    b_head = Not(Lt(b, three))
    c_head = And(Not(right_absent), Not(Lt(c, three)))
    one_head = big_and([Not(And(a_head, b_head)), Not(And(a_head, c_head)), Not(And(b_head, c_head))])

    centre = []
    for q, x, h in _heads(el, m, halting=False):
        _, y, _ = m.delta[(q, BASE_ALPHABET[x])]
        centre.append(And(Eq(b, num(h)), Eq(s, num(BASE_ALPHABET.index(y)))))
    for q, x, h in _heads(el, m, halting=True):
        centre.append(And(Eq(b, num(h)), Eq(s, b)))

    from_left = [(h, el.head(m.delta[(q, BASE_ALPHABET[x])][0], 0))
                 for q, x, h in _heads(el, m, move="R")]
    from_right = [(h, el.head(m.delta[(q, BASE_ALPHABET[x])][0], 0))
                  for q, x, h in _heads(el, m, move="L")]
    enters_left = And(Not(left_absent), big_or([Eq(a, num(h)) for h, _ in from_left]))
    enters_right = And(Not(right_absent), big_or([Eq(c, num(h)) for h, _ in from_right]))
    arrivals = [And(Eq(a, num(h)), Eq(s, Add(num(base), b))) for h, base in from_left]
    arrivals_r = [And(Eq(c, num(h)), Eq(s, Add(num(base), b))) for h, base in from_right]
    plain = And(Lt(b, three), big_or([
        And(Not(left_absent), big_or(arrivals)),
        And(Not(right_absent), big_or(arrivals_r)),
        big_and([Not(enters_left), Not(enters_right), Eq(s, b)]),
    ]))
    return And(one_head, Or(big_or(centre), plain))


def build_eta(m: TMDescription, c: int) -> tuple:
    """(η0, η1, η2): the predecessor lights at (i∸1, j∸1), (i∸1, j), (i∸1, j+1)."""
    k, T = Elements(m).k, _T(c)
    i, j, y = Var(I), Var(J), Var(Y)
    prev = Monus(i, ONE)
    left_absent = Eq(j, Zero())
    right_absent = Eq(Succ(j), T)
    eta0 = Or(And(left_absent, Eq(Var(A), Zero())),
              And(Not(left_absent), _bit_on(y, _index(prev, Monus(j, ONE), Var(A), T, k))))
    eta1 = _bit_on(y, _index(prev, j, Var(B), T, k))
    eta2 = Or(And(right_absent, Eq(Var(C), Zero())),
              And(Not(right_absent), _bit_on(y, _index(prev, Succ(j), Var(C), T, k))))
    return eta0, eta1, eta2, left_absent, right_absent


def build_trans(m: TMDescription, c: int) -> Formula:
    k, T = Elements(m).k, _T(c)
    i, j, s, y = Var(I), Var(J), Var(S), Var(Y)
    eta0, eta1, eta2, left_absent, right_absent = build_eta(m, c)
    step = build_step(m, left_absent, right_absent)
    kk = num(k)
    rhs = Exists(A, And(eta0, Exists(B, And(eta1, Exists(C, And(eta2, step), kk)), kk)), kk)
    cell = Iff(_bit_on(y, _index(i, j, s, T, k)), rhs)
    return ForAll(I, Implies(Lt(Zero(), i), ForAll(J, ForAll(S, cell, kk), T)), T)


def build_eval(m: TMDescription, c: int, output_cell: int = 1) -> Formula:
    el = Elements(m)
    k, T = el.k, _T(c)
    lo = el.head(m.accept, 0)
    s = Var(S)
    last = Monus(T, ONE)
    return Exists(S, big_and([Not(Lt(s, num(lo))), Lt(s, num(lo + 3)),
                              _bit_on(Var(Y), _index(last, num(output_cell), s, T, k))]), num(k))


def build_rho(m: TMDescription, c: int, output_cell: int = 1) -> Formula:
    _check_alphabet(m)
    k = Elements(m).k
    body = big_and([build_iset(m, c), build_trans(m, c), build_eval(m, c, output_cell)])
    bound = Pow(num(2), Mul(Pow(Var(N), num(2 * c)), num(k)))
    inner = ExistsUnique(Y, body, bound)
    return Exists(N, And(Eq(Var(N), Len(Var(X))), inner), Succ(Len(Var(X))))


def run_witness(m: TMDescription, c: int, x: int, output_cell: int = 1) -> int:
    """The packed light table of the run on [x]."""
    bits = bits_of(x)
    return pack_lights(lights(tableau(m, c, len(bits), output_cell=output_cell), bits))


@dataclass(frozen=True)
class _Table:
    T: int
    k: int
    cells: np.ndarray       # element index lit in each (i, j), or -1


@lru_cache(maxsize=64)
def _unpack(y: int, T: int, k: int) -> _Table:
    nbytes = (T * T * k + 7) // 8
    raw = np.frombuffer(y.to_bytes(max(nbytes, (y.bit_length() + 7) // 8), "little"), dtype=np.uint8)
    flat = np.unpackbits(raw, bitorder="little")[:T * T * k].astype(bool)
    flat = np.pad(flat, (0, T * T * k - len(flat)))
    table = flat.reshape(T, T, k)
    cells = np.where(table.any(axis=2), table.argmax(axis=2), -1)
    return _Table(T, k, cells)


def rho_hints(m: TMDescription, c: int, x: int, inner: bool = True, output_cell: int = 1) -> dict:
    """Skolem hints: n = |x|, y = the run witness, and the lit predecessors."""
    k = Elements(m).k
    n = len(bits_of(x))
    T = n ** c
    hints = {N: n, Y: lambda env: run_witness(m, c, x, output_cell)}
    if not inner:
        return hints

    def lit(di: int, dj: int):
        def hint(env):
            i, j = env[I] - 1, env[J] + dj
            if not 0 <= j < T:
                return 0
            v = int(_unpack(env[Y], T, k).cells[i, j])
            return v if v >= 0 else None
        return hint
    hints[A] = lit(-1, -1)
    hints[B] = lit(-1, 0)
    hints[C] = lit(-1, 1)
    return hints


def to_pa_formula(m: TMDescription, c: int, output_cell: int = 1) -> FormulaFamily:
    """ρ_R as a family in x1, with witness hints for evaluation."""
    f = build_rho(m, c, output_cell)
    from .tm import encode_machine
    desc = f"rho(e={encode_machine(m, c)}, J={output_cell})"
    return FormulaFamily(f, (X,), "bitlen", desc,
                         hint_fn=lambda a: rho_hints(m, c, a, output_cell=output_cell))
