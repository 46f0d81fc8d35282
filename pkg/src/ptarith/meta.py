"""Meta-formula generators: SAT, CA/CR/CD, DecSAT, the separation sentence and Pr_T.

All generators return FormulaFamily objects whose free variables are the
machine code(s) and the family argument; witness hints are attached so that
instances evaluate quickly.  Machine-code variables are placed above every
variable of the wrapped family, and bound variables above those.
"""
from __future__ import annotations

from functools import lru_cache

from .evaluate import compile_term
from .formula import (
    Add, And, Bit, Eq, Exists, ForAll, Formula, FormulaError, FormulaFamily, Len,
    Lt, Monus, Mul, Not, Or, Pow, Succ, Term, Var, Zero, big_and, le, max_var, num,
)
from .godel import decode_seq, encode_seq
from .sat import satisfying_assignment
from .tm import universal_ptm
from .universal import (
    ONE, TWO, Scope, TupleInput, _dbl, _pow2, acc_formula, direct_chars,
    out_formula, seq_decode,
)

MODE_PROVE, MODE_DECIDE = 0, 1


# -- the SAT family -------------------------------------------------------------

def _sat_fields(x: int):
    xs = decode_seq(x)
    if xs is None:
        return None
    fields, pos = [len(xs)], 0
    for v in xs:
        n = len(format(v, "b"))
        fields += [pos, n, v]
        pos += n + 1
    W = x.bit_length().bit_length() + 2
    if any(f >> W for f in fields):
        return None
    D = 0
    for i, f in enumerate(fields):
        D |= f << (i * W)
    return D


def build_sat(x_var: int = 1, start: int = 2) -> tuple:
    """SAT(x): x codes a satisfiable 3-CNF.  Returns (formula, scope)."""
    sc = Scope(start)
    x = Var(x_var)
    xv = compile_term(x)
    W = Succ(Succ(Len(Len(x))))
    lx_var = sc.fresh(lambda env: xv(env).bit_length() // 2)
    d_var = sc.fresh(lambda env: _sat_fields(xv(env)))
    Lx, D = Var(lx_var), Var(d_var)

    def rest(M: Term) -> Formula:
        m_var = sc.fresh(lambda env: (env[M.index] - 1) // 3)
        m = Var(m_var)

        def lit(r: Term, use) -> Formula:
            return sc.read(D, Add(Mul(num(3), r), num(3)), W, use)

        def with_nv(nv: Term) -> Formula:
            r = sc.fresh()
            R = Var(r)
            a_var = sc.fresh(lambda env: satisfying_assignment(xv(env)))
            A = Var(a_var)
            cl, l = sc.fresh(), sc.fresh(lambda env: _true_literal(xv(env), env[a_var], env[cl]))
            CL, L = Var(cl), Var(l)

            def satisfied(z: Term) -> Formula:
                zv = compile_term(z)
                h = sc.fresh(lambda env: zv(env) % 2)
                v = sc.fresh(lambda env: zv(env) // 2)
                return Exists(v, Exists(h, And(Eq(z, Add(_dbl(Var(v)), Var(h))),
                                               Eq(Bit(A, Monus(Var(v), ONE)), Monus(ONE, Var(h)))),
                                        TWO), z)
            clause = Exists(l, lit(Add(Mul(num(3), CL), Succ(L)), satisfied), num(3))
            return big_and([
                le(nv, Monus(M, ONE)),
                ForAll(r, lit(Succ(R), lambda z: And(le(TWO, z), le(z, Succ(_dbl(nv))))), Monus(M, ONE)),
                Exists(a_var, ForAll(cl, clause, m), _pow2(nv)),
            ])
        return big_and([
            Exists(m_var, And(Eq(M, Succ(Mul(num(3), m))), lit(Zero(), with_nv)), M),
            Lt(D, _pow2(Mul(W, Succ(Mul(num(3), M))))),
        ])

    decode = seq_decode(sc, direct_chars(x), Lx, D, 0, W, rest)
    d_bound = _pow2(Mul(W, Succ(Mul(num(3), Len(x)))))
    f = Exists(lx_var, And(Eq(_dbl(Lx), Len(x)), Exists(d_var, decode, d_bound)), Succ(Len(x)))
    return f, sc


def _true_literal(x: int, a: int, clause: int):
    """Index in 0..2 of the first literal of `clause` made true by assignment a."""
    xs = decode_seq(x)
    if xs is None or a is None:
        return None
    for i, z in enumerate(xs[1 + 3 * clause: 4 + 3 * clause]):
        v, neg = z // 2, z % 2
        if (a >> (v - 1) & 1) != neg:
            return i
    return None


@lru_cache(maxsize=1)
def sat_family() -> FormulaFamily:
    f, sc = build_sat()
    hints = sc.hints
    return FormulaFamily(f, (1,), "bitlen", "SAT", hint_fn=lambda x: hints)


# -- correct acceptance and rejection ------------------------------------------------

def _size_term(family: FormulaFamily, a: Term) -> Term:
    if family.size_fn != "bitlen":
        raise FormulaError(f"size function {family.size_fn!r} has no term form; only bitlen does")
    return Len(a)


def _setup(family: FormulaFamily):
    if len(family.vars) != 1:
        raise FormulaError("decision formulas take single-argument families")
    top = max(max_var(family.formula), *family.vars)
    return family.vars[0], top + 1


def _acc(sc: Scope, e: Term, parts: list, s: Term) -> Formula:
    return acc_formula(sc, e, TupleInput(parts), s)


def _wrap(family: FormulaFamily, f: Formula, e_var: int, sc: Scope, name: str,
          extra_vars: tuple = ()) -> FormulaFamily:
    a_var = family.vars[0]
    own = sc.hints

    def hint_fn(*args):
        hints = dict(family.hints(args[-1]))
        hints.update(own)
        return hints
    desc = f"{name}[{family.describe()}]"
    return FormulaFamily(f, (e_var, *extra_vars, a_var), family.size_fn, desc, hint_fn=hint_fn)


def _decision_parts(family: FormulaFamily, verifier: int | None):
    a_var, e_var = _setup(family)
    sc = Scope(e_var + 1)
    a, e = Var(a_var), Var(e_var)
    F = num(family.code)
    s = _size_term(family, a)
    acc = _acc(sc, e, [num(MODE_DECIDE), F, a], s)
    if verifier is None:
        truth = family.formula
    else:
        truth = _acc(sc, num(verifier), [F, a], s)
    return acc, truth, sc, e_var


def ca_formula(family: FormulaFamily, verifier: int | None = None) -> FormulaFamily:
    """CA: e accepts (d, #Φ, a) within Size(a)^c steps and φ(a) holds (or v accepts)."""
    acc, truth, sc, e_var = _decision_parts(family, verifier)
    return _wrap(family, And(acc, truth), e_var, sc, "CA" if verifier is None else f"CA_v{verifier}")


def cr_formula(family: FormulaFamily, verifier: int | None = None) -> FormulaFamily:
    acc, truth, sc, e_var = _decision_parts(family, verifier)
    return _wrap(family, And(Not(acc), Not(truth)), e_var, sc, "CR" if verifier is None else f"CR_v{verifier}")


def cd_formula(family: FormulaFamily, verifier: int | None = None) -> FormulaFamily:
    acc, truth, sc, e_var = _decision_parts(family, verifier)
    f = Or(And(acc, truth), And(Not(acc), Not(truth)))
    return _wrap(family, f, e_var, sc, "CD" if verifier is None else f"CD_v{verifier}")


@lru_cache(maxsize=1)
def decsat_formula() -> FormulaFamily:
    """DecSAT(e, x) = CD over the SAT family; free variables (e, x)."""
    fam = cd_formula(sat_family())
    return FormulaFamily(fam.formula, fam.vars, fam.size_fn, "DecSAT", hint_fn=fam.hint_fn)


def pnp_sentence() -> Formula:
    """∀e ∀n ∃x ≥ n ¬DecSAT(e, x): no machine decides SAT correctly on all large inputs."""
    fam = decsat_formula()
    e_var, x_var = fam.vars
    n_var = max_var(fam.formula) + 1
    return ForAll(e_var, ForAll(n_var, Exists(x_var, Not(fam.formula), Var(n_var), ge=True)))


# -- provability --------------------------------------------------------------------

def exponent_of(sc: Scope, e: Term, use) -> Formula:
    """∃c < 2^|e| (c is the second component of the pair code e ∧ use(c)).

    Only the character structure of e is inspected: e has even length, one
    comma (at forward character p) and the characters after it spell c.
    """
    ev = compile_term(e)

    def pair(env):
        xs = decode_seq(ev(env))
        return xs if xs is not None and len(xs) == 2 else None
    c_var = sc.fresh(lambda env: (pair(env) or (None, None))[1])
    le_var = sc.fresh(lambda env: ev(env).bit_length() // 2)
    p_var = sc.fresh(lambda env: len(format(pair(env)[0], "b")) if pair(env) else None)
    q = sc.fresh()
    C, Le, P, Q = Var(c_var), Var(le_var), Var(p_var), Var(q)
    hi = lambda t: Bit(e, Succ(_dbl(t)))
    lo = lambda t: Bit(e, _dbl(t))
    body = big_and([
        Eq(_dbl(Le), Len(e)),
        le(ONE, P), Lt(Succ(P), Le),
        ForAll(q, Or(And(Eq(Q, P), Eq(hi(Q), Zero())), And(Not(Eq(Q, P)), Eq(hi(Q), ONE))), Le),
        Or(Eq(P, ONE), Eq(lo(Zero()), ONE)),
        Or(Eq(Succ(Succ(P)), Le), Eq(lo(Succ(P)), ONE)),
        Lt(C, _pow2(Monus(Le, Succ(P)))),
        ForAll(q, Or(Not(Lt(P, Q)), Eq(Bit(C, Monus(Monus(Le, ONE), Q)), lo(Q))), Le),
        use(C),
    ])
    return Exists(c_var, Exists(le_var, Exists(p_var, body, Le), Succ(Len(e))), _pow2(Len(e)))


def pr_formula(checker: int, family: FormulaFamily) -> FormulaFamily:
    """Pr_T: e outputs some b on (p, #Φ, a) that the checker accepts on (#Φ, a, b).

    `checker` is the machine code v_T of the theory's proof checker.  The
    output bound is 2^(2·Size(a)^c + 1 + |[(p, #Φ, a)]|), wide enough for the
    whole final tape of the run.
    """
    a_var, e_var = _setup(family)
    sc = Scope(e_var + 1)
    a, e = Var(a_var), Var(e_var)
    F = num(family.code)
    s = _size_term(family, a)
    inp = TupleInput([num(MODE_PROVE), F, a])
    b_var = sc.fresh(lambda env: _prover_output(env, e_var, a_var, family))
    B = Var(b_var)

    def with_c(c: Term) -> Formula:
        width = Add(Succ(_dbl(Pow(s, c))), inp.length)
        out = out_formula(sc, e, inp, s, B)
        chk = _acc(sc, num(checker), [F, a, B], s)
        return Exists(b_var, And(out, chk), _pow2(width))
    f = exponent_of(sc, e, with_c)
    return _wrap(family, f, e_var, sc, f"Pr[{checker}]")


def _prover_output(env, e_var: int, a_var: int, family: FormulaFamily):
    e, a = env[e_var], env[a_var]
    v = universal_ptm(e, encode_seq([MODE_PROVE, family.code, a]), size=len(format(a, "b")))
    return v.output_value
