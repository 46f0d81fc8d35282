"""Elimination of the derived symbols Len, Bit, Monus and Pow.

Each occurrence of a derived term D inside an atom A[D] is replaced by a
fresh variable v and a defining formula:  ∃v (Def_D(v) ∧ A[v]).

  Len(a) = v    (a = 0 ∧ v = 1) ∨ (2^(v∸1) ≤ a ∧ a < 2^v)
  Bit(a,i) = v  ∃y<2^i ∃z<Sa  a = y + v·2^i + z·2^(i+1)
  Monus(a,b) = v   b + v = a ∨ (a < b ∧ v = 0)
  Pow(a,b) = v  β-function graph: a witness pair (c, d) whose remainders
                c mod (1 + (i+1)d) list a^0, a^1, ..., a^b

The definitions themselves mention Pow and Monus, which are eliminated in
turn.  The value of v is unique in each case, so the result comes with
Skolem functions for every fresh variable; evaluating the eliminated formula
with those hints is witness-guided evaluation.  The β-function witnesses
have no polynomial bound and are left hint-only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .evaluate import compile_term
from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, Iff, Implies,
    Len, Lt, Monus, Mul, Not, Or, Pow, Succ, Term, Var, Zero, BINARY,
    has_derived, has_derived_term, le, max_var, rebuild_term, term_children,
)

ONE = Succ(Zero())
TWO = Succ(ONE)


@dataclass
class Elimination:
    formula: Formula
    hints: dict = field(default_factory=dict)


def eliminate_derived(f: Formula) -> Formula:
    return eliminate_with_witnesses(f).formula


def eliminate_with_witnesses(f: Formula) -> Elimination:
    if not has_derived(f):
        return Elimination(f, {})
    e = _Eliminator(max_var(f) + 1)
    return Elimination(e.formula(f), e.hints)


def beta_witness(base: int, exp: int) -> tuple:
    """(c, d) with c mod (1 + (i+1)d) = base^i for all i <= exp."""
    values = [base ** i for i in range(exp + 1)]
    d = factorial(exp) * (max(values) + 1)
    c, modulus = 0, 1
    for i, v in enumerate(values):
        m = 1 + (i + 1) * d
        # CRT step: find c' ≡ c (mod modulus), c' ≡ v (mod m)
        t = ((v - c) * pow(modulus, -1, m)) % m
        c += modulus * t
        modulus *= m
    return c, d


class _Eliminator:
    def __init__(self, start: int):
        self.next = start
        self.hints: dict = {}

    def fresh(self) -> int:
        v = self.next
        self.next += 1
        return v

    # formulas
    def formula(self, f: Formula) -> Formula:
        if not has_derived(f):
            return f
        if isinstance(f, (Eq, Lt)):
            return self.atom(f)
        if isinstance(f, Not):
            return Not(self.formula(f.arg))
        if isinstance(f, BINARY):
            return type(f)(self.formula(f.left), self.formula(f.right))
        body = self.formula(f.body)
        bound = f.bound
        if bound is None or not has_derived_term(bound):
            if isinstance(f, ExistsUnique):
                return ExistsUnique(f.var, body, bound)
            return type(f)(f.var, body, bound, f.ge)
        # the bound does not depend on the bound variable: hoist it
        w = self.fresh()
        if isinstance(f, ExistsUnique):
            inner = ExistsUnique(f.var, body, Var(w))
        else:
            inner = type(f)(f.var, body, Var(w), f.ge)
        self.hints[w] = compile_term(bound)
        return Exists(w, self.atom(Eq(Var(w), bound), then=inner))

    def atom(self, a: Formula, then: Formula | None = None) -> Formula:
        """Eliminate derived terms of atom a; conjoin `then` under the new binders."""
        d = _innermost(a)
        if d is None:
            return a if then is None else And(a, then)
        v = self.fresh()
        rest = _replace_atom(a, d, Var(v))
        definition = self.definition(d, v)
        body = And(definition, self.atom(rest, then))
        bound = _value_bound(d)
        return Exists(v, body, bound)

    def definition(self, d: Term, v: int) -> Formula:
        V = Var(v)
        if isinstance(d, Len):
            a = d.arg
            fa = compile_term(a)
            self.hints[v] = lambda env: fa(env).bit_length() or 1
            raw = Or(And(Eq(a, Zero()), Eq(V, ONE)),
                     And(le(Pow(TWO, Monus(V, ONE)), a), Lt(a, Pow(TWO, V))))
            return self.formula(raw)
        if isinstance(d, Monus):
            a, b = d.left, d.right
            fa, fb = compile_term(a), compile_term(b)
            self.hints[v] = lambda env: max(fa(env) - fb(env), 0)
            return Or(Eq(Add(b, V), a), And(Lt(a, b), Eq(V, Zero())))
        if isinstance(d, Bit):
            a, i = d.arg, d.index
            fa, fi = compile_term(a), compile_term(i)
            self.hints[v] = lambda env: (fa(env) >> fi(env)) & 1
            y, z = self.fresh(), self.fresh()
            self.hints[y] = lambda env: fa(env) & ((1 << fi(env)) - 1)
            self.hints[z] = lambda env: fa(env) >> (fi(env) + 1)
            eq = Eq(a, Add(Add(Var(y), Mul(V, Pow(TWO, i))), Mul(Var(z), Pow(TWO, Succ(i)))))
            raw = Exists(y, Exists(z, eq, Succ(a)), Pow(TWO, i))
            return self.formula(raw)
        if isinstance(d, Pow):
            return self.pow_graph(d.base, d.exp, v)
        raise TypeError(f"not a derived term: {d!r}")

    def pow_graph(self, base: Term, exp: Term, v: int) -> Formula:
        fb, fe = compile_term(base), compile_term(exp)
        self.hints[v] = lambda env: fb(env) ** fe(env)
        c, d, i, u, u2 = (self.fresh() for _ in range(5))
        cache: dict = {}

        def witness(env):
            key = (fb(env), fe(env))
            if key not in cache:
                cache[key] = beta_witness(*key)
            return cache[key]

        self.hints[c] = lambda env: witness(env)[0]
        self.hints[d] = lambda env: witness(env)[1]
        self.hints[u] = lambda env: fb(env) ** env[i]
        self.hints[u2] = lambda env: fb(env) ** (env[i] + 1)
        C, D = Var(c), Var(d)
        step = Exists(u, Exists(u2, And(And(self.beta(C, D, Var(i), Var(u)),
                                            self.beta(C, D, Succ(Var(i)), Var(u2))),
                                        Eq(Var(u2), Mul(Var(u), base)))))
        graph = And(And(self.beta(C, D, Zero(), ONE), ForAll(i, step, exp)),
                    self.beta(C, D, exp, Var(v)))
        return Exists(c, Exists(d, graph))

    def beta(self, c: Term, d: Term, i: Term, value: Term) -> Formula:
        """c mod (1 + (i+1)·d) = value."""
        q = self.fresh()
        modulus = Succ(Mul(Succ(i), d))
        fc, fm = compile_term(c), compile_term(modulus)
        self.hints[q] = lambda env: fc(env) // fm(env)
        return Exists(q, And(Eq(c, Add(Mul(Var(q), modulus), value)), Lt(value, modulus)), Succ(c))


def _value_bound(d: Term):
    if isinstance(d, Len):
        return Succ(Succ(d.arg))
    if isinstance(d, Bit):
        return TWO
    if isinstance(d, Monus):
        return Succ(d.left)
    return None


def _innermost(a: Formula):
    for side in (a.left, a.right):
        d = _innermost_term(side)
        if d is not None:
            return d
    return None


def _innermost_term(t: Term):
    for k in term_children(t):
        d = _innermost_term(k)
        if d is not None:
            return d
    if isinstance(t, (Len, Bit, Monus, Pow)):
        return t
    return None


def _replace_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    kids = term_children(t)
    if not kids:
        return t
    return rebuild_term(t, tuple(_replace_term(k, old, new) for k in kids))


def _replace_atom(a: Formula, old: Term, new: Term) -> Formula:
    return type(a)(_replace_term(a.left, old, new), _replace_term(a.right, old, new))
