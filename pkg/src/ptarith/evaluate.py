"""Standard-model evaluation of bounded formulas.

Formulas are compiled to closures over a mutable environment.  Every
quantifier instantiation costs one unit of fuel and every term node visited
costs one unit.  Quantifiers must be bounded, either explicitly or by a guard
``x < t`` in the position produced by desugaring, unless a witness hint is
supplied for an existential.

Hinted existentials are witness-guided: only the hinted value is examined.
A hint may be a natural or a callable taking the current environment, which
lets Skolem functions supply witnesses for quantifiers nested under loops.
"""
from __future__ import annotations

from typing import Callable, Mapping

from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, Iff, Implies,
    Len, Lt, Monus, Mul, Not, Numeral, Or, Pow, Succ, Term, Var, Zero,
    free_vars, term_children, term_vars,
)

DEFAULT_FUEL = 10 ** 7
POW_BIT_CAP = 1 << 26


class EvalError(Exception):
    pass


class UnboundedQuantifier(EvalError):
    pass


class FuelExhausted(EvalError):
    pass


class Fuel:
    __slots__ = ("left",)

    def __init__(self, amount: int):
        self.left = amount

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise FuelExhausted("fuel exhausted")


_MISSING = object()


def _term_size(t: Term) -> int:
    return 1 + sum(_term_size(k) for k in term_children(t))


def _len(v: int) -> int:
    return v.bit_length() or 1


def _bit(v: int, i: int) -> int:
    return (v >> i) & 1 if i < v.bit_length() else 0


def _pow(a: int, b: int) -> int:
    if a > 1 and b * a.bit_length() > POW_BIT_CAP:
        raise EvalError("exponentiation result too large to evaluate")
    return a ** b


# guard detection --------------------------------------------------------------

def _conjuncts(f: Formula) -> list:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    if isinstance(f, Not) and isinstance(f.arg, Implies) and isinstance(f.arg.right, Not):
        return _conjuncts(f.arg.left) + _conjuncts(f.arg.right.arg)
    return [f]


def _guard_in(v: int, parts: list):
    for p in parts:
        if isinstance(p, Lt) and p.left == Var(v) and v not in term_vars(p.right):
            return p.right
    return None


def _forall_guard(v: int, body: Formula):
    """Upper bound t such that the body is vacuous for v >= t."""
    while isinstance(body, Not) and isinstance(body.arg, Not):
        body = body.arg.arg
    if isinstance(body, Implies):
        g = _guard_in(v, _conjuncts(body.left))
        if g is not None:
            return g
        return _forall_guard(v, body.right)
    if isinstance(body, ForAll) and body.var != v and body.bound is None:
        g = _forall_guard(v, body.body)
        if g is not None and body.var not in term_vars(g):
            return g
    return None


def _exists_guard(v: int, body: Formula):
    return _guard_in(v, _conjuncts(body))


# compiler ---------------------------------------------------------------------

class _Compiler:
    def __init__(self, fuel: Fuel, hints: Mapping, check_unique: bool, memo: bool):
        self.fuel = fuel
        self.hints = dict(hints or {})
        self.check_unique = check_unique
        self.memo = memo
        self.cache: dict = {}

    def term(self, t: Term) -> Callable:
        if isinstance(t, Zero):
            return lambda env: 0
        if isinstance(t, Numeral):
            n = t.value
            return lambda env: n
        if isinstance(t, Var):
            i = t.index

            def var(env):
                try:
                    return env[i]
                except KeyError:
                    raise EvalError(f"free variable x{i} has no value") from None
            return var
        if isinstance(t, Succ):
            a = self.term(t.arg)
            return lambda env: a(env) + 1
        if isinstance(t, Len):
            a = self.term(t.arg)
            return lambda env: _len(a(env))
        kids = [self.term(k) for k in term_children(t)]
        a, b = kids
        if isinstance(t, Add):
            return lambda env: a(env) + b(env)
        if isinstance(t, Mul):
            return lambda env: a(env) * b(env)
        if isinstance(t, Monus):
            return lambda env: max(a(env) - b(env), 0)
        if isinstance(t, Bit):
            return lambda env: _bit(a(env), b(env))
        if isinstance(t, Pow):
            return lambda env: _pow(a(env), b(env))
        raise EvalError(f"not a term: {t!r}")

    def formula(self, f: Formula) -> Callable:
        got = self.cache.get(f)
        if got is None:
            got = self._formula(f)
            self.cache[f] = got
        return got

    def _formula(self, f: Formula) -> Callable:
        fuel = self.fuel
        if isinstance(f, (Eq, Lt)):
            cost = _term_size(f.left) + _term_size(f.right)
            a, b = self.term(f.left), self.term(f.right)
            if isinstance(f, Eq):
                def eq(env):
                    fuel.left -= cost
                    if fuel.left < 0:
                        raise FuelExhausted("fuel exhausted")
                    return a(env) == b(env)
                return eq

            def lt(env):
                fuel.left -= cost
                if fuel.left < 0:
                    raise FuelExhausted("fuel exhausted")
                return a(env) < b(env)
            return lt
        if isinstance(f, Not):
            inner = f.arg
            if isinstance(inner, ForAll) and inner.bound is None and isinstance(inner.body, Not):
                # desugared ∃
                return self._wrap(f, self._exists(inner.var, inner.body.arg, None, False))
            g = self.formula(inner)
            return lambda env: not g(env)
        if isinstance(f, And):
            p, q = self.formula(f.left), self.formula(f.right)
            return lambda env: p(env) and q(env)
        if isinstance(f, Or):
            p, q = self.formula(f.left), self.formula(f.right)
            return lambda env: p(env) or q(env)
        if isinstance(f, Implies):
            p, q = self.formula(f.left), self.formula(f.right)
            return lambda env: (not p(env)) or q(env)
        if isinstance(f, Iff):
            p, q = self.formula(f.left), self.formula(f.right)
            return lambda env: p(env) == q(env)
        if isinstance(f, ForAll):
            return self._wrap(f, self._forall(f))
        if isinstance(f, Exists):
            body = f.body
            return self._wrap(f, self._exists(f.var, body, f.bound, f.ge))
        if isinstance(f, ExistsUnique):
            return self._wrap(f, self._unique(f))
        raise EvalError(f"not a formula: {f!r}")

    def _wrap(self, f: Formula, run: Callable) -> Callable:
        if not self.memo:
            return run
        keys = tuple(sorted(free_vars(f)))
        table: dict = {}

        def memoized(env):
            k = tuple(env[v] for v in keys)
            r = table.get(k)
            if r is None:
                r = run(env)
                table[k] = r
            return r
        return memoized

    def _bound(self, v: int, bound, ge: bool, guard):
        if bound is None:
            bound, ge = guard, False
        if bound is None or ge:
            return None
        return self.term(bound)

    def _forall(self, f: ForAll) -> Callable:
        v, fuel = f.var, self.fuel
        body = self.formula(f.body)
        bound = self._bound(v, f.bound, f.ge, None if f.bound is not None else _forall_guard(v, f.body))
        if bound is None:
            def unbounded(env):
                raise UnboundedQuantifier(f"unbounded universal quantifier over x{v}")
            return unbounded

        def run(env):
            top = bound(env)
            saved = env.get(v, _MISSING)
            try:
                for val in range(top):
                    fuel.left -= 1
                    if fuel.left < 0:
                        raise FuelExhausted("fuel exhausted")
                    env[v] = val
                    if not body(env):
                        return False
                return True
            finally:
                _restore(env, v, saved)
        return run

    def _exists(self, v: int, body_f: Formula, bound_t, ge: bool) -> Callable:
        fuel = self.fuel
        body = self.formula(body_f)
        guard = None if bound_t is not None else _exists_guard(v, body_f)
        lower = self.term(bound_t) if (bound_t is not None and ge) else None
        bound = self._bound(v, bound_t, ge, guard)
        hint = self.hints.get(v)
        if hint is not None:
            get = hint if callable(hint) else (lambda env, h=hint: h)

            def hinted(env):
                val = get(env)
                if val is None:
                    return False
                fuel.spend(1)
                if bound is not None and not val < bound(env):
                    return False
                if lower is not None and val < lower(env):
                    return False
                saved = env.get(v, _MISSING)
                env[v] = val
                try:
                    return body(env)
                finally:
                    _restore(env, v, saved)
            return hinted
        if bound is None:
            def unbounded(env):
                raise UnboundedQuantifier(f"unbounded existential quantifier over x{v} without a hint")
            return unbounded

        def run(env):
            top = bound(env)
            saved = env.get(v, _MISSING)
            try:
                for val in range(top):
                    fuel.left -= 1
                    if fuel.left < 0:
                        raise FuelExhausted("fuel exhausted")
                    env[v] = val
                    if body(env):
                        return True
                return False
            finally:
                _restore(env, v, saved)
        return run

    def _unique(self, f: ExistsUnique) -> Callable:
        v, fuel = f.var, self.fuel
        body = self.formula(f.body)
        bound = self._bound(v, f.bound, False, None if f.bound is not None else _exists_guard(v, f.body))
        hint = self.hints.get(v)
        check = self.check_unique

        def scan(env, top, skip=None, stop_at=2):
            found = 0
            for val in range(top):
                if val == skip:
                    continue
                fuel.left -= 1
                if fuel.left < 0:
                    raise FuelExhausted("fuel exhausted")
                env[v] = val
                if body(env):
                    found += 1
                    if found >= stop_at:
                        break
            return found

        if hint is not None:
            get = hint if callable(hint) else (lambda env, h=hint: h)

            def hinted(env):
                val = get(env)
                if val is None:
                    return False
                fuel.spend(1)
                top = bound(env) if bound is not None else None
                if top is not None and not val < top:
                    return False
                saved = env.get(v, _MISSING)
                try:
                    env[v] = val
                    if not body(env):
                        return False
                    if not check:
                        return True
                    if top is None:
                        raise UnboundedQuantifier(f"uniqueness scan over unbounded x{v}")
                    return scan(env, top, skip=val, stop_at=1) == 0
                finally:
                    _restore(env, v, saved)
            return hinted
        if bound is None:
            def unbounded(env):
                raise UnboundedQuantifier(f"unbounded unique-existential over x{v} without a hint")
            return unbounded

        def run(env):
            saved = env.get(v, _MISSING)
            try:
                return scan(env, bound(env)) == 1
            finally:
                _restore(env, v, saved)
        return run


def _restore(env: dict, v: int, saved):
    if saved is _MISSING:
        env.pop(v, None)
    else:
        env[v] = saved


def compile_formula(f: Formula, fuel: Fuel, hints: Mapping | None = None,
                    check_unique: bool = False, memo: bool = False) -> Callable:
    return _Compiler(fuel, hints or {}, check_unique, memo).formula(f)


def eval_bounded(f: Formula, env: Mapping | None = None, fuel: int = DEFAULT_FUEL,
                 hints: Mapping | None = None, check_unique: bool = False,
                 memo: bool = False) -> bool:
    """Truth of f in the standard model under env (variable index -> natural)."""
    tank = Fuel(fuel)
    run = compile_formula(f, tank, hints, check_unique, memo)
    return bool(run(dict(env or {})))


def eval_term(t: Term, env: Mapping | None = None) -> int:
    return _Compiler(Fuel(DEFAULT_FUEL), {}, False, False).term(t)(dict(env or {}))


def compile_term(t: Term) -> Callable:
    """Closure computing a term's value from an environment (no fuel)."""
    return _Compiler(Fuel(1 << 62), {}, False, False).term(t)
