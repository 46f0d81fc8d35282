"""Syntactic Σ^P_i / Π^P_i classification of bounded formulas.

A quantifier is *sharp* when its bound has polynomial size in the lengths of
the inputs: built from constants, lengths |t|, bits, sums, products and
constant powers of sharp terms, where only variables bound by other sharp
quantifiers count as sharp.  Sharp quantifiers belong to the polynomial-time
matrix.  Every other bounded quantifier (e.g. ∃w < 2^{|x|^c}) is a *long*
quantifier and contributes one alternation level.  Unbounded quantifiers
make the formula fall outside the scheme.

Variables passed as `params` are treated as fixed (as a machine code is in
a formula about inputs x).  A quantifier whose bound mentions only fixed
variables ranges over a constant set, so its variable is fixed too; this is
what makes n^c count as polynomial when c is read from a fixed code.

For each subformula we compute the least i with the formula in Σ_i and the
least j with it in Π_i (level 0 is the matrix class).  Negation swaps them;
∧/∨ take maxima; a long ∃ over a Σ_s ∩ Π_p formula lands in
Σ_{min(max(s,1), p+1)}.
"""
from __future__ import annotations

from dataclasses import dataclass

from .evaluate import _exists_guard, _forall_guard
from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, Iff, Implies,
    Len, Lt, Monus, Mul, Not, Numeral, Or, Pow, Succ, Term, Var, Zero,
    expand_unique, term_vars,
)

INF = 10 ** 6


@dataclass(frozen=True)
class Classification:
    kind: str            # "Core-Δ1-syntactic", "SigmaP", "PiP", "DeltaP" or "Other"
    level: int
    sigma: int           # least i with the formula in Σ^P_i (INF if none)
    pi: int              # least i with the formula in Π^P_i (INF if none)

    def matches_sigma(self, i: int) -> bool:
        return self.sigma <= i

    def matches_pi(self, i: int) -> bool:
        return self.pi <= i

    def __str__(self) -> str:
        if self.kind in ("Other", "Core-Δ1-syntactic"):
            return self.kind
        return f"{self.kind}({self.level})"


def classify(f: Formula, params=()) -> Classification:
    fixed = frozenset(params)
    s, p = _levels(f, fixed, fixed)
    if s >= INF or p >= INF:
        return Classification("Other", 0, s, p)
    if s == 0 and p == 0:
        return Classification("Core-Δ1-syntactic", 0, 0, 0)
    if s < p:
        return Classification("SigmaP", s, s, p)
    if p < s:
        return Classification("PiP", p, s, p)
    return Classification("DeltaP", s, s, p)


def is_sharp(t: Term, small: frozenset, fixed: frozenset = frozenset()) -> bool:
    """Is the value of t polynomial in the lengths of the inputs?"""
    if term_vars(t) <= fixed:
        return True
    if isinstance(t, (Zero, Numeral)):
        return True
    if isinstance(t, Var):
        return t.index in small
    if isinstance(t, (Len, Bit)):
        return True
    if isinstance(t, Succ):
        return is_sharp(t.arg, small, fixed)
    if isinstance(t, (Add, Mul)):
        return is_sharp(t.left, small, fixed) and is_sharp(t.right, small, fixed)
    if isinstance(t, Monus):
        return is_sharp(t.left, small, fixed)
    if isinstance(t, Pow):
        return is_sharp(t.base, small, fixed) and _is_log(t.exp, small, fixed)
    return False


def _is_log(t: Term, small: frozenset, fixed: frozenset) -> bool:
    """Is t bounded by a constant times the log of a sharp quantity?"""
    if term_vars(t) <= fixed:
        return True
    if isinstance(t, Len):
        return is_sharp(t.arg, small, fixed)
    if isinstance(t, Succ):
        return _is_log(t.arg, small, fixed)
    if isinstance(t, Add):
        return _is_log(t.left, small, fixed) and _is_log(t.right, small, fixed)
    if isinstance(t, Mul):
        return (_is_log(t.left, small, fixed) and not term_vars(t.right) - fixed) or \
               (_is_log(t.right, small, fixed) and not term_vars(t.left) - fixed)
    return False


def _exists(s: int, p: int) -> tuple:
    s2 = min(max(s, 1), p + 1)
    return s2, s2 + 1


def _forall(s: int, p: int) -> tuple:
    p2 = min(max(p, 1), s + 1)
    return p2 + 1, p2


def _cap(a: int) -> int:
    return min(a, INF)


def _levels(f: Formula, small: frozenset, fixed: frozenset) -> tuple:
    if isinstance(f, (Eq, Lt)):
        return 0, 0
    if isinstance(f, Not):
        inner = f.arg
        if isinstance(inner, ForAll) and inner.bound is None and isinstance(inner.body, Not):
            return _quant(Exists(inner.var, inner.body.arg), small, fixed)
        s, p = _levels(inner, small, fixed)
        return p, s
    if isinstance(f, (And, Or)):
        s1, p1 = _levels(f.left, small, fixed)
        s2, p2 = _levels(f.right, small, fixed)
        return max(s1, s2), max(p1, p2)
    if isinstance(f, Implies):
        s1, p1 = _levels(f.left, small, fixed)
        s2, p2 = _levels(f.right, small, fixed)
        return max(p1, s2), max(s1, p2)
    if isinstance(f, Iff):
        s1, p1 = _levels(f.left, small, fixed)
        s2, p2 = _levels(f.right, small, fixed)
        m = max(s1, p1, s2, p2)
        return m, m
    return _quant(f, small, fixed)


def _quant(f: Formula, small: frozenset, fixed: frozenset) -> tuple:
    bound = f.bound
    ge = getattr(f, "ge", False)
    if bound is None:
        if isinstance(f, ForAll):
            bound = _forall_guard(f.var, f.body)
        else:
            bound = _exists_guard(f.var, f.body)
    if bound is None or ge:
        return INF, INF
    const = term_vars(bound) <= fixed
    sharp = const or is_sharp(bound, small, fixed)
    inner_small = small | {f.var} if sharp else small - {f.var}
    inner_fixed = fixed | {f.var} if const else fixed - {f.var}
    if isinstance(f, ExistsUnique):
        if sharp:
            return _levels(f.body, inner_small, inner_fixed)
        return _levels(expand_unique(f), small, fixed)
    s, p = _levels(f.body, inner_small, inner_fixed)
    if sharp:
        return s, p
    if s >= INF or p >= INF:
        return INF, INF
    return _exists(s, p) if isinstance(f, Exists) else _forall(s, p)
