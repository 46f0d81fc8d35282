"""PA terms and formulas, substitution, desugaring and Gödel numbering.

Core syntax is 0, S, +, ·, variables, =, <, ¬, → and ∀.  Everything else
(∧, ∨, ↔, ∃, ∃!, bounded quantifiers) is sugar over the core, and the
derived function symbols Len, Bit, Monus and Pow must be eliminated before
a formula can be Gödel-numbered.  Numeral(n) is a compact node standing for
the binary-form numeral n0 + n1·SS0 + n2·(SS0·SS0) + ...; it is expanded
lazily when symbols are produced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Callable, Iterable, Iterator, Sequence, Union

from .godel import DEFAULT_TABLE, SymbolTable, decode_expression, encode_seq


class FormulaError(ValueError):
    pass


# -- terms -----------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise FormulaError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Numeral:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise FormulaError("numerals are natural numbers")


@dataclass(frozen=True)
class Len:
    arg: "Term"


@dataclass(frozen=True)
class Bit:
    arg: "Term"
    index: "Term"


@dataclass(frozen=True)
class Monus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exp: "Term"


Term = Union[Zero, Succ, Add, Mul, Var, Numeral, Len, Bit, Monus, Pow]
DERIVED_TERMS = (Len, Bit, Monus, Pow)


# -- formulas --------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    """∀x φ; with a bound, ∀x<t φ (or ∀x≥t φ when ge is set)."""
    var: int
    body: "Formula"
    bound: Term | None = None
    ge: bool = False


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"
    bound: Term | None = None
    ge: bool = False


@dataclass(frozen=True)
class ExistsUnique:
    var: int
    body: "Formula"
    bound: Term | None = None


Formula = Union[Eq, Lt, Not, And, Or, Implies, Iff, ForAll, Exists, ExistsUnique]
QUANTIFIERS = (ForAll, Exists, ExistsUnique)
BINARY = (And, Or, Implies, Iff)


def _cached_hash(self):
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(getattr(self, n) for n in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
    return h


# structural hashing of deep trees is hot; remember it per node
for _cls in (Zero, Succ, Add, Mul, Var, Numeral, Len, Bit, Monus, Pow,
             Eq, Lt, Not, And, Or, Implies, Iff, ForAll, Exists, ExistsUnique):
    _cls.__hash__ = _cached_hash


# -- builders --------------------------------------------------------------

def num(n: int) -> Term:
    """Compact numeral node, collapsing 0 and 1 to their core spelling."""
    if n == 0:
        return Zero()
    if n == 1:
        return Succ(Zero())
    return Numeral(n)


def x(i: int) -> Var:
    return Var(i)


def _balanced(items: Sequence, op) -> object:
    if len(items) == 1:
        return items[0]
    mid = len(items) // 2
    return op(_balanced(items[:mid], op), _balanced(items[mid:], op))


def big_and(parts: Iterable[Formula]) -> Formula:
    items = list(parts)
    if not items:
        return Eq(Zero(), Zero())
    return _balanced(items, And)


def big_or(parts: Iterable[Formula]) -> Formula:
    items = list(parts)
    if not items:
        return Lt(Zero(), Zero())
    return _balanced(items, Or)


def add_all(terms: Sequence[Term]) -> Term:
    return reduce(Add, terms)


def le(a: Term, b: Term) -> Formula:
    return Or(Lt(a, b), Eq(a, b))


def ne(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


TRUE = Eq(Zero(), Zero())
FALSE = Lt(Zero(), Zero())


# -- traversal -------------------------------------------------------------

def term_children(t: Term) -> tuple:
    if isinstance(t, (Zero, Var, Numeral)):
        return ()
    if isinstance(t, (Succ, Len)):
        return (t.arg,)
    if isinstance(t, Bit):
        return (t.arg, t.index)
    if isinstance(t, Pow):
        return (t.base, t.exp)
    return (t.left, t.right)


def rebuild_term(t: Term, kids: tuple) -> Term:
    if isinstance(t, (Zero, Var, Numeral)):
        return t
    return type(t)(*kids)


def term_vars(t: Term) -> frozenset:
    return _term_vars(t)


@lru_cache(maxsize=200_000)
def _term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.index,))
    out = frozenset()
    for k in term_children(t):
        out |= _term_vars(k)
    return out


def free_vars(f: Formula) -> frozenset:
    return _free_vars(f)


@lru_cache(maxsize=200_000)
def _free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Eq, Lt)):
        return _term_vars(f.left) | _term_vars(f.right)
    if isinstance(f, Not):
        return _free_vars(f.arg)
    if isinstance(f, BINARY):
        return _free_vars(f.left) | _free_vars(f.right)
    inner = _free_vars(f.body) - {f.var}
    if f.bound is not None:
        inner |= _term_vars(f.bound)
    return inner


def all_vars(f: Formula) -> set:
    """Every variable index occurring anywhere, bound or free."""
    out: set = set()
    stack: list = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Eq, Lt)):
            out |= _term_vars(g.left) | _term_vars(g.right)
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, BINARY):
            stack += [g.left, g.right]
        else:
            out.add(g.var)
            stack.append(g.body)
            if g.bound is not None:
                out |= _term_vars(g.bound)
    return out


def max_var(f: Formula) -> int:
    return max(all_vars(f), default=0)


def has_derived_term(t: Term) -> bool:
    if isinstance(t, DERIVED_TERMS):
        return True
    return any(has_derived_term(k) for k in term_children(t))


def has_derived(f: Formula) -> bool:
    if isinstance(f, (Eq, Lt)):
        return has_derived_term(f.left) or has_derived_term(f.right)
    if isinstance(f, Not):
        return has_derived(f.arg)
    if isinstance(f, BINARY):
        return has_derived(f.left) or has_derived(f.right)
    if f.bound is not None and has_derived_term(f.bound):
        return True
    return has_derived(f.body)


def map_atoms(f: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    if isinstance(f, (Eq, Lt)):
        return fn(f)
    if isinstance(f, Not):
        return Not(map_atoms(f.arg, fn))
    if isinstance(f, BINARY):
        return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))
    if isinstance(f, ExistsUnique):
        return ExistsUnique(f.var, map_atoms(f.body, fn), f.bound)
    return type(f)(f.var, map_atoms(f.body, fn), f.bound, f.ge)


# -- substitution ----------------------------------------------------------

def subst_term(t: Term, mapping: dict) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    if isinstance(t, (Zero, Numeral)):
        return t
    return rebuild_term(t, tuple(subst_term(k, mapping) for k in term_children(t)))


def substitute(f: Formula, var: int, t: Term) -> Formula:
    """Capture-avoiding f[var := t]."""
    return substitute_many(f, {var: t})


def substitute_many(f: Formula, mapping: dict) -> Formula:
    mapping = {v: t for v, t in mapping.items() if v in free_vars(f)}
    if not mapping:
        return f
    if isinstance(f, (Eq, Lt)):
        return type(f)(subst_term(f.left, mapping), subst_term(f.right, mapping))
    if isinstance(f, Not):
        return Not(substitute_many(f.arg, mapping))
    if isinstance(f, BINARY):
        return type(f)(substitute_many(f.left, mapping), substitute_many(f.right, mapping))
    bound = None if f.bound is None else subst_term(f.bound, mapping)
    incoming = set()
    for t in mapping.values():
        incoming |= term_vars(t)
    var, body = f.var, f.body
    inner = {v: t for v, t in mapping.items() if v != var}
    if var in incoming:
        fresh = max(max_var(f), max(incoming), max(mapping)) + 1
        body = substitute_many(body, {var: Var(fresh)})
        var = fresh
    body = substitute_many(body, inner)
    if isinstance(f, ExistsUnique):
        return ExistsUnique(var, body, bound)
    return type(f)(var, body, bound, f.ge)


def free_for(t: Term, var: int, f: Formula) -> bool:
    """True when substituting t for var in f captures no variable of t."""
    tv = term_vars(t)
    if not tv:
        return True

    def walk(g: Formula, bound_here: frozenset) -> bool:
        if isinstance(g, (Eq, Lt)):
            if var in term_vars(g.left) | term_vars(g.right):
                return not (tv & bound_here)
            return True
        if isinstance(g, Not):
            return walk(g.arg, bound_here)
        if isinstance(g, BINARY):
            return walk(g.left, bound_here) and walk(g.right, bound_here)
        if g.var == var:
            return True
        return walk(g.body, bound_here | {g.var})

    return walk(f, frozenset())


# -- desugaring ------------------------------------------------------------

def is_core(f: Formula) -> bool:
    if isinstance(f, (Eq, Lt)):
        return True
    if isinstance(f, Not):
        return is_core(f.arg)
    if isinstance(f, Implies):
        return is_core(f.left) and is_core(f.right)
    if isinstance(f, ForAll) and f.bound is None:
        return is_core(f.body)
    return False


def _guarded(var: int, bound: Term, ge: bool) -> Formula:
    g = Lt(Var(var), bound)
    return Not(g) if ge else g


def desugar(f: Formula) -> Formula:
    """Rewrite into ¬, →, ∀, =, < using the standard abbreviations."""
    if isinstance(f, (Eq, Lt)):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.arg))
    if isinstance(f, Implies):
        return Implies(desugar(f.left), desugar(f.right))
    if isinstance(f, And):
        return Not(Implies(desugar(f.left), Not(desugar(f.right))))
    if isinstance(f, Or):
        return Implies(Not(desugar(f.left)), desugar(f.right))
    if isinstance(f, Iff):
        a, b = desugar(f.left), desugar(f.right)
        return Not(Implies(Implies(a, b), Not(Implies(b, a))))
    if isinstance(f, ForAll):
        body = desugar(f.body)
        if f.bound is not None:
            body = Implies(desugar(_guarded(f.var, f.bound, f.ge)), body)
        return ForAll(f.var, body)
    if isinstance(f, Exists):
        body = f.body
        if f.bound is not None:
            body = And(_guarded(f.var, f.bound, f.ge), body)
        return Not(ForAll(f.var, Not(desugar(body))))
    if isinstance(f, ExistsUnique):
        return desugar(expand_unique(f))
    raise FormulaError(f"not a formula: {f!r}")


def expand_unique(f: ExistsUnique) -> Formula:
    """∃!y φ  as  ∃y φ ∧ ∀y1∀y2 (φ(y1) ∧ φ(y2) → y1 = y2)."""
    body = f.body if f.bound is None else And(Lt(Var(f.var), f.bound), f.body)
    top = max(max_var(body), f.var)
    if f.bound is not None:
        top = max(top, max(term_vars(f.bound), default=0))
    y1, y2 = top + 1, top + 2
    return And(
        Exists(f.var, body),
        ForAll(y1, ForAll(y2, Implies(
            And(substitute(body, f.var, Var(y1)), substitute(body, f.var, Var(y2))),
            Eq(Var(y1), Var(y2))))))


# -- numerals --------------------------------------------------------------

_TWO = Succ(Succ(Zero()))


def _power_of_two_term(i: int) -> Term:
    return reduce(Mul, [_TWO] * i)


def numeral_of(n: int) -> Term:
    """Binary-form numeral as an explicit core term."""
    if n < 0:
        raise FormulaError("numerals are natural numbers")
    if n <= 1:
        return Succ(Zero()) if n else Zero()
    bits = format(n, "b")[::-1]
    digit = lambda b: Succ(Zero()) if b == "1" else Zero()
    summands: list = [digit(bits[0])]
    for i in range(1, len(bits)):
        summands.append(Mul(digit(bits[i]), _power_of_two_term(i)))
    return add_all(summands)


def unary_numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def expand_numerals_term(t: Term) -> Term:
    if isinstance(t, Numeral):
        return numeral_of(t.value)
    if isinstance(t, (Zero, Var)):
        return t
    return rebuild_term(t, tuple(expand_numerals_term(k) for k in term_children(t)))


def expand_numerals(f: Formula) -> Formula:
    return map_atoms(f, lambda a: type(a)(expand_numerals_term(a.left),
                                          expand_numerals_term(a.right)))


def numeral_symbol_count(n: int) -> int:
    if n == 0:
        return 1
    if n == 1:
        return 2
    bits = format(n, "b")[::-1]
    total = 1 if bits[0] == "0" else 2
    for i in range(1, len(bits)):
        digit = 1 if bits[i] == "0" else 2
        total += 3 + digit + (6 * i - 3)
    return total + 3 * (len(bits) - 1)


# -- symbol streams ----------------------------------------------------------

def term_symbols(t: Term) -> Iterator[str]:
    if isinstance(t, Zero):
        yield "0"
    elif isinstance(t, Succ):
        yield "S"
        yield from term_symbols(t.arg)
    elif isinstance(t, Var):
        yield f"x{t.index}"
    elif isinstance(t, Add):
        yield "("
        yield from term_symbols(t.left)
        yield "+"
        yield from term_symbols(t.right)
        yield ")"
    elif isinstance(t, Mul):
        yield "("
        yield from term_symbols(t.left)
        yield "·"
        yield from term_symbols(t.right)
        yield ")"
    elif isinstance(t, Numeral):
        yield from term_symbols(numeral_of(t.value))
    else:
        raise FormulaError(f"derived symbol {type(t).__name__} has no Gödel code; eliminate it first")


def core_symbols(f: Formula) -> Iterator[str]:
    """Symbol stream of a core formula (sugar is expanded on the fly)."""
    if not is_core(f):
        f = desugar(f)
    yield from _core_symbols(f)


def _core_symbols(f: Formula) -> Iterator[str]:
    if isinstance(f, Eq):
        yield from term_symbols(f.left)
        yield "="
        yield from term_symbols(f.right)
    elif isinstance(f, Lt):
        yield from term_symbols(f.left)
        yield "<"
        yield from term_symbols(f.right)
    elif isinstance(f, Not):
        yield "¬"
        yield "("
        yield from _core_symbols(f.arg)
        yield ")"
    elif isinstance(f, Implies):
        yield "("
        yield from _core_symbols(f.left)
        yield "→"
        yield from _core_symbols(f.right)
        yield ")"
    elif isinstance(f, ForAll):
        yield "∀"
        yield f"x{f.var}"
        yield "("
        yield from _core_symbols(f.body)
        yield ")"
    else:
        raise FormulaError(f"not core syntax: {type(f).__name__}")


def term_symbol_count(t: Term) -> int:
    if isinstance(t, Numeral):
        return numeral_symbol_count(t.value)
    if isinstance(t, (Zero, Var)):
        return 1
    if isinstance(t, Succ):
        return 1 + term_symbol_count(t.arg)
    if isinstance(t, (Add, Mul)):
        return 3 + term_symbol_count(t.left) + term_symbol_count(t.right)
    raise FormulaError(f"derived symbol {type(t).__name__} has no Gödel code; eliminate it first")


def symbol_count(f: Formula) -> int:
    if not is_core(f):
        f = desugar(f)
    return _symbol_count(f)


def _symbol_count(f: Formula) -> int:
    if isinstance(f, (Eq, Lt)):
        return 1 + term_symbol_count(f.left) + term_symbol_count(f.right)
    if isinstance(f, Not):
        return 3 + _symbol_count(f.arg)
    if isinstance(f, Implies):
        return 3 + _symbol_count(f.left) + _symbol_count(f.right)
    return 4 + _symbol_count(f.body)


def symbol_count_capped(f: Formula, cap: int) -> int:
    """symbol_count(f) if it is at most cap, else some value above cap.

    Stops as soon as the running total passes cap; f must be core.
    """
    total, stack = 0, [f]
    while stack:
        x = stack.pop()
        if isinstance(x, Numeral):
            total += numeral_symbol_count(x.value)
        elif isinstance(x, (Zero, Var)):
            total += 1
        elif isinstance(x, Succ):
            total += 1
            stack.append(x.arg)
        elif isinstance(x, Not):
            total += 3
            stack.append(x.arg)
        elif isinstance(x, (Eq, Lt)):
            total += 1
            stack += [x.left, x.right]
        elif isinstance(x, (Add, Mul, Implies)):
            total += 3
            stack += [x.left, x.right]
        elif isinstance(x, ForAll):
            total += 4
            stack.append(x.body)
        else:
            raise FormulaError(f"not core syntax: {type(x).__name__}")
        if total > cap:
            break
    return total


def godel_number(f: Formula, table: SymbolTable = DEFAULT_TABLE) -> int:
    if has_derived(f):
        raise FormulaError("formula contains derived symbols; eliminate them first")
    return encode_seq([table.code(s) for s in core_symbols(f)])


def godel_number_term(t: Term, table: SymbolTable = DEFAULT_TABLE) -> int:
    return encode_seq([table.code(s) for s in term_symbols(t)])


def same_formula(a: Formula, b: Formula) -> bool:
    """Syntactic identity after desugaring, with numerals compared by expansion."""
    if a == b:
        return True
    da = a if is_core(a) else desugar(a)
    db = b if is_core(b) else desugar(b)
    if da == db:
        return True
    if has_derived(da) or has_derived(db):
        return False
    if _symbol_count(da) != _symbol_count(db):
        return False
    return all(p == q for p, q in zip(_core_symbols(da), _core_symbols(db)))


# -- reading symbol streams back -----------------------------------------------

class _SymbolReader:
    def __init__(self, syms: list):
        self.syms = syms
        self.pos = 0

    def peek(self):
        return self.syms[self.pos] if self.pos < len(self.syms) else None

    def take(self, expected=None):
        s = self.peek()
        if s is None or (expected is not None and s != expected):
            raise FormulaError(f"unexpected symbol {s!r} at {self.pos}")
        self.pos += 1
        return s

    def var(self) -> int:
        s = self.take()
        if not (s.startswith("x") and s[1:].isdigit()):
            raise FormulaError(f"expected a variable at {self.pos - 1}")
        return int(s[1:])

    def term(self) -> Term:
        s = self.peek()
        if s == "0":
            self.take()
            return Zero()
        if s == "S":
            self.take()
            return Succ(self.term())
        if s is not None and s.startswith("x"):
            return Var(self.var())
        if s == "(":
            self.take()
            left = self.term()
            op = self.take()
            if op not in ("+", "·"):
                raise FormulaError(f"expected + or · at {self.pos - 1}")
            right = self.term()
            self.take(")")
            return Add(left, right) if op == "+" else Mul(left, right)
        raise FormulaError(f"unexpected symbol {s!r} at {self.pos}")

    def formula(self) -> Formula:
        s = self.peek()
        if s == "¬":
            self.take()
            self.take("(")
            inner = self.formula()
            self.take(")")
            return Not(inner)
        if s == "∀":
            self.take()
            v = self.var()
            self.take("(")
            inner = self.formula()
            self.take(")")
            return ForAll(v, inner)
        if s == "(":
            save = self.pos
            try:
                return self.atom()
            except FormulaError:
                self.pos = save
            self.take("(")
            left = self.formula()
            self.take("→")
            right = self.formula()
            self.take(")")
            return Implies(left, right)
        return self.atom()

    def atom(self) -> Formula:
        left = self.term()
        op = self.take()
        if op not in ("=", "<"):
            raise FormulaError(f"expected = or < at {self.pos - 1}")
        right = self.term()
        return Eq(left, right) if op == "=" else Lt(left, right)


def formula_from_symbols(syms: list) -> Formula:
    r = _SymbolReader(list(syms))
    f = r.formula()
    if r.pos != len(r.syms):
        raise FormulaError("trailing symbols")
    return f


def formula_from_godel(g: int, table: SymbolTable = DEFAULT_TABLE) -> Formula | None:
    syms = decode_expression(g, table)
    if syms is None:
        return None
    try:
        return formula_from_symbols(syms)
    except (FormulaError, RecursionError):
        return None


# -- α-equivalence -----------------------------------------------------------

def alpha_equal(a: Formula, b: Formula) -> bool:
    """Equality up to renaming of bound variables (on desugared forms)."""
    return _alpha(desugar(a), desugar(b), {}, {})


def _alpha_term(s: Term, t: Term, ma: dict, mb: dict) -> bool:
    if isinstance(s, Var) and isinstance(t, Var):
        if s.index in ma or t.index in mb:
            return ma.get(s.index) == t.index and mb.get(t.index) == s.index
        return s.index == t.index
    if type(s) is not type(t):
        return False
    if isinstance(s, (Zero, Numeral)):
        return s == t
    return all(_alpha_term(p, q, ma, mb) for p, q in zip(term_children(s), term_children(t)))


def _alpha(a: Formula, b: Formula, ma: dict, mb: dict) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, (Eq, Lt)):
        return _alpha_term(a.left, b.left, ma, mb) and _alpha_term(a.right, b.right, ma, mb)
    if isinstance(a, Not):
        return _alpha(a.arg, b.arg, ma, mb)
    if isinstance(a, Implies):
        return _alpha(a.left, b.left, ma, mb) and _alpha(a.right, b.right, ma, mb)
    ma2 = dict(ma)
    mb2 = dict(mb)
    ma2[a.var] = b.var
    mb2[b.var] = a.var
    return _alpha(a.body, b.body, ma2, mb2)


# -- families ----------------------------------------------------------------

@dataclass(frozen=True)
class FormulaFamily:
    """A formula with designated free variables, instantiated at numerals.

    The family code ⌜Φ⌝ is the sequence code of the UTF-8 bytes of the
    canonical description string, so it does not depend on the instance.
    """
    formula: Formula
    vars: tuple = (1,)
    size_fn: str = "bitlen"
    description: str = ""
    # args -> {var: hint} for witness-guided evaluation of instances
    hint_fn: object = field(default=None, compare=False, repr=False)

    def describe(self) -> str:
        if self.description:
            return self.description
        from .syntax import print_formula
        names = ",".join(f"x{v}" for v in self.vars)
        return f"family({names}): {print_formula(self.formula)}"

    @property
    def code(self) -> int:
        return _family_code(self.describe())

    def instance(self, *args: int) -> Formula:
        if len(args) != len(self.vars):
            raise FormulaError(f"family takes {len(self.vars)} argument(s)")
        return substitute_many(self.formula, {v: num(a) for v, a in zip(self.vars, args)})

    def core_instance(self, *args: int) -> Formula:
        """The instance with derived symbols eliminated; numerals stay compact."""
        if len(args) != len(self.vars):
            raise FormulaError(f"family takes {len(self.vars)} argument(s)")
        core = _CORE_FORMS.get(self.code)
        if core is None:
            from .eliminate import eliminate_derived
            core = eliminate_derived(self.formula)
            _CORE_FORMS[self.code] = core = core if is_core(core) else desugar(core)
        return substitute_many(core, {v: num(a) for v, a in zip(self.vars, args)})

    def hints(self, *args: int) -> dict:
        return dict(self.hint_fn(*args)) if self.hint_fn is not None else {}

    def truth(self, *args: int, fuel: int | None = None) -> bool:
        """Standard-model truth of the instance (witness-guided when hinted)."""
        from .evaluate import DEFAULT_FUEL, eval_bounded
        if len(args) != len(self.vars):
            raise FormulaError(f"family takes {len(self.vars)} argument(s)")
        env = dict(zip(self.vars, args))
        return eval_bounded(self.formula, env, fuel=fuel or DEFAULT_FUEL, hints=self.hints(*args))


_CORE_FORMS: dict = {}


@lru_cache(maxsize=1024)
def _family_code(text: str) -> int:
    from .godel import encode_text
    return encode_text(text)
