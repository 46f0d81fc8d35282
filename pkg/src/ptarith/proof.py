"""Hilbert-style proof trees, the axiom predicate and the proof checker.

Axiom basis (version 1, fixed so that stored proofs stay valid):

  K   φ → (ψ → φ)
  S   (φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))
  C   (¬φ → ¬ψ) → (ψ → φ)
  Q1  ∀x φ → φ[t/x]                 t free for x in φ
  Q2  ∀x (φ → ψ) → (∀x φ → ∀x ψ)
  Q3  φ → ∀x φ                      x not free in φ
  E1  t = t
  E2  x = y → (α → α')              α atomic, α' replaces some x by y
  P1  ¬(S s = 0)          P2  S s = S t → s = t
  P3  s + 0 = s           P4  s + S t = S(s + t)
  P5  s · 0 = 0           P6  s · S t = s · t + s
  O1  ¬(s < 0)            O2  s < S t → (¬(s < t) → s = t)
  O3  (¬(s < t) → s = t) → s < S t
  IND φ(0) → (∀x (φ → φ(Sx)) → ∀x φ)

P1 to O3 are schemas over arbitrary terms s, t.  Rules: modus ponens (first
child φ, second child φ → ψ), generalization on a named variable, and
restate (one child carrying the same formula).  There are no hypotheses,
so generalization has no side condition of its own.

Formulas are compared after desugaring and numeral expansion, so a node may
be written with ∧, ∃ or binary numerals and still denote its core formula.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .formula import (
    Add, Eq, ForAll, Formula, FormulaError, Implies, Lt, Mul, Not, Succ, Term, Var,
    Zero, desugar, expand_numerals, free_for, free_vars, godel_number, has_derived,
    is_core, formula_from_godel, substitute, term_vars, Numeral, numeral_of,
    numeral_symbol_count, symbol_count, symbol_count_capped, term_symbol_count,
)
from .godel import decode_seq, encode_seq

AXIOM, MP, GEN, RESTATE = "axiom", "mp", "gen", "restate"
_TAGS = {AXIOM: 0, MP: 1, RESTATE: 2}          # gen on x_i has tag 2 + i
AXIOM_BASIS_VERSION = 1


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class ProofTree:
    formula: Formula
    rule: str
    children: tuple = ()
    var: int | None = None        # generalized variable, for GEN

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def nodes(self, path: tuple = ()) -> Iterable:
        """(path, node) pairs in preorder."""
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.nodes(path + (i,))

    def replace(self, path: tuple, new: "ProofTree") -> "ProofTree":
        if not path:
            return new
        kids = list(self.children)
        kids[path[0]] = kids[path[0]].replace(path[1:], new)
        return ProofTree(self.formula, self.rule, tuple(kids), self.var)


@dataclass(frozen=True)
class Theory:
    """PA plus a finite list of extra axioms."""
    name: str = "PA"
    extra: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "extra", tuple(normalize(f) for f in self.extra))


PA = Theory()


@lru_cache(maxsize=4096)
def normalize(f: Formula) -> Formula:
    """Core form with binary numerals written out."""
    if has_derived(f):
        raise FormulaError("derived symbols must be eliminated before use in a proof")
    return expand_numerals(f if is_core(f) else desugar(f))


# -- axioms -----------------------------------------------------------------------

def _impl(f, n: int):
    """Split an n-fold right-nested implication into n+1 parts, or None."""
    parts = []
    for _ in range(n):
        if not isinstance(f, Implies):
            return None
        parts.append(f.left)
        f = f.right
    return parts + [f]


def _is_k(f) -> bool:
    p = _impl(f, 2)
    return p is not None and p[0] == p[2]


def _is_s(f) -> bool:
    p = _impl(f, 2)
    if p is None:
        return False
    a = _impl(p[0], 2)
    b = _impl(p[1], 1)
    c = _impl(p[2], 1)
    return None not in (a, b, c) and a[0] == b[0] == c[0] and a[1] == b[1] and a[2] == c[1]


def _is_contra(f) -> bool:
    p = _impl(f, 2)
    if p is None:
        return False
    a = _impl(p[0], 1)
    return (a is not None and isinstance(a[0], Not) and isinstance(a[1], Not)
            and p[1] == a[1].arg and p[2] == a[0].arg)


def _match_term(pat: Term, t: Term, x: int, found: list) -> bool:
    if isinstance(pat, Var) and pat.index == x:
        if found[0] is None:
            found[0] = t
        return found[0] == t
    if type(pat) is not type(t):
        return False
    if isinstance(pat, (Zero, Var)):
        return pat == t
    if isinstance(pat, Succ):
        return _match_term(pat.arg, t.arg, x, found)
    return _match_term(pat.left, t.left, x, found) and _match_term(pat.right, t.right, x, found)


def _match_subst(phi: Formula, psi: Formula, x: int, found: list) -> bool:
    """Is psi = phi[t/x] (no renaming) for a single t, recorded in found[0]?"""
    if type(phi) is not type(psi):
        return False
    if isinstance(phi, (Eq, Lt)):
        return _match_term(phi.left, psi.left, x, found) and _match_term(phi.right, psi.right, x, found)
    if isinstance(phi, Not):
        return _match_subst(phi.arg, psi.arg, x, found)
    if isinstance(phi, Implies):
        return _match_subst(phi.left, psi.left, x, found) and _match_subst(phi.right, psi.right, x, found)
    if phi.var != psi.var:
        return False
    if phi.var == x:
        return phi == psi
    return _match_subst(phi.body, psi.body, x, found)


def _is_q1(f) -> bool:
    p = _impl(f, 1)
    if p is None or not isinstance(p[0], ForAll):
        return False
    x, phi = p[0].var, p[0].body
    found = [None]
    if not _match_subst(phi, p[1], x, found):
        return False
    return found[0] is None or free_for(found[0], x, phi)


def _is_q2(f) -> bool:
    p = _impl(f, 2)
    if p is None or not all(isinstance(q, ForAll) for q in p):
        return False
    inner = _impl(p[0].body, 1)
    return (inner is not None and p[0].var == p[1].var == p[2].var
            and inner[0] == p[1].body and inner[1] == p[2].body)


def _is_q3(f) -> bool:
    p = _impl(f, 1)
    return (p is not None and isinstance(p[1], ForAll) and p[1].body == p[0]
            and p[1].var not in free_vars(p[0]))


def _replaces(a: Term, b: Term, x: int, y: int) -> bool:
    if a == b:
        return True
    if a == Var(x) and b == Var(y):
        return True
    if type(a) is not type(b) or isinstance(a, (Zero, Var)):
        return False
    if isinstance(a, Succ):
        return _replaces(a.arg, b.arg, x, y)
    return _replaces(a.left, b.left, x, y) and _replaces(a.right, b.right, x, y)


def _is_e2(f) -> bool:
    p = _impl(f, 2)
    if p is None or not isinstance(p[0], Eq):
        return False
    s, t = p[0].left, p[0].right
    if not (isinstance(s, Var) and isinstance(t, Var)):
        return False
    a, b = p[1], p[2]
    return (type(a) is type(b) and isinstance(a, (Eq, Lt))
            and _replaces(a.left, b.left, s.index, t.index)
            and _replaces(a.right, b.right, s.index, t.index))


def _is_arith(f) -> str | None:
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Eq) and isinstance(g.left, Succ) and g.right == Zero():
            return "P1"
        if isinstance(g, Lt) and g.right == Zero():
            return "O1"
        return None
    if isinstance(f, Eq):
        l, r = f.left, f.right
        if l == r:
            return "E1"
        if isinstance(l, Add) and l.right == Zero() and r == l.left:
            return "P3"
        if isinstance(l, Add) and isinstance(l.right, Succ) and r == Succ(Add(l.left, l.right.arg)):
            return "P4"
        if isinstance(l, Mul) and l.right == Zero() and r == Zero():
            return "P5"
        if isinstance(l, Mul) and isinstance(l.right, Succ) and r == Add(Mul(l.left, l.right.arg), l.left):
            return "P6"
        return None
    p = _impl(f, 1)
    if p is None:
        return None
    a, b = p
    if (isinstance(a, Eq) and isinstance(a.left, Succ) and isinstance(a.right, Succ)
            and b == Eq(a.left.arg, a.right.arg)):
        return "P2"
    if isinstance(a, Lt) and isinstance(a.right, Succ):
        s, t = a.left, a.right.arg
        if b == Implies(Not(Lt(s, t)), Eq(s, t)):
            return "O2"
    if isinstance(b, Lt) and isinstance(b.right, Succ):
        s, t = b.left, b.right.arg
        if a == Implies(Not(Lt(s, t)), Eq(s, t)):
            return "O3"
    return None


def _is_induction(f) -> bool:
    p = _impl(f, 2)
    if p is None or not (isinstance(p[1], ForAll) and isinstance(p[2], ForAll)):
        return False
    x = p[2].var
    phi = p[2].body
    step = _impl(p[1].body, 1)
    return (p[1].var == x and step is not None and step[0] == phi
            and p[0] == substitute(phi, x, Zero())
            and step[1] == substitute(phi, x, Succ(Var(x))))


_LOGICAL = (("K", _is_k), ("S", _is_s), ("C", _is_contra), ("Q1", _is_q1), ("Q2", _is_q2),
            ("Q3", _is_q3), ("E2", _is_e2), ("IND", _is_induction))


def axiom_name(T: Theory, f: Formula) -> str | None:
    """Name of the schema f instantiates, or None."""
    try:
        f = normalize(f)
    except FormulaError:
        return None
    name = _is_arith(f)
    if name:
        return name
    for name, test in _LOGICAL:
        if test(f):
            return name
    if f in T.extra:
        return "extra"
    return None


def is_axiom(T: Theory, f: Formula) -> bool:
    return axiom_name(T, f) is not None


# -- checking -------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    step: str = ""               # which check failed
    path: tuple = ()             # child indices from the root to the failing node
    message: str = ""

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if self.accepted:
            return "accept"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"reject at {where} ({self.step}): {self.message}"


_ARITY = {AXIOM: 0, MP: 2, GEN: 1, RESTATE: 1}


def _reject(step: str, path: tuple, msg: str) -> CheckResult:
    return CheckResult(False, step, path, msg)


def check_proof(T: Theory, target: Formula, pi: ProofTree) -> CheckResult:
    """Validity of pi as a proof of target in T, with the first failing node."""
    if not isinstance(pi, ProofTree):
        return _reject("structure", (), "not a proof tree")
    norm: dict = {}
    for path, node in pi.nodes():
        if node.rule not in _ARITY:
            return _reject("structure", path, f"unknown rule {node.rule!r}")
        if len(node.children) != _ARITY[node.rule]:
            return _reject("structure", path, f"{node.rule} needs {_ARITY[node.rule]} children")
        if node.rule == GEN and (not isinstance(node.var, int) or node.var < 1):
            return _reject("structure", path, "generalization needs a variable")
        try:
            norm[path] = normalize(node.formula)
        except (FormulaError, TypeError, AttributeError) as exc:
            return _reject("structure", path, f"bad formula: {exc}")
    for path, node in pi.nodes():
        f = norm[path]
        kids = [norm[path + (i,)] for i in range(len(node.children))]
        if node.rule == AXIOM:
            if axiom_name(T, f) is None:
                return _reject("leaf-axiom", path, "leaf is not an axiom of the theory")
        elif node.rule == MP:
            if kids[1] != Implies(kids[0], f):
                return _reject("inference", path, "modus ponens: second premise is not first → conclusion")
        elif node.rule == GEN:
            if f != ForAll(node.var, kids[0]):
                return _reject("inference", path, f"generalization: conclusion is not ∀x{node.var} of the premise")
        elif node.rule == RESTATE:
            if f != kids[0]:
                return _reject("inference", path, "restate changes the formula")
    try:
        goal = _compact_core(target)
    except FormulaError as exc:
        return _reject("root", (), f"bad target: {exc}")
    if not _same_formula(norm[()], goal):
        return _reject("root", (), "root formula differs from the target")
    return CheckResult(True)


def _compact_core(f: Formula) -> Formula:
    """Core form of a target, keeping numerals as compact nodes."""
    if has_derived(f):
        from .eliminate import eliminate_derived
        f = eliminate_derived(f)
    return f if is_core(f) else desugar(f)


def _same_formula(f: Formula, goal: Formula) -> bool:
    """f (numerals written out) equals goal (numerals compact)?

    A numeral is expanded only after its symbol count matches the
    candidate subterm, so huge numerals never get written out.
    """
    n = symbol_count(f)
    if symbol_count_capped(goal, n) != n:
        return False
    return _same(f, goal)


def _same(f, g) -> bool:
    if isinstance(g, Numeral):
        return term_symbol_count(f) == numeral_symbol_count(g.value) and f == numeral_of(g.value)
    if type(f) is not type(g):
        return False
    if isinstance(f, Zero):
        return True
    if isinstance(f, Var):
        return f == g
    if isinstance(f, Succ):
        return _same(f.arg, g.arg)
    if isinstance(f, (Add, Mul, Eq, Lt, Implies)):
        return _same(f.left, g.left) and _same(f.right, g.right)
    if isinstance(f, Not):
        return _same(f.arg, g.arg)
    if isinstance(f, ForAll):
        return f.var == g.var and f.bound == g.bound and _same(f.body, g.body)
    return f == g


# -- combinators -----------------------------------------------------------------------

def axiom(f: Formula) -> ProofTree:
    return ProofTree(normalize(f), AXIOM)


def mp(pi1: ProofTree, pi2: ProofTree) -> ProofTree:
    """From proofs of φ and φ → ψ, a proof of ψ."""
    major = normalize(pi2.formula)
    if not isinstance(major, Implies) or major.left != normalize(pi1.formula):
        raise ProofError("modus ponens: second proof is not an implication from the first")
    return ProofTree(major.right, MP, (pi1, pi2))


def gen(pi: ProofTree, x: int) -> ProofTree:
    if x < 1:
        raise ProofError("variables are x1, x2, ...")
    return ProofTree(ForAll(x, normalize(pi.formula)), GEN, (pi,), x)


def restate(pi: ProofTree) -> ProofTree:
    return ProofTree(normalize(pi.formula), RESTATE, (pi,))


def instantiate(pi: ProofTree, x: int, t: Term) -> ProofTree:
    """From a proof of φ, a proof of φ[t/x] (generalize, then Q1)."""
    phi = normalize(pi.formula)
    if not free_for(t, x, phi):
        raise ProofError(f"term is not free for x{x}")
    g = gen(pi, x)
    inst = _plain_subst(phi, x, t)
    return mp(g, axiom(Implies(g.formula, inst)))


def _plain_subst(f: Formula, x: int, t: Term) -> Formula:
    got = substitute(f, x, t)
    if not _match_subst(f, got, x, [None]):
        raise ProofError("substitution would rename bound variables")
    return got


def identity(a: Formula) -> ProofTree:
    """⊢ a → a from K and S."""
    a = normalize(a)
    aa = Implies(a, a)
    s = axiom(Implies(Implies(a, Implies(aa, a)), Implies(Implies(a, aa), aa)))
    k1 = axiom(Implies(a, Implies(aa, a)))
    k2 = axiom(Implies(a, aa))
    return mp(k2, mp(k1, s))


def syllogism(ab: ProofTree, bc: ProofTree) -> ProofTree:
    """From a → b and b → c, a → c."""
    ab_f, bc_f = normalize(ab.formula), normalize(bc.formula)
    a, b, c = ab_f.left, ab_f.right, bc_f.right
    if bc_f.left != b:
        raise ProofError("syllogism: middle formulas differ")
    k = mp(bc, axiom(Implies(bc_f, Implies(a, bc_f))))
    s = axiom(Implies(Implies(a, bc_f), Implies(ab_f, Implies(a, c))))
    return mp(ab, mp(k, s))


# -- Gödel numbers and text ---------------------------------------------------------

def _tag(node: ProofTree) -> int:
    return 2 + node.var if node.rule == GEN else _TAGS[node.rule]


def godel_number_tree(pi: ProofTree) -> int:
    """Sequence code of the preorder list (formula number, rule tag, child count)."""
    flat: list = []
    for _, node in pi.nodes():
        flat += [godel_number(normalize(node.formula)), _tag(node), len(node.children)]
    return encode_seq(flat)


def decode_tree(g: int) -> ProofTree | None:
    """Inverse of godel_number_tree; None for malformed codes."""
    xs = decode_seq(g)
    if not xs or len(xs) % 3:
        return None
    triples = [xs[i:i + 3] for i in range(0, len(xs), 3)]
    pos = 0

    def build(depth: int):
        nonlocal pos
        if pos >= len(triples) or depth > 10000:
            raise ProofError("truncated")
        fnum, tag, n = triples[pos]
        pos += 1
        f = formula_from_godel(fnum)
        if f is None:
            raise ProofError("bad formula number")
        if tag == 0:
            rule, var = AXIOM, None
        elif tag == 1:
            rule, var = MP, None
        elif tag == 2:
            rule, var = RESTATE, None
        else:
            rule, var = GEN, tag - 2
        if n != _ARITY[rule]:
            raise ProofError("child count does not match the rule")
        kids = tuple(build(depth + 1) for _ in range(n))
        return ProofTree(f, rule, kids, var)
    try:
        tree = build(0)
    except (ProofError, RecursionError):
        return None
    return tree if pos == len(triples) else None


def to_sexpr(pi: ProofTree) -> str:
    from .syntax import print_formula
    rule = f"gen x{pi.var}" if pi.rule == GEN else pi.rule
    inner = "".join(" " + to_sexpr(c) for c in pi.children)
    return f'(node "{print_formula(pi.formula)}" {rule}{inner})'


_SX = re.compile(r'\s*(\(|\)|"[^"]*"|[^\s()"]+)')


def parse_sexpr(text: str) -> ProofTree:
    from .syntax import parse
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _SX.match(text, pos)
        if not m:
            raise ProofError(f"bad proof text at position {pos}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def expect(tok: str):
        nonlocal i
        if i >= len(toks) or toks[i] != tok:
            raise ProofError(f"expected {tok!r} in proof text")
        i += 1

    def node() -> ProofTree:
        nonlocal i
        expect("(")
        expect("node")
        if i >= len(toks) or not toks[i].startswith('"'):
            raise ProofError("expected a quoted formula")
        f = parse(toks[i][1:-1])
        i += 1
        rule, var = toks[i] if i < len(toks) else "", None
        i += 1
        if rule == GEN:
            v = toks[i] if i < len(toks) else ""
            if not re.fullmatch(r"x\d+", v):
                raise ProofError("gen needs a variable xN")
            var = int(v[1:])
            i += 1
        elif rule not in _ARITY:
            raise ProofError(f"unknown rule {rule!r}")
        kids = []
        while i < len(toks) and toks[i] == "(":
            kids.append(node())
        expect(")")
        return ProofTree(f, rule, tuple(kids), var)
    tree = node()
    if i != len(toks):
        raise ProofError("trailing text after proof")
    return tree


# -- provers ---------------------------------------------------------------------------

def prover_proves(T: Theory, e: int, family, a: int) -> bool:
    """Does machine e, run on (p, #Φ, a), output the code of a proof of φ(a) in T?"""
    from .tm import universal_ptm
    from .meta import MODE_PROVE
    try:
        v = universal_ptm(e, encode_seq([MODE_PROVE, family.code, a]), family.size_fn)
    except RecursionError:
        return False
    g = v.output_value
    if g is None:
        return False
    pi = decode_tree(g)
    return pi is not None and check_proof(T, family.core_instance(a), pi).accepted


def drop_middle(abc: ProofTree, b: ProofTree) -> ProofTree:
    """From a → (b → c) and b, a → c."""
    f = normalize(abc.formula)
    a, bc = f.left, f.right
    c = bc.right
    s = axiom(Implies(f, Implies(Implies(a, bc.left), Implies(a, c))))
    ab = mp(b, axiom(Implies(bc.left, Implies(a, bc.left))))
    return mp(ab, mp(abc, s))


def instantiate_many(pi: ProofTree, pairs) -> ProofTree:
    for x, t in pairs:
        pi = instantiate(pi, x, t)
    return pi


# -- golden proofs ------------------------------------------------------------------

def golden_proofs() -> list:
    """Twenty accepted proofs in PA: (name, target, tree)."""
    from .formula import num
    x1, x2, x3 = Var(1), Var(2), Var(3)
    z, one = Zero(), Succ(Zero())

    def sym() -> ProofTree:                     # x1 = x2 → x2 = x1
        e2 = axiom(Implies(Eq(x1, x2), Implies(Eq(x1, x1), Eq(x2, x1))))
        return drop_middle(e2, axiom(Eq(x1, x1)))

    def trans() -> ProofTree:                   # x1 = x2 → (x2 = x3 → x1 = x3)
        e2 = axiom(Implies(Eq(x2, x1), Implies(Eq(x2, x3), Eq(x1, x3))))
        return syllogism(sym(), e2)

    def cong() -> ProofTree:                    # x1 = x2 → S x1 = S x2
        e2 = axiom(Implies(Eq(x1, x2), Implies(Eq(Succ(x1), Succ(x1)), Eq(Succ(x1), Succ(x2)))))
        return drop_middle(e2, axiom(Eq(Succ(x1), Succ(x1))))

    def zero_plus_one() -> ProofTree:           # 0 + S0 = S0
        p4 = axiom(Eq(Add(z, one), Succ(Add(z, z))))
        c = mp(axiom(Eq(Add(z, z), z)), instantiate_many(cong(), [(1, Add(z, z)), (2, z)]))
        t = instantiate_many(trans(), [(1, Add(z, one)), (2, Succ(Add(z, z))), (3, one)])
        return mp(c, mp(p4, t))

    def left_zero() -> ProofTree:               # ∀x1 (0 + x1 = x1)
        phi = Eq(Add(z, x1), x1)
        base = axiom(Eq(Add(z, z), z))
        p4 = axiom(Eq(Add(z, Succ(x1)), Succ(Add(z, x1))))
        c = instantiate_many(cong(), [(1, Add(z, x1)), (2, x1)])
        t = instantiate_many(trans(), [(1, Add(z, Succ(x1))), (2, Succ(Add(z, x1))), (3, Succ(x1))])
        step = gen(syllogism(c, mp(p4, t)), 1)
        ind = axiom(Implies(substitute(phi, 1, z), Implies(step.formula, ForAll(1, phi))))
        return mp(step, mp(base, ind))

    def contra() -> ProofTree:                  # S0 = 0 → 0 = 0
        p1 = axiom(Not(Eq(one, z)))
        k = mp(p1, axiom(Implies(Not(Eq(one, z)), Implies(Not(Eq(z, z)), Not(Eq(one, z))))))
        c = axiom(Implies(k.formula, Implies(Eq(one, z), Eq(z, z))))
        return mp(k, c)

    refl = gen(axiom(Eq(x1, x1)), 1)
    q2_phi = Eq(x1, x1)
    q2 = mp(gen(identity(q2_phi), 1),
            axiom(Implies(ForAll(1, Implies(q2_phi, q2_phi)),
                          Implies(ForAll(1, q2_phi), ForAll(1, q2_phi)))))
    q3 = restate(mp(axiom(Eq(z, z)), axiom(Implies(Eq(z, z), ForAll(1, Eq(z, z))))))
    proofs = [
        ("refl-zero", axiom(Eq(z, z))),
        ("refl-numeral", axiom(Eq(num(5), num(5)))),
        ("identity", identity(Eq(z, z))),
        ("refl-general", refl),
        ("succ-nonzero", axiom(Not(Eq(one, z)))),
        ("plus-zero", axiom(Eq(Add(z, z), z))),
        ("plus-zero-general", gen(axiom(Eq(Add(x1, z), x1)), 1)),
        ("plus-zero-instance", instantiate(axiom(Eq(Add(x1, z), x1)), 1, one)),
        ("refl-instance", mp(refl, axiom(Implies(refl.formula, Eq(z, z))))),
        ("symmetry", sym()),
        ("transitivity", trans()),
        ("succ-congruence", cong()),
        ("succ-injective", mp(axiom(Eq(one, one)), axiom(Implies(Eq(one, one), Eq(z, z))))),
        ("not-below-zero", gen(axiom(Not(Lt(x1, z))), 1)),
        ("zero-plus-one", zero_plus_one()),
        ("left-zero", left_zero()),
        ("symmetry-closed", gen(gen(sym(), 2), 1)),
        ("forall-distribution", q2),
        ("vacuous-forall", q3),
        ("contraposition", contra()),
    ]
    return [(name, tree.formula, tree) for name, tree in proofs]


# -- mutation -----------------------------------------------------------------------

def _mutate_term(t: Term, rng) -> Term:
    choice = rng.randrange(4)
    if choice == 0:
        return Succ(t)
    if choice == 1 and isinstance(t, Succ):
        return t.arg
    if choice == 2:
        return Add(t, Zero())
    return Var(rng.randint(1, 4)) if not isinstance(t, Var) else Var(t.index % 4 + 1)


def mutate_formula(f: Formula, rng) -> Formula:
    """A random local edit of a core formula."""
    if isinstance(f, (Eq, Lt)):
        c = rng.randrange(4)
        if c == 0:
            return (Lt if isinstance(f, Eq) else Eq)(f.left, f.right)
        if c == 1:
            return type(f)(f.right, f.left) if f.left != f.right else type(f)(Succ(f.left), f.right)
        if c == 2:
            return type(f)(_mutate_term(f.left, rng), f.right)
        return type(f)(f.left, _mutate_term(f.right, rng))
    c = rng.randrange(3)
    if c == 0:
        return Not(f)
    if isinstance(f, Not):
        return f.arg if c == 1 else Not(mutate_formula(f.arg, rng))
    if isinstance(f, Implies):
        if c == 1:
            return Implies(mutate_formula(f.left, rng), f.right)
        return Implies(f.left, mutate_formula(f.right, rng))
    if c == 1:
        return ForAll(f.var % 4 + 1, f.body)
    return ForAll(f.var, mutate_formula(f.body, rng))


def mutate(pi: ProofTree, rng) -> ProofTree:
    """One single-node mutation: formula edit, rule swap, child drop or child swap."""
    nodes = list(pi.nodes())
    while True:
        path, node = nodes[rng.randrange(len(nodes))]
        kind = rng.randrange(4)
        if kind == 0:
            new = ProofTree(mutate_formula(normalize(node.formula), rng), node.rule, node.children, node.var)
        elif kind == 1:
            rule = rng.choice([r for r in _ARITY if r != node.rule])
            var = rng.randint(1, 3) if rule == GEN else None
            new = ProofTree(node.formula, rule, node.children, var)
        elif kind == 2:
            if not node.children:
                continue
            kids = list(node.children)
            del kids[rng.randrange(len(kids))]
            new = ProofTree(node.formula, node.rule, tuple(kids), node.var)
        else:
            if len(node.children) == 2:
                new = ProofTree(node.formula, node.rule, node.children[::-1], node.var)
            elif node.rule == GEN:
                new = ProofTree(node.formula, node.rule, node.children, node.var % 4 + 1)
            else:
                continue
        out = pi.replace(path, new)
        if out != pi:
            return out
