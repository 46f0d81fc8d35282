"""ASCII concrete syntax for terms and formulas.

Terms:    0 | S t | t + t | t * t | xN | #N | len(t) | bit(t, t) | monus(t, t) | pow(t, t)
Formulas: t = t | t < t | !f | f & f | f | f | f -> f | f <-> f
          | A xN. f | E xN. f | E! xN. f | A xN < t. f | E xN < t. f
          | A xN >= t. f | E xN >= t. f | E! xN < t. f

Binding strength, loosest first: <->, -> (right associative), |, &, !.
Quantifier bodies extend as far to the right as possible.
"""
from __future__ import annotations

import re

from .formula import (
    Add, And, Bit, Eq, Exists, ExistsUnique, ForAll, Formula, FormulaError,
    Iff, Implies, Len, Lt, Monus, Mul, Not, Numeral, Or, Pow, Succ, Term, Var, Zero,
)


class ParseError(FormulaError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(<->|->|>=|E!|len|bit|monus|pow|x\d+|#\d+|[A-Za-z]|\d+|[()=<!&|+*.,])")
_FUNCS = {"len": (Len, 1), "bit": (Bit, 2), "monus": (Monus, 2), "pow": (Pow, 2)}


def _tokenize(text: str) -> list:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("<eof>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.toks[self.i][0]

    @property
    def pos(self) -> int:
        return self.toks[self.i][1]

    def fail(self, msg: str):
        raise ParseError(msg, self.pos)

    def eat(self, tok: str):
        if self.tok != tok:
            self.fail(f"expected {tok!r}, found {self.tok!r}")
        self.i += 1

    # formulas
    def formula(self) -> Formula:
        left = self.implication()
        while self.tok == "<->":
            self.i += 1
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.tok == "->":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.tok == "|":
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.tok == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        t = self.tok
        if t == "!":
            self.i += 1
            return Not(self.unary())
        if t in ("A", "E", "E!"):
            return self.quantifier()
        if t == "(":
            save = self.i
            try:
                return self.atom()
            except ParseError:
                self.i = save
            self.eat("(")
            inner = self.formula()
            self.eat(")")
            return inner
        return self.atom()

    def quantifier(self) -> Formula:
        kind = self.tok
        self.i += 1
        if not re.fullmatch(r"x\d+", self.tok) or int(self.tok[1:]) < 1:
            self.fail("expected a variable xN")
        var = int(self.tok[1:])
        self.i += 1
        bound, ge = None, False
        if self.tok in ("<", ">="):
            ge = self.tok == ">="
            if ge and kind == "E!":
                self.fail("E! takes only a strict upper bound")
            self.i += 1
            bound = self.term()
        self.eat(".")
        body = self.formula()
        if kind == "A":
            return ForAll(var, body, bound, ge)
        if kind == "E":
            return Exists(var, body, bound, ge)
        return ExistsUnique(var, body, bound)

    def atom(self) -> Formula:
        left = self.term()
        if self.tok == "=":
            self.i += 1
            return Eq(left, self.term())
        if self.tok == "<":
            self.i += 1
            return Lt(left, self.term())
        self.fail(f"expected '=' or '<', found {self.tok!r}")

    # terms
    def term(self) -> Term:
        left = self.product()
        while self.tok == "+":
            self.i += 1
            left = Add(left, self.product())
        return left

    def product(self) -> Term:
        left = self.prefix()
        while self.tok == "*":
            self.i += 1
            left = Mul(left, self.prefix())
        return left

    def prefix(self) -> Term:
        t = self.tok
        if t == "S":
            self.i += 1
            return Succ(self.prefix())
        if t == "0":
            self.i += 1
            return Zero()
        if re.fullmatch(r"x\d+", t):
            if int(t[1:]) < 1:
                self.fail("variables start at x1")
            self.i += 1
            return Var(int(t[1:]))
        if t.startswith("#"):
            self.i += 1
            n = int(t[1:])
            return Zero() if n == 0 else Succ(Zero()) if n == 1 else Numeral(n)
        if t in _FUNCS:
            cls, arity = _FUNCS[t]
            self.i += 1
            self.eat("(")
            args = [self.term()]
            for _ in range(arity - 1):
                self.eat(",")
                args.append(self.term())
            self.eat(")")
            return cls(*args)
        if t == "(":
            self.i += 1
            inner = self.term()
            self.eat(")")
            return inner
        self.fail(f"unexpected token {t!r}")


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok != "<eof>":
        p.fail(f"unexpected trailing {p.tok!r}")
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok != "<eof>":
        p.fail(f"unexpected trailing {p.tok!r}")
    return t


def print_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Succ):
        return "S " + print_term(t.arg)
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Numeral):
        return f"#{t.value}"
    if isinstance(t, Add):
        return f"({print_term(t.left)} + {print_term(t.right)})"
    if isinstance(t, Mul):
        return f"({print_term(t.left)} * {print_term(t.right)})"
    if isinstance(t, Len):
        return f"len({print_term(t.arg)})"
    if isinstance(t, Bit):
        return f"bit({print_term(t.arg)}, {print_term(t.index)})"
    if isinstance(t, Monus):
        return f"monus({print_term(t.left)}, {print_term(t.right)})"
    if isinstance(t, Pow):
        return f"pow({print_term(t.base)}, {print_term(t.exp)})"
    raise FormulaError(f"not a term: {t!r}")


_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def print_formula(f: Formula) -> str:
    return _print(f, top=True)


def _print(f: Formula, top: bool = False) -> str:
    if isinstance(f, Eq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Lt):
        return f"{print_term(f.left)} < {print_term(f.right)}"
    if isinstance(f, Not):
        return "!" + _print(f.arg)
    if type(f) in _OPS:
        return f"({_print(f.left)} {_OPS[type(f)]} {_print(f.right)})"
    head = {ForAll: "A", Exists: "E", ExistsUnique: "E!"}[type(f)]
    text = f"{head} x{f.var}"
    if f.bound is not None:
        op = ">=" if getattr(f, "ge", False) else "<"
        text += f" {op} {print_term(f.bound)}"
    text += ". " + _print(f.body, top=True)
    return text if top else f"({text})"
