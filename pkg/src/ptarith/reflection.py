"""Fixed points of the universal machine and the Gödel-sentence machines.

quine(t) = compose(A_b, b) where b = SELF-B(t) and A_b writes the prefix
1 · (b with every bit doubled) · 01  in front of its input.  A_b is the
print-prefix program by default; with plain=True it is an explicit
Turing machine with one state per prefix bit (much larger codes).  Running the composition on w hands SELF-B the number
[prefix · w]; SELF-B reads b back from the prefix, rebuilds k = compose(A_b, b)
and runs t on the pair (k, w).  Hence U(k, w) = U(t, (k, w)).

Reading its own code is charged nothing unless the run context asks for
construction steps to be counted.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .formula import FormulaFamily, Len, Var
from .godel import pair
from .programs import GODEL_DECISION, GODEL_PROOF, PRINT_PREFIX, SELF_B, theory_id
from .tm import (
    MOVES, TMDescription, bits_of, compose_code, encode_machine, program_code, universal_ptm,
)

FLAVOR_CA, FLAVOR_CR = 0, 1


def printed_prefix(b: int) -> str:
    return "1" + "".join(ch * 2 for ch in bits_of(b)) + "01"


@lru_cache(maxsize=64)
def printer_machine(prefix: str) -> TMDescription:
    """Plain machine writing `prefix` to the left of its input, then accepting."""
    n = len(prefix)
    states = ["s"] + [f"w{i}" for i in range(n)] + ["acc", "rej"]
    alphabet = ("0", "1", "_")
    delta = {}
    for y in alphabet:
        delta[("s", y)] = ("w0", y, MOVES[0])
    for i in range(n):
        nxt = f"w{i + 1}" if i + 1 < n else "acc"
        for y in alphabet:
            delta[(f"w{i}", y)] = (nxt, prefix[n - 1 - i], MOVES[0])
    return TMDescription(states, alphabet, "s", "acc", "rej", delta, name="printer")


def split_printed(m: int):
    """(b, w) from the number [prefix(b) · w], or None."""
    s = bits_of(m)
    if not s.startswith("1"):
        return None
    i, bits = 1, []
    while i + 1 < len(s) and s[i:i + 2] != "01":
        if s[i] != s[i + 1]:
            return None
        bits.append(s[i])
        i += 2
    rest = s[i + 2:]
    if s[i:i + 2] != "01" or not bits or not rest:
        return None
    return int("".join(bits), 2), int(rest, 2)


@lru_cache(maxsize=64)
def quine_of_b(b: int, plain: bool = False) -> int:
    if plain:
        printer = encode_machine(printer_machine(printed_prefix(b)), 1)
    else:
        printer = program_code(PRINT_PREFIX, [b])
    return compose_code(printer, b)


def quine(t: int, plain: bool = False) -> int:
    """A code k with U(k, w) = U(t, (k, w)) for every w."""
    return quine_of_b(program_code(SELF_B, [t, int(plain)]), plain)


@dataclass(frozen=True)
class QuineRecipe:
    template: int
    fixed_point: int

    def check(self, w: int) -> bool:
        lhs = universal_ptm(self.fixed_point, w)
        rhs = universal_ptm(self.template, pair(self.fixed_point, w))
        return (lhs.kind, lhs.output_value) == (rhs.kind, rhs.output_value)


def recipe(t: int, plain: bool = False) -> QuineRecipe:
    return QuineRecipe(t, quine(t, plain))


# -- Gödel sentences ----------------------------------------------------------------

_RHO: dict = {}


def rho_family(k: int) -> FormulaFamily:
    """The family ρ_k(x) ≡ "machine k accepts x within |x|^c steps".

    Its formula is the arithmetized acceptance of k; since k is a composed
    code that formula is false at every instance, so the family carries the
    semantic truth of the statement for machines that need it.
    """
    got = _RHO.get(k)
    if got is not None:
        return got
    from .families import register_family
    from .universal import PlainInput, Scope, acc_formula
    sc = Scope(2)
    f = acc_formula(sc, _numeral(k), PlainInput(Var(1)), Len(Var(1)))
    hints = sc.hints
    tag = hashlib.sha256(k.to_bytes((k.bit_length() + 7) // 8 or 1, "big")).hexdigest()[:16]
    fam = FormulaFamily(f, (1,), "bitlen", f"rho[{tag}]", hint_fn=lambda a: hints)
    register_family(fam, truth_fn=lambda a: _accepts(k, a))
    _RHO[k] = fam
    return fam


_ACTIVE: set = set()
_DIVERGENT: set = set()


def _accepts(k: int, a: int) -> bool:
    """Truth of ρ_k(a) by running k.

    A run that asks for the truth of its own sentence (through a verifier
    that evaluates truth) never finishes: each level simulates the next.
    Such a re-entry is detected and the whole evaluation reported as out
    of fuel, at every nesting level alike.
    """
    from .evaluate import FuelExhausted
    key = (k, a)
    if key in _ACTIVE or key in _DIVERGENT:
        _DIVERGENT.add(key)
        raise FuelExhausted(f"truth of rho[{a}] depends on itself")
    _ACTIVE.add(key)
    try:
        accepted = universal_ptm(k, a).accepted
    finally:
        _ACTIVE.discard(key)
    if key in _DIVERGENT:
        raise FuelExhausted(f"truth of rho[{a}] depends on itself")
    return accepted


def _numeral(k: int):
    from .formula import num
    return num(k)


def godel_proof_machine(T, e: int) -> tuple:
    """(e', ρ): e' accepts x iff prover e's output on (p, ⌜ρ⌝, x) is not a proof of ρ(x)."""
    k = quine(program_code(GODEL_PROOF, [theory_id(T), e]))
    return k, rho_family(k)


def godel_decision_machine(flavor: int, e: int, v: int) -> tuple:
    """The CA (flavor 0) or CR (flavor 1) self-referential decision machine and its family."""
    if flavor not in (FLAVOR_CA, FLAVOR_CR):
        raise ValueError("flavor is 0 (CA) or 1 (CR)")
    k = quine(program_code(GODEL_DECISION, [flavor, e, v]))
    return k, rho_family(k)
