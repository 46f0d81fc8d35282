"""Registry of formula families by code, so machines can look up ⌜Φ⌝.

A family may carry a semantic truth function.  Families whose formula
cannot be evaluated at desk scale (the self-referential ones) use it in
place of formula evaluation.
"""
from __future__ import annotations

from typing import Callable

from .formula import Add, Eq, Exists, FormulaFamily, Lt, Succ, Var

_FAMILIES: dict = {}
_TRUTH: dict = {}


def register_family(fam: FormulaFamily, truth_fn: Callable[[int], bool] | None = None) -> FormulaFamily:
    _FAMILIES[fam.code] = fam
    if truth_fn is not None:
        _TRUTH[fam.code] = truth_fn
    return fam


def family_from_code(code: int) -> FormulaFamily | None:
    _builtins()
    return _FAMILIES.get(code)


def family_truth(fam: FormulaFamily, a: int, fuel: int | None = None) -> bool:
    """Standard-model truth of φ(a), semantically when the family has an oracle."""
    fn = _TRUTH.get(fam.code)
    return fn(a) if fn is not None else fam.truth(a, fuel=fuel)


x1, x2 = Var(1), Var(2)
REFL = FormulaFamily(Eq(x1, x1), (1,), "bitlen", "a=a")
IRREFL = FormulaFamily(Lt(x1, x1), (1,), "bitlen", "a<a")
EVEN = FormulaFamily(Exists(2, Eq(Add(x2, x2), x1), Succ(x1)), (1,), "bitlen", "even(a)")
_loaded = False


def _builtins():
    global _loaded
    if _loaded:
        return
    _loaded = True
    from .meta import sat_family
    for fam in (REFL, IRREFL, EVEN, sat_family()):
        register_family(fam)


def builtin_families() -> dict:
    _builtins()
    return {"refl": REFL, "irrefl": IRREFL, "even": EVEN, "sat": family_from_code(_sat_code())}


def _sat_code() -> int:
    from .meta import sat_family
    return sat_family().code
