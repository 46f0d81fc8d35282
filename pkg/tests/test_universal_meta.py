import pytest

from ptarith.classify import classify
from ptarith.decision import decide
from ptarith.families import EVEN, IRREFL, REFL
from ptarith.formula import FormulaFamily, Len, Not, Var, num
from ptarith.machines import machine
from ptarith.meta import ca_formula, cd_formula, cr_formula, decsat_formula, pr_formula
from ptarith.programs import kernel_checker, null_prover
from ptarith.proof import PA
from ptarith.tm import encode_machine, universal_ptm
from ptarith.universal import PlainInput, Scope, acc_formula

FLAGS = {"ca": ca_formula, "cr": cr_formula, "cd": cd_formula}


def _acc_family(code: int) -> FormulaFamily:
    sc = Scope(2)
    f = acc_formula(sc, num(code), PlainInput(Var(1)), Len(Var(1)))
    hints = sc.hints
    return FormulaFamily(f, (1,), "bitlen", "acc", hint_fn=lambda a: hints)


@pytest.mark.parametrize("name", ["accept-all", "reject-all", "parity", "bit-flip"])
def test_acceptance_formula_matches_runs(name):
    code = encode_machine(machine(name), 1)
    fam = _acc_family(code)
    for a in range(8):
        assert fam.truth(a) == universal_ptm(code, a).accepted, a


@pytest.mark.parametrize("flag", sorted(FLAGS))
@pytest.mark.parametrize("name", ["accept-all", "reject-all", "parity"])
def test_decision_formulas_match_decide(name, flag):
    e = encode_machine(machine(name), 1)
    for fam in (REFL, IRREFL, EVEN):
        F = FLAGS[flag](fam)
        for a in range(3):
            assert F.truth(e, a) == getattr(decide(e, fam, a), flag), (fam.describe(), a)


def test_provability_formula_false_for_program_prover():
    F = pr_formula(kernel_checker(PA), REFL)
    assert not F.truth(null_prover(), 1)


def test_decsat_free_variables():
    d = decsat_formula()
    assert len(d.vars) == 2
    assert d.describe() == "DecSAT"


def test_decsat_matrix_class_depends_on_fixed_code():
    d = decsat_formula()
    fixed = classify(Not(d.formula), params=(d.vars[0],))
    free = classify(Not(d.formula))
    assert (fixed.kind, fixed.sigma, fixed.pi) == ("DeltaP", 2, 2)
    assert fixed.sigma <= free.sigma
