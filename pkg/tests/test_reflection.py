import pytest

from ptarith.evaluate import FuelExhausted
from ptarith.families import family_truth
from ptarith.proof import PA, prover_proves
from ptarith.programs import (
    accept_all, axiom_prover, null_prover, reject_all, templates, truth_verifier,
)
from ptarith.reflection import (
    FLAVOR_CA, FLAVOR_CR, godel_decision_machine, godel_proof_machine, printed_prefix,
    printer_machine, quine, recipe, rho_family, split_printed,
)
from ptarith.decision import decide, decide_v
from ptarith.tm import run_bounded, universal_ptm


def test_split_printed_inverts_prefix():
    for b in (1, 2, 5, 77, 1 << 20):
        for w in (1, 6, 255):
            m = int(printed_prefix(b) + format(w, "b"), 2)
            assert split_printed(m) == (b, w)
    assert split_printed(0b1011) is None          # odd pair before the marker


def test_printer_machine_writes_prefix():
    prefix = printed_prefix(5)
    v = run_bounded(printer_machine(prefix), "110", 100)
    assert v.accepted and v.output == prefix + "110"


@pytest.mark.parametrize("name", ["first", "second", "odd-gate"])
def test_quine_law_program_printer(name):
    r = recipe(templates()[name])
    assert all(r.check(w) for w in range(32))


def test_first_component_quine_prints_itself():
    k = quine(templates()["first"])
    assert universal_ptm(k, 9).output_value == k


def test_quine_law_plain_printer():
    r = recipe(templates()["second"], plain=True)
    assert all(r.check(w) for w in range(4))


def test_godel_proof_machine_escapes_provers():
    for e in (null_prover(), axiom_prover(1)):
        k, fam = godel_proof_machine(PA, e)
        for x in range(3):
            assert not prover_proves(PA, e, fam, x)
            assert family_truth(fam, x)            # unprovable, hence the machine accepts


def test_rho_family_is_cached():
    k, fam = godel_proof_machine(PA, null_prover())
    assert rho_family(k) is fam
    assert fam.describe().startswith("rho[")


def test_decision_machine_with_unsound_verifier():
    # CA_v holds for accept-all checked by accept-all, so the sentence is false
    k, fam = godel_decision_machine(FLAVOR_CA, accept_all(), accept_all())
    assert decide_v(accept_all(), accept_all(), fam, 2).ca
    assert not family_truth(fam, 2)


def test_decision_machine_cr_dual():
    k, fam = godel_decision_machine(FLAVOR_CR, reject_all(), reject_all())
    assert decide_v(reject_all(), reject_all(), fam, 2).cr
    assert family_truth(fam, 2)


def test_self_dependent_truth_is_unknown():
    k, fam = godel_decision_machine(FLAVOR_CA, accept_all(), truth_verifier())
    with pytest.raises(FuelExhausted):
        family_truth(fam, 1)
    o = decide(accept_all(), fam, 1)
    assert o.truth is None and not o.cd


def test_flavor_checked():
    with pytest.raises(ValueError):
        godel_decision_machine(2, accept_all(), accept_all())


def test_construction_charging_modes_agree_on_verdicts():
    from ptarith.tm import RunContext
    k, _ = godel_proof_machine(PA, null_prover())
    free = [universal_ptm(k, x, ctx=RunContext(count_construction=False)) for x in range(3)]
    charged = [universal_ptm(k, x, ctx=RunContext(count_construction=True)) for x in range(3)]
    assert [v.kind for v in free] == [v.kind for v in charged] == ["accept"] * 3
    assert all(c.steps_used > f.steps_used for f, c in zip(free, charged))
