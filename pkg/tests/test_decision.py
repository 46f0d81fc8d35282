import pytest

from ptarith.decision import asymptotic_scan, decide, decide_v
from ptarith.families import EVEN, IRREFL, REFL
from ptarith.machines import machine
from ptarith.programs import accept_all, axiom_prover, program_code, ECHO, reject_all, truth_verifier
from ptarith.tm import encode_machine


@pytest.mark.parametrize("fam", [REFL, IRREFL, EVEN])
@pytest.mark.parametrize("e", [accept_all(), reject_all(), program_code(ECHO)])
def test_flag_invariants(e, fam):
    for a in range(8):
        o = decide(e, fam, a)
        assert o.cd == (o.ca or o.cr)
        assert not (o.ca and o.cr)
        assert o.truth == fam.truth(a)


def test_accept_all_on_reflexivity_and_irreflexivity():
    assert decide(accept_all(), REFL, 3).ca
    o = decide(accept_all(), IRREFL, 3)
    assert not o.cd and o.verdict == "accept"
    assert decide(reject_all(), IRREFL, 3).cr


def test_timeout_counts_as_rejection():
    o = decide(encode_machine(machine("loop"), 1), IRREFL, 2)
    assert o.verdict == "timeout" and o.cr


def test_oracle_replaces_truth():
    o = decide(accept_all(), IRREFL, 1, oracle=lambda a: True)
    assert o.truth is True and o.ca


def test_decide_with_verifiers():
    assert decide_v(accept_all(), accept_all(), IRREFL, 4).ca      # an unsound verifier agrees
    assert decide_v(reject_all(), reject_all(), REFL, 4).cr
    assert decide_v(accept_all(), truth_verifier(), EVEN, 4).ca
    assert decide_v(accept_all(), truth_verifier(), EVEN, 5).verdict == "accept"
    assert not decide_v(accept_all(), truth_verifier(), EVEN, 5).cd


def test_verifier_timeout_leaves_truth_unknown():
    loop = encode_machine(machine("loop"), 1)
    o = decide_v(accept_all(), loop, REFL, 1, fuel=64)
    assert o.truth is None and not o.cd and "timeout" in o.diagnostic


def test_scan_patterns():
    assert asymptotic_scan(accept_all(), REFL, range(6)).pattern == "forall a"
    assert asymptotic_scan(accept_all(), IRREFL, range(6)).pattern == "none"
    assert asymptotic_scan(accept_all(), EVEN, range(6)).pattern == "exists a"
    assert asymptotic_scan(accept_all(), EVEN, []).pattern == "empty"


def test_prove_scan_fails_exactly_on_odd_inputs():
    rep = asymptotic_scan(axiom_prover(2), REFL, range(8), mode="prove")
    assert rep.failures == [1, 3, 5, 7]
    assert rep.first_failure == 1
    assert all(r.verdict == "proved" for r in rep.rows if r.a % 2 == 0)
    assert not any(r.cr for r in rep.rows)


def test_scan_csv():
    text = asymptotic_scan(reject_all(), EVEN, range(4)).to_csv()
    lines = text.splitlines()
    assert lines[0].startswith("# finite shadow")
    assert lines[1] == "a,verdict,truth,CA,CR,CD"
    assert lines[2] == "0,reject,true,0,0,0"
    assert lines[3] == "1,reject,false,0,1,1"


def test_scan_rejects_unknown_mode():
    with pytest.raises(ValueError):
        asymptotic_scan(accept_all(), REFL, range(2), mode="guess")
