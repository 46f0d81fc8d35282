import random

import pytest

from ptarith.families import EVEN, REFL
from ptarith.formula import Eq, ForAll, Implies, Succ, Var, Zero, num
from ptarith.proof import (
    PA, ProofError, ProofTree, axiom, check_proof, decode_tree, gen, godel_number_tree, golden_proofs,
    identity, mp, mutate, parse_sexpr, prover_proves, restate, to_sexpr,
)
from ptarith.programs import axiom_prover, null_prover

x1 = Var(1)


@pytest.fixture(scope="module")
def golden():
    return golden_proofs()


def test_golden_proofs_accepted(golden):
    assert len(golden) == 20
    assert len({name for name, _, _ in golden}) == 20
    for name, target, pi in golden:
        assert check_proof(PA, target, pi).accepted, name


def test_golden_proofs_do_not_prove_other_targets(golden):
    for (n1, t1, pi), (n2, t2, _) in zip(golden, golden[1:] + golden[:1]):
        if t1 != t2:
            assert not check_proof(PA, t2, pi).accepted, (n1, n2)


def test_sexpr_round_trip(golden):
    for _, target, pi in golden:
        again = parse_sexpr(to_sexpr(pi))
        assert check_proof(PA, target, again).accepted


def test_code_round_trip(golden):
    for _, target, pi in golden:
        back = decode_tree(godel_number_tree(pi))
        assert back is not None and check_proof(PA, target, back).accepted


def test_decode_tree_rejects_junk():
    assert decode_tree(0) is None
    assert decode_tree(0b10) is None
    assert decode_tree(12345) is None


def test_identity_combinator():
    f = Eq(x1, Zero())
    assert check_proof(PA, Implies(f, f), identity(f)).accepted


def test_rejection_points_at_the_failing_node():
    leaf = axiom(Eq(x1, Succ(x1)))                   # not an axiom
    res = check_proof(PA, Eq(x1, Succ(x1)), leaf)
    assert not res.accepted and res.step == "leaf-axiom" and res.path == ()
    good = axiom(Eq(x1, x1))
    with pytest.raises(ProofError):
        mp(good, axiom(Implies(Eq(x1, Zero()), Eq(Zero(), Zero()))))
    bad_mp = ProofTree(Eq(Zero(), Zero()), "mp", (good, axiom(Implies(Eq(x1, Zero()), Eq(Zero(), Zero())))))
    assert check_proof(PA, Eq(Zero(), Zero()), bad_mp).step == "inference"
    assert check_proof(PA, Eq(Zero(), Zero()), restate(good)).step == "root"


def test_generalization():
    pi = gen(axiom(Eq(x1, x1)), 1)
    assert check_proof(PA, ForAll(1, Eq(x1, x1)), pi).accepted


def test_mutants_rejected(golden):
    rng = random.Random(3)
    for i in range(200):
        _, target, pi = golden[i % len(golden)]
        assert not check_proof(PA, target, mutate(pi, rng)).accepted


def test_parse_errors():
    for text in ('(node "0=0")', '(node "0=0" frob)', '(node "0=0" gen y1 (node "0=0" axiom))',
                 '(node "0=0" axiom) extra'):
        with pytest.raises(ProofError):
            parse_sexpr(text)


def test_numeral_targets_compare_compactly():
    pi = axiom(Eq(num(40), num(40)))
    assert check_proof(PA, REFL.instance(40), pi).accepted
    assert not check_proof(PA, REFL.instance(41), pi).accepted


def test_provers():
    assert prover_proves(PA, axiom_prover(1), REFL, 5)
    assert not prover_proves(PA, axiom_prover(2), REFL, 5)
    assert not prover_proves(PA, null_prover(), REFL, 5)
    assert not prover_proves(PA, axiom_prover(1), EVEN, 4)     # not an axiom instance
