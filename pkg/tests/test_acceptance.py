"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
from __future__ import annotations

import itertools
import random
import time

import pytest

from ptarith.classify import classify
from ptarith.cnf import circuit_to_cnf, extend_to_model, restrict_model
from ptarith.decision import decide
from ptarith.evaluate import UnboundedQuantifier, eval_bounded
from ptarith.families import EVEN, IRREFL, REFL
from ptarith.formula import Exists, ForAll, Not, Var
from ptarith.godel import decode_seq, encode_seq
from ptarith.machines import corpus, machine
from ptarith.meta import decsat_formula, pnp_sentence, sat_family
from ptarith.programs import (
    ECHO, accept_all, corpus_provers, reject_all, templates, tiny_sat_decider,
)
from ptarith.proof import PA, check_proof, golden_proofs, mutate, prover_proves
from ptarith.reflection import godel_proof_machine, recipe
from ptarith.rho import to_pa_formula
from ptarith.sat import solve, sat_relation
from ptarith.tableau import eval_circuit, tableau
from ptarith.tm import bits_of, encode_machine, program_code, run_bounded


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, seconds: float):
        with capsys.disabled():
            print(f"\ncriterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.2f}s]")
        assert ok, detail
    return emit


def _inputs(n: int):
    return ("".join(b) for b in itertools.product("01", repeat=n))


def test_c01_codec_golden(report):
    encode_seq([3, 4, 5])                     # warm-up, so the timing sees the codec alone
    t = time.perf_counter()
    g = encode_seq([3, 4, 5])
    dt = time.perf_counter() - t
    ok = format(g, "b") == "11101101101011011111" and dt < 1e-3
    report(1, ok, f"encode_seq([3,4,5]) = {g:b}", dt)


def test_c02_codec_bijective(report):
    t = time.perf_counter()
    rng = random.Random(2)
    trips = 0
    for _ in range(10_000):
        xs = [rng.randrange(1 << 16) for _ in range(rng.randint(1, 8))]
        trips += decode_seq(encode_seq(xs)) == xs
    codes = 0
    for g in range(1 << 20):
        xs = decode_seq(g)
        codes += xs is not None
    dt = time.perf_counter() - t
    ok = trips == 10_000 and dt < 10
    report(2, ok, f"{trips}/10000 round trips; decode total on [0, 2^20) ({codes} codes)", dt)


def test_c03_tableau_equivalence(report):
    t = time.perf_counter()
    checked = mismatches = 0
    for name, m in corpus().items():
        for c in (1, 2):
            for n in range(1, 6):
                C = tableau(m, c, n)
                for bits in _inputs(n):
                    # n^c rows hold n^c configurations: n^c - 1 transitions
                    want = run_bounded(m, bits, n ** c - 1).accepted
                    mismatches += eval_circuit(C, bits) != want
                    checked += 1
    dt = time.perf_counter() - t
    ok = mismatches == 0 and dt < 60
    report(3, ok, f"{checked} (machine, c, input) cases, {mismatches} mismatches", dt)


def test_c04_gate_count(report):
    t = time.perf_counter()
    bad = []
    for name, m in corpus().items():
        for c in (1, 2):
            for n in range(1, 6):
                C = tableau(m, c, n)
                if C.gate_count != (n ** c) ** 2 * (3 + 3 * len(m.states)):
                    bad.append((name, c, n))
    report(4, not bad, f"gate count law, failures: {bad}", time.perf_counter() - t)


def test_c05_cnf_fidelity(report):
    t = time.perf_counter()
    cases = bad = 0
    for name, m in corpus().items():
        for c in (1, 2):
            for n in range(1, 5):
                C = tableau(m, c, n)
                tr = circuit_to_cnf(C, force_accept=True)
                model = solve(tr.cnf)
                accepted = [b for b in _inputs(n) if eval_circuit(C, b)]
                ok = (model is not None) == bool(accepted)
                if model is not None:
                    ok = ok and eval_circuit(C, restrict_model(tr, model))
                ok = ok and all(tr.cnf.satisfied_by(extend_to_model(tr, b)) for b in accepted)
                cases += 1
                bad += not ok
    dt = time.perf_counter() - t
    report(5, bad == 0 and dt < 60, f"{cases} CNFs, {bad} disagreements with brute force", dt)


def test_c06_formula_fidelity(report):
    t = time.perf_counter()
    cases = bad = 0
    for name, m in corpus().items():
        for c in (1, 2):
            fam = to_pa_formula(m, c)
            for a in range(16):                  # |a| <= 4
                bits = bits_of(a)
                n = len(bits)
                want = run_bounded(m, bits, n ** c - 1).accepted
                circuit = eval_circuit(tableau(m, c, n), bits)
                bad += not (fam.truth(a) == circuit == want)
                cases += 1
    dt = time.perf_counter() - t
    report(6, bad == 0 and dt < 120, f"{cases} instances, {bad} disagreements", dt)


def test_c07_kernel_fuzz(report):
    t = time.perf_counter()
    golden = golden_proofs()
    accepted = sum(check_proof(PA, target, pi).accepted for _, target, pi in golden)
    rng = random.Random(7)
    leaked = 0
    for i in range(1000):
        _, target, pi = golden[i % len(golden)]
        mutant = mutate(pi, rng)
        leaked += check_proof(PA, target, mutant).accepted
    ok = len(golden) == 20 and accepted == 20 and leaked == 0
    report(7, ok, f"golden accepted {accepted}/{len(golden)}; mutants accepted {leaked}/1000",
           time.perf_counter() - t)


def test_c08_quine_law(report):
    t = time.perf_counter()
    failures = []
    for name, code in templates().items():
        r = recipe(code)
        failures += [(name, w) for w in range(256) if not r.check(w)]
    report(8, not failures, f"3 templates x 256 inputs, failures: {failures[:5]}",
           time.perf_counter() - t)


def test_c09_incompleteness_shadow(report):
    t = time.perf_counter()
    proved = []
    for name, e in corpus_provers().items():
        _, fam = godel_proof_machine(PA, e)
        proved += [(name, x) for x in range(4) if prover_proves(PA, e, fam, x)]
    report(9, not proved, f"{len(corpus_provers())} provers x 4 inputs, kernel-accepted: {proved}",
           time.perf_counter() - t)


def _sweep_machines() -> list:
    return [accept_all(), reject_all(), tiny_sat_decider(), program_code(ECHO),
            encode_machine(machine("parity"), 1), encode_machine(machine("bit-flip"), 2),
            encode_machine(machine("loop"), 1)]


def test_c10_decision_semantics(report):
    t = time.perf_counter()
    outcomes = []
    per = -(-10_000 // (len(_sweep_machines()) * 3))
    for e in _sweep_machines():
        for fam in (REFL, IRREFL, EVEN):
            outcomes += [decide(e, fam, a) for a in range(per)]
    algebra = all(o.cd == (o.ca or o.cr) and not (o.ca and o.cr) for o in outcomes)
    e = tiny_sat_decider()
    misses = [x for x in range(1 << 10) if not decide(e, sat_family(), x, oracle=sat_relation).cd]
    ok = len(outcomes) >= 10_000 and algebra and not misses
    report(10, ok, f"flag algebra on {len(outcomes)} outcomes: {algebra}; SAT decider misses: {misses[:5]}",
           time.perf_counter() - t)


def test_c11_structure(report):
    t = time.perf_counter()
    s = pnp_sentence()
    d = decsat_formula()
    e_var, x_var = d.vars
    shape = (isinstance(s, ForAll) and s.var == e_var and s.bound is None
             and isinstance(s.body, ForAll) and s.body.bound is None
             and isinstance(s.body.body, Exists) and s.body.body.var == x_var
             and s.body.body.ge and s.body.body.bound == Var(s.body.var)
             and s.body.body.body == Not(d.formula))
    cls = classify(Not(d.formula), params=(e_var,))
    try:
        eval_bounded(s)
        unbounded = False
    except UnboundedQuantifier:
        unbounded = True
    ok = shape and cls.kind == "DeltaP" and cls.sigma == 2 and cls.pi == 2 and unbounded
    report(11, ok, f"prefix ∀∀∃≥ over ¬DecSAT: {shape}; class {cls}", time.perf_counter() - t)
