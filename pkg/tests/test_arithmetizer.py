import itertools

import numpy as np
import pytest

from ptarith.cnf import circuit_to_cnf, extend_to_model, restrict_model
from ptarith.evaluate import eval_bounded
from ptarith.machines import corpus, machine
from ptarith.rho import build_eval, build_iset, build_rho, build_trans, rho_hints, run_witness, to_pa_formula
from ptarith.sat import brute_force, solve
from ptarith.tableau import (
    TableauError, emit_circuit, eval_circuit, lights, one_hot, tableau, transition_sets,
)
from ptarith.tm import parse_machine, run_bounded


def _inputs(n):
    return ["".join(b) for b in itertools.product("01", repeat=n)]


def test_gate_count_example():
    # three states, n = 3, c = 1: 9 cells of 12 elements
    m = machine("accept-all")
    assert tableau(m, 1, 3).gate_count == 108


def test_accept_in_one_step_accepts_everything_at_n2():
    C = tableau(machine("accept-all"), 1, 2)
    assert all(eval_circuit(C, b) for b in _inputs(2))


@pytest.mark.parametrize("name", sorted(corpus()))
def test_one_hot_lights(name):
    m = machine(name)
    for n in (1, 2, 3):
        C = tableau(m, 2, n)
        for b in _inputs(n):
            assert one_hot(lights(C, b))


def test_layer_zero_is_the_initial_configuration():
    m = machine("parity")
    C = tableau(m, 1, 3)
    row = lights(C, "101")[0]
    head = C.elements.head(m.start, 1)
    assert row[0].argmax() == head
    assert [row[j].argmax() for j in (1, 2)] == [0, 1]


def test_padding_cells_are_blank():
    C = tableau(machine("parity"), 2, 2)
    row = lights(C, "11")[0]
    assert all(row[j].argmax() == 2 for j in range(2, C.T))


def test_transition_sets_are_functional():
    sets = transition_sets(machine("bit-flip"))
    for cls, table in sets.items():
        seen = {}
        for s, triples in table.items():
            for t in triples:
                assert t not in seen, (cls, t)
                seen[t] = s


def test_tableau_guards():
    with pytest.raises(TableauError):
        tableau(machine("parity"), 3, 5, cap=100)
    with pytest.raises(TableauError):
        eval_circuit(tableau(machine("parity"), 1, 2), "101")
    odd = parse_machine("states: q0 a r\nstart: q0\naccept: a\nreject: r\nalphabet: 0 1 _ x\n"
                        "q0 0 -> a 0 R\nq0 1 -> a 0 R\nq0 _ -> a 0 R\nq0 x -> a 0 R\n")
    with pytest.raises(TableauError):
        tableau(odd, 1, 2)


def test_literal_step_budget_differs_only_without_output_cell():
    """n^c rows allow n^c - 1 steps; the literal n^c budget differs only when n^c = 1."""
    diffs = set()
    for name, m in corpus().items():
        for c in (1, 2):
            for n in range(1, 6):
                C = tableau(m, c, n)
                for b in _inputs(n):
                    if eval_circuit(C, b) != run_bounded(m, b, n ** c).accepted:
                        diffs.add((name, n ** c))
    assert diffs == {("accept-all", 1)}


def test_emitted_circuit_lists_every_gate():
    C = tableau(machine("reject-all"), 1, 2)
    lines = [l for l in emit_circuit(C).splitlines() if l.startswith("light")]
    assert len(lines) == C.gate_count


def test_cnf_accept_all_sat_for_every_input():
    C = tableau(machine("accept-all"), 1, 2)
    tr = circuit_to_cnf(C, force_accept=True)
    for b in _inputs(2):
        assert tr.cnf.satisfied_by(extend_to_model(tr, b))


def test_cnf_reject_all_unsat():
    C = tableau(machine("reject-all"), 1, 3)
    assert solve(circuit_to_cnf(C, force_accept=True).cnf) is None


def test_cnf_width_and_variable_use():
    tr = circuit_to_cnf(tableau(machine("parity"), 1, 3), force_accept=True)
    assert tr.cnf.width <= 3
    used = {abs(l) for cl in tr.cnf.clauses for l in cl}
    assert used == set(range(1, tr.cnf.nvars + 1))


def test_cnf_models_restrict_to_accepted_inputs():
    m = machine("parity")
    C = tableau(m, 2, 3)
    tr = circuit_to_cnf(C, force_accept=True)
    accepted = [b for b in _inputs(3) if eval_circuit(C, b)]
    assert accepted
    model = solve(tr.cnf)
    assert restrict_model(tr, model) in accepted
    # with each input pinned, satisfiability is the circuit verdict
    for b in _inputs(3):
        pins = [(v if ch == "1" else -v,) for v, ch in zip(tr.inputs, b)]
        from ptarith.sat import Cnf
        pinned = Cnf(tr.cnf.nvars, list(tr.cnf.clauses) + pins)
        assert (solve(pinned) is not None) == eval_circuit(C, b)


def test_rho_accept_all_at_two():
    fam = to_pa_formula(machine("accept-all"), 1)
    assert fam.truth(2)


def test_rho_rejecting_input_fails_only_in_eval():
    m = machine("parity")
    x = 0b11                                  # even number of ones: rejected
    env = {1: x, 2: 2, 3: run_witness(m, 1, x)}
    hints = rho_hints(m, 1, x)
    assert eval_bounded(build_iset(m, 1), env, hints=hints)
    assert eval_bounded(build_trans(m, 1), env, hints=hints)
    assert not eval_bounded(build_eval(m, 1), env, hints=hints)


def test_run_witness_packing():
    m = machine("bit-flip")
    C = tableau(m, 1, 3)
    table = lights(C, "110")
    y = run_witness(m, 1, 0b110)
    T, k = C.T, C.k
    for i, j, s in itertools.product(range(T), range(T), range(k)):
        assert (y >> (i * T * k + j * k + s)) & 1 == table[i, j, s]
    assert run_witness(m, 1, 0b110) == y


def test_witness_uniqueness_at_tiny_scale():
    m = machine("accept-all")
    f = build_rho(m, 1)
    for x in (0, 1):
        assert eval_bounded(f, {1: x}, hints=rho_hints(m, 1, x, inner=False),
                            check_unique=True, fuel=10 ** 7) == run_bounded(m, str(x), 0).accepted
