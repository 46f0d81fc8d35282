import pytest

from ptarith.machines import SOURCES, corpus, machine
from ptarith.tm import (
    ACCEPT, REJECT, TIMEOUT, Composite, InvalidCode, MachineError, ProgramMachine,
    RunContext, bits_of, compose_code, decode_machine, encode_machine, parse_machine,
    program_code, run_bounded, universal_ptm,
)
from ptarith.programs import ECHO, accept_all, reject_all


def test_bits_of_zero_is_one_digit():
    assert bits_of(0) == "0"
    assert bits_of(6) == "110"


@pytest.mark.parametrize("name", sorted(SOURCES))
def test_text_round_trip(name):
    m = machine(name)
    assert parse_machine(m.to_text()) == m


@pytest.mark.parametrize("name", sorted(SOURCES))
@pytest.mark.parametrize("c", [1, 2, 3])
def test_code_round_trip(name, c):
    m = machine(name)
    got = decode_machine(encode_machine(m, c))
    assert got == (m, c)


def test_bit_flip_output():
    v = run_bounded(machine("bit-flip"), "1011", 100)
    assert v.kind == ACCEPT and v.output == "0100"


def test_parity():
    for bits in ("1", "111", "10101"):
        assert run_bounded(machine("parity"), bits, 100).accepted
    assert run_bounded(machine("parity"), "11", 100).kind == REJECT


def test_step_bound_gives_timeout():
    v = run_bounded(machine("loop"), "1", 10)
    assert v.kind == TIMEOUT and v.steps_used == 10


def test_universal_uses_size_power_c():
    code = encode_machine(machine("bit-flip"), 1)
    # bit-flip needs about 2n steps; n^1 is not enough, n^2 is
    assert universal_ptm(code, 0b1011).kind == TIMEOUT
    assert universal_ptm(encode_machine(machine("bit-flip"), 2), 0b1011).output == "0100"


def test_invalid_codes_reject():
    for g in (0, 1, 5, 12345):
        assert isinstance(decode_machine(g), InvalidCode)
        assert universal_ptm(g, 3).kind == REJECT


def test_programs_and_composites_decode():
    assert decode_machine(program_code(ECHO, [4], 2)) == (ProgramMachine(ECHO, (4,)), 2)
    comp = compose_code(accept_all(), reject_all())
    m, c = decode_machine(comp)
    assert isinstance(m, Composite) and c == 1


def test_composition_runs_second_on_first_output():
    flip = encode_machine(machine("bit-flip"), 2)
    echo = program_code(ECHO)
    v = universal_ptm(compose_code(flip, echo), 0b1100)
    assert v.accepted and v.output == "11"


def test_machine_validation():
    with pytest.raises(MachineError):
        parse_machine("states: q0\nstart: q0\naccept: q0\nreject: q0\nalphabet: 0 1 _\n")


def test_tableau_corpus_has_six_machines():
    assert set(corpus()) == {"accept-all", "reject-all", "bit-flip", "parity", "copier", "sat-stub"}
