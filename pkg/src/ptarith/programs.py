"""Registered programs: procedures standing in for machines too large to write out.

Each program receives (params, w, meter, ctx) and returns (kind, output).
Programs charge the meter for their work in abstract steps; the charges are
documented per program and kept small and deterministic.
"""
from __future__ import annotations

from .godel import decode_seq, encode_seq, pair
from .proof import PA
from .tm import (
    ACCEPT, REJECT, TIMEOUT, StepLimit, TMDescription, bits_of, decode_machine,
    program_code, register_program, run_bounded, universal_ptm, InvalidCode,
)

ACCEPT_ALL, REJECT_ALL, ECHO = 1, 2, 3
TRUTH_VERIFIER, KERNEL_CHECKER = 4, 5
AXIOM_PROVER, NULL_PROVER = 6, 7
TINY_SAT = 8
SELF_B = 9
FIRST_COMPONENT, SECOND_COMPONENT, ODD_GATE = 10, 11, 12
GODEL_PROOF, GODEL_DECISION = 13, 14
PRINT_PREFIX = 15

THEORIES: dict = {0: PA}          # theory id -> Theory; 0 is PA


def theory_id(T) -> int:
    for i, t in THEORIES.items():
        if t == T:
            return i
    i = len(THEORIES)
    THEORIES[i] = T
    return i


def _tuple(w: int, n: int):
    xs = decode_seq(w)
    return xs if xs is not None and len(xs) == n else None


def run_with_fuel(code: int, w: int, fuel: int):
    """Run a general machine with `fuel` in place of the polynomial clock.

    Plain machines get exactly `fuel` steps; programs and compositions get
    the clock fuel^c of their own exponent.
    """
    d = decode_machine(code)
    if not isinstance(d, InvalidCode) and isinstance(d[0], TMDescription):
        return run_bounded(d[0], bits_of(w), fuel)
    return universal_ptm(code, w, size=fuel)


@register_program(ACCEPT_ALL, "accept-all", "accept at once with an empty tape")
def _accept_all(params, w, meter, ctx):
    meter.charge()
    return ACCEPT, None


@register_program(REJECT_ALL, "reject-all", "reject at once")
def _reject_all(params, w, meter, ctx):
    meter.charge()
    return REJECT, None


@register_program(ECHO, "echo", "accept with the input as output; one step per input bit")
def _echo(params, w, meter, ctx):
    meter.charge(len(bits_of(w)))
    return ACCEPT, w


@register_program(TRUTH_VERIFIER, "truth-verifier", "on (#Φ, a): accept iff φ(a) is true")
def _truth(params, w, meter, ctx):
    from .evaluate import EvalError
    from .families import family_from_code, family_truth
    meter.charge()
    xs = _tuple(w, 2)
    fam = family_from_code(xs[0]) if xs else None
    if fam is None:
        return REJECT, None
    try:
        return (ACCEPT if family_truth(fam, xs[1]) else REJECT), None
    except EvalError:
        raise StepLimit() from None


@register_program(KERNEL_CHECKER, "kernel-checker", "on (#Φ, a, b): accept iff b codes a proof of φ(a)")
def _checker(params, w, meter, ctx):
    from .families import family_from_code
    from .proof import check_proof, decode_tree
    meter.charge()
    xs = _tuple(w, 3)
    fam = family_from_code(xs[0]) if xs else None
    if fam is None or not params or params[0] not in THEORIES:
        return REJECT, None
    pi = decode_tree(xs[2])
    ok = pi is not None and check_proof(THEORIES[params[0]], fam.core_instance(xs[1]), pi).accepted
    return (ACCEPT if ok else REJECT), None


@register_program(AXIOM_PROVER, "axiom-prover",
                  "on (p, #Φ, a) with a divisible by params[0]: output the one-leaf proof of φ(a)")
def _axiom_prover(params, w, meter, ctx):
    from .families import family_from_code
    from .formula import symbol_count_capped
    from .proof import axiom, godel_number_tree
    meter.charge()
    xs = _tuple(w, 3)
    fam = family_from_code(xs[1]) if xs else None
    mod = params[0] if params and params[0] > 0 else 1
    if fam is None or xs[0] != 0 or xs[2] % mod:
        return ACCEPT, 0
    target = fam.core_instance(xs[2])
    # one step per symbol written: a proof too long for the clock times out
    meter.charge(symbol_count_capped(target, meter.bound - meter.used))
    return ACCEPT, godel_number_tree(axiom(target))


@register_program(NULL_PROVER, "null-prover", "output 0")
def _null_prover(params, w, meter, ctx):
    meter.charge()
    return ACCEPT, 0


@register_program(TINY_SAT, "tiny-sat", "on (d, #Φ, x): decide 3-SAT for x by decoding and brute force")
def _tiny_sat(params, w, meter, ctx):
    from .sat import decode_cnf3
    xs = _tuple(w, 3)
    if xs is None or xs[0] != 1:
        meter.charge()
        return REJECT, None
    x = xs[2]
    meter.charge(len(bits_of(x)))
    cnf = decode_cnf3(x)
    if cnf is None:
        return REJECT, None
    for a in range(1 << cnf.nvars):
        meter.charge(max(len(cnf.clauses), 1))
        model = [False] + [bool(a >> (v - 1) & 1) for v in range(1, cnf.nvars + 1)]
        if cnf.satisfied_by(model):
            return ACCEPT, None
    return REJECT, None


@register_program(SELF_B, "self-b", "second half of a fixed point: rebuild k and run the template")
def _self_b(params, w, meter, ctx):
    from .reflection import split_printed, quine_of_b
    got = split_printed(w)
    if got is None or not params:
        meter.charge()
        return REJECT, None
    b, rest = got
    if ctx.count_construction:
        meter.charge(len(bits_of(w)))
    k = quine_of_b(b, plain=len(params) > 1 and params[1] == 1)
    v = universal_ptm(params[0], pair(k, rest), ctx.size_fn)
    return _relay(v)


@register_program(PRINT_PREFIX, "print-prefix",
                  "write 1, the bits of params[0] doubled, then 01 in front of the input",
                  prefix_stage=True)
def _print_prefix(params, w, meter, ctx):
    from .reflection import printed_prefix
    if not params:
        meter.charge()
        return REJECT, None
    prefix = printed_prefix(params[0])
    meter.charge(len(prefix) + 1)           # one step per written cell, plus the return
    return ACCEPT, int(prefix + bits_of(w), 2)


def _relay(v):
    if v.kind == TIMEOUT:
        raise StepLimit()
    return v.kind, v.output_value if v.accepted else None


@register_program(FIRST_COMPONENT, "first-component", "on (k, w): output k")
def _first(params, w, meter, ctx):
    meter.charge()
    xs = _tuple(w, 2)
    return (ACCEPT, xs[0]) if xs else (REJECT, None)


@register_program(SECOND_COMPONENT, "second-component", "on (k, w): output w")
def _second(params, w, meter, ctx):
    meter.charge()
    xs = _tuple(w, 2)
    return (ACCEPT, xs[1]) if xs else (REJECT, None)


@register_program(ODD_GATE, "odd-gate", "on (k, w): accept with output k when w is odd, else reject")
def _odd_gate(params, w, meter, ctx):
    meter.charge()
    xs = _tuple(w, 2)
    if xs and xs[1] % 2:
        return ACCEPT, xs[0]
    return REJECT, None


@register_program(GODEL_PROOF, "godel-proof",
                  "on (k, x): accept iff prover params[1] fails to prove ρ_k(x) in theory params[0]")
def _godel_proof(params, w, meter, ctx):
    from .proof import prover_proves
    from .reflection import rho_family
    meter.charge()
    xs = _tuple(w, 2)
    if xs is None or len(params) != 2 or params[0] not in THEORIES:
        return REJECT, None
    k, x = xs
    fam = rho_family(k)
    if ctx.count_construction:
        meter.charge(fam.code.bit_length())
    proved = prover_proves(THEORIES[params[0]], params[1], fam, x)
    return (REJECT if proved else ACCEPT), None


@register_program(GODEL_DECISION, "godel-decision",
                  "on (k, x): flavor 0 rejects iff decider and verifier both accept ρ_k(x); "
                  "flavor 1 accepts iff both reject")
def _godel_decision(params, w, meter, ctx):
    from .decision import VERIFIER_FUEL
    from .reflection import rho_family
    from .tm import size_of
    meter.charge()
    xs = _tuple(w, 2)
    if xs is None or len(params) != 3:
        return REJECT, None
    flavor, e, v = params
    k, x = xs
    fam = rho_family(k)
    if ctx.count_construction:
        meter.charge(fam.code.bit_length())
    dec = universal_ptm(e, encode_seq([1, fam.code, x]), size=size_of(fam.size_fn, x)).accepted
    ver = run_with_fuel(v, encode_seq([fam.code, x]), VERIFIER_FUEL).accepted
    if flavor == 0:
        return (REJECT if dec and ver else ACCEPT), None
    return (ACCEPT if not dec and not ver else REJECT), None


def accept_all() -> int:
    return program_code(ACCEPT_ALL)


def reject_all() -> int:
    return program_code(REJECT_ALL)


def truth_verifier() -> int:
    return program_code(TRUTH_VERIFIER)


def kernel_checker(T) -> int:
    return program_code(KERNEL_CHECKER, [theory_id(T)])


def axiom_prover(mod: int = 1) -> int:
    return program_code(AXIOM_PROVER, [mod])


def null_prover() -> int:
    return program_code(NULL_PROVER)


def tiny_sat_decider() -> int:
    return program_code(TINY_SAT, c=3)


def templates() -> dict:
    return {"first": program_code(FIRST_COMPONENT), "second": program_code(SECOND_COMPONENT),
            "odd-gate": program_code(ODD_GATE)}


def corpus_provers() -> dict:
    from .machines import machine
    from .tm import encode_machine
    return {"null": null_prover(), "axiom": axiom_prover(1), "axiom-even": axiom_prover(2),
            "echo": program_code(ECHO), "bit-flip": encode_machine(machine("bit-flip"), 1)}
