"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 domain error (bad code, unparsable formula, rejected proof ...), 2 usage.

Defaults for fuel, the tableau cap, the output cell and extra machine
directories come from a JSON config file named by --config or by the
PTARITH_CONFIG environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from .evaluate import EvalError
from .godel import CodecError, decode_seq, encode_seq, format_number, parse_number


class DomainError(Exception):
    pass


CONFIG_ENV = "PTARITH_CONFIG"


@dataclass(frozen=True)
class Config:
    verifier_fuel: int = 4096
    prefix_fuel: int = 10 ** 7
    tableau_cap: int = 4096
    output_cell: int = 1
    corpus_paths: tuple = ()

    def __post_init__(self):
        for name in ("verifier_fuel", "prefix_fuel", "tableau_cap", "output_cell"):
            v, low = getattr(self, name), 0 if name == "output_cell" else 1
            if not isinstance(v, int) or isinstance(v, bool) or v < low:
                raise DomainError(f"config: {name} must be an integer >= {low}")
        if not all(isinstance(p, str) for p in self.corpus_paths):
            raise DomainError("config: corpus_paths must be a list of directories")

    @classmethod
    def from_mapping(cls, data) -> "Config":
        if not isinstance(data, dict):
            raise DomainError("config: expected a JSON object")
        known = {f.name for f in fields(cls)}
        extra = sorted(set(data) - known)
        if extra:
            raise DomainError(f"config: unknown keys {', '.join(extra)}")
        if "corpus_paths" in data:
            data = {**data, "corpus_paths": tuple(data["corpus_paths"])}
        return cls(**data)


def load_config(path: str | None = None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"config {path}: {exc}") from None
    return Config.from_mapping(data)


_CONFIG = Config()


# -- argument resolution ----------------------------------------------------------------

def _program_table() -> dict:
    from . import programs as P
    return {
        "accept-all-program": P.accept_all(), "reject-all-program": P.reject_all(),
        "truth-verifier": P.truth_verifier(), "kernel-checker": P.kernel_checker(P.PA),
        "null-prover": P.null_prover(), "axiom-prover": P.axiom_prover(1),
        "axiom-prover-even": P.axiom_prover(2), "echo": P.program_code(P.ECHO),
        "tiny-sat": P.tiny_sat_decider(),
        **{f"template-{k}": v for k, v in P.templates().items()},
    }


def load_machine(name: str):
    """A corpus name or a machine description file."""
    from .machines import SOURCES, machine
    from .tm import parse_machine
    if name in SOURCES:
        return machine(name)
    path = _machine_file(name)
    if path is not None:
        return parse_machine(path.read_text(), path.stem)
    raise DomainError(f"no corpus machine or file named {name!r}")


def _machine_file(name: str) -> Path | None:
    candidates = [Path(name)]
    for d in _CONFIG.corpus_paths:
        candidates += [Path(d) / name, Path(d) / f"{name}.tm"]
    return next((p for p in candidates if p.is_file()), None)


def machine_code(name: str, c: int = 1) -> int:
    """A code, a program name, a corpus machine or a machine file, as a machine code."""
    from .machines import SOURCES
    from .tm import encode_machine
    table = _program_table()
    if name in table:
        return table[name]
    if name in SOURCES or _machine_file(name) is not None:
        return encode_machine(load_machine(name), c)
    try:
        return parse_number(name)
    except CodecError:
        raise DomainError(f"unknown machine {name!r}") from None


def load_family(name: str):
    from .families import builtin_families
    fams = builtin_families()
    if name not in fams:
        raise DomainError(f"unknown family {name!r}; choose from {', '.join(sorted(fams))}")
    return fams[name]


def _num(text: str) -> int:
    try:
        return parse_number(text)
    except CodecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if path.is_file():
        return path.read_text()
    return arg


# -- subcommands --------------------------------------------------------------------------

def cmd_encode_seq(a, out):
    g = encode_seq(a.values)
    out(format_number(g, binary=not a.decimal))


def cmd_decode_seq(a, out):
    xs = decode_seq(a.code)
    if xs is None:
        raise DomainError("not a sequence code")
    out(" ".join(format_number(x, a.binary) for x in xs))


def cmd_godel(a, out):
    from .formula import godel_number
    from .syntax import parse
    out(format_number(godel_number(parse(a.formula)), a.binary))


def cmd_parse(a, out):
    from .syntax import parse
    out(repr(parse(a.formula)))


def cmd_print(a, out):
    from .formula import formula_from_godel
    from .syntax import print_formula
    f = formula_from_godel(a.code)
    if f is None:
        raise DomainError("not the Gödel number of a formula")
    out(print_formula(f))


def cmd_run(a, out):
    from .tm import bits_of, run_bounded, universal_ptm
    if a.universal:
        from .tm import RunContext
        v = universal_ptm(machine_code(a.machine, a.c), a.input,
                          ctx=RunContext(prefix_fuel=_CONFIG.prefix_fuel))
    else:
        m = load_machine(a.machine)
        bits = bits_of(a.input)
        v = run_bounded(m, bits, a.bound if a.bound is not None else len(bits) ** a.c)
    out(f"{v.kind} steps={v.steps_used}" + (f" output={v.output}" if v.output is not None else ""))


def cmd_encode_machine(a, out):
    from .tm import encode_machine
    out(format_number(encode_machine(load_machine(a.machine), a.c), a.binary))


def cmd_decode_machine(a, out):
    from .tm import Composite, InvalidCode, ProgramMachine, decode_machine
    d = decode_machine(a.code)
    if isinstance(d, InvalidCode):
        raise DomainError(f"invalid machine code: {d.reason}")
    m, c = d
    if isinstance(m, ProgramMachine):
        out(f"program {m.pid} params={list(m.params)} c={c}")
    elif isinstance(m, Composite):
        out(f"composite first={m.first} second={m.second} c={c}")
    else:
        out(f"# c: {c}")
        out(m.to_text().rstrip("\n"))


def cmd_tableau(a, out):
    from .tableau import emit_circuit, tableau
    m = load_machine(a.machine)
    cap = a.cap if a.cap is not None else _CONFIG.tableau_cap
    cell = a.output_cell if a.output_cell is not None else _CONFIG.output_cell
    if a.emit == "formula":
        from .rho import to_pa_formula
        from .syntax import print_formula
        out(print_formula(to_pa_formula(m, a.c, cell).formula))
        return
    C = tableau(m, a.c, a.n, cap=cap, output_cell=cell)
    if a.emit == "circuit":
        out(emit_circuit(C).rstrip("\n"))
    else:
        from .cnf import circuit_to_cnf
        tr = circuit_to_cnf(C, force_accept=a.force_accept)
        out(f"c tableau n={C.n} c={C.c} inputs={' '.join(map(str, tr.inputs))}")
        out(tr.cnf.to_dimacs().rstrip("\n"))


def cmd_witness(a, out):
    from .rho import run_witness
    cell = a.output_cell if a.output_cell is not None else _CONFIG.output_cell
    out(format_number(run_witness(load_machine(a.machine), a.c, a.input, cell), a.binary))


def cmd_check_proof(a, out):
    from .proof import PA, check_proof, parse_sexpr
    from .syntax import parse
    pi = parse_sexpr(_read_text(a.proof))
    res = check_proof(PA, parse(a.target), pi)
    out(str(res))
    if not res.accepted:
        return 1


def cmd_prove_check(a, out):
    from .proof import PA, prover_proves
    ok = prover_proves(PA, machine_code(a.prover), load_family(a.family), a.a)
    out("proved" if ok else "not proved")


def cmd_quine(a, out):
    from .reflection import recipe
    r = recipe(machine_code(a.template))
    out(format_number(r.fixed_point, a.binary))
    for w in a.check:
        out(f"check w={w}: {'holds' if r.check(w) else 'FAILS'}")


def cmd_godel_sentence(a, out):
    from .proof import PA, prover_proves
    from .reflection import godel_decision_machine, godel_proof_machine
    from .tm import universal_ptm
    e = machine_code(a.machine)
    if a.flavor == "proof":
        k, fam = godel_proof_machine(PA, e)
    else:
        v = machine_code(a.verifier) if a.verifier else machine_code("truth-verifier")
        k, fam = godel_decision_machine(0 if a.flavor == "ca" else 1, e, v)
    out(f"machine: {k.bit_length()} bits")
    out(f"family: {fam.describe()}")
    for x in a.x:
        line = f"x={x}: machine {universal_ptm(k, x).kind}"
        if a.flavor == "proof":
            line += f", prover {'proves' if prover_proves(PA, e, fam, x) else 'does not prove'}"
        out(line)


def cmd_decide(a, out):
    from .decision import decide, decide_v
    e, fam = machine_code(a.machine), load_family(a.family)
    if a.verifier:
        o = decide_v(e, machine_code(a.verifier), fam, a.a, fuel=_CONFIG.verifier_fuel)
    else:
        o = decide(e, fam, a.a)
    truth = "unknown" if o.truth is None else str(o.truth).lower()
    out(f"verdict={o.verdict} truth={truth} CA={int(o.ca)} CR={int(o.cr)} CD={int(o.cd)}"
        + (f" ({o.diagnostic})" if o.diagnostic else ""))


def cmd_scan(a, out):
    from .decision import asymptotic_scan
    rep = asymptotic_scan(machine_code(a.machine), load_family(a.family),
                          range(a.start, a.stop), a.mode)
    out(rep.to_csv().rstrip("\n"))


def cmd_sat(a, out):
    from .sat import decode_cnf3, parse_dimacs, solve
    if a.code is not None:
        cnf = decode_cnf3(a.code)
        if cnf is None:
            raise DomainError("not the code of a 3-CNF")
    else:
        if a.file is None:
            raise DomainError("give a DIMACS file or --code")
        cnf = parse_dimacs(_read_text(a.file))
    model = solve(cnf)
    if model is None:
        out("UNSAT")
    else:
        out("SAT")
        out(" ".join(str(v if model[v] else -v) for v in range(1, cnf.nvars + 1)))


def cmd_decsat(a, out):
    from .sat import decsat_check
    out(str(decsat_check(machine_code(a.machine), a.x)).lower())


def cmd_pnp_sentence(a, out):
    from .meta import pnp_sentence
    from .syntax import print_formula
    text = print_formula(pnp_sentence())
    if a.classify:
        from .classify import classify
        from .formula import Not
        from .meta import decsat_formula
        d = decsat_formula()
        cls = classify(Not(d.formula), params=(d.vars[0],))     # the machine code is fixed
        out(f"prefix: forall e forall n exists x >= n; matrix class: {cls}")
    out(text)


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptarith", description="Arithmetization toolkit for bounded machines.")
    p.add_argument("--binary", action="store_true", help="print Gödel numbers in 0b binary")
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    radix = argparse.ArgumentParser(add_help=False)
    radix.add_argument("--binary", action="store_true", default=argparse.SUPPRESS,
                       help="print Gödel numbers in 0b binary")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[radix])
        sp.set_defaults(fn=fn)
        return sp

    def machine_opts(sp, c=True):
        sp.add_argument("machine", help="corpus name or machine file")
        if c:
            sp.add_argument("--c", type=int, default=1, help="time exponent")

    sp = add("encode-seq", cmd_encode_seq, "sequence code of naturals (binary unless --decimal)")
    sp.add_argument("values", type=_num, nargs="+")
    sp.add_argument("--decimal", action="store_true")
    sp = add("decode-seq", cmd_decode_seq, "naturals of a sequence code")
    sp.add_argument("code", type=_num)
    sp = add("godel", cmd_godel, "Gödel number of a formula")
    sp.add_argument("formula")
    sp = add("parse", cmd_parse, "syntax tree of a formula")
    sp.add_argument("formula")
    sp = add("print", cmd_print, "formula with a given Gödel number")
    sp.add_argument("code", type=_num)
    sp = add("run", cmd_run, "run a machine on [input]")
    machine_opts(sp)
    sp.add_argument("input", type=_num)
    sp.add_argument("--bound", type=int, help="step bound (default |input|^c)")
    sp.add_argument("--universal", action="store_true", help="run through the universal machine")
    sp = add("encode-machine", cmd_encode_machine, "machine code of a machine")
    machine_opts(sp)
    sp = add("decode-machine", cmd_decode_machine, "machine described by a code")
    sp.add_argument("code", type=_num)
    sp = add("tableau", cmd_tableau, "tableau circuit, CNF or formula of a machine")
    machine_opts(sp)
    sp.add_argument("--n", type=int, default=2, help="input length")
    sp.add_argument("--emit", choices=("circuit", "cnf", "formula"), default="circuit")
    sp.add_argument("--cap", type=int, help="largest allowed n^c (config default 4096)")
    sp.add_argument("--output-cell", type=int, help="cell read for the verdict (config default 1)")
    sp.add_argument("--force-accept", action="store_true", help="add the accepting unit clause")
    sp = add("witness", cmd_witness, "packed light table of a run")
    machine_opts(sp)
    sp.add_argument("input", type=_num)
    sp.add_argument("--output-cell", type=int)
    sp = add("check-proof", cmd_check_proof, "check an s-expression proof tree against a target")
    sp.add_argument("proof", help="file, '-' for stdin, or the s-expression itself")
    sp.add_argument("--target", required=True)
    sp = add("prove-check", cmd_prove_check, "does a prover's output prove φ(a)?")
    sp.add_argument("prover")
    sp.add_argument("--family", default="refl")
    sp.add_argument("a", type=_num)
    sp = add("quine", cmd_quine, "fixed point of a template machine")
    sp.add_argument("template")
    sp.add_argument("--check", type=_num, nargs="*", default=[], help="inputs to verify the fixed point on")
    sp = add("godel-sentence", cmd_godel_sentence, "Gödel-sentence machine for a prover or decider")
    sp.add_argument("machine")
    sp.add_argument("--flavor", choices=("proof", "ca", "cr"), default="proof")
    sp.add_argument("--verifier")
    sp.add_argument("--x", type=_num, nargs="*", default=[0, 1, 2, 3])
    sp = add("decide", cmd_decide, "decision outcome of a machine on φ(a)")
    sp.add_argument("machine")
    sp.add_argument("a", type=_num)
    sp.add_argument("--family", default="refl")
    sp.add_argument("--verifier", help="verifier machine in place of truth")
    sp = add("scan", cmd_scan, "finite-window scan as CSV")
    sp.add_argument("machine")
    sp.add_argument("--family", default="refl")
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--stop", type=int, default=16)
    sp.add_argument("--mode", choices=("prove", "decide"), default="decide")
    sp = add("sat", cmd_sat, "solve a DIMACS CNF or a coded 3-CNF")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--code", type=_num)
    sp = add("decsat", cmd_decsat, "truth of DecSAT(e, x)")
    sp.add_argument("machine")
    sp.add_argument("x", type=_num)
    sp = add("pnp-sentence", cmd_pnp_sentence, "print the separation sentence")
    sp.add_argument("--classify", action="store_true", help="also print the prefix and matrix class")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)        # exits with 2 on usage errors
    lines: list = []
    global _CONFIG
    try:
        _CONFIG = load_config(args.config)
        code = args.fn(args, lines.append)
    except (DomainError, ValueError, KeyError, EvalError, RecursionError) as exc:
        sys.stdout.write("".join(line + "\n" for line in lines))
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    sys.stdout.write("".join(line + "\n" for line in lines))
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
