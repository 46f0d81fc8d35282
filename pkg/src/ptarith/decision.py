"""Decision semantics: correct acceptance, rejection and decision of instances.

A decider e is run in decision mode on (1, #Φ, a) for Size(a)^c steps.
Its verdict is compared with the standard-model truth of φ(a) (decide) or
with the verdict of a verifier machine v run on (#Φ, a) under a fuel bound
(decide_v).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

from .evaluate import EvalError
from .families import family_truth
from .formula import FormulaFamily
from .godel import encode_seq
from .meta import MODE_DECIDE
from .tm import ACCEPT, TIMEOUT, Verdict, size_of, universal_ptm

VERIFIER_FUEL = 4096      # steps granted to a verifier (programs: this to the power c)


@dataclass(frozen=True)
class DecisionOutcome:
    verdict: str                 # accept / reject / timeout
    truth: bool | None           # None when unknown (fuel ran out)
    ca: bool
    cr: bool
    diagnostic: str = ""

    @property
    def cd(self) -> bool:
        return self.ca or self.cr


def _outcome(verdict: str, truth: bool | None, diagnostic: str = "") -> DecisionOutcome:
    if truth is None:
        return DecisionOutcome(verdict, None, False, False, diagnostic or "truth unknown")
    ca = verdict == ACCEPT and truth
    cr = verdict != ACCEPT and not truth
    return DecisionOutcome(verdict, truth, ca, cr, diagnostic)


def run_decider(e: int, family: FormulaFamily, a: int) -> Verdict:
    """U_PTM(e, (d, #Φ, a)) with the family's size function."""
    return universal_ptm(e, encode_seq([MODE_DECIDE, family.code, a]), family.size_fn)


def decide(e: int, family: FormulaFamily, a: int, fuel: int | None = None,
           oracle: Callable[[int], bool] | None = None) -> DecisionOutcome:
    """Outcome of e on φ(a); `oracle` replaces formula evaluation as the source of truth."""
    v = run_decider(e, family, a)
    try:
        truth = oracle(a) if oracle is not None else family_truth(family, a, fuel)
    except EvalError as exc:
        return _outcome(v.kind, None, f"truth unknown: {exc}")
    return _outcome(v.kind, truth)


def decide_v(e: int, v: int, family: FormulaFamily, a: int,
             fuel: int = VERIFIER_FUEL) -> DecisionOutcome:
    """The relaxed relation: the verifier's verdict stands in for truth.

    A verifier that runs out of fuel gives truth None and the diagnostic
    "verifier timeout".
    """
    from .programs import run_with_fuel
    d = run_decider(e, family, a)
    w = run_with_fuel(v, encode_seq([family.code, a]), fuel)
    if w.kind == TIMEOUT:
        return _outcome(d.kind, None, "verifier timeout")
    return _outcome(d.kind, w.accepted)


# -- finite-prefix scans ------------------------------------------------------------

@dataclass(frozen=True)
class ScanRow:
    a: int
    verdict: str
    truth: bool | None
    ca: bool
    cr: bool
    cd: bool

    @property
    def success(self) -> bool:
        return self.cd


@dataclass
class ScanReport:
    """Finite shadow of an asymptotic notion: only the listed window was run."""
    mode: str
    rows: list = field(default_factory=list)
    label: str = "finite shadow: window only, not an asymptotic claim"

    @property
    def successes(self) -> int:
        return sum(r.success for r in self.rows)

    @property
    def failures(self) -> list:
        return [r.a for r in self.rows if not r.success]

    @property
    def first_failure(self) -> int | None:
        f = self.failures
        return f[0] if f else None

    @property
    def pattern(self) -> str:
        """Quantifier prefix satisfied by the successes on the window."""
        if not self.rows:
            return "empty"
        ok = [r.success for r in self.rows]
        if all(ok):
            return "forall a"
        if not any(ok):
            return "none"
        last_bad = max(i for i, s in enumerate(ok) if not s)
        if last_bad + 1 < len(ok):
            return f"forall a >= {self.rows[last_bad + 1].a}"
        return "exists a"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# {self.label}; mode={self.mode}; pattern={self.pattern}\n")
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["a", "verdict", "truth", "CA", "CR", "CD"])
        for r in self.rows:
            truth = "unknown" if r.truth is None else str(r.truth).lower()
            out.writerow([r.a, r.verdict, truth, int(r.ca), int(r.cr), int(r.cd)])
        return buf.getvalue()


def asymptotic_scan(e: int, family: FormulaFamily, values, mode: str = "decide",
                    theory=None) -> ScanReport:
    """Tabulate, for each a in `values`, whether e proves or decides φ(a).

    In prove mode the row's verdict is "proved" or "not-proved", CA marks a
    kernel-accepted proof and CR, CD follow the same flag algebra (CR is
    never set since nothing is correctly rejected by a prover).
    """
    if mode not in ("prove", "decide"):
        raise ValueError("mode is 'prove' or 'decide'")
    report = ScanReport(mode)
    for a in sorted(set(values)):
        if mode == "decide":
            o = decide(e, family, a)
            report.rows.append(ScanRow(a, o.verdict, o.truth, o.ca, o.cr, o.cd))
        else:
            from .proof import PA, prover_proves
            proved = prover_proves(theory or PA, e, family, a)
            try:
                truth = family_truth(family, a)
            except EvalError:
                truth = None
            report.rows.append(ScanRow(a, "proved" if proved else "not-proved",
                                       truth, proved, False, proved))
    return report
