"""A small corpus of machines over {0, 1, _}.

Every machine here keeps its head on cells >= 0 and halts with the head on
cell 1, which is where the tableau reads the verdict.  Machines that need
to find the left end overwrite cell 0 with a blank marker and restore it on
the way back.
"""
from __future__ import annotations

from .tm import TMDescription, parse_machine

ACCEPT_ALL = """\
states: q0 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> acc 0 R
q0 1 -> acc 1 R
q0 _ -> acc _ R
"""

REJECT_ALL = """\
states: q0 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> rej 0 R
q0 1 -> rej 1 R
q0 _ -> rej _ R
"""

# flips every bit; the first bit is parked in the state while cell 0 is a marker
BIT_FLIP = """\
states: q0 f0 f1 b0 b1 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> f1 _ R
q0 1 -> f0 _ R
q0 _ -> acc _ R
f0 0 -> f0 1 R
f0 1 -> f0 0 R
f0 _ -> b0 _ L
f1 0 -> f1 1 R
f1 1 -> f1 0 R
f1 _ -> b1 _ L
b0 0 -> b0 0 L
b0 1 -> b0 1 L
b0 _ -> acc 0 R
b1 0 -> b1 0 L
b1 1 -> b1 1 L
b1 _ -> acc 1 R
"""

# accepts iff the number of 1s is odd
PARITY = """\
states: q0 s0 s1 r0 r1 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> s0 _ R
q0 1 -> s1 _ R
q0 _ -> rej _ R
s0 0 -> s0 0 R
s0 1 -> s1 1 R
s0 _ -> r0 _ L
s1 0 -> s1 0 R
s1 1 -> s0 1 R
s1 _ -> r1 _ L
r0 0 -> r0 0 L
r0 1 -> r0 1 L
r0 _ -> rej _ R
r1 0 -> r1 0 L
r1 1 -> r1 1 L
r1 _ -> acc _ R
"""

# appends a copy of the first bit to the end of the input
COPIER = """\
states: q0 go0 go1 back0 back1 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> go0 _ R
q0 1 -> go1 _ R
q0 _ -> acc _ R
go0 0 -> go0 0 R
go0 1 -> go0 1 R
go0 _ -> back0 0 L
go1 0 -> go1 0 R
go1 1 -> go1 1 R
go1 _ -> back1 1 L
back0 0 -> back0 0 L
back0 1 -> back0 1 L
back0 _ -> acc 0 R
back1 0 -> back1 0 L
back1 1 -> back1 1 L
back1 _ -> acc 1 R
"""

# reads the input as a one-variable formula listing literal polarities and
# accepts iff some assignment satisfies every literal, i.e. all bits agree
SAT_STUB = """\
states: q0 s0 s1 ret0 ret1 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> s0 _ R
q0 1 -> s1 _ R
q0 _ -> acc _ R
s0 0 -> s0 0 R
s0 1 -> rej 1 R
s0 _ -> ret0 _ L
s1 0 -> rej 0 R
s1 1 -> s1 1 R
s1 _ -> ret1 _ L
ret0 0 -> ret0 0 L
ret0 1 -> ret0 1 L
ret0 _ -> acc 0 R
ret1 0 -> ret1 0 L
ret1 1 -> ret1 1 L
ret1 _ -> acc 1 R
"""

LOOP = """\
states: q0 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> q0 0 R
q0 1 -> q0 1 R
q0 _ -> q0 _ L
"""

# writes 1 over the first bit and accepts
FLIP_FIRST = """\
states: q0 acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> acc 1 R
q0 1 -> acc 0 R
q0 _ -> acc _ R
"""

# erases the input and leaves "0": the null prover
NULL_OUTPUT = """\
states: q0 back acc rej
start: q0
accept: acc
reject: rej
alphabet: 0 1 _
q0 0 -> q0 _ R
q0 1 -> q0 _ R
q0 _ -> back _ L
back 0 -> back _ L
back 1 -> back _ L
back _ -> acc 0 R
"""

SOURCES = {
    "accept-all": ACCEPT_ALL,
    "reject-all": REJECT_ALL,
    "bit-flip": BIT_FLIP,
    "parity": PARITY,
    "copier": COPIER,
    "sat-stub": SAT_STUB,
    "loop": LOOP,
    "flip-first": FLIP_FIRST,
    "null-output": NULL_OUTPUT,
}

TABLEAU_CORPUS = ("accept-all", "reject-all", "bit-flip", "parity", "copier", "sat-stub")


def machine(name: str) -> TMDescription:
    try:
        return parse_machine(SOURCES[name], name)
    except KeyError:
        raise KeyError(f"no corpus machine named {name!r}") from None


def corpus(names=TABLEAU_CORPUS) -> dict:
    return {n: machine(n) for n in names}
