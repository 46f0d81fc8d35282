import random

import pytest

from ptarith.sat import (
    UNSAT, Cnf, CnfError, brute_force, decode_cnf3, decode_literal, encode_cnf3,
    encode_literal, pad_to_3, parse_dimacs, sat_relation, satisfying_assignment, solve,
)
from ptarith.meta import sat_family


def _random_cnf(rng, nvars, nclauses, width=3):
    clauses = []
    for _ in range(nclauses):
        vs = rng.sample(range(1, nvars + 1), min(width, nvars))
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return Cnf(nvars, clauses)


def test_solver_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 8)
        cnf = _random_cnf(rng, n, rng.randint(1, 5 * n))
        model = solve(cnf)
        assert (model is UNSAT) == (brute_force(cnf) is UNSAT)
        if model is not UNSAT:
            assert cnf.satisfied_by(model)


def test_trivial_cases():
    assert solve(Cnf(0, [])) is not UNSAT
    assert solve(Cnf(1, [[1], [-1]])) is UNSAT
    assert solve(Cnf(2, [[1, 2], [-1], [-2]])) is UNSAT


def test_dimacs_round_trip():
    cnf = Cnf(3, [[1, -2, 3], [-1], [2, 3]])
    again = parse_dimacs(cnf.to_dimacs())
    assert again.nvars == 3 and [list(c) for c in again.clauses] == [[1, -2, 3], [-1], [2, 3]]
    with pytest.raises(CnfError):
        parse_dimacs("p cnf 1 1\n2 0\n")


def test_literal_codes():
    for lit in (1, -1, 5, -7):
        assert decode_literal(encode_literal(lit)) == lit
    assert encode_literal(3) == 6 and encode_literal(-3) == 7


def test_cnf3_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        cnf = pad_to_3(_random_cnf(rng, rng.randint(1, 4), rng.randint(2, 6), width=rng.randint(1, 3)))
        back = decode_cnf3(encode_cnf3(cnf))
        assert back.nvars == cnf.nvars
        assert [list(c) for c in back.clauses] == [list(c) for c in cnf.clauses]


def test_cnf3_rejects_bad_codes():
    with pytest.raises(CnfError):
        encode_cnf3(Cnf(2, [[1, 2]]))
    from ptarith.godel import encode_seq
    assert decode_cnf3(encode_seq([1, 2, 2, 4])) is None     # variable 2 out of range
    assert decode_cnf3(encode_seq([1, 2, 2])) is None        # not a whole clause
    assert decode_cnf3(0b10).clauses == ()                    # the empty formula
    assert not sat_relation(5)


def test_sat_relation_and_assignment():
    sat = encode_cnf3(Cnf(2, [[1, 1, 2], [-1, -1, -1]]))
    unsat = encode_cnf3(Cnf(1, [[1, 1, 1], [-1, -1, -1]]))
    assert sat_relation(sat) and not sat_relation(unsat)
    assert satisfying_assignment(sat) == 0b10
    assert satisfying_assignment(unsat) is None


def test_sat_family_matches_relation_on_real_codes():
    fam = sat_family()
    codes = [
        encode_cnf3(Cnf(1, [[1, 1, 1]])),
        encode_cnf3(Cnf(1, [[-1, -1, -1]])),
        encode_cnf3(Cnf(1, [[1, 1, 1], [-1, -1, -1]])),
    ]
    for x in codes:
        assert fam.truth(x) == sat_relation(x)


def test_sat_family_on_small_window():
    fam = sat_family()
    assert [x for x in range(1 << 10) if fam.truth(x)] == [x for x in range(1 << 10) if sat_relation(x)]
