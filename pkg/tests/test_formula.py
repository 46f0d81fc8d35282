import pytest
from hypothesis import given, settings, strategies as st

from ptarith.classify import classify, is_sharp
from ptarith.eliminate import beta_witness, eliminate_with_witnesses
from ptarith.evaluate import FuelExhausted, UnboundedQuantifier, eval_bounded, eval_term
from ptarith.formula import (
    Bit, Exists, FormulaError, Len, Monus, Pow, Var, desugar, free_vars, has_derived,
    is_core, num, numeral_of, numeral_symbol_count, substitute, symbol_count,
    symbol_count_capped, term_symbol_count,
)
from ptarith.syntax import ParseError, parse, parse_term, print_formula


@pytest.mark.parametrize("text", [
    "0 = 0", "A x1. x1 = x1", "E x2 < S x1. x2 + x2 = x1", "x1 < x2 -> !(x2 < x1)",
    "A x1 >= #3. E! x2 < x1. x2 = 0", "len(x1) = bit(x1, #2) | monus(x1, x2) = pow(#2, x3)",
])
def test_print_parse_round_trip(text):
    f = parse(text)
    assert parse(print_formula(f)) == f


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse("x1 = = 0")
    assert exc.value.pos > 0


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12, 255])
def test_binary_numerals(n):
    t = numeral_of(n)
    assert eval_term(t) == n
    assert term_symbol_count(t) == numeral_symbol_count(n)


@given(st.integers(0, 1 << 30), st.integers(0, 40))
def test_derived_symbols_evaluate(a, i):
    env = {1: a, 2: i}
    assert eval_term(Len(Var(1)), env) == max(a.bit_length(), 1)
    assert eval_term(Bit(Var(1), Var(2)), env) == (a >> i) & 1
    assert eval_term(Monus(Var(2), Var(1)), env) == max(i - a, 0)


def test_bounded_quantifiers():
    even = parse("E x2 < S x1. x2 + x2 = x1")
    assert [eval_bounded(even, {1: a}) for a in range(6)] == [True, False, True, False, True, False]
    assert eval_bounded(parse("A x2 < #5. x2 < #5"))


def test_unbounded_and_fuel():
    with pytest.raises(UnboundedQuantifier):
        eval_bounded(parse("A x1. E x2. x1 < x2"))
    with pytest.raises(FuelExhausted):
        eval_bounded(parse("A x1 < #100000. x1 = x1"), fuel=1000)


def test_hints_guide_existentials():
    f = parse("E x2 < #1000. x2 * x2 = #289")
    assert eval_bounded(f, hints={2: lambda env: 17})
    assert not eval_bounded(f, hints={2: lambda env: 16})


def test_desugar_to_core():
    f = parse("E x2 < x1. x2 = 0 & x1 = x1")
    g = desugar(f)
    assert is_core(g)
    for a in range(4):
        assert eval_bounded(f, {1: a}) == eval_bounded(g, {1: a})


def test_substitution_avoids_capture():
    f = parse("A x2. x1 < x2")
    g = substitute(f, 1, Var(3))
    assert free_vars(g) == {3}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 200), st.integers(0, 9))
def test_elimination_preserves_truth(a, i):
    f = parse("len(x1) < S bit(x1, x2) + pow(#2, x2) & monus(x1, x2) < S x1")
    e = eliminate_with_witnesses(f)
    assert not has_derived(e.formula)
    env = {1: a, 2: i}
    assert eval_bounded(f, env) == eval_bounded(e.formula, env, hints=e.hints)


def test_beta_witness():
    c, d = beta_witness(3, 4)
    assert [c % (1 + (i + 1) * d) for i in range(5)] == [1, 3, 9, 27, 81]


def test_symbol_count_capped():
    f = desugar(parse("A x1. x1 = #1000"))
    n = symbol_count(f)
    assert symbol_count_capped(f, n) == n
    assert symbol_count_capped(f, 3) > 3


def test_classify_levels():
    assert str(classify(parse("x1 < x2"))) == "Core-Δ1-syntactic"
    assert str(classify(parse("E x2 < pow(#2, len(len(x1))). x2 = x1"))) == "Core-Δ1-syntactic"
    long_e = parse("E x2 < pow(#2, len(x1) * len(x1)). x2 = x1")
    assert str(classify(long_e)) == "SigmaP(1)"
    assert str(classify(parse("A x2 < pow(#2, len(x1) * len(x1)). !(x2 = x1)"))) == "PiP(1)"
    alt = parse("E x2 < pow(#2, len(x1) * len(x1)). A x3 < pow(#2, len(x1) * len(x1)). x2 < x3")
    assert str(classify(alt)) == "SigmaP(2)"
    assert str(classify(parse("A x1. x1 = x1"))) == "Other"


def test_sharpness():
    assert is_sharp(Len(Var(1)), frozenset())
    assert not is_sharp(Var(1), frozenset())
    assert is_sharp(Pow(num(2), Len(Len(Var(1)))), frozenset())
    assert not is_sharp(Pow(num(2), Len(Var(1))), frozenset())
    assert not is_sharp(Pow(num(2), Var(1)), frozenset())
