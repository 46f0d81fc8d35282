import pytest
from hypothesis import given, strategies as st

from ptarith.formula import godel_number, formula_from_godel, symbol_count
from ptarith.godel import (
    CodecError, DEFAULT_TABLE, concat, decode_expression, decode_seq, encode_expression,
    encode_seq, format_number, pair, parse_number, seq_chars, unpair,
)
from ptarith.syntax import parse


def test_golden_bits():
    assert format(encode_seq([3, 4, 5]), "b") == "11101101101011011111"


def test_single_entries():
    assert encode_seq([0]) == 0b10
    assert encode_seq([1]) == 0b11
    assert decode_seq(0b10) == [0]


def test_empty_and_negative_rejected():
    with pytest.raises(CodecError):
        encode_seq([])
    with pytest.raises(CodecError):
        encode_seq([-1])


@pytest.mark.parametrize("g", [0, 1, 0b100, 0b1001, 0b0110])
def test_non_codes_decode_to_none(g):
    assert decode_seq(g) is None


def test_leading_zero_entries_are_not_codes():
    # "01" read forward: a numeral with a leading zero
    g = int("11" + "10", 2)
    assert seq_chars(g) == "01"
    assert decode_seq(g) is None


@given(st.lists(st.integers(0, 1 << 40), min_size=1, max_size=12))
def test_round_trip(xs):
    assert decode_seq(encode_seq(xs)) == xs


@given(st.lists(st.integers(0, 999), min_size=1, max_size=5),
       st.lists(st.integers(0, 999), min_size=1, max_size=5))
def test_concat_is_list_concatenation(a, b):
    assert decode_seq(concat(encode_seq(a), encode_seq(b))) == a + b


def test_pair_unpair():
    assert unpair(pair(7, 0)) == (7, 0)
    assert unpair(encode_seq([1, 2, 3])) is None


def test_symbol_table_progressions():
    assert DEFAULT_TABLE.code("x1") == 22
    assert DEFAULT_TABLE.code("x2") == 26
    assert DEFAULT_TABLE.code("a1") == 20
    assert DEFAULT_TABLE.symbol(30) == "x3"
    with pytest.raises(CodecError):
        DEFAULT_TABLE.code("x0")


def test_expression_round_trip():
    syms = ["∀", "x1", "(", "x1", "=", "x1", ")"]
    assert decode_expression(encode_expression(syms)) == syms


@pytest.mark.parametrize("text", ["0 = 0", "A x1. x1 = x1", "!(S 0 < 0)", "x1 + x2 = x2 * S 0"])
def test_formula_godel_round_trip(text):
    f = parse(text)
    g = godel_number(f)
    assert formula_from_godel(g) is not None
    assert godel_number(formula_from_godel(g)) == g
    assert len(decode_seq(g)) == symbol_count(f)


def test_numbers_parse_and_format():
    assert parse_number("0b101") == 5
    assert parse_number("12") == 12
    assert format_number(5, binary=True) == "0b101"
    with pytest.raises(CodecError):
        parse_number("-3")


@pytest.mark.parametrize("x1_code", [22, 13])
def test_formula_code_follows_the_symbol_table(x1_code):
    from ptarith.godel import SymbolTable
    table = SymbolTable(var_base=x1_code)
    syms = ["¬", "(", "∀", "x1", "(", "x1", "<", "S", "0", ")", ")"]
    g = encode_expression(syms, table)
    assert decode_seq(g) == [5, 1, 0, x1_code, 1, x1_code, 6, 4, 2, 3, 3]
    assert decode_expression(g, table) == syms


def test_default_table_codes_from_the_symbol_list():
    assert DEFAULT_TABLE.code("x1") == 22
    assert godel_number(parse("!(A x1. x1 < S 0)")) == encode_expression(
        ["¬", "(", "∀", "x1", "(", "x1", "<", "S", "0", ")", ")"])
