"""Bit-pair sequence codes for lists of naturals and PA symbol streams.

A list [a1, ..., ak] is written as binary numerals joined by commas, the
character string is reversed, and each character is replaced by a bit pair
(0 -> 10, 1 -> 11, ',' -> 01).  The resulting bit string, read MSB-first,
is the code.  Reading pairs from the least significant end therefore yields
the original character stream in forward order.
"""
from __future__ import annotations

from typing import Iterable, Sequence

_PAIR = {"0": "10", "1": "11", ",": "01"}
_UNPAIR = {"10": "0", "11": "1", "01": ","}


class CodecError(ValueError):
    """Raised for inputs outside a codec's domain."""


def _bits(x: int) -> str:
    if x < 0:
        raise CodecError(f"negative entry {x}")
    return format(x, "b")


def encode_seq(xs: Sequence[int]) -> int:
    """Sequence code of a non-empty list of naturals."""
    if len(xs) == 0:
        raise CodecError("cannot encode the empty sequence")
    text = ",".join(_bits(x) for x in xs)
    return int("".join(_PAIR[ch] for ch in reversed(text)), 2)


def seq_chars(g: int) -> str | None:
    """The forward character stream of a code, or None when malformed."""
    if g <= 0:
        return None
    bits = format(g, "b")
    if len(bits) % 2:
        return None
    out = []
    for i in range(len(bits) - 2, -1, -2):
        ch = _UNPAIR.get(bits[i:i + 2])
        if ch is None:
            return None
        out.append(ch)
    return "".join(out)


def decode_seq(g: int) -> list[int] | None:
    """Inverse of encode_seq; None marks a number outside its range."""
    text = seq_chars(g)
    if text is None:
        return None
    parts = text.split(",")
    for p in parts:
        if not p or (len(p) > 1 and p[0] == "0"):
            return None
    return [int(p, 2) for p in parts]


def is_seq_code(g: int) -> bool:
    return decode_seq(g) is not None


def concat(g1: int, g2: int) -> int:
    a, b = decode_seq(g1), decode_seq(g2)
    if a is None or b is None:
        raise CodecError("concat of a malformed sequence code")
    return encode_seq(a + b)


def pair(a: int, b: int) -> int:
    return encode_seq([a, b])


def unpair(g: int) -> tuple[int, int] | None:
    xs = decode_seq(g)
    if xs is None or len(xs) != 2:
        return None
    return xs[0], xs[1]


# -- symbols ---------------------------------------------------------------

BASIC_SYMBOLS = {
    "∀": 0, "(": 1, "0": 2, ")": 3, "S": 4, "¬": 5, "<": 6,
    "→": 7, "+": 8, "=": 9, "·": 10, ",": 11,
}


class SymbolTable:
    """Symbol <-> code map: fixed basic symbols, then a_i and x_i progressions."""

    def __init__(self, basic: dict[str, int] | None = None,
                 param_base: int = 20, var_base: int = 22, stride: int = 4):
        self.basic = dict(BASIC_SYMBOLS if basic is None else basic)
        self.by_code = {v: k for k, v in self.basic.items()}
        if len(self.by_code) != len(self.basic):
            raise CodecError("basic symbol codes are not injective")
        self.param_base = param_base
        self.var_base = var_base
        self.stride = stride

    def code(self, sym: str) -> int:
        if sym in self.basic:
            return self.basic[sym]
        if len(sym) > 1 and sym[0] in "xa" and sym[1:].isdigit() and int(sym[1:]) >= 1:
            i = int(sym[1:])
            base = self.var_base if sym[0] == "x" else self.param_base
            return base + self.stride * (i - 1)
        raise CodecError(f"unknown symbol {sym!r}")

    def symbol(self, code: int) -> str:
        if code in self.by_code:
            return self.by_code[code]
        for prefix, base in (("x", self.var_base), ("a", self.param_base)):
            if code >= base and (code - base) % self.stride == 0:
                return f"{prefix}{(code - base) // self.stride + 1}"
        raise CodecError(f"no symbol has code {code}")


DEFAULT_TABLE = SymbolTable()


def encode_expression(symbols: Iterable[str], table: SymbolTable = DEFAULT_TABLE) -> int:
    return encode_seq([table.code(s) for s in symbols])


def decode_expression(g: int, table: SymbolTable = DEFAULT_TABLE) -> list[str] | None:
    codes = decode_seq(g)
    if codes is None:
        return None
    try:
        return [table.symbol(c) for c in codes]
    except CodecError:
        return None


def encode_text(text: str) -> int:
    """Code of a description string, as the sequence of its UTF-8 bytes."""
    data = text.encode("utf-8")
    if not data:
        raise CodecError("empty description")
    return encode_seq(list(data))


def parse_number(text: str) -> int:
    """Decimal or 0b-prefixed binary natural."""
    t = text.strip()
    try:
        value = int(t[2:], 2) if t.lower().startswith("0b") else int(t, 10)
    except ValueError:
        raise CodecError(f"not a natural number: {text!r}") from None
    if value < 0:
        raise CodecError(f"not a natural number: {text!r}")
    return value


def format_number(g: int, binary: bool = False) -> str:
    return f"0b{g:b}" if binary else str(g)
