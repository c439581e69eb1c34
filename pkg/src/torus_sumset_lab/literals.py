"""Text forms for sets.

Circle and real-line sets use the grammar::

    set      := interval (';' interval)* | 'T' | 'empty'
    interval := ('[' | '(') rational ',' rational (']' | ')')
    rational := integer ('/' positive-integer)?

For circle sets endpoints are reduced mod 1 and a second endpoint below the
first (after reduction) wraps through 0. A left endpoint outside [0, 1)
is accepted with a :class:`LiteralWarning`. When both endpoints reduce to the
same point, the raw values decide: equal raw values give a single point,
different raw values give a length-1 interval. Real-line sets take the
endpoints literally and do not accept ``T``.

Z_p sets are written ``p:{j1,j2,...}`` or ``p:0x<hex bitset>``.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction

from .circle import CircleInterval, SimpleSet, canonicalize, EMPTY, FULL

__all__ = [
    "SetLiteralError",
    "LiteralWarning",
    "parse_circle_set",
    "parse_real_set",
    "parse_set_literal",
    "parse_zp_set",
    "format_circle_set",
    "format_real_set",
    "format_zp_set",
]


class SetLiteralError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class LiteralWarning(UserWarning):
    pass


_RATIONAL = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, chars: str) -> str:
        c = self.peek()
        if not c or c not in chars:
            found = repr(c) if c else "end of input"
            raise SetLiteralError(f"expected one of {chars!r}, found {found}", self.text, self.pos)
        self.pos += 1
        return c

    def rational(self) -> Fraction:
        m = _RATIONAL.match(self.text, self.pos)
        if not m:
            raise SetLiteralError("expected a rational number", self.text, self.pos)
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise SetLiteralError("zero denominator", self.text, m.start(2))
        self.pos = m.end()
        return Fraction(int(num), int(den) if den else 1)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_intervals(text: str):
    sc = _Scanner(text)
    out = []
    while True:
        start_pos = sc.pos
        lb = sc.expect("[(")
        a = sc.rational()
        sc.expect(",")
        b = sc.rational()
        rb = sc.expect("])")
        out.append((a, b, lb == "[", rb == "]", start_pos))
        if sc.at_end():
            return out
        sc.expect(";")


def parse_circle_set(text: str) -> SimpleSet:
    stripped = text.strip()
    if stripped == "T":
        return FULL
    if stripped == "empty":
        return EMPTY
    pieces = []
    for a, b, lc, rc, pos in _parse_intervals(text):
        ra, rb = a % 1, b % 1
        if rb > ra:
            length = rb - ra
        elif rb < ra:
            length = rb - ra + 1
        else:
            length = Fraction(0) if a == b else Fraction(1)
        if not 0 <= a < 1:
            warnings.warn(
                f"left endpoint {a} at position {pos} reduced mod 1 to {ra}",
                LiteralWarning,
                stacklevel=2,
            )
        pieces.append(CircleInterval(ra, length, lc, rc))
    return canonicalize(pieces)


def parse_real_set(text: str):
    from .real_line import RealInterval, real_set

    stripped = text.strip()
    if stripped == "empty":
        return real_set()
    if stripped == "T":
        raise SetLiteralError("'T' is not a real-line set", text, text.index("T"))
    pieces = []
    for a, b, lc, rc, pos in _parse_intervals(text):
        if b < a:
            raise SetLiteralError("right endpoint below left endpoint", text, pos)
        pieces.append(RealInterval(a, b, lc, rc))
    return real_set(*pieces)


def parse_set_literal(text: str, real: bool = False):
    return parse_real_set(text) if real else parse_circle_set(text)


def _bracket(lc: bool, a, b, rc: bool) -> str:
    return f"{'[' if lc else '('}{a},{b}{']' if rc else ')'}"


def format_circle_set(S: SimpleSet) -> str:
    if not S.components:
        return "empty"
    if S.is_full:
        return "T"
    parts = []
    for iv in S.components:
        end = iv.end
        if end > 1 and iv.length < 1:
            end -= 1
        parts.append(_bracket(iv.left_closed, iv.start, end, iv.right_closed))
    return ";".join(parts)


def format_real_set(S) -> str:
    if not S.components:
        return "empty"
    return ";".join(_bracket(iv.left_closed, iv.a, iv.b, iv.right_closed) for iv in S.components)


_ZP_LIST = re.compile(r"^\s*(\d+)\s*:\s*\{([^}]*)\}\s*$")
_ZP_HEX = re.compile(r"^\s*(\d+)\s*:\s*0x([0-9a-fA-F]+)\s*$")


def parse_zp_set(text: str):
    from .zp import ZpSet

    m = _ZP_LIST.match(text)
    if m:
        p = int(m.group(1))
        body = m.group(2).strip()
        elems = []
        if body:
            for tok in body.split(","):
                tok = tok.strip()
                if not re.fullmatch(r"-?\d+", tok):
                    raise SetLiteralError(f"bad residue {tok!r}", text, text.index(tok))
                elems.append(int(tok))
        return ZpSet.from_elements(p, elems)
    m = _ZP_HEX.match(text)
    if m:
        return ZpSet(int(m.group(1)), int(m.group(2), 16))
    raise SetLiteralError("expected 'p:{j1,...}' or 'p:0x<hex>'", text, 0)


def format_zp_set(B, hex_form: bool | None = None) -> str:
    if hex_form is None:
        hex_form = B.p > 64
    if hex_form:
        return f"{B.p}:0x{B.bits:x}"
    return f"{B.p}:{{{','.join(map(str, B.elements()))}}}"
