"""Text parsers for polynomials, ideals, vectors, point lists and matrices.

Errors carry the byte offset (UTF-8) of the offending character.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import NonHomogeneous, ParseError
from ..polyalg.polynomial import Polynomial

__all__ = ["parse_polynomial", "parse_ideal", "parse_vector", "parse_points", "parse_matrix", "parse_rational"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^()]))")


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _tokenize(text: str, base: int = 0):
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", base + _byte_offset(text, i))
        start = base + _byte_offset(text, m.start(m.lastgroup if m.lastgroup != "idx" else "var"))
        if m.group("num") is not None:
            toks.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            toks.append(("var", int(m.group("idx")), start))
        else:
            toks.append((m.group("op"), None, start))
        i = m.end()
    toks.append(("end", None, base + _byte_offset(text, len(text))))
    return toks


class _Parser:
    def __init__(self, toks, nvars):
        self.toks = toks
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek()[0] in ("*", "/"):
            op, _, off = self.take()
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.degree() > 0:
                    raise ParseError("can only divide by a constant", off)
                c = rhs.coefficient((0,) * self.nvars)
                if c == 0:
                    raise ParseError("division by zero", off)
                acc = acc * (1 / c)
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, val, off = self.take("num")
            base = base ** val
        return base

    def atom(self):
        kind, val, off = self.peek()
        if kind == "num":
            self.take()
            return Polynomial.constant(val, self.nvars)
        if kind == "var":
            self.take()
            if val >= self.nvars:
                raise ParseError(f"variable x{val} out of range for {self.nvars} variables", off)
            return Polynomial.variable(val, self.nvars)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(kind if val is None else val)
        raise ParseError(f"unexpected {what}", off)


def _max_var(toks) -> int:
    idx = [v for k, v, _ in toks if k == "var"]
    return max(idx) if idx else 0


def parse_polynomial(text: str, nvars: int | None = None, homogeneous: bool = False, _base: int = 0) -> Polynomial:
    """Parse ``x0*x2 - x1^2``-style input.

    ``nvars`` defaults to one more than the largest variable index seen.
    With ``homogeneous=True`` a non-homogeneous result raises NonHomogeneous.
    """
    toks = _tokenize(text, _base)
    if nvars is None:
        nvars = _max_var(toks) + 1
    p = _Parser(toks, nvars)
    poly = p.expr()
    p.take("end")
    if homogeneous and not poly.is_homogeneous():
        raise NonHomogeneous(f"{poly} is not homogeneous")
    return poly


def _split_top_level(text: str):
    depth, start = 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in ",;" and depth == 0:
            yield start, text[start:i]
            start = i + 1
    yield start, text[start:]


def parse_ideal(text: str, nvars: int | None = None) -> list[Polynomial]:
    """Comma- or semicolon-separated homogeneous generators."""
    parts = list(_split_top_level(text))
    if nvars is None:
        nvars = _max_var(_tokenize(text.replace(",", " ").replace(";", " "))) + 1
    gens = []
    for start, chunk in parts:
        if not chunk.strip():
            raise ParseError("empty generator", _byte_offset(text, start))
        gens.append(parse_polynomial(chunk, nvars, homogeneous=True, _base=_byte_offset(text, start)))
    return gens


_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str, offset: int = 0) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text.strip()!r}", offset)
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", offset)
    return Fraction(int(m.group(1)), den)


def _parse_list(text: str, base: int):
    out = []
    pos = 0
    for piece in text.split(","):
        out.append(parse_rational(piece, base + _byte_offset(text, pos)))
        pos += len(piece) + 1
    return tuple(out)


def parse_vector(text: str) -> tuple[Fraction, ...]:
    """``2,-1,-1`` with optional surrounding brackets or parentheses."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if s[:1] in "([" and s[-1:] in ")]":
        return _parse_list(s[1:-1], _byte_offset(text, lead + 1))
    return _parse_list(s, _byte_offset(text, lead))


_GROUP = re.compile(r"[\(\[]([^\(\)\[\]]*)[\)\]]")


def _parse_groups(text: str):
    s = text.strip()
    inner_start = 0
    if s.startswith("[") and s.endswith("]") and s.count("[") + s.count("(") > 1:
        inner = text[text.index("[") + 1 : text.rindex("]")]
        inner_start = text.index("[") + 1
    else:
        inner = text
    groups = []
    last = 0
    for m in _GROUP.finditer(inner):
        gap = inner[last : m.start()].strip().strip(",").strip()
        if gap:
            raise ParseError(f"unexpected text {gap!r}", _byte_offset(text, inner_start + last))
        groups.append(_parse_list(m.group(1), _byte_offset(text, inner_start + m.start(1))))
        last = m.end()
    tail = inner[last:].strip().strip(",").strip()
    if tail:
        raise ParseError(f"unexpected text {tail!r}", _byte_offset(text, inner_start + last))
    if not groups:
        raise ParseError("no vectors found", 0)
    return groups


def parse_points(text: str) -> list[tuple[Fraction, ...]]:
    """``[(1,0),(0,1/2)]``; entries may be integers or ``p/q``."""
    pts = _parse_groups(text)
    if len({len(p) for p in pts}) != 1:
        raise ParseError("points have different lengths", 0)
    return pts


def parse_matrix(text: str) -> list[tuple[Fraction, ...]]:
    """``[[1,1],[0,1]]`` (rows)."""
    rows = _parse_groups(text)
    if len({len(r) for r in rows}) != 1 or len(rows) != len(rows[0]):
        raise ParseError("matrix must be square", 0)
    return rows
