"""Small tokenizing helpers shared by the element literal parsers."""
from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError


def split_top(text: str, sep: str) -> list[str]:
    """Split ``text`` on ``sep`` at bracket depth zero."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", text, i)
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced bracket", text, len(text))
    parts.append(text[start:])
    return parts


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split a sum into signed terms at bracket depth zero.

    ``"1-2*x+x^2"`` becomes ``[(1, "1"), (-1, "2*x"), (1, "x^2")]``.
    """
    text = text.replace(" ", "")
    if not text:
        raise ParseError("empty literal", text, 0)
    terms, depth, sign, start = [], 0, 1, 0
    i = 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        start = i = 1
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and text[i - 1] not in "*/^":
            terms.append((sign, text[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    if start >= len(text):
        raise ParseError("dangling operator", text, len(text))
    terms.append((sign, text[start:]))
    return terms


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad rational number", text, 0) from None


def parse_monomial(term: str, symbols: str) -> tuple[Fraction, str | None, int]:
    """Parse ``coef*sym^k`` style terms; returns (coefficient, symbol, power).

    Coefficients may be rationals ``p/q``.  At most one symbol per term.
    """
    coef = Fraction(1)
    sym, power = None, 0
    for factor in term.split("*"):
        if not factor:
            raise ParseError("empty factor", term, 0)
        head = factor[0]
        if head in symbols:
            if sym is not None:
                raise ParseError("two symbols in one term", term, 0)
            sym = head
            rest = factor[1:]
            if rest.startswith("^"):
                try:
                    power = int(rest[1:])
                except ValueError:
                    raise ParseError("bad exponent", term, 0) from None
            elif rest:
                raise ParseError("unexpected characters", term, 0)
            else:
                power = 1
        else:
            coef *= parse_rational(factor)
    return coef, sym, power


def format_poly(coeffs, var: str, fmt=str, is_zero=None, is_one=None) -> str:
    """Format a low-to-high coefficient sequence as ``c_k*var^k+...``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if (is_zero(c) if is_zero else c == 0):
            continue
        one = is_one(c) if is_one else c == 1
        cs = fmt(c)
        if "+" in cs[1:] or "-" in cs[1:]:
            cs = f"({cs})"
        if k == 0:
            parts.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            parts.append(mono if one else f"{cs}*{mono}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out
