"""Textual form for polynomials in x with rational coefficients.

Grammar (whitespace ignored):

    polynomial ::= term (("+"|"-") term)*
    term       ::= coeff | [coeff] "x" | [coeff] "x^" int
    coeff      ::= int | int "/" int

The printer emits descending powers with explicit "^" and "p/q"
coefficients, omitting unit coefficients and the exponent 1, so that
print(parse(s)) always parses back to an equal polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import Poly


class PolyParseError(ValueError):
    """Raised with the offending token when a polynomial fails to parse."""

    def __init__(self, message: str, token: str):
        super().__init__(message)
        self.token = token


_TERM = re.compile(
    r"""
    (?P<sign>[+-]?)
    (?:
        (?P<coeff>\d+(?:/\d+)?)(?P<var1>x(?:\^(?P<exp1>\d+))?)?
      | (?P<var2>x(?:\^(?P<exp2>\d+))?)
    )
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> Poly:
    """Parse the grammar above into a Poly over the rationals."""
    s = re.sub(r"\s*([+-])\s*", r"\1", text.strip())
    if not s:
        raise PolyParseError("empty polynomial", text.strip() or "<empty>")
    gap = re.search(r"\s+", s)
    if gap:
        raise PolyParseError(
            f"missing operator before {s[gap.end():]!r}", s[gap.end() : gap.end() + 8]
        )
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == m.start():
            raise PolyParseError(f"unexpected token at {s[pos:]!r}", s[pos : pos + 8])
        if not first and m.group("sign") == "":
            raise PolyParseError(f"missing + or - before {s[pos:]!r}", s[pos : pos + 8])
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coeff") is not None:
            c = Fraction(m.group("coeff"))
            if m.group("var1"):
                exp = int(m.group("exp1")) if m.group("exp1") else 1
            else:
                exp = 0
        else:
            c = Fraction(1)
            exp = int(m.group("exp2")) if m.group("exp2") else 1
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * c
        pos = m.end()
        first = False
    degree = max(coeffs) if coeffs else 0
    return Poly([coeffs.get(k, Fraction(0)) for k in range(degree + 1)])


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """Render a rational-coefficient Poly in the grammar above."""
    if not p:
        return "0"
    if not p.is_rational():
        raise TypeError("only rational-coefficient polynomials have a text form")
    parts: list[str] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = Fraction(p.coeffs[k])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = _format_coeff(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else _format_coeff(mag) + var
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)
