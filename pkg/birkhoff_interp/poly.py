"""Exact univariate polynomial arithmetic for ``birkhoff-interp``.

Scalars are ``fractions.Fraction`` throughout; a ``Polynomial`` is an
immutable dense sequence of coefficients in ascending powers of ``x``.
Nothing in this package ever touches floating point, so every zero test
made by the solvers is exact.

The text format used by the CLI is produced by ``format_polynomial``
and read back by ``parse_polynomial``, e.g. ``1/2*x^3 - x^2 + 4*x + 3/2``.
"""

from __future__ import annotations

import dataclasses
import math
import re
from collections.abc import Iterable
from fractions import Fraction

from .errors import PolynomialParseError, ProblemError

__all__ = [
    "Polynomial",
    "Rational",
    "format_polynomial",
    "format_rational",
    "format_terms",
    "parse_polynomial",
    "parse_rational",
    "poly_add",
    "poly_derivative",
    "poly_eval",
    "poly_scale",
    "poly_shift_up",
]

Rational = Fraction

RationalLike = Fraction | int


@dataclasses.dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``. Trailing zeros are
    stripped on construction, so the zero polynomial is the empty tuple
    and equal polynomials compare (and hash) equal.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def monomial(cls, power: int, coeff: RationalLike = 1) -> Polynomial:
        """Returns ``coeff * x**power``."""
        if power < 0:
            raise ValueError(f"Monomial power must be non-negative, got {power}.")
        return cls((0,) * power + (coeff,))

    @classmethod
    def constant(cls, value: RationalLike) -> Polynomial:
        """Returns the constant polynomial ``value``."""
        return cls((value,))

    @property
    def degree(self) -> int | None:
        """Degree of the polynomial, ``None`` for the zero polynomial."""
        if not self.coeffs:
            return None
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, power: int) -> Fraction:
        """Coefficient of ``x**power`` (zero beyond the degree)."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_add(self, other)

    def __neg__(self) -> Polynomial:
        return poly_scale(Fraction(-1), self)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_add(self, -other)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Coefficient-wise sum of two polynomials."""
    size = max(len(p.coeffs), len(q.coeffs))
    return Polynomial(tuple(p.coeff(i) + q.coeff(i) for i in range(size)))


def poly_scale(c: RationalLike, p: Polynomial) -> Polynomial:
    """Multiplies every coefficient of ``p`` by the scalar ``c``."""
    if c == 0:
        return Polynomial()
    return Polynomial(tuple(c * a for a in p.coeffs))


def poly_shift_up(p: Polynomial) -> Polynomial:
    """Returns ``x * p``."""
    if p.is_zero:
        return p
    return Polynomial((Fraction(0), *p.coeffs))


def poly_derivative(p: Polynomial, m: int) -> Polynomial:
    """Returns the ``m``-th formal derivative of ``p``.

    Args:
        p: Polynomial to differentiate.
        m: Non-negative derivative order. Orders above the degree give
            the zero polynomial.

    Returns:
        ``D**m p``, using ``D**m x**n = n!/(n-m)! x**(n-m)``.
    """
    if m < 0:
        raise ValueError(f"Derivative order must be non-negative, got {m}.")
    if m == 0:
        return p
    return Polynomial(
        tuple(math.perm(n, m) * c for n, c in enumerate(p.coeffs) if n >= m)
    )


def poly_eval(p: Polynomial, x: RationalLike) -> Fraction:
    """Evaluates ``p`` at ``x`` exactly (Horner's scheme)."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def format_rational(r: RationalLike) -> str:
    """Renders a rational as ``"a"`` or ``"a/b"``."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parses ``"a"`` or ``"a/b"`` (``b > 0``) into a ``Fraction``.

    Decimal points and exponents are rejected so that no value can pick
    up a binary floating-point representation on the way in.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ProblemError(f"{text!r} is not a rational of the form 'a' or 'a/b'.")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as e:
        raise ProblemError(f"{text!r} has a zero denominator.") from e


def format_terms(terms: Iterable[tuple[int, Fraction]], variable: str) -> str:
    """Joins ``(power, coeff)`` pairs into signed text, in the given order.

    Zero coefficients are skipped and unit coefficients are omitted, so
    ``[(2, 1), (0, -3/2)]`` with variable ``x`` renders ``x^2 - 3/2``.
    """
    parts: list[str] = []
    for power, coeff in terms:
        if coeff == 0:
            continue
        magnitude = abs(coeff)
        if power == 0:
            body = format_rational(magnitude)
        else:
            mono = variable if power == 1 else f"{variable}^{power}"
            body = mono if magnitude == 1 else f"{format_rational(magnitude)}*{mono}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" {'+' if coeff > 0 else '-'} {body}")
    return "".join(parts) or "0"


def format_polynomial(p: Polynomial, variable: str = "x") -> str:
    """Renders ``p`` in descending powers, e.g. ``1/2*x^3 - x^2 + 3/2``."""
    descending = ((n, p.coeffs[n]) for n in reversed(range(len(p.coeffs))))
    return format_terms(descending, variable)


_TERM_RE = re.compile(
    r"^(?:"
    r"(?P<num>\d+)(?:/(?P<den>\d+))?(?:\*?x(?:\^(?P<pow>\d+))?)?"
    r"|x(?:\^(?P<bare_pow>\d+))?"
    r")$"
)


def parse_polynomial(text: str) -> Polynomial:
    """Parses the text produced by ``format_polynomial``.

    Integer and fractional coefficients are accepted with or without a
    ``*`` before ``x``; whitespace is ignored and repeated powers are
    summed.

    Raises:
        PolynomialParseError: if ``text`` is not in the grammar.
    """
    compact = "".join(text.split())
    if not compact:
        raise PolynomialParseError("Empty polynomial text.")
    if compact[0] not in "+-":
        compact = "+" + compact
    acc: dict[int, Fraction] = {}
    for piece in re.split(r"(?=[+-])", compact)[1:]:
        sign, body = piece[0], piece[1:]
        match = _TERM_RE.match(body)
        if not body or match is None:
            raise PolynomialParseError(f"Cannot parse term {piece!r} in {text!r}.")
        if match["num"] is not None:
            den = int(match["den"]) if match["den"] is not None else 1
            if den == 0:
                raise PolynomialParseError(f"Zero denominator in term {piece!r}.")
            coeff = Fraction(int(match["num"]), den)
            has_var = "x" in body
            power = int(match["pow"]) if match["pow"] is not None else int(has_var)
        else:
            coeff = Fraction(1)
            power = int(match["bare_pow"]) if match["bare_pow"] is not None else 1
        if sign == "-":
            coeff = -coeff
        acc[power] = acc.get(power, Fraction(0)) + coeff
    size = max(acc) + 1
    return Polynomial(tuple(acc.get(n, Fraction(0)) for n in range(size)))
