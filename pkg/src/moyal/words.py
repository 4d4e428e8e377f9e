"""Formal star-monomial words, operator orderings, and the BCH identity.

A :class:`StarWord` is a scalar times a power of the formal hbar times a
sequence of polynomial letters to be star-multiplied left to right; a
:class:`StarExpression` is a finite sum of words.  Words keep operator
products unevaluated so that distinct orderings of the same symbol stay
distinguishable until :func:`expand` collapses them into the polynomial
algebra.

Two orderings of a (q, p)-polynomial are provided: the fully symmetrized
form (every interleaving of the letters, equally weighted) and the
symmetric-antinormal form (half all-q-left plus half all-q-right, applied
to a secant-corrected symbol).  Both expand back to the symbol they order,
which is checked property-style in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .poly import HBAR, P, PhasePolynomial, Q, star_product
from .scalars import ExactScalar

__all__ = [
    "StarWord",
    "StarExpression",
    "expand",
    "weyl_symmetrize",
    "star_function_S",
    "sas_order",
    "bch_check",
    "BchReport",
    "format_word",
]


@dataclass(frozen=True)
class StarWord:
    """scalar * hbar^hbar_power * (letters[0] (*) letters[1] (*) ...)."""

    scalar: ExactScalar
    hbar_power: int
    letters: tuple[PhasePolynomial, ...]

    def expand(self) -> PhasePolynomial:
        acc = PhasePolynomial.constant(self.scalar).mul_hbar_power(self.hbar_power)
        for letter in self.letters:
            acc = star_product(acc, letter)
        return acc


@dataclass(frozen=True)
class StarExpression:
    words: tuple[StarWord, ...]

    def __add__(self, other: "StarExpression") -> "StarExpression":
        return StarExpression(self.words + other.words)

    def scale(self, c: ExactScalar) -> "StarExpression":
        return StarExpression(
            tuple(
                StarWord(w.scalar * c, w.hbar_power, w.letters) for w in self.words
            )
        )


def expand(e: StarExpression | StarWord) -> PhasePolynomial:
    """Collapse a word or a sum of words into the polynomial algebra."""
    if isinstance(e, StarWord):
        return e.expand()
    acc = PhasePolynomial.zero()
    for w in e.words:
        acc = acc + w.expand()
    return acc


def format_word(w: StarWord) -> str:
    """ASCII rendering like ``(1/3)*q**q**p``; ``**`` is the star."""
    coeff = _scalar_text(w.scalar)
    parts = []
    if coeff:
        parts.append(coeff)
    if w.hbar_power == 1:
        parts.append("hbar")
    elif w.hbar_power >= 2:
        parts.append(f"hbar^{w.hbar_power}")
    body = "**".join(_letter_text(x) for x in w.letters)
    if body:
        parts.append(body)
    if not parts:
        return "1"
    return "*".join(parts)


def _scalar_text(c: ExactScalar) -> str:
    if c == 1:
        return ""
    if c.im == 0:
        r = c.re
        if r.denominator == 1:
            return str(r.numerator) if r.numerator >= 0 else f"({r.numerator})"
        return f"({r.numerator}/{r.denominator})"
    return f"({c})"


def _letter_text(x: PhasePolynomial) -> str:
    if x == Q:
        return "q"
    if x == P:
        return "p"
    return f"({x})"


def _check_hbar_free(f: PhasePolynomial, what: str):
    for (_a, _b, h) in f.terms:
        if h:
            raise ValueError(f"{what} requires an hbar-free symbol")


def weyl_symmetrize(n: int, m: int) -> StarExpression:
    """All interleavings of n q-letters and m p-letters, equally weighted.

    Expands to exactly q^n p^m: the deformation corrections of the
    individual words cancel in the symmetrized sum.
    """
    if n < 0 or m < 0:
        raise ValueError("letter counts must be non-negative")
    total = n + m
    weight = ExactScalar(Fraction(1, math.comb(total, n)))
    words = []
    for q_slots in combinations(range(total), n):
        q_set = set(q_slots)
        letters = tuple(Q if k in q_set else P for k in range(total))
        words.append(StarWord(weight, 0, letters))
    return StarExpression(tuple(words))


def star_function_S(f: PhasePolynomial) -> StarExpression:
    """Rewrite an hbar-free polynomial as its fully symmetrized word sum."""
    _check_hbar_free(f, "star_function_S")
    words: list[StarWord] = []
    for (a, b, _h), c in sorted(f.terms.items(), reverse=True):
        words.extend(weyl_symmetrize(a, b).scale(c).words)
    return StarExpression(tuple(words))


# exact secant-series coefficients s_k with sec x = sum_k s_k x^{2k},
# obtained by inverting the cosine series
def _sec_coefficients(upto: int) -> list[Fraction]:
    s = [Fraction(1)]
    for k in range(1, upto + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += Fraction((-1) ** j, math.factorial(2 * j)) * s[k - j]
        s.append(-acc)
    return s


def sas_order(f: PhasePolynomial) -> StarExpression:
    """Symmetric-antinormal ordering of an hbar-free polynomial.

    First corrects the symbol with the secant of half the mixed second
    derivative (a finite series on polynomials), then writes each corrected
    term as half the all-q-left word plus half the all-q-right word.  The
    correction is exactly what makes the expansion reproduce f.
    """
    _check_hbar_free(f, "sas_order")
    # G = sec((hbar/2) d_q d_p) f, with hbar entering as a formal power;
    # the mixed-derivative ladder kills any polynomial, so the series is finite
    max_k = 0
    fk = f
    while not fk.is_zero:
        fk = fk.diff_q().diff_p()
        if not fk.is_zero:
            max_k += 1
    sec = _sec_coefficients(max_k // 2)
    g = PhasePolynomial.zero()
    deriv = f
    for k2 in range(0, max_k // 2 + 1):
        if k2:
            deriv = deriv.diff_q(2).diff_p(2)
            if deriv.is_zero:
                break
        w = sec[k2] / Fraction(4 ** k2)
        g = g + deriv.scale(w).mul_hbar_power(2 * k2)
    half = ExactScalar(Fraction(1, 2))
    words: list[StarWord] = []
    for (a, b, h), c in sorted(g.terms.items(), reverse=True):
        left = tuple([Q] * a + [P] * b)
        right = tuple([P] * b + [Q] * a)
        words.append(StarWord(c * half, h, left))
        words.append(StarWord(c * half, h, right))
    return StarExpression(tuple(words))


# -- BCH identity on plane-wave Taylor truncations -----------------------


class _ExtPoly:
    """Polynomial in (q, p, hbar) and two bookkeeping wave numbers.

    Internal to the BCH check; keys are (dq, dp, dh, dxi, deta) and all
    coefficient arithmetic stays exact.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def add(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = _ExtPoly.__new__(_ExtPoly)
        r.terms = out
        return r

    def mul(self, other, aux_cap: int):
        out = {}
        for (a1, b1, h1, x1, e1), c1 in self.terms.items():
            for (a2, b2, h2, x2, e2), c2 in other.terms.items():
                x = x1 + x2
                e = e1 + e2
                if x + e > aux_cap:
                    continue
                key = (a1 + a2, b1 + b2, h1 + h2, x, e)
                c = c1 * c2
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        r = _ExtPoly.__new__(_ExtPoly)
        r.terms = out
        return r

    def scale(self, c):
        r = _ExtPoly.__new__(_ExtPoly)
        r.terms = {k: v * c for k, v in self.terms.items()}
        return r

    def diff(self, axis: int, n: int):
        out = {}
        for key, c in self.terms.items():
            e = key[axis]
            if e < n:
                continue
            fall = 1
            for j in range(n):
                fall *= e - j
            new = list(key)
            new[axis] = e - n
            out[tuple(new)] = c * fall
        r = _ExtPoly.__new__(_ExtPoly)
        r.terms = out
        return r

    def degree_qp(self) -> int:
        return max((k[0] + k[1] for k in self.terms), default=-1)

    def star(self, other, aux_cap: int):
        n_max = min(self.degree_qp(), other.degree_qp())
        if n_max < 0:
            return _ExtPoly()
        acc = _ExtPoly()
        half_i = ExactScalar(0, Fraction(1, 2))
        for n in range(n_max + 1):
            coeff = (half_i ** n) * Fraction(1, math.factorial(n))
            piece = _ExtPoly()
            for j in range(n + 1):
                df = self.diff(0, n - j).diff(1, j)
                if not df.terms:
                    continue
                dg = other.diff(1, n - j).diff(0, j)
                if not dg.terms:
                    continue
                sign = -1 if j & 1 else 1
                piece = piece.add(df.mul(dg, aux_cap).scale(sign * math.comb(n, j)))
            if piece.terms:
                shifted = _ExtPoly.__new__(_ExtPoly)
                shifted.terms = {
                    (a, b, h + n, x, e): c * coeff
                    for (a, b, h, x, e), c in piece.terms.items()
                }
                acc = acc.add(shifted)
        return acc


@dataclass(frozen=True)
class BchReport:
    order: int
    passed: bool
    first_failing_grade: int | None


def bch_check(order: int) -> BchReport:
    """Verify the plane-wave composition law on Taylor truncations.

    Star-multiplies the truncated exponentials of i*xi*q and i*eta*p, scales
    by the phase exp(i*hbar*xi*eta/2), and compares against the truncated
    exponential of i*(xi*q + eta*p), all through total wave-number degree
    ``order``.  Returns the first failing grade, None when all match.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if order > 8:
        raise ValueError("order capped at 8; higher truncations get slow")
    i_unit = ExactScalar(0, 1)

    # exp(i xi q): sum_k (i xi q)^k / k!
    left = _ExtPoly(
        {
            (k, 0, 0, k, 0): (i_unit ** k) * Fraction(1, math.factorial(k))
            for k in range(order + 1)
        }
    )
    right = _ExtPoly(
        {
            (0, k, 0, 0, k): (i_unit ** k) * Fraction(1, math.factorial(k))
            for k in range(order + 1)
        }
    )
    # exp(i hbar xi eta / 2)
    phase = _ExtPoly(
        {
            (0, 0, k, k, k): (i_unit ** k) * Fraction(1, 2 ** k * math.factorial(k))
            for k in range(order // 2 + 1)
        }
    )
    # exp(i (xi q + eta p)) via the multinomial expansion
    combined = _ExtPoly(
        {
            (a, b, 0, a, b): (i_unit ** (a + b))
            * Fraction(1, math.factorial(a) * math.factorial(b))
            for a in range(order + 1)
            for b in range(order + 1 - a)
        }
    )

    lhs = left.star(right, order).mul(phase, order)
    diff = lhs.add(combined.scale(ExactScalar(-1)))
    bad = sorted({x + e for (_a, _b, _h, x, e) in diff.terms})
    first = bad[0] if bad else None
    return BchReport(order=order, passed=first is None, first_failing_grade=first)
