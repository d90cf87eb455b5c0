"""Exact special values: rising factorials, Legendre polynomials, hypergeometric
series coefficients, and the "num/den" string form used by every serializer.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateParameterError

Rat = Fraction


def format_rational(q: Fraction) -> str:
    """Render q as "num/den", or "num" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial (x)_n = x(x+1)...(x+n-1); (x)_0 = 1."""
    if n < 0:
        raise ValueError(f"pochhammer order must be >= 0, got {n}")
    x = Fraction(x)
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


def falling(x, n: int) -> Fraction:
    """Falling factorial x(x-1)...(x-n+1)."""
    if n < 0:
        raise ValueError(f"falling order must be >= 0, got {n}")
    x = Fraction(x)
    out = Fraction(1)
    for k in range(n):
        out *= x - k
    return out


def binomial_general(x, m: int) -> Fraction:
    """Generalized binomial coefficient C(x, m) for rational x."""
    from math import factorial

    return falling(x, m) / factorial(m)


def gauss_2f1_coeff(a, b, c, ell: int) -> Fraction:
    """Taylor coefficient (a)_l (b)_l / (l! (c)_l) of the Gauss series 2F1(a,b;c;z)."""
    from math import factorial

    denom = pochhammer(c, ell)
    if denom == 0:
        raise DegenerateParameterError(
            f"2F1 coefficient pole: ({c})_{ell} = 0"
        )
    return pochhammer(a, ell) * pochhammer(b, ell) / (factorial(ell) * denom)


def legendre_coeffs(L: int) -> dict[int, Fraction]:
    """Coefficients {power: value} of the Legendre polynomial P_L, P_L(1) = 1.

    Built from the three-term recurrence (L+1) P_{L+1} = (2L+1) r P_L - L P_{L-1}.
    """
    if L < 0:
        raise ValueError(f"Legendre degree must be >= 0, got {L}")
    prev = {0: Fraction(1)}
    if L == 0:
        return prev
    cur = {1: Fraction(1)}
    for n in range(1, L):
        nxt: dict[int, Fraction] = {}
        for p, c in cur.items():
            nxt[p + 1] = nxt.get(p + 1, Fraction(0)) + Fraction(2 * n + 1, n + 1) * c
        for p, c in prev.items():
            nxt[p] = nxt.get(p, Fraction(0)) - Fraction(n, n + 1) * c
        prev, cur = cur, {p: c for p, c in nxt.items() if c != 0}
    return cur
