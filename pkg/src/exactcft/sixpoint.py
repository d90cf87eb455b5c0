"""The six-point twist-2 structures and their two-dimensional restriction.

The 4D forms are finite signed sums of Laurent monomials in the fifteen
squared distances X_ij. Restricting to 2D substitutes X_ij by the product of
the two chiral differences; the result factors over a common prefactor into
a rational function of the four chiral cross ratios, and that factorization
is verified exactly (per-chirality expansion with the Ptolemy relation
x13 x24 = x12 x34 + x14 x23) before any series is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import ConsistencyError
from .pairs import PairSum, TwoChiralSum
from .series import TruncatedSeries
from .special import format_rational

POINTS = (1, 2, 3, 4, 5, 6)

# chiral cross ratios and Ptolemy complements, as pair-exponent maps
U1 = {(1, 2): 1, (3, 4): 1, (1, 3): -1, (2, 4): -1}
U3 = {(3, 4): 1, (5, 6): 1, (3, 5): -1, (4, 6): -1}
ONE_MINUS_U1 = {(1, 4): 1, (2, 3): 1, (1, 3): -1, (2, 4): -1}
ONE_MINUS_U3 = {(3, 6): 1, (4, 5): 1, (3, 5): -1, (4, 6): -1}

# common prefactor of the restricted structures:
# 1/(X12^2 X13 X24 X34 X35 X46 X56^2)
PREFACTOR_2D = {
    (1, 2): Fraction(-2),
    (1, 3): Fraction(-1),
    (2, 4): Fraction(-1),
    (3, 4): Fraction(-1),
    (3, 5): Fraction(-1),
    (4, 6): Fraction(-1),
    (5, 6): Fraction(-2),
}

SERIES_VARS = ("u_plus", "u_minus", "uprime_plus", "uprime_minus")


def _xmono(coeff, exps) -> PairSum:
    return PairSum.monomial(POINTS, coeff, exps, antisym=False)


def _antisymmetrize(s: PairSum, i: int, j: int) -> PairSum:
    swap = {p: p for p in POINTS}
    swap[i], swap[j] = j, i
    return s - s.relabel(swap)


@dataclass(frozen=True)
class SixPointStructure:
    """A named structure in its 4D signed-monomial form (dims d = d' = 3)."""

    name: str
    monomials: PairSum

    def __post_init__(self):
        if self.monomials.antisym:
            raise ValueError("squared-distance symbols must be unsigned")


def build_structure(name: str) -> SixPointStructure:
    """Fully expanded signed-monomial form of the named structure."""
    if name == "E6":
        base = (
            _xmono(1, {(1, 5): 1, (2, 6): 1, (3, 4): 1})
            + _xmono(-2, {(1, 5): 1, (2, 3): 1, (4, 6): 1})
            + _xmono(-2, {(1, 5): 1, (2, 4): 1, (3, 6): 1})
        )
        numer = _antisymmetrize(_antisymmetrize(base, 1, 2), 5, 6)
        denom = {
            (1, 2): -2,
            (1, 3): -1,
            (1, 4): -1,
            (2, 3): -1,
            (2, 4): -1,
            (3, 5): -1,
            (4, 5): -1,
            (3, 6): -1,
            (4, 6): -1,
            (5, 6): -2,
        }
        return SixPointStructure("E6", numer.mul_monomial(1, denom))
    if name == "B":
        left = _xmono(1, {(1, 4): -1, (2, 3): -1}) - _xmono(1, {(2, 4): -1, (1, 3): -1})
        right = _xmono(1, {(3, 6): -1, (4, 5): -1}) - _xmono(1, {(4, 6): -1, (3, 5): -1})
        pre = {(1, 2): -2, (3, 4): -1, (5, 6): -2}
        return SixPointStructure("B", (left * right).mul_monomial(1, pre))
    if name == "BminusHalfE":
        b = build_structure("B").monomials
        e = build_structure("E6").monomials
        return SixPointStructure("BminusHalfE", b + e.scale(Fraction(-1, 2)))
    raise ValueError(f"unknown structure {name!r}")


def _u_polynomial(name: str) -> dict[tuple[int, int, int, int], Fraction]:
    """Numerator over the denominator (1-u+)(1-u-)(1-u'+)(1-u'-), keyed by
    exponents of (u+, u-, u'+, u'-)."""

    def poly_mul(p, q):
        out: dict[tuple[int, int, int, int], Fraction] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return {e: c for e, c in out.items() if c != 0}

    sum12 = {
        (1, 0, 0, 0): Fraction(1),
        (0, 1, 0, 0): Fraction(1),
        (1, 1, 0, 0): Fraction(-1),
    }
    sum56 = {
        (0, 0, 1, 0): Fraction(1),
        (0, 0, 0, 1): Fraction(1),
        (0, 0, 1, 1): Fraction(-1),
    }
    diff12 = {(1, 0, 0, 0): Fraction(1), (0, 1, 0, 0): Fraction(-1)}
    diff56 = {(0, 0, 1, 0): Fraction(1), (0, 0, 0, 1): Fraction(-1)}
    if name == "B":
        return poly_mul(sum12, sum56)
    if name == "BminusHalfE":
        return poly_mul(diff12, diff56)
    if name == "E6":
        b = poly_mul(sum12, sum56)
        bme = poly_mul(diff12, diff56)
        out = {e: 2 * c for e, c in b.items()}
        for e, c in bme.items():
            out[e] = out.get(e, Fraction(0)) - 2 * c
            if out[e] == 0:
                del out[e]
        return out
    raise ValueError(f"no 2D closed form registered for {name!r}")


@dataclass(frozen=True)
class ChiralRestriction:
    """Verified 2D form: prefactor * numerator / product of (1 - u) factors."""

    name: str
    prefactor: dict[tuple[int, int], Fraction]
    numerator: dict[tuple[int, int, int, int], Fraction]

    def series(self, cap: int) -> TruncatedSeries:
        """Expand numerator / ((1-u+)(1-u-)(1-u'+)(1-u'-)) to the cap."""
        geo = TruncatedSeries.constant(SERIES_VARS, cap, 1)
        for idx in range(4):
            one_var = TruncatedSeries(
                SERIES_VARS,
                cap,
                {
                    tuple(k if i == idx else 0 for i in range(4)): Fraction(1)
                    for k in range(cap + 1)
                },
            )
            geo = geo * one_var
        num = TruncatedSeries(SERIES_VARS, cap, self.numerator)
        return num * geo

    def to_json(self) -> dict:
        return {
            "prefactor": {
                f"{i},{j}": format_rational(e)
                for (i, j), e in sorted(self.prefactor.items())
            },
            "numerator": [
                {"exponents": list(e), "coeff": format_rational(c)}
                for e, c in sorted(self.numerator.items())
            ],
            "denominator": "(1-u+)(1-u-)(1-u'+)(1-u'-)",
        }


def _u_monomial_exps(key: tuple[int, int, int, int]):
    a, b, c, d = key
    plus: dict[tuple[int, int], Fraction] = {}
    minus: dict[tuple[int, int], Fraction] = {}

    def bump(target, mapping, k):
        for pr, e in mapping.items():
            target[pr] = target.get(pr, Fraction(0)) + e * k
            if target[pr] == 0:
                del target[pr]

    bump(plus, U1, a)
    bump(minus, U1, b)
    bump(plus, U3, c)
    bump(minus, U3, d)
    return plus, minus


def restrict_2d(structure: SixPointStructure) -> ChiralRestriction:
    """Restrict the 4D monomials to 2D and verify the closed factored form.

    The identity checked exactly, per term and across both chiralities, is

        (structure / prefactor) * (1-u+)(1-u-)(1-u'+)(1-u'-) = numerator,

    with every (1-u) written as its Ptolemy monomial x14 x23/(x13 x24).
    A nonzero remainder means the expansion went wrong somewhere.
    """
    numerator = _u_polynomial(structure.name)

    lhs = TwoChiralSum(POINTS)
    inv_pref = {pr: -e for pr, e in PREFACTOR_2D.items()}
    for coeff, exps in structure.monomials:
        both = dict(exps)
        for pr, e in inv_pref.items():
            both[pr] = both.get(pr, Fraction(0)) + e
        lhs = lhs + TwoChiralSum.monomial(POINTS, coeff, both, both)
    # multiply by the denominator in Ptolemy-monomial form, one factor per
    # chirality and channel
    lhs = lhs.mul_monomial(1, ONE_MINUS_U1, {})
    lhs = lhs.mul_monomial(1, {}, ONE_MINUS_U1)
    lhs = lhs.mul_monomial(1, ONE_MINUS_U3, {})
    lhs = lhs.mul_monomial(1, {}, ONE_MINUS_U3)

    rhs = TwoChiralSum(POINTS)
    for key, c in numerator.items():
        plus, minus = _u_monomial_exps(key)
        rhs = rhs + TwoChiralSum.monomial(POINTS, c, plus, minus)

    if not (lhs - rhs).is_zero_function():
        raise ConsistencyError(
            f"2D restriction of {structure.name} does not factor over the"
            f" common prefactor (non-factorizable remainder)"
        )
    return ChiralRestriction(structure.name, dict(PREFACTOR_2D), numerator)


def completion_series_2d(cap: int) -> TruncatedSeries:
    """Series of the tetraharmonic completion: the odd-weighted double sum
    sum (a-b)/(a+b) u+^a u-^b times the primed copy."""
    terms: dict[tuple[int, int, int, int], Fraction] = {}
    for a, b in iproduct(range(cap + 1), repeat=2):
        if a + b == 0 or a + b > cap:
            continue
        w1 = Fraction(a - b, a + b)
        if w1 == 0:
            continue
        for c, d in iproduct(range(cap + 1 - a - b), repeat=2):
            if c + d == 0 or a + b + c + d > cap:
                continue
            w2 = Fraction(c - d, c + d)
            if w2 == 0:
                continue
            terms[(a, b, c, d)] = w1 * w2
    return TruncatedSeries(SERIES_VARS, cap, terms)
