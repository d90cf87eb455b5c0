"""Multivariate polynomials over exact rationals.

Terms live in a dict keyed by exponent tuples; zero coefficients are never
stored, and iteration/serialization follows graded-lexicographic order so
output is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import NegativeExponentError, VariableMismatchError
from .special import format_rational, parse_rational


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    """Polynomial in named variables with Fraction coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise VariableMismatchError(f"duplicate variable names in {self.variables}")
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            nv = len(self.variables)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nv:
                    raise VariableMismatchError(
                        f"exponent tuple {exps} does not match {nv} variables"
                    )
                if any(e < 0 for e in exps):
                    raise NegativeExponentError(f"negative exponent in {exps}")
                c = Fraction(coeff)
                if c != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
                    if clean[exps] == 0:
                        del clean[exps]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, variables: Iterable[str], value) -> "MultiPoly":
        variables = tuple(variables)
        value = Fraction(value)
        if value == 0:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exps: Fraction(1)})

    # -- basics -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self.sorted_terms())

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Highest term in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise VariableMismatchError(
                    f"variable sets differ: {self.variables} vs {other.variables}"
                )
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        p = MultiPoly(self.variables)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly(self.variables)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            p = MultiPoly(self.variables)
            if c != 0:
                p.terms = {e: k * c for e, k in self.terms.items()}
            return p
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        p = MultiPoly(self.variables)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise NegativeExponentError("negative power of a polynomial")
        out = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus and substitution -------------------------------------

    def differentiate(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to one variable."""
        idx = self.variables.index(name)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms.items():
            k = exps[idx]
            if k == 0:
                continue
            e = exps[:idx] + (k - 1,) + exps[idx + 1 :]
            s = out.get(e, Fraction(0)) + c * k
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        p = MultiPoly(self.variables)
        p.terms = out
        return p

    def substitute(self, name: str, value: "MultiPoly | Fraction | int") -> "MultiPoly":
        """Replace a variable by a polynomial (over the same variable set) or a constant."""
        idx = self.variables.index(name)
        if not isinstance(value, MultiPoly):
            value = MultiPoly.constant(self.variables, value)
        else:
            value = self._coerce(value)
        out = MultiPoly(self.variables)
        powers: dict[int, MultiPoly] = {0: MultiPoly.constant(self.variables, 1)}
        for exps, c in self.terms.items():
            k = exps[idx]
            if k not in powers:
                powers[k] = value**k
            rest = MultiPoly(self.variables, {exps[:idx] + (0,) + exps[idx + 1 :]: c})
            out = out + rest * powers[k]
        return out

    def eval(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a rational point; every variable must be given."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise VariableMismatchError(f"missing values for {missing}")
        total = Fraction(0)
        for exps, c in self.terms.items():
            t = c
            for name, e in zip(self.variables, exps):
                if e:
                    t *= Fraction(values[name]) ** e
            total += t
        return total

    # -- presentation ---------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": format_rational(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, variables: Iterable[str], data: list[dict]) -> "MultiPoly":
        terms = {tuple(item["exponents"]): parse_rational(item["coeff"]) for item in data}
        return cls(variables, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e
            )
            if mono:
                bits.append(f"{format_rational(c)}*{mono}" if c != 1 else mono)
            else:
                bits.append(format_rational(c))
        return " + ".join(bits)
