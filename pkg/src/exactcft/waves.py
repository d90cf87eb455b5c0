"""Chiral n-point partial waves.

A wave is a factored prefactor in nearest- and next-nearest-neighbour
coordinate differences times a power series in the chain of cross ratios
u_k = x_{k,k+1} x_{k+2,k+3} / (x_{k,k+2} x_{k+1,k+3}), with every coefficient
an explicit product of rising factorials. The quadratic Casimir eigenvalue
equations in invariant (Euler-operator) form provide the verification route
for n up to 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import factorial

from .errors import DegenerateParameterError
from .pairs import FactoredLaurent
from .series import TruncatedSeries
from .special import format_rational, parse_rational, pochhammer


@dataclass(frozen=True)
class WaveSpec:
    """Field dimensions d_1..d_n and projection dimensions a_1..a_{n-1}.

    Boundary conventions: a_0 = a_n = 0, and a_1 = d_1, a_{n-1} = d_n are
    forced by the first and last field.
    """

    field_dims: tuple[Fraction, ...]
    proj_dims: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.field_dims)
        if n < 3:
            raise ValueError(f"need at least 3 points, got {n}")
        object.__setattr__(self, "field_dims", tuple(Fraction(d) for d in self.field_dims))
        object.__setattr__(self, "proj_dims", tuple(Fraction(a) for a in self.proj_dims))
        if len(self.proj_dims) != n - 1:
            raise ValueError(
                f"need {n - 1} projection dimensions for {n} points, got {len(self.proj_dims)}"
            )
        if self.proj_dims[0] != self.field_dims[0]:
            raise ValueError("a_1 must equal d_1")
        if self.proj_dims[-1] != self.field_dims[-1]:
            raise ValueError("a_{n-1} must equal d_n")

    @classmethod
    def from_middle(cls, dims, middle) -> "WaveSpec":
        """Build from d_1..d_n plus only the free projections a_2..a_{n-2}."""
        dims = tuple(Fraction(d) for d in dims)
        middle = tuple(Fraction(a) for a in middle)
        if len(middle) != len(dims) - 3:
            raise ValueError(
                f"need {len(dims) - 3} middle projections for {len(dims)} points"
            )
        return cls(dims, (dims[0],) + middle + (dims[-1],))

    @property
    def n(self) -> int:
        return len(self.field_dims)

    def d(self, i: int) -> Fraction:
        """d_i with 1-based index; 0 outside 1..n."""
        if 1 <= i <= self.n:
            return self.field_dims[i - 1]
        return Fraction(0)

    def a(self, i: int) -> Fraction:
        """a_i with 1-based index; boundary a_0 = a_n = 0."""
        if 1 <= i <= self.n - 1:
            return self.proj_dims[i - 1]
        return Fraction(0)

    def reversed(self) -> "WaveSpec":
        """Hermitean conjugation relabeling i -> n+1-i."""
        return WaveSpec(self.field_dims[::-1], self.proj_dims[::-1])

    def padded(self, n_target: int) -> "WaveSpec":
        """Embed into more points by appending trivial fields of dimension 0."""
        if n_target < self.n:
            raise ValueError("cannot pad downward")
        extra = n_target - self.n
        return WaveSpec(
            self.field_dims + (Fraction(0),) * extra,
            self.proj_dims + (Fraction(0),) * extra,
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dims": [format_rational(d) for d in self.field_dims],
            "proj": [format_rational(a) for a in self.proj_dims],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WaveSpec":
        return cls(
            tuple(parse_rational(d) for d in data["dims"]),
            tuple(parse_rational(a) for a in data["proj"]),
        )


def wave_series_vars(n: int) -> tuple[str, ...]:
    return tuple(f"u{k}" for k in range(1, n - 2))


def wave_prefactor(spec: WaveSpec) -> FactoredLaurent:
    """Pair powers of the factored wave prefactor.

    x_{j,j+2} carries d_{j+1} - a_j - a_{j+1}; x_{i,i+1} carries
    -(d_i + d_{i+1} - a_{i-1} - a_{i+1}).
    """
    n = spec.n
    exps: dict[tuple[int, int], Fraction] = {}
    for j in range(1, n - 1):
        exps[(j, j + 2)] = spec.d(j + 1) - spec.a(j) - spec.a(j + 1)
    for i in range(1, n):
        exps[(i, i + 1)] = -(spec.d(i) + spec.d(i + 1) - spec.a(i - 1) - spec.a(i + 1))
    return FactoredLaurent({pr: e for pr, e in exps.items() if e != 0})


@dataclass(frozen=True)
class ChiralWave:
    spec: WaveSpec
    prefactor: FactoredLaurent
    series: TruncatedSeries

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "cap": self.series.cap,
            "prefactor": self.prefactor.to_json(),
            "series": self.series.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChiralWave":
        spec = WaveSpec.from_json(data["spec"])
        cap = data["cap"]
        series = TruncatedSeries.from_json(wave_series_vars(spec.n), cap, data["series"])
        factors = {
            tuple(int(v) for v in key.split(",")): parse_rational(val)
            for key, val in data["prefactor"]["factors"].items()
        }
        pre = FactoredLaurent(factors, parse_rational(data["prefactor"]["numerator"]))
        return cls(spec, pre, series)


def wave_coefficient(spec: WaveSpec, ells: tuple[int, ...]) -> Fraction:
    """Series coefficient of prod u_k^{l_k}: the double Pochhammer product."""
    n = spec.n

    def ell(k: int) -> int:
        # boundary l_0 = l_{n-2} = 0
        if 1 <= k <= n - 3:
            return ells[k - 1]
        return 0

    coeff = Fraction(1)
    for j in range(1, n - 1):
        coeff *= pochhammer(spec.a(j) + spec.a(j + 1) - spec.d(j + 1), ell(j - 1) + ell(j))
    for k in range(1, n - 2):
        lk = ell(k)
        denom = pochhammer(2 * spec.a(k + 1), lk)
        if denom == 0:
            raise DegenerateParameterError(
                f"(2 a_{k + 1})_{lk} vanishes: a_{k + 1} = {spec.a(k + 1)} is degenerate"
            )
        coeff /= factorial(lk) * denom
    return coeff


def chiral_wave_series(spec: WaveSpec, cap: int) -> ChiralWave:
    """The general chiral n-point partial wave, exactly truncated.

    The coefficient of prod u_k^{l_k} is
    prod_j (a_j + a_{j+1} - d_{j+1})_{l_{j-1}+l_j} / prod_k l_k! (2 a_{k+1})_{l_k}.
    For n = 3 there are no cross ratios and the series is identically 1.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    n = spec.n
    nvars = n - 3
    vars_ = wave_series_vars(n)
    terms: dict[tuple[int, ...], Fraction] = {}
    for ells in iproduct(range(cap + 1), repeat=nvars):
        if sum(ells) > cap:
            continue
        c = wave_coefficient(spec, ells)
        if c != 0:
            terms[ells] = c
    series = TruncatedSeries(vars_, cap, terms)
    return ChiralWave(spec, wave_prefactor(spec), series)


def fourpoint_reference(a, b, c, cap: int) -> TruncatedSeries:
    """Hypergeometric oracle: sum_l (a+b)_l (a+c)_l u^l / (l! (2a)_l)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    terms: dict[tuple[int], Fraction] = {}
    for ell in range(cap + 1):
        denom = pochhammer(2 * a, ell)
        if denom == 0:
            raise DegenerateParameterError(f"(2a)_{ell} vanishes for a = {a}")
        val = pochhammer(a + b, ell) * pochhammer(a + c, ell) / (factorial(ell) * denom)
        if val != 0:
            terms[(ell,)] = val
    return TruncatedSeries(("u",), cap, terms)


def wave_leading_shifts(spec: WaveSpec) -> tuple[Fraction, Fraction, Fraction]:
    """Exponents (a2 - d3, a3, a4 - d4) of the wave relative to the 6-point
    normalization that divides out the two 3-point prefactor clusters."""
    s = spec.padded(6)
    return (s.a(2) - s.d(3), s.a(3), s.a(4) - s.d(4))


def _pad_series(series: TruncatedSeries, cap: int) -> TruncatedSeries:
    """View an n<6 wave series as a series in (u1, u2, u3)."""
    vars6 = wave_series_vars(6)
    terms = {}
    for exps, c in series.terms.items():
        padded = tuple(exps) + (0,) * (3 - len(exps))
        terms[padded] = c
    return TruncatedSeries(vars6, cap, terms)


def casimir_residual(
    eq_spec: WaveSpec, wave: ChiralWave, which: int, cap: int
) -> TruncatedSeries:
    """Exact residual LHS - RHS of one invariant Casimir eigenvalue equation.

    The equation parameters come from eq_spec (so a deliberately wrong
    eigenvalue can be probed); the normalization shifts come from the wave's
    own spec. Both are embedded into six points by trailing trivial fields.
    Euler operators act term-by-term, so the residual of an exactly truncated
    wave is exact through the requested cap.
    """
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    n = wave.spec.n
    if n > 6:
        raise DegenerateParameterError(
            "invariant Casimir form is available for n <= 6 only"
        )
    if n < 4:
        raise DegenerateParameterError("casimir check needs n >= 4 (pad trivially)")
    if wave.prefactor != wave_prefactor(wave.spec):
        raise ValueError("wave prefactor does not follow the factored convention")

    eq = eq_spec.padded(6)
    alpha = wave_leading_shifts(wave.spec)
    cap = min(cap, wave.series.cap)
    f = _pad_series(wave.series.truncate(cap), cap)
    vars6 = f.variables

    def euler_plus(series: TruncatedSeries, var_idx: int, const: Fraction) -> TruncatedSeries:
        sh = alpha[var_idx] + const
        return series.map_coefficients(lambda e, c: c * (e[var_idx] + sh))

    def euler_pair_plus(
        series: TruncatedSeries, i1: int, i2: int, const: Fraction
    ) -> TruncatedSeries:
        sh = alpha[i1] + alpha[i2] + const
        return series.map_coefficients(lambda e, c: c * (e[i1] + e[i2] + sh))

    d = eq.d
    a = eq.a
    if which == 1:
        lhs = euler_plus(euler_plus(f, 0, d(3) + a(2) - 1), 0, d(3) - a(2))
        rhs = euler_plus(euler_pair_plus(f, 0, 1, Fraction(0)), 0, d(1) - d(2) + d(3))
        rhs = rhs.scale_exponent(vars6[0], 1)
    elif which == 2:
        lhs = euler_plus(euler_plus(f, 1, a(3) - 1), 1, -a(3))
        rhs = euler_pair_plus(euler_pair_plus(f, 1, 2, Fraction(0)), 1, 0, Fraction(0))
        rhs = rhs.scale_exponent(vars6[1], 1)
    else:
        lhs = euler_plus(euler_plus(f, 2, d(4) + a(4) - 1), 2, d(4) - a(4))
        rhs = euler_plus(euler_pair_plus(f, 2, 1, Fraction(0)), 2, d(6) - d(5) + d(4))
        rhs = rhs.scale_exponent(vars6[2], 1)
    return lhs - rhs
