"""Tensor intertwining operators in four dimensions.

Operators are scalar polynomials in the six rotation invariants built from
the two derivative vectors and the polarization vector:

    t12 = (d1.d2)   b1 = d1^2   b2 = d2^2   s1 = (v.d1)   s2 = (v.d2)   V = v^2

Vector-valued expressions are decomposed along the basis (d1, d2, v) with
invariant coefficients; gradients, divergences and the v-Laplacian follow
from the chain rule with the Gram matrix of the three vectors, spacetime
dimension 4 entering only through div(d_i) = div(v) = 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ConsistencyError, DegenerateParameterError
from .linsolve import linear_solve_exact
from .poly import MultiPoly
from .special import format_rational, legendre_coeffs, pochhammer

IVARS = ("t12", "b1", "b2", "s1", "s2", "V")
_T12, _B1, _B2, _S1, _S2, _V = range(6)

SPACETIME_DIM = 4


def ipoly(terms=None) -> MultiPoly:
    return MultiPoly(IVARS, terms or {})


def iconst(value) -> MultiPoly:
    return MultiPoly.constant(IVARS, value)


def igen(name: str) -> MultiPoly:
    return MultiPoly.var(IVARS, name)


def v_degree_of(exps: tuple[int, ...]) -> int:
    return exps[_S1] + exps[_S2] + 2 * exps[_V]


def d_degree_of(exps: tuple[int, ...]) -> int:
    return 2 * (exps[_T12] + exps[_B1] + exps[_B2]) + exps[_S1] + exps[_S2]


def homogeneous_degrees(poly: MultiPoly) -> tuple[int, int]:
    """(derivative degree, v degree); raises if the polynomial is mixed."""
    degs = {(d_degree_of(e), v_degree_of(e)) for e in poly.terms}
    if len(degs) > 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
    if not degs:
        return (0, 0)
    return degs.pop()


@dataclass(frozen=True)
class InvVector:
    """A d1 + B d2 + C v with invariant-polynomial components."""

    a: MultiPoly
    b: MultiPoly
    c: MultiPoly

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero() and self.c.is_zero()

    def __add__(self, other: "InvVector") -> "InvVector":
        return InvVector(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "InvVector") -> "InvVector":
        return InvVector(self.a - other.a, self.b - other.b, self.c - other.c)

    def scale(self, f) -> "InvVector":
        return InvVector(self.a * f, self.b * f, self.c * f)


# gram[i][j] = basis_i . basis_j over basis order (d1, d2, v)
def _gram() -> list[list[MultiPoly]]:
    t12, b1, b2, s1, s2, V = (igen(n) for n in IVARS)
    return [[b1, t12, s1], [t12, b2, s2], [s1, s2, V]]


def grad1(f: MultiPoly) -> InvVector:
    return InvVector(2 * f.differentiate("b1"), f.differentiate("t12"), f.differentiate("s1"))


def grad2(f: MultiPoly) -> InvVector:
    return InvVector(f.differentiate("t12"), 2 * f.differentiate("b2"), f.differentiate("s2"))


def gradv(f: MultiPoly) -> InvVector:
    return InvVector(f.differentiate("s1"), f.differentiate("s2"), 2 * f.differentiate("V"))


def dot_basis(x: InvVector, basis_index: int) -> MultiPoly:
    g = _gram()
    comps = (x.a, x.b, x.c)
    out = iconst(0)
    for k in range(3):
        out = out + comps[k] * g[k][basis_index]
    return out


def _divergence(x: InvVector, grad, self_index: int) -> MultiPoly:
    out = dot_basis(grad(x.a), 0) + dot_basis(grad(x.b), 1) + dot_basis(grad(x.c), 2)
    comp = (x.a, x.b, x.c)[self_index]
    return out + SPACETIME_DIM * comp


def div1(x: InvVector) -> MultiPoly:
    return _divergence(x, grad1, 0)


def div2(x: InvVector) -> MultiPoly:
    return _divergence(x, grad2, 1)


def divv(x: InvVector) -> MultiPoly:
    return _divergence(x, gradv, 2)


def lap1(f: MultiPoly) -> MultiPoly:
    return div1(grad1(f))


def lap2(f: MultiPoly) -> MultiPoly:
    return div2(grad2(f))


def lapv(f: MultiPoly) -> MultiPoly:
    """Formal v-Laplacian; reproduces the rewrite rules lapv V = 8,
    lapv (s_i s_j) = 2 t_ij."""
    return divv(gradv(f))


def euler1_scalar(f: MultiPoly) -> MultiPoly:
    return dot_basis(grad1(f), 0)


def euler2_scalar(f: MultiPoly) -> MultiPoly:
    return dot_basis(grad2(f), 1)


def euler1_vector(x: InvVector) -> InvVector:
    return InvVector(euler1_scalar(x.a) + x.a, euler1_scalar(x.b), euler1_scalar(x.c))


def euler2_vector(x: InvVector) -> InvVector:
    return InvVector(euler2_scalar(x.a), euler2_scalar(x.b) + x.b, euler2_scalar(x.c))


def harmonic_project(poly: MultiPoly, v_deg: int | None = None) -> MultiPoly:
    """Unique harmonic representative [P]_0 of a v-homogeneous polynomial.

    Subtracts V times lower harmonics through the closed coefficient chain
    alpha_{k+1} = -alpha_k / (4 (k+1) (N - k)) in spacetime dimension 4, so
    that lapv of the result vanishes identically and [V Q]_0 = 0.
    """
    if poly.is_zero():
        return poly
    degs = {v_degree_of(e) for e in poly.terms}
    if len(degs) > 1:
        raise ValueError(f"input is not v-homogeneous: v-degrees {sorted(degs)}")
    n = degs.pop()
    if v_deg is not None and v_deg != n:
        raise ValueError(f"declared v-degree {v_deg} but found {n}")
    out = ipoly()
    alpha = Fraction(1)
    vpow = iconst(1)
    current = poly
    vgen = igen("V")
    for k in range(n // 2 + 1):
        if k:
            alpha = -alpha / (4 * k * (n - k + 1))
            vpow = vpow * vgen
            current = lapv(current)
        out = out + vpow * current * alpha
    return out


# ---------------------------------------------------------------------------
# radial polynomials and the coefficient recursion
# ---------------------------------------------------------------------------

RVAR = ("r",)


def _rpoly(terms) -> MultiPoly:
    return MultiPoly(RVAR, terms)


def legendre_poly(L: int) -> MultiPoly:
    return _rpoly({(p,): c for p, c in legendre_coeffs(L).items()})


def raise_lower(poly: MultiPoly, kappa: int, L: int, delta: int, step: int) -> MultiPoly:
    """Apply the raising (step=+1) or lowering (step=-1) operator at delta."""
    r = MultiPoly.var(RVAR, "r")
    denom = L + kappa - 1 - step * delta
    if denom == 0:
        raise DegenerateParameterError(
            f"raising/lowering undefined at kappa={kappa}, L={L}, delta={delta}"
        )
    dp = poly.differentiate("r")
    num = (r - step) * dp + (kappa - 1 - step * delta) * poly
    return num * Fraction(1, denom)


def radial_poly(kappa: int, L: int, delta: int) -> MultiPoly:
    """Degree-L polynomial solving the single-term radial equation.

    Direct terminating-hypergeometric form when the lower parameter
    kappa - delta avoids non-positive integers within the sum; otherwise the
    value is reached by raising/lowering from delta = 0.
    """
    if kappa < 0 or L < 0:
        raise ValueError("kappa and L must be >= 0")
    kd = kappa - delta
    direct_ok = L == 0 or kd >= 1 or kd <= -L
    if direct_ok:
        # (kd)_L * 2F1(-L, L + 2 kappa - 1; kd; (1 - r)/2)
        half = _rpoly({(0,): Fraction(1, 2), (1,): Fraction(-1, 2)})
        out = MultiPoly(RVAR)
        zpow = MultiPoly.constant(RVAR, 1)
        for j in range(L + 1):
            num = pochhammer(-L, j) * pochhammer(L + 2 * kappa - 1, j)
            if j:
                zpow = zpow * half
            if num == 0:
                continue
            coeff = num * pochhammer(kd + j, L - j) / factorial(j)
            out = out + zpow * coeff
        return out
    if kappa == 0 and delta == 0:
        raise DegenerateParameterError(
            "radial polynomial is degenerate at kappa = 0; the rank-only closed"
            " form covers that case"
        )
    poly = radial_poly(kappa, L, 0)
    step = 1 if delta > 0 else -1
    d = 0
    while d != delta:
        poly = raise_lower(poly, kappa, L, d, step)
        d += step
    return poly


@dataclass(frozen=True)
class CoefficientTable:
    """Solution of the double recursion for the expansion coefficients c_{mn}."""

    kappa: int
    L: int
    entries: dict[tuple[int, int], Fraction]
    kernel_dim: int

    def entry(self, m: int, n: int) -> Fraction:
        return self.entries.get((m, n), Fraction(0))


def _recursion_rows(kappa: int, L: int):
    """All instances of the two recursions over m + n <= kappa."""
    index = [(m, n) for m in range(kappa + 1) for n in range(kappa + 1 - m)]
    pos = {mn: k for k, mn in enumerate(index)}
    rows = []

    def add_row(coeffs: dict[tuple[int, int], Fraction]):
        row = [Fraction(0)] * len(index)
        nonzero = False
        for mn, c in coeffs.items():
            m, n = mn
            if c == 0 or m < 0 or n < 0 or m + n > kappa:
                continue
            row[pos[mn]] += c
            nonzero = True
        if nonzero:
            rows.append(row)

    for m, n in index:
        k = kappa - m - n
        add_row(
            {
                (m + 1, n): Fraction(4 * (m * m - 1)),
                (m, n): Fraction(2 * k * (L + kappa - 1 - m + n)),
                (m, n - 1): Fraction(-k * (k + 1)),
            }
        )
        add_row(
            {
                (m, n + 1): Fraction(4 * (n * n - 1)),
                (m, n): Fraction(2 * k * (L + kappa - 1 + m - n)),
                (m - 1, n): Fraction(-k * (k + 1)),
            }
        )
    return index, rows


def coefficient_table(kappa: int, L: int, seed=Fraction(1)) -> CoefficientTable:
    """Solve the full recursion system exactly, seeding c_00.

    A global solve is used instead of forward substitution because the
    prefactor 4(m^2 - 1) vanishes at m = 1; leftover freedom beyond the seed
    is reported as kernel_dim, with free coefficients pinned to zero. For some
    parameters (already kappa = 2 with L >= 1) the recursions force c_00 = 0
    and no seeded solution exists; that raises, and callers that only need
    some nonzero solution should fall back to coefficient_table_kernel.
    """
    seed = Fraction(seed)
    if seed == 0:
        raise ValueError("seed must be nonzero")
    index, rows = _recursion_rows(kappa, L)
    pos = {mn: k for k, mn in enumerate(index)}
    seed_row = [Fraction(0)] * len(index)
    seed_row[pos[(0, 0)]] = Fraction(1)
    rows_all = rows + [seed_row]
    rhs = [Fraction(0)] * len(rows) + [seed]
    sol = linear_solve_exact(rows_all, rhs)
    if not sol.solvable:
        raise ConsistencyError(
            f"recursion system admits no solution with c_00 != 0 at"
            f" kappa={kappa}, L={L}"
        )
    entries = {
        mn: sol.particular[pos[mn]]
        for mn in index
        if sol.particular[pos[mn]] != 0
    }
    table = CoefficientTable(kappa, L, entries, sol.kernel_dim)
    _check_recursions(table)
    return table


def coefficient_table_kernel(kappa: int, L: int) -> list[CoefficientTable]:
    """Basis of the full homogeneous solution space of the recursions."""
    index, rows = _recursion_rows(kappa, L)
    pos = {mn: k for k, mn in enumerate(index)}
    if not rows:
        rows = [[Fraction(0)] * len(index)]
    sol = linear_solve_exact(rows, [Fraction(0)] * len(rows))
    out = []
    for vec in sol.kernel:
        entries = {mn: vec[pos[mn]] for mn in index if vec[pos[mn]] != 0}
        table = CoefficientTable(kappa, L, entries, sol.kernel_dim)
        _check_recursions(table)
        out.append(table)
    return out


def _check_recursions(table: CoefficientTable):
    kappa, L = table.kappa, table.L
    c = table.entry
    for m in range(kappa + 1):
        for n in range(kappa + 1 - m):
            k = kappa - m - n
            r1 = (
                4 * (m * m - 1) * c(m + 1, n)
                + 2 * k * (L + kappa - 1 - m + n) * c(m, n)
                - k * (k + 1) * c(m, n - 1)
            )
            r2 = (
                4 * (n * n - 1) * c(m, n + 1)
                + 2 * k * (L + kappa - 1 + m - n) * c(m, n)
                - k * (k + 1) * c(m - 1, n)
            )
            if r1 != 0 or r2 != 0:
                raise ConsistencyError(
                    f"recursion violated at (m,n)=({m},{n}) for kappa={kappa}, L={L}"
                )


# ---------------------------------------------------------------------------
# operator assembly and verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorIntertwiner:
    kappa: int
    L: int
    poly: MultiPoly

    def to_json(self) -> dict:
        out = {}
        for exps, c in self.poly.sorted_terms():
            key = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(IVARS, exps) if e
            )
            out[key or "1"] = format_rational(c)
        return out


def _bracket(kappa: int, L: int, rpoly_by_delta) -> dict[int, MultiPoly]:
    """[(s1+s2)^L f_delta((s1-s2)/(s1+s2))]_0 for each needed delta."""
    s1 = igen("s1")
    s2 = igen("s2")
    plus = s1 + s2
    minus = s1 - s2
    out = {}
    for delta, rp in rpoly_by_delta.items():
        total = ipoly()
        for (j,), fj in rp.terms.items():
            total = total + (minus**j) * (plus ** (L - j)) * fj
        out[delta] = harmonic_project(total, L)
    return out


def assemble_tensor_intertwiner(kappa: int, L: int, seed=Fraction(1)) -> TensorIntertwiner:
    """Iterate the closed construction: coefficient table times wave-operator
    powers times the harmonic bracket of the radial polynomial.

    kappa = 0 bypasses the degenerate radial family and uses the rank-only
    closed form (1 - r^2) P'_{L-1}(r).
    """
    if kappa < 0 or L < 0:
        raise ValueError("kappa and L must be >= 0")
    t12, b1, b2 = igen("t12"), igen("b1"), igen("b2")
    if kappa == 0:
        if L == 0:
            rp = MultiPoly.constant(RVAR, seed)
        else:
            one_minus_r2 = _rpoly({(0,): 1, (2,): -1})
            rp = one_minus_r2 * legendre_poly(L - 1).differentiate("r") * seed
        bra = _bracket(0, L, {0: rp})
        return TensorIntertwiner(0, L, bra[0])
    try:
        tables = [coefficient_table(kappa, L, seed)]
    except ConsistencyError:
        # the recursions force c_00 = 0 here; take the full solution space
        # with every free coefficient set to the seed
        kernel = coefficient_table_kernel(kappa, L)
        if not kernel:
            raise
        combined: dict[tuple[int, int], Fraction] = {}
        for t in kernel:
            for mn, c in t.entries.items():
                combined[mn] = combined.get(mn, Fraction(0)) + c * Fraction(seed)
        combined = {mn: c for mn, c in combined.items() if c != 0}
        tables = [CoefficientTable(kappa, L, combined, kernel[0].kernel_dim)]
    table = tables[0]
    deltas = {m - n for (m, n) in table.entries}
    rps = {d: radial_poly(kappa, L, d) for d in deltas}
    bras = _bracket(kappa, L, rps)
    total = ipoly()
    for (m, n), c in table.entries.items():
        mono = (t12 ** (kappa - m - n)) * (b1**m) * (b2**n)
        total = total + mono * bras[m - n] * c
    return TensorIntertwiner(kappa, L, total)


def tensor_pde_residual(poly: MultiPoly, dim_gap=Fraction(0)) -> InvVector:
    """Special-conformal intertwining condition in the invariant algebra:
    sum_i [2 (d_i.grad_i) grad_i - d_i lap_i] + gap (grad_1 - grad_2)."""
    g1 = grad1(poly)
    g2 = grad2(poly)
    res = euler1_vector(g1).scale(2) - InvVector(lap1(poly), iconst(0), iconst(0))
    res = res + euler2_vector(g2).scale(2) - InvVector(iconst(0), lap2(poly), iconst(0))
    gap = Fraction(dim_gap)
    if gap != 0:
        res = res + (g1 - g2).scale(gap)
    return res


def verify_tensor_pde(op: TensorIntertwiner, dim_gap=Fraction(0)) -> InvVector:
    if not op.poly.is_zero():
        d_deg, v_deg = homogeneous_degrees(op.poly)
        if v_deg != op.L or d_deg != 2 * op.kappa + op.L:
            raise ValueError(
                f"homogeneity mismatch: expected ({2 * op.kappa + op.L}, {op.L}),"
                f" found ({d_deg}, {v_deg})"
            )
    return tensor_pde_residual(op.poly, dim_gap)


def rank_zero_closed_form(L: int) -> MultiPoly:
    """Sum over p+q=L of (q)_p (p)_q / (p! q!) [s1^p (-s2)^q]_0."""
    s1 = igen("s1")
    s2 = igen("s2")
    total = ipoly()
    for p in range(L + 1):
        q = L - p
        c = pochhammer(q, p) * pochhammer(p, q) / (factorial(p) * factorial(q))
        if q % 2:
            c = -c
        if c == 0:
            continue
        total = total + harmonic_project((s1**p) * (s2**q), L) * c
    return total


def solve_intertwiner_space(kappa: int, L: int, d1, d2) -> list[TensorIntertwiner]:
    """Kernel basis of the intertwining condition on the full ansatz space of
    harmonic scalar polynomials with the required homogeneities."""
    d1, d2 = Fraction(d1), Fraction(d2)
    gap = d1 - d2
    if gap.denominator != 1 or gap.numerator % 2:
        raise DegenerateParameterError(
            f"the polynomial ansatz requires an even integer dimension gap,"
            f" got d1 - d2 = {gap}"
        )
    if kappa < 0 or L < 0:
        raise ValueError("kappa and L must be >= 0")
    basis_polys: list[MultiPoly] = []
    t12, b1, b2, s1, s2 = (igen(n) for n in IVARS[:5])
    for delta in range(L + 1):
        s_mono = (s1**delta) * (s2 ** (L - delta))
        s_h = harmonic_project(s_mono, L)
        for alpha in range(kappa + 1):
            for beta in range(kappa + 1 - alpha):
                gamma = kappa - alpha - beta
                basis_polys.append(s_h * (t12**alpha) * (b1**beta) * (b2**gamma))
    residuals = [tensor_pde_residual(p, gap) for p in basis_polys]
    monos: dict[tuple[int, tuple[int, ...]], int] = {}
    for res in residuals:
        for ci, comp in enumerate((res.a, res.b, res.c)):
            for exps in comp.terms:
                monos.setdefault((ci, exps), len(monos))
    rows = [[Fraction(0)] * len(basis_polys) for _ in range(len(monos))]
    for col, res in enumerate(residuals):
        for ci, comp in enumerate((res.a, res.b, res.c)):
            for exps, c in comp.terms.items():
                rows[monos[(ci, exps)]][col] = c
    if not rows:
        rows = [[Fraction(0)] * len(basis_polys)]
    sol = linear_solve_exact(rows, [Fraction(0)] * len(rows))
    out = []
    for vec in sol.kernel:
        poly = ipoly()
        for x, bp in zip(vec, basis_polys):
            if x != 0:
                poly = poly + bp * x
        out.append(TensorIntertwiner(kappa, L, poly))
    return out


def twist_table_poly(kappa: int, L: int, seed=Fraction(1)) -> MultiPoly:
    """e(p, q, r) = sum c_{mn} p^m q^n f_{kappa L; m-n}(r) as a polynomial."""
    table = coefficient_table(kappa, L, seed)
    out = MultiPoly(("p", "q", "r"))
    for (m, n), c in table.entries.items():
        rp = radial_poly(kappa, L, m - n)
        for (j,), fj in rp.terms.items():
            out = out + MultiPoly(("p", "q", "r"), {(m, n, j): c * fj})
    return out
