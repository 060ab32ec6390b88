"""Monogenic bases, Fischer decomposition, CK extension and the Fueter-type theorems.

Every check here is an exact polynomial identity; a report entry passes only
when the residual is the zero polynomial.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Literal, Sequence

from .axial import (
    AxialPair,
    ComplexSeed,
    axial_mul,
    d_coeff,
    d_lower,
    d_upper,
    dbar,
    delta_z,
    lemma32_closed_form,
    polyanalytic_order_check,
    seed_to_axial,
    t_power_pair,
    vekua_residuals,
    xbar_power_pair,
)
from .clifford import format_rational
from .errors import (
    DependsOnX0,
    FactorNotMonogenic,
    InputError,
    NotHomogeneous,
    ParityViolation,
    SeedOrderTooHigh,
    SolveFailed,
)
from .linalg import nullspace, rank, solve, transpose
from .operators import DunklContext
from .poly import CliffordPolynomial, Monomial, ScalarPoly, format_poly, monomials_of_degree, random_rational
from .report import VerificationReport

Operator = Literal["Dbar", "D"]


def _txt(p) -> str:
    return format_poly(p) if isinstance(p, CliffordPolynomial) else str(p)


def is_dunkl_monogenic(ctx: DunklContext, p: CliffordPolynomial, operator: Operator = "Dbar") -> tuple[bool, CliffordPolynomial]:
    """Apply the Dunkl-Dirac (``"Dbar"``) or Dunkl-Cauchy-Riemann (``"D"``) operator."""
    if operator == "Dbar":
        res = ctx.dirac(p)
    elif operator == "D":
        res = ctx.cauchy_riemann(p)
    else:
        raise InputError(f"operator must be 'Dbar' or 'D', got {operator!r}")
    return res.is_zero(), res


def half_odd_mu(ctx: DunklContext) -> int:
    """(mu - 1) / 2, refusing any mu that is not an odd integer."""
    mu = ctx.mu
    if mu.denominator != 1 or mu.numerator % 2 == 0:
        raise ParityViolation(f"mu = {format_rational(mu)} is not an odd integer for {ctx.group.name}")
    return (mu.numerator - 1) // 2


def require_homogeneous(p: CliffordPolynomial, what: str = "polynomial") -> int:
    comps = p.homogeneous_components()
    if len(comps) > 1:
        raise NotHomogeneous(f"{what} mixes degrees {[d for d, _ in comps]}")
    return comps[0][0] if comps else 0


# ---------------------------------------------------------------------------
# homogeneous spaces and M(n)


def space_keys(dim: int, n: int) -> list[tuple[int, Monomial]]:
    """Coordinates of P(n): blades x monomials of degree n in x_1..x_d."""
    monos = monomials_of_degree(dim + 1, n, skip=(0,)) if n >= 0 else []
    return [(mask, m) for mask in range(1 << dim) for m in monos]


def dim_P(dim: int, n: int) -> int:
    return 2**dim * comb(n + dim - 1, dim - 1)


def _from_vector(dim: int, keys, vec) -> CliffordPolynomial:
    terms: dict[int, dict] = {}
    for (mask, m), c in zip(keys, vec):
        if c:
            terms.setdefault(mask, {})[m] = c
    return CliffordPolynomial(dim, terms)


def dirac_matrix_columns(ctx: DunklContext, n: int) -> tuple[list[tuple[int, Monomial]], list[list[Fraction]]]:
    """Columns of D: P(n) -> P(n-1) in the monomial x blade coordinates."""
    d = ctx.dim
    in_keys = space_keys(d, n)
    out_keys = space_keys(d, n - 1)
    out_index = {k: i for i, k in enumerate(out_keys)}
    scalar_images = {}
    for m in monomials_of_degree(d + 1, n, skip=(0,)):
        scalar_images[m] = ctx.dirac(CliffordPolynomial(d, {0: {m: 1}}))
    cols = []
    for mask, m in in_keys:
        # D acts from the left, so D(m e_A) = D(m) e_A
        image = scalar_images[m] * CliffordPolynomial.blade(d, mask)
        col = [Fraction(0)] * len(out_keys)
        for key in image.keys():
            col[out_index[key]] = image.terms[key[0]].terms[key[1]]
        cols.append(col)
    return out_keys, cols


@dataclass(frozen=True)
class MonogenicBasis:
    degree: int
    elements: tuple[CliffordPolynomial, ...]
    context: DunklContext = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def combination(self, coeffs: Sequence[Fraction]) -> CliffordPolynomial:
        out = CliffordPolynomial.zero(self.context.dim)
        for c, e in zip(coeffs, self.elements):
            if c:
                out = out + e.scale(c)
        return out


def monogenic_basis(ctx: DunklContext, n: int) -> MonogenicBasis:
    """Basis of the homogeneous degree-n polynomials in ker D (nullspace of the Dirac matrix)."""
    if n < 0:
        raise InputError("degree must be >= 0")
    cache = ctx.__dict__.setdefault("_basis_cache", {})
    if n in cache:
        return cache[n]
    d = ctx.dim
    in_keys = space_keys(d, n)
    if n == 0:
        elems = tuple(CliffordPolynomial.blade(d, mask) for mask in range(1 << d))
    else:
        out_keys, cols = dirac_matrix_columns(ctx, n)
        rows = transpose(cols, len(out_keys))
        elems = tuple(_from_vector(d, in_keys, v) for v in nullspace(rows, len(in_keys)))
    basis = MonogenicBasis(n, elems, ctx)
    cache[n] = basis
    return basis


def random_monogenic(ctx: DunklContext, n: int, rng: random.Random, n_terms: int = 3) -> CliffordPolynomial:
    basis = monogenic_basis(ctx, n)
    coeffs = [Fraction(0)] * len(basis)
    for _ in range(n_terms):
        coeffs[rng.randrange(len(basis))] += random_rational(rng)
    out = basis.combination(coeffs)
    return out if not out.is_zero() else basis[0]


# ---------------------------------------------------------------------------
# Fischer decomposition


@dataclass(frozen=True)
class FischerDecomposition:
    """``parts[k]`` is M_{n-k}; the input equals sum_k x^k M_{n-k}."""

    degree: int
    parts: tuple[CliffordPolynomial, ...]

    def recompose(self) -> CliffordPolynomial:
        if not self.parts:
            raise InputError("empty decomposition")
        d = self.parts[0].dim
        x = CliffordPolynomial.xbar(d)
        out = CliffordPolynomial.zero(d)
        xk = CliffordPolynomial.constant(d, 1)
        for part in self.parts:
            out = out + xk * part
            xk = xk * x
        return out


def fischer_generators(ctx: DunklContext, n: int) -> list[tuple[int, int, CliffordPolynomial]]:
    """(k, index, x^k * basis element of M(n-k)) for k = 0..n."""
    d = ctx.dim
    x = CliffordPolynomial.xbar(d)
    out = []
    xk = CliffordPolynomial.constant(d, 1)
    for k in range(n + 1):
        for idx, e in enumerate(monogenic_basis(ctx, n - k)):
            out.append((k, idx, xk * e))
        xk = xk * x
    return out


def fischer_rank(ctx: DunklContext, n: int) -> tuple[int, int]:
    """(rank of the Fischer generating set, dim P(n))."""
    keys = space_keys(ctx.dim, n)
    cols = [g.coefficient_vector(keys) for _, _, g in fischer_generators(ctx, n)]
    return rank(transpose(cols, len(keys)), len(cols)), dim_P(ctx.dim, n)


def fischer_decompose(ctx: DunklContext, p: CliffordPolynomial) -> FischerDecomposition:
    if p.dim != ctx.dim:
        raise InputError("polynomial and context dimensions differ")
    if p.depends_on(0):
        raise DependsOnX0("Fischer decomposition needs a polynomial in x_1..x_d only")
    n = require_homogeneous(p)
    d = ctx.dim
    if p.is_zero():
        return FischerDecomposition(n, tuple(CliffordPolynomial.zero(d) for _ in range(n + 1)))
    keys = space_keys(d, n)
    gens = fischer_generators(ctx, n)
    cols = [g.coefficient_vector(keys) for _, _, g in gens]
    sol = solve(transpose(cols, len(keys)), p.coefficient_vector(keys))
    if sol is None:
        raise SolveFailed(f"{format_poly(p)} is not in the span of the Fischer generators")
    parts = [CliffordPolynomial.zero(d) for _ in range(n + 1)]
    for (k, idx, _), c in zip(gens, sol):
        if c:
            parts[k] = parts[k] + monogenic_basis(ctx, n - k)[idx].scale(c)
    dec = FischerDecomposition(n, tuple(parts))
    if dec.recompose() != p:
        raise SolveFailed("Fischer recomposition does not reproduce the input")
    return dec


# ---------------------------------------------------------------------------
# CK extension and axial embedding


def ck_extend(ctx: DunklContext, g: CliffordPolynomial) -> CliffordPolynomial:
    """sum_j (-x_0)^j / j! D^j g, which terminates for polynomial g."""
    if g.depends_on(0):
        raise DependsOnX0("CK extension takes a polynomial in x_1..x_d")
    d = ctx.dim
    minus_x0 = CliffordPolynomial.var(d, 0).scale(-1)
    out = CliffordPolynomial.zero(d)
    term = g
    power = CliffordPolynomial.constant(d, 1)
    j = 0
    while not term.is_zero():
        out = out + (power * term).scale(Fraction(1, factorial(j)))
        term = ctx.dirac(term)
        power = power * minus_x0
        j += 1
    return out


def axial_to_polys(dim: int, x: AxialPair) -> tuple[CliffordPolynomial, CliffordPolynomial]:
    """a(x_0, |x|^2) and b(x_0, |x|^2) as scalar Clifford polynomials."""
    nv = dim + 1
    images = [ScalarPoly.var(nv, 0), CliffordPolynomial.radial(dim).terms[0]]
    a = x.a.substitute(images)
    b = x.b.substitute(images)
    return CliffordPolynomial.from_scalar(dim, a), CliffordPolynomial.from_scalar(dim, b)


def embed_axial(ctx: DunklContext | int, x: AxialPair, P: CliffordPolynomial | None = None) -> CliffordPolynomial:
    """(a + x b) P with t -> x_0 and q -> |x|^2."""
    dim = ctx if isinstance(ctx, int) else ctx.dim
    a, b = axial_to_polys(dim, x)
    F = a + CliffordPolynomial.xbar(dim) * b
    return F if P is None else F * P


# ---------------------------------------------------------------------------
# lemma checks


def lemma21_constant(ctx: DunklContext, k: int, n: int) -> Fraction:
    if k % 2 == 0:
        return Fraction(-k)
    return -(k + ctx.mu + 2 * n - 1)


def lemma21_check(ctx: DunklContext, k: int, P: CliffordPolynomial, n: int | None = None) -> VerificationReport:
    if n is None:
        n = require_homogeneous(P, "P_n")
    d = ctx.dim
    x = CliffordPolynomial.xbar(d)
    report = VerificationReport(f"lemma21:k={k}:n={n}")
    lhs = ctx.dirac((x**k) * P)
    rhs = ((x ** (k - 1)) * P).scale(lemma21_constant(ctx, k, n)) if k > 0 else CliffordPolynomial.zero(d)
    res = lhs - rhs
    report.add("D(x^k P_n) = c x^(k-1) P_n", res.is_zero(), _txt(res), f"c = {format_rational(lemma21_constant(ctx, k, n))}")
    return report


def lemma32_check(
    ctx: DunklContext,
    m: int,
    x: AxialPair,
    P: CliffordPolynomial,
    part: Literal["scalar", "vector", "both"] = "both",
    n: int | None = None,
) -> VerificationReport:
    """Direct m-fold Dunkl Laplacian versus the closed-form expansion."""
    if n is None:
        n = require_homogeneous(P, "P_n")
    report = VerificationReport(f"lemma32:m={m}:n={n}")
    parts = ["scalar", "vector"] if part == "both" else [part]
    for which in parts:
        piece = AxialPair(x.a, x.b * 0) if which == "scalar" else AxialPair(x.a * 0, x.b)
        lhs = ctx.laplacian_power(embed_axial(ctx, piece, P), m)
        rhs = embed_axial(ctx, lemma32_closed_form(m, n, ctx.mu, piece), P)
        res = lhs - rhs
        report.add(f"{which}: Delta^m direct = closed form", res.is_zero(), _txt(res))
    return report


# ---------------------------------------------------------------------------
# theorems


def fueter_exponent(ctx: DunklContext, m: int, n: int) -> int:
    return m + n + half_odd_mu(ctx)


def fueter_theorem31(
    ctx: DunklContext,
    seed: ComplexSeed | AxialPair,
    m: int,
    P: CliffordPolynomial,
    n: int | None = None,
    *,
    exponent_offset: int = 0,
    negative_control: bool = False,
) -> tuple[CliffordPolynomial, VerificationReport]:
    """Delta^{m+n+(mu-1)/2}((u + omega v) P_n) and its Dunkl-monogenicity.

    ``exponent_offset`` shifts the Laplacian power (negative controls only).
    """
    half = half_odd_mu(ctx)
    if n is None:
        n = require_homogeneous(P, "P_n")
    if isinstance(seed, ComplexSeed):
        if seed.j > m and not negative_control:
            raise SeedOrderTooHigh(f"{seed} does not solve dbar Delta^{m} f = 0 (needs j <= m)")
        pair = seed_to_axial(seed)
        label = str(seed)
    else:
        pair = seed
        label = str(seed)
    if exponent_offset and not negative_control:
        raise InputError("exponent offsets are only allowed in negative-control mode")
    expo = m + n + half + exponent_offset
    if expo < 0:
        raise InputError("Laplacian exponent would be negative")
    report = VerificationReport(f"fueter31:seed={label}:m={m}:n={n}:exp={expo}")

    result = ctx.laplacian_power(embed_axial(ctx, pair, P), expo)
    ok, res = is_dunkl_monogenic(ctx, result, "D")
    report.add("D(Delta^e((u + omega v) P_n)) = 0", ok, _txt(res), f"exponent {expo}; result has {result.term_count()} terms")

    closed = lemma32_closed_form(expo, n, ctx.mu, pair)
    diff = embed_axial(ctx, closed, P) - result
    report.add("result = closed-form axial pair times P_n", diff.is_zero(), _txt(diff))

    if not exponent_offset:
        N = n + half
        lap = pair
        for _ in range(m):
            lap = delta_z(lap)
        single = AxialPair(d_lower(N, lap.a), d_upper(N, lap.b)).scale(d_coeff(n, ctx.mu, N) * comb(expo, N))
        diff_pair = closed - single
        report.add(
            "only the j = n+(mu-1)/2 term survives",
            diff_pair.is_zero(),
            str(diff_pair),
            f"(2n+mu-1)!! * C({expo},{N}) * (A, B)",
        )
        c = 2 * n + ctx.mu - 1
        r1, r2 = vekua_residuals(closed, c)
        report.add("Vekua: dA/dx0 - dB/dr - (c/r) B = 0", not r1, str(r1), f"c = {format_rational(c)}")
        report.add("Vekua: dB/dx0 + dA/dr = 0", not r2, str(r2))
    return result, report


def fueter_theorem43(
    ctx: DunklContext,
    k: int,
    P: CliffordPolynomial,
    *,
    proof_checks: bool = False,
) -> tuple[CliffordPolynomial, VerificationReport]:
    """Delta^{n+(mu-1)/2}((u + omega v) P) for the holomorphic seed z^k and D P = 0."""
    half = half_odd_mu(ctx)
    n = require_homogeneous(P, "P")
    ok, res = is_dunkl_monogenic(ctx, P, "D")
    if not ok:
        raise FactorNotMonogenic(f"D P = {format_poly(res)} is not zero")
    expo = n + half
    pair = seed_to_axial(ComplexSeed(0, k))
    report = VerificationReport(f"fueter43:seed=z^{k}:n={n}:exp={expo}")
    result = ctx.laplacian_power(embed_axial(ctx, pair, P), expo)
    ok, res = is_dunkl_monogenic(ctx, result, "D")
    report.add("D(Delta^(n+(mu-1)/2)((u + omega v) P)) = 0", ok, _txt(res), f"exponent {expo}; result has {result.term_count()} terms")

    if proof_checks:
        # P(x0, x) = sum_k CK[x^k P_{n-k}] with P_{n-k} from the Fischer decomposition of P(0, x)
        dec = fischer_decompose(ctx, P.restrict_x0(0))
        x = CliffordPolynomial.xbar(ctx.dim)
        total = CliffordPolynomial.zero(ctx.dim)
        for kk, part in enumerate(dec.parts):
            if part.is_zero():
                continue
            total = total + ck_extend(ctx, (x**kk) * part)
            shape = ck_shape_check(ctx, kk, part, seed_power=k)
            report.extend(shape, prefix=f"summand k={kk}: ")
        diff = total - P
        report.add("P = sum_k CK[x^k P_(n-k)]", diff.is_zero(), _txt(diff))
    return result, report


def ck_shape_check(
    ctx: DunklContext,
    k: int,
    P: CliffordPolynomial,
    n_minus_k: int | None = None,
    *,
    seed_power: int | None = None,
) -> VerificationReport:
    """CK[x^k P] = (sum_j c_j x0^j x^(k-j)) P, and the induced g is (k+1)-holomorphic."""
    if n_minus_k is None:
        n_minus_k = require_homogeneous(P, "P_(n-k)")
    d = ctx.dim
    report = VerificationReport(f"ck-shape:k={k}:n-k={n_minus_k}")
    x = CliffordPolynomial.xbar(d)
    x0 = CliffordPolynomial.var(d, 0)
    ck = ck_extend(ctx, (x**k) * P)
    span = [(x0**j) * (x ** (k - j)) * P for j in range(k + 1)]
    keys = sorted({key for s in span + [ck] for key in s.keys()})
    cols = [s.coefficient_vector(keys) for s in span]
    sol = solve(transpose(cols, len(keys)), ck.coefficient_vector(keys)) if keys else [Fraction(0)] * (k + 1)
    member = sol is not None
    coeffs = "c_j = " + ",".join(format_rational(c) for c in sol) if member else "not in span"
    report.add("CK[x^k P] in span{x0^j x^(k-j) P}", member, "0" if member else _txt(ck), coeffs)
    if not member:
        return report
    g = AxialPair.zero()
    for j, c in enumerate(sol):
        if c:
            g = g + axial_mul(t_power_pair(j), xbar_power_pair(k - j)).scale(c)
    diff = embed_axial(ctx, g, P) - ck
    report.add("CK[x^k P] = (U + omega V) P", diff.is_zero(), _txt(diff), f"g = {g}")
    report.add(f"dbar^{k + 1} g = 0", polyanalytic_order_check(k + 1, g), "0", f"g = {g}")
    if seed_power is not None:
        fg = axial_mul(seed_to_axial(ComplexSeed(0, seed_power)), g)
        for _ in range(k):
            fg = delta_z(fg)
        lhs = dbar(fg)
        report.add(f"dbar Delta_z^{k}(z^{seed_power} g) = 0", lhs.is_zero(), str(lhs))
    return report
