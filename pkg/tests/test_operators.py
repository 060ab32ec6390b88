from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import GROUP_SPECS, context, poly_from, seeds
from dunkl_fueter.clifford import Multivector
from dunkl_fueter.errors import IndexOutOfRange, InputError
from dunkl_fueter.fueter import monogenic_basis
from dunkl_fueter.groups import ReflectionGroup, Root, parse_group_spec
from dunkl_fueter.operators import DunklContext, spherical_residual
from dunkl_fueter.poly import CliffordPolynomial
from dunkl_fueter.textfmt import parse_poly


def sympy_T(group, i, expr, X):
    """Oracle: the Dunkl operator written out with sympy and rational cancellation."""
    out = sp.diff(expr, X[i])
    if i == 0:
        return sp.expand(out)
    for a in group.positive_roots:
        k = group.kappa(a)
        if not k or not a.coords[i]:
            continue
        al = [sp.Rational(c.numerator, c.denominator) for c in a.coords]
        ax = sum(c * x for c, x in zip(al, X))
        n2 = sum(c * c for c in al)
        refl = {X[j]: X[j] - 2 * ax / n2 * al[j] for j in range(len(X))}
        q = sp.cancel((expr - expr.xreplace(refl)) / ax)
        out += sp.Rational(k.numerator, k.denominator) * al[i] * q
    return sp.expand(out)


def scalar_to_sympy(p, X):
    comp = p.terms.get(0)
    if comp is None:
        return sp.Integer(0)
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.Mul(*[X[j] ** e for j, e in enumerate(m)]) for m, c in comp.terms.items()))


# --- examples ----------------------------------------------------------------------


def test_a1_derivatives_by_hand():
    ctx = context("a1:d=2:kappa=1/2,1")
    x1 = parse_poly("x1", 2)
    # T_1 x1 = 1 + kappa_1 * 2, T_1 x1^2 = 2 x1, T_1 x1^3 = 3 x1^2 + 2 kappa_1 x1^2
    assert ctx.T(1, x1) == parse_poly("2", 2)
    assert ctx.T(1, x1 * x1) == parse_poly("2*x1", 2)
    assert ctx.T(1, x1 * x1 * x1) == parse_poly("4*x1^2", 2)
    assert ctx.T(2, x1).is_zero()
    assert ctx.T(0, parse_poly("x0^2*x1", 2)) == parse_poly("2*x0*x1", 2)


def test_s3_derivative_by_hand():
    ctx = context("sd:d=3:kappa=1")
    # T_1 x1 = 1 + (x1 - x2)/(x1 - x2) + (x1 - x3)/(x1 - x3) = 3
    assert ctx.T(1, parse_poly("x1", 3)) == parse_poly("3", 3)
    assert ctx.T(1, parse_poly("x2", 3)) == parse_poly("-1", 3)


@pytest.mark.parametrize("spec,mu", [(GROUP_SPECS["A1^2"], 5), (GROUP_SPECS["A1^3"], 5), (GROUP_SPECS["classical3"], 3), (GROUP_SPECS["S3"], 9), (GROUP_SPECS["B2"], 8)])
def test_dirac_of_xbar_is_minus_mu(spec, mu):
    ctx = context(spec)
    assert ctx.mu == mu
    assert ctx.dirac(CliffordPolynomial.xbar(ctx.dim)) == CliffordPolynomial.constant(ctx.dim, -mu)


def test_dirac_acts_from_the_left():
    ctx = context("a1:d=2:kappa=1/2,1")
    # D(x1 e2) = (T_1 x1) e1 e2 = 2 e12
    assert ctx.dirac(parse_poly("x1*e2", 2)) == parse_poly("2*e12", 2)


def test_index_errors():
    ctx = context("a1:d=2:kappa=1/2,1")
    with pytest.raises(IndexOutOfRange):
        ctx.T(3, parse_poly("x1", 2))
    with pytest.raises(InputError):
        ctx.T(1, parse_poly("x1", 3))
    with pytest.raises(InputError):
        ctx.laplacian(parse_poly("x1", 2), "R^7")


def test_invalid_group_refused():
    d = 2
    short = [Root.axis(d, (1, 1)), Root.axis(d, (2, 1))]
    long = [Root.axis(d, (1, 1), (2, 1)), Root.axis(d, (1, 1), (2, -1))]
    roots = short + long + [-r for r in short + long]
    g = ReflectionGroup.build("bad", d, roots, {short[0]: 1, short[1]: 2, long[0]: 1, long[1]: 1})
    with pytest.raises(InputError):
        DunklContext(g)


# --- oracle agreement ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
@settings(max_examples=8)
@given(s=seeds)
def test_T_matches_sympy_oracle(spec, s):
    ctx = context(spec)
    d = ctx.dim
    X = sp.symbols("x0:%d" % (d + 1))
    p = poly_from(s, d, 3, scalar=True)
    expr = scalar_to_sympy(p, X)
    for i in range(d + 1):
        assert sp.expand(scalar_to_sympy(ctx.T(i, p), X) - sympy_T(ctx.group, i, expr, X)) == 0


# --- properties ------------------------------------------------------------------------------


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
@settings(max_examples=6)
@given(s=seeds)
def test_commute(spec, s):
    ctx = context(spec)
    p = poly_from(s, ctx.dim, 4)
    T = [ctx.T(i, p) for i in range(ctx.dim + 1)]
    for i in range(ctx.dim + 1):
        for j in range(i + 1, ctx.dim + 1):
            assert ctx.T(i, T[j]) == ctx.T(j, T[i])


@given(seeds)
def test_classical_reduction(s):
    ctx = context(GROUP_SPECS["classical3"])
    d = 3
    p = poly_from(s, d, 4)
    for i in range(d + 1):
        assert ctx.T(i, p) == p.diff(i)
    dirac = sum((p.diff(i).left_blade(1 << (i - 1)) for i in range(1, d + 1)), CliffordPolynomial.zero(d))
    assert ctx.dirac(p) == dirac
    assert ctx.cauchy_riemann(p) == p.diff(0) + dirac
    lap = sum((p.diff(i).diff(i) for i in range(1, d + 1)), CliffordPolynomial.zero(d))
    assert ctx.laplacian(p, "R^d") == lap
    assert ctx.laplacian(p) == lap + p.diff(0).diff(0)
    assert ctx.psi(p).is_zero()
    assert ctx.gamma_op(p) == ctx.phi(p)


@given(seeds, st.sampled_from([2, 3, Fraction(1, 2)]))
def test_root_scale_invariance(s, c):
    base = parse_group_spec("bd:d=2:kappa=1,1/2")
    scaled_roots = [Root(tuple(c * x for x in r.coords)) for r in base.roots]
    kappa = {Root(tuple(c * x for x in r.coords)): base.kappa(r) for r in base.positive_roots}
    other = DunklContext(ReflectionGroup.build("scaled", 2, scaled_roots, kappa))
    ctx = context("bd:d=2:kappa=1,1/2")
    p = poly_from(s, 2, 4)
    for i in range(3):
        assert other.T(i, p) == ctx.T(i, p)


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
@settings(max_examples=6)
@given(s=seeds)
def test_spherical_identity(spec, s):
    ctx = context(spec)
    assert spherical_residual(ctx, poly_from(s, ctx.dim, 4)).is_zero()


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
@settings(max_examples=6)
@given(s=seeds)
def test_laplacian_is_minus_dirac_squared(spec, s):
    ctx = context(spec)
    p = poly_from(s, ctx.dim, 4)
    assert ctx.laplacian(p, "R^d") == -ctx.dirac(ctx.dirac(p))


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
@settings(max_examples=6)
@given(s=seeds)
def test_cauchy_riemann_factorises_laplacian(spec, s):
    # (d_0 - Dbar)(d_0 + Dbar) = d_0^2 - Dbar^2 = d_0^2 + Delta
    ctx = context(spec)
    p = poly_from(s, ctx.dim, 4)
    dp = ctx.cauchy_riemann(p)
    assert dp.diff(0) - ctx.dirac(dp) == ctx.laplacian(p)


@pytest.mark.parametrize("spec", sorted(GROUP_SPECS.values()))
def test_gamma_eigenvalues(spec):
    ctx = context(spec)
    x = CliffordPolynomial.xbar(ctx.dim)
    for n in range(3):
        for P in monogenic_basis(ctx, n):
            assert ctx.gamma_op(P) == P.scale(-n)
            xP = x * P
            assert ctx.gamma_op(xP) == xP.scale(ctx.mu + n - 1)


def test_euler_counts_spatial_degree():
    ctx = context("a1:d=2:kappa=1/2,1")
    p = parse_poly("x0^3*x1 + x1*x2^2*e1", 2)
    assert ctx.euler(p) == parse_poly("x0^3*x1 + 3*x1*x2^2*e1", 2)


def test_evaluate_after_operator():
    ctx = context("a1:d=2:kappa=1/2,1")
    p = parse_poly("x1^3 + x2*e2", 2)
    # T_1 x1^3 = 4 x1^2, T_2 x2 = 1 + 2 = 3
    assert ctx.dirac(p).evaluate([0, 1, 0]) == Multivector(2, {1: 4, 0: -3})
