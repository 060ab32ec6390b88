import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import poly_from, seeds
from dunkl_fueter.clifford import Multivector
from dunkl_fueter.errors import DimensionMismatch, IndexOutOfRange, NonDivisible, ParseError, ZeroLinearForm
from dunkl_fueter.poly import (
    CliffordPolynomial,
    ScalarPoly,
    format_poly,
    linear_form,
    matmul,
    partial_derivative,
)
from dunkl_fueter.textfmt import parse_multivector, parse_poly, print_poly

DIM = 3
X = sp.symbols("x0:%d" % (DIM + 1))


def to_sympy(p: CliffordPolynomial) -> dict:
    """Oracle view: blade mask -> sympy expression."""
    out = {}
    for mask, comp in p.terms.items():
        out[mask] = sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.Mul(*[X[i] ** e for i, e in enumerate(m)]) for m, c in comp.terms.items()))
    return out


def same(p: CliffordPolynomial, expr: dict) -> bool:
    got = to_sympy(p)
    keys = set(got) | set(expr)
    return all(sp.expand(got.get(k, 0) - expr.get(k, 0)) == 0 for k in keys)


def random_matrix(rng, n, signed_perm=False):
    if signed_perm:
        perm = list(range(1, n))
        rng.shuffle(perm)
        perm = [0] + perm
        return [[(rng.choice((-1, 1)) if j == perm[i] and i else (1 if i == j == 0 else 0)) for j in range(n)] for i in range(n)]
    return [[Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]


# --- examples ----------------------------------------------------------------------


def test_diff_example():
    p = parse_poly("x1^2*x2", 2)
    assert p.diff(1) == parse_poly("2*x1*x2", 2)
    assert p.diff(0).is_zero()


def test_diff_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        parse_poly("x1", 2).diff(3)


def test_divide_example():
    # (x1^2 - x2^2) / (x1 - x2) = x1 + x2
    p = parse_poly("x1^2 - x2^2", 2)
    assert p.divide_by_linear([0, 1, -1]) == parse_poly("x1 + x2", 2)


def test_divide_non_divisible():
    with pytest.raises(NonDivisible):
        parse_poly("x1^2 + x2", 2).divide_by_linear([0, 1, 0])


def test_divide_by_zero_form():
    with pytest.raises(ZeroLinearForm):
        parse_poly("x1", 2).divide_by_linear([0, 0, 0])


def test_substitute_reflection_example():
    # sigma_{e1}: x1 -> -x1
    p = parse_poly("x1^3 + x1*x2*e1", 2)
    M = [[1, 0, 0], [0, -1, 0], [0, 0, 1]]
    assert p.substitute_linear(M) == parse_poly("-x1^3 - x1*x2*e1", 2)


def test_substitute_bad_shape():
    with pytest.raises(DimensionMismatch):
        parse_poly("x1", 2).substitute_linear([[1, 0], [0, 1]])


def test_xbar_squared_is_minus_radial():
    x = CliffordPolynomial.xbar(DIM)
    assert x * x == -CliffordPolynomial.radial(DIM)


def test_homogeneous_components_example():
    p = parse_poly("1 + x1 + x0*x2*e1", 2)
    comps = p.homogeneous_components()
    assert [d for d, _ in comps] == [0, 1, 2]
    assert sum((c for _, c in comps), CliffordPolynomial.zero(2)) == p
    assert CliffordPolynomial.zero(2).homogeneous_components() == []


def test_format_and_parse():
    p = parse_poly("1/4*x1^2 - 1/2*x1*x2*e12", 2)
    assert format_poly(p) == "1/4*x1^2 - 1/2*x1*x2*e12"
    assert format_poly(CliffordPolynomial.zero(2)) == "0"


def test_parse_blade_products_anticommute():
    assert parse_poly("e2*e1", 2) == parse_poly("-e12", 2)
    assert parse_poly("e1*e1", 2) == parse_poly("-1", 2)


@pytest.mark.parametrize("text", ["x1 x2", "x3", "e3", "1/0", "x1^", "(x1", "2**x1", "x1 + + "])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, 2)


def test_parse_multivector():
    assert parse_multivector("3/2 + e1 - 2*e12", 2) == Multivector(2, {0: Fraction(3, 2), 1: 1, 3: -2})
    with pytest.raises(ParseError):
        parse_multivector("x1", 2)


def test_evaluate_example():
    p = parse_poly("x1*x2 + 3*x0*e1", 2)
    assert p.evaluate([1, 2, 3]) == Multivector(2, {0: 6, 1: 3})


def test_scalar_poly_basics():
    t = ScalarPoly.var(2, 0)
    q = ScalarPoly.var(2, 1)
    p = (t + q) ** 2
    assert p.degree() == 2
    assert p.degree_in(0) == 2
    assert p.evaluate([1, 2]) == 9
    assert p.diff(1) == (t + q) * 2


# --- properties against the sympy oracle ---------------------------------------------------


@given(seeds, seeds)
def test_product_matches_oracle_on_scalars(s1, s2):
    p = poly_from(s1, DIM, scalar=True)
    q = poly_from(s2, DIM, scalar=True)
    assert same(p * q, {0: sp.expand(to_sympy(p).get(0, 0) * to_sympy(q).get(0, 0))})


@given(seeds, st.integers(0, DIM))
def test_diff_matches_oracle(s, i):
    p = poly_from(s, DIM)
    assert same(partial_derivative(i, p), {k: sp.diff(v, X[i]) for k, v in to_sympy(p).items()})


@given(seeds, seeds)
def test_substitution_matches_oracle(s, sm):
    p = poly_from(s, DIM)
    M = random_matrix(random.Random(sm), DIM + 1)
    images = {X[i]: sum(sp.Rational(M[i][j].numerator, M[i][j].denominator) * X[j] for j in range(DIM + 1)) for i in range(DIM + 1)}
    want = {k: sp.expand(v.xreplace(images)) for k, v in to_sympy(p).items()}
    assert same(p.substitute_linear(M), want)


@given(seeds, seeds, st.integers(0, DIM))
def test_leibniz(s1, s2, i):
    p, q = poly_from(s1, DIM), poly_from(s2, DIM)
    assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@given(seeds, seeds, seeds, st.booleans())
def test_substitution_composes(s, s1, s2, signed):
    p = poly_from(s, DIM)
    M = random_matrix(random.Random(s1), DIM + 1, signed)
    N = random_matrix(random.Random(s2), DIM + 1, signed)
    assert p.substitute_linear(M).substitute_linear(N) == p.substitute_linear(matmul(M, N))


@given(seeds, seeds)
def test_signed_permutation_fast_path_agrees(s, sm):
    # call the general expansion directly and compare with the permutation shortcut
    from dunkl_fueter.poly import _subst_general

    p = poly_from(s, DIM)
    M = random_matrix(random.Random(sm), DIM + 1, True)
    fast = p.substitute_linear(M)
    slow = p.map_components(lambda t: _subst_general(t, [[Fraction(c) for c in r] for r in M]))
    assert fast == slow


@given(seeds, st.lists(st.integers(-3, 3), min_size=DIM, max_size=DIM))
def test_divide_round_trip(s, alpha):
    alpha = [0] + alpha
    if not any(alpha):
        return
    p = poly_from(s, DIM)
    assert (p * linear_form(DIM, alpha)).divide_by_linear(alpha) == p


@given(seeds, seeds, st.lists(st.integers(-3, 3), min_size=DIM + 1, max_size=DIM + 1))
def test_evaluation_is_homomorphism(s1, s2, pt):
    p, q = poly_from(s1, DIM), poly_from(s2, DIM)
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(seeds)
def test_text_round_trip(s):
    p = poly_from(s, DIM, 4, n_terms=8)
    assert parse_poly(print_poly(p), DIM) == p


@given(seeds)
def test_homogeneous_components_sum(s):
    p = poly_from(s, DIM)
    comps = p.homogeneous_components()
    assert all(c.is_homogeneous(d) for d, c in comps)
    assert sum((c for _, c in comps), CliffordPolynomial.zero(DIM)) == p
