from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from dunkl_fueter.errors import BadKappaArity, InputError, NegativeKappa, UnknownGroup, ZeroRoot
from dunkl_fueter.groups import (
    ReflectionGroup,
    Root,
    builtin_group,
    expected_order,
    parse_group_spec,
    reflection_matrix,
    validate,
)


def perm_matrices(d):
    """Oracle: S_d as permutation matrices on (x_0, x_1..x_d), x_0 fixed."""
    out = set()
    for p in permutations(range(d)):
        M = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
        M[0][0] = Fraction(1)
        for i, j in enumerate(p):
            M[i + 1][j + 1] = Fraction(1)
        out.add(tuple(map(tuple, M)))
    return out


def signed_perm_matrices(d):
    out = set()
    for p in permutations(range(d)):
        for signs in product((1, -1), repeat=d):
            M = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
            M[0][0] = Fraction(1)
            for i, j in enumerate(p):
                M[i + 1][j + 1] = Fraction(signs[i])
            out.add(tuple(map(tuple, M)))
    return out


def sign_flips(d):
    return {M for M in signed_perm_matrices(d) if all(M[i][i] for i in range(d + 1))}


# --- examples ----------------------------------------------------------------------


def test_a1_squared():
    g = parse_group_spec("a1:d=2:kappa=1/2,1")
    assert len(g.positive_roots) == 2 and g.order == 4
    assert set(g.elements) == sign_flips(2)
    assert g.gamma == Fraction(3, 2) and g.mu == 5


def test_s3():
    g = parse_group_spec("sd:d=3:kappa=1")
    assert len(g.positive_roots) == 3 and g.order == 6
    assert set(g.elements) == perm_matrices(3)
    assert g.mu == 9


def test_b2():
    g = parse_group_spec("bd:d=2:kappa=1,1")
    assert len(g.positive_roots) == 4 and g.order == 8
    assert set(g.elements) == signed_perm_matrices(2)
    assert parse_group_spec("b2:kappa=1,1").elements == g.elements


@pytest.mark.parametrize("name,d", [("a1", 1), ("a1", 3), ("a1", 4), ("sd", 2), ("sd", 4), ("bd", 3)])
def test_orders(name, d):
    k = {"a1": [1] * d, "sd": [1], "bd": [1, 1]}[name]
    assert builtin_group(name, d, k).order == expected_order(name, d)


def test_reflection_matrix_example():
    # reflection across e1 - e2 swaps x1 and x2
    M = reflection_matrix([0, 1, -1])
    assert M == ((1, 0, 0), (0, 0, 1), (0, 1, 0))


def test_errors():
    with pytest.raises(UnknownGroup):
        builtin_group("e8", 8, [1])
    with pytest.raises(BadKappaArity):
        parse_group_spec("a1:d=2:kappa=1")
    with pytest.raises(NegativeKappa):
        parse_group_spec("sd:d=3:kappa=-1")
    with pytest.raises(ZeroRoot):
        Root((0, 0, 0))
    with pytest.raises(InputError):
        parse_group_spec("a1;d=2")


def test_validate_builtin_groups_pass():
    for spec in ("a1:d=3:kappa=1,0,2", "sd:d=4:kappa=1/3", "bd:d=3:kappa=1,2"):
        assert validate(parse_group_spec(spec)).ok


def test_validate_catches_non_invariant_kappa():
    # B_2 roots with different weights on e1 and e2, which lie in one orbit
    d = 2
    short = [Root.axis(d, (1, 1)), Root.axis(d, (2, 1))]
    long = [Root.axis(d, (1, 1), (2, 1)), Root.axis(d, (1, 1), (2, -1))]
    roots = short + long + [-r for r in short + long]
    kappa = {short[0]: 1, short[1]: 2, long[0]: 1, long[1]: 1}
    report = validate(ReflectionGroup.build("bad", d, roots, kappa))
    assert [e.name for e in report.failures()] == ["kappa-invariant"]


def test_validate_catches_missing_root():
    d = 2
    roots = [Root.axis(d, (1, 1)), Root.axis(d, (1, 1), (2, 1))]
    roots += [-r for r in roots]
    report = validate(ReflectionGroup.build("partial", d, roots, {r: 1 for r in roots}))
    assert "reflection-stable" in [e.name for e in report.failures()]


def test_classical_mode_is_flagged():
    g = parse_group_spec("a1:d=3:kappa=0,0,0")
    assert g.is_classical and g.mu == 3
    entry = [e for e in validate(g).entries if e.name == "classical-mode"][0]
    assert entry.passed and "classical" in entry.detail


# --- properties ----------------------------------------------------------------------

GROUPS = [parse_group_spec(s) for s in ("a1:d=3:kappa=1,2,3", "sd:d=3:kappa=1", "bd:d=2:kappa=1,1/2", "bd:d=3:kappa=1,1")]


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_elements_orthogonal_and_fix_x0(g):
    for E in g.elements:
        n = len(E)
        assert all(sum(E[k][i] * E[k][j] for k in range(n)) == (i == j) for i in range(n) for j in range(n))
        assert E[0][0] == 1


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_reflections_permute_roots(g):
    roots = set(g.roots)
    for a in g.roots:
        assert {b.apply(reflection_matrix(a)) for b in roots} == roots


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.fractions(min_value=Fraction(1, 5), max_value=5))
def test_reflection_scale_invariant(coords, c):
    if not any(coords):
        return
    a = [0] + coords
    assert reflection_matrix(a) == reflection_matrix([c * x for x in a])
    assert reflection_matrix(a) == reflection_matrix([-x for x in a])


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_reflection_is_involution_fixing_hyperplane(coords):
    if not any(coords):
        return
    a = Root(tuple([0] + coords))
    M = reflection_matrix(a)
    n = len(M)
    sq = [[sum(M[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert sq == [[int(i == j) for j in range(n)] for i in range(n)]
    assert a.apply(M) == -a
