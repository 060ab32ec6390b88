"""Exact multivariate polynomials in x_0..x_d with Clifford-algebra coefficients.

A ``ScalarPoly`` maps dense exponent tuples to rationals.  A
``CliffordPolynomial`` maps blade masks to ``ScalarPoly`` components, i.e.
``f = sum_A e_A f_A``.  Variables commute with everything; blades do not
commute with each other.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .clifford import (
    Multivector,
    Rational,
    blade_name,
    blade_sort_key,
    format_rational,
    join_signed,
    mask_product,
)
from .errors import DimensionMismatch, IndexOutOfRange, NonDivisible, ZeroLinearForm

Monomial = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]
Terms = dict[Monomial, Fraction]


# ---------------------------------------------------------------------------
# dict-level kernels (hot paths, no validation)


def _add_into(acc: Terms, terms: Mapping[Monomial, Fraction], scale: Rational = 1) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + c * scale
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _mul_terms(p: Mapping[Monomial, Fraction], q: Mapping[Monomial, Fraction]) -> Terms:
    out: Terms = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _diff_terms(p: Mapping[Monomial, Fraction], i: int) -> Terms:
    out: Terms = {}
    for m, c in p.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1 :]] = c * e
    return out


def signed_permutation(M: Matrix) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Return ``(targets, signs)`` if ``M`` is a signed permutation matrix."""
    targets, signs = [], []
    for row in M:
        nz = [(j, c) for j, c in enumerate(row) if c]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        targets.append(nz[0][0])
        signs.append(int(nz[0][1]))
    if sorted(targets) != list(range(len(M))):
        return None
    return tuple(targets), tuple(signs)


def _subst_signed_perm(p: Mapping[Monomial, Fraction], targets, signs) -> Terms:
    n = len(targets)
    out: Terms = {}
    for m, c in p.items():
        new = [0] * n
        neg = False
        for i, e in enumerate(m):
            if e:
                new[targets[i]] += e
                if signs[i] < 0 and e & 1:
                    neg = not neg
        out[tuple(new)] = -c if neg else c
    return out


def _subst_general(p: Mapping[Monomial, Fraction], M: Matrix) -> Terms:
    n = len(M)
    forms: list[Terms] = []
    for row in M:
        forms.append({tuple(1 if k == j else 0 for k in range(n)): Fraction(c) for j, c in enumerate(row) if c})
    one = {(0,) * n: Fraction(1)}
    powers: dict[tuple[int, int], Terms] = {}

    def power(i: int, e: int) -> Terms:
        if e == 0:
            return one
        key = (i, e)
        if key not in powers:
            powers[key] = _mul_terms(power(i, e - 1), forms[i])
        return powers[key]

    out: Terms = {}
    for m, c in p.items():
        acc = one
        for i, e in enumerate(m):
            if e:
                acc = _mul_terms(acc, power(i, e))
        _add_into(out, acc, c)
    return out


def _substitute_terms(p: Mapping[Monomial, Fraction], M: Matrix, perm=None) -> Terms:
    if perm is None:
        perm = signed_permutation(M)
    if perm is not None:
        return _subst_signed_perm(p, *perm)
    return _subst_general(p, M)


def leading_index(alpha: Sequence[Rational]) -> int:
    for i, a in enumerate(alpha):
        if a:
            return i
    raise ZeroLinearForm("linear form is identically zero")


def _divide_terms(p: Mapping[Monomial, Fraction], alpha: Sequence[Fraction], lead: int) -> Terms:
    """Exact quotient of ``p`` by ``<alpha, x>`` via reduction in the lead variable."""
    a_lead = alpha[lead]
    others = [(i, -a / a_lead) for i, a in enumerate(alpha) if a and i != lead]
    work: Terms = dict(p)
    quotient: Terms = {}
    top = max((m[lead] for m in work), default=0)
    for e in range(top, 0, -1):
        level = [(m, c) for m, c in work.items() if m[lead] == e]
        for m, c in level:
            del work[m]
            base = m[:lead] + (e - 1,) + m[lead + 1 :]
            # x_lead * base = (L / a_lead) * base - sum_i (a_i / a_lead) x_i * base
            q = quotient.get(base, 0) + c / a_lead
            if q:
                quotient[base] = q
            else:
                quotient.pop(base, None)
            for i, w in others:
                nm = base[:i] + (base[i] + 1,) + base[i + 1 :]
                v = work.get(nm, 0) + c * w
                if v:
                    work[nm] = v
                else:
                    work.pop(nm, None)
    if work:
        raise NonDivisible(f"remainder has {len(work)} nonzero terms")
    return quotient


# ---------------------------------------------------------------------------


def format_monomial(m: Monomial) -> str:
    return "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)


def monomial_sort_key(m: Monomial):
    return (sum(m), tuple(-e for e in m))


class ScalarPoly:
    """Immutable polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Rational] | None = None):
        self.nvars = nvars
        clean: Terms = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise DimensionMismatch(f"monomial {m} has length {len(m)}, expected {nvars}")
            if c:
                clean[tuple(m)] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Terms) -> "ScalarPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, c: Rational) -> "ScalarPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "ScalarPoly":
        if not 0 <= i < nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{nvars - 1}")
        return cls(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    def _check(self, other: "ScalarPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "ScalarPoly":
        if isinstance(other, ScalarPoly):
            self._check(other)
            return other
        return ScalarPoly.constant(self.nvars, other)

    def __add__(self, other) -> "ScalarPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        _add_into(out, other.terms)
        return ScalarPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ScalarPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        _add_into(out, other.terms, -1)
        return ScalarPoly._raw(self.nvars, out)

    def __rsub__(self, other) -> "ScalarPoly":
        return (-self) + other

    def __mul__(self, other) -> "ScalarPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ScalarPoly._raw(self.nvars, {})
            return ScalarPoly._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        return ScalarPoly._raw(self.nvars, _mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ScalarPoly":
        out = ScalarPoly.constant(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, i: int) -> "ScalarPoly":
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.nvars - 1}")
        return ScalarPoly._raw(self.nvars, _diff_terms(self.terms, i))

    def degree(self) -> int | None:
        return max((sum(m) for m in self.terms), default=None)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=0)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def substitute(self, images: Sequence["ScalarPoly"]) -> "ScalarPoly":
        """Replace variable ``i`` by ``images[i]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise DimensionMismatch("need one image per variable")
        target = images[0].nvars
        out: Terms = {}
        cache: dict[tuple[int, int], Terms] = {}
        one = {(0,) * target: Fraction(1)}
        for m, c in self.terms.items():
            acc = one
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = (images[i] ** e).terms
                    acc = _mul_terms(acc, cache[(i, e)])
            _add_into(out, acc, c)
        return ScalarPoly._raw(target, out)

    def __repr__(self) -> str:
        return f"ScalarPoly({self.nvars}, {format_scalar_poly(self)!r})"

    def __str__(self) -> str:
        return format_scalar_poly(self)


def format_scalar_poly(p: ScalarPoly, names: Sequence[str] | None = None) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, key=monomial_sort_key):
        c = p.terms[m]
        if names is None:
            mono = format_monomial(m)
        else:
            mono = "*".join(names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
        body = format_rational(abs(c)) + ("*" + mono if mono else "")
        parts.append(("-" if c < 0 else "+", body))
    return join_signed(parts)


class CliffordPolynomial:
    """Immutable polynomial in x_0..x_d with coefficients in R_{0,d}."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[int, ScalarPoly | Mapping[Monomial, Rational]] | None = None):
        self.dim = dim
        nv = dim + 1
        clean: dict[int, ScalarPoly] = {}
        for mask, comp in (terms or {}).items():
            if not 0 <= mask < (1 << dim):
                raise DimensionMismatch(f"blade {blade_name(mask)} outside R_(0,{dim})")
            if not isinstance(comp, ScalarPoly):
                comp = ScalarPoly(nv, comp)
            elif comp.nvars != nv:
                raise DimensionMismatch(f"component has {comp.nvars} variables, expected {nv}")
            if comp.terms:
                clean[mask] = comp
        self.terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: dict[int, Terms]) -> "CliffordPolynomial":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.terms = {m: ScalarPoly._raw(dim + 1, t) for m, t in terms.items() if t}
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "CliffordPolynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c: Rational | Multivector) -> "CliffordPolynomial":
        if isinstance(c, Multivector):
            if c.dim != dim:
                raise DimensionMismatch("multivector dimension differs")
            return cls(dim, {m: ScalarPoly.constant(dim + 1, v) for m, v in c.terms.items()})
        return cls(dim, {0: ScalarPoly.constant(dim + 1, c)})

    @classmethod
    def blade(cls, dim: int, mask: int, c: Rational = 1) -> "CliffordPolynomial":
        return cls(dim, {mask: ScalarPoly.constant(dim + 1, c)})

    @classmethod
    def var(cls, dim: int, i: int) -> "CliffordPolynomial":
        return cls(dim, {0: ScalarPoly.var(dim + 1, i)})

    @classmethod
    def from_scalar(cls, dim: int, p: ScalarPoly, mask: int = 0) -> "CliffordPolynomial":
        return cls(dim, {mask: p})

    @classmethod
    def xbar(cls, dim: int) -> "CliffordPolynomial":
        """The vector variable sum_{i=1..d} x_i e_i."""
        return cls(dim, {1 << (i - 1): ScalarPoly.var(dim + 1, i) for i in range(1, dim + 1)})

    @classmethod
    def radial(cls, dim: int) -> "CliffordPolynomial":
        """q = sum_{i=1..d} x_i^2."""
        return cls(dim, {0: radial_scalar(dim)})

    # basic protocol ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.dim + 1

    def _check(self, other: "CliffordPolynomial") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"d={self.dim} vs d={other.dim}")

    def _coerce(self, other) -> "CliffordPolynomial":
        if isinstance(other, CliffordPolynomial):
            self._check(other)
            return other
        if isinstance(other, ScalarPoly):
            return CliffordPolynomial.from_scalar(self.dim, other)
        return CliffordPolynomial.constant(self.dim, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Multivector, ScalarPoly)):
            other = self._coerce(other)
        if not isinstance(other, CliffordPolynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __add__(self, other) -> "CliffordPolynomial":
        other = self._coerce(other)
        out = {m: dict(p.terms) for m, p in self.terms.items()}
        for m, p in other.terms.items():
            _add_into(out.setdefault(m, {}), p.terms)
        return CliffordPolynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "CliffordPolynomial":
        return self.scale(-1)

    def __sub__(self, other) -> "CliffordPolynomial":
        other = self._coerce(other)
        out = {m: dict(p.terms) for m, p in self.terms.items()}
        for m, p in other.terms.items():
            _add_into(out.setdefault(m, {}), p.terms, -1)
        return CliffordPolynomial._raw(self.dim, out)

    def __rsub__(self, other) -> "CliffordPolynomial":
        return (-self) + other

    def scale(self, c: Rational) -> "CliffordPolynomial":
        if not c:
            return CliffordPolynomial(self.dim)
        return CliffordPolynomial._raw(
            self.dim, {m: {k: v * c for k, v in p.terms.items()} for m, p in self.terms.items()}
        )

    def __mul__(self, other) -> "CliffordPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[int, Terms] = {}
        for a, pa in self.terms.items():
            for b, pb in other.terms.items():
                sign, m = mask_product(a, b)
                _add_into(out.setdefault(m, {}), _mul_terms(pa.terms, pb.terms), sign)
        return CliffordPolynomial._raw(self.dim, out)

    def __rmul__(self, other) -> "CliffordPolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self._coerce(other) * self

    def __pow__(self, e: int) -> "CliffordPolynomial":
        out = CliffordPolynomial.constant(self.dim, 1)
        for _ in range(e):
            out = out * self
        return out

    def left_blade(self, mask: int, c: Rational = 1) -> "CliffordPolynomial":
        """Return ``c * e_mask * self``."""
        out: dict[int, Terms] = {}
        for b, p in self.terms.items():
            sign, m = mask_product(mask, b)
            out[m] = {k: v * (sign * c) for k, v in p.terms.items()}
        return CliffordPolynomial._raw(self.dim, out)

    def map_components(self, fn: Callable[[Terms], Terms]) -> "CliffordPolynomial":
        return CliffordPolynomial._raw(self.dim, {m: fn(p.terms) for m, p in self.terms.items()})

    # calculus and substitution ---------------------------------------------

    def diff(self, i: int) -> "CliffordPolynomial":
        if not 0 <= i <= self.dim:
            raise IndexOutOfRange(f"variable index {i} outside 0..{self.dim}")
        return self.map_components(lambda t: _diff_terms(t, i))

    def substitute_linear(self, M: Sequence[Sequence[Rational]]) -> "CliffordPolynomial":
        M = as_matrix(M)
        if len(M) != self.nvars or any(len(r) != self.nvars for r in M):
            raise DimensionMismatch(f"need a {self.nvars}x{self.nvars} matrix")
        perm = signed_permutation(M)
        return self.map_components(lambda t: _substitute_terms(t, M, perm))

    def divide_by_linear(self, alpha: Sequence[Rational]) -> "CliffordPolynomial":
        if len(alpha) != self.nvars:
            raise DimensionMismatch(f"linear form needs {self.nvars} coordinates")
        alpha = [Fraction(a) for a in alpha]
        lead = leading_index(alpha)
        return self.map_components(lambda t: _divide_terms(t, alpha, lead))

    def homogeneous_components(self) -> list[tuple[int, "CliffordPolynomial"]]:
        by_deg: dict[int, dict[int, Terms]] = {}
        for mask, p in self.terms.items():
            for m, c in p.terms.items():
                by_deg.setdefault(sum(m), {}).setdefault(mask, {})[m] = c
        return [(deg, CliffordPolynomial._raw(self.dim, by_deg[deg])) for deg in sorted(by_deg)]

    def degree(self) -> int | None:
        return max((p.degree() for p in self.terms.values()), default=None)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for p in self.terms.values() for m in p.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def depends_on(self, i: int) -> bool:
        return any(m[i] for p in self.terms.values() for m in p.terms)

    def evaluate(self, point: Sequence[Rational]) -> Multivector:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point needs {self.nvars} coordinates")
        return Multivector(self.dim, {m: p.evaluate(point) for m, p in self.terms.items()})

    def restrict_x0(self, value: Rational = 0) -> "CliffordPolynomial":
        """Set x_0 to ``value`` (the result no longer depends on x_0)."""
        out: dict[int, Terms] = {}
        for mask, p in self.terms.items():
            acc: Terms = {}
            for m, c in p.terms.items():
                e = m[0]
                v = c * Fraction(value) ** e if e else c
                if v:
                    k = (0,) + m[1:]
                    acc[k] = acc.get(k, 0) + v
            out[mask] = {k: v for k, v in acc.items() if v}
        return CliffordPolynomial._raw(self.dim, out)

    def term_count(self) -> int:
        return sum(len(p.terms) for p in self.terms.values())

    def coefficient_vector(self, keys: Sequence[tuple[int, Monomial]]) -> list[Fraction]:
        return [self.terms[b].terms.get(m, Fraction(0)) if b in self.terms else Fraction(0) for b, m in keys]

    def keys(self) -> Iterator[tuple[int, Monomial]]:
        for b, p in self.terms.items():
            for m in p.terms:
                yield b, m

    def __repr__(self) -> str:
        return f"CliffordPolynomial({self.dim}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def as_matrix(M: Sequence[Sequence[Rational]]) -> Matrix:
    return tuple(tuple(Fraction(c) for c in row) for row in M)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(sum((A[i][t] * B[t][j] for t in range(k)), Fraction(0)) for j in range(m)) for i in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def radial_scalar(dim: int) -> ScalarPoly:
    nv = dim + 1
    return ScalarPoly(nv, {tuple(2 if k == i else 0 for k in range(nv)): 1 for i in range(1, dim + 1)})


def format_poly(p: CliffordPolynomial) -> str:
    """Render in the shared text grammar, e.g. ``1/2*x1^2 - 3*x0*x2*e12``."""
    if not p.terms:
        return "0"
    parts = []
    for mask in sorted(p.terms, key=blade_sort_key):
        comp = p.terms[mask]
        for m in sorted(comp.terms, key=monomial_sort_key):
            c = comp.terms[m]
            factors = [f for f in (format_monomial(m), blade_name(mask) if mask else "") if f]
            body = format_rational(abs(c)) + "".join("*" + f for f in factors)
            parts.append(("-" if c < 0 else "+", body))
    return join_signed(parts)


# ---------------------------------------------------------------------------
# free-function API mirroring the operations table


def partial_derivative(i: int, p: CliffordPolynomial) -> CliffordPolynomial:
    return p.diff(i)


def substitute_linear(M: Sequence[Sequence[Rational]], p: CliffordPolynomial) -> CliffordPolynomial:
    return p.substitute_linear(M)


def divide_by_linear(alpha: Sequence[Rational], p: CliffordPolynomial) -> CliffordPolynomial:
    return p.divide_by_linear(alpha)


def homogeneous_components(p: CliffordPolynomial) -> list[tuple[int, CliffordPolynomial]]:
    return p.homogeneous_components()


def evaluate(p: CliffordPolynomial, point: Sequence[Rational]) -> Multivector:
    return p.evaluate(point)


def linear_form(dim: int, alpha: Sequence[Rational]) -> CliffordPolynomial:
    nv = dim + 1
    return CliffordPolynomial(
        dim, {0: {tuple(1 if k == i else 0 for k in range(nv)): a for i, a in enumerate(alpha) if a}}
    )


# ---------------------------------------------------------------------------
# random inputs


def monomials_of_degree(nvars: int, degree: int, skip: Iterable[int] = ()) -> list[Monomial]:
    """All exponent tuples of the given total degree, avoiding variables in ``skip``."""
    skip = set(skip)
    free = [i for i in range(nvars) if i not in skip]
    out = []
    for combo in combinations_with_replacement(free, degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), key=monomial_sort_key)


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, 3))


def random_poly(
    rng: random.Random,
    dim: int,
    max_degree: int,
    n_terms: int = 6,
    *,
    homogeneous: bool = False,
    with_x0: bool = True,
    scalar: bool = False,
) -> CliffordPolynomial:
    """Deterministic pseudo-random Clifford polynomial driven by ``rng``.

    With ``homogeneous`` every term has degree exactly ``max_degree``.
    """
    nv = dim + 1
    skip = () if with_x0 else (0,)
    degrees = [max_degree] if homogeneous else list(range(max_degree + 1))
    pool = [m for deg in degrees for m in monomials_of_degree(nv, deg, skip)]
    out: dict[int, Terms] = {}
    for _ in range(n_terms):
        m = rng.choice(pool)
        mask = 0 if scalar else rng.randrange(1 << dim)
        comp = out.setdefault(mask, {})
        comp[m] = comp.get(m, 0) + random_rational(rng)
    return CliffordPolynomial(dim, out)
