"""Rational root systems whose reflection groups fix the x_0-axis.

Roots live in R^{d+1} with coordinate 0 equal to zero.  The positive
subsystem is the set of roots whose first nonzero coordinate is positive.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from .clifford import Rational, format_rational
from .errors import BadKappaArity, InputError, NegativeKappa, UnknownGroup, ZeroRoot
from .poly import Matrix, identity_matrix, matmul
from .report import VerificationReport

#: closure stops here; every built-in group is far smaller
MAX_GROUP_ORDER = 50_000


@dataclass(frozen=True)
class Root:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if not any(self.coords):
            raise ZeroRoot("the zero vector is not a root")
        if self.coords[0] != 0:
            raise InputError("roots must have coordinate 0 equal to zero (x_0-axis is fixed)")

    @classmethod
    def axis(cls, dim: int, *pairs: tuple[int, Rational]) -> "Root":
        """Root with given (index, value) entries, indices 1..dim."""
        c = [Fraction(0)] * (dim + 1)
        for i, v in pairs:
            c[i] = Fraction(v)
        return cls(tuple(c))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def norm2(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    def is_positive(self) -> bool:
        return next(c for c in self.coords if c) > 0

    def canonical(self) -> "Root":
        return self if self.is_positive() else -self

    def apply(self, M: Matrix) -> "Root":
        return Root(tuple(sum((M[i][j] * self.coords[j] for j in range(len(M))), Fraction(0)) for i in range(len(M))))

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(c) for c in self.coords[1:]) + ")"


def reflection_matrix(alpha: Root | Sequence[Rational]) -> Matrix:
    """Matrix of x -> x - 2 <alpha,x>/|alpha|^2 alpha."""
    if not isinstance(alpha, Root):
        alpha = Root(tuple(alpha))
    a = alpha.coords
    n2 = alpha.norm2()
    n = len(a)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * a[i] * a[j] / n2 for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class MultiplicityFunction:
    """Non-negative weights on roots; ``kappa(alpha) == kappa(-alpha)`` by construction."""

    values: Mapping[Root, Fraction]

    def __post_init__(self):
        clean = {}
        for r, v in self.values.items():
            v = Fraction(v)
            if v < 0:
                raise NegativeKappa(f"kappa({r}) = {v} is negative")
            clean[r.canonical()] = v
        object.__setattr__(self, "values", clean)

    def __call__(self, alpha: Root) -> Fraction:
        return self.values.get(alpha.canonical(), Fraction(0))


def close_group(generators: Sequence[Matrix], limit: int = MAX_GROUP_ORDER) -> list[Matrix]:
    """Breadth-first closure of a set of matrices under multiplication."""
    n = len(generators[0]) if generators else 0
    ident = identity_matrix(n) if generators else ()
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = matmul(s, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                queue.append(h)
                if len(order) > limit:
                    raise InputError(f"group closure exceeded {limit} elements; not a finite reflection group?")
    return order


@dataclass(frozen=True)
class ReflectionGroup:
    name: str
    d: int
    roots: tuple[Root, ...]
    kappa: MultiplicityFunction
    elements: tuple[Matrix, ...] = field(repr=False)

    @classmethod
    def build(
        cls,
        name: str,
        d: int,
        roots: Sequence[Root],
        kappa: Mapping[Root, Rational] | MultiplicityFunction,
        *,
        limit: int = MAX_GROUP_ORDER,
    ) -> "ReflectionGroup":
        """Construct from the full root set R (positive and negative roots)."""
        roots = tuple(dict.fromkeys(roots))
        for r in roots:
            if r.dim != d:
                raise InputError(f"root {r} does not live in R^{d}")
        if not isinstance(kappa, MultiplicityFunction):
            kappa = MultiplicityFunction(dict(kappa))
        gens = list(dict.fromkeys(reflection_matrix(r) for r in roots))
        elements = close_group(gens, limit) if gens else [identity_matrix(d + 1)]
        return cls(name, d, roots, kappa, tuple(elements))

    @property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.is_positive())

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_classical(self) -> bool:
        return self.gamma == 0

    @property
    def gamma(self) -> Fraction:
        return gamma_kappa(self)

    @property
    def mu(self) -> Fraction:
        return dunkl_dimension(self)

    def spec_string(self) -> str:
        return self.name

    def __str__(self) -> str:
        return f"{self.name} (|W|={self.order}, gamma={format_rational(self.gamma)}, mu={format_rational(self.mu)})"


def gamma_kappa(g: ReflectionGroup) -> Fraction:
    return sum((g.kappa(a) for a in g.positive_roots), Fraction(0))


def dunkl_dimension(g: ReflectionGroup) -> Fraction:
    return 2 * gamma_kappa(g) + g.d


# ---------------------------------------------------------------------------
# built-in systems

GROUP_ALIASES = {
    "a1": "A1^d",
    "a1^d": "A1^d",
    "sd": "S_d",
    "s_d": "S_d",
    "bd": "B_d",
    "b_d": "B_d",
    "b2": "B_2-planar",
    "b_2-planar": "B_2-planar",
}


def _with_negatives(pos: list[Root]) -> list[Root]:
    return pos + [-r for r in pos]


def builtin_group(name: str, d: int | None = None, kappa_params: Sequence[Rational] = ()) -> ReflectionGroup:
    """One of ``A1^d``, ``S_d``, ``B_d`` or ``B_2-planar`` with the given weights.

    Weight order: A1^d takes one value per coordinate axis, S_d a single value,
    and B_d the pair (short roots e_i, long roots e_i +- e_j).
    """
    key = GROUP_ALIASES.get(name.lower(), name)
    kappa_params = [Fraction(k) for k in kappa_params]
    if any(k < 0 for k in kappa_params):
        raise NegativeKappa(f"kappa parameters must be >= 0, got {kappa_params}")
    if key == "B_2-planar":
        if d not in (None, 2):
            raise InputError("B_2-planar lives in d=2")
        d = 2
    if key not in ("A1^d", "S_d", "B_d", "B_2-planar"):
        raise UnknownGroup(f"unknown group {name!r}; expected one of a1, sd, bd, b2")
    if d is None or d < 1:
        raise InputError("dimension d must be >= 1")

    weights: dict[Root, Fraction] = {}
    if key == "A1^d":
        if len(kappa_params) != d:
            raise BadKappaArity(f"A1^{d} needs {d} kappa values, got {len(kappa_params)}")
        pos = [Root.axis(d, (i, 1)) for i in range(1, d + 1)]
        weights = dict(zip(pos, kappa_params))
        label = f"a1:d={d}"
    elif key == "S_d":
        if d < 2:
            raise InputError("S_d needs d >= 2")
        if len(kappa_params) != 1:
            raise BadKappaArity(f"S_{d} needs 1 kappa value, got {len(kappa_params)}")
        pos = [Root.axis(d, (i, 1), (j, -1)) for i, j in combinations(range(1, d + 1), 2)]
        weights = {r: kappa_params[0] for r in pos}
        label = f"sd:d={d}"
    else:
        if d < 2:
            raise InputError("B_d needs d >= 2")
        if len(kappa_params) != 2:
            raise BadKappaArity(f"B_{d} needs 2 kappa values (short, long), got {len(kappa_params)}")
        short = [Root.axis(d, (i, 1)) for i in range(1, d + 1)]
        long = [Root.axis(d, (i, 1), (j, s)) for i, j in combinations(range(1, d + 1), 2) for s in (-1, 1)]
        pos = short + long
        weights = {r: kappa_params[0] for r in short}
        weights.update({r: kappa_params[1] for r in long})
        label = "b2" if key == "B_2-planar" else f"bd:d={d}"
    label += ":kappa=" + ",".join(format_rational(k) for k in kappa_params)
    return ReflectionGroup.build(label, d, _with_negatives(pos), weights)


def expected_order(name: str, d: int) -> int:
    key = GROUP_ALIASES.get(name.lower(), name)
    if key == "A1^d":
        return 2**d
    if key == "S_d":
        return factorial(d)
    return 2**d * factorial(d)


_SPEC = re.compile(r"^(?P<name>[a-z0-9_^\-]+)((?::d=(?P<d>\d+))?)(?::kappa=(?P<kappa>[-0-9/,]+))?$", re.I)


def parse_group_spec(text: str) -> ReflectionGroup:
    """Parse ``a1:d=2:kappa=1/2,1``, ``sd:d=3:kappa=1``, ``bd:d=2:kappa=1,1/2`` or ``b2:kappa=1,1``."""
    m = _SPEC.match(text.strip())
    if not m:
        raise InputError(f"malformed group spec {text!r}; expected e.g. a1:d=2:kappa=1/2,1")
    d = int(m.group("d")) if m.group("d") else None
    try:
        kappa = [Fraction(k) for k in m.group("kappa").split(",")] if m.group("kappa") else []
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad kappa list in {text!r}") from exc
    return builtin_group(m.group("name"), d, kappa)


# ---------------------------------------------------------------------------
# validation


def _is_orthogonal(E: Matrix) -> bool:
    n = len(E)
    return all(
        sum((E[k][i] * E[k][j] for k in range(n)), Fraction(0)) == (1 if i == j else 0)
        for i in range(n)
        for j in range(n)
    )


def _fixes_x0(E: Matrix) -> bool:
    n = len(E)
    return E[0][0] == 1 and all(E[0][j] == 0 and E[j][0] == 0 for j in range(1, n))


def _parallel(a: Root, b: Root) -> bool:
    i = next(k for k, c in enumerate(a.coords) if c)
    ratio = b.coords[i] / a.coords[i]
    return all(bc == ratio * ac for ac, bc in zip(a.coords, b.coords))


def validate_checks(g: ReflectionGroup) -> list[tuple[str, bool, str]]:
    """Structural checks as ``(name, passed, detail)`` triples."""
    checks: list[tuple[str, bool, str]] = []
    rootset = set(g.roots)

    bad = []
    for a in g.roots:
        line = {b for b in g.roots if _parallel(a, b)}
        if line != {a, -a}:
            bad.append(str(a))
    checks.append(("root-lines", not bad, "R meets span(alpha) in {alpha,-alpha}" if not bad else "violated at " + ", ".join(bad)))

    bad = []
    for a in g.roots:
        s = reflection_matrix(a)
        if {b.apply(s) for b in g.roots} != rootset:
            bad.append(str(a))
    checks.append(("reflection-stable", not bad, "sigma_alpha R = R" if not bad else "violated for " + ", ".join(bad)))

    bad = []
    for a in g.roots:
        for E in g.elements:
            if g.kappa(a.apply(E)) != g.kappa(a):
                bad.append(str(a))
                break
    checks.append(("kappa-invariant", not bad, "kappa constant on W-orbits" if not bad else "not invariant at " + ", ".join(bad)))

    ok = all(_fixes_x0(E) for E in g.elements)
    checks.append(("fixes-x0-axis", ok, "every element fixes coordinate 0"))
    ok = all(_is_orthogonal(E) for E in g.elements)
    checks.append(("orthogonal", ok, "E^T E = I for every element"))

    elems = set(g.elements)
    gens = {reflection_matrix(a) for a in g.roots}
    ok = identity_matrix(g.d + 1) in elems and all(matmul(s, E) in elems for s in gens for E in g.elements)
    checks.append(("closure", ok, f"|W| = {g.order}"))

    checks.append(
        ("classical-mode", True, "kappa == 0: classical reduction (test mode)" if g.is_classical else "gamma_kappa > 0")
    )
    return checks


def validate(g: ReflectionGroup) -> VerificationReport:
    report = VerificationReport(f"validate:{g.name}")
    for name, passed, detail in validate_checks(g):
        report.add(name, passed, "0" if passed else "violated", detail)
    return report
