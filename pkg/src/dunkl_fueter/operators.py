"""Dunkl operators and the derived Dirac, Cauchy-Riemann, Laplace and angular operators.

Reflections act on Clifford-valued polynomials through the argument only,
component by component.  Roots with zero multiplicity are dropped up front
since they contribute nothing to any operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .groups import ReflectionGroup, reflection_matrix, validate_checks
from .errors import InputError, IndexOutOfRange
from .poly import (
    CliffordPolynomial,
    Matrix,
    Terms,
    _divide_terms,
    _substitute_terms,
    leading_index,
    linear_form,
    signed_permutation,
)

Ambient = Literal["R^d", "R^d_1"]


@dataclass(frozen=True)
class _WeightedRoot:
    kappa: Fraction
    alpha: tuple[Fraction, ...]
    lead: int
    matrix: Matrix
    perm: object


class DunklContext:
    """Ambient data (group, weights, gamma_kappa, mu) shared by all operators."""

    def __init__(self, group: ReflectionGroup, *, check: bool = True):
        if check:
            failed = [name for name, ok, _ in validate_checks(group) if not ok]
            if failed:
                raise InputError(f"group {group.name} fails validation: {', '.join(failed)}")
        self.group = group
        self.dim = group.d
        self.gamma = group.gamma
        self.mu = group.mu
        self.roots: list[_WeightedRoot] = []
        for r in group.positive_roots:
            k = group.kappa(r)
            if k:
                M = reflection_matrix(r)
                self.roots.append(_WeightedRoot(k, r.coords, leading_index(r.coords), M, signed_permutation(M)))

    def __repr__(self) -> str:
        return f"DunklContext({self.group})"

    def _check(self, p: CliffordPolynomial) -> None:
        if p.dim != self.dim:
            raise InputError(f"polynomial lives in d={p.dim}, context in d={self.dim}")

    def reflect(self, r: _WeightedRoot, p: CliffordPolynomial) -> CliffordPolynomial:
        return p.map_components(lambda t: _substitute_terms(t, r.matrix, r.perm))

    def difference_quotient(self, r: _WeightedRoot, p: CliffordPolynomial) -> CliffordPolynomial:
        """(p - p o sigma_alpha) / <alpha, x>."""

        def component(t: Terms) -> Terms:
            diff = dict(t)
            for m, c in _substitute_terms(t, r.matrix, r.perm).items():
                v = diff.get(m, 0) - c
                if v:
                    diff[m] = v
                else:
                    diff.pop(m, None)
            return _divide_terms(diff, r.alpha, r.lead)

        return p.map_components(component)

    def quotients(self, p: CliffordPolynomial) -> list[tuple[_WeightedRoot, CliffordPolynomial]]:
        return [(r, self.difference_quotient(r, p)) for r in self.roots]

    def T(self, i: int, p: CliffordPolynomial, quotients=None) -> CliffordPolynomial:
        if not 0 <= i <= self.dim:
            raise IndexOutOfRange(f"Dunkl operator index {i} outside 0..{self.dim}")
        self._check(p)
        out = p.diff(i)
        if i == 0:
            return out
        if quotients is None:
            quotients = self.quotients(p)
        for r, q in quotients:
            w = r.kappa * r.alpha[i]
            if w:
                out = out + q.scale(w)
        return out

    def all_T(self, p: CliffordPolynomial) -> list[CliffordPolynomial]:
        """[T_1 p, ..., T_d p] sharing one set of difference quotients."""
        qs = self.quotients(p)
        return [self.T(i, p, qs) for i in range(1, self.dim + 1)]

    def dirac(self, p: CliffordPolynomial) -> CliffordPolynomial:
        out = CliffordPolynomial.zero(self.dim)
        for i, t in enumerate(self.all_T(p), start=1):
            out = out + t.left_blade(1 << (i - 1))
        return out

    def cauchy_riemann(self, p: CliffordPolynomial) -> CliffordPolynomial:
        return p.diff(0) + self.dirac(p)

    def laplacian(self, p: CliffordPolynomial, ambient: Ambient = "R^d_1") -> CliffordPolynomial:
        out = CliffordPolynomial.zero(self.dim)
        for i, t in enumerate(self.all_T(p), start=1):
            out = out + self.T(i, t)
        if ambient == "R^d_1":
            out = out + p.diff(0).diff(0)
        elif ambient != "R^d":
            raise InputError(f"ambient must be 'R^d' or 'R^d_1', got {ambient!r}")
        return out

    def laplacian_power(self, p: CliffordPolynomial, m: int, ambient: Ambient = "R^d_1") -> CliffordPolynomial:
        for _ in range(m):
            if p.is_zero():
                break
            p = self.laplacian(p, ambient)
        return p

    def euler(self, p: CliffordPolynomial) -> CliffordPolynomial:
        return p.map_components(lambda t: {m: c * sum(m[1:]) for m, c in t.items() if sum(m[1:])})

    def phi(self, p: CliffordPolynomial) -> CliffordPolynomial:
        d = self.dim
        out = CliffordPolynomial.zero(d)
        xs = [CliffordPolynomial.var(d, i) for i in range(d + 1)]
        derivs = [None] + [p.diff(i) for i in range(1, d + 1)]
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                rot = xs[i] * derivs[j] - xs[j] * derivs[i]
                out = out - rot.left_blade((1 << (i - 1)) | (1 << (j - 1)))
        return out

    def psi(self, p: CliffordPolynomial) -> CliffordPolynomial:
        d = self.dim
        out = CliffordPolynomial.zero(d)
        for r, q in self.quotients(p):
            a = r.alpha
            for i in range(1, d + 1):
                for j in range(i + 1, d + 1):
                    # weight x_i a_j - x_j a_i
                    w = [Fraction(0)] * (d + 1)
                    w[i] += a[j]
                    w[j] -= a[i]
                    if not any(w):
                        continue
                    term = linear_form(d, w) * q
                    out = out - term.left_blade((1 << (i - 1)) | (1 << (j - 1))).scale(r.kappa)
            out = out - self.reflect(r, p).scale(r.kappa)
        return out

    def gamma_op(self, p: CliffordPolynomial) -> CliffordPolynomial:
        return p.scale(self.gamma) + self.phi(p) + self.psi(p)


# ---------------------------------------------------------------------------
# functional API


def dunkl_derivative(ctx: DunklContext, i: int, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.T(i, p)


def dunkl_dirac(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.dirac(p)


def dunkl_cauchy_riemann(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.cauchy_riemann(p)


def dunkl_laplacian(ctx: DunklContext, p: CliffordPolynomial, ambient: Ambient = "R^d_1") -> CliffordPolynomial:
    return ctx.laplacian(p, ambient)


def phi_operator(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.phi(p)


def psi_operator(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.psi(p)


def gamma_operator(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    return ctx.gamma_op(p)


def euler_operator(p: CliffordPolynomial) -> CliffordPolynomial:
    return p.map_components(lambda t: {m: c * sum(m[1:]) for m, c in t.items() if sum(m[1:])})


def spherical_residual(ctx: DunklContext, p: CliffordPolynomial) -> CliffordPolynomial:
    """x D p + E p + Gamma p, which vanishes identically."""
    return CliffordPolynomial.xbar(ctx.dim) * ctx.dirac(p) + ctx.euler(p) + ctx.gamma_op(p)
