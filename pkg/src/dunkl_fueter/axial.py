"""Two-dimensional seed calculus for axial functions.

An axial pair ``(a, b)`` of polynomials in ``(t, q)`` stands for

    F = a(x_0, |x|^2) + x * b(x_0, |x|^2),

that is ``u(t, r) = a(t, r^2)`` and ``v(t, r) = r * b(t, r^2)``.  Writing
``q = r^2`` removes every square root: ``r^{-1} d/dr`` becomes ``2 d/dq`` on
both halves, so the radial operator towers are exact polynomial maps.
Multiplication mirrors complex multiplication under ``x <-> i s``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .clifford import Rational
from .errors import InputError, InternalError
from .poly import ScalarPoly

T, Q = 0, 1


def _zero() -> ScalarPoly:
    return ScalarPoly(2)


def _t() -> ScalarPoly:
    return ScalarPoly.var(2, T)


def _q() -> ScalarPoly:
    return ScalarPoly.var(2, Q)


@dataclass(frozen=True, eq=False)
class AxialPair:
    a: ScalarPoly
    b: ScalarPoly

    def __post_init__(self):
        for p in (self.a, self.b):
            if p.nvars != 2:
                raise InputError("axial components are polynomials in (t, q)")

    @classmethod
    def of(cls, a: ScalarPoly | Rational = 0, b: ScalarPoly | Rational = 0) -> "AxialPair":
        conv = lambda p: p if isinstance(p, ScalarPoly) else ScalarPoly.constant(2, p)
        return cls(conv(a), conv(b))

    @classmethod
    def zero(cls) -> "AxialPair":
        return cls(_zero(), _zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AxialPair):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __add__(self, other: "AxialPair") -> "AxialPair":
        return AxialPair(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "AxialPair") -> "AxialPair":
        return AxialPair(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "AxialPair":
        return AxialPair(-self.a, -self.b)

    def scale(self, c: Rational) -> "AxialPair":
        return AxialPair(self.a * c, self.b * c)

    def __mul__(self, other):
        if isinstance(other, AxialPair):
            return axial_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def map(self, fn) -> "AxialPair":
        return AxialPair(fn(self.a), fn(self.b))

    def __str__(self) -> str:
        from .poly import format_scalar_poly

        names = ("t", "q")
        return f"({format_scalar_poly(self.a, names)}, {format_scalar_poly(self.b, names)})"

    __repr__ = __str__


@dataclass(frozen=True, order=True)
class ComplexSeed:
    """The seed zbar^j z^k, which solves dbar Delta^m f = 0 whenever j <= m."""

    j: int
    k: int

    def __post_init__(self):
        if self.j < 0 or self.k < 0:
            raise InputError("seed exponents must be non-negative")

    @property
    def degree(self) -> int:
        return self.j + self.k

    def __str__(self) -> str:
        return f"zbar^{self.j}*z^{self.k}"


_SEED = re.compile(r"^\s*(?:zbar\^(\d+)\s*\*\s*z\^(\d+)|z\^(\d+)|zbar\^(\d+))\s*$")


def parse_seed(text: str) -> ComplexSeed:
    m = _SEED.match(text)
    if not m:
        raise InputError(f"malformed seed {text!r}; expected zbar^j*z^k")
    j, k, k_only, j_only = m.groups()
    if k_only is not None:
        return ComplexSeed(0, int(k_only))
    if j_only is not None:
        return ComplexSeed(int(j_only), 0)
    return ComplexSeed(int(j), int(k))


# ---------------------------------------------------------------------------


def _complex_power(j: int, k: int) -> tuple[dict[tuple[int, int], int], dict[tuple[int, int], int]]:
    """Real and imaginary parts of (t - i s)^j (t + i s)^k as {(deg_t, deg_s): coeff}."""
    re_part = {(0, 0): 1}
    im_part: dict[tuple[int, int], int] = {}

    def times(re_p, im_p, sign):
        # multiply by t + sign * i s
        nre: dict[tuple[int, int], int] = {}
        nim: dict[tuple[int, int], int] = {}
        for (a, b), c in re_p.items():
            nre[(a + 1, b)] = nre.get((a + 1, b), 0) + c
            nim[(a, b + 1)] = nim.get((a, b + 1), 0) + sign * c
        for (a, b), c in im_p.items():
            nim[(a + 1, b)] = nim.get((a + 1, b), 0) + c
            nre[(a, b + 1)] = nre.get((a, b + 1), 0) - sign * c
        return nre, nim

    for _ in range(j):
        re_part, im_part = times(re_part, im_part, -1)
    for _ in range(k):
        re_part, im_part = times(re_part, im_part, 1)
    return re_part, im_part


def seed_to_axial(seed: ComplexSeed) -> AxialPair:
    re_part, im_part = _complex_power(seed.j, seed.k)
    a: dict[tuple[int, int], int] = {}
    b: dict[tuple[int, int], int] = {}
    for (dt, ds), c in re_part.items():
        if not c:
            continue
        if ds % 2:
            raise InternalError(f"real part of {seed} is not even in s")
        a[(dt, ds // 2)] = c
    for (dt, ds), c in im_part.items():
        if not c:
            continue
        if ds % 2 == 0:
            raise InternalError(f"imaginary part of {seed} is not odd in s")
        b[(dt, ds // 2)] = c
    return AxialPair(ScalarPoly(2, a), ScalarPoly(2, b))


def axial_mul(x: AxialPair, y: AxialPair) -> AxialPair:
    q = _q()
    return AxialPair(x.a * y.a - q * x.b * y.b, x.a * y.b + x.b * y.a)


def dbar(x: AxialPair) -> AxialPair:
    """Axial form of (1/2)(d_t + i d_s)."""
    q = _q()
    half = Fraction(1, 2)
    a = x.a.diff(T) - x.b - q * x.b.diff(Q) * 2
    b = x.b.diff(T) + x.a.diff(Q) * 2
    return AxialPair(a * half, b * half)


def delta_z(x: AxialPair) -> AxialPair:
    """Axial form of d_t^2 + d_s^2."""
    q = _q()
    a = x.a.diff(T).diff(T) + x.a.diff(Q) * 2 + q * x.a.diff(Q).diff(Q) * 4
    b = x.b.diff(T).diff(T) + x.b.diff(Q) * 6 + q * x.b.diff(Q).diff(Q) * 4
    return AxialPair(a, b)


def _radial_tower(m: int, p: ScalarPoly) -> ScalarPoly:
    if m < 0:
        raise InputError("tower order must be >= 0")
    for _ in range(m):
        p = p.diff(Q) * 2
    return p


def d_lower(m: int, a: ScalarPoly) -> ScalarPoly:
    """(r^{-1} d/dr)^m applied to a(t, r^2), expressed again in (t, q)."""
    return _radial_tower(m, a)


def d_upper(m: int, b: ScalarPoly) -> ScalarPoly:
    """b' with D^r(m){r b(t, r^2)} = r b'(t, r^2); D^r(m) f = d/dr(D^r(m-1) f / r)."""
    return _radial_tower(m, b)


def d_coeff(n: int, mu: Rational, j: int) -> Fraction:
    """(2n+mu-1)(2n+mu-3)...(2n+mu-(2j-1)); 1 for j = 0."""
    out = Fraction(1)
    for i in range(1, j + 1):
        out *= 2 * n + Fraction(mu) - (2 * i - 1)
    return out


def lemma32_closed_form(m: int, n: int, mu: Rational, x: AxialPair) -> AxialPair:
    """Closed-form axial pair of Delta^m((a + x b) P_n) for P_n in ker D, degree n."""
    if m < 0:
        raise InputError("m must be >= 0")
    powers = [x]
    for _ in range(m):
        powers.append(delta_z(powers[-1]))
    out = AxialPair.zero()
    for j in range(m + 1):
        c = d_coeff(n, mu, j) * comb(m, j)
        if not c:
            continue
        src = powers[m - j]
        out = out + AxialPair(d_lower(j, src.a), d_upper(j, src.b)).scale(c)
    return out


def vekua_residuals(x: AxialPair, c: Rational) -> tuple[ScalarPoly, ScalarPoly]:
    """Residuals of dA/dx0 - dB/dr = (c/r) B and dB/dx0 + dA/dr = 0 in (t, q) form."""
    q = _q()
    r1 = x.a.diff(T) - x.b * (Fraction(c) + 1) - q * x.b.diff(Q) * 2
    r2 = x.b.diff(T) + x.a.diff(Q) * 2
    return r1, r2


def vekua_check(x: AxialPair, c: Rational) -> tuple[bool, tuple[ScalarPoly, ScalarPoly]]:
    r1, r2 = vekua_residuals(x, c)
    return (not r1 and not r2), (r1, r2)


def dbar_power(x: AxialPair, k: int) -> AxialPair:
    for _ in range(k):
        x = dbar(x)
    return x


def polyanalytic_order_check(k: int, x: AxialPair) -> bool:
    """True iff dbar^k annihilates x."""
    if k < 1:
        raise InputError("polyanalytic order must be >= 1")
    return dbar_power(x, k).is_zero()


def seed_property_holds(seed: ComplexSeed, m: int) -> bool:
    """Whether dbar Delta_z^m annihilates the seed (computed, not predicted)."""
    x = seed_to_axial(seed)
    for _ in range(m):
        x = delta_z(x)
    return dbar(x).is_zero()


def xbar_power_pair(p: int) -> AxialPair:
    """Axial pair of x^p: x^{2l} = (-q)^l and x^{2l+1} = x (-q)^l."""
    mq = -_q()
    if p % 2 == 0:
        return AxialPair(mq ** (p // 2), _zero())
    return AxialPair(_zero(), mq ** (p // 2))


def t_power_pair(p: int) -> AxialPair:
    return AxialPair(_t() ** p, _zero())
