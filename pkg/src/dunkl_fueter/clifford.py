"""Exact arithmetic in the real Clifford algebra R_{0,d}.

Basis blades are stored as bit masks: bit ``i - 1`` set means the generator
``e_i`` is a factor.  Every generator squares to -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DimensionMismatch, InputError, NotParavector, ZeroVector

Rational = Union[int, Fraction]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


@lru_cache(maxsize=None)
def mask_product(a: int, b: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e_a e_b = sign * e_mask``."""
    swaps = 0
    s = a >> 1
    while s:
        swaps += popcount(s & b)
        s >>= 1
    # one extra sign per shared generator, since e_i^2 = -1
    swaps += popcount(a & b)
    return (-1 if swaps & 1 else 1), a ^ b


def grade_sign(mask: int) -> int:
    """Sign picked up by a blade under the conjugation anti-involution."""
    g = popcount(mask)
    return -1 if (g * (g + 1) // 2) & 1 else 1


def blade_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return popcount(mask), mask_indices(mask)


def blade_name(mask: int) -> str:
    return "e" + "".join(str(i) for i in mask_indices(mask))


@dataclass(frozen=True, order=False)
class Blade:
    """A basis blade ``e_A``; the empty index set is the scalar unit."""

    mask: int = 0

    @classmethod
    def of(cls, *indices: int) -> "Blade":
        idx = tuple(indices)
        if any(i < 1 for i in idx) or list(idx) != sorted(set(idx)):
            raise InputError(f"blade indices must be strictly increasing and >= 1: {idx}")
        return cls(indices_mask(idx))

    @property
    def indices(self) -> tuple[int, ...]:
        return mask_indices(self.mask)

    @property
    def grade(self) -> int:
        return popcount(self.mask)

    def __str__(self) -> str:
        return blade_name(self.mask) if self.mask else "1"


def blade_product(a: Blade, b: Blade) -> tuple[int, Blade]:
    sign, mask = mask_product(a.mask, b.mask)
    return sign, Blade(mask)


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Multivector:
    """Immutable element of R_{0,d} with exact rational coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[int, Rational] | None = None):
        if dim < 0:
            raise InputError("dimension must be non-negative")
        clean: dict[int, Fraction] = {}
        limit = 1 << dim
        for mask, c in (terms or {}).items():
            if isinstance(mask, Blade):
                mask = mask.mask
            if not 0 <= mask < limit:
                raise DimensionMismatch(f"blade {blade_name(mask)} outside R_(0,{dim})")
            if c:
                clean[mask] = Fraction(c)
        self.dim = dim
        self.terms = clean

    @classmethod
    def scalar(cls, dim: int, c: Rational) -> "Multivector":
        return cls(dim, {0: c})

    @classmethod
    def basis(cls, dim: int, *indices: int) -> "Multivector":
        return cls(dim, {Blade.of(*indices).mask: 1})

    @classmethod
    def vector(cls, coords: Iterable[Rational]) -> "Multivector":
        """Grade-1 element sum_i coords[i-1] e_i."""
        coords = list(coords)
        return cls(len(coords), {1 << i: c for i, c in enumerate(coords)})

    def _check(self, other: "Multivector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"R_(0,{self.dim}) vs R_(0,{other.dim})")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.dim, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __rsub__(self, other) -> "Multivector":
        return (-self) + other

    def __mul__(self, other) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return Multivector(self.dim, {m: c * other for m, c in self.terms.items()})
        return geometric_product(self, other)

    def __rmul__(self, other) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def grades(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def __repr__(self) -> str:
        return f"Multivector({self.dim}, {format_multivector(self)!r})"

    def __str__(self) -> str:
        return format_multivector(self)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    out: dict[int, Fraction] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            sign, m = mask_product(a, b)
            out[m] = out.get(m, 0) + sign * ca * cb
    return Multivector(x.dim, out)


def conjugate(x: Multivector) -> Multivector:
    return Multivector(x.dim, {m: grade_sign(m) * c for m, c in x.terms.items()})


def scalar_part(x: Multivector) -> Fraction:
    return x.terms.get(0, Fraction(0))


def invert_paravector(x: Multivector) -> Multivector:
    if any(g > 1 for g in x.grades()):
        raise NotParavector(f"{x} has components of grade > 1")
    norm2 = sum((c * c for c in x.terms.values()), Fraction(0))
    if norm2 == 0:
        raise ZeroVector("cannot invert the zero paravector")
    return conjugate(x) * (1 / norm2)


def format_multivector(x: Multivector) -> str:
    """Render as e.g. ``3/2 + 1*e1 - 2*e12``."""
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms, key=blade_sort_key):
        c = x.terms[m]
        body = format_rational(abs(c)) + ("*" + blade_name(m) if m else "")
        parts.append(("-" if c < 0 else "+", body))
    return join_signed(parts)


def join_signed(parts: list[tuple[str, str]]) -> str:
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
