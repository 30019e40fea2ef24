"""Exact composition algebras R, C, H, O built by Cayley-Dickson doubling.

An element is a vector of rationals of length 2**level; level 0..3 gives the
reals, complexes, quaternions and octonions.  Multiplication follows the
doubling rule (a,b)(c,d) = (ac - conj(d)b, da + b conj(c)) applied recursively
down to rational multiplication.  Everything is exact and immutable.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

_ZERO = Fraction(0)
_ONE = Fraction(1)


class TagMismatchError(ValueError):
    """Elements of different composition algebras were combined."""


class AlgebraTag(enum.Enum):
    """One of the four division algebras, keyed by doubling level."""

    R = 0
    C = 1
    H = 2
    O = 3

    @property
    def level(self) -> int:
        return self.value

    @property
    def dim(self) -> int:
        return 1 << self.value

    @classmethod
    def from_letter(cls, letter: str) -> "AlgebraTag":
        try:
            return cls[letter.upper()]
        except KeyError:
            raise ValueError(f"unknown algebra {letter!r}; expected R, C, H or O") from None

    @classmethod
    def from_dim(cls, dim: int) -> "AlgebraTag":
        for tag in cls:
            if tag.dim == dim:
                return tag
        raise ValueError(f"no composition algebra of dimension {dim}")


TAGS = tuple(AlgebraTag)


def _conj_vec(a: tuple) -> tuple:
    return (a[0],) + tuple(-c for c in a[1:])


def _cd_mul_vec(a: tuple, b: tuple) -> tuple:
    """Coefficient-vector product under the doubling rule, recursively."""
    n = len(a)
    if n == 1:
        return (a[0] * b[0],)
    h = n // 2
    a1, a2 = a[:h], a[h:]
    b1, b2 = b[:h], b[h:]
    za1, za2 = not any(a1), not any(a2)
    zb1, zb2 = not any(b1), not any(b2)
    zero = (_ZERO,) * h
    # first half: a1*b1 - conj(b2)*a2
    if za1 or zb1:
        first = zero
    else:
        first = _cd_mul_vec(a1, b1)
    if not (zb2 or za2):
        t = _cd_mul_vec(_conj_vec(b2), a2)
        first = tuple(x - y for x, y in zip(first, t))
    # second half: b2*a1 + a2*conj(b1)
    if zb2 or za1:
        second = zero
    else:
        second = _cd_mul_vec(b2, a1)
    if not (za2 or zb1):
        t = _cd_mul_vec(a2, _conj_vec(b1))
        second = tuple(x + y for x, y in zip(second, t))
    return first + second


@lru_cache(maxsize=None)
def _unit_products(level: int) -> tuple:
    """Table of basis-unit products: entry [i][j] is (sign, index)."""
    dim = 1 << level
    table = []
    for i in range(dim):
        ei = tuple(_ONE if t == i else _ZERO for t in range(dim))
        row = []
        for j in range(dim):
            ej = tuple(_ONE if t == j else _ZERO for t in range(dim))
            prod = _cd_mul_vec(ei, ej)
            nz = [(k, c) for k, c in enumerate(prod) if c]
            assert len(nz) == 1 and abs(nz[0][1]) == 1
            row.append((1 if nz[0][1] > 0 else -1, nz[0][0]))
        table.append(tuple(row))
    return tuple(table)


def unit_table(level: int) -> tuple:
    """Public multiplication table of basis units for the given level."""
    if level not in (0, 1, 2, 3):
        raise ValueError(f"level must be 0..3, got {level}")
    return _unit_products(level)


class AlgElem:
    """Immutable element of a composition algebra."""

    __slots__ = ("tag", "coeffs")

    def __init__(self, tag: AlgebraTag, coeffs: Iterable):
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(coeffs) != tag.dim:
            raise ValueError(f"{tag.name} element needs {tag.dim} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("AlgElem is immutable")

    @classmethod
    def _raw(cls, tag: AlgebraTag, coeffs: tuple) -> "AlgElem":
        self = object.__new__(cls)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "AlgElem":
        return cls._raw(tag, (_ZERO,) * tag.dim)

    @classmethod
    def one(cls, tag: AlgebraTag) -> "AlgElem":
        return cls.real(tag, _ONE)

    @classmethod
    def real(cls, tag: AlgebraTag, value) -> "AlgElem":
        value = value if isinstance(value, Fraction) else Fraction(value)
        return cls._raw(tag, (value,) + (_ZERO,) * (tag.dim - 1))

    @classmethod
    def unit(cls, tag: AlgebraTag, index: int) -> "AlgElem":
        if not 0 <= index < tag.dim:
            raise ValueError(f"unit index {index} out of range for {tag.name}")
        return cls._raw(tag, tuple(_ONE if t == index else _ZERO for t in range(tag.dim)))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_real(self) -> bool:
        return not any(self.coeffs[1:])

    def re(self) -> Fraction:
        return self.coeffs[0]

    def im(self) -> "AlgElem":
        return AlgElem._raw(self.tag, (_ZERO,) + self.coeffs[1:])

    def conj(self) -> "AlgElem":
        return AlgElem._raw(self.tag, (self.coeffs[0],) + tuple(-c for c in self.coeffs[1:]))

    def norm(self) -> Fraction:
        return sum((c * c for c in self.coeffs), _ZERO)

    def embed(self, tag: AlgebraTag) -> "AlgElem":
        """Reinterpret in a containing algebra (pad with zeros)."""
        if tag.dim < self.tag.dim:
            raise ValueError(f"cannot embed {self.tag.name} into smaller {tag.name}")
        return AlgElem._raw(tag, self.coeffs + (_ZERO,) * (tag.dim - self.tag.dim))

    def _check(self, other: "AlgElem"):
        if not isinstance(other, AlgElem):
            raise TypeError(f"expected AlgElem, got {type(other).__name__}")
        if other.tag is not self.tag:
            raise TagMismatchError(f"cannot combine {self.tag.name} with {other.tag.name}")

    def __add__(self, other):
        self._check(other)
        return AlgElem._raw(self.tag, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgElem._raw(self.tag, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgElem._raw(self.tag, tuple(-c for c in self.coeffs))

    def scale(self, factor) -> "AlgElem":
        factor = factor if isinstance(factor, Fraction) else Fraction(factor)
        if not factor:
            return AlgElem.zero(self.tag)
        return AlgElem._raw(self.tag, tuple(factor * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return cd_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, AlgElem)
            and other.tag is self.tag
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.tag, self.coeffs))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"e{i}")
            elif c == -1:
                terms.append(f"-e{i}")
            else:
                terms.append(f"{c}*e{i}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"AlgElem({self.tag.name}, {self})"


def _lift(coeffs: tuple):
    """Common denominator and integer numerators for a coefficient vector."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def cd_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    """Cayley-Dickson product of two elements of the same algebra.

    Computed over integers on a common denominator; one normalization per
    output coefficient instead of one per partial product.
    """
    x._check(y)
    tag = x.tag
    if x.is_zero or y.is_zero:
        return AlgElem.zero(tag)
    table = _unit_products(tag.level)
    dx, nx = _lift(x.coeffs)
    dy, ny = _lift(y.coeffs)
    acc = [0] * tag.dim
    for i, xc in enumerate(nx):
        if not xc:
            continue
        row = table[i]
        for j, yc in enumerate(ny):
            if not yc:
                continue
            sign, k = row[j]
            acc[k] = acc[k] + xc * yc if sign > 0 else acc[k] - xc * yc
    d = dx * dy
    return AlgElem._raw(tag, tuple(Fraction(a, d) for a in acc))


def conj(x: AlgElem) -> AlgElem:
    return x.conj()


def re(x: AlgElem) -> Fraction:
    return x.re()


def im(x: AlgElem) -> AlgElem:
    return x.im()


def norm(x: AlgElem) -> Fraction:
    return x.norm()


def commutator(x: AlgElem, y: AlgElem) -> AlgElem:
    """xy - yx."""
    x._check(y)
    return cd_mul(x, y) - cd_mul(y, x)


def associator(x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
    """(xy)z - x(yz); zero on all associative levels."""
    x._check(y)
    x._check(z)
    return cd_mul(cd_mul(x, y), z) - cd_mul(x, cd_mul(y, z))
