"""Hermitian 3x3 matrices over a composition algebra (the Albert algebra for O).

Provides the Jordan product (X o Y = (XY+YX)/2), the Freudenthal product
(the trace-adjusted cross product), trace, the Freudenthal determinant
det X = tr((X*X) o X)/3, coordinates in a fixed basis, the trace bilinear
form, and the <X,Y> operator feeding the conformal construction.

Matrix products over a nonassociative algebra are taken entrywise exactly as
written (left entry times right entry, no reassociation).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import AlgebraTag, AlgElem, TagMismatchError
from .algebra import _unit_products
from .linalg import SMat

_ZERO = Fraction(0)
_ONE = Fraction(1)
_THIRD = Fraction(1, 3)
_HALF = Fraction(1, 2)

# column-major list of upper-triangle positions, fixed for all coordinates
OFF_DIAG_POSITIONS = ((1, 2), (0, 2), (0, 1))


def _check_tags(a, b):
    if a.tag is not b.tag:
        raise TagMismatchError(f"cannot combine {a.tag.name} with {b.tag.name}")


def _lift_mat(a: tuple):
    """One common denominator for a whole 3x3 matrix, entries as int vectors."""
    den = 1
    for row in a:
        for e in row:
            for c in e.coeffs:
                d = c.denominator
                if d != 1:
                    den = den * d // math.gcd(den, d)
    lifted = tuple(
        tuple(
            None
            if e.is_zero
            else [c.numerator * (den // c.denominator) for c in e.coeffs]
            for e in row
        )
        for row in a
    )
    return den, lifted


def _mat_mul(a: tuple, b: tuple, tag: AlgebraTag) -> tuple:
    """3x3 product with entry products exactly as written (no reassociation).

    Runs over integers on common denominators; each output coefficient is
    normalized once.
    """
    dim = tag.dim
    table = _unit_products(tag.level)
    da, na = _lift_mat(a)
    db, nb = _lift_mat(b)
    d = da * db
    zero = AlgElem.zero(tag)
    out = []
    for i in range(3):
        arow = na[i]
        row = []
        for j in range(3):
            acc = [0] * dim
            hit = False
            for k in range(3):
                x = arow[k]
                y = nb[k][j]
                if x is None or y is None:
                    continue
                hit = True
                for s, xc in enumerate(x):
                    if not xc:
                        continue
                    trow = table[s]
                    for t, yc in enumerate(y):
                        if not yc:
                            continue
                        sign, m = trow[t]
                        acc[m] = acc[m] + xc * yc if sign > 0 else acc[m] - xc * yc
            if hit and any(acc):
                row.append(AlgElem._raw(tag, tuple(Fraction(v, d) for v in acc)))
            else:
                row.append(zero)
        out.append(tuple(row))
    return tuple(out)


def _mat_add(a: tuple, b: tuple) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a: tuple, c: Fraction) -> tuple:
    return tuple(tuple(x.scale(c) for x in ra) for ra in a)


def _mat_dagger(a: tuple) -> tuple:
    return tuple(tuple(a[j][i].conj() for j in range(3)) for i in range(3))


class OctMat3:
    """General 3x3 matrix over a composition algebra (no symmetry constraint)."""

    __slots__ = ("tag", "entries")

    def __init__(self, tag: AlgebraTag, entries: Iterable):
        entries = tuple(tuple(e for e in row) for row in entries)
        if len(entries) != 3 or any(len(r) != 3 for r in entries):
            raise ValueError("expected a 3x3 array of entries")
        for row in entries:
            for e in row:
                if not isinstance(e, AlgElem) or e.tag is not tag:
                    raise TagMismatchError("entry tag does not match matrix tag")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("OctMat3 is immutable")

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "OctMat3":
        z = AlgElem.zero(tag)
        return cls(tag, ((z, z, z),) * 3)

    @classmethod
    def identity(cls, tag: AlgebraTag) -> "OctMat3":
        z, o = AlgElem.zero(tag), AlgElem.one(tag)
        return cls(tag, ((o, z, z), (z, o, z), (z, z, o)))

    def dagger(self) -> "OctMat3":
        return OctMat3(self.tag, _mat_dagger(self.entries))

    def trace_elem(self) -> AlgElem:
        e = self.entries
        return e[0][0] + e[1][1] + e[2][2]

    @property
    def is_tracefree(self) -> bool:
        return self.trace_elem().is_zero

    @property
    def is_hermitian(self) -> bool:
        return self.entries == _mat_dagger(self.entries)

    @property
    def is_antihermitian(self) -> bool:
        return self.entries == _mat_scale(_mat_dagger(self.entries), Fraction(-1))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def add(self, other: "OctMat3") -> "OctMat3":
        _check_tags(self, other)
        return OctMat3(self.tag, _mat_add(self.entries, other.entries))

    def scale(self, c) -> "OctMat3":
        return OctMat3(self.tag, _mat_scale(self.entries, Fraction(c)))

    def matmul(self, other: "OctMat3") -> "OctMat3":
        _check_tags(self, other)
        return OctMat3(self.tag, _mat_mul(self.entries, other.entries, self.tag))

    def __eq__(self, other):
        return (
            isinstance(other, OctMat3)
            and other.tag is self.tag
            and other.entries == self.entries
        )

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"OctMat3({self.tag.name}: {rows})"


class HermMat:
    """Hermitian 3x3 matrix: entries[j][i] = conj(entries[i][j]), real diagonal."""

    __slots__ = ("tag", "entries")

    def __init__(self, tag: AlgebraTag, entries: Iterable):
        entries = tuple(tuple(e for e in row) for row in entries)
        if len(entries) != 3 or any(len(r) != 3 for r in entries):
            raise ValueError("expected a 3x3 array of entries")
        for i in range(3):
            for j in range(3):
                e = entries[i][j]
                if not isinstance(e, AlgElem) or e.tag is not tag:
                    raise TagMismatchError("entry tag does not match matrix tag")
                if i == j and not e.is_real:
                    raise ValueError(f"diagonal entry ({i},{i}) must be real, got {e}")
                if i < j and entries[j][i] != e.conj():
                    raise ValueError(f"entries ({i},{j})/({j},{i}) are not conjugate")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("HermMat is immutable")

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "HermMat":
        z = AlgElem.zero(tag)
        return cls(tag, ((z, z, z),) * 3)

    @classmethod
    def identity(cls, tag: AlgebraTag) -> "HermMat":
        return cls.diag(tag, _ONE, _ONE, _ONE)

    @classmethod
    def diag(cls, tag: AlgebraTag, a, b, c) -> "HermMat":
        z = AlgElem.zero(tag)
        mk = lambda v: AlgElem.real(tag, v)
        return cls(tag, ((mk(a), z, z), (z, mk(b), z), (z, z, mk(c))))

    @classmethod
    def from_upper(cls, tag: AlgebraTag, d0, d1, d2, e12, e02, e01) -> "HermMat":
        """Build from real diagonal values and the three upper entries."""
        rows = [[AlgElem.zero(tag)] * 3 for _ in range(3)]
        for i, v in enumerate((d0, d1, d2)):
            rows[i][i] = AlgElem.real(tag, v)
        for (i, j), e in zip(((1, 2), (0, 2), (0, 1)), (e12, e02, e01)):
            rows[i][j] = e
            rows[j][i] = e.conj()
        return cls(tag, tuple(tuple(r) for r in rows))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def as_general(self) -> OctMat3:
        return OctMat3(self.tag, self.entries)

    def add(self, other: "HermMat") -> "HermMat":
        _check_tags(self, other)
        return HermMat(self.tag, _mat_add(self.entries, other.entries))

    def sub(self, other: "HermMat") -> "HermMat":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, c) -> "HermMat":
        return HermMat(self.tag, _mat_scale(self.entries, Fraction(c)))

    def __eq__(self, other):
        return (
            isinstance(other, HermMat)
            and other.tag is self.tag
            and other.entries == self.entries
        )

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"HermMat({self.tag.name}: {rows})"


def jordan_product(x: HermMat, y: HermMat) -> HermMat:
    """(XY + YX)/2; the constructor asserts the result is Hermitian."""
    _check_tags(x, y)
    xy = _mat_mul(x.entries, y.entries, x.tag)
    yx = _mat_mul(y.entries, x.entries, x.tag)
    return HermMat(x.tag, _mat_scale(_mat_add(xy, yx), _HALF))


def trace(x: HermMat) -> Fraction:
    e = x.entries
    return e[0][0].re() + e[1][1].re() + e[2][2].re()


def _re_prod(x: AlgElem, y: AlgElem) -> Fraction:
    """Real part of xy: x0 y0 - x1 y1 - ... (imaginary units square to -1)."""
    cs = x.coeffs
    ds = y.coeffs
    s = cs[0] * ds[0]
    for a, b in zip(cs[1:], ds[1:]):
        if a and b:
            s -= a * b
    return s


def trace_pair(x: HermMat, y: HermMat) -> Fraction:
    """tr(X o Y) evaluated directly as sum of Re(X_ik Y_ki)."""
    _check_tags(x, y)
    xe, ye = x.entries, y.entries
    s = _ZERO
    for i in range(3):
        for k in range(3):
            a = xe[i][k]
            if not a.is_zero:
                b = ye[k][i]
                if not b.is_zero:
                    s += _re_prod(a, b)
    return s


def freudenthal_product(x: HermMat, y: HermMat) -> HermMat:
    """X o Y - ((trX)Y + (trY)X)/2 + ((trX)(trY) - tr(X o Y)) I / 2."""
    _check_tags(x, y)
    xy = jordan_product(x, y)
    tx, ty = trace(x), trace(y)
    out = xy.sub(y.scale(tx * _HALF)).sub(x.scale(ty * _HALF))
    c = (tx * ty - trace(xy)) * _HALF
    if c:
        out = out.add(HermMat.diag(x.tag, c, c, c))
    return out


def det(x: HermMat) -> Fraction:
    """Freudenthal determinant tr((X*X) o X)/3."""
    return trace_pair(freudenthal_product(x, x), x) * _THIRD


def herm_dim(tag: AlgebraTag) -> int:
    return 3 + 3 * tag.dim


@lru_cache(maxsize=None)
def herm_basis(tag: AlgebraTag) -> tuple:
    """Fixed basis: E11, E22, E33, then positions (2,3),(1,3),(1,2) x units."""
    out = [HermMat.diag(tag, *(1 if d == i else 0 for d in range(3))) for i in range(3)]
    z = AlgElem.zero(tag)
    for (i, j) in OFF_DIAG_POSITIONS:
        for u in range(tag.dim):
            e = AlgElem.unit(tag, u)
            rows = [[z] * 3 for _ in range(3)]
            rows[i][j] = e
            rows[j][i] = e.conj()
            out.append(HermMat(tag, tuple(tuple(r) for r in rows)))
    return tuple(out)


def herm_to_vec(x: HermMat) -> tuple:
    """Coordinates in the herm_basis order."""
    e = x.entries
    out = [e[0][0].re(), e[1][1].re(), e[2][2].re()]
    for (i, j) in OFF_DIAG_POSITIONS:
        out.extend(e[i][j].coeffs)
    return tuple(out)


def vec_to_herm(tag: AlgebraTag, vec) -> HermMat:
    vec = tuple(vec)
    assert len(vec) == herm_dim(tag)
    k = tag.dim
    offs = [AlgElem(tag, vec[3 + n * k : 3 + (n + 1) * k]) for n in range(3)]
    return HermMat.from_upper(tag, vec[0], vec[1], vec[2], *offs)


@lru_cache(maxsize=None)
def trace_form(tag: AlgebraTag) -> tuple:
    """Diagonal of the Gram matrix tr(b_i o b_j) in the fixed basis."""
    return (_ONE,) * 3 + (Fraction(2),) * (3 * tag.dim)


def apply_matrix_action(phi: OctMat3, x: HermMat) -> HermMat:
    """phi X + X phi^dagger; lands back in the Hermitian matrices."""
    if phi.tag is not x.tag:
        raise TagMismatchError(f"cannot combine {phi.tag.name} with {x.tag.name}")
    a = _mat_mul(phi.entries, x.entries, x.tag)
    b = _mat_mul(x.entries, _mat_dagger(phi.entries), x.tag)
    return HermMat(x.tag, _mat_add(a, b))


def matrixize_matrix_action(phi: OctMat3) -> SMat:
    """Matrix of X -> phi X + X phi^dagger in the fixed coordinates."""
    tag = phi.tag
    n = herm_dim(tag)
    rows: dict = {}
    for col, b in enumerate(herm_basis(tag)):
        img = herm_to_vec(apply_matrix_action(phi, b))
        for r, v in enumerate(img):
            if v:
                rows.setdefault(r, {})[col] = v
    return SMat(n, rows)


def dual_act(tag: AlgebraTag, act: SMat) -> SMat:
    """The dual operator: tr(phi(X) o Y) = -tr(X o phi'(Y)) fixes phi' = -G^-1 act^T G."""
    g = trace_form(tag)
    rows: dict = {}
    for i, r in act.rows.items():
        for j, v in r.items():
            rows.setdefault(j, {})[i] = -v * g[i] / g[j]
    return SMat(act.n, rows)


def angle_operator(x: HermMat, y: HermMat) -> SMat:
    """Matrix of Z -> Y o (X o Z) - X o (Y o Z) - (X o Y) o Z + tr(X o Y) Z / 3."""
    _check_tags(x, y)
    tag = x.tag
    xy = jordan_product(x, y)
    t = trace(xy) * _THIRD
    n = herm_dim(tag)
    rows: dict = {}
    for col, b in enumerate(herm_basis(tag)):
        w = jordan_product(y, jordan_product(x, b)).sub(
            jordan_product(x, jordan_product(y, b))
        ).sub(jordan_product(xy, b))
        if t:
            w = w.add(b.scale(t))
        for r, v in enumerate(herm_to_vec(w)):
            if v:
                rows.setdefault(r, {})[col] = v
    return SMat(n, rows)
