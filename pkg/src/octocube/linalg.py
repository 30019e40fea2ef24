"""Exact rational linear algebra on sparse data.

Vectors are dicts index -> nonzero Fraction; matrices are dicts of rows.
The echelon basis keeps reduced rows with unit pivots so membership tests
and coordinate extraction stay cheap and deterministic (pivot = smallest
nonzero index, insertion order fixed by the caller).
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from typing import Iterable, Optional

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SMat:
    """Sparse square matrix over the rationals; treated as immutable."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Optional[dict] = None):
        self.n = n
        self.rows = rows if rows is not None else {}

    @classmethod
    def zero(cls, n: int) -> "SMat":
        return cls(n)

    @classmethod
    def identity(cls, n: int, scale: Fraction = _ONE) -> "SMat":
        if not scale:
            return cls(n)
        return cls(n, {i: {i: scale} for i in range(n)})

    @classmethod
    def from_entries(cls, n: int, entries: Iterable) -> "SMat":
        rows: dict = {}
        for i, j, v in entries:
            if v:
                rows.setdefault(i, {})[j] = v
        return cls(n, rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, _ZERO)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    @property
    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        return isinstance(other, SMat) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        raise TypeError("SMat is not hashable")

    def add(self, other: "SMat") -> "SMat":
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tr = out.setdefault(i, {})
            for j, v in r.items():
                nv = tr.get(j, _ZERO) + v
                if nv:
                    tr[j] = nv
                else:
                    tr.pop(j, None)
            if not tr:
                del out[i]
        return SMat(self.n, out)

    def sub(self, other: "SMat") -> "SMat":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, c: Fraction) -> "SMat":
        if not c:
            return SMat(self.n)
        return SMat(self.n, {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def mul(self, other: "SMat") -> "SMat":
        assert self.n == other.n, "shape mismatch"
        out: dict = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc: dict = {}
            for k, v in r.items():
                br = orows.get(k)
                if br is None:
                    continue
                for j, w in br.items():
                    nv = acc.get(j, _ZERO) + v * w
                    if nv:
                        acc[j] = nv
                    else:
                        del acc[j]
            if acc:
                out[i] = acc
        return SMat(self.n, out)

    def commutator(self, other: "SMat") -> "SMat":
        return self.mul(other).sub(other.mul(self))

    def transpose(self) -> "SMat":
        out: dict = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                out.setdefault(j, {})[i] = v
        return SMat(self.n, out)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        for i, r in self.rows.items():
            s = _ZERO
            for j, v in r.items():
                c = vec.get(j)
                if c is not None:
                    s += v * c
            if s:
                out[i] = s
        return out

    def trace(self) -> Fraction:
        return sum((r[i] for i, r in self.rows.items() if i in r), _ZERO)

    def to_vec(self) -> dict:
        """Flatten row-major to a sparse vector."""
        n = self.n
        return {i * n + j: v for i, r in self.rows.items() for j, v in r.items()}

    @classmethod
    def from_vec(cls, n: int, vec: dict) -> "SMat":
        rows: dict = {}
        for idx, v in vec.items():
            rows.setdefault(idx // n, {})[idx % n] = v
        return cls(n, rows)


def vec_sub_scaled(v: dict, c: Fraction, w: dict) -> None:
    """In place: v -= c*w."""
    for j, val in w.items():
        nv = v.get(j, _ZERO) - c * val
        if nv:
            v[j] = nv
        else:
            v.pop(j, None)


class EchelonBasis:
    """Reduced echelon span of sparse vectors (pivot = least index, pivot value 1).

    With augment=True every row also carries its expression over the vectors
    accepted by add(), so coordinates of span members can be recovered.
    """

    def __init__(self, augment: bool = False):
        self.rows: list = []  # sorted list of (pivot, rowdict)
        self.aug: list = [] if augment else None
        self._augment = augment
        self.n_added = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _residue(self, vec: dict, want_combo: bool):
        v = dict(vec)
        combo = {} if want_combo else None
        for r, (p, row) in enumerate(self.rows):
            c = v.get(p)
            if c:
                vec_sub_scaled(v, c, row)
                if want_combo:
                    combo[r] = c
        return v, combo

    def reduce(self, vec: dict) -> dict:
        return self._residue(vec, False)[0]

    def in_span(self, vec: dict) -> bool:
        return not self._residue(vec, False)[0]

    def coords(self, vec: dict) -> Optional[dict]:
        """Coordinates over the added (independent) vectors, or None."""
        if not self._augment:
            raise ValueError("basis was built without augmentation")
        v, combo = self._residue(vec, True)
        if v:
            return None
        out: dict = {}
        for r, c in combo.items():
            for k, a in self.aug[r].items():
                nv = out.get(k, _ZERO) + c * a
                if nv:
                    out[k] = nv
                else:
                    del out[k]
        return out

    def add(self, vec: dict) -> bool:
        """Adjoin a vector; returns True when it enlarged the span."""
        v, combo = self._residue(vec, self._augment)
        if not v:
            return False
        p = min(v)
        inv = _ONE / v[p]
        row = {j: inv * val for j, val in v.items()}
        if self._augment:
            a = {self.n_added: inv}
            for r, c in combo.items():
                for k, val in self.aug[r].items():
                    nv = a.get(k, _ZERO) - inv * c * val
                    if nv:
                        a[k] = nv
                    else:
                        del a[k]
        # back-eliminate the new pivot from the existing rows to stay reduced
        for r, (q, other) in enumerate(self.rows):
            c = other.get(p)
            if c:
                vec_sub_scaled(other, c, row)
                if self._augment:
                    for k, val in a.items():
                        nv = self.aug[r].get(k, _ZERO) - c * val
                        if nv:
                            self.aug[r][k] = nv
                        else:
                            self.aug[r].pop(k, None)
        pos = bisect.bisect_left([q for q, _ in self.rows], p)
        self.rows.insert(pos, (p, row))
        if self._augment:
            self.aug.insert(pos, a)
        self.n_added += 1
        return True


def solve_dense(matrix: list, rhs: list) -> Optional[list]:
    """Solve a small dense square rational system; None if singular."""
    n = len(matrix)
    m = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = _ONE / m[col][col]
        m[col] = [inv * x for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def poly_from_samples(points: list) -> list:
    """Exact coefficients (ascending) of the polynomial through (t, value) points."""
    n = len(points)
    matrix = [[Fraction(t) ** j for j in range(n)] for t, _ in points]
    coeffs = solve_dense(matrix, [v for _, v in points])
    assert coeffs is not None, "interpolation nodes must be distinct"
    return coeffs


QUARTIC_NODES = (-2, -1, 0, 1, 2)


def quartic_t1_coeff(values: tuple) -> Fraction:
    """Linear coefficient of a quartic sampled at t = -2,-1,0,1,2."""
    vm2, vm1, _, vp1, vp2 = values
    return (8 * (vp1 - vm1) - (vp2 - vm2)) / Fraction(12)
