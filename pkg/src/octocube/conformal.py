"""The conformal algebra tower: e6-type generators, their closure, and the
e7-type algebra acting on the minimal representation.

Generators with a 3x3 matrix form (tracefree Hermitian boosts, tracefree
anti-Hermitian rotations) act on Hermitian matrices by X -> phi X + X phi^dag;
the remaining derivations arise from bracket closure and are carried as
act/dual operator pairs.  Elements Theta = (phi, rho, A, B) act on quadruples
P = (X, Y, p, q) of real dimension 6k+8, and everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import AlgebraTag, AlgElem, TagMismatchError
from .jordan import (
    OFF_DIAG_POSITIONS,
    HermMat,
    OctMat3,
    angle_operator,
    det,
    dual_act,
    freudenthal_product,
    herm_basis,
    herm_dim,
    herm_to_vec,
    jordan_product,
    matrixize_matrix_action,
    trace,
    trace_form,
    trace_pair,
    vec_to_herm,
)
from .linalg import EchelonBasis, SMat

_ZERO = Fraction(0)
_ONE = Fraction(1)
_THIRD = Fraction(1, 3)
_QUARTER = Fraction(1, 4)


class UnsupportedThetaError(ValueError):
    """The element has no 3x3 matrix form (nested/derived generator)."""


class E6Op:
    """Generator of the reduced structure algebra as an act/dual operator pair.

    kind is 'boost', 'rotation', 'derived' (from bracket closure), 'zero', or
    'mixed' (a general tracefree matrix); mat is the 3x3 matrix form when one
    exists.
    """

    __slots__ = ("tag", "act", "dual", "kind", "mat")

    def __init__(self, tag: AlgebraTag, act: SMat, dual: SMat, kind: str, mat: Optional[OctMat3]):
        self.tag = tag
        self.act = act
        self.dual = dual
        self.kind = kind
        self.mat = mat

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "E6Op":
        n = herm_dim(tag)
        return cls(tag, SMat.zero(n), SMat.zero(n), "zero", OctMat3.zero(tag))

    @classmethod
    def from_matrix(cls, phi: OctMat3, kind: Optional[str] = None) -> "E6Op":
        if not phi.is_tracefree:
            raise ValueError("matrix-form generators must be tracefree")
        if kind is None:
            if phi.is_zero:
                kind = "zero"
            elif phi.is_hermitian:
                kind = "boost"
            elif phi.is_antihermitian:
                kind = "rotation"
            else:
                kind = "mixed"
        act = matrixize_matrix_action(phi)
        return cls(phi.tag, act, dual_act(phi.tag, act), kind, phi)

    @classmethod
    def from_act(cls, tag: AlgebraTag, act: SMat, kind: str = "derived") -> "E6Op":
        return cls(tag, act, dual_act(tag, act), kind, None)

    @property
    def is_zero(self) -> bool:
        return self.act.is_zero

    def apply(self, x: HermMat) -> HermMat:
        return _apply_op(self.act, x)

    def apply_dual(self, y: HermMat) -> HermMat:
        return _apply_op(self.dual, y)

    def __repr__(self):
        return f"E6Op({self.tag.name}, kind={self.kind})"


def _apply_op(op: SMat, x: HermMat) -> HermMat:
    tag = x.tag
    vec = {i: v for i, v in enumerate(herm_to_vec(x)) if v}
    img = op.apply(vec)
    n = herm_dim(tag)
    return vec_to_herm(tag, [img.get(i, _ZERO) for i in range(n)])


def e6_generator_basis(tag: AlgebraTag):
    """3k+2 boosts then 5k-2 rotations, in a fixed deterministic order."""
    boosts = []
    zero = AlgElem.zero(tag)
    one = AlgElem.one(tag)
    for d in ((1, -1, 0), (0, 1, -1)):
        rows = tuple(
            tuple(AlgElem.real(tag, d[i]) if i == j else zero for j in range(3))
            for i in range(3)
        )
        boosts.append(E6Op.from_matrix(OctMat3(tag, rows), "boost"))
    for (i, j) in OFF_DIAG_POSITIONS:
        for u in range(tag.dim):
            e = AlgElem.unit(tag, u)
            rows = [[zero] * 3 for _ in range(3)]
            rows[i][j] = e
            rows[j][i] = e.conj()
            boosts.append(E6Op.from_matrix(OctMat3(tag, map(tuple, rows)), "boost"))
    rotations = []
    for (i, j) in OFF_DIAG_POSITIONS:
        for u in range(tag.dim):
            e = AlgElem.unit(tag, u)
            rows = [[zero] * 3 for _ in range(3)]
            rows[i][j] = e
            rows[j][i] = -e.conj()
            rotations.append(E6Op.from_matrix(OctMat3(tag, map(tuple, rows)), "rotation"))
    for u in range(1, tag.dim):
        e = AlgElem.unit(tag, u)
        for pattern in ((e, -e, zero), (zero, e, -e)):
            rows = tuple(
                tuple(pattern[i] if i == j else zero for j in range(3)) for i in range(3)
            )
            rotations.append(E6Op.from_matrix(OctMat3(tag, rows), "rotation"))
    assert len(boosts) == 3 * tag.dim + 2 and len(rotations) == 5 * tag.dim - 2
    return boosts, rotations


def close_under_bracket(gens: Sequence[SMat]):
    """Adjoin commutators until the span stabilizes; returns (basis, dimension).

    Deterministic: pivots are least nonzero coordinates (row-major flattening)
    and pairs are processed in index order.
    """
    if not gens:
        return [], 0
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("generators must share one square shape")
    ech = EchelonBasis()
    elems: list = []
    for g in gens:
        if ech.add(g.to_vec()):
            elems.append(g)
    j = 1
    while j < len(elems):
        for i in range(j):
            br = elems[i].commutator(elems[j])
            if ech.add(br.to_vec()):
                elems.append(br)
        j += 1
    return elems, len(elems)


@lru_cache(maxsize=None)
def e6_closure_basis(tag: AlgebraTag) -> tuple:
    """Boosts, rotations, then the derived elements generated by nesting."""
    boosts, rotations = e6_generator_basis(tag)
    gens = list(boosts) + list(rotations)
    closed, _dim = close_under_bracket([g.act for g in gens])
    out = list(gens)
    for m in closed[len(gens):]:
        out.append(E6Op.from_act(tag, m, "derived"))
    return tuple(out)


def rep_dim(tag: AlgebraTag) -> int:
    return 6 * tag.dim + 8


class FreudVec:
    """Element (X, Y, p, q) of the minimal representation."""

    __slots__ = ("tag", "X", "Y", "p", "q")

    def __init__(self, X: HermMat, Y: HermMat, p, q):
        if X.tag is not Y.tag:
            raise TagMismatchError("X and Y tags differ")
        self.tag = X.tag
        self.X = X
        self.Y = Y
        self.p = p if isinstance(p, Fraction) else Fraction(p)
        self.q = q if isinstance(q, Fraction) else Fraction(q)

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "FreudVec":
        z = HermMat.zero(tag)
        return cls(z, z, _ZERO, _ZERO)

    @property
    def is_zero(self) -> bool:
        return self.X.is_zero and self.Y.is_zero and not self.p and not self.q

    def add(self, other: "FreudVec") -> "FreudVec":
        return FreudVec(
            self.X.add(other.X), self.Y.add(other.Y), self.p + other.p, self.q + other.q
        )

    def scale(self, c) -> "FreudVec":
        c = Fraction(c)
        return FreudVec(self.X.scale(c), self.Y.scale(c), c * self.p, c * self.q)

    def to_vec(self) -> tuple:
        return herm_to_vec(self.X) + herm_to_vec(self.Y) + (self.p, self.q)

    @classmethod
    def from_vec(cls, tag: AlgebraTag, vec) -> "FreudVec":
        vec = tuple(vec)
        h = herm_dim(tag)
        assert len(vec) == 2 * h + 2
        return cls(vec_to_herm(tag, vec[:h]), vec_to_herm(tag, vec[h : 2 * h]), vec[2 * h], vec[2 * h + 1])

    def __eq__(self, other):
        return (
            isinstance(other, FreudVec)
            and other.tag is self.tag
            and other.X == self.X
            and other.Y == self.Y
            and other.p == self.p
            and other.q == self.q
        )

    def __repr__(self):
        return f"FreudVec({self.tag.name}, p={self.p}, q={self.q})"


class E7Elem:
    """Conformal element Theta = (phi, rho, A, B)."""

    __slots__ = ("tag", "phi", "rho", "A", "B")

    def __init__(self, phi: E6Op, rho, A: HermMat, B: HermMat):
        if phi.tag is not A.tag or A.tag is not B.tag:
            raise TagMismatchError("component tags differ")
        if phi.act.trace() != 0:
            raise ValueError("phi must be tracefree as an operator")
        self.tag = phi.tag
        self.phi = phi
        self.rho = rho if isinstance(rho, Fraction) else Fraction(rho)
        self.A = A
        self.B = B

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "E7Elem":
        z = HermMat.zero(tag)
        return cls(E6Op.zero(tag), _ZERO, z, z)

    @classmethod
    def from_phi(cls, phi: E6Op) -> "E7Elem":
        z = HermMat.zero(phi.tag)
        return cls(phi, _ZERO, z, z)

    @classmethod
    def dilation(cls, tag: AlgebraTag, rho=1) -> "E7Elem":
        z = HermMat.zero(tag)
        return cls(E6Op.zero(tag), Fraction(rho), z, z)

    @classmethod
    def translation_a(cls, A: HermMat) -> "E7Elem":
        return cls(E6Op.zero(A.tag), _ZERO, A, HermMat.zero(A.tag))

    @classmethod
    def translation_b(cls, B: HermMat) -> "E7Elem":
        return cls(E6Op.zero(B.tag), _ZERO, HermMat.zero(B.tag), B)

    @property
    def is_zero(self) -> bool:
        return self.phi.is_zero and not self.rho and self.A.is_zero and self.B.is_zero

    def __repr__(self):
        return f"E7Elem({self.tag.name}, phi={self.phi.kind}, rho={self.rho})"


class RepMatrix:
    """Exact matrix of an action on the minimal representation."""

    __slots__ = ("tag", "mat")

    def __init__(self, tag: AlgebraTag, mat: SMat):
        assert mat.n == rep_dim(tag)
        self.tag = tag
        self.mat = mat

    def __eq__(self, other):
        return isinstance(other, RepMatrix) and other.tag is self.tag and other.mat == self.mat

    def __repr__(self):
        return f"RepMatrix({self.tag.name}, {self.mat.n}x{self.mat.n}, nnz={self.mat.nnz()})"


def freudenthal_action(theta: E7Elem, P: FreudVec) -> FreudVec:
    """The four component maps of the conformal action on (X, Y, p, q)."""
    if theta.tag is not P.tag:
        raise TagMismatchError(f"cannot act {theta.tag.name} on {P.tag.name}")
    X, Y, p, q = P.X, P.Y, P.p, P.q
    rho = theta.rho
    A, B = theta.A, theta.B
    nX = theta.phi.apply(X).add(X.scale(rho * _THIRD)).add(
        freudenthal_product(B, Y).scale(2)
    ).add(A.scale(q))
    nY = freudenthal_product(A, X).scale(2).add(theta.phi.apply_dual(Y)).sub(
        Y.scale(rho * _THIRD)
    ).add(B.scale(p))
    np_ = trace_pair(A, Y) - rho * p
    nq = trace_pair(B, X) + rho * q
    return FreudVec(nX, nY, np_, nq)


def freud_mat(A: HermMat) -> SMat:
    """Matrix of Z -> A * Z (Freudenthal product) in the fixed coordinates."""
    tag = A.tag
    n = herm_dim(tag)
    rows: dict = {}
    for col, b in enumerate(herm_basis(tag)):
        for r, v in enumerate(herm_to_vec(freudenthal_product(A, b))):
            if v:
                rows.setdefault(r, {})[col] = v
    return SMat(n, rows)


def matrixize(theta: E7Elem) -> RepMatrix:
    """Exact linearization: columns are images of the coordinate basis."""
    tag = theta.tag
    h = herm_dim(tag)
    n = rep_dim(tag)
    g = trace_form(tag)
    rho = theta.rho
    entries = []
    for i, r in theta.phi.act.rows.items():
        for j, v in r.items():
            entries.append((i, j, v))
    for i, r in theta.phi.dual.rows.items():
        for j, v in r.items():
            entries.append((h + i, h + j, v))
    if rho:
        third = rho * _THIRD
        for i in range(h):
            entries.append((i, i, third))
            entries.append((h + i, h + i, -third))
        entries.append((2 * h, 2 * h, -rho))
        entries.append((2 * h + 1, 2 * h + 1, rho))
    if not theta.B.is_zero:
        for i, r in freud_mat(theta.B).rows.items():
            for j, v in r.items():
                entries.append((i, h + j, 2 * v))
        for j, v in enumerate(herm_to_vec(theta.B)):
            if v:
                entries.append((h + j, 2 * h, v))
                entries.append((2 * h + 1, j, g[j] * v))
    if not theta.A.is_zero:
        for i, r in freud_mat(theta.A).rows.items():
            for j, v in r.items():
                entries.append((h + i, j, 2 * v))
        for j, v in enumerate(herm_to_vec(theta.A)):
            if v:
                entries.append((j, 2 * h + 1, v))
                entries.append((2 * h, h + j, g[j] * v))
    # phi may carry diagonal terms that collide with the rho block: accumulate
    acc: dict = {}
    for i, j, v in entries:
        row = acc.setdefault(i, {})
        nv = row.get(j, _ZERO) + v
        if nv:
            row[j] = nv
        else:
            del row[j]
    return RepMatrix(tag, SMat(n, {i: r for i, r in acc.items() if r}))


@lru_cache(maxsize=None)
def e7_basis(tag: AlgebraTag) -> tuple:
    """e6 closure lifted, 3+3k A-translations, 3+3k B-translations, dilation."""
    out = [E7Elem.from_phi(op) for op in e6_closure_basis(tag)]
    basis = herm_basis(tag)
    out.extend(E7Elem.translation_a(E) for E in basis)
    out.extend(E7Elem.translation_b(E) for E in basis)
    out.append(E7Elem.dilation(tag))
    return tuple(out)


@lru_cache(maxsize=None)
def e7_matrixized(tag: AlgebraTag) -> tuple:
    return tuple(matrixize(th) for th in e7_basis(tag))


@lru_cache(maxsize=None)
def e7_echelon(tag: AlgebraTag) -> EchelonBasis:
    ech = EchelonBasis(augment=True)
    for rm in e7_matrixized(tag):
        added = ech.add(rm.mat.to_vec())
        assert added, "e7 basis must be linearly independent"
    return ech


def bracket(theta1: E7Elem, theta2: E7Elem) -> RepMatrix:
    """Commutator of the matrixized actions."""
    if theta1.tag is not theta2.tag:
        raise TagMismatchError("bracket of elements over different algebras")
    m1 = matrixize(theta1).mat
    m2 = matrixize(theta2).mat
    return RepMatrix(theta1.tag, m1.commutator(m2))


def super_freudenthal(P: FreudVec) -> E7Elem:
    """The squaring map P -> (angle(X,Y), -tr(XoY - pq I)/4, -(Y*Y - pX)/2, (X*X - qY)/2)."""
    tag = P.tag
    X, Y, p, q = P.X, P.Y, P.p, P.q
    op = angle_operator(X, Y)
    phi = E6Op(tag, op, dual_act(tag, op), "derived" if not op.is_zero else "zero", None)
    rho = -(trace_pair(X, Y) - 3 * p * q) * _QUARTER
    A = freudenthal_product(Y, Y).sub(X.scale(p)).scale(Fraction(-1, 2))
    B = freudenthal_product(X, X).sub(Y.scale(q)).scale(Fraction(1, 2))
    return E7Elem(phi, rho, A, B)


def quartic(P: FreudVec) -> Fraction:
    """tr((X*X) o (Y*Y)) - p det X - q det Y - (tr(X o Y) - pq)^2 / 4."""
    X, Y, p, q = P.X, P.Y, P.p, P.q
    xx = freudenthal_product(X, X)
    yy = freudenthal_product(Y, Y)
    t1 = trace_pair(xx, yy)
    inner = trace_pair(X, Y) - p * q
    detx = trace_pair(xx, X) * _THIRD
    dety = trace_pair(yy, Y) * _THIRD
    return t1 - p * detx - q * dety - inner * inner * _QUARTER


@lru_cache(maxsize=None)
def _matrix_span_echelon(tag: AlgebraTag) -> tuple:
    """Augmented echelon over the matrix-kind generator actions, plus the mats."""
    boosts, rotations = e6_generator_basis(tag)
    gens = list(boosts) + list(rotations)
    ech = EchelonBasis(augment=True)
    for gen in gens:
        added = ech.add(gen.act.to_vec())
        assert added
    return ech, tuple(g.mat for g in gens)


def matrix_form(op: E6Op) -> OctMat3:
    """3x3 matrix form of an operator, when it lies in the boost/rotation span."""
    if op.mat is not None:
        return op.mat
    ech, mats = _matrix_span_echelon(op.tag)
    coords = ech.coords(op.act.to_vec())
    if coords is None:
        raise UnsupportedThetaError("operator has no 3x3 matrix form")
    out = OctMat3.zero(op.tag)
    for k, c in coords.items():
        out = out.add(mats[k].scale(c))
    return out


BlockMat = tuple  # 6x6 nested tuple of AlgElem


def block_form(theta: E7Elem) -> BlockMat:
    """6x6 block matrix ((phi - rho/3 I, A), (B, phi' + rho/3 I)), phi' = -phi^dag."""
    tag = theta.tag
    phi = matrix_form(theta.phi)
    phid = phi.dagger().scale(-1)
    third = theta.rho * _THIRD
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            e = phi.entries[i][j]
            if i == j and third:
                e = e - AlgElem.real(tag, third)
            row.append(e)
        for j in range(3):
            row.append(theta.A.entries[i][j])
        rows.append(tuple(row))
    for i in range(3):
        row = []
        for j in range(3):
            row.append(theta.B.entries[i][j])
        for j in range(3):
            e = phid.entries[i][j]
            if i == j and third:
                e = e + AlgElem.real(tag, third)
            row.append(e)
        rows.append(tuple(row))
    return tuple(rows)


def block_mul(a: BlockMat, b: BlockMat, tag: AlgebraTag) -> BlockMat:
    zero = AlgElem.zero(tag)
    out = []
    for i in range(6):
        row = []
        for j in range(6):
            s = zero
            for k in range(6):
                x, y = a[i][k], b[k][j]
                if not (x.is_zero or y.is_zero):
                    s = s + x * y
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def block_dagger(a: BlockMat) -> BlockMat:
    return tuple(tuple(a[j][i].conj() for j in range(6)) for i in range(6))


def block_add(a: BlockMat, b: BlockMat) -> BlockMat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def block_is_zero(a: BlockMat) -> bool:
    return all(e.is_zero for row in a for e in row)


def omega(tag: AlgebraTag) -> BlockMat:
    """The 6x6 symplectic form ((0, I), (-I, 0))."""
    zero = AlgElem.zero(tag)
    one = AlgElem.one(tag)
    rows = []
    for i in range(6):
        row = [zero] * 6
        if i < 3:
            row[i + 3] = one
        else:
            row[i - 3] = -one
        rows.append(tuple(row))
    return tuple(rows)


def symplectic_defect(block: BlockMat, tag: AlgebraTag) -> BlockMat:
    """Theta Omega + Omega Theta^dagger; zero exactly on symplectic elements."""
    om = omega(tag)
    return block_add(block_mul(block, om, tag), block_mul(om, block_dagger(block), tag))
