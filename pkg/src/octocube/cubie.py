"""Rank-3 tensor machinery: cubies, cubes, and the symplectic actions.

A cubie is the Hodge dual of a 3x3 matrix, a 3x3x3 tensor antisymmetric in
its last two indices.  A cube is a totally antisymmetric 6x6x6 tensor whose
four defining blocks hold p, q and the duals of X and Y; the naive action
multiplies all three tensor slots from the left, the sided action multiplies
the first slot from the left and the last two from the right.

Indices are 0-based internally; epsilon with indices (0,1,2) is +1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import AlgebraTag, AlgElem, TagMismatchError, commutator
from .conformal import BlockMat, FreudVec
from .jordan import HermMat
from .linalg import SMat

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


class NotAntisymmetricError(ValueError):
    """A tensor lacks the antisymmetry required by the operation."""


class BlockStructureError(ValueError):
    """A cube's blocks do not encode a (X, Y, p, q) quadruple."""


def perm_sign(perm) -> int:
    """Sign of a permutation given as a tuple of distinct indices."""
    sign = 1
    seq = list(perm)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def eps3(a: int, b: int, c: int) -> int:
    if a == b or b == c or a == c:
        return 0
    return perm_sign((a, b, c))


PERMS3 = tuple((p, perm_sign(p)) for p in itertools.permutations(range(3)))


@lru_cache(maxsize=None)
def perms6() -> tuple:
    return tuple((p, perm_sign(p)) for p in itertools.permutations(range(6)))


class Cubie:
    """3x3x3 tensor of algebra elements."""

    __slots__ = ("tag", "t")

    def __init__(self, tag: AlgebraTag, t: Iterable):
        t = tuple(tuple(tuple(e for e in row) for row in plane) for plane in t)
        if len(t) != 3 or any(len(p) != 3 or any(len(r) != 3 for r in p) for p in t):
            raise ValueError("expected a 3x3x3 array")
        for plane in t:
            for row in plane:
                for e in row:
                    if not isinstance(e, AlgElem) or e.tag is not tag:
                        raise TagMismatchError("entry tag does not match cubie tag")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "t", t)

    def __setattr__(self, name, value):
        raise AttributeError("Cubie is immutable")

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "Cubie":
        z = AlgElem.zero(tag)
        return cls(tag, (((z,) * 3,) * 3,) * 3)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for p in self.t for r in p for e in r)

    def is_antisym_last_two(self) -> bool:
        return all(
            self.t[a][b][c] == -self.t[a][c][b]
            for a in range(3)
            for b in range(3)
            for c in range(b, 3)
        )

    def __eq__(self, other):
        return isinstance(other, Cubie) and other.tag is self.tag and other.t == self.t

    def __repr__(self):
        return f"Cubie({self.tag.name})"


def hodge(x: HermMat) -> Cubie:
    """(*X)_abc = X_a^m eps_mbc."""
    tag = x.tag
    z = AlgElem.zero(tag)
    t = []
    for a in range(3):
        plane = []
        for b in range(3):
            row = []
            for c in range(3):
                if b == c:
                    row.append(z)
                else:
                    m = 3 - b - c
                    s = eps3(m, b, c)
                    e = x.entries[a][m]
                    row.append(e if s > 0 else -e)
            plane.append(tuple(row))
        t.append(tuple(plane))
    return Cubie(tag, t)


def unhodge(c: Cubie) -> HermMat:
    """X_a^b = C_amn eps^bmn / 2; requires antisymmetry in the last two slots."""
    if not c.is_antisym_last_two():
        raise NotAntisymmetricError("cubie is not antisymmetric in its last two indices")
    entries = []
    for a in range(3):
        row = []
        for b in range(3):
            m, n = [i for i in range(3) if i != b]
            if eps3(b, m, n) < 0:
                m, n = n, m
            row.append(c.t[a][m][n])
        entries.append(tuple(row))
    return HermMat(c.tag, tuple(entries))


def cubie_trace(c: Cubie) -> Fraction:
    """tr X = C_abc eps^abc / 2; the contraction must come out real."""
    s = AlgElem.zero(c.tag)
    for (a, b, cc), sign in PERMS3:
        e = c.t[a][b][cc]
        if not e.is_zero:
            s = s + e if sign > 0 else s - e
    if not s.is_real:
        raise ValueError(f"cubie trace is not real: {s}")
    return s.re() * _HALF


def cubie_jordan(cx: Cubie, cy: Cubie) -> Cubie:
    """(*(X o Y))_abc = (X_amn Y_pbc + Y_amn X_pbc) eps^mnp / 4."""
    if cx.tag is not cy.tag:
        raise TagMismatchError("cubie tags differ")
    tag = cx.tag
    z = AlgElem.zero(tag)
    t = []
    for a in range(3):
        plane = []
        for b in range(3):
            row = []
            for c in range(3):
                s = z
                for (m, n, p), sign in PERMS3:
                    u = cx.t[a][m][n]
                    v = cy.t[p][b][c]
                    if not (u.is_zero or v.is_zero):
                        w = u * v
                        s = s + w if sign > 0 else s - w
                    u = cy.t[a][m][n]
                    v = cx.t[p][b][c]
                    if not (u.is_zero or v.is_zero):
                        w = u * v
                        s = s + w if sign > 0 else s - w
                row.append(s.scale(_QUARTER))
            plane.append(tuple(row))
        t.append(tuple(plane))
    return Cubie(tag, t)


def cubie_freudenthal_commuting(x: HermMat, y: HermMat) -> HermMat:
    """(X*Y)_a^b = X_c^m Y_d^n eps_amn eps^bcd / 2, valid when entries commute."""
    if x.tag is not y.tag:
        raise TagMismatchError("matrix tags differ")
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    if not commutator(x.entries[i][j], y.entries[k][l]).is_zero:
                        raise ValueError(
                            f"entries X[{i}][{j}] and Y[{k}][{l}] do not commute"
                        )
    tag = x.tag
    entries = []
    for a in range(3):
        row = []
        for b in range(3):
            s = AlgElem.zero(tag)
            for (aa, m, n), s1 in PERMS3:
                if aa != a:
                    continue
                for (bb, c, d), s2 in PERMS3:
                    if bb != b:
                        continue
                    u = x.entries[c][m]
                    v = y.entries[d][n]
                    if not (u.is_zero or v.is_zero):
                        w = u * v
                        s = s + w if s1 * s2 > 0 else s - w
            row.append(s.scale(_HALF))
        entries.append(tuple(row))
    return HermMat(tag, tuple(entries))


CUBE_TRIPLES = tuple(itertools.combinations(range(6), 3))
_TRIPLE_INDEX = {t: i for i, t in enumerate(CUBE_TRIPLES)}


def cube_dim(tag: AlgebraTag) -> int:
    return len(CUBE_TRIPLES) * tag.dim


class Cube:
    """Totally antisymmetric 6x6x6 tensor of algebra elements."""

    __slots__ = ("tag", "t")

    def __init__(self, tag: AlgebraTag, t: Iterable):
        t = tuple(tuple(tuple(e for e in row) for row in plane) for plane in t)
        if len(t) != 6 or any(len(p) != 6 or any(len(r) != 6 for r in p) for p in t):
            raise ValueError("expected a 6x6x6 array")
        for a in range(6):
            for b in range(6):
                for c in range(6):
                    e = t[a][b][c]
                    if not isinstance(e, AlgElem) or e.tag is not tag:
                        raise TagMismatchError("entry tag does not match cube tag")
                    if len({a, b, c}) < 3:
                        if not e.is_zero:
                            raise NotAntisymmetricError(
                                f"entry ({a},{b},{c}) with repeated index must vanish"
                            )
                    else:
                        key = tuple(sorted((a, b, c)))
                        canon = t[key[0]][key[1]][key[2]]
                        want = canon if perm_sign((a, b, c)) > 0 else -canon
                        if e != want:
                            raise NotAntisymmetricError(
                                f"entry ({a},{b},{c}) breaks total antisymmetry"
                            )
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "t", t)

    def __setattr__(self, name, value):
        raise AttributeError("Cube is immutable")

    @classmethod
    def from_canonical(cls, tag: AlgebraTag, canon: dict) -> "Cube":
        """Build from values on sorted triples; the rest follows by antisymmetry."""
        z = AlgElem.zero(tag)
        t = [[[z] * 6 for _ in range(6)] for _ in range(6)]
        for (a, b, c), val in canon.items():
            assert a < b < c
            for perm in itertools.permutations((a, b, c)):
                t[perm[0]][perm[1]][perm[2]] = (
                    val if perm_sign(perm) > 0 else -val
                )
        return cls(tag, tuple(tuple(tuple(r) for r in p) for p in t))

    @classmethod
    def zero(cls, tag: AlgebraTag) -> "Cube":
        return cls.from_canonical(tag, {})

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for p in self.t for r in p for e in r)

    def to_coords(self) -> tuple:
        """Dense coordinates: sorted triples in lex order, each over the units."""
        out = []
        for (a, b, c) in CUBE_TRIPLES:
            out.extend(self.t[a][b][c].coeffs)
        return tuple(out)

    def to_vec(self) -> dict:
        return {i: v for i, v in enumerate(self.to_coords()) if v}

    @classmethod
    def from_coords(cls, tag: AlgebraTag, coords) -> "Cube":
        coords = tuple(coords)
        k = tag.dim
        assert len(coords) == cube_dim(tag)
        canon = {}
        for idx, trip in enumerate(CUBE_TRIPLES):
            e = AlgElem(tag, coords[idx * k : (idx + 1) * k])
            if not e.is_zero:
                canon[trip] = e
        return cls.from_canonical(tag, canon)

    def __eq__(self, other):
        return isinstance(other, Cube) and other.tag is self.tag and other.t == self.t

    def __repr__(self):
        return f"Cube({self.tag.name})"


def assemble_cube(P: FreudVec) -> Cube:
    """Blocks per the defining layout: p, *Y, *X, q; antisymmetry does the rest."""
    tag = P.tag
    cx = hodge(P.X)
    cy = hodge(P.Y)
    canon = {}
    p_elem = AlgElem.real(tag, P.p)
    q_elem = AlgElem.real(tag, P.q)
    if not p_elem.is_zero:
        canon[(0, 1, 2)] = p_elem
    if not q_elem.is_zero:
        canon[(3, 4, 5)] = q_elem
    for trip in CUBE_TRIPLES:
        a, b, c = trip
        small = sum(1 for i in trip if i < 3)
        if small == 1:
            # sorted pattern (s, l, l) is the *X block directly
            e = cx.t[a][b - 3][c - 3]
            if not e.is_zero:
                canon[trip] = e
        elif small == 2:
            # sorted pattern (s, s, l): cube_{abc} = cube_{cab} = (*Y)_{c-3, a, b}
            e = cy.t[c - 3][a][b]
            if not e.is_zero:
                canon[trip] = e
    return Cube.from_canonical(tag, canon)


def extract_freudvec(c: Cube) -> FreudVec:
    """Read (X, Y, p, q) back off the four defining blocks."""
    tag = c.tag
    p_elem = c.t[0][1][2]
    q_elem = c.t[3][4][5]
    if not p_elem.is_real or not q_elem.is_real:
        raise BlockStructureError("diagonal blocks must be real multiples of epsilon")
    xt = tuple(
        tuple(tuple(c.t[a][b + 3][cc + 3] for cc in range(3)) for b in range(3))
        for a in range(3)
    )
    yt = tuple(
        tuple(tuple(c.t[a + 3][b][cc] for cc in range(3)) for b in range(3))
        for a in range(3)
    )
    try:
        x = unhodge(Cubie(tag, xt))
        y = unhodge(Cubie(tag, yt))
    except (NotAntisymmetricError, ValueError) as exc:
        raise BlockStructureError(f"off-diagonal block is not of hodge form: {exc}") from exc
    return FreudVec(x, y, p_elem.re(), q_elem.re())


def _check_block(block: BlockMat, tag: AlgebraTag):
    if len(block) != 6 or any(len(r) != 6 for r in block):
        raise ValueError("expected a 6x6 block matrix")
    for row in block:
        for e in row:
            if not isinstance(e, AlgElem) or e.tag is not tag:
                raise TagMismatchError("block entry tag does not match cube tag")


def naive_action(block: BlockMat, c: Cube) -> Cube:
    """Theta_a^m P_mbc + Theta_b^m P_amc + Theta_c^m P_abm, all factors on the left."""
    tag = c.tag
    _check_block(block, tag)
    t = c.t
    out = []
    for a in range(6):
        plane = []
        for b in range(6):
            row = []
            for cc in range(6):
                s = AlgElem.zero(tag)
                for m in range(6):
                    th = block[a][m]
                    if not th.is_zero:
                        e = t[m][b][cc]
                        if not e.is_zero:
                            s = s + th * e
                    th = block[b][m]
                    if not th.is_zero:
                        e = t[a][m][cc]
                        if not e.is_zero:
                            s = s + th * e
                    th = block[cc][m]
                    if not th.is_zero:
                        e = t[a][b][m]
                        if not e.is_zero:
                            s = s + th * e
                row.append(s)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return Cube(tag, tuple(out))


def _sided_entry(block: BlockMat, t, a: int, b: int, cc: int, tag: AlgebraTag) -> AlgElem:
    """Theta_a^m P_mbc + P_amc Theta_b^m + P_abm Theta_c^m."""
    s = AlgElem.zero(tag)
    for m in range(6):
        th = block[a][m]
        if not th.is_zero:
            e = t[m][b][cc]
            if not e.is_zero:
                s = s + th * e
        th = block[b][m]
        if not th.is_zero:
            e = t[a][m][cc]
            if not e.is_zero:
                s = s + e * th
        th = block[cc][m]
        if not th.is_zero:
            e = t[a][b][m]
            if not e.is_zero:
                s = s + e * th
    return s


def sided_action(block: BlockMat, c: Cube) -> Cube:
    """First slot from the left, last two from the right, on the four defining
    blocks; the other four blocks follow by the antisymmetry extension, and
    the result is checked for total antisymmetry."""
    tag = c.tag
    _check_block(block, tag)
    t = c.t
    z = AlgElem.zero(tag)
    out = [[[z] * 6 for _ in range(6)] for _ in range(6)]
    for a in range(6):
        for b in range(6):
            for cc in range(6):
                sa, sb, sc = a < 3, b < 3, cc < 3
                if sa and sb and sc:
                    pass  # p block
                elif sa and not sb and not sc:
                    pass  # *X block
                elif not sa and sb and sc:
                    pass  # *Y block
                elif not (sa or sb or sc):
                    pass  # q block
                else:
                    continue
                out[a][b][cc] = _sided_entry(block, t, a, b, cc, tag)
    # remaining patterns by antisymmetry: cyclic images of the defining blocks
    for a in range(6):
        for b in range(6):
            for cc in range(6):
                sa, sb, sc = a < 3, b < 3, cc < 3
                if sa and sb and not sc:
                    out[a][b][cc] = out[cc][a][b]  # (s,s,l) <- (l,s,s), even
                elif sa and not sb and sc:
                    out[a][b][cc] = out[b][cc][a]  # (s,l,s) <- (l,s,s), even
                elif not sa and sb and not sc:
                    out[a][b][cc] = -out[b][a][cc]  # (l,s,l) <- (s,l,l), odd
                elif not sa and not sb and sc:
                    out[a][b][cc] = out[cc][a][b]  # (l,l,s) <- (s,l,l), even
    return Cube(tag, tuple(tuple(tuple(r) for r in p) for p in out))


def naive_action_matrix(block: BlockMat, tag: AlgebraTag) -> SMat:
    """Linearization of the naive action on cube coordinates."""
    n = cube_dim(tag)
    k = tag.dim
    rows: dict = {}
    for ti, trip in enumerate(CUBE_TRIPLES):
        for u in range(k):
            col = ti * k + u
            basis = Cube.from_canonical(tag, {trip: AlgElem.unit(tag, u)})
            img = naive_action(block, basis)
            for r, v in enumerate(img.to_coords()):
                if v:
                    rows.setdefault(r, {})[col] = v
    return SMat(n, rows)


def pstar_tensor(c: Cube) -> BlockMat:
    """6x6 pairing of the cube with itself through the rank-6 epsilon:
    M_a^b = P_acd P_efg eps^cdefgb."""
    tag = c.tag
    t = c.t
    z = AlgElem.zero(tag)
    out = [[z] * 6 for _ in range(6)]
    for perm, sign in perms6():
        cc, d, e, f, g, b = perm
        for a in range(6):
            u = t[a][cc][d]
            if u.is_zero:
                continue
            v = t[e][f][g]
            if v.is_zero:
                continue
            w = u * v
            out[a][b] = out[a][b] + w if sign > 0 else out[a][b] - w
    return tuple(tuple(r) for r in out)


def quartic_tensor(c: Cube) -> Fraction:
    """P_gab P_cde P_fhi P_jkl eps^abcdef eps^ghijkl, over R or C only."""
    tag = c.tag
    if tag not in (AlgebraTag.R, AlgebraTag.C):
        raise ValueError("quartic tensor contraction is canonical over R and C only")
    t = c.t
    z = AlgElem.zero(tag)
    # split the double sum at the shared free pair (g, f); entries commute here
    left = [[z] * 6 for _ in range(6)]  # left[g][f] = sum P_gab P_cde eps^abcdef
    right = [[z] * 6 for _ in range(6)]  # right[g][f] = sum P_fhi P_jkl eps^ghijkl
    for perm, sign in perms6():
        a, b, cc, d, e, f = perm
        second = t[cc][d][e]
        if second.is_zero:
            continue
        for g in range(6):
            u = t[g][a][b]
            if u.is_zero:
                continue
            w = u * second
            left[g][f] = left[g][f] + w if sign > 0 else left[g][f] - w
    for perm, sign in perms6():
        g, h, i, j, k, l = perm
        second = t[j][k][l]
        if second.is_zero:
            continue
        for f in range(6):
            u = t[f][h][i]
            if u.is_zero:
                continue
            w = u * second
            right[g][f] = right[g][f] + w if sign > 0 else right[g][f] - w
    total = z
    for g in range(6):
        for f in range(6):
            u, v = left[g][f], right[g][f]
            if not (u.is_zero or v.is_zero):
                total = total + u * v
    if not total.is_real:
        raise ValueError("quartic tensor contraction must be real")
    return total.re()


# epsilon identity helpers ---------------------------------------------------

def eps3_full_contraction() -> int:
    return sum(eps3(*p) * eps3(*p) for p in itertools.product(range(3), repeat=3))


def eps3_one_index(a: int, b: int) -> int:
    return sum(eps3(a, m, n) * eps3(b, m, n) for m in range(3) for n in range(3))


def eps3_two_index(a: int, b: int, c: int, d: int) -> int:
    return sum(eps3(a, b, m) * eps3(c, d, m) for m in range(3))


DELTA6_STANDARD = tuple(
    ((p[0], p[1], p[2]), perm_sign(p)) for p in itertools.permutations(range(3))
)

# alternate six-term expansion whose final term repeats the (c,a,b) pattern
# instead of (c,b,a); kept as data so the identity suite can report exactly
# where it deviates from the signed-permutation expansion
DELTA6_VARIANT = (
    ((0, 1, 2), 1),
    ((1, 2, 0), 1),
    ((2, 0, 1), 1),
    ((0, 2, 1), -1),
    ((1, 0, 2), -1),
    ((2, 0, 1), -1),
)


def _delta6_eval(terms, a, b, c, d, e, f) -> int:
    # each term maps positions of (a,b,c) onto (d,e,f): sign * d_x^d d_y^e d_z^f
    idx = (a, b, c)
    total = 0
    for (x, y, z), sign in terms:
        if idx[x] == d and idx[y] == e and idx[z] == f:
            total += sign
    return total


def delta6_standard(a, b, c, d, e, f) -> int:
    return _delta6_eval(DELTA6_STANDARD, a, b, c, d, e, f)


def delta6_variant(a, b, c, d, e, f) -> int:
    return _delta6_eval(DELTA6_VARIANT, a, b, c, d, e, f)
