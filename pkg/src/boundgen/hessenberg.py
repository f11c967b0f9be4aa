"""Constructive reduction lemmas: unimodular-row gcd reduction, conjugation
to upper Hessenberg form, and conjugating a one-column unipotent matrix to a
single elementary matrix.

The gcd reduction builds the transforming matrix from a left-to-right chain
of embedded 2x2 Bezout blocks computed on integer lifts.  Over Z/l the
integer chain ends in gcd(lifts), which generates the right ideal but need
not be the canonical generator; a final diag(u, u^{-1}) unit block fixes the
associate, so the returned pivot is always canonical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadIndex, NotHessenberg
from .matrices import MatrixSL, elementary, identity, sigma
from .rings import RingSpec, associate_unit, gcd_many, inv_unit
from .rings import _int_xgcd  # integer Bezout chain on lifts


def _embed(block_rows: list[list[int]], coords: list[int], n: int, ring: RingSpec) -> MatrixSL:
    """Place an m x m block at the given 1-based coordinates of an n x n identity."""
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for r, cr in enumerate(coords):
        for c, cc in enumerate(coords):
            rows[cr - 1][cc - 1] = block_rows[r][c]
    return MatrixSL(n, ring, tuple(tuple(r) for r in rows))


def gcd_reduce_row(a, ring: RingSpec) -> tuple[int, MatrixSL]:
    """(t, A) with row(a) * A = (t, 0, ..., 0) and t the canonical gcd of a.

    A is a product of embedded 2x2 Bezout blocks (det 1), folded left to
    right, with at most one trailing unit block.  A = I exactly when the
    input is already (t, 0, ..., 0) with t canonical.
    """
    n = len(a)
    if n < 2:
        raise BadIndex("gcd_reduce_row needs a vector of length >= 2")
    lifts = [ring.lift(x) for x in a]
    cols = [[1 if r == c else 0 for r in range(n)] for c in range(n)]  # columns of A
    g = lifts[0]
    for pos in range(1, n):
        b = lifts[pos]
        if b == 0:
            if g < 0:
                # sign block diag(-1, -1) on coordinates (0, pos)
                cols[0] = [-x for x in cols[0]]
                cols[pos] = [-x for x in cols[pos]]
                g = -g
            continue
        gg, s, t = _int_xgcd(g, b)
        if gg < 0:
            gg, s, t = -gg, -s, -t
        u, v = g // gg, b // gg
        c0, cp = cols[0], cols[pos]
        cols[0] = [c0[r] * s + cp[r] * t for r in range(n)]
        cols[pos] = [c0[r] * (-v) + cp[r] * u for r in range(n)]
        g = gg
    t_got = ring.normalize(g)
    t_want = gcd_many(a, ring)
    if t_got != t_want:
        u = associate_unit(t_got, t_want, ring)
        uinv = inv_unit(u, ring)
        cols[0] = [x * u for x in cols[0]]
        cols[1] = [x * uinv for x in cols[1]]
    rows = tuple(
        tuple(ring.normalize(cols[c][r]) for c in range(n)) for r in range(n)
    )
    mat = MatrixSL(n, ring, rows)
    # invariant: a * A = (t, 0, ..., 0) exactly
    prod = [ring.normalize(sum(a[r] * mat.entries[r][c] for r in range(n))) for c in range(n)]
    assert prod[0] == t_want and all(x == 0 for x in prod[1:]), "row reduction failed"
    return t_want, mat


def gcd_reduce_col(v, ring: RingSpec) -> tuple[int, MatrixSL]:
    """(t, A) with A * column(v) = (t, 0, ..., 0)^T; transpose dual of the row case."""
    t, r = gcd_reduce_row(v, ring)
    return t, r.transpose()


def is_upper_hessenberg(m: MatrixSL) -> bool:
    for i in range(m.n):
        for j in range(m.n):
            if i > j + 1 and m.entries[i][j] != 0:
                return False
    return True


@dataclass(frozen=True)
class HessenbergCert:
    """P * M * P^{-1} = H with H upper Hessenberg and P fixing e_1.

    h_{1,1} = m_{1,1} and (h_{2,1}) equals the ideal generated by the first
    column below the diagonal; the remaining entries depend on the chosen
    completion and are not pinned.
    """

    source: MatrixSL
    hessenberg: MatrixSL
    transform: MatrixSL

    def __post_init__(self):
        if not is_upper_hessenberg(self.hessenberg):
            raise NotHessenberg("certificate matrix is not upper Hessenberg")
        p = self.transform
        if (p * self.source * p.inv()) != self.hessenberg:
            raise NotHessenberg("conjugation identity P M P^{-1} = H fails")
        one = p.ring.normalize(1)
        if p.entries[0][0] != one or any(p.entries[0][j] != 0 for j in range(1, p.n)) or any(
            p.entries[i][0] != 0 for i in range(1, p.n)
        ):
            raise NotHessenberg("transform does not fix the first coordinate")


def to_hessenberg(m: MatrixSL) -> HessenbergCert:
    """Conjugate to upper Hessenberg form, fixing the first coordinate.

    Columns are cleared left to right: the below-subdiagonal tail of column c
    is folded by a gcd block acting on coordinates c+1..n.  Already-reduced
    columns are skipped, so an upper Hessenberg input returns H = M, P = I.
    """
    n = m.n
    ring = m.ring
    cur = m
    p_total = identity(n, ring)
    for c in range(1, n - 1):  # 1-based column
        tail = [cur.entries[r][c - 1] for r in range(c, n)]  # rows c+1..n
        if all(x == 0 for x in tail[1:]):
            continue
        _, q0 = gcd_reduce_col(tail, ring)
        coords = list(range(c + 1, n + 1))
        pc = _embed([list(r) for r in q0.entries], coords, n, ring)
        cur = pc * cur * pc.inv()
        p_total = pc * p_total
    return HessenbergCert(m, cur, p_total)


def unicol_to_elementary(
    a, k: int, n: int, ring: RingSpec
) -> tuple[int, MatrixSL]:
    """(t, C) with C * (I + sum a_i e_{i,k}) * C^{-1} = E_{1,n}(t).

    a = (a_1, ..., a_{k-1}) sits above the diagonal in column k; t generates
    the gcd ideal of a (canonical whenever a reduction step runs).  C is the
    embedded column gcd block, composed with sigma_{n,k} when k != n.
    """
    if not 2 <= k <= n:
        raise BadIndex(f"column index k={k} outside 2..{n}")
    a = [ring.normalize(x) for x in a]
    if len(a) != k - 1:
        raise BadIndex("expected k-1 column entries")
    if all(x == 0 for x in a):
        return 0, identity(n, ring)
    if all(x == 0 for x in a[1:]):
        t, b = a[0], identity(n, ring)
    else:
        t, d0 = gcd_reduce_col(a, ring)
        b = _embed([list(r) for r in d0.entries], list(range(1, k)), n, ring)
    c = b if k == n else sigma(n, k, n, ring) * b
    source = _unicol_matrix(a, k, n, ring)
    assert c * source * c.inv() == elementary(1, n, t, n, ring), "unicol conjugation failed"
    return t, c


def _unicol_matrix(a, k: int, n: int, ring: RingSpec) -> MatrixSL:
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for i, x in enumerate(a):
        rows[i][k - 1] = ring.normalize(x)
    return MatrixSL(n, ring, tuple(tuple(r) for r in rows))
