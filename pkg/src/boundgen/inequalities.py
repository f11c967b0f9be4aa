"""Finite-group inequality harness.

Each check instantiates one of the general norm/diameter inequalities with
exact quantities computed by the ball-search engine and reports
(lhs, relation, rhs, holds).  A violation would be a build-stopping defect,
so the suite doubles as an end-to-end consistency test of the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ballsearch import (
    FiniteGroupTable,
    ball_bfs,
    conjugacy_classes,
    delta_exhaustive,
    enumerate_group,
    normal_generation_number,
)
from .matrices import MatrixSL, elementary
from .rings import RingSpec
from .witness import class_size_lower


@dataclass
class CheckRow:
    name: str
    lhs: object
    relation: str
    rhs: object
    holds: bool
    context: dict = field(default_factory=dict)

    def __str__(self):
        mark = "ok" if self.holds else "VIOLATED"
        return f"{self.name}: {self.lhs} {self.relation} {self.rhs} [{mark}]"


def _reduce_keys(table_g: FiniteGroupTable, table_h: FiniteGroupTable, keys) -> np.ndarray:
    """Map element keys of G to keys of H by entrywise modulus reduction."""
    qh = table_h.ring.modulus
    mats = table_g.decode(np.asarray(keys, dtype=np.int64)) % qh
    return table_h.canonical_keys(mats)


def check_quotient_bound(
    table_g: FiniteGroupTable, table_h: FiniteGroupTable, k: int = 1
) -> CheckRow:
    """Delta_k(H) <= Delta_{n0+k}(G) through a reduction epimorphism."""
    n0 = normal_generation_number(table_g)
    dh = delta_exhaustive(table_h, k)
    dg = delta_exhaustive(table_g, n0 + k)
    return CheckRow(
        f"quotient: Delta_{k}(H) <= Delta_{n0}+{k}(G)",
        dh.value,
        "<=",
        dg.value,
        dh.value <= dg.value,
        {"n0": n0, "G": table_g.order, "H": table_h.order},
    )


def check_extension_bound(
    table_g: FiniteGroupTable, table_quotient: FiniteGroupTable, k: int = 1
) -> CheckRow:
    """Delta_k(G) <= (2n-1) Delta_k(G/N) + n - 1 for a finite kernel of order n."""
    nk = table_g.order // table_quotient.order
    dg = delta_exhaustive(table_g, k)
    dh = delta_exhaustive(table_quotient, k)
    rhs = (2 * nk - 1) * dh.value + nk - 1
    return CheckRow(
        f"extension: Delta_{k}(G) <= (2n-1)Delta_{k}(H)+n-1",
        dg.value,
        "<=",
        rhs,
        dg.value <= rhs,
        {"kernel": nk, "Delta_k(H)": dh.value},
    )


def product_table(factor_gens: list[list[MatrixSL]], ring: RingSpec) -> FiniteGroupTable:
    """Direct product of matrix groups as block-diagonal matrices."""
    dims = [g[0].n for g in factor_gens]
    n = sum(dims)
    gens: list[MatrixSL] = []
    offset = 0
    for gen_list, dim in zip(factor_gens, dims):
        for g in gen_list:
            rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            for r in range(dim):
                for c in range(dim):
                    rows[offset + r][offset + c] = g.entries[r][c]
            gens.append(MatrixSL(n, ring, tuple(tuple(r) for r in rows)))
        offset += dim
    return enumerate_group(ring, n, gens=gens)


def check_product_bound(
    table_prod: FiniteGroupTable, deltas: list[int], k_total: int
) -> CheckRow:
    """Delta_{k1+...+km}(G1 x ... x Gm) >= sum Delta_{ki}(Gi)."""
    dp = delta_exhaustive(table_prod, k_total)
    rhs = sum(deltas)
    return CheckRow(
        f"product: Delta_{k_total}(prod) >= sum of factor deltas",
        dp.value,
        ">=",
        rhs,
        dp.value >= rhs,
        {"factor_deltas": deltas},
    )


def check_ball_image(
    table_g: FiniteGroupTable, table_h: FiniteGroupTable, s: list[MatrixSL]
) -> CheckRow:
    """Image of B_S(d) under reduction equals the ball of the reduced set, per level."""
    rpt_g = ball_bfs(table_g, s)
    ring_h = table_h.ring
    s_reduced = [
        MatrixSL(m.n, ring_h, tuple(tuple(ring_h.normalize(v) for v in row) for row in m.entries))
        for m in s
    ]
    rpt_h = ball_bfs(table_h, s_reduced)
    dmax = rpt_g.diameter if rpt_g.diameter is not None else int(rpt_g.norms.max())
    holds = True
    for d in range(dmax + 1):
        keys_g = table_g.keys[rpt_g.norms <= d]
        img = set(_reduce_keys(table_g, table_h, keys_g).tolist())
        ball_h = set(table_h.keys[rpt_h.norms <= d].tolist())
        if img != ball_h:
            holds = False
            break
    return CheckRow(
        "ball image: pi(B_S(d)) == B_pi(S)(d) for all d",
        "image",
        "==",
        "ball",
        holds,
        {"levels": dmax + 1},
    )


def check_class_size_bound(table: FiniteGroupTable, delta: int) -> list[CheckRow]:
    """log2|S| > log2|G|/delta - 2 for every normally generating class."""
    generic, _symmetric = class_size_lower(table.order, delta)
    rows = []
    for cls in conjugacy_classes(table):
        if cls.rep_key == table.identity_key:
            continue
        mat = table.matrix_at(table.index_of_key(cls.rep_key))
        if not ball_bfs(table, [mat]).normally_generates:
            continue
        rows.append(
            CheckRow(
                f"class size {cls.size}",
                f"log2({cls.size})",
                ">",
                f"log2({table.order})/{delta} - 2",
                generic.holds_for(cls.size),
                {"threshold_log2": generic.log2_threshold},
            )
        )
    return rows


def check_norm_axioms(table: FiniteGroupTable, s: list[MatrixSL]) -> CheckRow:
    """Norm axioms and conjugation invariance, exhaustively on a small group."""
    rpt = ball_bfs(table, s)
    if table.order > 600:
        raise ValueError("exhaustive axiom check is for small groups")
    dense = rpt._dense
    q = table.ring.modulus
    n = table.n
    mats = [
        tuple(tuple(int(v) for v in row) for row in m)
        for m in table.decode(table.keys)
    ]
    from .ballsearch import _t_inv, _t_key, _t_mul

    def norm_of(m):
        v = dense[_t_key(table.canonical(m), q)]
        return None if v == np.uint16(0xFFFF) else int(v)

    ok = True
    for g in mats:
        ng = norm_of(g)
        if ng is None:
            continue
        if norm_of(_t_inv(g, table.ring)) != ng:
            ok = False
        for h in mats:
            nh = norm_of(h)
            if nh is not None and norm_of(_t_mul(g, h, q, n)) > ng + nh:
                ok = False
            hinv = _t_inv(h, table.ring)
            if norm_of(_t_mul(_t_mul(h, g, q, n), hinv, q, n)) != ng:
                ok = False
    return CheckRow("norm axioms (inverse, subadditive, conjugation)", "axioms", "==", "hold", ok)


def check_ball_multiplicativity(table: FiniteGroupTable, s: list[MatrixSL]) -> CheckRow:
    """B_S(a) * B_S(b) == B_S(a+b) set-wise, all level pairs, on a small group."""
    rpt = ball_bfs(table, s)
    if table.order > 100:
        raise ValueError("set-wise ball products are for tiny groups")
    q = table.ring.modulus
    n = table.n
    from .ballsearch import _t_key, _t_mul

    levels = int(rpt.norms.max())
    balls = []
    for d in range(levels + 1):
        keys = table.keys[rpt.norms <= d]
        balls.append(
            [tuple(tuple(int(v) for v in row) for row in m) for m in table.decode(keys)]
        )
    ok = True
    for a in range(levels + 1):
        for b in range(levels + 1 - a):
            prod = {
                _t_key(table.canonical(_t_mul(x, y, q, n)), q)
                for x in balls[a]
                for y in balls[b]
            }
            target = {_t_key(m, q) for m in balls[min(a + b, levels)]}
            if prod != target:
                ok = False
    return CheckRow("ball products: B(a)B(b) == B(a+b)", "products", "==", "balls", ok)


def check_lipschitz(
    table_g: FiniteGroupTable,
    table_h: FiniteGroupTable,
    s: list[MatrixSL],
) -> CheckRow:
    """nu(psi(g)) <= C ||g||_S with C = max nu(psi(s)), psi the reduction map."""
    rpt_g = ball_bfs(table_g, s)
    ring_h = table_h.ring
    s_red = [
        MatrixSL(m.n, ring_h, tuple(tuple(ring_h.normalize(v) for v in row) for row in m.entries))
        for m in s
    ]
    rpt_h = ball_bfs(table_h, s_red)
    c = max(rpt_h.norm_of(m) for m in s_red)
    img_keys = _reduce_keys(table_g, table_h, table_g.keys)
    dense_h = rpt_h._dense
    ok = True
    worst = 0
    for key_g, norm_g in zip(table_g.keys.tolist(), rpt_g.norms.tolist()):
        if norm_g == 0xFFFF:
            continue
        norm_h = int(dense_h[img_keys[table_g.index_of_key(key_g)]])
        if norm_h > c * norm_g:
            ok = False
        worst = max(worst, norm_h - c * norm_g)
    return CheckRow(
        "Lipschitz: nu(psi(g)) <= C ||g||_S",
        "max slack",
        "<=",
        0,
        ok,
        {"C": c},
    )


def check_nonsqueezing(table: FiniteGroupTable, norm_gens: list[MatrixSL]) -> CheckRow:
    """Delta_1(G) * inf over singleton generating sets of nu(s) >= diam(nu).

    nu is the word norm of norm_gens; the infimum runs over all normally
    generating single elements.
    """
    nu = ball_bfs(table, norm_gens)
    diam_nu = nu.diameter
    d1 = delta_exhaustive(table, 1)
    inf_val = None
    for cls in conjugacy_classes(table):
        if cls.rep_key == table.identity_key:
            continue
        mat = table.matrix_at(table.index_of_key(cls.rep_key))
        if ball_bfs(table, [mat]).normally_generates:
            v = nu.norm_of(mat)
            inf_val = v if inf_val is None else min(inf_val, v)
    lhs = d1.value * inf_val
    return CheckRow(
        "nonsqueezing: Delta_1 * inf max nu(s) >= diam nu",
        lhs,
        ">=",
        diam_nu,
        lhs >= diam_nu,
        {"Delta_1": d1.value, "inf": inf_val},
    )


def check_splitting_bound(
    table_prod: FiniteGroupTable, dims: list[int], k: int
) -> list[CheckRow]:
    """A splitting collection of size k forces Delta(G) >= k.

    For a block-diagonal product table, the kernels N_i (trivial block i)
    split the group; surjectivity of the product map is an order count.
    """
    rows = []
    order = table_prod.order
    factors = []
    n = table_prod.n
    offset = 0
    mats = table_prod.decode(table_prod.keys)
    for dim in dims:
        block = mats[:, offset : offset + dim, offset : offset + dim]
        flat = block.reshape(order, -1)
        factors.append(len({tuple(int(v) for v in row) for row in flat}))
        offset += dim
    prod_orders = 1
    for f in factors:
        prod_orders *= f
    rows.append(
        CheckRow(
            "splitting: product map surjective (order count)",
            order,
            "==",
            prod_orders,
            order == prod_orders,
            {"quotient_orders": factors},
        )
    )
    dk = delta_exhaustive(table_prod, k)
    rows.append(
        CheckRow(
            f"splitting: Delta(G) >= {k} (witnessed by Delta_{k})",
            dk.value,
            ">=",
            k,
            dk.value >= k,
        )
    )
    return rows


def run_small_suite() -> list[CheckRow]:
    """The standard small-group instantiation of every inequality."""
    f2 = RingSpec.prime_field(2)
    f3 = RingSpec.prime_field(3)
    z4 = RingSpec.residue(4)
    z2 = RingSpec.residue(2)

    rows: list[CheckRow] = []
    g24 = enumerate_group(z4, 2)
    g22 = enumerate_group(z2, 2)
    rows.append(check_quotient_bound(g24, g22, k=1))

    g23 = enumerate_group(f3, 2)
    psl23 = enumerate_group(f3, 2, psl=True)
    rows.append(check_extension_bound(g23, psl23, k=1))

    s3_gens = [elementary(1, 2, 1, 2, f2), elementary(2, 1, 1, 2, f2)]
    prod = product_table([s3_gens, s3_gens], f2)
    s3 = enumerate_group(f2, 2)
    d1 = delta_exhaustive(s3, 1)
    rows.append(check_product_bound(prod, [d1.value, d1.value], 2))
    rows.extend(check_splitting_bound(prod, [2, 2], 2))

    s_g = [elementary(1, 2, 1, 2, z4)]
    rows.append(check_ball_image(g24, g22, s_g))
    rows.append(check_lipschitz(g24, g22, s_g))

    rows.append(check_norm_axioms(s3, [elementary(1, 2, 1, 2, f2)]))
    rows.append(check_ball_multiplicativity(s3, [elementary(1, 2, 1, 2, f2)]))
    rows.append(check_nonsqueezing(s3, [elementary(1, 2, 1, 2, f2)]))

    g32 = enumerate_group(f2, 3)
    d1_g32 = delta_exhaustive(g32, 1)
    rows.extend(check_class_size_bound(g32, d1_g32.value))
    return rows
