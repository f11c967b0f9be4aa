"""Exact breadth-first enumeration of conjugation-invariant balls in finite
matrix groups over Z/l or F_p.

Group elements are packed into positional integer keys (entry[idx] * q^idx,
row-major), which index a dense norm array; frontiers move through numpy in
batches, so the million-element groups stay within a few seconds while the
results are bit-identical to a scalar reference.  The BFS is level
synchronous: norms depend only on the level sets, never on visit order.

The edge alphabet of a ball search is the full conjugacy-class closure of
S and its inverses, computed first by an orbit walk under the group's own
generators, so word norms match the definition over conjugates exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceeded, DimMismatch, RingMismatch
from .matrices import MatrixSL, elementary, identity
from .rings import RingSpec, factorize, is_unit
from .witness import sl_order
from .words import ConjWord, GenSet, Letter

DEFAULT_BUDGET = 2 ** 24
DENSE_KEY_LIMIT = 2 ** 27
_SENT = np.uint16(0xFFFF)

Mat = tuple  # tuple-of-tuples integer matrix inside this module


# ---------------------------------------------------------------------------
# tuple-matrix helpers
# ---------------------------------------------------------------------------


def _t_mul(a: Mat, b: Mat, q: int, n: int) -> Mat:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def _t_identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _t_key(m: Mat, q: int) -> int:
    key = 0
    mult = 1
    for row in m:
        for v in row:
            key += v * mult
            mult *= q
    return key


def _t_inv(m: Mat, ring: RingSpec) -> Mat:
    return MatrixSL(len(m), ring, m).inv().entries


def sl_order_mod(n: int, l: int) -> int:
    """|SL(n, Z/l)|, multiplicative over prime powers."""
    out = 1
    for p, e in factorize(l).items():
        out *= p ** ((e - 1) * (n * n - 1)) * sl_order(n, p)
    return out


def _scalars(n: int, ring: RingSpec) -> list[int]:
    """Units lambda with lambda^n = 1: the scalar matrices in SL(n, ring)."""
    q = ring.modulus
    return [
        lam for lam in range(1, q) if is_unit(lam, ring) and pow(lam, n, q) == 1
    ]


# ---------------------------------------------------------------------------
# group tables
# ---------------------------------------------------------------------------


@dataclass
class FiniteGroupTable:
    """All elements of a finite matrix group, interned by positional key.

    For psl tables, elements are scalar-coset representatives: the member of
    the coset with the least key.  keys is sorted; the position of a key in
    it is the element's dense index.
    """

    ring: RingSpec
    n: int
    psl: bool
    keys: np.ndarray
    gens: list[Mat]
    scalars: list[int]

    _powers: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        q = self.ring.modulus
        self._powers = np.array(
            [q ** i for i in range(self.n * self.n)], dtype=np.int64
        )

    @property
    def order(self) -> int:
        return int(self.keys.size)

    @property
    def key_space(self) -> int:
        return self.ring.modulus ** (self.n * self.n)

    # -- scalar/batch key codecs -----------------------------------------

    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(mats.shape[0], -1).astype(np.int64)
        return flat @ self._powers

    def decode(self, keys: np.ndarray) -> np.ndarray:
        q = self.ring.modulus
        m = self.n * self.n
        rest = keys.astype(np.int64).copy()
        out = np.empty((keys.size, m), dtype=np.int64)
        for idx in range(m):
            out[:, idx] = rest % q
            rest //= q
        return out.reshape(keys.size, self.n, self.n)

    def canonical_keys(self, mats: np.ndarray) -> np.ndarray:
        """Keys of the matrices, minimized over scalar multiples when psl."""
        q = self.ring.modulus
        if not self.psl:
            return self.encode(mats)
        best = None
        for lam in self.scalars:
            cand = self.encode((mats * lam) % q)
            best = cand if best is None else np.minimum(best, cand)
        return best

    def canonical(self, m: Mat) -> Mat:
        if not self.psl:
            return m
        q = self.ring.modulus
        return min(
            (
                tuple(tuple(v * lam % q for v in row) for row in m)
                for lam in self.scalars
            ),
            key=lambda t: _t_key(t, q),
        )

    def key_of(self, m: Mat) -> int:
        return _t_key(self.canonical(m), self.ring.modulus)

    def index_of_key(self, key: int) -> int:
        pos = int(np.searchsorted(self.keys, key))
        if pos >= self.keys.size or self.keys[pos] != key:
            raise KeyError(f"key {key} is not a group element")
        return pos

    def matrix_at(self, index: int) -> MatrixSL:
        mat = self.decode(self.keys[index : index + 1])[0]
        return MatrixSL(self.n, self.ring, tuple(tuple(int(v) for v in row) for row in mat))

    def contains(self, m: MatrixSL) -> bool:
        try:
            self.index_of_key(self.key_of(m.entries))
            return True
        except KeyError:
            return False

    @property
    def identity_key(self) -> int:
        return self.key_of(_t_identity(self.n))


def enumerate_group(
    ring: RingSpec,
    n: int,
    psl: bool = False,
    budget: int = DEFAULT_BUDGET,
    gens: list[MatrixSL] | None = None,
) -> FiniteGroupTable:
    """Orbit closure of the generators under right multiplication.

    Default generators are the E_{i,j}(+-1), which generate all of
    SL(n, Z/l); in that case the element count is checked against the
    closed-form order, certifying completeness.
    """
    if ring.modulus is None:
        raise RingMismatch("enumeration needs a finite coefficient ring")
    if n < 2:
        raise DimMismatch("enumeration needs n >= 2")
    q = ring.modulus
    if q ** (n * n) > DENSE_KEY_LIMIT:
        raise BudgetExceeded(
            f"key space {q}^{n * n} exceeds the dense index limit {DENSE_KEY_LIMIT}"
        )
    full_group = gens is None
    if full_group:
        gen_mats = [
            elementary(i, j, v, n, ring)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if i != j
            for v in (1, q - 1)
        ]
    else:
        gen_mats = list(gens)
    gens_t: list[Mat] = []
    for g in gen_mats:
        if g.ring != ring or g.n != n:
            raise RingMismatch("generator ring/dimension mismatch")
        for m in (g.entries, g.inv().entries):
            if m not in gens_t:
                gens_t.append(m)

    scalars = _scalars(n, ring) if psl else [1]
    table = FiniteGroupTable(ring, n, psl, np.empty(0, dtype=np.int64), gens_t, scalars)

    seen = np.zeros(table.key_space, dtype=bool)
    start = np.array([table.identity_key], dtype=np.int64)
    seen[start] = True
    collected = [start]
    frontier = start
    total = 1
    gen_arrays = [np.array(g, dtype=np.int64) for g in gens_t]
    while frontier.size:
        mats = table.decode(frontier)
        parts = []
        for g in gen_arrays:
            keys = table.canonical_keys(mats @ g % q)
            fresh = np.unique(keys[~seen[keys]])
            if fresh.size:
                seen[fresh] = True
                parts.append(fresh)
        frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        total += int(frontier.size)
        if total > budget:
            raise BudgetExceeded(f"group exceeds the element budget {budget}")
        collected.append(frontier)
    keys = np.sort(np.concatenate(collected))
    table.keys = keys
    if full_group:
        expected = sl_order_mod(n, q)
        if psl:
            expected //= len(scalars)
        assert table.order == expected, (
            f"enumerated {table.order} elements, closed form gives {expected}"
        )
    return table


# ---------------------------------------------------------------------------
# conjugation-invariant ball BFS
# ---------------------------------------------------------------------------


@dataclass
class AlphabetEntry:
    """One conjugate of a generator^{+-1}: matrix = conj * S[gen]^exp * conj^{-1}."""

    mat: Mat
    gen: int
    exp: int
    conj: Mat


@dataclass
class BallReport:
    """Exact norms of every group element with respect to conj(S^{+-1}).

    norms is aligned with table.keys; 0xFFFF marks elements outside the
    normal closure (norm infinity).  diameter is None when S does not
    normally generate.
    """

    table: FiniteGroupTable
    genset: list[MatrixSL]
    norms: np.ndarray
    growth: list[int]
    alphabet: list[AlphabetEntry]
    _dense: np.ndarray = field(repr=False, default=None)

    @property
    def reached(self) -> int:
        return int((self.norms != _SENT).sum())

    @property
    def normally_generates(self) -> bool:
        return self.reached == self.table.order

    @property
    def diameter(self) -> int | None:
        if not self.normally_generates:
            return None
        return int(self.norms.max())

    def norm_of(self, m: MatrixSL) -> int | None:
        v = self._dense[self.table.key_of(m.entries)]
        return None if v == _SENT else int(v)


def class_closure(table: FiniteGroupTable, s: list[MatrixSL]) -> list[AlphabetEntry]:
    """conj_G(S^{+-1}) with a conjugator recorded per element.

    Orbit walk under the table's own generators; the identity never enters
    the alphabet (it cannot move a BFS frontier).
    """
    q = table.ring.modulus
    n = table.n
    ident = _t_identity(n)
    id_key = table.key_of(ident)
    gens_with_inv = [(g, _t_inv(g, table.ring)) for g in table.gens]
    entries: dict[int, AlphabetEntry] = {}
    for gi, mat in enumerate(s):
        if mat.ring != table.ring or mat.n != table.n:
            raise RingMismatch("generator ring/dimension differs from the table")
        if not table.contains(mat):
            raise KeyError("generator is not an element of the group table")
        for exp in (1, -1):
            base = mat.entries if exp == 1 else mat.inv().entries
            base = table.canonical(base)
            start_key = _t_key(base, q)
            if start_key == id_key:
                continue
            if start_key not in entries:
                entries[start_key] = AlphabetEntry(base, gi, exp, ident)
            queue = [(base, ident)]
            local_seen = {start_key}
            while queue:
                cur, conj = queue.pop()
                for g, ginv in gens_with_inv:
                    new = table.canonical(_t_mul(_t_mul(g, cur, q, n), ginv, q, n))
                    k = _t_key(new, q)
                    if k in local_seen:
                        continue
                    local_seen.add(k)
                    new_conj = _t_mul(g, conj, q, n)
                    if k not in entries:
                        entries[k] = AlphabetEntry(new, gi, exp, new_conj)
                    queue.append((new, new_conj))
    return [entries[k] for k in sorted(entries)]


def ball_bfs(table: FiniteGroupTable, s) -> BallReport:
    """Exact word norms for the generating set s (GenSet or list of MatrixSL)."""
    mats = list(s.elements) if isinstance(s, GenSet) else list(s)
    q = table.ring.modulus
    alphabet = class_closure(table, mats)
    dense = np.full(table.key_space, _SENT, dtype=np.uint16)
    id_key = table.identity_key
    dense[id_key] = 0
    frontier = np.array([id_key], dtype=np.int64)
    growth = [1]
    alpha_arrays = [np.array(e.mat, dtype=np.int64) for e in alphabet]
    level = 0
    while frontier.size:
        level += 1
        mats_arr = table.decode(frontier)
        parts = []
        for a in alpha_arrays:
            keys = table.canonical_keys(mats_arr @ a % q)
            fresh = np.unique(keys[dense[keys] == _SENT])
            if fresh.size:
                dense[fresh] = level
                parts.append(fresh)
        frontier = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        if frontier.size:
            growth.append(growth[-1] + int(frontier.size))
    norms = dense[table.keys]
    return BallReport(table, mats, norms, growth, alphabet, dense)


def backtrack_word(report: BallReport, target: MatrixSL) -> ConjWord:
    """A word of exactly ||target|| letters replaying to the target element.

    Walks the BFS levels down through the alphabet.  For psl tables the
    letters multiply to the target only up to a scalar.
    """
    table = report.table
    q = table.ring.modulus
    n = table.n
    cur = table.canonical(target.entries)
    d = report._dense[_t_key(cur, q)]
    if d == _SENT:
        raise KeyError("target is outside the normal closure")
    letters: list[Letter] = []
    inv_cache = {id(e): _t_inv(e.mat, table.ring) for e in report.alphabet}
    for level in range(int(d), 0, -1):
        for entry in report.alphabet:
            prev = table.canonical(_t_mul(cur, inv_cache[id(entry)], q, n))
            if report._dense[_t_key(prev, q)] == level - 1:
                letters.append(
                    Letter(entry.gen, entry.exp, MatrixSL(n, table.ring, entry.conj))
                )
                cur = prev
                break
        else:  # pragma: no cover
            raise AssertionError("BFS level structure is inconsistent")
    letters.reverse()
    return ConjWord(tuple(letters))


# ---------------------------------------------------------------------------
# conjugacy classes and exhaustive delta
# ---------------------------------------------------------------------------


@dataclass
class ConjClass:
    rep_key: int
    keys: list[int]

    @property
    def size(self) -> int:
        return len(self.keys)


def conjugacy_classes(table: FiniteGroupTable, limit: int = 10 ** 5) -> list[ConjClass]:
    """Partition of the group into conjugacy classes (orbit walk per class)."""
    if table.order > limit:
        raise BudgetExceeded(f"class partition of {table.order} elements refused")
    q = table.ring.modulus
    n = table.n
    gens_with_inv = [(g, _t_inv(g, table.ring)) for g in table.gens]
    assigned: set[int] = set()
    out: list[ConjClass] = []
    for key in table.keys.tolist():
        if key in assigned:
            continue
        rep = tuple(
            tuple(int(v) for v in row) for row in table.decode(np.array([key]))[0]
        )
        members = [key]
        assigned.add(key)
        queue = [rep]
        while queue:
            cur = queue.pop()
            for g, ginv in gens_with_inv:
                new = table.canonical(_t_mul(_t_mul(g, cur, q, n), ginv, q, n))
                k = _t_key(new, q)
                if k not in assigned:
                    assigned.add(k)
                    members.append(k)
                    queue.append(new)
        out.append(ConjClass(key, sorted(members)))
    return out


def is_simple(table: FiniteGroupTable) -> bool:
    """True iff every nontrivial element normally generates the group."""
    if table.order <= 1:
        return False
    for cls in conjugacy_classes(table):
        if cls.rep_key == table.identity_key:
            continue
        if not ball_bfs(table, [table.matrix_at(table.index_of_key(cls.rep_key))]).normally_generates:
            return False
    return True


@dataclass
class DeltaReport:
    """Exact sup of diameters over normally generating sets of size <= k.

    attained=False encodes the empty-supremum convention (no normally
    generating set of the allowed size exists); value is None in that case.
    """

    k: int
    attained: bool
    value: int | None
    witness: list[MatrixSL]
    simple_shortcut: bool
    checked_sets: int


def delta_exhaustive(
    table: FiniteGroupTable, k: int | None = 1, set_budget: int = 250_000
) -> DeltaReport:
    """Delta_k by exhaustive enumeration of candidate sets up to conjugacy.

    k=None ranges over all set sizes (the unqualified supremum).  Candidate
    sets are pruned by simultaneous conjugacy; sets containing the identity
    are skipped since removing the identity never changes the norm.  For
    simple groups and k > 1 the single-generator value is returned directly.
    """
    if k is not None and k >= 2 and table.order > 10 ** 4:
        raise BudgetExceeded("exhaustive delta for k >= 2 needs |G| <= 10^4")
    classes = conjugacy_classes(table)
    id_key = table.identity_key

    best: int | None = None
    witness: list[MatrixSL] = []
    checked = 0
    for cls in classes:
        if cls.rep_key == id_key:
            continue
        mat = table.matrix_at(table.index_of_key(cls.rep_key))
        rpt = ball_bfs(table, [mat])
        checked += 1
        if rpt.normally_generates and (best is None or rpt.diameter > best):
            best = rpt.diameter
            witness = [mat]
    if k == 1:
        return DeltaReport(1, best is not None, best, witness, False, checked)
    if best is not None and is_simple(table):
        return DeltaReport(k or table.order, True, best, witness, True, checked)

    nontrivial = [key for key in table.keys.tolist() if key != id_key]
    max_size = len(nontrivial) if k is None else min(k, len(nontrivial))
    perms = _conjugation_permutations(table)
    seen_canon: set[tuple[int, ...]] = set()
    from itertools import combinations

    for size in range(2, max_size + 1):
        for combo in combinations(range(len(nontrivial)), size):
            keys = tuple(nontrivial[i] for i in combo)
            canon = min(
                tuple(sorted(perm[key] for key in keys)) for perm in perms
            )
            if canon in seen_canon:
                continue
            seen_canon.add(canon)
            checked += 1
            if checked > set_budget:
                raise BudgetExceeded(f"candidate sets exceed budget {set_budget}")
            mats = [table.matrix_at(table.index_of_key(key)) for key in keys]
            rpt = ball_bfs(table, mats)
            if rpt.normally_generates and (best is None or rpt.diameter > best):
                best = rpt.diameter
                witness = mats
    return DeltaReport(
        k if k is not None else table.order, best is not None, best, witness, False, checked
    )


def _conjugation_permutations(table: FiniteGroupTable) -> list[dict[int, int]]:
    """key -> key map of conjugation by each group element; small groups only."""
    if table.order > 400:
        raise BudgetExceeded("simultaneous-conjugacy pruning needs |G| <= 400")
    q = table.ring.modulus
    n = table.n
    mats = [
        tuple(tuple(int(v) for v in row) for row in m) for m in table.decode(table.keys)
    ]
    inv = {i: _t_inv(m, table.ring) for i, m in enumerate(mats)}
    perms = []
    for i, g in enumerate(mats):
        perm = {}
        for x in mats:
            perm[_t_key(table.canonical(x), q)] = _t_key(
                table.canonical(_t_mul(_t_mul(g, x, q, n), inv[i], q, n)), q
            )
        perms.append(perm)
    return perms


def normal_generation_number(table: FiniteGroupTable, cap: int = 3) -> int:
    """Smallest k admitting a normally generating set of size k."""
    for k in range(1, cap + 1):
        rpt = delta_exhaustive(table, k)
        if rpt.attained:
            return k
    raise BudgetExceeded(f"no normally generating set of size <= {cap} found")
