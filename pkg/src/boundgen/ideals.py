"""Certificate factories for the reach of a matrix under double commutators.

The central object is the set of ring elements x such that E_{1,n}(x) is a
product of at most d conjugates of A^{+-1}.  The double-commutator closed
form shows this set contains whole ideals at depth 4; summing such ideals
across a generating set decides normal generation and yields explicit,
replayable words for E_{1,n}(1).

Every certificate here carries a parametric word builder: builder(x) is a
ConjWord of fixed length whose evaluation is exactly E_{1,n}(x * scale),
where (scale) is the certified ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import BadIndices, NotHessenberg, PreconditionViolated, UnsupportedRing
from .factorize import elem_conjugacy_normalize
from .hessenberg import is_upper_hessenberg, to_hessenberg, unicol_to_elementary
from .matrices import (
    MatrixSL,
    elementary,
    identity,
    is_scalar,
    as_elementary,
    reduce_ring,
    sigma,
)
from .rings import (
    ALL_PRIMES,
    IdealGen,
    RingSpec,
    divide_exact,
    gcd_many,
    is_unit,
    prime_support_of,
    xgcd,
)
from .words import (
    ConjWord,
    GenSet,
    Letter,
    concat,
    conjugate_word,
    invert,
    power_word,
    reindex,
    substitute,
    transpose_word,
    verify_word,
)


# ---------------------------------------------------------------------------
# double commutators
# ---------------------------------------------------------------------------


def double_commutator(
    a: MatrixSL, i: int, j: int, k: int, l: int, x: int
) -> tuple[MatrixSL, ConjWord]:
    """[[A, E_{i,j}(1)], E_{k,l}(x)] with its length-4 word over {A}.

    Requires i != l, a_{l,i} = 0, j != i, k != l.  The result is computed
    both from the closed form and by direct multiplication; the two must
    agree exactly.
    """
    n = a.n
    ring = a.ring
    for name, ok in (
        ("i != l", i != l),
        ("a[l,i] == 0", a[l, i] == 0),
        ("j != i", j != i),
        ("k != l", k != l),
    ):
        if not ok:
            raise PreconditionViolated(f"double commutator needs {name}")
    b = a.inv()
    x = ring.normalize(x)

    # closed form: column l of the identity gets an increment vector
    col_i = a.col(i)
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    if j != k:
        coef = b[j, k]
        for r in range(n):
            rows[r][l - 1] = ring.normalize(rows[r][l - 1] + x * coef * col_i[r])
    else:
        coef = ring.sub(b[j, j], b[j, i])
        for r in range(n):
            inc = x * coef * col_i[r]
            if r == i - 1:
                inc -= x
            rows[r][l - 1] = ring.normalize(rows[r][l - 1] + inc)
    closed = MatrixSL(n, ring, tuple(tuple(r) for r in rows))

    e1 = elementary(i, j, 1, n, ring)
    e2 = elementary(k, l, x, n, ring)
    inner_mat = a * e1 * b * e1.inv()  # [A, E_{i,j}(1)]
    direct = inner_mat * e2 * inner_mat.inv() * e2.inv()
    if closed != direct:
        raise AssertionError("double commutator closed form disagrees with product")

    # [A,E] = A * (E A^{-1} E^{-1}) is two conjugates of A^{+-1};
    # commutating with E_{k,l}(x) appends the conjugated inverse word
    inner = ConjWord((Letter(0, 1, identity(n, ring)), Letter(0, -1, e1)))
    word = concat(inner, conjugate_word(invert(inner), e2))
    return closed, word


# ---------------------------------------------------------------------------
# depth-4 ideal certificates
# ---------------------------------------------------------------------------


@dataclass
class ECertificate:
    """An ideal certified to sit inside the depth-`depth` elementary reach of
    the generating set.

    builder(x) is a word of exactly `depth` letters over `genset` whose
    evaluation is E_{1,n}(x * scale); (scale) == ideal.
    """

    ideal: IdealGen
    scale: int
    depth: int
    genset: GenSet
    builder: Callable[[int], ConjWord]
    tag: str = ""

    def word_for(self, x: int) -> ConjWord:
        return self.builder(x)

    def target_for(self, x: int) -> MatrixSL:
        ring = self.genset.ring
        n = self.genset.n
        return elementary(1, n, ring.mul(x, self.scale), n, ring)

    def verify(self, x: int) -> None:
        w = self.builder(x)
        if len(w) != self.depth:
            raise AssertionError(f"certificate word has {len(w)} letters != {self.depth}")
        verify_word(w, self.genset, self.target_for(x))


def hessenberg_ideal(a: MatrixSL, i: int, l: int, j: int) -> ECertificate:
    """Depth-4 certificate for ((b_{j,j}-b_{j,i}) a_{i,i} - 1) + sum_{k != i} (a_{k,i})
    inside the reach of an upper Hessenberg matrix.

    Requires n >= 3, l > i + 1 and j outside {i, l}.  The common factor of
    the raw column terms drops out of the ideal sum (c*y is redundant next
    to c*x - 1), so the generator is the gcd of the unit-defect term with
    the bare column entries.
    """
    n = a.n
    ring = a.ring
    if not is_upper_hessenberg(a):
        raise NotHessenberg("hessenberg_ideal needs an upper Hessenberg matrix")
    if n < 3 or not (1 <= i <= n and 1 <= l <= n and 1 <= j <= n):
        raise BadIndices(f"indices out of range for n={n}")
    if l <= i + 1 or j in (i, l):
        raise BadIndices(f"need l > i+1 and j not in {{i, l}}; got i={i}, l={l}, j={j}")
    b = a.inv()
    c = ring.sub(b[j, j], b[j, i])
    gens = [ring.sub(ring.mul(c, a[i, i]), 1)]
    gens += [a[k, i] for k in range(1, n + 1) if k != i]
    t = gcd_many(gens, ring)

    # increment vector of the double commutator, x-independent part
    col_i = a.col(i)
    u = []
    for r in range(1, n + 1):
        val = ring.mul(c, col_i[r - 1])
        if r == i:
            val = ring.sub(val, 1)
        u.append(val)
    assert all(v == 0 for v in u[l - 1:]), "Hessenberg tail not zero"
    t_u, conj_c = unicol_to_elementary(u[: l - 1], l, n, ring)

    genset = GenSet((a,))

    def builder(x: int) -> ConjWord:
        _, word = double_commutator(a, i, j, j, l, x)
        return conjugate_word(word, conj_c)

    cert = ECertificate(
        ideal=IdealGen(t, ring),
        scale=t_u,
        depth=4,
        genset=genset,
        builder=builder,
        tag=f"hessenberg(i={i},l={l},j={j})",
    )
    assert IdealGen(t_u, ring) == cert.ideal, "eliminated generator is not an associate"
    cert.verify(1)
    return cert


def offdiag_ideal(a: MatrixSL, m: int) -> ECertificate:
    """Depth-4 certificate for the ideal of off-diagonal entries of column m.

    Construction: swap column m into position 1 by a signed transposition,
    reduce to Hessenberg form, then take the depth-4 certificate of the
    reduced matrix at (i, l, j) = (1, n, 2) and rescale to the column ideal.
    """
    n = a.n
    ring = a.ring
    if n < 3:
        raise BadIndices("offdiag_ideal needs n >= 3")
    if not 1 <= m <= n:
        raise BadIndices(f"column {m} out of range")
    t = gcd_many([a[k, m] for k in range(1, n + 1) if k != m], ring)

    swap = identity(n, ring) if m == 1 else sigma(1, m, n, ring)
    hc = to_hessenberg(swap * a * swap.inv())
    h = hc.hessenberg
    q = hc.transform * swap  # h == q * a * q^{-1}
    inner = hessenberg_ideal(h, 1, n, 2)
    y = divide_exact(t, inner.scale, ring)
    genset = GenSet((a,))
    dictionary = {0: ConjWord.single(0, 1, q)}

    def builder(x: int) -> ConjWord:
        w = inner.builder(ring.mul(x, y))
        return substitute(w, inner.genset, dictionary, genset, check=False)

    cert = ECertificate(
        ideal=IdealGen(t, ring),
        scale=ring.mul(y, inner.scale),
        depth=4,
        genset=genset,
        builder=builder,
        tag=f"offdiag(m={m})",
    )
    assert cert.scale == ring.normalize(t)
    cert.verify(1)
    return cert


# ---------------------------------------------------------------------------
# scalar obstruction: the ideal detecting Pi(A)
# ---------------------------------------------------------------------------


@dataclass
class ScalarObstruction:
    """Ideal I with: every maximal ideal containing I makes A scalar.

    parts are depth-4 certificates whose ideal sum contains I, so I sits in
    the elementary reach of A at total depth depth_total <= 4n + 4.
    """

    ideal: IdealGen
    parts: list[ECertificate]
    depth_total: int


def scalar_obstruction_ideal(a: MatrixSL) -> ScalarObstruction:
    n = a.n
    ring = a.ring
    if n < 3:
        raise BadIndices("scalar obstruction needs n >= 3")
    hc = to_hessenberg(a)
    h = hc.hessenberg
    b = h.inv()
    genset = GenSet((a,))
    dictionary = {0: ConjWord.single(0, 1, hc.transform)}

    def over_a(cert: ECertificate, tag: str) -> ECertificate:
        inner_gs = cert.genset

        def builder(x: int, _c=cert) -> ConjWord:
            return substitute(_c.builder(x), inner_gs, dictionary, genset, check=False)

        out = ECertificate(cert.ideal, cert.scale, cert.depth, genset, builder, tag)
        out.verify(1)
        return out

    parts: list[ECertificate] = [
        over_a(offdiag_ideal(h, n - 1), "J-offdiag-col-(n-1)"),
        over_a(offdiag_ideal(h, n), "J-offdiag-col-n"),
    ]
    offdiag_entries = [
        h[r, c] for r in range(1, n + 1) for c in range(1, n + 1) if r != c
    ]
    if n >= 4:
        for i in range(2, n - 1):
            parts.append(over_a(hessenberg_ideal(h, i, n, 1), f"J-hess-i{i}"))
        parts.append(over_a(hessenberg_ideal(h, 1, n, n - 1), "J-hess-top"))
        parts.append(over_a(hessenberg_ideal(h, 1, n - 1, n), "J-hess-top2"))
        gens = list(offdiag_entries)
        gens += [ring.sub(ring.mul(b[1, 1], h[i, i]), 1) for i in range(2, n - 1)]
        gens.append(ring.sub(ring.mul(b[n - 1, n - 1], h[1, 1]), 1))
        gens.append(ring.sub(ring.mul(b[n, n], h[1, 1]), 1))
    else:
        parts.append(over_a(hessenberg_ideal(h, 1, 3, 2), "J-hess-top"))
        parts.append(over_a(_transposed_corner_cert(h), "J-hess-transposed"))
        gens = list(offdiag_entries)
        gens.append(ring.sub(ring.mul(b[2, 2], h[1, 1]), 1))
        gens.append(ring.sub(ring.mul(b[1, 1], h[3, 3]), 1))

    ideal = IdealGen(gcd_many(gens, ring), ring)
    part_sum = IdealGen(gcd_many([p.ideal.generator for p in parts], ring), ring)
    assert ideal <= part_sum, "obstruction ideal escapes the certificate sum"
    return ScalarObstruction(ideal, parts, 4 * len(parts))


def _transposed_corner_cert(h: MatrixSL) -> ECertificate:
    """The n = 3 auxiliary certificate via the antidiagonal conjugation.

    With M the antidiagonal (1, -1, 1) matrix, (M H M^{-1})^T is upper
    Hessenberg; its corner certificate transports back to H through a
    transpose (order-reversing) and a sign-flipping swap conjugation.
    """
    ring = h.ring
    m0 = MatrixSL(3, ring, ((0, 0, 1), (0, -1, 0), (1, 0, 0)))
    c_mat = (m0 * h * m0.inv()).transpose()
    inner = hessenberg_ideal(c_mat, 1, 3, 2)
    genset = GenSet((h,))
    swap = sigma(1, 3, 3, ring)
    transposed_base = GenSet((c_mat.transpose(),))  # = M0 H M0^{-1}
    dictionary = {0: ConjWord.single(0, 1, m0)}

    def builder(x: int) -> ConjWord:
        w = inner.builder(ring.neg(x))
        w = transpose_word(w)  # now over {M0 H M0^{-1}}, eval E_{3,1}(-x*s)
        w = conjugate_word(w, swap)  # eval E_{1,3}(x*s)
        return substitute(w, transposed_base, dictionary, genset, check=False)

    cert = ECertificate(inner.ideal, inner.scale, 4, genset, builder, "corner-transposed")
    cert.verify(1)
    return cert


# ---------------------------------------------------------------------------
# prime supports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeSupport:
    """The set of maximal ideals where a matrix reduces to a scalar.

    finite is None exactly for a scalar matrix over Z (every prime works).
    """

    finite: frozenset[int] | None

    @staticmethod
    def all_primes() -> "PrimeSupport":
        return PrimeSupport(None)

    @staticmethod
    def of(primes) -> "PrimeSupport":
        return PrimeSupport(frozenset(primes))

    @property
    def is_all(self) -> bool:
        return self.finite is None

    def is_empty(self) -> bool:
        return self.finite is not None and not self.finite

    def intersect(self, other: "PrimeSupport") -> "PrimeSupport":
        if self.is_all:
            return other
        if other.is_all:
            return self
        return PrimeSupport(self.finite & other.finite)

    def smallest(self) -> int | None:
        if self.is_all:
            return 2
        return min(self.finite) if self.finite else None


def pi_support(a: MatrixSL) -> PrimeSupport:
    """Exact prime support: the maximal ideals p with A scalar mod p.

    A is scalar mod p iff p divides every off-diagonal entry and every
    difference of diagonal entries; the support is the prime support of
    their gcd.  Each reported prime is re-verified by reduction.
    """
    ring = a.ring
    n = a.n
    gens = [a[r, c] for r in range(1, n + 1) for c in range(1, n + 1) if r != c]
    gens += [ring.sub(a[i, i], a[1, 1]) for i in range(2, n + 1)]
    g = gcd_many(gens, ring)
    if ring.is_integers:
        if is_scalar(a):
            return PrimeSupport.all_primes()
        support = prime_support_of(g, ring)
        assert support is not ALL_PRIMES
    else:
        support = prime_support_of(g, ring)
    for p in support:
        target = RingSpec.prime_field(p)
        assert is_scalar(reduce_ring(a, target)), f"support self-check failed at {p}"
    return PrimeSupport.of(support)


# ---------------------------------------------------------------------------
# normal generation
# ---------------------------------------------------------------------------


@dataclass
class Decision:
    """Outcome of the normal-generation test for a set S in SL(n, Z).

    generates=False comes with a common prime: every member of S is scalar
    modulo it, a congruence obstruction.  generates=True comes with a
    replayable word for E_{1,n}(1) in conjugates of S.  Either way the
    verdict is relative to the subgroup normally generated by the elementary
    matrices (assumed to be the whole group when the flag is set).
    """

    generates: bool
    common_prime: int | None = None
    all_scalar: bool = False
    certificate: ConjWord | None = None
    certificate_length: int = 0
    terms: list[tuple[int, int, str]] = field(default_factory=list)
    assume_el_generates: bool = True


class _Realizer:
    """One way to produce E_{1,n}(c * value) for the canonical pool value.

    Direct realizers repeat a conjugated generator letter |c| times;
    parametric ones call a depth-4 certificate builder, so their cost is 4
    regardless of the coefficient.
    """

    def __init__(self, make, cost, kind: str):
        self.make = make
        self.cost = cost
        self.kind = kind


def decide_normal_generation(s: GenSet, assume_el_generates: bool = True) -> Decision:
    """Decide whether S normally generates SL(n, Z) for n >= 3.

    NO: returns the smallest common prime of the supports, a congruence
    obstruction.  YES: assembles a word for E_{1,n}(1) by combining
    certified ideal generators through a Bezout identity; the word replays
    exactly and has at most 4 * |S| * (n+1) letters.  The verdict describes
    the normal closure relative to the elementary matrices; over Z they
    normally generate the whole group, recorded by the assumption flag.
    """
    n = s.n
    ring = s.ring
    if n < 3:
        raise BadIndices("normal generation decision needs n >= 3")
    if not ring.is_integers:
        raise UnsupportedRing("decision procedure runs over Z")
    supports = [pi_support(a) for a in s.elements]
    common = PrimeSupport.all_primes()
    for sup in supports:
        common = common.intersect(sup)
    if common.is_all:
        return Decision(
            False, common_prime=2, all_scalar=True, assume_el_generates=assume_el_generates
        )
    if not common.is_empty():
        return Decision(
            False, common_prime=common.smallest(), assume_el_generates=assume_el_generates
        )

    pool: dict[int, list[_Realizer]] = {}

    def add(canon: int, realizer: _Realizer) -> None:
        if canon != 0:
            pool.setdefault(canon, []).append(realizer)

    for idx, a in enumerate(s.elements):
        espec = as_elementary(a)
        if espec is not None:
            norm = elem_conjugacy_normalize(espec.i, espec.j, n, ring)
            sign = 1 if espec.x >= 0 else -1

            def make_direct(c, _idx=idx, _norm=norm, _sign=sign):
                return power_word(_idx, c * _sign, _norm)

            add(abs(espec.x), _Realizer(make_direct, abs, f"gen{idx}-letter"))
        obstruction = scalar_obstruction_ideal(a)
        for part in obstruction.parts:
            canon = part.ideal.generator
            if canon == 0:
                continue
            unit = 1 if part.scale == canon else -1

            def make_flat(c, _part=part, _idx=idx, _u=unit):
                return reindex(_part.builder(c * _u), {0: _idx})

            add(canon, _Realizer(make_flat, lambda c: 4, f"gen{idx}-{part.tag}"))

    # smallest-first greedy subset whose gcd is the unit ideal
    chosen: list[int] = []
    g = 0
    for value in sorted(pool):
        new_g = gcd_many([g, value], ring)
        if g == 0 or new_g != g:
            chosen.append(value)
            g = new_g
        if is_unit(g, ring):
            break
    assert is_unit(g, ring), "empty support intersection must force a unit ideal sum"
    for value in list(chosen):
        rest = [v for v in chosen if v != value]
        if rest and is_unit(gcd_many(rest, ring), ring):
            chosen = rest

    coeffs = _bezout_chain(chosen, ring)
    pieces = []
    terms = []
    for value, coeff in zip(chosen, coeffs):
        if coeff == 0:
            continue
        realizer = min(pool[value], key=lambda r: r.cost(coeff))
        pieces.append(realizer.make(coeff))
        terms.append((value, coeff, realizer.kind))
    word = concat(*pieces) if pieces else ConjWord.empty()
    verify_word(word, s, elementary(1, n, 1, n, ring))
    assert len(word) <= 4 * len(s.elements) * (n + 1), "certificate exceeds 4k(n+1)"
    return Decision(
        True,
        certificate=word,
        certificate_length=len(word),
        terms=terms,
        assume_el_generates=assume_el_generates,
    )


def _bezout_chain(values: list[int], ring: RingSpec) -> list[int]:
    """Coefficients c_i with sum c_i * values_i = 1, by a left xgcd fold."""
    if not values:
        raise ValueError("empty generator list")
    coeffs = [1]
    g = values[0]
    for v in values[1:]:
        g2, sl, tr = xgcd(g, v, ring)
        coeffs = [ring.mul(c, sl) for c in coeffs] + [tr]
        g = g2
    if ring.normalize(g) != ring.normalize(1):
        raise AssertionError("Bezout fold did not reach the unit ideal")
    return coeffs
