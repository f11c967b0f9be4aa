import pytest

from boundgen.ballsearch import (
    backtrack_word,
    ball_bfs,
    class_closure,
    conjugacy_classes,
    delta_exhaustive,
    enumerate_group,
    is_simple,
    normal_generation_number,
    sl_order_mod,
)
from boundgen.errors import BudgetExceeded
from boundgen.matrices import elementary, identity
from boundgen.rand import SplitMix64
from boundgen.rings import RingSpec
from boundgen.words import GenSet, eval_word

F2 = RingSpec.prime_field(2)
F3 = RingSpec.prime_field(3)
Z2 = RingSpec.residue(2)
Z4 = RingSpec.residue(4)


@pytest.fixture(scope="module")
def s3():
    return enumerate_group(F2, 2)


@pytest.fixture(scope="module")
def sl32():
    return enumerate_group(F2, 3)


@pytest.fixture(scope="module")
def sl24():
    return enumerate_group(Z4, 2)


def test_orders(s3, sl32):
    assert s3.order == 6
    assert enumerate_group(F3, 2).order == 24
    assert sl32.order == 168


def test_order_formula_mod():
    assert sl_order_mod(2, 4) == 48
    assert sl_order_mod(3, 6) == 168 * 5616
    assert sl_order_mod(2, 2) == 6


def test_psl_enumeration():
    psl = enumerate_group(F3, 2, psl=True)
    assert psl.order == 12
    assert len(psl.scalars) == 2


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_group(F2, 3, budget=100)


def test_associativity_sampled(s3):
    rng = SplitMix64(179)
    mats = [s3.matrix_at(i) for i in range(s3.order)]
    for _ in range(100):
        a, b, c = (mats[rng.randint(0, len(mats) - 1)] for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_transposition_class_and_diameter(s3):
    e = elementary(1, 2, 1, 2, F2)
    rpt = ball_bfs(s3, [e])
    assert len(rpt.alphabet) == 3  # the three transpositions of S3
    assert rpt.diameter == 2
    assert rpt.growth == [1, 4, 6]
    assert rpt.normally_generates


def test_ball_zero_is_identity(s3):
    e = elementary(1, 2, 1, 2, F2)
    rpt = ball_bfs(s3, [e])
    assert rpt.growth[0] == 1
    assert rpt.norm_of(identity(2, F2)) == 0


def test_nongenerating_set(s3):
    # a 3-cycle generates only the alternating subgroup
    m = elementary(1, 2, 1, 2, F2) * elementary(2, 1, 1, 2, F2)
    rpt = ball_bfs(s3, [m])
    assert not rpt.normally_generates
    assert rpt.diameter is None
    assert rpt.reached == 3


def test_norm_axioms_exhaustive(s3):
    e = elementary(1, 2, 1, 2, F2)
    rpt = ball_bfs(s3, [e])
    mats = [s3.matrix_at(i) for i in range(s3.order)]
    for g in mats:
        ng = rpt.norm_of(g)
        assert rpt.norm_of(g.inv()) == ng
        for h in mats:
            assert rpt.norm_of(g * h) <= ng + rpt.norm_of(h)
            assert rpt.norm_of(h * g * h.inv()) == ng


def test_backtrack_words_replay(sl32):
    e = elementary(1, 2, 1, 3, F2)
    rpt = ball_bfs(sl32, [e])
    gens = GenSet((e,))
    rng = SplitMix64(181)
    for _ in range(50):
        idx = rng.randint(0, sl32.order - 1)
        m = sl32.matrix_at(idx)
        w = backtrack_word(rpt, m)
        assert len(w) == rpt.norm_of(m)
        assert eval_word(w, gens) == m


def test_sl32_diameter_bound(sl32):
    rpt = ball_bfs(sl32, [elementary(1, 2, 1, 3, F2)])
    assert rpt.normally_generates
    assert rpt.diameter <= 24  # 12(n-1) with one generator


def test_conjugacy_classes(s3, sl32):
    assert sorted(c.size for c in conjugacy_classes(s3)) == [1, 2, 3]
    sizes = sorted(c.size for c in conjugacy_classes(sl32))
    assert sizes == [1, 21, 24, 24, 42, 56]
    assert sum(sizes) == 168


def test_is_simple(s3, sl32):
    assert not is_simple(s3)
    assert is_simple(sl32)


def test_delta_s3(s3):
    d1 = delta_exhaustive(s3, 1)
    assert d1.attained and d1.value == 2
    dall = delta_exhaustive(s3, None)
    assert dall.value == 2


def test_delta_simple_shortcut(sl32):
    d1 = delta_exhaustive(sl32, 1)
    d5 = delta_exhaustive(sl32, 5)
    assert d5.simple_shortcut
    assert d5.value == d1.value


def test_delta_monotone(sl24):
    d1 = delta_exhaustive(sl24, 1)
    d2 = delta_exhaustive(sl24, 2)
    assert d1.attained and d2.attained
    assert d1.value <= d2.value


def test_normal_generation_number(sl24, s3):
    assert normal_generation_number(sl24) == 1
    assert normal_generation_number(s3) == 1


def test_quotient_ball_compat(sl24):
    # reduction maps level sets onto level sets
    h = enumerate_group(Z2, 2)
    s = [elementary(1, 2, 1, 2, Z4)]
    rpt_g = ball_bfs(sl24, s)
    s_red = [elementary(1, 2, 1, 2, Z2)]
    rpt_h = ball_bfs(h, s_red)
    for d in range(rpt_g.diameter + 1):
        keys_g = sl24.keys[rpt_g.norms <= d]
        mats = sl24.decode(keys_g) % 2
        img = set(h.canonical_keys(mats).tolist())
        ball_h = set(h.keys[rpt_h.norms <= d].tolist())
        assert img == ball_h


def test_ball_multiplicativity_setwise(s3):
    e = elementary(1, 2, 1, 2, F2)
    rpt = ball_bfs(s3, [e])
    mats_by_level = {}
    for d in range(rpt.diameter + 1):
        keys = s3.keys[rpt.norms <= d]
        mats_by_level[d] = [
            tuple(tuple(int(v) for v in row) for row in m) for m in s3.decode(keys)
        ]
    from boundgen.ballsearch import _t_key, _t_mul

    for a in range(rpt.diameter + 1):
        for b in range(rpt.diameter + 1 - a):
            prod = {
                _t_key(_t_mul(x, y, 2, 2), 2)
                for x in mats_by_level[a]
                for y in mats_by_level[b]
            }
            assert prod == {_t_key(m, 2) for m in mats_by_level[a + b]}


def test_class_closure_membership_error(s3):
    z6 = RingSpec.residue(6)
    with pytest.raises(Exception):
        ball_bfs(s3, [elementary(1, 2, 1, 2, z6)])


def test_custom_generator_subgroup():
    # block scalars only: the subgroup generated by a 3-cycle
    m = elementary(1, 2, 1, 2, F2) * elementary(2, 1, 1, 2, F2)
    table = enumerate_group(F2, 2, gens=[m])
    assert table.order == 3


def test_psl_coincides_with_sl_for_trivial_scalars(sl32):
    # over F2 the only cube root of unity is 1, so the projective table
    # has the same 168 elements
    psl = enumerate_group(F2, 3, psl=True)
    assert psl.order == sl32.order == 168
