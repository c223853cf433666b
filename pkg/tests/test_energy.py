import itertools

import pytest
from hypothesis import given, settings, strategies as st

from crystalrc import crystal_base as cb
from crystalrc import energy as en
from crystalrc import harness
from crystalrc import kr_crystal as kr
from crystalrc.cartan import AffType
from crystalrc.kr_crystal import Factor

from oracles import cocharge_kostka_foulkes, kostka_rows, row_insert, weyl_dim_D

A2 = AffType("A1", 2)
A3 = AffType("A1", 3)
D4 = AffType("D1", 4)

A_PAIRS = [(kr.row(s), kr.row(t)) for s, t in [(1, 2), (2, 1), (2, 3), (3, 3), (1, 3)]]
A_PAIRS += [(Factor(2, 1), kr.row(2)), (kr.row(1), Factor(3, 1)), (Factor(2, 1), Factor(3, 1))]


@pytest.mark.parametrize("f2,f1", A_PAIRS)
def test_r_preserves_insertion_tableau(f2, f1):
    for w2, w1 in kr.all_elements(A3, (f2, f1)):
        x, y = en.r_pair(A3, f2, f1, w2, w1)
        assert row_insert(w2 + w1) == row_insert(x + y)
        assert en.r_pair(A3, f1, f2, x, y) == (w2, w1)


@pytest.mark.parametrize("s,t", [(1, 2), (2, 1), (2, 3), (3, 3), (1, 3)])
def test_row_coenergy_counts_boxes_below_first_row(s, t):
    for w2, w1 in kr.all_elements(A2, (kr.row(s), kr.row(t))):
        rows = row_insert(w2 + w1)
        assert en.h_pair(A2, kr.row(s), kr.row(t), w2, w1) == sum(map(len, rows[1:]))


@pytest.mark.parametrize("f2,f1", A_PAIRS[:4] + [(kr.row(2), Factor(2, 1))])
def test_r_commutes_with_affine_operators(f2, f1):
    ct = A3.classical
    for b in kr.all_elements(A3, (f2, f1)):
        rb = en.r_pair(A3, f2, f1, *b)
        for i in cb.nodes(ct):
            c = cb.tensor_f(ct, i, b)
            assert cb.tensor_f(ct, i, rb) == (None if c is None else en.r_pair(A3, f2, f1, *c))
        up = en.e0(A3, (f2, f1), b)
        assert en.e0(A3, (f1, f2), rb) == (None if up is None else en.r_pair(A3, f2, f1, *up))


def test_promotion_examples():
    assert en.promotion(kr.row(3), (1, 1, 3), 3) == (2, 2, 4)
    assert en.promotion(kr.row(2), (3, 4), 3) == (1, 4)
    assert en.f0(A3, (kr.row(2),), ((1, 1),)) is None
    assert en.e0(A3, (kr.row(2),), ((1, 1),)) == ((1, 4),)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=5))
def test_promotion_has_order_n_plus_one(letters):
    w = tuple(sorted(letters))
    f = kr.row(len(w))
    out = w
    for _ in range(4):
        out = en.promotion(f, out, 3)
    assert out == w
    assert en.promotion_inverse(f, en.promotion(f, w, 3), 3) == w


def test_type_d_pair_coenergy():
    for t, s in itertools.product(range(1, 4), repeat=2):
        for p in range(min(s, t) + 1):
            for q in range(min(s, t) - p + 1):
                left = (1,) * (t - p - q) + (2,) * p + (-1,) * q
                assert en.h_pair(D4, kr.row(t), kr.row(s), left, (1,) * s) == p + 2 * q
                want = ((1,) * (s - p - q) + (2,) * p + (-1,) * q, (1,) * t)
                assert en.r_pair(D4, kr.row(t), kr.row(s), left, (1,) * s) == want


KF_CASES = [((2, 1, 0), (1, 1, 1)), ((2, 2, 0), (2, 1, 1)), ((3, 1, 0), (2, 1, 1)),
            ((4, 2, 0), (2, 2, 2)), ((3, 2, 1), (2, 2, 2)), ((3, 2, 1, 0), (2, 2, 1, 1)),
            ((4, 1, 1, 0), (2, 2, 1, 1)), ((2, 2, 1, 1), (2, 1, 1, 1, 1))]


@pytest.mark.parametrize("lam,mu", KF_CASES)
@pytest.mark.parametrize("reverse", [False, True])
def test_one_dimensional_sum_is_cocharge_kostka_foulkes(lam, mu, reverse):
    aff = AffType("A1", len(lam) - 1)
    order = reversed(mu) if reverse else mu
    got = harness.x_poly(aff, tuple(kr.row(s) for s in order), lam)
    want = cocharge_kostka_foulkes(lam, mu)
    assert {int(e): c for e, c in got.items()} == want
    assert got.at_one() == kostka_rows(mu, lam)


@pytest.mark.parametrize("text", ["1,1,1", "2,1", "2,2", "1,2,1", "3,1"])
def test_type_d_sum_over_weights_counts_paths(text):
    fs = kr.parse_factors(text)
    total = sum(weyl_dim_D(lam) * harness.x_poly(D4, fs, lam).at_one()
                for lam in harness.candidate_weights(D4, fs))
    want = 1
    for f in fs:
        want *= len(kr.factor_elements(D4, f))
    assert total == want


@pytest.mark.parametrize("aff,text", [(A3, "2,1,3"), (A3, "2:1,1,2"), (D4, "1,2,2,1")])
def test_energy_vanishes_on_ground_state(aff, text):
    fs = kr.parse_factors(text)
    assert en.d_energy(aff, fs, kr.u_of(aff, fs)) == 0


def test_reorder_and_composite():
    fs = kr.parse_factors("1,2,3")
    b = ((2,), (1, 3), (1, 1, 2))
    nf, nb = en.r_apply_at(A3, fs, b, 1)
    assert nf == kr.parse_factors("1,3,2")
    assert en.reorder(A3, fs, b, [0, 2, 1]) == (nf, nb)
    assert en.reorder(A3, fs, b, [0, 1, 2]) == (fs, b)
    with pytest.raises(ValueError):
        en.reorder(A3, fs, b, [0, 0, 1])
    with pytest.raises(IndexError):
        en.r_apply_at(A3, fs, b, 3)
    right, left, total = en.h_composite(A3, fs[:1], fs[1:], b[:1], b[1:])
    fs1, b1 = en.r_apply_at(A3, fs, b, 2)
    assert total == en.h_at(A3, fs, b, 2) + en.h_at(A3, fs1, b1, 1)
    assert right + left == en.reorder(A3, fs, b, [1, 2, 0])[1]


def test_tail_energy_matches_star():
    fs = kr.parse_factors("2,1,3")
    for b in kr.hw_paths(A3, fs):
        assert en.tail_d(A3, fs, b) == en.d_energy(A3, kr.star_factors(fs), cb.star(A3.classical, b))


def test_unsupported_tables():
    with pytest.raises(NotImplementedError):
        en.build_H_table(AffType("C1", 2), kr.row(1), kr.row(2))
    with pytest.raises(NotImplementedError):
        en.promotion(Factor(2, 2), (1, 1, 2, 2), 3)
