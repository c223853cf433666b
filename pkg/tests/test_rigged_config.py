import pytest
from hypothesis import given, settings, strategies as st

from crystalrc import harness
from crystalrc import kr_crystal as kr
from crystalrc import rigged_config as rcm
from crystalrc.cartan import AffType
from crystalrc.rigged_config import RC

from oracles import kostka_rows

A2, A3, A5, D4 = ("A", 2), ("A", 3), ("A", 5), ("D", 4)


def cartan_matrix(ct):
    """Explicit symmetric Cartan matrix from the Dynkin diagram edges."""
    kind, n = ct
    edges = {(a, a + 1) for a in range(1, n - 1)}
    edges.add((n - 2, n) if kind == "D" else (n - 1, n))
    return [[2 if a == b else (-1 if (a, b) in edges or (b, a) in edges else 0)
             for b in range(1, n + 1)] for a in range(1, n + 1)]


def vacancy_oracle(ct, lengths, L, a, i):
    c = cartan_matrix(ct)
    total = sum(cnt * min(i, j) for (b, j), cnt in L.items() if b == a)
    for b in range(1, ct[1] + 1):
        total -= c[a - 1][b - 1] * sum(min(i, j) for j in lengths[b - 1])
    return total


D4_L = {(1, 1): 1, (1, 2): 2, (1, 3): 1}


def test_three_admissible_configurations():
    configs = set(rcm.enumerate_configs(D4, D4_L, (2, 0, 0, 0)))
    assert configs == {((3, 3), (3, 3), (3,), (3,)), ((3, 2, 1), (3, 3), (3,), (3,)),
                       ((2, 2, 1, 1), (2, 2, 1, 1), (2, 1), (2, 1))}


def test_delta_bar_example():
    rc = RC.make(D4, D4_L, [[(3, 0), (2, 1), (1, 0)], [(3, 0), (3, 0)], [(3, 0)], [(3, 0)]])
    assert rcm.is_valid(rc)
    small, rank = rcm.delta_bar(rc)
    assert rank == -2
    assert small == RC.make(D4, {(1, 2): 2, (1, 3): 1}, [[(3, 0), (2, 1)], [(2, 0), (2, 0)], [(2, 0)], [(2, 0)]])
    assert rcm.delta_bar_inv(small, rank) == rc


def test_delta_vee_example():
    L = {(5, 1): 1, (1, 1): 2, (1, 2): 3, (1, 3): 2}
    rc = RC.make(A5, L, [[(3, 0), (2, 0), (2, 0), (2, 0)], [(2, 0), (2, 0), (1, 0)], [(1, 0), (1, 0)], [(1, 1)], [(1, 0)]])
    small, a = rcm.delta_vee(rc)
    assert a == 2
    assert small == RC.make(A5, {(1, 1): 2, (1, 2): 3, (1, 3): 2},
                            [[(3, 0), (2, 0), (2, 0), (2, 0)], [(2, 0), (2, 0)], [(1, 0)]])
    assert rcm.delta_vee_inv(small, a) == rc


@pytest.mark.parametrize("ct,L,lam", [
    (D4, D4_L, (2, 0, 0, 0)), (A3, {(1, 2): 1, (2, 1): 1, (1, 1): 1}, (2, 1, 1, 0)),
    (A2, {(1, 1): 3}, (1, 1, 1)),
])
def test_vacancy_numbers_match_cartan_matrix(ct, L, lam):
    for rc in rcm.enumerate_rc(ct, L, lam):
        lengths = [rc.partition(b) for b in range(1, ct[1] + 1)]
        for a in range(1, ct[1] + 1):
            for i in range(1, 6):
                assert rcm.vacancy(rc, a, i) == vacancy_oracle(ct, lengths, L, a, i)


@pytest.mark.parametrize("lam,mu", [((2, 1, 0), (1, 1, 1)), ((3, 1, 0), (2, 1, 1)), ((2, 2, 1, 0), (2, 2, 1)),
                                    ((3, 2, 1, 0), (2, 2, 1, 1)), ((2, 2, 2), (2, 2, 2))])
def test_rc_count_is_kostka_number(lam, mu):
    ct = ("A", len(lam) - 1)
    L = {}
    for s in mu:
        L[(1, s)] = L.get((1, s), 0) + 1
    assert len(rcm.enumerate_rc(ct, L, lam)) == kostka_rows(mu, lam)


@pytest.mark.parametrize("ct,L,lam", [
    (D4, D4_L, (2, 0, 0, 0)), (D4, {(1, 1): 2, (1, 2): 1}, (1, 1, 0, 0)),
    (A3, {(1, 2): 2, (2, 1): 1}, (2, 2, 1, 1)), (A2, {(1, 1): 4}, (2, 1, 1)),
])
def test_fermionic_product_equals_rigging_sum(ct, L, lam):
    assert harness.m_fermionic(ct, L, lam) == harness.m_riggings(ct, L, lam)


def test_inadmissible_weights_give_nothing():
    assert rcm.enumerate_rc(A2, {(1, 1): 2}, (3, 0, 0)) == []
    assert rcm.enumerate_configs(D4, {(1, 1): 1}, (0, 0, 0, 1)) == []
    assert rcm.config_sizes(D4, {(1, 1): 1}, (2, 0, 0, 0)) is None


def rc_pool():
    pool = []
    for ct, L in [(D4, {(1, 1): 2, (1, 2): 1}), (A3, {(1, 1): 2, (2, 1): 1, (1, 2): 1}), (A3, {(3, 1): 1, (1, 1): 2})]:
        aff = AffType("A1" if ct[0] == "A" else "D1", ct[1])
        fs = tuple(kr.Factor(r, s) for (r, s), c in sorted(L.items()) for _ in range(c))
        for lam in harness.candidate_weights(aff, fs):
            pool.extend(rcm.enumerate_rc(ct, L, lam))
    return pool


POOL = rc_pool()


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL))
def test_theta_and_delta_round_trips(rc):
    assert rcm.is_valid(rc)
    t = rcm.theta(rc)
    assert rcm.theta(t) == rc and rcm.is_valid(t)
    vac = rcm.vacancies(rc)
    boxes = sum(vac(a, ln) for a, node in enumerate(rc.nu, 1) for ln, _ in node)
    riggings = sum(rg for node in rc.nu for _, rg in node)
    assert rcm.cocharge(t) == rcm.cocharge(rc) + boxes - 2 * riggings
    small, x = rcm.delta_bar(rc)
    assert rcm.is_valid(small)
    assert rcm.delta_bar_inv(small, x) == rc
    assert rcm.delta_tilde(rc) == rcm.delta_tilde_direct(rc)
    assert rcm.rc_from_json(rc.ct, rcm.rc_to_json(rc)) == rc


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([rc for rc in POOL if rc.ct == A3 and rc.Lmap.get((3, 1))]))
def test_delta_vee_agrees_with_box_reductions(rc):
    small, a = rcm.delta_vee(rc)
    assert rcm.delta_vee_inv(small, a) == rc
    cur, letters = rc, []
    for r in (3, 2):
        cur, x = rcm.delta_bar(rcm.i_bar(cur, r))
        letters.append(x)
    cur, x = rcm.delta_bar(cur)
    letters.append(x)
    assert cur == small
    assert [k for k in range(1, 5) if k not in letters] == [a]


def test_rc_dual_is_involution():
    for rc in POOL:
        if rc.ct[0] == "A":
            d = rcm.rc_dual(rc)
            assert rcm.is_valid(d) and rcm.rc_dual(d) == rc


def test_splitting_errors():
    rc = RC.make(A3, {(1, 1): 1}, [])
    with pytest.raises(ValueError):
        rcm.j_bar(rc, 1, 2)
    with pytest.raises(ValueError):
        rcm.i_bar(rc, 2)
    with pytest.raises(ValueError):
        rcm.delta_vee(rc)
    with pytest.raises(ValueError):
        rcm.delta_vee(RC.make(D4, {(1, 1): 1}, []))


def test_text_form():
    rc = RC.make(D4, D4_L, [[(3, 0), (2, 1), (1, 0)], [(3, 0), (3, 0)], [(3, 0)], [(3, 0)]])
    assert str(rc) == "1: 3[0] 2[1] 1[0]; 2: 3[0] 3[0]; 3: 3[0]; 4: 3[0]"
    assert rc.lam == (2, 0, 0, 0)
