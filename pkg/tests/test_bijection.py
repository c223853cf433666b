import pytest
from hypothesis import given, settings, strategies as st

from crystalrc import bijection as bj
from crystalrc import cartan
from crystalrc import crystal_base as cb
from crystalrc import energy
from crystalrc import kr_crystal as kr
from crystalrc import rigged_config as rcm
from crystalrc.cartan import AffType
from crystalrc.rigged_config import RC

A3 = AffType("A1", 3)
D4 = AffType("D1", 4)


def test_d4_example():
    fs = kr.parse_factors("1,2,2,1")
    b = ((-3,), (2, 3), (1, 2), (1,))
    rc = bj.phi_bar(D4, fs, b)
    assert rc == RC.make(D4.classical, kr.multiplicity_array(D4, fs),
                         [[(2, 0), (1, 0), (1, 0)], [(1, 1), (1, 0)], [(1, 0)], [(1, 0)]])
    assert bj.phi_bar_inv(D4, fs, rc) == b
    rh = kr.rh_hw(D4, fs, b)
    assert bj.phi_bar(D4, fs[:-1], rh) == rcm.delta_tilde(rc)[0]
    assert bj.phi_bar(D4, fs[:-1], rh) == RC.make(D4.classical, kr.multiplicity_array(D4, fs[:-1]),
                                                  [[(2, 0), (1, 0)], [(1, 0)]])


def test_single_boxes_give_empty_configuration_on_ground_state():
    fs = kr.parse_factors("1,1,1")
    rc = bj.phi_bar(A3, fs, kr.u_of(A3, fs))
    assert all(node == () for node in rc.nu)


CORPUS = [(A3, "1,2,1"), (A3, "2:1,1,2"), (A3, "2,3:1"), (A3, "1v,1,2"), (A3, "2v,1,1"),
          (A3, "2:2,1"), (D4, "1,2,1"), (D4, "2,2"), (D4, "1,1,1,1"), (D4, "3,1")]
PATHS = [(aff, kr.parse_factors(t), b) for aff, t in CORPUS for b in kr.hw_paths(aff, kr.parse_factors(t))]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PATHS))
def test_round_trip_and_statistics(case):
    aff, fs, b = case
    ct = aff.classical
    rc = bj.phi_bar(aff, fs, b)
    assert rcm.is_valid(rc)
    assert rc.lam == cartan.normalize(ct, cb.wt(ct, b))
    assert bj.phi_bar_inv(aff, fs, rc) == b
    assert bj.phi_tilde_inv(aff, fs, bj.phi_tilde(aff, fs, b)) == b
    if not any(f.dual for f in fs) and not any(f.r >= 2 and f.s >= 2 for f in fs):
        assert energy.d_energy(aff, fs, b) == rcm.cocharge(bj.phi_tilde(aff, fs, b))


@pytest.mark.parametrize("aff,text", CORPUS)
def test_operation_squares(aff, text):
    fs = kr.parse_factors(text)
    for b in kr.hw_paths(aff, fs):
        assert bj.check_bijops(aff, fs, b) == []


@pytest.mark.parametrize("aff,text", CORPUS)
def test_bijection_is_onto(aff, text):
    fs = kr.parse_factors(text)
    L = kr.multiplicity_array(aff, fs)
    images = {bj.phi_bar(aff, fs, b) for b in kr.hw_paths(aff, fs)}
    weights = {rc.lam for rc in images}
    pool = {rc for lam in weights for rc in rcm.enumerate_rc(aff.classical, L, lam)}
    assert images == pool


def test_trace_records_every_step():
    fs = kr.parse_factors("1,2,2,1")
    b = ((-3,), (2, 3), (1, 2), (1,))
    tr = bj.Trace()
    rc = bj.phi_bar(D4, fs, b, trace=tr)
    names = [s.name for s in tr.steps]
    assert names[0] == "lh/delta_bar" and names.count("ls/j_bar") == 2
    assert tr.steps[0].letter == -3
    back = bj.Trace()
    bj.phi_bar_inv(D4, fs, rc, trace=back)
    assert [s.name for s in back.steps] == names
    assert tr.to_json()[0]["letter"] == "-3"


def test_errors():
    fs = kr.parse_factors("1,1")
    with pytest.raises(ValueError):
        bj.phi_bar(A3, fs, ((1,), (2,)))
    with pytest.raises(ValueError):
        bj.phi_bar(AffType("C1", 2), fs, ((1,), (1,)))
    wrong = RC.make(A3.classical, {(1, 1): 3}, [])
    with pytest.raises(ValueError):
        bj.phi_bar_inv(A3, fs, wrong)
    bad = RC.make(A3.classical, {(1, 1): 2}, [[(1, 5)]])
    with pytest.raises(ValueError):
        bj.phi_bar_inv(A3, fs, bad)
