"""Acceptance criteria 1-8, each printing one PASS/FAIL line."""

import functools

import pytest

from crystalrc import crystal_base as cb
from crystalrc import energy
from crystalrc import harness
from crystalrc import kr_crystal as kr
from crystalrc import rigged_config as rcm
from crystalrc.cartan import AffType

TYPE_A = [AffType("A1", n) for n in (1, 2, 3)]
D4 = AffType("D1", 4)
FOLDINGS = [AffType("C1", 2), AffType("B1", 3), AffType("A2odd", 2),
            AffType("A2even", 2), AffType("A2evenDagger", 2), AffType("D2", 2)]
FOLDED_LISTS = [kr.parse_factors(t) for t in ("1", "2", "1,1", "1,2", "2,2")]


def main_corpus():
    """Type A rows and columns of total size <= 6 for n <= 3, and D4 rows of total size <= 6."""
    out = [(aff, harness.factor_lists(aff, 6, columns=True)) for aff in TYPE_A]
    out.append((D4, harness.factor_lists(D4, 6)))
    return out


def dual_corpus():
    """Type A lists of total size <= 4 that contain at least one dual row."""
    out = []
    for aff in TYPE_A:
        lists = [fs for fs in harness.factor_lists(aff, 4, duals=True) if any(f.dual for f in fs)]
        out.append((aff, lists))
    return out


@functools.lru_cache(maxsize=None)
def bijection_reports():
    return [harness.verify_bijection(aff, lists) for aff, lists in main_corpus()]


@functools.lru_cache(maxsize=None)
def rc_core_reports():
    return [harness.verify_rc_core(aff, lists) for aff, lists in main_corpus()]


def checks_named(reports, *names):
    return [c for r in reports for c in r.checks if c.name in names]


@pytest.fixture
def announce(capsys):
    def emit(number, title, checks):
        failed = [c for c in checks if not c.passed]
        status = "PASS" if checks and not failed else "FAIL"
        detail = f"{len(checks)} checks" if not failed else f"{failed[0].name}: {failed[0].detail}"
        with capsys.disabled():
            print(f"\n{status} criterion {number}: {title} ({detail})")
        assert checks and not failed, [c.to_json() for c in failed]
    return emit


def test_criterion_1_worked_examples(announce):
    announce(1, "worked examples", harness.worked_examples().checks)


def test_criterion_2_x_equals_m(announce):
    checks = []
    for aff, lists in main_corpus():
        checks.extend(harness.verify_xm(aff, lists).checks)
    L = kr.multiplicity_array(D4, kr.parse_factors("1,2,2,3"))
    count = len(rcm.enumerate_configs(D4.classical, L, (2, 0, 0, 0)))
    checks.append(harness.Check("three configurations for 1,2,2,3 at 2 Lambda_1", count == 3, f"{count}"))
    announce(2, "X = M on type A n <= 3 and D4, total size <= 6", checks)


def test_criterion_3_folded_identities(announce):
    checks = []
    for x in FOLDINGS:
        checks.extend(harness.verify_xm(x, FOLDED_LISTS).checks)
        bad = [e for fs in FOLDED_LISTS for lam in harness.candidate_weights(x, fs)
               for e, _ in harness.x_poly(x, fs, lam).items() if (2 * e).denominator != 1]
        checks.append(harness.Check(f"half-integer exponents {x}", not bad, str(bad[:1])))
    announce(3, "X = VX = VM = M on the six foldings", checks)


def test_criterion_4_statistics(announce):
    announce(4, "D = cc . phi_tilde", checks_named(bijection_reports(), "D = cc . phi_tilde"))


def test_criterion_5_commutations(announce):
    checks = checks_named(rc_core_reports(), "commutation relations")
    checks += checks_named(bijection_reports(), "operation squares (ls, lh, rs, rh, *, R, lb, rb, dual)",
                           "weight predictor around the delta squares")
    announce(5, "commutation relations, operation squares and weight predictor", checks)


def test_criterion_6_energy(announce):
    checks = []
    for aff in TYPE_A[1:] + [D4]:
        checks.extend(harness.verify_energy(aff, harness.atomic_triples(aff, 3, columns=True)).checks)
    announce(6, "Yang-Baxter, H identities, H along 0-arrows, p + 2q, tail energy", checks)


def test_criterion_7_virtual(announce):
    checks = []
    for x in FOLDINGS:
        checks.extend(harness.verify_virtual(x, FOLDED_LISTS, max_s=3).checks)
    announce(7, "virtual axioms, divisibility, delta-hat closure, image equality, summand energies", checks)


def involution_failures(aff, lists) -> list:
    """star twice and R twice on every element (hw elements for large products)."""
    ct = aff.classical
    fails = []
    for fs in lists:
        small = harness._tensor_size(aff, fs) <= harness.EXHAUSTIVE_LIMIT
        for b in (kr.all_elements(aff, fs) if small else kr.hw_paths(aff, fs)):
            if cb.star(ct, cb.star(ct, b)) != b:
                fails.append(f"star {cb.format_path(b)}")
            for j in range(1, len(fs)):
                nf, nb = energy.r_apply_at(aff, fs, b, j)
                if energy.r_apply_at(aff, nf, nb, j) != (tuple(fs), b):
                    fails.append(f"R{j} {cb.format_path(b)}")
    return fails


def test_criterion_8_round_trips(announce):
    checks = checks_named(bijection_reports(), "phi_bar_inv . phi_bar = id")
    checks += checks_named(rc_core_reports(), "theta is an involution", "delta_bar_inv . delta_bar = id",
                           "delta_vee round trip and (delta_bar . i_bar) oracle")
    for aff, lists in dual_corpus():
        checks += checks_named([harness.verify_bijection(aff, lists)], "phi_bar_inv . phi_bar = id")
        checks += checks_named([harness.verify_rc_core(aff, lists)], "theta is an involution",
                               "delta_bar_inv . delta_bar = id",
                               "delta_vee round trip and (delta_bar . i_bar) oracle")
    for aff, lists in main_corpus():
        fails = involution_failures(aff, lists)
        checks.append(harness.Check(f"star and R involutions {aff}", not fails, "; ".join(fails[:1])))
    announce(8, "round trips and the delta_vee oracle", checks)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
