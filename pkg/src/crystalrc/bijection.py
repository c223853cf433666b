"""The bijection between classical highest weight paths and rigged configurations."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import crystal_base as cb
from . import energy
from . import kr_crystal as kr
from . import rigged_config as rcm
from .cartan import AffType
from .kr_crystal import Factor
from .rigged_config import RC


@dataclass
class Step:
    """One reduction step: its name, the path and RC before it, and the emitted letter."""

    name: str
    path: tuple
    rc: RC
    letter: object = None

    def to_json(self) -> dict:
        return {"step": self.name, "path": cb.format_path(self.path), "rc": rcm.rc_to_json(self.rc),
                "letter": None if self.letter is None else cb.format_letter(self.letter)}


@dataclass
class Trace:
    steps: list = field(default_factory=list)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


def _check_supported(aff: AffType, factors):
    if aff.family not in ("A1", "D1"):
        raise ValueError("the bijection is defined for types A_n^(1) and D_n^(1)")
    for f in factors:
        kr.check_factor(aff, f)


def empty_rc(aff: AffType) -> RC:
    return RC.make(aff.classical, {}, [])


def _reduce_path(aff: AffType, factors, b) -> list:
    """Peel the path from the left; returns [(step, factors, path, datum)]."""
    n = aff.rank
    fs, cur = tuple(factors), tuple(b)
    plan = []
    while fs:
        f = fs[0]
        if f == Factor(1, 1):
            plan.append(("lh/delta_bar", fs, cur, cur[0][0]))
            fs, cur = fs[1:], cur[1:]
        elif f == kr.dual_row(1):
            plan.append(("lh_vee/delta_vee", fs, cur, cur[0][0]))
            fs, cur = fs[1:], cur[1:]
        elif f.dual:
            plan.append(("ls_vee/j_bar_vee", fs, cur, (n, f.s)))
            fs, cur = kr.split_factors_ls(fs), kr.ls_vee(cur)
        elif f.s >= 2:
            plan.append(("ls/j_bar", fs, cur, (f.r, f.s)))
            fs, cur = kr.split_factors_ls(fs), kr.ls(aff, fs, cur)
        else:
            plan.append(("lb/i_bar", fs, cur, f.r))
            fs, cur = kr.split_factors_lb(fs), kr.lb(fs, cur)
    return plan


def phi_bar(aff: AffType, factors, b, trace: Trace | None = None) -> RC:
    """phi-bar: P(B, lam) -> RC(L, lam), grown from the rightmost factor."""
    _check_supported(aff, factors)
    ct = aff.classical
    if not cb.is_classical_hw(ct, b):
        raise ValueError("phi_bar is defined on classical highest weight paths")
    rc = empty_rc(aff)
    records = []
    for name, fs, cur, datum in reversed(_reduce_path(aff, factors, b)):
        if name == "lh/delta_bar":
            rc = rcm.delta_bar_inv(rc, datum)
        elif name == "lh_vee/delta_vee":
            rc = rcm.delta_vee_inv(rc, cb.undual(datum))
        elif name in ("ls/j_bar", "ls_vee/j_bar_vee"):
            rc = rcm.j_bar_inv(rc, *datum)
        else:
            rc = rcm.i_bar_inv(rc, datum)
        records.append(Step(name, cur, rc, datum if name.startswith("lh") else None))
    if trace is not None:
        trace.steps.extend(reversed(records))
    return rc


def phi_bar_inv(aff: AffType, factors, rc: RC, trace: Trace | None = None) -> tuple:
    """Inverse bijection RC(L, lam) -> P(B, lam) by successive reductions."""
    _check_supported(aff, factors)
    if dict(rc.L) != kr.multiplicity_array(aff, factors):
        raise ValueError("rigged configuration context does not match the factors")
    if not rcm.is_valid(rc):
        raise ValueError("rigged configuration is not admissible")
    n = aff.rank
    fs = tuple(factors)
    ops = []  # "box" entries emit a letter, "merge" entries glue the first two factors
    while fs:
        f = fs[0]
        before = rc
        if f == Factor(1, 1):
            rc, x = rcm.delta_bar(rc)
            ops.append(("box", x))
            fs = fs[1:]
            name = "lh/delta_bar"
        elif f == kr.dual_row(1):
            rc, a = rcm.delta_vee(rc)
            x = cb.dual_letter(a)
            ops.append(("box", x))
            fs = fs[1:]
            name = "lh_vee/delta_vee"
        elif f.s >= 2:
            rc = rcm.j_bar(rc, n if f.dual else f.r, f.s)
            ops.append(("merge", None))
            fs = kr.split_factors_ls(fs)
            x, name = None, "ls_vee/j_bar_vee" if f.dual else "ls/j_bar"
        else:
            rc = rcm.i_bar(rc, f.r)
            ops.append(("merge", None))
            fs = kr.split_factors_lb(fs)
            x, name = None, "lb/i_bar"
        if trace is not None:
            trace.steps.append(Step(name, (), before, x))
    if rc.nu != tuple(() for _ in rc.nu):
        raise AssertionError("reduction did not exhaust the configuration")
    path = []
    for kind, x in reversed(ops):
        if kind == "box":
            path.insert(0, (x,))
        else:
            first, second = path[0], path[1]
            path[:2] = [first + second]
    return tuple(path)


def phi_tilde(aff: AffType, factors, b) -> RC:
    """theta composed with phi-bar; its cocharge is the intrinsic coenergy."""
    return rcm.theta(phi_bar(aff, factors, b))


def phi_tilde_inv(aff: AffType, factors, rc: RC) -> tuple:
    return phi_bar_inv(aff, factors, rcm.theta(rc))


# -------------------------------------------------------- path operations

def star_hw(aff: AffType, b) -> tuple:
    """Highest weight vector of the component containing b*."""
    return cb.to_highest_weight(aff.classical, cb.star(aff.classical, b))[0]


def dual_hw(aff: AffType, b) -> tuple:
    """Highest weight vector of the component containing the dual of b (type A)."""
    return cb.to_highest_weight(aff.classical, cb.dual(b))[0]


def check_bijops(aff: AffType, factors, b) -> list[str]:
    """Check the operation squares for one highest weight path; returns failure messages."""
    ct = aff.classical
    fails = []
    rc = phi_bar(aff, factors, b)
    first, last = factors[0], factors[-1]

    def expect(label, got, want):
        if got != want:
            fails.append(f"{label}: {cb.format_path(b)} gives {got} expected {want}")

    if first == Factor(1, 1):
        want_rc, want_x = rcm.delta_bar(rc)
        expect("lh~delta_bar", phi_bar(aff, factors[1:], b[1:]), want_rc)
        expect("lh~rank", b[0][0], want_x)
    elif first.s >= 2 and not first.dual:
        expect("ls~j_bar", phi_bar(aff, kr.split_factors_ls(factors), kr.ls(aff, factors, b)),
               rcm.j_bar(rc, first.r, first.s))
    elif first.r >= 2:
        expect("lb~i_bar", phi_bar(aff, kr.split_factors_lb(factors), kr.lb(factors, b)),
               rcm.i_bar(rc, first.r))
    if last == Factor(1, 1):
        want_rc, _ = rcm.delta_tilde(rc)
        expect("rh~delta_tilde", phi_bar(aff, factors[:-1], kr.rh_hw(aff, factors, b)), want_rc)
    elif last.s >= 2 and not last.dual:
        expect("rs~j_tilde", phi_bar(aff, kr.split_factors_rs(factors), kr.rs(aff, factors, b)),
               rcm.j_tilde(rc, last.r, last.s))
    elif last.r >= 2 and not last.dual:
        expect("rb~i_tilde", phi_bar(aff, kr.split_factors_rb(factors), kr.rb(factors, b)),
               rcm.i_tilde(rc, last.r))
    if not any(f.dual for f in factors):
        expect("star~theta", phi_bar(aff, kr.star_factors(factors), star_hw(aff, b)), rcm.theta(rc))
    for j in range(1, len(factors)):
        try:
            nf, nb = energy.r_apply_at(aff, factors, b, j)
        except (energy.MultiplicityError, NotImplementedError):
            continue
        expect(f"R{j}~identity", phi_bar(aff, nf, nb), rc)
    if ct[0] == "A" and all(f.r == 1 for f in factors):
        expect("dual~rc_dual", phi_bar(aff, kr.dual_factors(aff, factors), dual_hw(aff, b)),
               rcm.rc_dual(rc))
    return fails
