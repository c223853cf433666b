"""Generating-function pipelines (X, M, VX, VM) and the verification suites."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import bijection as bj
from . import cartan
from . import crystal_base as cb
from . import energy
from . import kr_crystal as kr
from . import rigged_config as rcm
from . import virtual_layer as vl
from .cartan import AffType
from .kr_crystal import Factor
from .qpoly import ZERO, QPoly, qbinom

TYPE_ALIASES = {"A": "A1", "B": "B1", "C": "C1", "D": "D1"}


def parse_type(name: str, rank: int) -> AffType:
    """Accept A, B, C, D or a family tag such as A2even."""
    return AffType(TYPE_ALIASES.get(name, name), rank)


# ------------------------------------------------------------ pipelines

def m_fermionic(ct, L, lam) -> QPoly:
    """Sum over configurations of q^{cc(nu)} times q-binomials [m + p choose m]."""
    total = ZERO
    Lmap = dict(rcm._freeze_L(L))
    for lengths in rcm.enumerate_configs(ct, Lmap, lam):
        vac = rcm._Vac(ct, lengths, Lmap)
        term = QPoly.monomial(rcm.cc_config(ct, lengths))
        for a, part in enumerate(lengths, 1):
            for ln in set(part):
                m = part.count(ln)
                term = term * qbinom(m + vac(a, ln), m)
        total = total + term
    return total


def m_riggings(ct, L, lam) -> QPoly:
    """Sum of q^{cc} over all rigged configurations."""
    return QPoly.from_exponents(rcm.cocharge(rc) for rc in rcm.enumerate_rc(ct, L, lam))


def m_poly(aff: AffType, factors, lam) -> QPoly:
    """Fermionic side; for simply-laced types both formulas are computed and compared."""
    if not aff.simply_laced:
        return vl.m_poly(aff, factors, lam)
    L = kr.multiplicity_array(aff, factors)
    first = m_fermionic(aff.classical, L, lam)
    second = m_riggings(aff.classical, L, lam)
    if first != second:
        raise AssertionError(f"fermionic product {first} differs from rigging sum {second}")
    return first


def x_poly(aff: AffType, factors, lam) -> QPoly:
    """One-dimensional sum X = sum over P(B, lam) of q^{D / a_0}."""
    if not aff.simply_laced:
        return vl.x_poly(aff, factors, lam)
    return QPoly.from_exponents(energy.d_energy(aff, factors, b) for b in kr.hw_paths(aff, factors, lam))


def vx_poly(aff: AffType, factors, lam) -> QPoly:
    return vl.vx_poly(aff, factors, lam)


def vm_poly(aff: AffType, factors, lam) -> QPoly:
    return vl.vm_poly(aff, factors, lam)


def candidate_weights(aff: AffType, factors) -> list:
    """Dominant weights to test: a size-bounded box plus every weight occurring in P(B)."""
    ct = aff.classical
    size = sum(f.r * f.s for f in factors)
    found = {cartan.normalize(ct, lam) for lam in cartan.dominant_weights_bounded(ct, size)}
    for b in kr.hw_paths(aff, factors):
        found.add(cartan.normalize(ct, cb.wt(ct, b)))
    return sorted(found, key=lambda w: (sum(abs(x) for x in w), w))


# ------------------------------------------------------------ corpora

def factor_lists(aff: AffType, max_size: int, max_factors: int | None = None,
                 columns: bool = False, duals: bool = False, max_s: int | None = None,
                 min_size: int = 1) -> list:
    """All ordered factor lists of rows (and type A columns or dual rows) with bounded total size."""
    atoms = []
    for k in range(1, max_size + 1):
        if max_s is None or k <= max_s:
            atoms.append(Factor(1, k))
            if duals and aff.family == "A1":
                atoms.append(kr.dual_row(k))
        if columns and aff.family == "A1" and 2 <= k <= aff.rank:
            atoms.append(Factor(k, 1))
    out = []

    def grow(prefix, size):
        if prefix and size >= min_size:
            out.append(tuple(prefix))
        if max_factors is not None and len(prefix) >= max_factors:
            return
        for f in atoms:
            if size + f.r * f.s <= max_size:
                prefix.append(f)
                grow(prefix, size + f.r * f.s)
                prefix.pop()

    grow([], 0)
    return out


def threads() -> int:
    try:
        return max(0, int(os.environ.get("CRYSTALRC_THREADS", "0")))
    except ValueError:
        return 0


def shard_map(fn, items) -> list:
    """Map over independent shards, in parallel when CRYSTALRC_THREADS > 0."""
    items = list(items)
    count = threads()
    if count == 0 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, items))


# ------------------------------------------------------------ reports

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, failures: list, count: int | None = None):
        detail = f"{count} cases" if count is not None else ""
        if failures:
            detail = f"{len(failures)} failures; first: {failures[0]}"
        self.checks.append(Check(name, not failures, detail))

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _fmt(aff, factors) -> str:
    return f"{aff} [{','.join(map(str, factors))}]"


# ---------------------------------------------------------- suite: xm

def xm_case(args) -> list:
    """Failures of X = M (or X = VX = VM = M) for one factor list over all candidate weights."""
    aff, factors = args
    fails = []
    for lam in candidate_weights(aff, factors):
        x = x_poly(aff, factors, lam)
        m = m_poly(aff, factors, lam)
        if aff.simply_laced:
            if x != m:
                fails.append(f"{_fmt(aff, factors)} lam={lam}: X={x} M={m}")
        else:
            vx, vm = vx_poly(aff, factors, lam), vm_poly(aff, factors, lam)
            if not x == vx == vm == m:
                fails.append(f"{_fmt(aff, factors)} lam={lam}: X={x} VX={vx} VM={vm} M={m}")
    return fails


def verify_xm(aff: AffType, corpus) -> Report:
    report = Report("xm")
    results = shard_map(xm_case, [(aff, fs) for fs in corpus])
    label = "X=M" if aff.simply_laced else "X=VX=VM=M"
    report.add(f"{label} {aff} over {len(corpus)} tensor products", [f for r in results for f in r], len(corpus))
    return report


# ---------------------------------------------------- suite: bijection

def bijection_case(args) -> dict:
    """Round trip, D = cc, operation squares and (type D) the weight predictor for one list."""
    aff, factors = args
    out = {"roundtrip": [], "statistics": [], "bijops": [], "weight": [], "count": 0}
    ct = aff.classical
    for b in kr.hw_paths(aff, factors):
        out["count"] += 1
        rc = bj.phi_bar(aff, factors, b)
        tag = f"{_fmt(aff, factors)} b={cb.format_path(b)}"
        if not rcm.is_valid(rc) or rc.lam != cartan.normalize(ct, cb.wt(ct, b)):
            out["roundtrip"].append(f"{tag}: image not in RC(L, lam)")
        if bj.phi_bar_inv(aff, factors, rc) != b:
            out["roundtrip"].append(tag)
        if energy.d_energy(aff, factors, b) != rcm.cocharge(bj.phi_tilde(aff, factors, b)):
            out["statistics"].append(tag)
        out["bijops"].extend(bj.check_bijops(aff, factors, b))
        if ct[0] == "D" and len(factors) >= 2 and factors[0] == factors[-1] == Factor(1, 1):
            out["weight"].extend(weight_square_failures(aff, factors, b, rc))
    return out


def weight_square_failures(aff: AffType, factors, b, rc) -> list:
    """Predicted weight of rh(b) against the crystal side and the delta-tilde side."""
    ct = aff.classical
    lam = cartan.weight_to_G(cb.wt(ct, b))
    beta = cartan.weight_to_G(cb.wt(ct, b[1:]))
    gamma = cartan.weight_to_G(cb.wt(ct, kr.rh_hw(aff, factors[1:], b[1:])))
    try:
        predicted = cartan.predict_alpha(lam, beta, gamma)
    except ValueError as exc:
        return [f"{cb.format_path(b)}: {exc}"]
    crystal = cartan.weight_to_G(cb.wt(ct, kr.rh_hw(aff, factors, b)))
    rc_side = cartan.weight_to_G(rcm.delta_tilde(rc)[0].lam)
    if predicted == crystal == rc_side:
        return []
    return [f"{cb.format_path(b)}: predicted {predicted}, crystal {crystal}, rc {rc_side}"]


def verify_bijection(aff: AffType, corpus) -> Report:
    report = Report("bijection")
    results = shard_map(bijection_case, [(aff, fs) for fs in corpus])
    count = sum(r["count"] for r in results)
    for key, label in (("roundtrip", "phi_bar_inv . phi_bar = id"),
                       ("statistics", "D = cc . phi_tilde"),
                       ("bijops", "operation squares (ls, lh, rs, rh, *, R, lb, rb, dual)")):
        report.add(label, [f for r in results for f in r[key]], count)
    if aff.family == "D1":
        report.add("weight predictor around the delta squares", [f for r in results for f in r["weight"]], count)
    card = []
    for fs in corpus:
        L = kr.multiplicity_array(aff, fs)
        for lam in candidate_weights(aff, fs):
            p, r = len(kr.hw_paths(aff, fs, lam)), len(rcm.enumerate_rc(aff.classical, L, lam))
            if p != r:
                card.append(f"{_fmt(aff, fs)} lam={lam}: |P|={p} |RC|={r}")
    report.add("|P(B, lam)| = |RC(L, lam)|", card, len(corpus))
    return report


# ------------------------------------------------------- suite: rc-core

def rc_core_case(args) -> dict:
    """Round trips and commutation relations on every RC of one multiplicity array."""
    aff, factors = args
    ct = aff.classical
    L = kr.multiplicity_array(aff, factors)
    out = {k: [] for k in ("theta", "valid", "delta_inv", "delta_tilde", "comm", "vee", "cc_theta")}
    out["count"] = 0
    keys = sorted(L)
    for lam in candidate_weights(aff, factors):
        for rc in rcm.enumerate_rc(ct, L, lam):
            out["count"] += 1
            tag = str(rc)
            if rcm.theta(rcm.theta(rc)) != rc:
                out["theta"].append(tag)
            if not rcm.is_valid(rc):
                out["valid"].append(tag)
            vac = rcm.vacancies(rc)
            boxes = sum(vac(a, ln) for a, node in enumerate(rc.nu, 1) for ln, _ in node)
            if rcm.cocharge(rcm.theta(rc)) != rcm.cocharge(rc) + boxes - 2 * sum(rg for nd in rc.nu for _, rg in nd):
                out["cc_theta"].append(tag)
            if L.get((1, 1), 0) >= 1:
                small, x = rcm.delta_bar(rc)
                if not rcm.is_valid(small):
                    out["valid"].append(f"delta_bar {tag}")
                if rcm.delta_bar_inv(small, x) != rc:
                    out["delta_inv"].append(tag)
                if rcm.delta_tilde(rc) != rcm.delta_tilde_direct(rc):
                    out["delta_tilde"].append(tag)
                out["comm"].extend(_commutations(aff, rc, L, keys))
            if ct[0] == "A" and L.get((ct[1], 1), 0) >= 1:
                small, a = rcm.delta_vee(rc)
                if rcm.delta_vee_inv(small, a) != rc:
                    out["vee"].append(f"inverse {tag}")
                oracle, letters = _vee_oracle(rc)
                missing = [k for k in range(1, ct[1] + 2) if k not in letters]
                if oracle != small or missing != [a]:
                    out["vee"].append(f"oracle {tag}")
    return out


def _vee_oracle(rc):
    """n-fold (delta_bar . i_bar) reduction of a single dual box."""
    n = rc.ct[1]
    letters = []
    for r in range(n, 1, -1):
        rc, x = rcm.delta_bar(rcm.i_bar(rc, r))
        letters.append(x)
    rc, x = rcm.delta_bar(rc)
    letters.append(x)
    return rc, letters


def _commutes(f, g, rc) -> bool:
    """f(g(rc)) == g(f(rc)) on rigged configurations, ignoring emitted ranks."""
    return f(g(rc)) == g(f(rc))


def _commutations(aff, rc, L, keys) -> list:
    fails = []
    tag = str(rc)
    d_bar = lambda x: rcm.delta_bar(x)[0]
    d_tilde = lambda x: rcm.delta_tilde(x)[0]
    if L[(1, 1)] >= 2 and not _commutes(d_bar, d_tilde, rc):
        fails.append(f"[delta_bar, delta_tilde] at {tag}")
    wide = [(r, s) for r, s in keys if s >= 2]
    boxes = [r for r, s in keys if s == 1 and r >= 2] if aff.family == "A1" else []
    for r, s in wide:
        jb = lambda x, r=r, s=s: rcm.j_bar(x, r, s)
        jt = lambda x, r=r, s=s: rcm.j_tilde(x, r, s)
        if not _commutes(jt, d_bar, rc):
            fails.append(f"[j_tilde, delta_bar] at {(r, s)} {tag}")
        if not _commutes(jb, d_tilde, rc):
            fails.append(f"[j_bar, delta_tilde] at {(r, s)} {tag}")
        for r2, s2 in wide:
            if (r2, s2) == (r, s) and L[(r, s)] < 2:
                continue
            if not _commutes(jb, lambda x: rcm.j_tilde(x, r2, s2), rc):
                fails.append(f"[j_bar, j_tilde] at {(r, s)}, {(r2, s2)} {tag}")
    for r in boxes:
        ib = lambda x, r=r: rcm.i_bar(x, r)
        it = lambda x, r=r: rcm.i_tilde(x, r)
        if not _commutes(ib, d_tilde, rc):
            fails.append(f"[i_bar, delta_tilde] at {r} {tag}")
        if not _commutes(it, d_bar, rc):
            fails.append(f"[i_tilde, delta_bar] at {r} {tag}")
        for r2, s2 in wide:
            if not _commutes(ib, lambda x: rcm.j_tilde(x, r2, s2), rc):
                fails.append(f"[i_bar, j_tilde] at {r}, {(r2, s2)} {tag}")
            if not _commutes(it, lambda x: rcm.j_bar(x, r2, s2), rc):
                fails.append(f"[i_tilde, j_bar] at {r}, {(r2, s2)} {tag}")
    return fails


def verify_rc_core(aff: AffType, corpus) -> Report:
    report = Report("rc-core")
    results = shard_map(rc_core_case, [(aff, fs) for fs in corpus])
    count = sum(r["count"] for r in results)
    labels = {
        "theta": "theta is an involution", "valid": "configurations admissible, riggings in range",
        "cc_theta": "cc(theta rc) = cc(nu) + sum m p - |J|",
        "delta_inv": "delta_bar_inv . delta_bar = id",
        "delta_tilde": "delta_tilde: theta route = cosingular route",
        "comm": "commutation relations", "vee": "delta_vee round trip and (delta_bar . i_bar) oracle",
    }
    for key, label in labels.items():
        report.add(label, [f for r in results for f in r[key]], count)
    return report


# ---------------------------------------------------------- suite: energy

EXHAUSTIVE_LIMIT = 5000


def _tensor_size(aff, factors) -> int:
    total = 1
    for f in factors:
        total *= len(kr.factor_elements(aff, f))
    return total


def energy_case(args) -> dict:
    """Energy identities for one factor list.

    R, R-compositions and H are classical crystal morphisms or constant on classical
    components, so on large tensor products the identities are checked on highest weight
    elements; small products are checked on every element.
    """
    aff, factors = args
    ct = aff.classical
    out = {"ybe": [], "hid": [], "rr": [], "tail": [], "zero": [], "e0": [], "const": []}
    size = len(factors)
    if energy.d_energy(aff, factors, kr.u_of(aff, factors)) != 0:
        out["zero"].append(_fmt(aff, factors))
    exhaustive = _tensor_size(aff, factors) <= EXHAUSTIVE_LIMIT
    elements = kr.all_elements(aff, factors) if exhaustive else kr.hw_paths(aff, factors)
    for b in elements:
        for j in range(1, size):
            nf, nb = energy.r_apply_at(aff, factors, b, j)
            if energy.r_apply_at(aff, nf, nb, j) != (tuple(factors), b):
                out["rr"].append(f"R{j} at {cb.format_path(b)}")
        if size == 3:
            out["ybe"].extend(_ybe(aff, factors, b))
            out["hid"].extend(_h_identities(aff, factors, b))
    for b in kr.hw_paths(aff, factors):
        sb = cb.star(ct, b)
        if energy.tail_d(aff, factors, b) != energy.d_energy(aff, kr.star_factors(factors), sb):
            out["tail"].append(cb.format_path(b))
    if exhaustive and aff.family == "A1" and all(f.r == 1 or f.s == 1 for f in factors):
        d_of = {}
        for b in elements:
            hw, _ = cb.to_highest_weight(ct, b)
            d_of[b] = energy.d_energy(aff, factors, b)
            if d_of[b] != energy.d_energy(aff, factors, hw):
                out["const"].append(cb.format_path(b))
        for b in elements:
            up = energy.e0(aff, factors, b)
            if up is not None and d_of[up] - d_of[b] > 1:
                out["e0"].append(cb.format_path(b))
    return out


def _ybe(aff, factors, b) -> list:
    def apply(seq):
        fs, x = tuple(factors), b
        for j in seq:
            fs, x = energy.r_apply_at(aff, fs, x, j)
        return fs, x
    if apply((1, 2, 1)) != apply((2, 1, 2)):
        return [cb.format_path(b)]
    return []


def _h_identities(aff, factors, b) -> list:
    def h_after(seq, j):
        fs, x = tuple(factors), b
        for k in seq:
            fs, x = energy.r_apply_at(aff, fs, x, k)
        return energy.h_at(aff, fs, x, j)
    fails = []
    if h_after((), 2) + h_after((2,), 1) != h_after((1,), 2) + h_after((1, 2), 1):
        fails.append(f"H2 + H1R2 at {cb.format_path(b)}")
    if h_after((), 1) + h_after((1,), 2) != h_after((2,), 1) + h_after((2, 1), 2):
        fails.append(f"H1 + H2R1 at {cb.format_path(b)}")
    return fails


def h_walk_failures(aff: AffType, f2: Factor, f1: Factor) -> list:
    """Re-check the local coenergy rule along every 0-arrow of a type A pair crystal."""
    ct = aff.classical
    fails = []
    for b in kr.all_elements(aff, (f2, f1)):
        step = energy.h_increment(aff, f2, f1, b)
        if step is None:
            continue
        up, delta = step
        if energy.h_pair(aff, f2, f1, *up) - energy.h_pair(aff, f2, f1, *b) != delta:
            fails.append(cb.format_path(b))
    return fails


def d_pair_failures(aff: AffType, max_s: int) -> list:
    """H(1^{t-p-q} 2^p 1bar^q (x) 1^s) = p + 2q and R on these vectors, type D."""
    fails = []
    for t in range(1, max_s + 1):
        for s in range(1, max_s + 1):
            for p in range(min(s, t) + 1):
                for q in range(min(s, t) - p + 1):
                    left = (1,) * (t - p - q) + (2,) * p + (-1,) * q
                    h = energy.h_pair(aff, kr.row(t), kr.row(s), left, (1,) * s)
                    if h != p + 2 * q:
                        fails.append(f"t={t} s={s} p={p} q={q}: H={h}")
                    image = energy.r_pair(aff, kr.row(t), kr.row(s), left, (1,) * s)
                    want = ((1,) * (s - p - q) + (2,) * p + (-1,) * q, (1,) * t)
                    if image != want:
                        fails.append(f"R t={t} s={s} p={p} q={q}: {image}")
    return fails


def atomic_triples(aff: AffType, max_s: int = 3, columns: bool = False) -> list:
    """All ordered triples of rows (and type A columns) of width or height at most max_s."""
    atoms = [kr.row(s) for s in range(1, max_s + 1)]
    if columns and aff.family == "A1":
        atoms += [Factor(r, 1) for r in range(2, min(max_s, aff.rank) + 1)]
    return [tuple(t) for t in itertools.product(atoms, repeat=3)]


def verify_energy(aff: AffType, corpus) -> Report:
    report = Report("energy")
    results = shard_map(energy_case, [(aff, fs) for fs in corpus])
    labels = {"zero": "D(u(B)) = 0", "rr": "R . R = id", "ybe": "Yang-Baxter R1R2R1 = R2R1R2",
              "hid": "H identities on triples", "tail": "tail D(b) = D(b*)"}
    if aff.family == "A1":
        labels.update({"const": "D constant on classical components", "e0": "D(e0 b) - D(b) <= 1"})
    for key, label in labels.items():
        report.add(label, [f for r in results for f in r[key]], len(corpus))
    if aff.family == "A1":
        atoms = sorted({f for fs in corpus for f in fs if f.r == 1 or f.s == 1})
        fails = []
        for f2, f1 in itertools.product(atoms, repeat=2):
            fails.extend(h_walk_failures(aff, f2, f1))
        report.add("local coenergy rule along 0-arrows", fails, len(atoms) ** 2)
    if aff.family == "D1":
        report.add("H(v_pq) = p + 2q", d_pair_failures(aff, 3))
    return report


# ------------------------------------------------------ suite: crystal

def crystal_case(args) -> dict:
    aff, factors = args
    ct = aff.classical
    out = {"inverse": [], "string": [], "weight": [], "star": [], "split": []}
    for b in kr.all_elements(aff, factors):
        for i in cb.nodes(ct):
            c = cb.tensor_f(ct, i, b)
            if c is not None:
                if cb.tensor_e(ct, i, c) != b:
                    out["inverse"].append(cb.format_path(b))
                if cb.wt(ct, c) != cartan.sub(cb.wt(ct, b), cartan.simple_root(ct, i)):
                    out["weight"].append(cb.format_path(b))
            if cb.eps_phi(ct, i, b) != cb.brute_eps_phi(ct, i, b):
                out["string"].append(cb.format_path(b))
            eps, phi = cb.eps_phi(ct, i, b)
            if phi - eps != cartan.pairing(ct, i, cb.wt(ct, b)):
                out["string"].append(f"phi - eps at {cb.format_path(b)}")
        if not any(f.dual for f in factors):
            sb = cb.star(ct, b)
            if cb.star(ct, sb) != b:
                out["star"].append(cb.format_path(b))
            for i in cb.nodes(ct):
                c = cb.tensor_e(ct, i, sb)
                f = cb.tensor_f(ct, cartan.tau_node(ct, i), b)
                if c != (None if f is None else cb.star(ct, f)):
                    out["star"].append(f"e_i(b*) at {cb.format_path(b)}")
        first = factors[0]
        if first.s >= 2 and not first.dual:
            split = kr.ls(aff, factors, b)
            for i in cb.nodes(ct):
                c = cb.tensor_f(ct, i, b)
                d = cb.tensor_f(ct, i, split)
                if (None if c is None else kr.ls(aff, factors, c)) != d:
                    out["split"].append(f"ls at {cb.format_path(b)}")
    return out


def verify_crystal(aff: AffType, corpus) -> Report:
    report = Report("crystal-axioms")
    results = shard_map(crystal_case, [(aff, fs) for fs in corpus])
    labels = {"inverse": "e_i f_i = id", "weight": "wt(f_i b) = wt(b) - alpha_i",
              "string": "string lengths match the tensor rule", "star": "* involution and e_i(b*) = f_tau(i)(b)*",
              "split": "ls commutes with f_i"}
    for key, label in labels.items():
        report.add(label, [f for r in results for f in r[key]], len(corpus))
    return report


# ------------------------------------------------------ suite: virtual

def virtual_case(args) -> dict:
    x, factors = args
    out = {"image": [], "delta": [], "split": [], "divisible": []}
    y = vl.folding(x).y
    for lam in candidate_weights(x, factors):
        paths = kr.hw_paths(x, factors, lam)
        images = set()
        for b in paths:
            try:
                vl.d_x(x, factors, b)
            except vl.VirtualError as exc:
                out["divisible"].append(str(exc))
            rc = vl.phi_virtual(x, factors, b)
            images.add(rc)
            if not vl.in_RCv(x, rc):
                out["image"].append(f"{_fmt(x, factors)} {cb.format_path(b)} maps outside RC^v")
        members = set(vl.rc_v(x, factors, lam))
        if members != images:
            out["image"].append(f"{_fmt(x, factors)} lam={lam}: image {len(images)} vs RC^v {len(members)}")
        for rc in members:
            if vl.phi_virtual_inv(x, factors, rc) is None:
                out["image"].append(f"{_fmt(x, factors)}: preimage of {rc} not in Psi(B)")
            if factors[0] == kr.row(1):
                try:
                    small, letter = vl.delta_hat(x, rc)
                except vl.VirtualError as exc:
                    out["delta"].append(str(exc))
                    continue
                if not vl.in_RCv(x, small):
                    out["delta"].append(f"delta_hat leaves RC^v at {rc}")
                b = vl.phi_virtual_inv(x, factors, rc)
                if b is not None and (letter != b[0] or small != vl.phi_virtual(x, factors[1:], b[1:])):
                    out["delta"].append(f"delta_hat square fails at {rc}")
            elif factors[0].s >= 2:
                new = vl.j_hat(x, factors, rc)
                b = vl.phi_virtual_inv(x, factors, rc)
                split = kr.split_factors_ls(factors)
                if not vl.in_RCv(x, new) or new != vl.phi_virtual(x, split, kr.ls(x, factors, b)):
                    out["delta"].append(f"j_hat square fails at {rc}")
    for b in kr.all_elements(x, factors):
        v = vl.psi_element(x, factors, b)
        if factors[0].s >= 2:
            want = vl.psi_element(x, kr.split_factors_ls(factors), kr.ls(x, factors, b))
            if vl.vhat_ls(x, factors, v) != want:
                out["split"].append(f"ls-hat at {cb.format_path(b)}")
        if factors[-1].s >= 2:
            want = vl.psi_element(x, kr.split_factors_rs(factors), kr.rs(x, factors, b))
            if vl.vhat_rs(x, factors, v) != want:
                out["split"].append(f"rs-hat at {cb.format_path(b)}")
    return out


def rs_restriction_failures(x: AffType, s: int) -> list:
    """If rs-hat(v) lies in the image of Psi (x) Psi then v lies in the image of Psi."""
    y = vl.folding(x).y
    fs = vl.vhat_factor(x, s)
    split = kr.split_factors_rs((kr.row(s),))
    fails = []
    for v in kr.all_elements(y, fs):
        if vl.psi_inverse(x, split, vl.vhat_rs(x, (kr.row(s),), v)) is not None:
            if vl.psi_inverse(x, (kr.row(s),), v) is None:
                fails.append(cb.format_path(v))
    return fails


def dkr_failures(x: AffType, max_s: int) -> list:
    """Single-factor energy D^Y(Psi b)/gamma_0 equals the summand index r."""
    fails = []
    for s in range(1, max_s + 1):
        f = kr.row(s)
        for hw in kr.component_hws(x, f):
            d = vl.d_x(x, (f,), (hw,))
            r = kr.summand_index(x, f)[hw]
            if d != r:
                fails.append(f"{x} s={s} {hw}: D={d} r={r}")
    return fails


def verify_virtual(x: AffType, corpus, max_s: int = 3) -> Report:
    report = Report("virtual")
    fails = []
    for s in range(1, max_s + 1):
        fails.extend(f"s={s} {m}" for m in vl.axiom_failures(x, s))
    report.add(f"virtual crystal axioms {x}, s <= {max_s}", fails)
    results = shard_map(virtual_case, [(x, fs) for fs in corpus])
    labels = {"divisible": "D^Y(Psi b) divisible by gamma_0",
              "image": "phi-bar maps Psi(P(B, lam)) onto RC^v(L, lam)",
              "delta": "delta-hat / j-hat close on RC^v and decode ranks",
              "split": "virtual ls/rs squares"}
    for key, label in labels.items():
        report.add(label, [f for r in results for f in r[key]], len(corpus))
    report.add("rs-hat restriction", [m for s in range(2, max_s + 1) for m in rs_restriction_failures(x, s)])
    if x.family in ("C1", "A2even", "A2evenDagger", "D2"):
        report.add("single-factor energy equals summand index", dkr_failures(x, 4))
    return report


# ------------------------------------------------------ suite: duality

def duality_case(args) -> list:
    aff, factors = args
    ct = aff.classical
    fails = []
    for b in kr.hw_paths(aff, factors):
        rc = bj.phi_bar(aff, factors, b)
        got = bj.phi_bar(aff, kr.dual_factors(aff, factors), bj.dual_hw(aff, b))
        if got != rcm.rc_dual(rc):
            fails.append(f"{_fmt(aff, factors)} {cb.format_path(b)}")
        if cb.dual(cb.dual(b)) != b:
            fails.append(f"dual twice at {cb.format_path(b)}")
    return fails


def verify_duality(aff: AffType, corpus) -> Report:
    report = Report("duality")
    if aff.family != "A1":
        return report
    corpus = [fs for fs in corpus if all(f.r == 1 for f in fs)]
    results = shard_map(duality_case, [(aff, fs) for fs in corpus])
    report.add("phi-bar intertwines path duality and RC duality", [f for r in results for f in r], len(corpus))
    return report


# ---------------------------------------------- suite: worked examples

def worked_examples() -> Report:
    """Worked examples reproduced exactly."""
    report = Report("worked-examples")
    d4 = AffType("D1", 4)
    L = {(1, 1): 1, (1, 2): 2, (1, 3): 1}
    configs = rcm.enumerate_configs(d4.classical, L, (2, 0, 0, 0))
    want = {((3, 3), (3, 3), (3,), (3,)), ((3, 2, 1), (3, 3), (3,), (3,)),
            ((2, 2, 1, 1), (2, 2, 1, 1), (2, 1), (2, 1))}
    report.add("three admissible configurations", [] if set(configs) == want else [str(configs)])
    rc = rcm.RC.make(d4.classical, L, [[(3, 0), (2, 1), (1, 0)], [(3, 0), (3, 0)], [(3, 0)], [(3, 0)]])
    report.add("displayed rigged configuration is valid", [] if rcm.is_valid(rc) else [str(rc)])
    small, rank = rcm.delta_bar(rc)
    want_small = rcm.RC.make(d4.classical, {(1, 2): 2, (1, 3): 1},
                             [[(3, 0), (2, 1)], [(2, 0), (2, 0)], [(2, 0)], [(2, 0)]])
    report.add("delta_bar example and rank 2bar", [] if (small, rank) == (want_small, -2) else [f"{small} {rank}"])
    a5 = ("A", 5)
    La = {(5, 1): 1, (1, 1): 2, (1, 2): 3, (1, 3): 2}
    rca = rcm.RC.make(a5, La, [[(3, 0), (2, 0), (2, 0), (2, 0)], [(2, 0), (2, 0), (1, 0)],
                               [(1, 0), (1, 0)], [(1, 1)], [(1, 0)]])
    small, rank = rcm.delta_vee(rca)
    want_small = rcm.RC.make(a5, {(1, 1): 2, (1, 2): 3, (1, 3): 2},
                             [[(3, 0), (2, 0), (2, 0), (2, 0)], [(2, 0), (2, 0)], [(1, 0)]])
    report.add("delta_vee example and rank 2v", [] if (small, rank) == (want_small, 2) else [f"{small} {rank}"])
    fs = kr.parse_factors("1,2,2,1")
    b = ((-3,), (2, 3), (1, 2), (1,))
    rc = bj.phi_bar(d4, fs, b)
    want_rc = rcm.RC.make(d4.classical, kr.multiplicity_array(d4, fs),
                          [[(2, 0), (1, 0), (1, 0)], [(1, 1), (1, 0)], [(1, 0)], [(1, 0)]])
    report.add("phi_bar of the D4 path", [] if rc == want_rc else [str(rc)])
    rh = kr.rh_hw(d4, fs, b)
    report.add("rh of the D4 path", [] if rh == ((3,), (2, 2), (1, 1)) else [cb.format_path(rh)])
    want_t = rcm.RC.make(d4.classical, kr.multiplicity_array(d4, fs[:-1]), [[(2, 0), (1, 0)], [(1, 0)]])
    got_t = rcm.delta_tilde(rc)[0]
    report.add("delta_tilde of phi_bar equals phi_bar of rh",
               [] if got_t == want_t == bj.phi_bar(d4, fs[:-1], rh) else [str(got_t)])
    b3 = AffType("B1", 3)
    v = vl.psi_element(b3, (kr.row(3),), ((1, 0, -2),))
    report.add("virtual image of 1 0 2bar", [] if v == ((1, 1, 3, -3, -2, -2),) else [cb.format_path(v)])
    f3 = vl.virtual_f(b3, 3, v)
    ok = f3 == ((1, 1, -3, -3, -2, -2),) == vl.psi_element(b3, (kr.row(3),), ((1, -3, -2),))
    ok = ok and cb.word_f(b3.classical, 3, (1, 0, -2)) == (1, -3, -2)
    report.add("f-hat_3 of the virtual image", [] if ok else [cb.format_path(f3)])
    s5 = cb.star(("D", 5), ((1, 1, 3, -5),))
    report.add("* on a D5 row", [] if s5 == ((-5, -3, -1, -1),) else [cb.format_path(s5)])
    word = kr.word_from_columns([(1, 2), (1, 3)])
    s4 = cb.star(("A", 4), (word,))[0]
    report.add("* on an A4 tableau", [] if kr.format_tableau(s4, 2) == "34/55" else [kr.format_tableau(s4, 2)])
    comp = kr.complement_rectangle(kr.word_from_columns([(1, 3), (1, 4), (2, 6)]), 2, 6)
    text = kr.format_tableau(comp, 4)
    report.add("column complement for the dual rectangle", [] if text == "122/334/455/566" else [text])
    return report


SUITES = ("crystal-axioms", "energy", "rc-core", "bijection", "duality", "virtual", "xm", "worked-examples")


def verify(suite: str, aff: AffType | None = None, corpus=None) -> Report:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if suite == "worked-examples":
        return worked_examples()
    runner = {"crystal-axioms": verify_crystal, "energy": verify_energy, "rc-core": verify_rc_core,
              "bijection": verify_bijection, "duality": verify_duality, "virtual": verify_virtual,
              "xm": verify_xm}[suite]
    return runner(aff, corpus)
