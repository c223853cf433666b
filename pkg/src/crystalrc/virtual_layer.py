"""Virtual crystals: non-simply-laced one-row KR crystals realized inside types A and D."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache

from . import bijection as bj
from . import cartan
from . import crystal_base as cb
from . import energy
from . import kr_crystal as kr
from . import rigged_config as rcm
from .cartan import AffType, FoldingData
from .kr_crystal import Factor
from .qpoly import ONE, ZERO, QPoly, qbinom


class VirtualError(RuntimeError):
    """An image fails to lie where the virtual construction says it must."""


@lru_cache(maxsize=None)
def folding(x: AffType) -> FoldingData:
    if x.simply_laced:
        raise ValueError(f"{x} is simply-laced")
    return cartan.folding_data(x)


def _y_is_a(x: AffType) -> bool:
    return folding(x).y.family == "A1"


def vhat_factor(x: AffType, s: int) -> tuple:
    """Y factors realizing the X factor B^s."""
    if _y_is_a(x):
        return (kr.dual_row(s), kr.row(s))
    if x.family == "B1":
        return (kr.row(2 * s),)
    return (kr.row(s),)


def vhat_factors(x: AffType, factors) -> tuple:
    out = ()
    for f in factors:
        if f.r != 1 or f.dual:
            raise ValueError("virtual crystals are built for one-row factors")
        out += vhat_factor(x, f.s)
    return out


def vhat_L(x: AffType, factors) -> dict:
    return kr.multiplicity_array(folding(x).y, vhat_factors(x, factors))


def psi_lambda(x: AffType, lam) -> tuple:
    return cartan.psi_weight(folding(x), lam)


# -------------------------------------------------------- virtual operators

def virtual_f(x: AffType, i: int, v):
    """f-hat_i: the product of f_j^{gamma_i} over j in the orbit of i."""
    fd = folding(x)
    ct = fd.y.classical
    for j in fd.iota[i]:
        for _ in range(fd.gamma[i]):
            v = cb.tensor_f(ct, j, v)
            if v is None:
                return None
    return v


def virtual_e(x: AffType, i: int, v):
    fd = folding(x)
    ct = fd.y.classical
    for j in fd.iota[i]:
        for _ in range(fd.gamma[i]):
            v = cb.tensor_e(ct, j, v)
            if v is None:
                return None
    return v


@lru_cache(maxsize=None)
def psi_table(x: AffType, s: int) -> dict:
    """Psi on B^s: X payload -> tuple of Y payloads."""
    fd = folding(x)
    cx, cy = x.classical, fd.y.classical
    yf = vhat_factor(x, s)
    y_hws = kr.hw_paths(fd.y, yf)
    table = {}
    for hw in kr.component_hws(x, Factor(1, s)):
        target = cartan.normalize(cy, psi_lambda(x, cb.word_weight(cx, hw)))
        matches = [v for v in y_hws if cartan.normalize(cy, cb.wt(cy, v)) == target]
        if len(matches) != 1:
            raise VirtualError(f"{len(matches)} virtual highest weight vectors for {hw} in B^{s}")
        table[hw] = matches[0]
        queue = deque([hw])
        while queue:
            b = queue.popleft()
            for i in cb.nodes(cx):
                c = cb.word_f(cx, i, b)
                if c is None:
                    continue
                image = virtual_f(x, i, table[b])
                if image is None:
                    raise VirtualError(f"f-hat_{i} vanishes on the image of {b}")
                if c in table:
                    if table[c] != image:
                        raise VirtualError(f"path dependence at {c}")
                else:
                    table[c] = image
                    queue.append(c)
    return table


@lru_cache(maxsize=None)
def psi_inverse_table(x: AffType, s: int) -> dict:
    return {v: b for b, v in psi_table(x, s).items()}


def psi_element(x: AffType, factors, b) -> tuple:
    """Psi on a tensor of X rows: factorwise concatenation of images."""
    out = ()
    for f, w in zip(factors, b):
        out += psi_table(x, f.s)[w]
    return out


def psi_inverse(x: AffType, factors, v):
    """Preimage under Psi, or None when v is not in the image."""
    out, k = [], 0
    for f in factors:
        width = len(vhat_factor(x, f.s))
        w = psi_inverse_table(x, f.s).get(tuple(v[k:k + width]))
        if w is None:
            return None
        out.append(w)
        k += width
    return tuple(out)


def axiom_failures(x: AffType, s: int) -> list[str]:
    """Check phi_j(Psi b) = gamma_i phi_i(b), the same for eps, and Psi f_i = f-hat_i Psi."""
    fd = folding(x)
    cx, cy = x.classical, fd.y.classical
    fails = []
    for b, v in psi_table(x, s).items():
        for i in cb.nodes(cx):
            ex, px = cb.word_eps_phi(cx, i, b)
            for j in fd.iota[i]:
                ey, py = cb.eps_phi(cy, j, v)
                if (ey, py) != (fd.gamma[i] * ex, fd.gamma[i] * px):
                    fails.append(f"node {i}/{j} at {b}: {(ey, py)} vs gamma*{(ex, px)}")
            for op, vop in ((cb.word_f, virtual_f), (cb.word_e, virtual_e)):
                c = op(cx, i, b)
                want = None if c is None else psi_table(x, s)[c]
                if vop(x, i, v) != want:
                    fails.append(f"operator {op.__name__} node {i} at {b}")
    return fails


# -------------------------------------------------- virtual splittings

def vhat_lh(x: AffType, factors, v) -> tuple:
    """Drop the leftmost virtual B^1 block."""
    if factors[0] != kr.row(1):
        raise ValueError("leftmost factor must be B^1")
    return tuple(v[len(vhat_factor(x, 1)):])


def _split_blocks(x, factors, v):
    width = len(vhat_factor(x, factors[0].s))
    return tuple(v[:width]), tuple(v[width:])


def vhat_ls(x: AffType, factors, v) -> tuple:
    """Virtual left splitting V^s (x) V' -> V^1 (x) V^{s-1} (x) V'."""
    s = factors[0].s
    if s < 2:
        raise ValueError("vhat_ls needs s >= 2")
    head, rest = _split_blocks(x, factors, v)
    y = folding(x).y
    if _y_is_a(x):
        d, r = head
        fs = (kr.dual_row(1), kr.dual_row(s - 1), kr.row(s))
        fs, w = energy.reorder(y, fs, (d[:1], d[1:], r), (2, 0, 1))
        fs = (kr.row(1), kr.row(s - 1)) + fs[1:]
        w = (w[0][:1], w[0][1:]) + w[1:]
        _, w = energy.reorder(y, fs, w, (2, 0, 3, 1))
        return tuple(w) + rest
    (r,) = head
    cut = 2 if x.family == "B1" else 1
    return (r[:cut], r[cut:]) + rest


def vhat_rs(x: AffType, factors, v) -> tuple:
    """Virtual right splitting V' (x) V^s -> V' (x) V^{s-1} (x) V^1."""
    s = factors[-1].s
    if s < 2:
        raise ValueError("vhat_rs needs s >= 2")
    width = len(vhat_factor(x, s))
    rest, head = tuple(v[:-width]), tuple(v[-width:])
    y = folding(x).y
    if _y_is_a(x):
        d, r = head
        fs = (kr.dual_row(s), kr.row(s - 1), kr.row(1))
        fs, w = energy.reorder(y, fs, (d, r[:-1], r[-1:]), (1, 2, 0))
        fs = fs[:2] + (kr.dual_row(s - 1), kr.dual_row(1))
        w = w[:2] + (w[2][:-1], w[2][-1:])
        _, w = energy.reorder(y, fs, w, (2, 0, 3, 1))
        return rest + tuple(w)
    (r,) = head
    cut = 2 if x.family == "B1" else 1
    return rest + (r[:-cut], r[-cut:])


# ------------------------------------------------------------ energies

def d_virtual(x: AffType, factors, b) -> int:
    """D^Y(Psi(b)): intrinsic coenergy of the image in the simply-laced type."""
    y = folding(x).y
    return energy.d_energy(y, vhat_factors(x, factors), psi_element(x, factors, b))


def d_x(x: AffType, factors, b) -> Fraction:
    """D^X(b) = D^Y(Psi(b)) / gamma_0, asserting exact divisibility."""
    g0 = folding(x).gamma[0]
    d = d_virtual(x, factors, b)
    if d % g0:
        raise VirtualError(f"D^Y = {d} not divisible by gamma_0 = {g0}")
    return Fraction(d, g0)


def _x_pair_fns(x: AffType):
    """R and H on X pairs, computed through the composed Y R-matrices."""
    y = folding(x).y
    g0 = folding(x).gamma[0]

    def shuffle(f2, f1, w2, w1):
        left = psi_table(x, f2.s)[w2]
        right = psi_table(x, f1.s)[w1]
        return energy.h_composite(y, vhat_factor(x, f2.s), vhat_factor(x, f1.s), left, right)

    def r_fn(f2, f1, w2, w1):
        if f2 == f1:
            return (w2, w1)
        new_left, new_right, _ = shuffle(f2, f1, w2, w1)
        a = psi_inverse_table(x, f1.s).get(new_left)
        c = psi_inverse_table(x, f2.s).get(new_right)
        if a is None or c is None:
            raise VirtualError("composed R leaves the image of Psi")
        return (a, c)

    def h_fn(f2, f1, w2, w1):
        total = shuffle(f2, f1, w2, w1)[2]
        if total % g0:
            raise VirtualError(f"H^Y = {total} not divisible by gamma_0")
        return Fraction(total, g0)

    def d_fn(f, w):
        return kr.summand_index(x, f)[w]

    return r_fn, h_fn, d_fn


def d_x_route(x: AffType, factors, b) -> Fraction:
    """D^X from X-side pair data: H^X summed along R-shuffles plus single-factor terms."""
    r_fn, h_fn, d_fn = _x_pair_fns(x)
    return Fraction(energy.dny(factors, b, r_fn, h_fn, d_fn))


# ---------------------------------------------------------- polynomials

def x_poly(x: AffType, factors, lam) -> QPoly:
    """X = sum over P(B, lam) of q^{D^X / a_0}, D^X from the X-side route."""
    return QPoly.from_exponents(d_x_route(x, factors, b) / x.a0 for b in kr.hw_paths(x, factors, lam))


def vx_poly(x: AffType, factors, lam) -> QPoly:
    """VX = sum over Psi(P(B, lam)) of q^{D^Y / (gamma_0 a_0)}."""
    g0 = folding(x).gamma[0]
    return QPoly.from_exponents(Fraction(d_virtual(x, factors, b), g0 * x.a0)
                                for b in kr.hw_paths(x, factors, lam))


# ---------------------------------------------------- virtual RC side

def sigma(x: AffType, a: int) -> int:
    """Diagram automorphism of Y used by the folding."""
    fd = folding(x)
    if _y_is_a(x):
        return 2 * x.rank - a
    n = x.rank
    return {n: n + 1, n + 1: n}.get(a, a)


def x_node_of(x: AffType, b: int) -> int:
    fd = folding(x)
    for a in range(1, x.rank + 1):
        if b in fd.iota[a]:
            return a
    raise ValueError(f"node {b} is not in a classical orbit")


def _is_a2(x: AffType) -> bool:
    return x.family in ("A2even", "A2evenDagger")


def in_RCv(x: AffType, rc: rcm.RC) -> bool:
    """Membership in RC^v: orbit symmetry, gamma divisibility and the A2 exceptions."""
    fd = folding(x)
    n = x.rank
    for b in range(1, fd.y.rank + 1):
        if rc.nu[b - 1] != rc.nu[sigma(x, b) - 1]:
            return False
        a = x_node_of(x, b)
        g = fd.gamma[a]
        for ln, rg in rc.nu[b - 1]:
            if ln % g and not (_is_a2(x) and a == n):
                return False
            if rg % g:
                return False
            if x.family == "A2evenDagger" and a == n and (rg - ln) % 2:
                return False
    return True


def rc_v(x: AffType, factors, lam) -> list:
    """RC^v(L, lam) by filtering Y rigged configurations."""
    y = folding(x).y
    out = []
    for rc in rcm.enumerate_rc(y.classical, vhat_L(x, factors), psi_lambda(x, lam)):
        if in_RCv(x, rc):
            out.append(rc)
    return out


def vm_poly(x: AffType, factors, lam) -> QPoly:
    """VM = sum over RC^v of q^{cc / (gamma_0 a_0)}."""
    g0 = folding(x).gamma[0]
    return QPoly.from_exponents(Fraction(rcm.cocharge(rc), g0 * x.a0) for rc in rc_v(x, factors, lam))


def _config_in_v(x: AffType, lengths) -> bool:
    fd = folding(x)
    for b in range(1, fd.y.rank + 1):
        if lengths[b - 1] != lengths[sigma(x, b) - 1]:
            return False
        a = x_node_of(x, b)
        if _is_a2(x) and a == x.rank:
            continue
        if any(ln % fd.gamma[a] for ln in lengths[b - 1]):
            return False
    return True


def m_poly(x: AffType, factors, lam) -> QPoly:
    """Fermionic sum: per symmetric configuration, q^{cc(nu)} times q-binomials of rigging boxes."""
    fd = folding(x)
    y = fd.y
    ct = y.classical
    Lhat = vhat_L(x, factors)
    unit = Fraction(1, fd.gamma[0] * x.a0)
    total = ZERO
    for lengths in rcm.enumerate_configs(ct, Lhat, psi_lambda(x, lam)):
        if not _config_in_v(x, lengths):
            continue
        vac = rcm._Vac(ct, lengths, Lhat)
        term = QPoly.monomial(rcm.cc_config(ct, lengths) * unit)
        for a in range(1, x.rank + 1):
            orbit = fd.iota[a]
            b = orbit[0]
            g = fd.gamma[a]
            for ln in sorted(set(lengths[b - 1])):
                m = lengths[b - 1].count(ln)
                p = vac(b, ln)
                if any(vac(c, ln) != p for c in orbit):
                    raise VirtualError("vacancy numbers differ across an orbit")
                if x.family == "A2evenDagger" and a == x.rank:
                    low = ln % 2
                    if p < low:
                        term = ZERO
                        break
                    boxes = (p - low) // 2
                    term = term * QPoly.monomial(m * low * unit)
                    term = term * qbinom(m + boxes, m, 2 * unit)
                else:
                    boxes = p // g
                    term = term * qbinom(m + boxes, m, g * len(orbit) * unit)
            if term == ZERO:
                break
        total = total + term
    return total


def psi_rc(x: AffType, factors, strings: dict) -> rcm.RC:
    """Stretch X-side strings {a: [(len, rig)]} into a virtual Y configuration."""
    fd = folding(x)
    nu = [[] for _ in range(fd.y.rank)]
    for a, node in strings.items():
        for ln, rg in node:
            g = fd.gamma[a]
            stretched = (ln, 2 * rg) if _is_a2(x) and a == x.rank else (g * ln, g * rg)
            for b in fd.iota[a]:
                nu[b - 1].append(stretched)
    return rcm.RC.make(fd.y.classical, vhat_L(x, factors), nu)


def unpsi_rc(x: AffType, rc: rcm.RC) -> dict:
    """X-side strings of a member of RC^v (inverse of psi_rc)."""
    if not in_RCv(x, rc):
        raise VirtualError("not a virtual rigged configuration")
    fd = folding(x)
    out = {}
    for a in range(1, x.rank + 1):
        g = fd.gamma[a]
        node = rc.nu[fd.iota[a][0] - 1]
        if _is_a2(x) and a == x.rank:
            out[a] = [(ln, rg // 2) for ln, rg in node]
        else:
            out[a] = [(ln // g, rg // g) for ln, rg in node]
    return out


# ------------------------------------------------- virtual reductions

@lru_cache(maxsize=None)
def _rank_decoder(x: AffType) -> dict:
    return {v: b for b, v in psi_table(x, 1).items()}


def delta_hat(x: AffType, rc: rcm.RC) -> tuple:
    """Remove a virtual B^1: returns (new rc, X payload of the emitted rank)."""
    if _y_is_a(x):
        rc, a = rcm.delta_vee(rc)
        rc, letter = rcm.delta_bar(rc)
        pair = ((cb.dual_letter(a),), (letter,))
    elif x.family == "B1":
        rc = rcm.j_bar(rc, 1, 2)
        rc, first = rcm.delta_bar(rc)
        rc, second = rcm.delta_bar(rc)
        pair = ((first, second),)
    else:
        rc, letter = rcm.delta_bar(rc)
        pair = ((letter,),)
    decoded = _rank_decoder(x).get(pair)
    if decoded is None:
        raise VirtualError(f"virtual rank {pair} is not the image of a letter")
    return rc, decoded


def j_hat(x: AffType, factors, rc: rcm.RC) -> rcm.RC:
    """Virtual left splitting on rigged configurations: data unchanged, context split."""
    new = rc.with_L(vhat_L(x, kr.split_factors_ls(factors)))
    if not rcm.is_valid(new):
        raise VirtualError("virtual splitting left the admissible set")
    return new


def phi_virtual(x: AffType, factors, b) -> rcm.RC:
    """The simply-laced bijection applied to Psi(b)."""
    y = folding(x).y
    return bj.phi_bar(y, vhat_factors(x, factors), psi_element(x, factors, b))


def phi_virtual_inv(x: AffType, factors, rc: rcm.RC):
    y = folding(x).y
    v = bj.phi_bar_inv(y, vhat_factors(x, factors), rc)
    return psi_inverse(x, factors, v)
