"""Combinatorial R-matrix, local coenergy H and the intrinsic coenergy D."""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from . import cartan
from . import crystal_base as cb
from . import kr_crystal as kr
from .cartan import AffType
from .kr_crystal import Factor


class MultiplicityError(RuntimeError):
    """A tensor square is not classically multiplicity-free."""


# ------------------------------------------------------------- R-matrix

@lru_cache(maxsize=None)
def _r_hw_map(aff: AffType, f2: Factor, f1: Factor) -> dict:
    """Weight-matched bijection of highest weight vectors of f2 (x) f1 and f1 (x) f2."""
    ct = aff.classical
    left = kr.hw_paths(aff, (f2, f1))
    right = kr.hw_paths(aff, (f1, f2))
    by_weight = {}
    for b in right:
        key = cartan.normalize(ct, cb.wt(ct, b))
        if key in by_weight:
            raise MultiplicityError(f"{f1} (x) {f2} is not multiplicity-free")
        by_weight[key] = b
    out = {}
    seen = set()
    for b in left:
        key = cartan.normalize(ct, cb.wt(ct, b))
        if key in seen or key not in by_weight:
            raise MultiplicityError(f"{f2} (x) {f1} is not multiplicity-free")
        seen.add(key)
        out[b] = by_weight[key]
    return out


@lru_cache(maxsize=1 << 18)
def r_pair(aff: AffType, f2: Factor, f1: Factor, w2: tuple, w1: tuple) -> tuple:
    """R: B2 (x) B1 -> B1 (x) B2 on the pair (w2, w1); returns (w1', w2')."""
    if f2 == f1:
        return (w2, w1)
    ct = aff.classical
    hw, path = cb.to_highest_weight(ct, (w2, w1))
    image = _r_hw_map(aff, f2, f1)[hw]
    return cb.apply_f_path(ct, image, reversed(path))


def r_apply_at(aff: AffType, factors, b, j: int, r_fn=None):
    """Apply R to the (j+1)-th and j-th factors counted from the right."""
    size = len(factors)
    if not 1 <= j <= size - 1:
        raise IndexError("R position out of range")
    r_fn = r_fn or (lambda f2, f1, w2, w1: r_pair(aff, f2, f1, w2, w1))
    k = size - j - 1  # list index of the (j+1)-th factor from the right
    w1n, w2n = r_fn(factors[k], factors[k + 1], b[k], b[k + 1])
    nf = tuple(factors[:k]) + (factors[k + 1], factors[k]) + tuple(factors[k + 2:])
    nb = tuple(b[:k]) + (w1n, w2n) + tuple(b[k + 2:])
    return nf, nb


# ----------------------------------------------------- promotion (type A)

def _promote_payload(f: Factor, w: tuple, big_n: int, shift: int) -> tuple:
    def move(x):
        if cb.is_dual(x):
            return cb.dual_letter((cb.undual(x) - 1 + shift) % big_n + 1)
        return (x - 1 + shift) % big_n + 1

    moved = [move(x) for x in w]
    if f.dual:
        return tuple(sorted(moved, reverse=True))
    if f.r == 1:
        return tuple(sorted(moved))
    if f.s == 1:
        return tuple(sorted(moved, reverse=True))
    raise NotImplementedError("promotion on rectangles with r, s >= 2 is not implemented")


def promotion(f: Factor, w: tuple, n: int) -> tuple:
    """Cyclic promotion on a type A_n row, column or dual row."""
    return _promote_payload(f, w, n + 1, 1)


def promotion_inverse(f: Factor, w: tuple, n: int) -> tuple:
    return _promote_payload(f, w, n + 1, -1)


def e0(aff: AffType, factors, b):
    """Affine raising operator e_0 = pr^{-1} e_1 pr on a type A tensor."""
    n = aff.rank
    pb = tuple(promotion(f, w, n) for f, w in zip(factors, b))
    c = cb.tensor_e(aff.classical, 1, pb)
    if c is None:
        return None
    return tuple(promotion_inverse(f, w, n) for f, w in zip(factors, c))


def f0(aff: AffType, factors, b):
    n = aff.rank
    pb = tuple(promotion(f, w, n) for f, w in zip(factors, b))
    c = cb.tensor_f(aff.classical, 1, pb)
    if c is None:
        return None
    return tuple(promotion_inverse(f, w, n) for f, w in zip(factors, c))


# ------------------------------------------------------------- H tables

def _acting_side(before, after) -> int:
    """0 if the left factor changed, 1 if the right one did."""
    return 0 if before[0] != after[0] else 1


def h_increment(aff: AffType, f2: Factor, f1: Factor, pair) -> tuple:
    """(e_0(pair), change of H) following the local coenergy rule; None if e_0 vanishes."""
    up = e0(aff, (f2, f1), pair)
    if up is None:
        return None
    swapped = r_pair(aff, f2, f1, *pair)
    up_swapped = e0(aff, (f1, f2), swapped)
    side = _acting_side(pair, up)
    side_swapped = _acting_side(swapped, up_swapped)
    if side == 0 and side_swapped == 0:
        return up, 1
    if side == 1 and side_swapped == 1:
        return up, -1
    return up, 0


def _type_a_table(aff: AffType, f2: Factor, f1: Factor) -> dict:
    ct = aff.classical
    start = kr.u_of(aff, (f2, f1))
    values = {start: 0}
    queue = deque([start])
    while queue:
        b = queue.popleft()
        h = values[b]
        moves = []
        for i in cb.nodes(ct):
            for op in (cb.tensor_f, cb.tensor_e):
                c = op(ct, i, b)
                if c is not None:
                    moves.append((c, h))
        step = h_increment(aff, f2, f1, b)
        if step is not None:
            moves.append((step[0], h + step[1]))
        down = f0(aff, (f2, f1), b)
        if down is not None:
            _, delta = h_increment(aff, f2, f1, down)
            moves.append((down, h - delta))
        for c, hc in moves:
            if c in values:
                if values[c] != hc:
                    raise AssertionError(f"inconsistent H at {c}: {values[c]} vs {hc}")
            else:
                values[c] = hc
                queue.append(c)
    hws = set(kr.hw_paths(aff, (f2, f1)))
    return {b: h for b, h in values.items() if b in hws}


def _type_d_table(aff: AffType, f2: Factor, f1: Factor) -> dict:
    table = {}
    for b in kr.hw_paths(aff, (f2, f1)):
        left, right = b
        p, q = left.count(2), left.count(-1)
        if left != (1,) * (len(left) - p - q) + (2,) * p + (-1,) * q or right != (1,) * f1.s:
            raise AssertionError(f"unexpected highest weight vector {b}")
        table[b] = p + 2 * q
    return table


@lru_cache(maxsize=None)
def build_H_table(aff: AffType, f2: Factor, f1: Factor) -> dict:
    """Local coenergy on the classical highest weight vectors of f2 (x) f1."""
    if aff.family == "A1":
        return _type_a_table(aff, f2, f1)
    if aff.family == "D1" and f1.r == f2.r == 1:
        return _type_d_table(aff, f2, f1)
    raise NotImplementedError(f"no H table for {aff} pairs {f2}, {f1}")


@lru_cache(maxsize=1 << 18)
def h_pair(aff: AffType, f2: Factor, f1: Factor, w2: tuple, w1: tuple) -> int:
    hw, _ = cb.to_highest_weight(aff.classical, (w2, w1))
    return build_H_table(aff, f2, f1)[hw]


def h_at(aff: AffType, factors, b, j: int) -> int:
    """H on the (j+1)-th and j-th factors counted from the right."""
    k = len(factors) - j - 1
    return h_pair(aff, factors[k], factors[k + 1], b[k], b[k + 1])


# ------------------------------------------------------------ D energy

def dny(factors, b, r_fn, h_fn, d_fn=None) -> int:
    """Intrinsic coenergy by the double sum of H and R applications.

    r_fn(f2, f1, w2, w1) -> (w1', w2'); h_fn(f2, f1, w2, w1) -> int;
    d_fn(f, w) -> int gives the single-factor coenergy (zero when omitted).
    Positions are counted from the right as in b_L (x) ... (x) b_1.
    """
    size = len(factors)
    total = 0
    for j in range(1, size + 1):
        # move factor j rightwards, accumulating H with each factor i < j it meets
        fs, bs = list(factors), list(b)
        k = size - j  # list index of factor j
        while k < size - 1:
            total += h_fn(fs[k], fs[k + 1], bs[k], bs[k + 1])
            w1n, w2n = r_fn(fs[k], fs[k + 1], bs[k], bs[k + 1])
            fs[k], fs[k + 1] = fs[k + 1], fs[k]
            bs[k], bs[k + 1] = w1n, w2n
            k += 1
        if d_fn is not None:
            total += d_fn(fs[-1], bs[-1])
    return total


def tail_dny(factors, b, r_fn, h_fn, d_fn=None) -> int:
    """Tail coenergy: factors move leftwards and single-factor terms read the leftmost slot."""
    size = len(factors)
    total = 0
    for i in range(1, size + 1):
        fs, bs = list(factors), list(b)
        k = size - i  # list index of factor i
        while k > 0:
            total += h_fn(fs[k - 1], fs[k], bs[k - 1], bs[k])
            w1n, w2n = r_fn(fs[k - 1], fs[k], bs[k - 1], bs[k])
            fs[k - 1], fs[k] = fs[k], fs[k - 1]
            bs[k - 1], bs[k] = w1n, w2n
            k -= 1
        if d_fn is not None:
            total += d_fn(fs[0], bs[0])
    return total


def _fns(aff: AffType):
    def r_fn(f2, f1, w2, w1):
        return r_pair(aff, f2, f1, w2, w1)

    def h_fn(f2, f1, w2, w1):
        return h_pair(aff, f2, f1, w2, w1)

    return r_fn, h_fn


def d_energy(aff: AffType, factors, b) -> int:
    """Intrinsic coenergy of a simply-laced tensor product (single factors contribute 0)."""
    return dny(factors, b, *_fns(aff))


def tail_d(aff: AffType, factors, b) -> int:
    return tail_dny(factors, b, *_fns(aff))


def h_composite(aff: AffType, left_factors, right_factors, left, right, r_fn=None, h_fn=None):
    """Swap two blocks by R-shuffles; returns (new right block, new left block, summed H)."""
    if r_fn is None:
        r_fn, h_fn = _fns(aff)
    fs = list(left_factors) + list(right_factors)
    bs = list(left) + list(right)
    m, total = len(left_factors), 0
    # shuffle the left block's factors to the right, rightmost one first
    for t in range(m - 1, -1, -1):
        k = t
        for _ in range(len(right_factors)):
            total += h_fn(fs[k], fs[k + 1], bs[k], bs[k + 1])
            w1n, w2n = r_fn(fs[k], fs[k + 1], bs[k], bs[k + 1])
            fs[k], fs[k + 1] = fs[k + 1], fs[k]
            bs[k], bs[k + 1] = w1n, w2n
            k += 1
    cut = len(right_factors)
    return tuple(bs[:cut]), tuple(bs[cut:]), total


def reorder(aff: AffType, factors, b, order, r_fn=None):
    """Permute tensor factors by adjacent R-matrices; order lists source indices left to right."""
    if sorted(order) != list(range(len(factors))):
        raise ValueError("order must be a permutation of the factor positions")
    r_fn = r_fn or (lambda f2, f1, w2, w1: r_pair(aff, f2, f1, w2, w1))
    fs, bs = list(factors), list(b)
    rank = {src: k for k, src in enumerate(order)}
    keys = list(range(len(factors)))
    # bubble sort by target position, each swap an R-matrix
    for _ in range(len(keys)):
        for k in range(len(keys) - 1):
            if rank[keys[k]] > rank[keys[k + 1]]:
                w1n, w2n = r_fn(fs[k], fs[k + 1], bs[k], bs[k + 1])
                fs[k], fs[k + 1] = fs[k + 1], fs[k]
                bs[k], bs[k + 1] = w1n, w2n
                keys[k], keys[k + 1] = keys[k + 1], keys[k]
    return tuple(fs), tuple(bs)
