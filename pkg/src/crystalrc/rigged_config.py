"""Rigged configurations of simply-laced types A_n and D_n and their reduction steps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import cartan

INF = float("inf")


def _freeze_L(L) -> tuple:
    items = L.items() if isinstance(L, dict) else L
    return tuple(sorted((tuple(k), c) for k, c in items if c))


@dataclass(frozen=True)
class RC:
    """A rigged configuration: per node a sorted tuple of (length, rigging) strings."""

    ct: tuple
    L: tuple
    nu: tuple

    @staticmethod
    def make(ct, L, nu) -> "RC":
        n = ct[1]
        nu = list(nu) + [()] * (n - len(nu))
        canon = tuple(tuple(sorted((tuple(s) for s in node), reverse=True)) for node in nu)
        return RC(tuple(ct), _freeze_L(L), canon)

    @property
    def Lmap(self) -> dict:
        return dict(self.L)

    def partition(self, a: int) -> tuple:
        return tuple(s[0] for s in self.nu[a - 1])

    def with_nu(self, nu) -> "RC":
        return RC.make(self.ct, self.L, nu)

    def with_L(self, L) -> "RC":
        return RC.make(self.ct, L, self.nu)

    @property
    def lam(self) -> tuple:
        return rc_weight(self)

    def __str__(self):
        parts = []
        for a, node in enumerate(self.nu, 1):
            body = " ".join(f"{ln}[{rg}]" for ln, rg in node) or "-"
            parts.append(f"{a}: {body}")
        return "; ".join(parts)


def cartan_entry(ct, a: int, b: int) -> int:
    """Symmetric Cartan matrix entry (alpha_a | alpha_b) for types A and D."""
    kind, n = ct
    if a == b:
        return 2
    if kind == "A":
        return -1 if abs(a - b) == 1 else 0
    lo, hi = min(a, b), max(a, b)
    if hi <= n - 1 and hi - lo == 1:
        return -1
    if hi == n and lo == n - 2:
        return -1
    return 0


@lru_cache(maxsize=None)
def _cartan_rows(ct) -> tuple:
    n = ct[1]
    return tuple(
        tuple((b, cartan_entry(ct, a, b)) for b in range(1, n + 1) if cartan_entry(ct, a, b))
        for a in range(1, n + 1)
    )


def vacancy_from(ct, lengths, Lmap: dict, a: int, i: int) -> int:
    """p_i^{(a)} from per-node length lists."""
    total = sum(min(i, j) * c for (b, j), c in Lmap.items() if b == a)
    for b, c in _cartan_rows(ct)[a - 1]:
        total -= c * sum(min(i, j) for j in lengths[b - 1])
    return total


def vacancy(rc: RC, a: int, i: int) -> int:
    lengths = [rc.partition(b) for b in range(1, rc.ct[1] + 1)]
    return vacancy_from(rc.ct, lengths, rc.Lmap, a, i)


class _Vac:
    """Cached vacancy numbers of a fixed configuration."""

    def __init__(self, ct, lengths, Lmap):
        self.ct, self.lengths, self.Lmap = ct, lengths, Lmap
        self.cache = {}

    def __call__(self, a, i):
        key = (a, i)
        if key not in self.cache:
            self.cache[key] = vacancy_from(self.ct, self.lengths, self.Lmap, a, i)
        return self.cache[key]


def vacancies(rc: RC) -> _Vac:
    return _Vac(rc.ct, [rc.partition(b) for b in range(1, rc.ct[1] + 1)], rc.Lmap)


def base_weight(ct, Lmap: dict) -> tuple:
    """Sum of i L_i^{(a)} times the fundamental weight a (rational epsilon vector)."""
    coeffs = {}
    for (a, i), c in Lmap.items():
        coeffs[a] = coeffs.get(a, 0) + i * c
    return cartan.weight_from_fundamental(ct, coeffs)


def _as_int_vector(v) -> tuple:
    out = []
    for x in v:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def rc_weight(rc: RC) -> tuple:
    """The weight lam solving the configuration weight equation."""
    ct = rc.ct
    w = base_weight(ct, rc.Lmap)
    for a in range(1, ct[1] + 1):
        size = sum(rc.partition(a))
        w = cartan.sub(w, cartan.scale(size, cartan.simple_root(ct, a)))
    return cartan.normalize(ct, _as_int_vector(w))


def config_sizes(ct, Lmap: dict, lam):
    """Node sizes |nu^{(a)}| forced by the weight equation, or None if not integral."""
    coords = cartan.root_coords(ct, cartan.sub(base_weight(ct, Lmap), lam))
    if any(c.denominator != 1 or c < 0 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def _max_index(lengths, Lmap) -> int:
    top = max([0] + [j for node in lengths for j in node] + [i for (_, i) in Lmap])
    return top + 1


def is_admissible_config(ct, Lmap: dict, lengths) -> bool:
    n = ct[1]
    imax = _max_index(lengths, Lmap)
    return all(vacancy_from(ct, lengths, Lmap, a, i) >= 0
               for a in range(1, n + 1) for i in range(1, imax + 1))


def is_admissible(ct, Lmap: dict, lengths, lam) -> bool:
    """Weight equation plus nonnegative vacancy numbers for all (a, i)."""
    lengths = [tuple(x) for x in lengths] + [()] * (ct[1] - len(lengths))
    sizes = config_sizes(ct, Lmap, lam)
    if sizes is None or tuple(sum(x) for x in lengths) != sizes:
        return False
    if not cartan.is_dominant(ct, cartan.normalize(ct, lam)):
        return False
    return is_admissible_config(ct, Lmap, lengths)


def is_valid(rc: RC) -> bool:
    """Admissible configuration with every rigging in [0, p]."""
    lengths = [rc.partition(b) for b in range(1, rc.ct[1] + 1)]
    if not cartan.is_dominant(rc.ct, rc.lam):
        return False
    if not is_admissible_config(rc.ct, rc.Lmap, lengths):
        return False
    vac = vacancies(rc)
    return all(0 <= rg <= vac(a, ln) for a, node in enumerate(rc.nu, 1) for ln, rg in node)


def cc_config(ct, lengths) -> Fraction:
    n = ct[1]
    total = 0
    for a in range(1, n + 1):
        for b, c in _cartan_rows(ct)[a - 1]:
            total += c * sum(min(j, k) for j in lengths[a - 1] for k in lengths[b - 1])
    return Fraction(total, 2)


def cocharge(rc: RC) -> int:
    """cc(nu) plus the sum of all riggings."""
    lengths = [rc.partition(b) for b in range(1, rc.ct[1] + 1)]
    total = cc_config(rc.ct, lengths) + sum(rg for node in rc.nu for _, rg in node)
    assert total.denominator == 1
    return int(total)


def theta(rc: RC) -> RC:
    """Complement every rigging with respect to its vacancy number."""
    vac = vacancies(rc)
    return rc.with_nu([[(ln, vac(a, ln) - rg) for ln, rg in node] for a, node in enumerate(rc.nu, 1)])


# ------------------------------------------------------------ enumeration

@lru_cache(maxsize=None)
def _partitions(total: int, maxpart: int) -> tuple:
    if total == 0:
        return ((),)
    out = []
    for p in range(min(total, maxpart), 0, -1):
        for rest in _partitions(total - p, p):
            out.append((p,) + rest)
    return tuple(out)


def enumerate_configs(ct, L, lam) -> list:
    """Admissible (L, lam)-configurations as per-node partitions."""
    Lmap = dict(_freeze_L(L))
    lam = cartan.normalize(ct, lam)
    if not cartan.is_dominant(ct, lam):
        return []
    sizes = config_sizes(ct, Lmap, lam)
    if sizes is None:
        return []
    out = []
    for lengths in itertools.product(*(_partitions(s, s) for s in sizes)):
        if is_admissible_config(ct, Lmap, lengths):
            out.append(lengths)
    return out


def _rigging_choices(m: int, p: int):
    return itertools.combinations_with_replacement(range(p, -1, -1), m)


def enumerate_rc(ct, L, lam) -> list:
    """All rigged configurations in RC(L, lam)."""
    Lmap = dict(_freeze_L(L))
    out = []
    for lengths in enumerate_configs(ct, Lmap, lam):
        vac = _Vac(ct, lengths, Lmap)
        blocks = []
        for a, part in enumerate(lengths, 1):
            for ln in sorted(set(part), reverse=True):
                m = part.count(ln)
                blocks.append((a, ln, list(_rigging_choices(m, vac(a, ln)))))
        for choice in itertools.product(*(b[2] for b in blocks)):
            nu = [[] for _ in range(ct[1])]
            for (a, ln, _), rigs in zip(blocks, choice):
                nu[a - 1].extend((ln, rg) for rg in rigs)
            out.append(RC.make(ct, Lmap, nu))
    return out


# ------------------------------------------------------------ L arithmetic

def _L_add(Lmap: dict, key, delta: int) -> dict:
    out = dict(Lmap)
    out[key] = out.get(key, 0) + delta
    if out[key] < 0:
        raise ValueError(f"multiplicity array lacks factor {key}")
    if out[key] == 0:
        del out[key]
    return out


def lh_L(Lmap: dict) -> dict:
    return _L_add(Lmap, (1, 1), -1)


def ls_L(Lmap: dict, r: int, s: int) -> dict:
    out = _L_add(Lmap, (r, s), -1)
    out = _L_add(out, (r, s - 1), 1)
    return _L_add(out, (r, 1), 1)


def lb_L(Lmap: dict, r: int) -> dict:
    out = _L_add(Lmap, (r, 1), -1)
    out = _L_add(out, (1, 1), 1)
    return _L_add(out, (r - 1, 1), 1)


# -------------------------------------------------------- delta machinery

class _Work:
    """Mutable copy of a configuration used while selecting and moving boxes."""

    def __init__(self, rc: RC):
        self.ct = rc.ct
        self.nodes = [list(map(list, node)) for node in rc.nu]
        self.vac = vacancies(rc)
        self.taken = set()

    def find(self, a, pred, lo=1, hi=INF, largest=False):
        """Index of the smallest (largest) untaken string at node a with lo <= len <= hi and pred."""
        best = None
        for k, (ln, rg) in enumerate(self.nodes[a - 1]):
            if (a, k) in self.taken or not (lo <= ln <= hi) or not pred(a, ln, rg):
                continue
            if best is None:
                best = k
            else:
                bl = self.nodes[a - 1][best][0]
                if (ln > bl) if largest else (ln < bl):
                    best = k
        if best is not None:
            self.taken.add((a, best))
        return best

    def length(self, a, k):
        return self.nodes[a - 1][k][0]


def _singular_pred(work: _Work, mode: str):
    if mode == "quantum":
        return lambda a, ln, rg: rg == work.vac(a, ln)
    return lambda a, ln, rg: rg == 0


def _rebuild(rc: RC, work: _Work, new_L: dict, changed: dict, mode: str) -> RC:
    """Apply length changes; selected strings become singular (cosingular) afterwards."""
    lengths = []
    for a, node in enumerate(work.nodes, 1):
        lens = []
        for k, (ln, _) in enumerate(node):
            lens.append(ln + changed.get((a, k), 0))
        extra = changed.get((a, "new"), 0)
        lens.extend([1] * extra)
        lengths.append(tuple(x for x in lens if x > 0))
    new_vac = _Vac(rc.ct, lengths, new_L)
    nu = []
    for a, node in enumerate(work.nodes, 1):
        strings = []
        for k, (ln, rg) in enumerate(node):
            d = changed.get((a, k), 0)
            nl = ln + d
            if nl <= 0:
                continue
            if d:
                strings.append((nl, new_vac(a, nl) if mode == "quantum" else 0))
            elif mode == "quantum":
                strings.append((ln, rg))
            else:
                strings.append((ln, new_vac(a, ln) - (work.vac(a, ln) - rg)))
        for _ in range(changed.get((a, "new"), 0)):
            strings.append((1, new_vac(a, 1) if mode == "quantum" else 0))
        nu.append(strings)
    return RC.make(rc.ct, new_L, nu)


def delta_bar(rc: RC, mode: str = "quantum") -> tuple:
    """Remove a box B^1 from the left: returns (new rc, rank letter).

    mode="coquantum" runs the cosingular version (the direct form of delta tilde).
    """
    Lmap = rc.Lmap
    if Lmap.get((1, 1), 0) < 1:
        raise ValueError("delta_bar needs a factor B^{1,1}")
    kind, n = rc.ct
    work = _Work(rc)
    sing = _singular_pred(work, mode)
    selected = []
    rank = None
    ell = 1
    top = n if kind == "A" else n - 2
    for a in range(1, top + 1):
        k = work.find(a, sing, lo=ell)
        if k is None:
            rank = a
            break
        selected.append((a, k))
        ell = work.length(a, k)
    if rank is None and kind == "A":
        rank = n + 1
    if rank is None:
        ki = work.find(n - 1, sing, lo=ell)
        kj = work.find(n, sing, lo=ell)
        if ki is None and kj is None:
            rank = n - 1
        elif kj is None:
            selected.append((n - 1, ki))
            rank = n
        elif ki is None:
            selected.append((n, kj))
            rank = -n
        else:
            selected += [(n - 1, ki), (n, kj)]
            ell_bar = max(work.length(n - 1, ki), work.length(n, kj))
            rank = -1
            for a in range(n - 2, 0, -1):
                k = work.find(a, sing, lo=ell_bar)
                if k is None:
                    rank = -(a + 1)
                    break
                selected.append((a, k))
                ell_bar = work.length(a, k)
    changed = {key: -1 for key in selected}
    return _rebuild(rc, work, lh_L(Lmap), changed, mode), rank


def delta_tilde(rc: RC) -> tuple:
    """Cosingular reduction, computed as theta . delta_bar . theta."""
    out, rank = delta_bar(theta(rc))
    return theta(out), rank


def delta_tilde_direct(rc: RC) -> tuple:
    return delta_bar(rc, mode="coquantum")


def delta_bar_inv(rc: RC, b: int) -> RC:
    """Add a box B^1 on the left with letter b (inverse of delta_bar)."""
    kind, n = rc.ct
    ct = rc.ct
    from .crystal_base import letter_weight
    target = cartan.add(rc.lam, letter_weight(ct, b))
    if not cartan.is_dominant(ct, cartan.normalize(ct, target)):
        raise ValueError("target weight is not dominant")
    work = _Work(rc)
    sing = _singular_pred(work, "quantum")
    changed = {}

    def pick(a, hi, excl_new=False):
        """Largest singular string at node a of length <= hi; 0 (a new string) if none."""
        k = work.find(a, sing, hi=hi, largest=True)
        if k is None:
            changed[(a, "new")] = changed.get((a, "new"), 0) + 1
            return 0
        changed[(a, k)] = 1
        return work.length(a, k)

    def a_chain(start, bound):
        for a in range(start, 0, -1):
            bound = pick(a, bound)

    if b > 0:
        a_chain(b - 1, INF)
    elif kind == "D" and b == -n:
        sn = pick(n, INF)
        sn2 = pick(n - 2, sn)
        a_chain(n - 3, sn2)
    elif kind == "D" and b == -(n - 1):
        s1 = pick(n - 1, INF)
        s2 = pick(n, INF)
        sn2 = pick(n - 2, min(s1, s2))
        a_chain(n - 3, sn2)
    elif kind == "D":
        r = -b
        bound = INF
        for a in range(r, n - 1):
            bound = pick(a, bound)
        s1 = pick(n - 1, bound)
        s2 = pick(n, bound)
        sn2 = pick(n - 2, min(s1, s2))
        a_chain(n - 3, sn2)
    else:
        raise ValueError(f"letter {b} not valid for {ct}")
    new_L = _L_add(rc.Lmap, (1, 1), 1)
    return _rebuild(rc, work, new_L, changed, "quantum")


def delta_tilde_inv(rc: RC, b: int) -> RC:
    return theta(delta_bar_inv(theta(rc), b))


# ----------------------------------------------------------- dual steps

def delta_vee(rc: RC) -> tuple:
    """Remove a dual box B^{1 vee} (node n, width 1): returns (new rc, dual rank letter index)."""
    kind, n = rc.ct
    if kind != "A":
        raise ValueError("delta_vee is a type A operation")
    Lmap = rc.Lmap
    if Lmap.get((n, 1), 0) < 1:
        raise ValueError("delta_vee needs a factor B^{n,1}")
    work = _Work(rc)
    sing = _singular_pred(work, "quantum")
    selected = []
    ell = 0
    stop = 0
    for i in range(n, 0, -1):
        k = work.find(i, sing, lo=max(ell, 1))
        if k is None:
            stop = i
            break
        selected.append((i, k))
        ell = work.length(i, k)
    changed = {key: -1 for key in selected}
    new_L = _L_add(Lmap, (n, 1), -1)
    return _rebuild(rc, work, new_L, changed, "quantum"), stop + 1


def delta_vee_inv(rc: RC, a: int) -> RC:
    """Inverse of delta_vee for the dual letter a^vee."""
    kind, n = rc.ct
    work = _Work(rc)
    sing = _singular_pred(work, "quantum")
    changed = {}
    bound = INF
    for i in range(a, n + 1):
        k = work.find(i, sing, hi=bound, largest=True)
        if k is None:
            changed[(i, "new")] = changed.get((i, "new"), 0) + 1
            bound = 0
        else:
            changed[(i, k)] = 1
            bound = work.length(i, k)
    new_L = _L_add(rc.Lmap, (n, 1), 1)
    return _rebuild(rc, work, new_L, changed, "quantum")


# ----------------------------------------------------------- splittings

def j_bar(rc: RC, r: int, s: int) -> RC:
    """Inclusion for left splitting of B^{r,s}: data unchanged, context ls(L)."""
    if s < 2 or rc.Lmap.get((r, s), 0) < 1:
        raise ValueError("j_bar needs a factor B^{r,s} with s >= 2")
    return rc.with_L(ls_L(rc.Lmap, r, s))


def j_tilde(rc: RC, r: int, s: int) -> RC:
    """Left splitting keeping coquantum numbers: +1 on node r strings shorter than s."""
    out = j_bar(rc, r, s)
    nu = [list(node) for node in out.nu]
    nu[r - 1] = [(ln, rg + 1 if ln < s else rg) for ln, rg in nu[r - 1]]
    return out.with_nu(nu)


def j_bar_inv(rc: RC, r: int, s: int) -> RC:
    """Merge B^{r,1} (x) B^{r,s-1} back into B^{r,s}; requires rc in the image of j_bar."""
    Lmap = _L_add(_L_add(_L_add(rc.Lmap, (r, 1), -1), (r, s - 1), -1), (r, s), 1)
    out = rc.with_L(Lmap)
    if not is_valid(out):
        raise ValueError("rigged configuration is not in the image of j_bar")
    return out


def i_bar(rc: RC, r: int, cosingular: bool = False) -> RC:
    """Box splitting of B^{r,1}: add singular (cosingular) length-1 strings at nodes a < r."""
    if r < 2 or rc.Lmap.get((r, 1), 0) < 1:
        raise ValueError("i_bar needs a column B^{r,1} with r >= 2")
    new_L = lb_L(rc.Lmap, r)
    lengths = [list(rc.partition(b)) for b in range(1, rc.ct[1] + 1)]
    for a in range(1, r):
        lengths[a - 1].append(1)
    vac = _Vac(rc.ct, [tuple(x) for x in lengths], new_L)
    nu = [list(node) for node in rc.nu]
    for a in range(1, r):
        nu[a - 1].append((1, 0 if cosingular else vac(a, 1)))
    return RC.make(rc.ct, new_L, nu)


def i_tilde(rc: RC, r: int) -> RC:
    return i_bar(rc, r, cosingular=True)


def i_bar_inv(rc: RC, r: int) -> RC:
    """Undo i_bar: remove one singular length-1 string at each node a < r."""
    vac = vacancies(rc)
    nu = [list(node) for node in rc.nu]
    for a in range(1, r):
        p = vac(a, 1)
        if (1, p) not in nu[a - 1]:
            raise ValueError("rigged configuration is not in the image of i_bar")
        nu[a - 1].remove((1, p))
    Lmap = _L_add(_L_add(_L_add(rc.Lmap, (1, 1), -1), (r - 1, 1), -1), (r, 1), 1)
    out = RC.make(rc.ct, Lmap, nu)
    if not is_valid(out):
        raise ValueError("rigged configuration is not in the image of i_bar")
    return out


def rc_dual(rc: RC) -> RC:
    """Type A duality: reverse node order and complement riggings."""
    kind, n = rc.ct
    vac = vacancies(rc)
    nu = [[(ln, vac(n + 1 - a, ln) - rg) for ln, rg in rc.nu[n - a]] for a in range(1, n + 1)]
    L = {(n + 1 - a, i): c for (a, i), c in rc.Lmap.items()}
    return RC.make(rc.ct, L, nu)


def rc_to_json(rc: RC) -> dict:
    return {
        "nu": [[[ln, rg] for ln, rg in node] for node in rc.nu],
        "L": [[a, i, c] for (a, i), c in rc.L],
        "lambda": [int(x) if Fraction(x).denominator == 1 else str(x) for x in rc.lam],
    }


def rc_from_json(ct, data: dict) -> RC:
    L = {(a, i): c for a, i, c in data["L"]}
    return RC.make(ct, L, [[tuple(s) for s in node] for node in data["nu"]])
