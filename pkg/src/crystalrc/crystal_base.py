"""Letter crystals of classical types A/B/C/D and tensor products of words.

Conventions: a letter is an int; k is the letter k, -k is k-bar, 0 is the B-type
middle letter, and DUAL + k is the dual type-A letter k^vee.  A tensor element is a
tuple of factor payloads, leftmost factor first, each payload being the factor's
reading word.  Tensor products use the anti-Kashiwara convention: in b2 (x) b1,
f_i acts on b2 exactly when eps_i(b2) >= phi_i(b1).
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import cartan

DUAL = 1000


def dual_letter(k: int) -> int:
    return DUAL + k


def is_dual(x: int) -> bool:
    return x > DUAL // 2


def undual(x: int) -> int:
    return x - DUAL


def alphabet(ct) -> list[int]:
    """Letters of the vector representation in increasing order."""
    kind, n = ct
    if kind == "A":
        return list(range(1, n + 2))
    barred = [-k for k in range(n, 0, -1)]
    if kind == "B":
        return list(range(1, n + 1)) + [0] + barred
    return list(range(1, n + 1)) + barred


def dual_alphabet(ct) -> list[int]:
    """Dual type-A letters in increasing order N^vee < ... < 1^vee."""
    kind, n = ct
    assert kind == "A"
    return [dual_letter(k) for k in range(n + 1, 0, -1)]


@lru_cache(maxsize=None)
def letter_tables(ct) -> tuple[dict, dict]:
    """Per node dictionaries for f_i and e_i on the letter crystal and its dual."""
    kind, n = ct
    f = {i: {} for i in range(1, n + 1)}
    for i in range(1, n + 1):
        if kind == "A" or i < n:
            f[i][i] = i + 1
            if kind != "A":
                f[i][-(i + 1)] = -i
        elif kind == "B":
            f[n][n] = 0
            f[n][0] = -n
        elif kind == "C":
            f[n][n] = -n
        else:
            f[n][n - 1] = -n
            f[n][n] = -(n - 1)
    if kind == "A":
        for i in range(1, n + 1):
            # f_i(x^vee) = e_i(x)^vee
            f[i][dual_letter(i + 1)] = dual_letter(i)
    e = {i: {v: k for k, v in f[i].items()} for i in f}
    return f, e


def letter_f(ct, i: int, x: int) -> Optional[int]:
    return letter_tables(ct)[0][i].get(x)


def letter_e(ct, i: int, x: int) -> Optional[int]:
    return letter_tables(ct)[1][i].get(x)


@lru_cache(maxsize=None)
def letter_stats(ct) -> dict:
    """Map (i, letter) -> (eps, phi) by walking strings in the letter tables."""
    f, e = letter_tables(ct)
    letters = alphabet(ct) + (dual_alphabet(ct) if ct[0] == "A" else [])
    out = {}
    for i in f:
        for x in letters:
            eps, y = 0, x
            while y in e[i]:
                y = e[i][y]
                eps += 1
            phi, y = 0, x
            while y in f[i]:
                y = f[i][y]
                phi += 1
            out[i, x] = (eps, phi)
    return out


def letter_weight(ct, x: int) -> tuple:
    if is_dual(x):
        return cartan.unit(ct, undual(x), -1)
    if x == 0:
        return cartan.zero_weight(ct)
    return cartan.unit(ct, abs(x), 1 if x > 0 else -1)


# ------------------------------------------------------------------ words

def word_weight(ct, word: Iterable[int]) -> tuple:
    w = [0] * cartan.weight_length(ct)
    for x in word:
        if x == 0:
            continue
        if is_dual(x):
            w[undual(x) - 1] -= 1
        else:
            w[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(w)


def _signature(stats, i: int, word) -> tuple[list, list]:
    """Unmatched + positions and unmatched - positions after cancelling (-,+) pairs."""
    plus, minus = [], []
    for pos, x in enumerate(word):
        eps, phi = stats[i, x]
        for _ in range(phi):
            if minus:
                minus.pop()
            else:
                plus.append(pos)
        minus.extend([pos] * eps)
    return plus, minus


def word_f(ct, i: int, word: tuple) -> Optional[tuple]:
    plus, _ = _signature(letter_stats(ct), i, word)
    if not plus:
        return None
    pos = plus[-1]
    return word[:pos] + (letter_tables(ct)[0][i][word[pos]],) + word[pos + 1:]


def word_e(ct, i: int, word: tuple) -> Optional[tuple]:
    _, minus = _signature(letter_stats(ct), i, word)
    if not minus:
        return None
    pos = minus[0]
    return word[:pos] + (letter_tables(ct)[1][i][word[pos]],) + word[pos + 1:]


def word_eps_phi(ct, i: int, word) -> tuple[int, int]:
    plus, minus = _signature(letter_stats(ct), i, word)
    return len(minus), len(plus)


# ---------------------------------------------------------------- tensors

def flatten(b) -> tuple:
    return tuple(x for w in b for x in w)


def _unflatten(b, flat) -> tuple:
    out, k = [], 0
    for w in b:
        out.append(tuple(flat[k:k + len(w)]))
        k += len(w)
    return tuple(out)


def tensor_f(ct, i: int, b) -> Optional[tuple]:
    """Lowering operator f_i on a tensor of reading words."""
    flat = word_f(ct, i, flatten(b))
    return None if flat is None else _unflatten(b, flat)


def tensor_e(ct, i: int, b) -> Optional[tuple]:
    flat = word_e(ct, i, flatten(b))
    return None if flat is None else _unflatten(b, flat)


def eps_phi(ct, i: int, b) -> tuple[int, int]:
    """(eps_i, phi_i) of a tensor, via the pairwise tensor recursion."""
    stats = letter_stats(ct)
    eps = phi = 0
    first = True
    # fold from the right: current = b_k (x) current
    for x in reversed(flatten(b)):
        e2, p2 = stats[i, x]
        if first:
            eps, phi, first = e2, p2, False
            continue
        eps, phi = eps + max(0, e2 - phi), p2 + max(0, phi - e2)
    return eps, phi


def wt(ct, b) -> tuple:
    return word_weight(ct, flatten(b))


def nodes(ct) -> range:
    return range(1, ct[1] + 1)


def is_classical_hw(ct, b) -> bool:
    flat = flatten(b)
    return all(word_eps_phi(ct, i, flat)[0] == 0 for i in nodes(ct))


def to_highest_weight(ct, b) -> tuple[tuple, list[int]]:
    """Raise b to its component's highest weight vector; returns (hw, e-path applied)."""
    path = []
    flat = flatten(b)
    moved = True
    while moved:
        moved = False
        for i in nodes(ct):
            up = word_e(ct, i, flat)
            if up is not None:
                flat = up
                path.append(i)
                moved = True
                break
    return _unflatten(b, flat), path


def apply_f_path(ct, b, path: Iterable[int]):
    """Apply f_{i_1} first, then f_{i_2}, ... (path listed in application order)."""
    flat = flatten(b)
    for i in path:
        flat = word_f(ct, i, flat)
        if flat is None:
            return None
    return _unflatten(b, flat)


def component_closure(ct, hw, limit: int = 10**6) -> list:
    """Breadth-first closure of an element under all classical f_i."""
    seen = {hw}
    order = [hw]
    queue = deque([hw])
    while queue:
        b = queue.popleft()
        for i in nodes(ct):
            c = tensor_f(ct, i, b)
            if c is not None and c not in seen:
                seen.add(c)
                order.append(c)
                queue.append(c)
                if len(seen) > limit:
                    raise RuntimeError("closure exceeds limit")
    return order


def _polynomial(ct, w) -> tuple:
    """Type A weights stay as gl content vectors (partitions); other types are canonical."""
    return tuple(w) if ct[0] == "A" else cartan.normalize(ct, w)


def highest_weight_element(ct, lam) -> tuple:
    """Some highest weight element of weight lam inside a tensor power of the letter crystal."""
    lam = _polynomial(ct, lam)
    if not cartan.is_dominant(ct, lam) or (ct[0] == "A" and min(lam) < 0):
        raise ValueError(f"{lam} is not dominant")
    size = sum(abs(x) for x in lam)
    letters = [(x,) for x in alphabet(ct)]
    found = [b for b in enumerate_hw(ct, [letters] * size, lam) if _polynomial(ct, wt(ct, b)) == lam]
    if not found:
        raise ValueError(f"{lam} is not realized by letter tensors")
    return found[0]


def lambda_plus(ct, lam) -> set:
    """Highest weights mu with B(mu) a constituent of B(Lambda_1) (x) B(lam), by decomposition.

    Type A weights are partitions (gl content vectors), so mu is lam plus one box.
    """
    letters = [(x,) for x in alphabet(ct)]
    comp = component_closure(ct, highest_weight_element(ct, lam))
    return {_polynomial(ct, wt(ct, (x,) + c)) for x in letters for c in comp
            if is_classical_hw(ct, (x,) + c)}


def lambda_minus(ct, lam) -> set:
    """Dominant mu with B(lam) a constituent of B(Lambda_1) (x) B(mu)."""
    lam = _polynomial(ct, lam)
    out = set()
    for x in alphabet(ct):
        mu = cartan.sub(lam, letter_weight(ct, x))
        mu = _polynomial(ct, mu)
        if not cartan.is_dominant(ct, mu) or (ct[0] == "A" and min(mu) < 0):
            continue
        if lam in lambda_plus(ct, mu):
            out.add(mu)
    return out


def enumerate_hw(ct, factor_elements: list[list[tuple]], lam=None) -> list:
    """Classical highest weight elements of a tensor product, optionally of weight lam.

    factor_elements lists the payloads of each factor, leftmost factor first.
    """
    infos = []
    for elems in factor_elements:
        info = []
        for x in elems:
            eps = tuple(word_eps_phi(ct, i, x)[0] for i in nodes(ct))
            info.append((x, eps, word_weight(ct, x)))
        infos.append(info)
    target = None if lam is None else cartan.normalize(ct, lam)
    out = []
    nfac = len(infos)

    def grow(j, mu, acc):
        if j < 0:
            if target is None or cartan.normalize(ct, mu) == target:
                out.append(tuple(reversed(acc)))
            return
        for x, eps, w in infos[j]:
            if all(eps[i - 1] <= cartan.pairing(ct, i, mu) for i in nodes(ct)):
                acc.append(x)
                grow(j - 1, cartan.add(mu, w), acc)
                acc.pop()

    grow(nfac - 1, cartan.zero_weight(ct), [])
    return out


# ------------------------------------------------------------- dualities

def star_letter(ct, x: int) -> int:
    kind, n = ct
    if kind == "A":
        if is_dual(x):
            return dual_letter(n + 2 - undual(x))
        return n + 2 - x
    if kind == "D" and n % 2 == 1 and abs(x) == n:
        return x
    return -x


def star(ct, b) -> tuple:
    """The involution * on tensors of words: reverse factors, reverse words, star letters."""
    return tuple(tuple(star_letter(ct, x) for x in reversed(w)) for w in reversed(b))


def dual(b) -> tuple:
    """Contragredient dual of a tensor of type-A words (rows and dual rows)."""
    def flip(x):
        return undual(x) if is_dual(x) else dual_letter(x)
    return tuple(tuple(flip(x) for x in reversed(w)) for w in reversed(b))


def tau_node(ct, i: int) -> int:
    return cartan.tau_node(ct, i)


def format_letter(x: int) -> str:
    if is_dual(x):
        return f"{undual(x)}v"
    return str(x)


def parse_letter(tok: str) -> int:
    tok = tok.strip()
    if tok.endswith("v"):
        return dual_letter(int(tok[:-1]))
    return int(tok)


def format_path(b) -> str:
    return "|".join(",".join(format_letter(x) for x in w) for w in b)


def parse_path(text: str) -> tuple:
    if not text.strip():
        return ()
    out = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        out.append(tuple(parse_letter(t) for t in chunk.split(",")) if chunk else ())
    return tuple(out)


def brute_eps_phi(ct, i: int, b) -> tuple[int, int]:
    """String lengths by repeated application; oracle for eps_phi."""
    eps, c = 0, b
    while (c := tensor_e(ct, i, c)) is not None:
        eps += 1
    phi, c = 0, b
    while (c := tensor_f(ct, i, c)) is not None:
        phi += 1
    return eps, phi


def crystal_edges(ct, elements, op: Callable = tensor_f):
    """All (b, i, f_i b) arrows within a list of elements."""
    for b in elements:
        for i in nodes(ct):
            c = op(ct, i, b)
            if c is not None:
                yield b, i, c
