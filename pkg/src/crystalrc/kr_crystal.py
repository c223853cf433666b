"""KR crystal carriers (rows, type-A rectangles, dual rows) and splitting/projection maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import cartan
from . import crystal_base as cb
from .cartan import AffType


@dataclass(frozen=True, order=True)
class Factor:
    """The KR crystal B^{r,s}; dual=True marks the type-A dual row B^{s vee}."""

    r: int = 1
    s: int = 1
    dual: bool = False

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("factor sizes must be positive")
        if self.dual and self.r != 1:
            raise ValueError("dual factors are rows")

    def __str__(self):
        if self.dual:
            return f"{self.s}v"
        return str(self.s) if self.r == 1 else f"{self.r}:{self.s}"


def row(s: int) -> Factor:
    return Factor(1, s)


def dual_row(s: int) -> Factor:
    return Factor(1, s, True)


def parse_factors(text: str) -> tuple:
    """Parse "1,2,2,3" (rows), "2:1" (rectangle r:s) and "2v" (dual row)."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.endswith("v"):
            out.append(dual_row(int(tok[:-1])))
        elif ":" in tok:
            r, s = tok.split(":")
            out.append(Factor(int(r), int(s)))
        else:
            out.append(row(int(tok)))
    return tuple(out)


def check_factor(aff: AffType, f: Factor):
    if aff.family != "A1" and (f.r != 1 or f.dual):
        raise ValueError(f"factor {f} is only available in type A")
    if aff.family == "A1" and f.r > aff.rank:
        raise ValueError(f"B^{{{f.r},{f.s}}} needs r <= {aff.rank}")


def node_of(aff: AffType, f: Factor) -> int:
    """Dynkin node carrying the factor in the multiplicity array."""
    return aff.rank if f.dual else f.r


def multiplicity_array(aff: AffType, factors) -> dict:
    """Counts L[(a, i)] of factors B^{a,i}."""
    L = {}
    for f in factors:
        key = (node_of(aff, f), f.s)
        L[key] = L.get(key, 0) + 1
    return L


def rect_hw_word(r: int, s: int) -> tuple:
    """Reading word of the r x s tableau whose row i is filled with i."""
    return tuple(range(r, 0, -1)) * s


def component_hws(aff: AffType, f: Factor) -> list[tuple]:
    """Classical highest weight payloads of the factor, one per component."""
    check_factor(aff, f)
    if f.dual:
        return [(cb.dual_letter(aff.rank + 1),) * f.s]
    if f.r > 1:
        return [rect_hw_word(f.r, f.s)]
    return [(1,) * k for k in cartan.row_lengths(aff, f.s)]


def u_payload(aff: AffType, f: Factor) -> tuple:
    return component_hws(aff, f)[0]


def u_of(aff: AffType, factors) -> tuple:
    """The distinguished element u(B): tensor of the maximal highest weight payloads."""
    return tuple(u_payload(aff, f) for f in factors)


@lru_cache(maxsize=None)
def factor_elements(aff: AffType, f: Factor) -> tuple:
    """All payloads of the factor, grouped by component in closure order."""
    ct = aff.classical
    out = []
    for hw in component_hws(aff, f):
        out.extend(w for (w,) in cb.component_closure(ct, (hw,)))
    return tuple(out)


@lru_cache(maxsize=None)
def factor_elements_set(aff: AffType, f: Factor) -> frozenset:
    return frozenset(factor_elements(aff, f))


@lru_cache(maxsize=None)
def summand_index(aff: AffType, f: Factor) -> dict:
    """Payload -> index r of its classical component (length s - r or s - 2r)."""
    out = {}
    for r, hw in enumerate(component_hws(aff, f)):
        for (w,) in cb.component_closure(aff.classical, (hw,)):
            out[w] = r
    return out


def all_elements(aff: AffType, factors) -> list:
    """Every element of a tensor product (small cases only)."""
    out = [()]
    for f in reversed(factors):
        out = [(w,) + b for w in factor_elements(aff, f) for b in out]
    return out


def hw_paths(aff: AffType, factors, lam=None) -> list:
    """P(B, lam): classical highest weight elements of the tensor product."""
    for f in factors:
        check_factor(aff, f)
    return cb.enumerate_hw(aff.classical, [factor_elements(aff, f) for f in factors], lam)


# --------------------------------------------------------- tableau views

def columns(word: tuple, r: int) -> list[tuple]:
    """Columns (top to bottom) of a rectangle from its reading word."""
    return [tuple(reversed(word[k:k + r])) for k in range(0, len(word), r)]


def word_from_columns(cols) -> tuple:
    return tuple(x for c in cols for x in reversed(c))


def rows_of(word: tuple, r: int) -> list[tuple]:
    cols = columns(word, r)
    return [tuple(c[i] for c in cols) for i in range(r)]


def format_tableau(word: tuple, r: int) -> str:
    """Row-by-row text "11/23" of a rectangle (entries comma separated when wide)."""
    rows = rows_of(word, r)
    sep = "" if all(0 < x < 10 for x in word) else ","
    return "/".join(sep.join(str(x) for x in rw) for rw in rows)


# ------------------------------------------------------------- factor maps

def split_factors_ls(factors) -> tuple:
    """ls on the factor list: B^{r,s} (x) B -> B^{r,1} (x) B^{r,s-1} (x) B."""
    f = factors[0]
    if f.s < 2:
        raise ValueError("ls needs width >= 2")
    return (Factor(f.r, 1, f.dual), Factor(f.r, f.s - 1, f.dual)) + tuple(factors[1:])


def split_factors_rs(factors) -> tuple:
    f = factors[-1]
    if f.s < 2:
        raise ValueError("rs needs width >= 2")
    return tuple(factors[:-1]) + (Factor(f.r, f.s - 1, f.dual), Factor(f.r, 1, f.dual))


def split_factors_lb(factors) -> tuple:
    f = factors[0]
    if f.r < 2 or f.s != 1:
        raise ValueError("lb needs a column of height >= 2")
    return (Factor(1, 1), Factor(f.r - 1, 1)) + tuple(factors[1:])


def split_factors_rb(factors) -> tuple:
    f = factors[-1]
    if f.r < 2 or f.s != 1:
        raise ValueError("rb needs a column of height >= 2")
    return tuple(factors[:-1]) + (Factor(f.r - 1, 1), Factor(1, 1))


def _ls_payload(aff: AffType, f: Factor, w: tuple) -> tuple:
    if f.s < 2:
        raise ValueError("ls needs width >= 2")
    if f.dual:
        return (w[:1], w[1:])
    if f.r > 1:
        return (w[:f.r], w[f.r:])
    if len(w) >= 2:
        return (w[:1], w[1:])
    if len(w) == 1:
        return (w, ())
    return ((-1,), (1,))


def _rs_payload(aff: AffType, f: Factor, w: tuple) -> tuple:
    if f.s < 2:
        raise ValueError("rs needs width >= 2")
    if f.dual:
        return (w[:-1], w[-1:])
    if f.r > 1:
        return (w[:-f.r], w[-f.r:])
    if len(w) >= 2:
        return (w[:-1], w[-1:])
    if len(w) == 1:
        return ((), w)
    return ((-1,), (1,))


def ls(aff: AffType, factors, b) -> tuple:
    """Left splitting of the leftmost factor."""
    return _ls_payload(aff, factors[0], b[0]) + tuple(b[1:])


def rs(aff: AffType, factors, b) -> tuple:
    """Right splitting of the rightmost factor."""
    return tuple(b[:-1]) + _rs_payload(aff, factors[-1], b[-1])


def ls_vee(b) -> tuple:
    """Split the leftmost dual letter off a leftmost dual row."""
    w = b[0]
    if len(w) < 2:
        raise ValueError("ls_vee needs a dual row of length >= 2")
    return (w[:1], w[1:]) + tuple(b[1:])


def lb(factors, b) -> tuple:
    """Box splitting: bottom entry of the leftmost column becomes its own factor."""
    f = factors[0]
    if f.r < 2 or f.s != 1:
        raise ValueError("lb needs a column of height >= 2")
    return (b[0][:1], b[0][1:]) + tuple(b[1:])


def rb(factors, b) -> tuple:
    """Box splitting: top entry of the rightmost column becomes its own factor."""
    f = factors[-1]
    if f.r < 2 or f.s != 1:
        raise ValueError("rb needs a column of height >= 2")
    return tuple(b[:-1]) + (b[-1][:-1], b[-1][-1:])


def lh(factors, b) -> tuple:
    """Remove the leftmost factor B^1."""
    if factors[0] != Factor(1, 1) and factors[0] != dual_row(1):
        raise ValueError("lh removes a single box factor")
    return tuple(b[1:])


def rh(factors, b) -> tuple:
    """Remove the rightmost factor B^1."""
    if factors[-1] != Factor(1, 1):
        raise ValueError("rh removes a single box factor")
    return tuple(b[:-1])


def rh_hw(aff: AffType, factors, b) -> tuple:
    """Induced map on highest weight vectors: drop the right factor and raise."""
    hw, _ = cb.to_highest_weight(aff.classical, rh(factors, b))
    return hw


# ------------------------------------------------------------ dualities

def star_factors(factors) -> tuple:
    return tuple(reversed(factors))


def dual_factors(aff: AffType, factors) -> tuple:
    """Factor list of the dual tensor product (type A rows and dual rows)."""
    out = []
    for f in reversed(factors):
        if f.r != 1:
            raise ValueError("duality implemented for rows and dual rows")
        out.append(Factor(1, f.s, not f.dual))
    return tuple(out)


def complement_rectangle(word: tuple, r: int, big_n: int) -> tuple:
    """B^{r,s} dual -> B^{N-r,s}: complement each column and reverse the column order."""
    cols = columns(word, r)
    new_cols = [tuple(k for k in range(1, big_n + 1) if k not in c) for c in reversed(cols)]
    return word_from_columns(new_cols)


def dual_row_to_rectangle(word: tuple, big_n: int) -> tuple:
    """Identify a dual row (reading word of dual letters) with a tableau of B^{N-1,s}."""
    original = tuple(cb.undual(x) for x in reversed(word))
    return complement_rectangle(original, 1, big_n)
