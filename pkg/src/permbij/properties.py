"""Structural properties of phi and alpha, phrased as per-word checks that
return the offending positions (empty means the property holds)."""

from __future__ import annotations

from .bijections import _alpha, _phi, classify, decompose_type_I
from .permcore import lrmax_positions, rlmax_positions


def _adjacent(image, a, b) -> bool:
    """``a`` immediately followed by ``b``."""
    pos = {c: i for i, c in enumerate(image)}
    return pos[b] == pos[a] + 1


def phi_descent_breaks(w, through_max: bool = True, image=None) -> list:
    """1-based descent positions i (before the maximum, or at it when
    ``through_max``) whose two letters are not adjacent in phi(w).

    The descent right after the maximum splits whenever the top block of
    the type I parse is empty, so only ``through_max=False`` holds on the
    whole class.
    """
    w = tuple(w)
    if not w:
        return []
    image = _phi(w) if image is None else image
    x = w.index(max(w))
    stop = x + 1 if through_max else x
    return [i + 1 for i in range(min(stop, len(w) - 1)) if w[i] > w[i + 1] and not _adjacent(image, w[i], w[i + 1])]


def phi_descent_at_max_kept(w, image=None) -> bool | None:
    """Whether the descent right after the maximum survives phi; None when
    the maximum is last.  Holds exactly when the top block is non-empty."""
    w = tuple(w)
    x = w.index(max(w))
    if x + 1 >= len(w):
        return None
    image = _phi(w) if image is None else image
    return _adjacent(image, w[x], w[x + 1])


def _nontrivial(tag: str) -> bool:
    return not tag.startswith("trivial")


def alpha_relative_order_kept(w, image=None, tag=None) -> bool:
    """Letters at l_{s-1}, l_s, r_2 appear in the same left-to-right order in
    w and alpha(w).  Vacuously true for trivial words."""
    w = tuple(w)
    tag = tag or classify(w, "source", check=False).tag
    if not _nontrivial(tag):
        return True
    image = _alpha(w) if image is None else image
    L, R = lrmax_positions(w), rlmax_positions(w)
    trio = [w[L[-2]], w[L[-1]], w[R[1]]]
    pos = {c: i for i, c in enumerate(image)}
    return sorted(trio, key=w.index) == sorted(trio, key=pos.__getitem__)


def alpha_adjacency_iff(w, image=None, tag=None) -> bool:
    """Consecutive positions of the two relevant left-to-right maxima in w
    iff those letters are adjacent in alpha(w).  Vacuously true for trivial
    words."""
    w = tuple(w)
    tag = tag or classify(w, "source", check=False).tag
    if not _nontrivial(tag):
        return True
    image = _alpha(w) if image is None else image
    L, R = lrmax_positions(w), rlmax_positions(w)
    if w[L[-2]] < w[R[1]]:
        a, b = L[-2], L[-1]
    else:
        a, b = L[-3], L[-2]
    return (a + 1 == b) == _adjacent(image, w[a], w[b])


def alpha_lrmax_pair_breaks(w, image=None, tag=None, literal: bool = True) -> list:
    """Indices i (1-based over left-to-right maxima) where w_{l_i} w_{l_i + 1}
    lies in the guaranteed range but is not adjacent in alpha(w).

    Guaranteed ranges: descents for i <= s-2 on type II-4 words and i <= s-1
    otherwise; ascents for i <= s-2.  With ``literal=False`` words whose only
    right-to-left maximum is the last letter also get the s-2 bound for
    descents; the literal bound fails there because alpha hands such words
    to phi, which splits the descent after the maximum.
    """
    w = tuple(w)
    if not w:
        return []
    tag = tag or classify(w, "source", check=False).tag
    image = _alpha(w) if image is None else image
    L = lrmax_positions(w)
    s = len(L)
    short = tag == "II-4" or (not literal and tag == "trivial-rlmax1")
    desc_bound = s - 2 if short else s - 1
    out = []
    for i, li in enumerate(L, 1):
        if li + 1 >= len(w):
            continue
        bound = desc_bound if w[li] > w[li + 1] else s - 2
        if i <= bound and not _adjacent(image, w[li], w[li + 1]):
            out.append(i)
    return out


def top_block_empty(w) -> bool:
    return not decompose_type_I(w, check=False).top_block
