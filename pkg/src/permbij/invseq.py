"""Inversion sequences: validity, strict pattern containment, the Lehmer
code, the right-to-left coding ``ms_code`` with its inverse, and the
entry statistics dist / rep / rlmin / zero / satu."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import InvalidWordError, InvariantError, PreconditionError
from .permcore import as_permutation


def is_inversion_sequence(e: Sequence[int]) -> bool:
    return all(0 <= a < i for i, a in enumerate(e, 1))


def as_inversion_sequence(e) -> tuple:
    e = tuple(int(a) for a in e)
    if not is_inversion_sequence(e):
        raise InvalidWordError(f"{e} is not an inversion sequence (need 0 <= e_i < i)")
    return e


def _pattern_letters(p) -> tuple:
    if isinstance(p, str):
        p = tuple(int(c) for c in p.strip())
    p = tuple(p)
    if len(set(p)) != len(p):
        raise InvalidWordError(f"pattern {p} has repeated letters")
    return p


def _occurs(e, pat, chosen, start) -> bool:
    j = len(chosen)
    if j == len(pat):
        return True
    for pos in range(start, len(e) - (len(pat) - j - 1)):
        a = e[pos]
        # strict: equal entries never stand for distinct pattern letters
        if all(a != c and (a > c) == (pat[j] > pat[i]) for i, c in enumerate(chosen)):
            chosen.append(a)
            hit = _occurs(e, pat, chosen, pos + 1)
            chosen.pop()
            if hit:
                return True
    return False


def seq_contains(e: Sequence[int], p) -> bool:
    """Does some subsequence of ``e`` have the same strict order type as ``p``?

    >>> seq_contains((0, 1, 0, 2), "201")
    False
    """
    e = as_inversion_sequence(e)
    return _occurs(e, _pattern_letters(p), [], 0)


def seq_avoids(e: Sequence[int], patterns) -> bool:
    return not any(seq_contains(e, p) for p in _pattern_list(patterns))


def _pattern_list(patterns) -> tuple:
    if isinstance(patterns, str):
        patterns = patterns.split(",")
    return tuple(_pattern_letters(p) for p in patterns)


def _occurs_before(e, pat, k, chosen, start) -> bool:
    """Fill pattern slots 0..len-2 from ``e`` so that ``k`` completes it."""
    j = len(chosen)
    if j == len(pat) - 1:
        return True
    above_last = pat[j] > pat[-1]
    for pos in range(start, len(e) - (len(pat) - 2 - j)):
        a = e[pos]
        if a == k or (a > k) != above_last:
            continue
        if all(a != c and (a > c) == (pat[j] > pat[i]) for i, c in enumerate(chosen)):
            chosen.append(a)
            hit = _occurs_before(e, pat, k, chosen, pos + 1)
            chosen.pop()
            if hit:
                return True
    return False


def extension_creates(e: Sequence[int], k: int, patterns) -> bool:
    """Does appending ``k`` to ``e`` create an occurrence ending at ``k``?"""
    return any(_occurs_before(tuple(e), pat, k, [], 0) for pat in _pattern_list(patterns))


def all_inversion_sequences(n: int):
    from itertools import product

    return product(*(range(i) for i in range(1, n + 1)))


def _ending_occurrence_mask(arr: np.ndarray, c: int, pat: tuple) -> np.ndarray:
    """Rows of ``arr`` (all of length m) for which appending ``c`` creates an
    occurrence of ``pat`` ending at the new entry."""
    rows, m = arr.shape
    k = len(pat)
    hit = np.zeros(rows, dtype=bool)
    if k - 1 > m:
        return hit
    last = pat[-1]
    for cols in combinations(range(m), k - 1):
        ok = np.ones(rows, dtype=bool)
        for a, ca in enumerate(cols):
            col = arr[:, ca]
            ok &= (col > c) if pat[a] > last else (col < c)
            for b in range(a):
                other = arr[:, cols[b]]
                ok &= (col > other) if pat[a] > pat[b] else (col < other)
            if not ok.any():
                break
        hit |= ok
    return hit


@lru_cache(maxsize=None)
def _class_array(n: int, key: tuple) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    prev = _class_array(n - 1, key)
    parts = []
    for c in range(n):
        bad = np.zeros(len(prev), dtype=bool)
        for pat in key:
            bad |= _ending_occurrence_mask(prev, c, pat)
        keep = prev[~bad]
        parts.append(np.hstack([keep, np.full((len(keep), 1), c, dtype=np.int8)]))
    out = np.vstack(parts)
    out.setflags(write=False)
    return out


def inversion_class_array(n: int, patterns="201,210") -> np.ndarray:
    """All of I_n avoiding ``patterns`` as a read-only int8 array, one row
    per sequence.  Avoidance is inherited by prefixes, so the class is grown
    one entry at a time, testing only occurrences that end at the new entry."""
    if not 0 <= n <= 127:
        raise ValueError("n out of range")
    return _class_array(n, _pattern_list(patterns))


def enumerate_inversion_class(n: int, patterns="201,210") -> list:
    return [tuple(int(a) for a in row) for row in inversion_class_array(n, patterns)]


def count_inversion_class(n: int, patterns="201,210") -> int:
    return len(inversion_class_array(n, patterns))


# ---------------------------------------------------------------------------
# codings


def lehmer_code(p: Sequence[int]) -> tuple:
    """e_i = number of earlier letters larger than p_i."""
    p = as_permutation(p)
    return tuple(sum(1 for a in p[:i] if a > b) for i, b in enumerate(p))


def ms_code(p: Sequence[int]) -> tuple:
    """Right-to-left coding carrying (exc, rlmin, lmaxz) to (rep, rlmin, zero).

    >>> ms_code((5, 8, 2, 9, 3, 7, 4, 1, 6))
    (0, 0, 1, 0, 2, 5, 3, 0, 5)
    """
    p = as_permutation(p)
    n = len(p)
    e = [0] * n
    for i in range(n, 0, -1):
        a = p[i - 1]
        if a <= i:
            e[i - 1] = a - 1
        else:
            k = sum(1 for b in p[:i] if b >= a)  # a is the k-th largest of p_1..p_i
            # distinct values; counting repeats breaks injectivity from n = 5 on
            e[i - 1] = sorted(set(e[i:]))[k - 1]
    return tuple(e)


def ms_decode(e: Sequence[int]) -> tuple:
    """Inverse of :func:`ms_code`.

    Reading right to left, the letters still unplaced are known, so each
    step has few candidates; the unique consistent choice is found by
    backtracking.
    """
    e = as_inversion_sequence(e)
    n = len(e)
    p = [0] * n

    def place(i: int, unused: list) -> bool:
        if i == 0:
            return True
        target = e[i - 1]
        tail = sorted(set(e[i:]))
        cands = []
        if target + 1 <= i and target + 1 in unused:
            cands.append(target + 1)
        desc = sorted(unused, reverse=True)
        for k, a in enumerate(desc, 1):
            if a > i and k <= len(tail) and tail[k - 1] == target:
                cands.append(a)
        for a in cands:
            p[i - 1] = a
            if place(i - 1, [b for b in unused if b != a]):
                return True
        return False

    if not place(n, list(range(1, n + 1))):
        raise InvariantError(f"{e} has no preimage under ms_code")
    out = tuple(p)
    if ms_code(out) != e:
        raise InvariantError(f"ms_decode({e}) failed to round-trip")
    return out


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class InvStatRecord:
    dist: int
    rep: int
    rlmin: int
    zero: int
    satu: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


INV_STAT_NAMES = ("dist", "rep", "rlmin", "zero", "satu")


def inv_statistics(e: Sequence[int]) -> InvStatRecord:
    e = as_inversion_sequence(e)
    n = len(e)
    dist = len({a for a in e if a > 0})
    rlmin, best = 0, None
    for a in reversed(e):
        if best is None or a < best:
            rlmin += 1
            best = a
    return InvStatRecord(
        dist=dist,
        rep=max(n - 1 - dist, 0),
        rlmin=rlmin,
        zero=e.count(0),
        satu=sum(1 for i, a in enumerate(e) if a == i),
    )


def require_seq_avoids(e, patterns, what: str) -> tuple:
    e = as_inversion_sequence(e)
    for p in _pattern_list(patterns):
        if seq_contains(e, p):
            raise PreconditionError(f"{what}: {e} contains {''.join(map(str, p))}", "".join(map(str, p)))
    return e

