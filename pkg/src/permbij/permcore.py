"""Words of distinct letters, classical pattern containment, pruned class
enumeration and the set-valued permutation statistics.

A word is a tuple of distinct non-negative integers; a permutation of
length ``n`` is a word whose letter set is ``{1, ..., n}``.  Positions are
1-based wherever they leave this module (descent sets, pattern witnesses).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidWordError

Word = tuple  # tuple[int, ...] of distinct letters


def as_word(w: Iterable[int]) -> Word:
    w = tuple(int(a) for a in w)
    if any(a < 0 for a in w):
        raise InvalidWordError(f"negative letter in {w}")
    if len(set(w)) != len(w):
        raise InvalidWordError(f"repeated letter in {w}")
    return w


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def as_permutation(p: Iterable[int]) -> Word:
    p = tuple(int(a) for a in p)
    if not is_permutation(p):
        raise InvalidWordError(f"{p} is not a permutation of [{len(p)}]")
    return p


def parse_word(text: str) -> Word:
    """Parse one-line notation: ``"3 1 2"``, ``"3,1,2"`` or compact ``"312"``."""
    text = text.strip()
    if not text:
        return ()
    if " " in text or "," in text:
        parts = text.replace(",", " ").split()
    else:
        parts = list(text)
    try:
        return as_word(int(a) for a in parts)
    except ValueError as exc:
        raise InvalidWordError(f"cannot parse word {text!r}: {exc}") from None


def format_word(w: Sequence[int]) -> str:
    return " ".join(str(a) for a in w)


def standardize(w: Sequence[int]) -> Word:
    """Order-isomorphic permutation of ``[len(w)]``."""
    rank = {a: i + 1 for i, a in enumerate(sorted(w))}
    return tuple(rank[a] for a in w)


def inverse(p: Sequence[int]) -> Word:
    p = as_permutation(p)
    inv = [0] * len(p)
    for i, a in enumerate(p, 1):
        inv[a - 1] = i
    return tuple(inv)


def reverse(w: Sequence[int]) -> Word:
    return tuple(reversed(as_word(w)))


def complement(p: Sequence[int]) -> Word:
    p = as_permutation(p)
    n = len(p)
    return tuple(n + 1 - a for a in p)


# ---------------------------------------------------------------------------
# pattern containment


class Pattern:
    """A classical pattern with its pairwise comparison table precomputed."""

    __slots__ = ("letters", "k", "above")

    def __init__(self, letters: Iterable[int]):
        letters = tuple(int(a) for a in letters)
        if not letters or not is_permutation(letters):
            raise InvalidWordError(f"invalid pattern {letters}")
        self.letters = letters
        self.k = len(letters)
        # above[j][i]: slot j must hold a larger letter than slot i
        self.above = tuple(
            tuple(letters[j] > letters[i] for i in range(j)) for j in range(self.k)
        )

    def __repr__(self):
        return "Pattern(%s)" % "".join(map(str, self.letters))

    def __str__(self):
        return "".join(map(str, self.letters))


def as_pattern(p) -> Pattern:
    if isinstance(p, Pattern):
        return p
    if isinstance(p, str):
        return Pattern(int(c) for c in p.strip())
    return Pattern(p)


def _search(w, pat: Pattern, chosen: list, start: int, stop: int, last=None) -> bool:
    """Extend ``chosen`` (letters for the first slots) to a full occurrence.

    Slots are filled from positions ``start..stop-1``.  When ``last`` is given
    the final slot is pinned to that letter and is not searched for.
    """
    j = len(chosen)
    k = pat.k if last is None else pat.k - 1
    if j == k:
        return True
    above = pat.above[j]
    last_above = pat.above[pat.k - 1][j] if last is not None else None
    # leave room for the remaining slots
    for pos in range(start, stop - (k - j - 1)):
        a = w[pos]
        if last is not None and (last > a) != last_above:
            continue
        ok = True
        for i in range(j):
            if (a > chosen[i]) != above[i]:
                ok = False
                break
        if ok:
            chosen.append(a)
            if _search(w, pat, chosen, pos + 1, stop, last):
                chosen.pop()
                return True
            chosen.pop()
    return False


def contains_pattern(w: Sequence[int], p) -> bool:
    """True iff some subsequence of ``w`` is order-isomorphic to ``p``."""
    pat = as_pattern(p)
    w = as_word(w)
    if pat.k > len(w):
        return False
    return _search(w, pat, [], 0, len(w))


def find_pattern(w: Sequence[int], patterns) -> Pattern | None:
    """First pattern of ``patterns`` contained in ``w``, or None."""
    w = as_word(w)
    for p in patterns:
        pat = as_pattern(p)
        if pat.k <= len(w) and _search(w, pat, [], 0, len(w)):
            return pat
    return None


def ends_with_occurrence(prefix: Sequence[int], letter: int, pat: Pattern) -> bool:
    """Does ``prefix + (letter,)`` contain ``pat`` using the final letter?"""
    if pat.k - 1 > len(prefix):
        return False
    return _search(prefix, pat, [], 0, len(prefix), last=letter)


def avoids(w: Sequence[int], patterns) -> bool:
    return find_pattern(w, patterns) is None


# ---------------------------------------------------------------------------
# class enumeration


def normalize_patterns(ps) -> tuple:
    if isinstance(ps, str):
        ps = ps.split(",")
    out = tuple(as_pattern(p) for p in ps)
    if not out:
        raise InvalidWordError("empty pattern set")
    return out


def enumerate_class(n: int, ps, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Yield the permutations of ``[n]`` avoiding every pattern in ``ps``.

    Permutations are grown letter by letter; a prefix is abandoned as soon as
    an occurrence ends at its last letter, which is sound because containment
    survives appending.  A non-empty ``prefix`` restricts the search to that
    subtree, so disjoint prefixes partition the class (e.g. by first letter).
    """
    pats = normalize_patterns(ps)
    if n < 0:
        raise ValueError("n must be non-negative")
    prefix = list(prefix)
    if len(set(prefix)) != len(prefix) or any(not 1 <= a <= n for a in prefix):
        raise InvalidWordError(f"prefix {prefix} is not a partial permutation of [{n}]")
    for m in range(1, len(prefix) + 1):
        if any(ends_with_occurrence(prefix[: m - 1], prefix[m - 1], pat) for pat in pats):
            return
    unused = [a for a in range(1, n + 1) if a not in prefix]
    yield from _grow(prefix, unused, pats)


def _grow(w: list, unused: list, pats) -> Iterator[Word]:
    if not unused:
        yield tuple(w)
        return
    for idx, a in enumerate(unused):
        if any(ends_with_occurrence(w, a, pat) for pat in pats):
            continue
        w.append(a)
        rest = unused[:idx] + unused[idx + 1:]
        yield from _grow(w, rest, pats)
        w.pop()


@lru_cache(maxsize=None)
def _avoiders_cached(n: int, key: tuple) -> tuple:
    if n == 0:
        return ((),)
    pats = normalize_patterns(key)
    out = []
    # append a last letter of every relative rank r; it sits between r-1 and r
    for s in _avoiders_cached(n - 1, key):
        for r in range(1, n + 1):
            if any(ends_with_occurrence(s, r - 0.5, pat) for pat in pats):
                continue
            out.append(tuple(a + 1 if a >= r else a for a in s) + (r,))
    out.sort()
    return tuple(out)


def avoiders(n: int, ps) -> tuple:
    """Sorted tuple of the permutations of ``[n]`` avoiding ``ps``, cached.

    Built level by level: every avoider of length ``n`` standardizes, after
    dropping its last letter, to an avoider of length ``n - 1``.  Agrees with
    :func:`enumerate_class` as a set; this path is the one used for bulk
    sweeps.
    """
    key = tuple(str(p) for p in normalize_patterns(ps))
    return _avoiders_cached(n, key)


def count_class(n: int, ps) -> int:
    return len(avoiders(n, ps))


def filter_class(n: int, ps) -> list:
    """Unpruned reference: filter all of S_n.  Only for small n."""
    from itertools import permutations

    pats = normalize_patterns(ps)
    return [p for p in permutations(range(1, n + 1)) if find_pattern(p, pats) is None]


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class StatRecord:
    des: frozenset
    ides: frozenset
    lrmax: frozenset
    lrmin: frozenset
    rlmax: frozenset
    rlmin: frozenset
    iar: frozenset
    pk: frozenset
    br: frozenset
    exc: int
    lmaxz: int
    asc: int
    iasc: int

    def as_dict(self) -> dict:
        out = {}
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            out[name] = sorted(v) if isinstance(v, frozenset) else v
        return out


def lrmax_positions(w: Sequence[int]) -> list:
    """0-based positions of left-to-right maxima."""
    out, best = [], None
    for i, a in enumerate(w):
        if best is None or a > best:
            out.append(i)
            best = a
    return out


def rlmax_positions(w: Sequence[int]) -> list:
    """0-based positions of right-to-left maxima, left to right."""
    out, best = [], None
    for i in range(len(w) - 1, -1, -1):
        if best is None or w[i] > best:
            out.append(i)
            best = w[i]
    return out[::-1]


def _lrmin(w):
    out, best = set(), None
    for a in w:
        if best is None or a < best:
            out.add(a)
            best = a
    return out


def _rlmin(w):
    return _lrmin(w[::-1])


def initial_run(w: Sequence[int]) -> Word:
    i = 1
    while i < len(w) and w[i - 1] < w[i]:
        i += 1
    return tuple(w[:i])


def ides_set(w: Sequence[int]) -> frozenset:
    s = standardize(w)
    pos = [0] * (len(s) + 1)
    for i, a in enumerate(s):
        pos[a] = i
    return frozenset(i for i in range(1, len(s)) if pos[i] > pos[i + 1])


def statistics(w: Sequence[int]) -> StatRecord:
    w = as_word(w)
    n = len(w)
    if n == 0:
        raise InvalidWordError("statistics of the empty word")
    des = frozenset(i for i in range(1, n) if w[i - 1] > w[i])
    ides = ides_set(w)
    lrmax = frozenset(w[i] for i in lrmax_positions(w))
    rlmax = frozenset(w[i] for i in rlmax_positions(w))
    padded = (-1,) + w + (-1,)
    pk = frozenset(padded[i] for i in range(1, n + 1) if padded[i - 1] < padded[i] > padded[i + 1])
    s = standardize(w)
    exc = sum(1 for i in range(1, n) if s[i - 1] > i)
    one = s.index(1)
    lmaxz = 1 + sum(1 for i in lrmax_positions(s) if i < one)
    return StatRecord(
        des=des,
        ides=ides,
        lrmax=lrmax,
        lrmin=frozenset(_lrmin(w)),
        rlmax=rlmax,
        rlmin=frozenset(_rlmin(w)),
        iar=frozenset(initial_run(w)),
        pk=pk,
        br=lrmax & pk,
        exc=exc,
        lmaxz=lmaxz,
        asc=n - 1 - len(des),
        iasc=n - 1 - len(ides),
    )


STAT_NAMES = tuple(StatRecord.__dataclass_fields__)


def numeric_stat(rec: StatRecord, name: str) -> int:
    """Numerical counterpart of a statistic (set size, or the count itself)."""
    v = getattr(rec, name)
    return len(v) if isinstance(v, frozenset) else v
