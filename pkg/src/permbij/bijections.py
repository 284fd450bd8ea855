"""Block-decomposition bijection ``phi``/``psi`` between {3124,3214}- and
{3142,3241}-avoiding words, and the recursive bijection ``alpha``/``beta``
between the two length-5 classes built on top of it.

All maps act on words of distinct letters and never standardize: the image
of a word has exactly the same letters.  Every public map checks its
avoidance precondition unless called with ``check=False``; the recursive
workers below assume it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError, StructureError
from .permcore import as_word, find_pattern, lrmax_positions, normalize_patterns, rlmax_positions

SHORT_SOURCE = normalize_patterns("3124,3214")
SHORT_TARGET = normalize_patterns("3142,3241")
SOURCE = normalize_patterns("31245,32145,31254,32154")
TARGET = normalize_patterns("31425,32415,31524,32514")

TAGS = (
    "I-1", "I-2", "I-3",
    "II-1", "II-2", "II-3", "II-4",
    "A-1", "A-2", "A-3",
    "B-1", "B-2", "B-3",
    "trivial-lrmax1", "trivial-rlmax1", "trivial-ls-eq-s", "trivial-s2", "trivial-h2",
)


def require_avoids(w, patterns, what: str):
    w = as_word(w)
    pat = find_pattern(w, patterns)
    if pat is not None:
        raise PreconditionError(f"{what}: word {' '.join(map(str, w))} contains {pat}", str(pat))
    return w


def _insert(w: tuple, index: int, letter: int) -> tuple:
    return w[:index] + (letter,) + w[index:]


def _drop(w: tuple, index: int) -> tuple:
    return w[:index] + w[index + 1:]


# ---------------------------------------------------------------------------
# block decompositions


@dataclass(frozen=True)
class TypeIDecomposition:
    """Parse ``w = w_1 .. w_x  b  b_k .. b_1`` of a {3124,3214}-avoider.

    ``ascending_run_boundaries`` are the 1-based descent positions
    ``i_1 < ... < i_k`` before the maximum, ``max_position`` is ``x``, and
    ``floor_blocks`` lists ``b_k, ..., b_1`` in the order they occur.
    """

    word: tuple
    ascending_run_boundaries: tuple
    max_position: int
    top_block: tuple
    floor_blocks: tuple

    @property
    def k(self) -> int:
        return len(self.ascending_run_boundaries)

    def reassemble(self) -> tuple:
        out = self.word[: self.max_position] + self.top_block
        for b in self.floor_blocks:
            out += b
        return out

    def floors(self) -> list:
        """Sub-words handed to ``phi`` recursively, bottom floor first."""
        w, x = self.word, self.max_position
        cuts = [0] + [i + 1 for i in self.ascending_run_boundaries]
        lower = list(reversed(self.floor_blocks))  # b_1, ..., b_k
        out = []
        for j, i in enumerate(self.ascending_run_boundaries):
            out.append(w[cuts[j]: i + 1] + lower[j])
        out.append(w[cuts[-1]: x] + self.top_block)
        return out


def decompose_type_I(w: Sequence[int], check: bool = True) -> TypeIDecomposition:
    if check:
        w = require_avoids(w, SHORT_SOURCE, "decompose_type_I")
    w = tuple(w)
    if not w:
        return TypeIDecomposition((), (), 0, (), ())
    x = w.index(max(w))
    desc = [i for i in range(x) if w[i] > w[i + 1]]
    thresholds = [w[i] for i in desc]  # increasing: each is a left-to-right maximum
    # floor index of a trailing letter: 0 for b_1, ..., k for the top block b
    tail = w[x + 1:]
    levels = [sum(1 for t in thresholds if a > t) for a in tail]
    if any(levels[i] < levels[i + 1] for i in range(len(levels) - 1)):
        raise StructureError(f"trailing letters of {w} are not stacked in floors")
    blocks = {j: tuple(a for a, lv in zip(tail, levels) if lv == j) for j in range(len(desc) + 1)}
    return TypeIDecomposition(
        word=w,
        ascending_run_boundaries=tuple(i + 1 for i in desc),
        max_position=x + 1,
        top_block=blocks[len(desc)],
        floor_blocks=tuple(blocks[j] for j in range(len(desc) - 1, -1, -1)),
    )


@dataclass(frozen=True)
class TypeIIDecomposition:
    """Parse of a {3142,3241}-avoider into runs of consecutive left-to-right
    maxima, each followed by its gap block ``d_s``.

    ``runs`` holds ``(j_s, l_s + 1)``: 1-based start and run length.
    """

    word: tuple
    runs: tuple
    gap_blocks: tuple

    def segments(self) -> list:
        out = []
        for (start, length), d in zip(self.runs, self.gap_blocks):
            out.append(self.word[start - 1: start - 1 + length] + d)
        return out


def _lrmax_runs(w) -> list:
    runs = []
    for i in lrmax_positions(w):
        if runs and runs[-1][0] + runs[-1][1] == i:
            runs[-1][1] += 1
        else:
            runs.append([i, 1])
    return runs


def decompose_type_II(v: Sequence[int], check: bool = True) -> TypeIIDecomposition:
    if check:
        v = require_avoids(v, SHORT_TARGET, "decompose_type_II")
    v = tuple(v)
    runs = _lrmax_runs(v)
    gaps = []
    for s, (start, length) in enumerate(runs):
        end = runs[s + 1][0] if s + 1 < len(runs) else len(v)
        gaps.append(v[start + length: end])
    return TypeIIDecomposition(v, tuple((a + 1, b) for a, b in runs), tuple(gaps))


# ---------------------------------------------------------------------------
# phi / psi


def _phi(w: tuple) -> tuple:
    if not w:
        return ()
    x = w.index(max(w))
    if not any(w[i] > w[i + 1] for i in range(x)):
        return _insert(_phi(_drop(w, x)), x, w[x])
    out = ()
    for floor in decompose_type_I(w, check=False).floors():
        out += _phi(floor)
    return out


def _psi(v: tuple) -> tuple:
    if not v:
        return ()
    runs = _lrmax_runs(v)
    if len(runs) == 1:
        top = runs[0][0] + runs[0][1] - 1
        return _insert(_psi(_drop(v, top)), top, v[top])
    heads, tails = [], []
    for seg, (_, length) in zip(decompose_type_II(v, check=False).segments(), runs):
        image = _psi(seg)
        heads.append(image[: length + 1])
        tails.append(image[length + 1:])
    out = ()
    for f in heads:
        out += f
    for tail in reversed(tails):
        out += tail
    return out


def phi(w: Sequence[int], check: bool = True) -> tuple:
    """{3124,3214}-avoiding word -> {3142,3241}-avoiding word on the same letters."""
    w = require_avoids(w, SHORT_SOURCE, "phi") if check else tuple(w)
    return _phi(w)


def psi(v: Sequence[int], check: bool = True) -> tuple:
    """Inverse of :func:`phi`."""
    v = require_avoids(v, SHORT_TARGET, "psi") if check else tuple(v)
    return _psi(v)


# ---------------------------------------------------------------------------
# alpha / beta


def _alpha(w: tuple) -> tuple:
    if not w:
        return ()
    L = lrmax_positions(w)
    s = len(L)
    if s == 1:
        return (w[0],) + _alpha(w[1:])
    R = rlmax_positions(w)
    if len(R) == 1:
        return _phi(w[:-1]) + (w[-1],)
    if L[-1] == s - 1:
        return _insert(_alpha(_drop(w, L[-1])), L[-1], w[L[-1]])
    if w[L[-2]] < w[R[1]]:
        u = _alpha(_drop(w, L[-1]))
        Lu = lrmax_positions(u)
        if L[-2] + 1 == L[-1]:
            at = Lu[s - 2] + 1  # just after the (s-1)-th left-to-right maximum
        else:
            at = Lu[s - 1]  # just before the s-th one
        return _insert(u, at, w[L[-1]])
    if s > 2:
        u = _alpha(_drop(w, L[-2]))
        Lu = lrmax_positions(u)
        if L[-3] + 1 == L[-2]:
            at = Lu[s - 3] + 1
        else:
            at = Lu[s - 2]
        return _insert(u, at, w[L[-2]])
    return (w[0],) + _alpha(w[1:])


def _beta(v: tuple) -> tuple:
    if not v:
        return ()
    A = lrmax_positions(v)
    h = len(A)
    if h == 1:
        return (v[0],) + _beta(v[1:])
    B = rlmax_positions(v)
    if len(B) == 1:
        return _psi(v[:-1]) + (v[-1],)
    if A[-1] == h - 1:
        return _insert(_beta(_drop(v, A[-1])), A[-1], v[A[-1]])
    if v[A[-2]] < v[B[1]]:
        e = _beta(_drop(v, A[-1]))
        Le = lrmax_positions(e)
        if A[-2] + 1 == A[-1]:
            at = Le[h - 2] + 1
        else:
            at = Le[h - 2] + 2  # after the letter following the (h-1)-th maximum
        return _insert(e, at, v[A[-1]])
    if h > 2:
        e = _beta(_drop(v, A[-2]))
        Le = lrmax_positions(e)
        if A[-3] + 1 == A[-2]:
            at = Le[h - 3] + 1
        else:
            at = Le[h - 3] + 2
        return _insert(e, at, v[A[-2]])
    return (v[0],) + _beta(v[1:])


def alpha(w: Sequence[int], check: bool = True) -> tuple:
    """{31245,32145,31254,32154}-avoider -> {31425,32415,31524,32514}-avoider.

    Keeps Ides, Lrmax, Lrmin, Rlmax and Iar.

    >>> alpha((1, 3, 2, 4, 5))
    (1, 3, 2, 4, 5)
    """
    w = require_avoids(w, SOURCE, "alpha") if check else tuple(w)
    return _alpha(w)


def beta(v: Sequence[int], check: bool = True) -> tuple:
    """Inverse of :func:`alpha`."""
    v = require_avoids(v, TARGET, "beta") if check else tuple(v)
    return _beta(v)


# ---------------------------------------------------------------------------
# structural case analysis


@dataclass(frozen=True)
class CaseTag:
    tag: str

    @property
    def trivial(self) -> bool:
        return self.tag.startswith("trivial")

    def __str__(self):
        return self.tag


def _last_descent_before(w, stop: int):
    """0-based j < stop with w[j] > w[j+1], the largest such, else None."""
    for j in range(stop - 1, -1, -1):
        if w[j] > w[j + 1]:
            return j
    return None


def _split_high_low(seq, high) -> int | None:
    """Length of a non-empty leading block satisfying ``high`` followed only
    by letters failing it; None when the sequence is not of that shape."""
    a = 0
    while a < len(seq) and high(seq[a]):
        a += 1
    if a == 0 or any(high(c) for c in seq[a:]):
        return None
    return a


def _classify_source(w) -> str:
    L, R = lrmax_positions(w), rlmax_positions(w)
    s = len(L)
    if s == 1:
        return "trivial-lrmax1"
    if len(R) == 1:
        return "trivial-rlmax1"
    if L[-1] == s - 1:
        return "trivial-ls-eq-s"
    ls, ls1, r2 = L[-1], L[-2], R[1]
    if w[ls1] < w[r2]:
        if ls == ls1 + 1:
            return "I-1"
        if ls == ls1 + 2:
            between = w[ls + 1: r2]
            if all(c < w[ls1] for c in between):
                return "I-2"
            if _split_high_low(between, lambda c: c > w[ls1]) is not None:
                return "I-3"
        raise StructureError(f"{w}: no type I case applies")
    if s == 2:
        return "trivial-s2"
    xd = _last_descent_before(w, ls1)
    if xd is None:
        return "II-1"
    if ls == ls1 + 1:
        return "II-2"
    wx, top, mid = w[xd], w[ls1], w[ls1 + 1: ls]
    if all(c < wx for c in mid):
        if not wx > w[r2]:
            raise StructureError(f"{w}: type II-4 shape but w_x < w_r2")
        return "II-4"
    a = _split_high_low(mid, lambda c: wx < c < top)
    if a is not None:
        if a < len(mid) and not wx > w[r2]:
            raise StructureError(f"{w}: type II-3 with a low tail but w_x < w_r2")
        return "II-3"
    raise StructureError(f"{w}: no type II case applies")


def _classify_target(v) -> str:
    A, B = lrmax_positions(v), rlmax_positions(v)
    h = len(A)
    if h == 1:
        return "trivial-lrmax1"
    if len(B) == 1:
        return "trivial-rlmax1"
    if A[-1] == h - 1:
        return "trivial-ls-eq-s"
    ah, ah1, b2 = A[-1], A[-2], B[1]
    if v[ah1] < v[b2]:
        if ah == ah1 + 1:
            return "A-1"
        if b2 == ah + 1:
            return "A-2"
        if all(v[j] > v[ah1] for j in range(ah + 1, b2)):
            return "A-3"
        raise StructureError(f"{v}: no type A case applies")
    if h == 2:
        return "trivial-h2"
    xd = _last_descent_before(v, ah1)
    if xd is None:
        return "B-1"
    vx = v[xd]

    def tail_ok():
        return v[b2] < vx or all(v[b2] > v[j] > vx for j in range(ah + 1, b2))

    if ah == ah1 + 1:
        if tail_ok():
            return "B-2"
    elif all(v[ah1] > v[j] > vx for j in range(ah1 + 1, ah)) and tail_ok():
        return "B-3"
    raise StructureError(f"{v}: no type B case applies")


def classify(w: Sequence[int], side: str = "source", check: bool = True) -> CaseTag:
    """Structural case of a word for ``alpha`` (``side="source"``) or
    ``beta`` (``side="target"``).  Raises StructureError when none applies."""
    if side not in ("source", "target"):
        raise ValueError(f"side must be 'source' or 'target', not {side!r}")
    patterns = SOURCE if side == "source" else TARGET
    w = require_avoids(w, patterns, "classify") if check else tuple(w)
    if not w:
        raise StructureError("the empty word has no case")
    return CaseTag(_classify_source(w) if side == "source" else _classify_target(w))
