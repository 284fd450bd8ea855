"""Named pattern classes used by the CLI and the verification suites."""

from __future__ import annotations

from .errors import InvalidWordError
from .invseq import count_inversion_class
from .permcore import count_class, normalize_patterns

# the thirteen quadruples conjectured to share one counting sequence,
# keyed by their first pattern
THIRTEEN = {
    "C45312": "45312,45321,54312,54321",
    "C31245": "31245,32145,31254,32154",
    "C31425": "31425,32415,31524,32514",
    "C41325": "41325,51324,42315,52314",
    "C13425": "13425,23415,13524,23514",
    "C13452": "13452,23451,13542,23541",
    "C24513": "24513,25413,24531,25431",
    "C13245": "13245,23145,13254,23154",
    "C32415": "32415,34215,32451,34251",
    "C21345": "21345,23145,23154,21354",
    "C24135": "24135,25134,25314,24315",
    "C42513": "42513,52413,42531,52431",
    "C42135": "42135,52134,52314,42315",
}

PERMUTATION_CLASSES = dict(THIRTEEN)
PERMUTATION_CLASSES.update(
    {
        "C31243214": "3124,3214",
        "C31423241": "3142,3241",
        # inverse images of C31425; paired with the b-code distribution
        "C24153": "24135,24153,42135,42153",
    }
)

INVERSION_CLASSES = {"I201210": "201,210"}

ALIASES = sorted(PERMUTATION_CLASSES) + sorted(INVERSION_CLASSES)


def resolve(name_or_patterns: str) -> tuple:
    """Return ``(kind, patterns)`` where kind is "perm" or "inv".

    Accepts an alias or an explicit comma-separated pattern list; explicit
    lists whose letters start at 0 are read as inversion-sequence patterns.
    """
    key = name_or_patterns.strip()
    if key in PERMUTATION_CLASSES:
        return "perm", PERMUTATION_CLASSES[key]
    if key in INVERSION_CLASSES:
        return "inv", INVERSION_CLASSES[key]
    if key and all(c.isdigit() or c == "," for c in key):
        parts = [p for p in key.split(",") if p]
        if parts and all("0" in p for p in parts):
            return "inv", ",".join(parts)
        try:
            normalize_patterns(parts)
        except InvalidWordError as exc:
            raise InvalidWordError(f"bad pattern list {key!r}: {exc}") from None
        return "perm", ",".join(parts)
    raise InvalidWordError(f"unknown class alias {key!r}; known: {', '.join(ALIASES)}")


def class_count(name_or_patterns: str, n: int) -> int:
    kind, pats = resolve(name_or_patterns)
    return count_class(n, pats) if kind == "perm" else count_inversion_class(n, pats)
