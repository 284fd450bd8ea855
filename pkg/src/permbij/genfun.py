"""Exact enumeration and series checks for (201,210)-avoiding inversion
sequences and for the {3142,3241} class.

Everything is exact: big integers, with Fractions only inside the square
root expansion of the closed form.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import InvariantError
from .invseq import extension_creates, inversion_class_array, require_seq_avoids
from .permcore import avoiders, statistics
from .poly import ExactPoly

AVOID = "201,210"


@dataclass(frozen=True, order=True)
class Label:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"labels need p, q >= 1, got ({self.p}, {self.q})")


# ---------------------------------------------------------------------------
# generating tree


def legal_extensions(e: Sequence[int]) -> list:
    """Entries k in 0..n that keep the (201,210)-avoiding ``e + (k,)`` avoiding."""
    e = tuple(e)
    return [k for k in range(len(e) + 1) if not extension_creates(e, k, AVOID)]


def parameters(e: Sequence[int]) -> Label:
    """(p, q): legal next entries above / at-or-below the last entry.

    >>> parameters((0, 1, 0, 2, 4, 2, 5))
    Label(p=2, q=3)
    """
    e = require_seq_avoids(e, AVOID, "parameters")
    if not e:
        raise ValueError("parameters of the empty sequence")
    ks = legal_extensions(e)
    last = e[-1]
    return Label(sum(1 for k in ks if k > last), sum(1 for k in ks if k <= last))


def successors(label: Label) -> list:
    """Child labels of the succession rule, as a sorted list with repeats."""
    p, q = label.p, label.q
    out = [Label(p + 1 - i, q + i) for i in range(1, p + 1)]
    out.append(Label(p + 1, q))
    out.extend([Label(p + 2, 1)] * (q - 1))
    return sorted(out)


def level_profile(n: int) -> Counter:
    """Label multiplicities at level ``n`` of the generating tree."""
    if n < 1:
        raise ValueError("n must be positive")
    prof = Counter({Label(1, 1): 1})
    for _ in range(n - 1):
        nxt: Counter = Counter()
        for lab, c in prof.items():
            for child in successors(lab):
                nxt[child] += c
        prof = nxt
    return prof


def _succession_levels(n: int):
    """Yield |I_k(201,210)| for k = 1..n from the succession rule.

    Only two moments per p are tracked, M0[p] = sum_q c(p,q) and
    M1[p] = sum_q q c(p,q): every child's p is affine in the parent's (p, q)
    and the multiplicity of (p+2, 1) is q-1, so both moments propagate
    exactly.  O(n) big-integer updates per level.
    """
    size = n + 3
    m0 = [0] * size
    m1 = [0] * size
    m0[1] = m1[1] = 1
    yield 1
    for _ in range(n - 1):
        # suffix sums over parents with p >= p'
        s0 = [0] * (size + 1)
        s1 = [0] * (size + 1)
        sp = [0] * (size + 1)
        for p in range(size - 1, 0, -1):
            s0[p] = s0[p + 1] + m0[p]
            s1[p] = s1[p + 1] + m1[p]
            sp[p] = sp[p + 1] + p * m0[p]
        n0 = [0] * size
        n1 = [0] * size
        for r in range(1, size):
            a0 = s0[r]
            a1 = s1[r] + sp[r] + (1 - r) * s0[r]
            if r >= 2:
                a0 += m0[r - 1]
                a1 += m1[r - 1]
            if r >= 3:
                extra = m1[r - 2] - m0[r - 2]
                a0 += extra
                a1 += extra
            n0[r], n1[r] = a0, a1
        m0, m1 = n0, n1
        yield sum(m0)


def count_by_succession(n: int) -> int:
    """|I_n(201,210)| from the succession rule."""
    if n < 1:
        raise ValueError("n must be positive")
    for total in _succession_levels(n):
        pass
    return total


def succession_counts(n_max: int) -> list:
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return list(_succession_levels(n_max))


# ---------------------------------------------------------------------------
# bivariate recursion

UV = ("u", "v")


@lru_cache(maxsize=None)
def f_poly(n: int) -> ExactPoly:
    """f_n(u, v): sum over level-n labels (p, q) of u^p v^q."""
    if n < 1:
        raise ValueError("n must be positive")
    u = ExactPoly.var(UV, "u")
    v = ExactPoly.var(UV, "v")
    if n == 1:
        return u * v
    f = f_poly(n - 1)
    diag = f.substitute({"u": v})
    quotient = (u * (u * f - v * diag)).exact_div(u - v)
    at_one = f.substitute({"v": 1})
    slope = f.derivative("v").substitute({"v": 1})
    return quotient + u * u * v * (slope - at_one)


def f_value(n: int) -> int:
    return f_poly(n)(u=1, v=1)


# ---------------------------------------------------------------------------
# closed form


def _sqrt_one_minus_8t(N: int) -> list:
    out, c = [], Fraction(1)
    for k in range(N + 1):
        out.append(c * (-8) ** k)
        c = c * (Fraction(1, 2) - k) / (k + 1)
    return out


def closed_form_coefficients(N: int) -> list:
    """[a_0, ..., a_N] of A(t) = (3t - 4t^2 - t sqrt(1-8t)) / (4t^2 - 4t + 2)."""
    if N < 1:
        raise ValueError("N must be positive")
    root = _sqrt_one_minus_8t(N)
    num = [Fraction(0)] * (N + 1)
    num[1] += 3
    if N >= 2:
        num[2] -= 4
    for k in range(N):
        num[k + 1] -= root[k]
    den = [2, -4, 4]
    a: list = []
    for k in range(N + 1):
        acc = num[k] - sum(den[j] * a[k - j] for j in (1, 2) if k - j >= 0)
        a.append(acc / den[0])
    out = []
    for k, c in enumerate(a):
        if c.denominator != 1 or c < 0:
            raise InvariantError(f"coefficient {k} of the closed form is {c}")
        out.append(int(c))
    return out


def closed_form_series(N: int) -> ExactPoly:
    return ExactPoly.series(("t",), "t", closed_form_coefficients(N))


def algebraic_residual(N: int, coeffs: Sequence[int] | None = None) -> list:
    """Coefficients of (2t^2-2t+1)A^2 + (4t^2-3t)A + 2t^2 through t^N."""
    a = list(closed_form_coefficients(N) if coeffs is None else coeffs)[: N + 1]
    a += [0] * (N + 1 - len(a))
    sq = [sum(a[i] * a[k - i] for i in range(k + 1)) for k in range(N + 1)]

    def shift(seq, d, k):
        return seq[k - d] if k - d >= 0 else 0

    out = []
    for k in range(N + 1):
        r = 2 * shift(sq, 2, k) - 2 * shift(sq, 1, k) + sq[k]
        r += 4 * shift(a, 2, k) - 3 * shift(a, 1, k)
        r += 2 if k == 2 else 0
        out.append(r)
    return out


def verify_algebraic_equation(N: int, coeffs: Sequence[int] | None = None) -> bool:
    if N < 2:
        raise ValueError("N must be at least 2")
    return all(r == 0 for r in algebraic_residual(N, coeffs))


# ---------------------------------------------------------------------------
# saturated entries

TQ = ("t", "q")


def satu_series(n_max: int) -> ExactPoly:
    """A(t, q) through t^n_max by enumeration of I_n(201,210)."""
    terms = {}
    for n in range(1, n_max + 1):
        arr = inversion_class_array(n, AVOID)
        satu = (arr == np.arange(n, dtype=arr.dtype)).sum(axis=1)
        for k, c in enumerate(np.bincount(satu, minlength=n + 1)):
            if c:
                terms[(n, k)] = int(c)
    return ExactPoly(TQ, terms)


SATU_FORMS = ("printed", "corrected", "unsimplified")


def satu_equation_sides(n_max: int, form: str = "printed") -> tuple:
    """Both sides of the functional equation for A(t,q), multiplied by
    2t(1-q) and truncated at t^(n_max+1), the highest degree that A(t,q)
    through t^n_max determines.

    ``printed`` is the kernel form as published, with +q^2(A(t)-t)/2 on the
    right; ``corrected`` flips that sign; ``unsimplified`` is the case sum
    the kernel form is derived from.
    """
    if form not in SATU_FORMS:
        raise ValueError(f"form must be one of {SATU_FORMS}")
    top = n_max + 1
    t = ExactPoly.var(TQ, "t")
    q = ExactPoly.var(TQ, "q")
    A = ExactPoly.series(TQ, "t", closed_form_coefficients(top))
    Atq = satu_series(n_max)
    shifted = A - t
    b = ("t", top)
    if form == "unsimplified":
        lhs = (2 * t * (1 - q)).mul(Atq, b)
        rhs = (
            2 * t * t * q * (1 - q)
            + (2 * t * t * q * (1 - q)).mul(Atq, b)
            + (q * (1 - q)).mul(Atq - t * q - (t * q).mul(Atq, b), b).mul(shifted, b)
            + (2 * t * t * q).mul(A - Atq, b)
        )
    else:
        sign = 1 if form == "printed" else -1
        factor = 2 * t * (1 - q) + 2 * t * t * q * q - (q * (1 - q) * (1 - t * q)).mul(shifted, b)
        lhs = factor.mul(Atq, b)
        rhs = (
            2 * t * t * q * (1 - q)
            + (sign * t * q * q * (1 - q)).mul(shifted, b)
            + (2 * t * t * q).mul(A, b)
        )
    return lhs.truncate("t", top), rhs.truncate("t", top)


def verify_satu_equation(n_max: int, form: str = "printed") -> bool:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    lhs, rhs = satu_equation_sides(n_max, form)
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# multivariate class series

XTPQZ = ("x", "t", "p", "q", "z")
DEFAULT_WEIGHTS = (("x", "iar"), ("t", "ides"), ("p", "lrmax"), ("q", "lrmin"))


def class_distribution_series(
    ps,
    n_max: int,
    weights: Sequence[tuple] = DEFAULT_WEIGHTS,
    size_var: str = "z",
    keep: Callable | None = None,
    n_min: int = 1,
) -> ExactPoly:
    """Sum of size_var^n * prod(var^|stat|) over the class, n_min <= n <= n_max.

    ``weights`` pairs variable names with statistic names; ``keep`` filters
    permutations.
    """
    vars = tuple(v for v, _ in weights) + (size_var,)
    terms: Counter = Counter()
    for n in range(n_min, n_max + 1):
        for w in avoiders(n, ps):
            if keep is not None and not keep(w):
                continue
            rec = statistics(w)
            exp = tuple(len(getattr(rec, s)) if isinstance(getattr(rec, s), frozenset) else getattr(rec, s) for _, s in weights)
            terms[exp + (n,)] += 1
    return ExactPoly(vars, dict(terms))


def _is_block(w) -> bool:
    rec = statistics(w)
    return w != tuple(range(1, len(w) + 1)) and rec.iar == rec.lrmax


def block_series(n_max: int) -> dict:
    S = class_distribution_series("3142,3241", n_max)
    B = class_distribution_series("3142,3241", n_max, keep=_is_block, n_min=2)
    x, p, q, z = (ExactPoly.var(XTPQZ, c) for c in "xpqz")
    I = ExactPoly(XTPQZ, {(k, 0, k, 1, k): 1 for k in range(1, n_max + 1)})
    return {"S": S, "B": B, "I": I, "x": x, "p": p, "q": q, "z": z}


def block_equation_checks(n_max: int, corrected: bool = False) -> dict:
    """Check the decomposition identity for S, the equation for B and the
    combined equation, each with denominators cleared, through z^n_max.

    As printed, the last term of the B equation (which removes the identity
    permutations) has no lrmin weight; ``corrected=True`` multiplies it by q.
    Returns ``{"S": bool, "B": bool, "combined": bool}``.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    g = block_series(n_max)
    S, B, I, x, p, q, z = (g[k] for k in ("S", "B", "I", "x", "p", "q", "z"))
    bound = ("z", n_max)
    t = ExactPoly.var(XTPQZ, "t")
    S_p = S.substitute({"x": 1, "q": 1})  # S(1,t,p,1)
    S_q = S.substitute({"x": 1, "p": 1})  # S(1,t,1,q)
    S_px = S.substitute({"x": p * x, "p": 1})  # S(px,t,1,q)
    pxz = p * x * z
    d1 = 1 - p * x
    d2 = 1 - pxz
    tail = t * p * p * x * x * z * z * d1 * (q if corrected else 1)

    def trunc(f):
        return f.truncate("z", n_max)

    eq_s = trunc(I + B.mul(S_p + 1, bound) - S).is_zero()

    # every equation below is multiplied through by (1-px)(1-pxz)
    sq_part = (t * pxz + t * pxz * (q - 1) * d1).mul(d2, bound).mul(S_q, bound)
    px_part = (t * p * p * x * x * z * d2).mul(S_px, bound)
    lhs_b = B.mul(d1 * d2, bound)
    rhs_b = sq_part - px_part + ((1 - t) * pxz * d1 * d2).mul(B, bound) - tail
    eq_b = trunc(lhs_b - rhs_b).is_zero()

    left = (S.mul(d2, bound) - x * p * q * z).mul((1 - (1 - t) * pxz) * d1, bound)
    right = (S_p + 1).mul(trunc(sq_part - px_part - tail), bound)
    combined = trunc(left - right).is_zero()
    return {"S": eq_s, "B": eq_b, "combined": combined}


def verify_section21(n_max: int, corrected: bool = False) -> bool:
    """True when all three identities of :func:`block_equation_checks` hold."""
    return all(block_equation_checks(n_max, corrected).values())


# ---------------------------------------------------------------------------
# output formats


def series_json(coeffs: Sequence[int], var: str = "t") -> str:
    return json.dumps({"var": var, "coeffs": [int(c) for c in coeffs]})


def bfile(values: Sequence[int], offset: int = 1) -> str:
    """OEIS b-file body: ``n a(n)`` per line, no header."""
    return "".join(f"{i} {int(a)}\n" for i, a in enumerate(values, offset))
