"""Sparse multivariate polynomials with exact (big integer or Fraction)
coefficients, enough for truncated power-series identities."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InvariantError


class ExactPoly:
    """Immutable polynomial over a fixed ordered tuple of variable names.

    Terms are stored as ``{exponent tuple: coefficient}`` with no zero
    coefficients.  Operations between polynomials require equal variable
    tuples; plain ints and Fractions are promoted to constants.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        for exp, c in (terms or {}).items():
            if c:
                exp = tuple(exp)
                if len(exp) != len(self.vars):
                    raise ValueError(f"exponent {exp} does not match variables {self.vars}")
                clean[exp] = c
        self.terms = clean

    # -- construction ---------------------------------------------------
    @classmethod
    def const(cls, vars, c) -> "ExactPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars, name: str, power: int = 1) -> "ExactPoly":
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = power
        return cls(vars, {tuple(exp): 1})

    @classmethod
    def series(cls, vars, name: str, coeffs) -> "ExactPoly":
        """Univariate-in-``name`` polynomial from a coefficient list."""
        vars = tuple(vars)
        i = vars.index(name)
        terms = {}
        for k, c in enumerate(coeffs):
            exp = [0] * len(vars)
            exp[i] = k
            terms[tuple(exp)] = c
        return cls(vars, terms)

    def _coerce(self, other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return ExactPoly.const(self.vars, other)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ExactPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def mul(self, other, bound: tuple | None = None) -> "ExactPoly":
        """Product; with ``bound=(name, d)`` terms of degree > d in ``name``
        are never formed."""
        other = self._coerce(other)
        idx = self.vars.index(bound[0]) if bound else None
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                if idx is not None and e1[idx] + e2[idx] > bound[1]:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExactPoly(self.vars, out)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = ExactPoly.const(self.vars, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ValueError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ------------------------------------------------------
    def degree(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def truncate(self, name: str, d: int) -> "ExactPoly":
        i = self.vars.index(name)
        return ExactPoly(self.vars, {e: c for e, c in self.terms.items() if e[i] <= d})

    def coefficient(self, name: str, k: int) -> "ExactPoly":
        """Coefficient of ``name**k``, as a polynomial with that exponent zeroed."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return ExactPoly(self.vars, out)

    def coeff_list(self, name: str, upto: int | None = None) -> list:
        """Constant coefficients of a polynomial in ``name`` alone."""
        i = self.vars.index(name)
        top = self.degree(name) if upto is None else upto
        out = [0] * (top + 1)
        for e, c in self.terms.items():
            if any(a for j, a in enumerate(e) if j != i):
                raise ValueError(f"not univariate in {name}")
            if e[i] <= top:
                out[e[i]] = c
        return out

    def derivative(self, name: str) -> "ExactPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return ExactPoly(self.vars, out)

    def substitute(self, values: Mapping[str, object], bound: tuple | None = None) -> "ExactPoly":
        """Replace variables by constants or polynomials over the same variables."""
        subs = {self.vars.index(k): self._coerce(v) for k, v in values.items()}
        cache: dict = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[i, k] = subs[i] ** k if k else ExactPoly.const(self.vars, 1)
            return cache[i, k]

        out = ExactPoly(self.vars)
        for e, c in self.terms.items():
            kept = tuple(0 if i in subs else a for i, a in enumerate(e))
            term = ExactPoly(self.vars, {kept: c})
            for i in subs:
                if e[i]:
                    term = term.mul(power(i, e[i]), bound)
            out = out + term
        return out

    def __call__(self, **values):
        """Evaluate at numbers; every variable must be given."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, a in zip(self.vars, e):
                term *= values[name] ** a
            total += term
        return total

    def divmod(self, divisor: "ExactPoly") -> tuple:
        """Multivariate division in lex order of ``vars``: returns (q, r) with
        self = q*divisor + r and no term of r divisible by the leading term."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(divisor.terms)
        lc = divisor.terms[lead]
        rest = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while rest:
            e = max(rest)
            c = rest[e]
            if all(a >= b for a, b in zip(e, lead)) and c % lc == 0:
                f = tuple(a - b for a, b in zip(e, lead))
                k = c // lc if isinstance(c, int) else c / lc
                q[f] = q.get(f, 0) + k
                for de, dc in divisor.terms.items():
                    g = tuple(a + b for a, b in zip(f, de))
                    v = rest.get(g, 0) - k * dc
                    if v:
                        rest[g] = v
                    else:
                        rest.pop(g, None)
            else:
                r[e] = c
                del rest[e]
        return ExactPoly(self.vars, q), ExactPoly(self.vars, r)

    def exact_div(self, divisor: "ExactPoly") -> "ExactPoly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InvariantError(f"nonzero remainder {r} in exact division")
        return q

    # -- display --------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                name if a == 1 else f"{name}^{a}" for name, a in zip(self.vars, e) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
