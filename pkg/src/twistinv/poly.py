"""Exact multivariate polynomials with rational coefficients.

Terms are stored densely: each exponent vector has one slot per declared
variable.  Variables are kept in a canonical order (``w`` blocks, then ``v``
blocks, then any other names alphabetically) and unused variables are pruned,
so two equal polynomials always have identical representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

_TWIST_VAR = re.compile(r"^([wv])(\d+)_([123])$")


def var_sort_key(name: str):
    m = _TWIST_VAR.match(name)
    if m:
        kind, i, c = m.groups()
        return (0 if kind == "w" else 1, int(i), int(c), "")
    return (2, 0, 0, name)


def w_var(i: int, c: int) -> str:
    """Name of coordinate ``c`` (1..3) of the angular part of twist ``i`` (1-based)."""
    return f"w{i}_{c}"


def v_var(i: int, c: int) -> str:
    return f"v{i}_{c}"


def twist_variables(k: int) -> list[str]:
    return [w_var(i, c) for i in range(1, k + 1) for c in (1, 2, 3)] + [
        v_var(i, c) for i in range(1, k + 1) for c in (1, 2, 3)
    ]


class MissingVariableError(KeyError):
    pass


class MultiPoly:
    """Polynomial over Q in named variables.

    >>> x, y = MultiPoly.var("x"), MultiPoly.var("y")
    >>> str((x + y) ** 2)
    '1*x^2 + 2*x*y + 1*y^2'
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str] = (), terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        terms = dict(terms or {})
        n = len(variables)
        clean = {}
        for exps, coef in terms.items():
            if len(exps) != n:
                raise ValueError("exponent vector length does not match variables")
            coef = Fraction(coef)
            if coef != 0:
                clean[tuple(exps)] = clean.get(tuple(exps), 0) + coef
        clean = {e: c for e, c in clean.items() if c != 0}
        # prune unused variables and sort the rest canonically
        used = [i for i in range(n) if any(e[i] for e in clean)]
        order = sorted(used, key=lambda i: var_sort_key(variables[i]))
        object.__setattr__(self, "variables", tuple(variables[i] for i in order))
        object.__setattr__(
            self, "terms", {tuple(e[i] for i in order): c for e, c in clean.items()}
        )

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # construction helpers

    @classmethod
    def const(cls, c) -> "MultiPoly":
        return cls((), {(): c})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def _coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def _aligned(self, other: "MultiPoly"):
        names = sorted(set(self.variables) | set(other.variables), key=var_sort_key)
        return names, self._embed(names), other._embed(names)

    def _embed(self, names) -> dict:
        pos = [names.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            full = [0] * len(names)
            for p, x in zip(pos, e):
                full[p] = x
            out[tuple(full)] = c
        return out

    # arithmetic

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        names, a, b = self._aligned(other)
        for e, c in b.items():
            a[e] = a.get(e, 0) + c
        return MultiPoly(names, a)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        names, a, b = self._aligned(other)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return MultiPoly(names, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.variables, {e: c * x for e, x in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # calculus and evaluation

    def partial_derivative(self, name: str) -> "MultiPoly":
        if name not in self.variables:
            return MultiPoly()
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return MultiPoly(self.variables, out)

    def evaluate(self, point: Mapping[str, object]):
        """Value at ``point``; exact when all bound values are rational."""
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise MissingVariableError(f"no value bound for variable {missing[0]!r}")
        vals = [point[v] for v in self.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, p in zip(vals, e):
                if p:
                    term = term * x ** p
            total = total + term
        return total

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, names: Iterable[str]) -> int:
        """Maximum total degree of any term in the given block of variables."""
        idx = [i for i, v in enumerate(self.variables) if v in set(names)]
        return max((sum(e[i] for i in idx) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def leading_term(self) -> str:
        if not self.terms:
            return "0"
        e, c = self.sorted_terms()[0]
        return _render_term(self.variables, e, c)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_render_term(self.variables, e, c) for e, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def __len__(self) -> int:
        return len(self.terms)


def _render_term(variables, exps, coef) -> str:
    parts = [str(coef)]
    for name, p in zip(variables, exps):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return "*".join(parts)
