"""Exact sparse multivariate polynomial arithmetic over the integers.

Polynomials live over a fixed table of graded variables.  Coefficients are
arbitrary-precision Python ints; monomials are dense exponent tuples, one
slot per table variable.  Every operation returns a canonical value: zero
coefficients are never stored, so two polynomials are equal iff their term
mappings are equal.

Rendering follows one fixed convention (terms sorted by total grade, then
lexicographically over the table order, both descending) so that rendered
strings are usable as golden values and round-trip through the parser.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]


class PolyError(Exception):
    """Base class for rejected polynomial inputs."""


class TableMismatch(PolyError):
    """Operands do not share a variable table."""


class GradeMismatch(PolyError):
    """A substitution image is not homogeneous of the required grade."""


class NotDivisible(PolyError):
    """Exact division left a nonzero remainder over the integers."""


class NotSymmetric(PolyError):
    """Input is not invariant under the requested variable swap."""


class VarTable:
    """Immutable ordered table of (variable name, positive degree) pairs."""

    __slots__ = ("names", "degrees", "_pos")

    def __init__(self, entries: Iterable[Tuple[str, int]]):
        names = []
        degrees = []
        for name, deg in entries:
            if not name or not isinstance(name, str):
                raise PolyError(f"bad variable name {name!r}")
            if deg < 1:
                raise PolyError(f"variable {name!r} must have degree >= 1, got {deg}")
            names.append(name)
            degrees.append(int(deg))
        if len(set(names)) != len(names):
            raise PolyError("duplicate variable names in table")
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "degrees", tuple(degrees))
        object.__setattr__(self, "_pos", {n: i for i, n in enumerate(names)})

    def __setattr__(self, *args):
        raise AttributeError("VarTable is immutable")

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarTable)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self) -> int:
        return hash((self.names, self.degrees))

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"VarTable({inner})"

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def grade(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def monomials_of_grade(self, n: int) -> Tuple[Monomial, ...]:
        """All exponent tuples of total grade exactly n, in a fixed order."""
        return _monomials_of_grade(self, n)


@lru_cache(maxsize=None)
def _monomials_of_grade(table: VarTable, n: int) -> Tuple[Monomial, ...]:
    if n < 0:
        return ()
    out = []

    def rec(i: int, remaining: int, prefix: Tuple[int, ...]):
        if i == len(table):
            if remaining == 0:
                out.append(prefix)
            return
        d = table.degrees[i]
        if i == len(table) - 1:
            if remaining % d == 0:
                out.append(prefix + (remaining // d,))
            return
        for e in range(remaining // d + 1):
            rec(i + 1, remaining - e * d, prefix + (e,))

    rec(0, n, ())
    return tuple(out)


def _render_key(table: VarTable, mono: Monomial) -> Tuple[int, Monomial]:
    return (table.grade(mono), mono)


class Poly:
    """A canonical sparse polynomial with integer coefficients.

    Instances are immutable by convention: no method mutates `terms` after
    construction, so values can be shared, hashed and used as dict keys.
    """

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VarTable, terms: Mapping[Monomial, int]):
        clean: Dict[Monomial, int] = {}
        width = len(table)
        for mono, coeff in terms.items():
            if len(mono) != width:
                raise PolyError(f"monomial width {len(mono)} != table width {width}")
            if coeff:
                clean[mono] = int(coeff)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "Poly":
        return Poly(table, {})

    @staticmethod
    def const(table: VarTable, c: int) -> "Poly":
        return Poly(table, {(0,) * len(table): c})

    @staticmethod
    def var(table: VarTable, name: str, exp: int = 1) -> "Poly":
        mono = [0] * len(table)
        mono[table.index(name)] = exp
        return Poly(table, {tuple(mono): 1})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly.const(self.table, other)
        if isinstance(other, Poly):
            if other.table != self.table:
                raise TableMismatch("operands use different variable tables")
            return other
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc[mono] = acc.get(mono, 0) + coeff
        return Poly(self.table, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc[mono] = acc.get(mono, 0) + c1 * c2
        return Poly(self.table, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise PolyError("negative power")
        result = Poly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == Poly.const(self.table, other).terms
        return (
            isinstance(other, Poly)
            and self.table == other.table
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.table, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"

    def __str__(self) -> str:
        return self.render()

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables_used(self) -> Tuple[str, ...]:
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(self.table.names[i])
        return tuple(n for n in self.table.names if n in used)

    def max_grade(self) -> int:
        if not self.terms:
            return 0
        return max(self.table.grade(m) for m in self.terms)

    def homogeneous_grade(self) -> Optional[int]:
        """The common grade of all terms, or None if inhomogeneous.

        The zero polynomial counts as homogeneous of every grade and
        returns 0.
        """
        grades = {self.table.grade(m) for m in self.terms}
        if not grades:
            return 0
        if len(grades) > 1:
            return None
        return grades.pop()

    def is_homogeneous_of_grade(self, n: int) -> bool:
        return all(self.table.grade(m) == n for m in self.terms)

    def graded_component(self, n: int) -> "Poly":
        """Sum of the terms of total grade exactly n."""
        return Poly(
            self.table,
            {m: c for m, c in self.terms.items() if self.table.grade(m) == n},
        )

    # -- substitution and table moves ---------------------------------------

    def substitute(self, assignment: Mapping[str, "Poly"]) -> "Poly":
        """Ring-homomorphic substitution; unassigned variables map to themselves.

        Each image must be homogeneous of the same grade as the variable it
        replaces (zero is allowed), so grading is preserved.
        """
        table = self.table
        images: Dict[int, Poly] = {}
        for name, img in assignment.items():
            idx = table.index(name)
            if not isinstance(img, Poly) or img.table != table:
                raise TableMismatch(f"image of {name!r} is not over the same table")
            if not img.is_homogeneous_of_grade(table.degrees[idx]):
                raise GradeMismatch(
                    f"image of {name!r} is not homogeneous of grade {table.degrees[idx]}"
                )
            images[idx] = img
        if not images:
            return self

        power_cache: Dict[Tuple[int, int], Poly] = {}

        def power(idx: int, e: int) -> Poly:
            key = (idx, e)
            if key not in power_cache:
                power_cache[key] = images[idx] ** e
            return power_cache[key]

        out = Poly.zero(table)
        for mono, coeff in self.terms.items():
            fixed = list(mono)
            factor = Poly.const(table, coeff)
            for idx in images:
                e = mono[idx]
                if e:
                    fixed[idx] = 0
                    factor = factor * power(idx, e)
            out = out + factor * Poly(table, {tuple(fixed): 1})
        return out

    def change_table(
        self, new_table: VarTable, rename: Optional[Mapping[str, str]] = None
    ) -> "Poly":
        """Rebuild the polynomial over another table.

        Every variable actually used must map (via `rename`, default: same
        name) to a variable of `new_table` with the same degree.
        """
        rename = dict(rename or {})
        slot: Dict[int, int] = {}
        for name in self.variables_used():
            target = rename.get(name, name)
            j = new_table.index(target)
            i = self.table.index(name)
            if new_table.degrees[j] != self.table.degrees[i]:
                raise GradeMismatch(
                    f"variable {name!r} changes degree under table move"
                )
            slot[i] = j
        acc: Dict[Monomial, int] = {}
        width = len(new_table)
        for mono, coeff in self.terms.items():
            out = [0] * width
            for i, e in enumerate(mono):
                if e:
                    out[slot[i]] += e
            key = tuple(out)
            acc[key] = acc.get(key, 0) + coeff
        return Poly(new_table, acc)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at integer (or Fraction) values for every used variable."""
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(mono):
                if e:
                    name = self.table.names[i]
                    if name not in values:
                        raise PolyError(f"no value supplied for {name!r}")
                    term = term * values[name] ** e
            total = total + term
        return total

    # -- rendering -------------------------------------------------------------

    def sorted_terms(self) -> Tuple[Tuple[Monomial, int], ...]:
        """Terms in canonical order (grade, then table-lex, both descending)."""
        return tuple(
            sorted(
                self.terms.items(),
                key=lambda kv: _render_key(self.table, kv[0]),
                reverse=True,
            )
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for k, (mono, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(self.table.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono_txt = "*".join(factors)
            mag = abs(coeff)
            if mono_txt and mag == 1:
                body = mono_txt
            elif mono_txt:
                body = f"{mag}*{mono_txt}"
            else:
                body = str(mag)
            if k == 0:
                chunks.append(("-" if coeff < 0 else "") + body)
            else:
                chunks.append((" - " if coeff < 0 else " + ") + body)
        return "".join(chunks)


# -- exact division -------------------------------------------------------------


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return r with r*q == p over the integers, or raise NotDivisible.

    Greedy leading-term division under the canonical term order; any failed
    step (monomial or coefficient non-divisibility) means no such r exists.
    """
    if q.table != p.table:
        raise TableMismatch("operands use different variable tables")
    if q.is_zero():
        raise PolyError("division by the zero polynomial")
    table = p.table
    q_terms = q.sorted_terms()
    q_mono, q_coeff = q_terms[0]
    rest = dict(p.terms)
    out: Dict[Monomial, int] = {}
    while rest:
        mono = max(rest, key=lambda m: _render_key(table, m))
        coeff = rest[mono]
        diff = tuple(a - b for a, b in zip(mono, q_mono))
        if any(e < 0 for e in diff) or coeff % q_coeff:
            raise NotDivisible(f"{p.render()} is not divisible by {q.render()}")
        c = coeff // q_coeff
        out[diff] = c
        for m2, c2 in q_terms:
            key = tuple(a + b for a, b in zip(diff, m2))
            val = rest.get(key, 0) - c * c2
            if val:
                rest[key] = val
            elif key in rest:
                del rest[key]
    return Poly(table, out)


def content_and_primitive(p: Poly) -> Tuple[int, Poly]:
    """Split p = c * p^ with p^ primitive and positive-led in canonical order.

    The zero polynomial returns (1, 0).
    """
    if p.is_zero():
        return 1, p
    c = 0
    for coeff in p.terms.values():
        c = gcd(c, coeff)
    lead_coeff = p.sorted_terms()[0][1]
    if lead_coeff < 0:
        c = -c
    return c, Poly(p.table, {m: v // c for m, v in p.terms.items()})


# -- symmetric rewriting ---------------------------------------------------------


def to_elementary_symmetric(
    p: Poly, pair: Tuple[str, str], targets: Tuple[str, str]
) -> Poly:
    """Rewrite a polynomial symmetric in `pair` in terms of e1 and e2.

    `targets` are the table variables receiving the elementary symmetric
    functions of the pair (degrees 1 and 2).  All other variables are
    treated as scalars.  Raises NotSymmetric if swapping the pair changes p.
    The rewrite is the classical elimination: repeatedly kill the lex-top
    pair-exponent (a, b) with the matching e1^(a-b) * e2^b product.
    """
    table = p.table
    i1, i2 = table.index(pair[0]), table.index(pair[1])
    j1, j2 = table.index(targets[0]), table.index(targets[1])
    if table.degrees[i1] != 1 or table.degrees[i2] != 1:
        raise GradeMismatch("pair variables must have degree 1")
    if table.degrees[j1] != 1 or table.degrees[j2] != 2:
        raise GradeMismatch("targets must have degrees 1 and 2")

    swapped: Dict[Monomial, int] = {}
    for mono, coeff in p.terms.items():
        m = list(mono)
        m[i1], m[i2] = m[i2], m[i1]
        swapped[tuple(m)] = coeff
    if swapped != p.terms:
        raise NotSymmetric(f"not symmetric under {pair[0]} <-> {pair[1]}")

    e1 = Poly.var(table, pair[0]) + Poly.var(table, pair[1])
    e2 = Poly.var(table, pair[0]) * Poly.var(table, pair[1])
    s1 = Poly.var(table, targets[0])
    s2 = Poly.var(table, targets[1])

    work = p
    out = Poly.zero(table)
    while True:
        top = None
        for mono in work.terms:
            ab = (mono[i1], mono[i2])
            if ab == (0, 0):
                continue
            if top is None or (ab > top[0]):
                top = (ab, mono)
        if top is None:
            return out + work
        (a, b), mono = top
        if a < b:
            raise NotSymmetric("symmetry lost during elimination")
        coeff = work.terms[mono]
        rest = list(mono)
        rest[i1] = rest[i2] = 0
        rest_poly = Poly(table, {tuple(rest): coeff})
        work = work - rest_poly * e1 ** (a - b) * e2**b
        out = out + rest_poly * s1 ** (a - b) * s2**b
