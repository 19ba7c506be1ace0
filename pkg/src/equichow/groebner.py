"""Strong Groebner bases and ideal arithmetic over the integers.

Over Z a generating set strong enough for unique division must handle
non-invertible leading coefficients, so the completion loop closes under
both S-polynomials (monomial overlaps) and G-polynomials (gcd combinations
of leading coefficients).  Division reduces each coefficient to its
canonical Euclidean remainder in [0, lc), which makes normal forms unique
and membership decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Monomial, Poly, PolyError, TableMismatch, VarTable


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-founded total order on monomials.

    kind: "grevlex" (graded by the table's variable degrees, reverse-lex
    tie-break) or "lex".  `priority` lists variable names from highest to
    lowest; it must cover the table exactly.
    """

    kind: str
    priority: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    @staticmethod
    def grevlex(table: VarTable) -> "MonomialOrder":
        """Default order: grevlex with the table reversed, so relation
        leading terms land on the latest-declared ("new") variables."""
        return MonomialOrder("grevlex", tuple(reversed(table.names)))

    @staticmethod
    def lex(priority: Sequence[str]) -> "MonomialOrder":
        return MonomialOrder("lex", tuple(priority))

    def key(self, table: VarTable):
        """A sort key: bigger key means bigger monomial."""
        if set(self.priority) != set(table.names):
            raise PolyError("order priority does not cover the table")
        perm = tuple(table.index(n) for n in self.priority)
        if self.kind == "lex":
            return lambda mono: tuple(mono[i] for i in perm)
        degs = table.degrees

        def grevlex_key(mono: Monomial):
            grade = sum(e * d for e, d in zip(mono, degs))
            return (grade, tuple(-mono[i] for i in reversed(perm)))

        return grevlex_key


def leading_term(p: Poly, order: MonomialOrder) -> Tuple[Monomial, int]:
    if p.is_zero():
        raise PolyError("zero polynomial has no leading term")
    key = order.key(p.table)
    mono = max(p.terms, key=key)
    return mono, p.terms[mono]


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(p: Poly, mono: Monomial, coeff: int) -> Poly:
    return Poly(
        p.table,
        {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in p.terms.items()},
    )


def _positive_lead(p: Poly, order: MonomialOrder) -> Poly:
    _, lc = leading_term(p, order)
    return -p if lc < 0 else p


@dataclass(frozen=True)
class IdealBasis:
    """A generating set with its order; `is_strong_groebner` marks bases on
    which division yields unique remainders."""

    polys: Tuple[Poly, ...]
    order: MonomialOrder
    is_strong_groebner: bool = False

    @property
    def table(self) -> VarTable:
        return self.polys[0].table


def spolynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    """Cancel the leading terms using lcm of coefficients and monomials."""
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    m = _mono_lcm(mf, mg)
    c = cf * cg // gcd(cf, cg)
    return _shift(f, _mono_sub(m, mf), c // cf) - _shift(g, _mono_sub(m, mg), c // cg)


def gpolynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    """Combine the leading terms into gcd(lc f, lc g) times the lcm monomial."""
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    m = _mono_lcm(mf, mg)
    s, t = _bezout(cf, cg)
    return _shift(f, _mono_sub(m, mf), s) + _shift(g, _mono_sub(m, mg), t)


def _bezout(a: int, b: int) -> Tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _reduce(p: Poly, basis: Sequence[Poly], order: MonomialOrder) -> Poly:
    """Full division remainder: every coefficient of the result is the
    canonical Euclidean remainder modulo the applicable leading coefficients."""
    if not basis:
        return p
    table = p.table
    key = order.key(table)
    normalized = [_positive_lead(g, order) for g in basis]
    leads = [(leading_term(g, order), g) for g in normalized]
    work = dict(p.terms)
    out: Dict[Monomial, int] = {}
    while work:
        mono = max(work, key=key)
        coeff = work.pop(mono)
        best: Optional[Tuple[int, Poly, Monomial]] = None
        for (gm, gc), g in leads:
            if _mono_divides(gm, mono) and (best is None or gc < best[0]):
                best = (gc, g, gm)
        if best is None:
            out[mono] = coeff
            continue
        gc, g, gm = best
        q, r = divmod(coeff, gc)
        if q:
            shift = _mono_sub(mono, gm)
            for m2, c2 in g.terms.items():
                if m2 == gm:
                    continue
                k = tuple(a + b for a, b in zip(shift, m2))
                val = work.get(k, 0) - q * c2
                if val:
                    work[k] = val
                elif k in work:
                    del work[k]
        if r:
            out[mono] = r
    return Poly(table, out)


def strong_groebner(gens: Sequence[Poly], order: MonomialOrder) -> IdealBasis:
    """Complete `gens` to a strong Groebner basis over Z.

    Deterministic for a fixed input sequence and order.  The empty input
    yields the zero ideal (an empty basis).
    """
    polys = [g for g in gens if not g.is_zero()]
    if not polys:
        return IdealBasis((), order, True)
    table = polys[0].table
    for g in polys:
        if g.table != table:
            raise TableMismatch("generators use different variable tables")

    basis: List[Poly] = []
    for g in polys:
        g = _positive_lead(g, order)
        if g not in basis:
            basis.append(g)

    pairs: List[Tuple[int, int]] = [
        (i, j) for j in range(len(basis)) for i in range(j)
    ]
    pos = 0
    while pos < len(pairs):
        i, j = pairs[pos]
        pos += 1
        f, g = basis[i], basis[j]
        _, cf = leading_term(f, order)
        _, cg = leading_term(g, order)
        candidates = [spolynomial(f, g, order)]
        if cf % cg and cg % cf:
            candidates.append(gpolynomial(f, g, order))
        for cand in candidates:
            rem = _reduce(cand, basis, order)
            if rem.is_zero():
                continue
            rem = _positive_lead(rem, order)
            basis.append(rem)
            new = len(basis) - 1
            pairs.extend((k, new) for k in range(new))

    return IdealBasis(tuple(_minimize(basis, order)), order, True)


def _minimize(basis: List[Poly], order: MonomialOrder) -> List[Poly]:
    """Drop generators whose leading term is a term-multiple of another's,
    then reduce each tail; both steps preserve strongness and the ideal."""
    kept: List[Poly] = []
    leads = [leading_term(g, order) for g in basis]
    for idx, g in enumerate(basis):
        gm, gc = leads[idx]
        redundant = False
        for jdx, h in enumerate(basis):
            if jdx == idx:
                continue
            hm, hc = leads[jdx]
            if _mono_divides(hm, gm) and gc % hc == 0:
                if (hm, hc) == (gm, gc) and jdx > idx:
                    continue
                redundant = True
                break
        if not redundant:
            kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        gm, gc = leading_term(g, order)
        tail = _reduce(g - Poly(g.table, {gm: gc}), others, order)
        reduced.append(Poly(g.table, {**tail.terms, gm: gc}))
    return reduced


def normal_form(p: Poly, basis: IdealBasis) -> Poly:
    """Unique remainder of p modulo a strong Groebner basis.

    Idempotent; zero iff p lies in the ideal.
    """
    if not basis.is_strong_groebner:
        raise PolyError("normal_form requires a strong Groebner basis")
    if p.is_zero() or not basis.polys:
        return p
    if p.table != basis.table:
        raise TableMismatch("polynomial and basis use different tables")
    return _reduce(p, basis.polys, basis.order)


def verify_strong(basis: IdealBasis) -> bool:
    """Check the defining property: every S- and G-polynomial reduces to 0."""
    polys = basis.polys
    for j in range(len(polys)):
        for i in range(j):
            s = _reduce(spolynomial(polys[i], polys[j], basis.order), polys, basis.order)
            if not s.is_zero():
                return False
            g = _reduce(gpolynomial(polys[i], polys[j], basis.order), polys, basis.order)
            if not g.is_zero():
                return False
    return True


def ideal_contains(
    p: Poly, gens: Sequence[Poly], order: Optional[MonomialOrder] = None
) -> bool:
    """True iff p lies in the ideal generated by gens over Z."""
    if p.is_zero():
        return True
    if order is None:
        order = MonomialOrder.grevlex(p.table)
    basis = strong_groebner(gens, order)
    return normal_form(p, basis).is_zero()


def ideal_equal(
    gens_a: Sequence[Poly],
    gens_b: Sequence[Poly],
    order: Optional[MonomialOrder] = None,
) -> bool:
    """Mutual containment of the two generating sets."""
    live_a = [g for g in gens_a if not g.is_zero()]
    live_b = [g for g in gens_b if not g.is_zero()]
    if not live_a or not live_b:
        return not live_a and not live_b
    if order is None:
        order = MonomialOrder.grevlex(live_a[0].table)
    basis_a = strong_groebner(live_a, order)
    basis_b = strong_groebner(live_b, order)
    return all(normal_form(g, basis_b).is_zero() for g in live_a) and all(
        normal_form(g, basis_a).is_zero() for g in live_b
    )
