"""Finitely presented graded rings over Z and the maps between them.

A presentation is a graded variable table plus homogeneous relation
polynomials.  Degree-by-degree the ring is a finitely generated abelian
group (monomials modulo relation multiples), which Smith normal form turns
into rank and torsion data.  That is enough to verify, degree by degree,
that a commuting square of presentations is cartesian, to check that an
element is a non-zero-divisor up to a degree bound, and to run the Gysin
pushforward between the two boundary presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .groebner import IdealBasis, MonomialOrder, normal_form, strong_groebner
from .intlinalg import (
    IntegerSolver,
    column_lattice_basis,
    from_columns,
    preimage_generators,
    quotient_invariants,
)
from .poly import GradeMismatch, Poly, PolyError, VarTable


class WellDefinednessError(PolyError):
    """A ring map fails to send source relations into the target ideal."""


class RingPresentation:
    """Z[table] modulo a homogeneous relation ideal."""

    def __init__(self, table: VarTable, relations: Sequence[Poly] = ()):
        rels = []
        for r in relations:
            if r.table != table:
                raise PolyError("relation over a different table")
            if r.homogeneous_grade() is None:
                raise PolyError(f"relation {r.render()} is not homogeneous")
            if not r.is_zero():
                rels.append(r)
        self.table = table
        self.relations = tuple(rels)
        self.order = MonomialOrder.grevlex(table)
        self._basis: Optional[IdealBasis] = None

    def __repr__(self) -> str:
        rels = ", ".join(r.render() for r in self.relations)
        return f"RingPresentation({list(self.table.names)} / ({rels}))"

    def groebner(self) -> IdealBasis:
        if self._basis is None:
            self._basis = strong_groebner(self.relations, self.order)
        return self._basis

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self.groebner())

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def relation_columns(self, n: int) -> List[List[int]]:
        """Degree-n integer span of the ideal: one column per relation times
        monomial product, in the degree-n monomial basis."""
        monos = self.table.monomials_of_grade(n)
        index = {m: i for i, m in enumerate(monos)}
        columns = []
        for rel in self.relations:
            g = rel.homogeneous_grade()
            for m in self.table.monomials_of_grade(n - g):
                shifted = rel * Poly(self.table, {m: 1})
                col = [0] * len(monos)
                for mono, coeff in shifted.terms.items():
                    col[index[mono]] = coeff
                columns.append(col)
        return columns

    def poly_vector(self, p: Poly, n: int) -> List[int]:
        monos = self.table.monomials_of_grade(n)
        vec = [0] * len(monos)
        index = {m: i for i, m in enumerate(monos)}
        for mono, coeff in p.terms.items():
            if self.table.grade(mono) != n:
                raise GradeMismatch("vectorizing an inhomogeneous polynomial")
            vec[index[mono]] = coeff
        return vec


@dataclass(frozen=True)
class GradedPieceReport:
    """Rank/torsion of one graded piece plus the ambient monomial basis."""

    degree: int
    free_rank: int
    torsion: Tuple[int, ...]
    monomials: Tuple[Tuple[int, ...], ...]

    def describe(self) -> str:
        tors = ",".join(str(t) for t in self.torsion) if self.torsion else "-"
        return f"deg {self.degree}: free {self.free_rank}, torsion {tors}"


def graded_piece_invariants(pres: RingPresentation, n: int) -> GradedPieceReport:
    """Degree-n piece of the presentation as a finitely generated group."""
    monos = pres.table.monomials_of_grade(n)
    free, torsion = quotient_invariants(len(monos), pres.relation_columns(n))
    return GradedPieceReport(n, free, torsion, monos)


class RingHom:
    """A grade-preserving generator-image map between presentations.

    Construction checks that every generator image is homogeneous of the
    generator's degree and that every source relation maps into the target
    ideal; otherwise the map would not be well defined on the quotient.
    """

    def __init__(
        self,
        source: RingPresentation,
        target: RingPresentation,
        images: Mapping[str, Poly],
    ):
        self.source = source
        self.target = target
        self.images: Dict[str, Poly] = {}
        for name in source.table.names:
            if name not in images:
                raise WellDefinednessError(f"no image given for generator {name!r}")
            img = images[name]
            if img.table != target.table:
                raise WellDefinednessError(f"image of {name!r} is over the wrong table")
            deg = source.table.degrees[source.table.index(name)]
            if not img.is_homogeneous_of_grade(deg):
                raise GradeMismatch(
                    f"image of {name!r} must be homogeneous of grade {deg}"
                )
            self.images[name] = img
        for rel in source.relations:
            if not target.contains(self._raw_apply(rel)):
                raise WellDefinednessError(
                    f"relation {rel.render()} does not map into the target ideal"
                )

    def _raw_apply(self, p: Poly) -> Poly:
        table = self.source.table
        out = Poly.zero(self.target.table)
        cache: Dict[Tuple[int, int], Poly] = {}
        for mono, coeff in p.terms.items():
            term = Poly.const(self.target.table, coeff)
            for i, e in enumerate(mono):
                if not e:
                    continue
                key = (i, e)
                if key not in cache:
                    cache[key] = self.images[table.names[i]] ** e
                term = term * cache[key]
            out = out + term
        return out

    def apply(self, p: Poly) -> Poly:
        """Image of p, normal-formed in the target presentation."""
        if p.table != self.source.table:
            raise PolyError("polynomial is not over the source table")
        return self.target.normal_form(self._raw_apply(p))


def hom_apply(hom: RingHom, p: Poly) -> Poly:
    return hom.apply(p)


@dataclass
class DegreeCheck:
    degree: int
    passed: bool
    corner_invariants: Tuple[int, Tuple[int, ...]]
    fiber_invariants: Tuple[int, Tuple[int, ...]]
    surjective: bool

    def describe(self) -> str:
        a_free, a_tors = self.corner_invariants
        f_free, f_tors = self.fiber_invariants
        verdict = "ok" if self.passed else "FAIL"
        return (
            f"deg {self.degree}: {verdict} corner=(free {a_free}, torsion {list(a_tors)})"
            f" fiber=(free {f_free}, torsion {list(f_tors)}) surjective={self.surjective}"
        )


@dataclass
class CartesianReport:
    checks: List[DegreeCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Optional[int]:
        for c in self.checks:
            if not c.passed:
                return c.degree
        return None


class CartesianSquareSpec:
    """A commuting square of presentations

        A --ab--> B
        |         |
        ac        bd
        |         |
        v         v
        C --cd--> D

    with commutativity checked on generators modulo D's relations.
    """

    def __init__(
        self,
        a: RingPresentation,
        b: RingPresentation,
        c: RingPresentation,
        d: RingPresentation,
        ab: RingHom,
        ac: RingHom,
        bd: RingHom,
        cd: RingHom,
    ):
        self.a, self.b, self.c, self.d = a, b, c, d
        self.ab, self.ac, self.bd, self.cd = ab, ac, bd, cd
        for name in a.table.names:
            gen = Poly.var(a.table, name)
            left = bd.apply(ab.apply(gen))
            right = cd.apply(ac.apply(gen))
            if left != right:
                raise WellDefinednessError(
                    f"square does not commute on generator {name!r}"
                )


def verify_cartesian(square: CartesianSquareSpec, degree_bound: int) -> CartesianReport:
    """Check degree by degree that A maps isomorphically onto the fiber
    product of B and C over D.

    For each degree n the fiber product is the kernel of the difference map
    B_n + C_n -> D_n computed on integer lattices; the corner map is an
    isomorphism iff it is surjective onto the fiber product and both groups
    have equal Smith invariants (finitely generated abelian groups are
    Hopfian, so a surjection between isomorphic groups is injective).
    """
    checks = []
    for n in range(degree_bound + 1):
        checks.append(_check_degree(square, n))
    return CartesianReport(checks)


def _map_columns(hom: RingHom, n: int) -> List[List[int]]:
    cols = []
    for mono in hom.source.table.monomials_of_grade(n):
        image = hom.apply(Poly(hom.source.table, {mono: 1}))
        cols.append(hom.target.poly_vector(image, n))
    return cols


def _check_degree(square: CartesianSquareSpec, n: int) -> DegreeCheck:
    a, b, c, d = square.a, square.b, square.c, square.d
    mon_b = len(b.table.monomials_of_grade(n))
    mon_c = len(c.table.monomials_of_grade(n))
    mon_d = len(d.table.monomials_of_grade(n))
    dim = mon_b + mon_c

    # Difference map B_n + C_n -> D_n as a matrix over the monomial bases.
    cols_bd = _map_columns(square.bd, n)
    cols_cd = _map_columns(square.cd, n)
    diff = from_columns(
        cols_bd + [[-x for x in col] for col in cols_cd], mon_d
    )

    rd = d.relation_columns(n)
    lattice_gens = preimage_generators(diff, rd, dim)

    rb = b.relation_columns(n)
    rc = c.relation_columns(n)
    sub = [col + [0] * mon_c for col in rb] + [[0] * mon_b + col for col in rc]

    basis = column_lattice_basis(lattice_gens, dim)
    fiber: Tuple[int, Tuple[int, ...]]
    if basis:
        coords = IntegerSolver(from_columns(basis, dim))
        sub_coords = []
        for s in sub:
            x = coords.solve(s)
            if x is None:
                raise PolyError("relation column escapes the fiber lattice")
            sub_coords.append(x)
        fiber = quotient_invariants(len(basis), sub_coords)
    else:
        fiber = (0, ())

    corner_report = graded_piece_invariants(a, n)
    corner = (corner_report.free_rank, corner_report.torsion)

    # Surjectivity of A_n onto the fiber product.
    cols_ab = _map_columns(square.ab, n)
    cols_ac = _map_columns(square.ac, n)
    psi = [ab_col + ac_col for ab_col, ac_col in zip(cols_ab, cols_ac)]
    onto_matrix = from_columns(psi + sub, dim)
    solver = IntegerSolver(onto_matrix) if dim else None
    surjective = True
    for vec in basis:
        if solver is None or not solver.solvable(vec):
            surjective = False
            break

    passed = corner == fiber and surjective
    return DegreeCheck(n, passed, corner, fiber, surjective)


def nonzerodivisor_up_to(
    pres: RingPresentation, elt: Poly, degree_bound: int
) -> bool:
    """True iff multiplication by elt is injective on every graded piece of
    degree <= degree_bound."""
    g = elt.homogeneous_grade()
    if g is None:
        raise GradeMismatch("non-zero-divisor test needs a homogeneous element")
    if elt.is_zero():
        return False
    for n in range(degree_bound + 1):
        monos = pres.table.monomials_of_grade(n)
        if not monos:
            continue
        target = pres.table.monomials_of_grade(n + g)
        cols = []
        for mono in monos:
            product = pres.normal_form(elt * Poly(pres.table, {mono: 1}))
            cols.append(pres.poly_vector(product, n + g))
        mult = from_columns(cols, len(target))
        kernel_gens = preimage_generators(
            mult, pres.relation_columns(n + g), len(monos)
        )
        if not kernel_gens:
            continue
        rn = pres.relation_columns(n)
        live = [c for c in rn if any(c)]
        if not live:
            if any(any(v) for v in kernel_gens):
                return False
            continue
        solver = IntegerSolver(from_columns(live, len(monos)))
        for vec in kernel_gens:
            if not solver.solvable(vec):
                return False
    return True


# -- characters ------------------------------------------------------------


class CharacterBasis:
    """Declared character generators with their first Chern class values."""

    def __init__(self, assignments: Mapping[str, Poly]):
        if not assignments:
            raise PolyError("empty character basis")
        self.assignments = dict(assignments)

    def names(self) -> Tuple[str, ...]:
        return tuple(self.assignments)


def c1_of_character(basis: CharacterBasis, character: Mapping[str, int]) -> Poly:
    """Z-linear extension of the basis c1 assignments."""
    out = None
    for name, mult in character.items():
        if name not in basis.assignments:
            raise PolyError(f"unknown character generator {name!r}")
        term = basis.assignments[name] * mult
        out = term if out is None else out + term
    if out is None:
        raise PolyError("empty character")
    return out


# -- Gysin pushforward -------------------------------------------------------


def gysin_boundary_to_total(
    p: Poly,
    boundary: RingPresentation,
    total: RingPresentation,
    xi: str = "x",
    delta: str = "d1",
    eta: str = "e",
) -> Poly:
    """Pushforward along the boundary inclusion.

    Reduce p in the boundary presentation to the unique shape a + b*xi,
    then send it to a*delta + b*eta, normal-formed in the total ring.  The
    two generator values (1 -> delta, xi -> eta) plus linearity over the
    xi-free subring determine the operator.
    """
    reduced = boundary.normal_form(p)
    xi_index = boundary.table.index(xi)
    a_terms: Dict[Tuple[int, ...], int] = {}
    b_terms: Dict[Tuple[int, ...], int] = {}
    for mono, coeff in reduced.terms.items():
        e = mono[xi_index]
        if e == 0:
            a_terms[mono] = coeff
        elif e == 1:
            stripped = list(mono)
            stripped[xi_index] = 0
            b_terms[tuple(stripped)] = coeff
        else:
            raise PolyError("normal form kept xi-degree >= 2; basis is broken")
    rename = {n: n for n in boundary.table.names if n != xi}
    a_part = Poly(boundary.table, a_terms).change_table(total.table, rename)
    b_part = Poly(boundary.table, b_terms).change_table(total.table, rename)
    image = a_part * Poly.var(total.table, delta) + b_part * Poly.var(total.table, eta)
    return total.normal_form(image)
