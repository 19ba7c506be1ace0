"""Line-oriented job files for the command line tools.

Three small section-based formats share one scanner:

  push jobs      [vars] [space] [map] [class] [options]
  ideal files    [vars] [ideal]
  square files   [vars] [ring A|B|C|D] [hom X->Y] [options]

Blank lines and '#' comments are ignored.  Parsing either succeeds or
raises ParseError with the offending line number; parse -> render -> parse
is the identity on the parsed values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .localization import MapDescriptor, SpaceDescriptor, SpaceFactor
from .poly import Poly, PolyError, VarTable
from .presentation import CartesianSquareSpec, RingHom, RingPresentation
from .textio import ParseError, parse_poly


@dataclass
class JobOptions:
    degree_bound: int = 8
    oracle_trials: int = 0
    seed: Optional[int] = None


@dataclass
class PushJob:
    table: VarTable
    space: SpaceDescriptor
    mapping: MapDescriptor
    cls: Poly
    options: JobOptions
    product: bool
    exponents: Tuple[int, ...]
    target_h: Optional[str]

    def render(self) -> str:
        lines = ["[vars]"]
        for name, deg in zip(self.table.names, self.table.degrees):
            lines.append(f"{name} {deg}")
        lines.append("[space]")
        for f in self.space.factors:
            lines.append(
                f"factor d={f.d} w0={f.w0.render()} w1={f.w1.render()} h={f.hvar}"
            )
        lines.append("[map]")
        if self.product:
            lines.append("product")
        lines.append("exponents = " + " ".join(str(a) for a in self.exponents))
        if self.target_h:
            lines.append(f"target_h = {self.target_h}")
        lines.append("[class]")
        lines.append(self.cls.render())
        lines.append("[options]")
        lines.append(f"degree_bound = {self.options.degree_bound}")
        lines.append(f"oracle_trials = {self.options.oracle_trials}")
        if self.options.seed is not None:
            lines.append(f"seed = {self.options.seed}")
        return "\n".join(lines) + "\n"


def _sections(text: str) -> List[Tuple[str, List[Tuple[int, str]]]]:
    sections: List[Tuple[str, List[Tuple[int, str]]]] = []
    current: Optional[List[Tuple[int, str]]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            current = []
            sections.append((name, current))
            continue
        if current is None:
            raise ParseError(f"line {lineno}: content before any section header")
        current.append((lineno, line))
    return sections


def _parse_vars(entries: Sequence[Tuple[int, str]]) -> VarTable:
    pairs = []
    for lineno, line in entries:
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise ParseError(f"line {lineno}: expected '<name> <degree>'")
        pairs.append((parts[0], int(parts[1])))
    try:
        return VarTable(pairs)
    except PolyError as exc:
        raise ParseError(str(exc)) from None


def _keyvals(entries: Sequence[Tuple[int, str]]) -> List[Tuple[int, str, str]]:
    out = []
    for lineno, line in entries:
        if "=" not in line:
            out.append((lineno, line, ""))
            continue
        key, value = line.split("=", 1)
        out.append((lineno, key.strip(), value.strip()))
    return out


def _parse_options(entries: Sequence[Tuple[int, str]]) -> JobOptions:
    opts = JobOptions()
    for lineno, key, value in _keyvals(entries):
        try:
            if key == "degree_bound":
                opts.degree_bound = int(value)
                if opts.degree_bound < 0:
                    raise ValueError
            elif key == "oracle_trials":
                opts.oracle_trials = int(value)
                if opts.oracle_trials < 0:
                    raise ValueError
            elif key == "seed":
                opts.seed = int(value)
            else:
                raise ParseError(f"line {lineno}: unknown option {key!r}")
        except ValueError:
            raise ParseError(f"line {lineno}: bad value for {key!r}") from None
    return opts


def parse_push_job(text: str) -> PushJob:
    table: Optional[VarTable] = None
    factors: List[SpaceFactor] = []
    product = False
    exponents: Optional[Tuple[int, ...]] = None
    target_h: Optional[str] = None
    cls: Optional[Poly] = None
    options = JobOptions()

    for name, entries in _sections(text):
        if name == "vars":
            table = _parse_vars(entries)
        elif name == "space":
            if table is None:
                raise ParseError("[space] must come after [vars]")
            for lineno, line in entries:
                parts = line.split()
                if not parts or parts[0] != "factor":
                    raise ParseError(f"line {lineno}: expected a 'factor ...' line")
                fields: Dict[str, str] = {}
                for part in parts[1:]:
                    if "=" not in part:
                        raise ParseError(f"line {lineno}: expected key=value, got {part!r}")
                    k, v = part.split("=", 1)
                    fields[k] = v
                missing = {"d", "w0", "w1", "h"} - set(fields)
                if missing:
                    raise ParseError(f"line {lineno}: factor missing {sorted(missing)}")
                try:
                    factor = SpaceFactor(
                        int(fields["d"]),
                        parse_poly(fields["w0"], table),
                        parse_poly(fields["w1"], table),
                        fields["h"],
                    )
                except (PolyError, ValueError) as exc:
                    raise ParseError(f"line {lineno}: {exc}") from None
                factors.append(factor)
        elif name == "map":
            for lineno, key, value in _keyvals(entries):
                if key == "product" and not value:
                    product = True
                elif key == "exponents":
                    try:
                        exponents = tuple(int(p) for p in value.split())
                    except ValueError:
                        raise ParseError(f"line {lineno}: bad exponent list") from None
                elif key == "target_h":
                    target_h = value
                else:
                    raise ParseError(f"line {lineno}: unknown map entry {key!r}")
        elif name == "class":
            if table is None:
                raise ParseError("[class] must come after [vars]")
            body = " ".join(line for _, line in entries)
            cls = parse_poly(body, table)
        elif name == "options":
            options = _parse_options(entries)
        else:
            raise ParseError(f"unknown section [{name}]")

    if table is None or not factors or exponents is None or cls is None:
        raise ParseError("job needs [vars], [space], [map] exponents and [class]")
    try:
        space = SpaceDescriptor(factors)
        if product:
            names = None
            if target_h:
                names = [f"{target_h}{k + 1}" for k in range(len(factors))]
            mapping = MapDescriptor.product(space, exponents, names)
        else:
            mapping = MapDescriptor.multiplication(space, exponents, target_h or "h")
    except PolyError as exc:
        raise ParseError(str(exc)) from None
    return PushJob(table, space, mapping, cls, options, product, exponents, target_h)


@dataclass
class IdealJob:
    table: VarTable
    generators: Tuple[Poly, ...]

    def render(self) -> str:
        lines = ["[vars]"]
        for name, deg in zip(self.table.names, self.table.degrees):
            lines.append(f"{name} {deg}")
        lines.append("[ideal]")
        for g in self.generators:
            lines.append(f"gen = {g.render()}")
        return "\n".join(lines) + "\n"


def parse_ideal_job(text: str) -> IdealJob:
    table: Optional[VarTable] = None
    gens: List[Poly] = []
    for name, entries in _sections(text):
        if name == "vars":
            table = _parse_vars(entries)
        elif name == "ideal":
            if table is None:
                raise ParseError("[ideal] must come after [vars]")
            for lineno, key, value in _keyvals(entries):
                if key != "gen":
                    raise ParseError(f"line {lineno}: expected 'gen = <poly>'")
                gens.append(parse_poly(value, table))
        else:
            raise ParseError(f"unknown section [{name}]")
    if table is None:
        raise ParseError("ideal file needs a [vars] section")
    return IdealJob(table, tuple(gens))


_CORNERS = ("A", "B", "C", "D")
_HOMS = (("A", "B"), ("A", "C"), ("B", "D"), ("C", "D"))


@dataclass
class SquareJob:
    square: CartesianSquareSpec
    degree_bound: int


def parse_square_job(text: str) -> SquareJob:
    table: Optional[VarTable] = None
    ring_specs: Dict[str, Tuple[List[str], List[Poly]]] = {}
    hom_specs: Dict[Tuple[str, str], Dict[str, str]] = {}
    degree_bound = 8

    for name, entries in _sections(text):
        if name == "vars":
            table = _parse_vars(entries)
        elif name.startswith("ring "):
            corner = name[5:].strip()
            if corner not in _CORNERS:
                raise ParseError(f"unknown ring corner {corner!r}")
            if table is None:
                raise ParseError("[ring ...] must come after [vars]")
            var_names: List[str] = []
            rel_texts: List[str] = []
            for lineno, key, value in _keyvals(entries):
                if key == "vars":
                    var_names = value.split()
                elif key == "relation":
                    rel_texts.append(value)
                else:
                    raise ParseError(f"line {lineno}: unknown ring entry {key!r}")
            if not var_names:
                raise ParseError(f"ring {corner} needs a 'vars =' line")
            pairs = []
            for v in var_names:
                pairs.append((v, table.degrees[table.index(v)]))
            sub = VarTable(pairs)
            rels = [parse_poly(t, sub) for t in rel_texts]
            ring_specs[corner] = (var_names, rels)
        elif name.startswith("hom "):
            arrow = name[4:].replace(" ", "")
            if "->" not in arrow:
                raise ParseError(f"bad hom header [{name}]")
            src, dst = arrow.split("->", 1)
            if (src, dst) not in _HOMS:
                raise ParseError(f"unexpected hom {src}->{dst}")
            images: Dict[str, str] = {}
            for lineno, key, value in _keyvals(entries):
                images[key] = value
            hom_specs[(src, dst)] = images
        elif name == "options":
            opts = _parse_options(entries)
            degree_bound = opts.degree_bound
        else:
            raise ParseError(f"unknown section [{name}]")

    if table is None:
        raise ParseError("square file needs a [vars] section")
    missing = [c for c in _CORNERS if c not in ring_specs]
    if missing:
        raise ParseError(f"missing ring sections: {missing}")
    missing_homs = [f"{s}->{d}" for s, d in _HOMS if (s, d) not in hom_specs]
    if missing_homs:
        raise ParseError(f"missing hom sections: {missing_homs}")

    try:
        rings = {
            c: RingPresentation(
                VarTable(
                    [(v, table.degrees[table.index(v)]) for v in ring_specs[c][0]]
                ),
                ring_specs[c][1],
            )
            for c in _CORNERS
        }
        homs = {}
        for src, dst in _HOMS:
            images = {
                gen: parse_poly(text, rings[dst].table)
                for gen, text in hom_specs[(src, dst)].items()
            }
            homs[(src, dst)] = RingHom(rings[src], rings[dst], images)
        square = CartesianSquareSpec(
            rings["A"],
            rings["B"],
            rings["C"],
            rings["D"],
            homs[("A", "B")],
            homs[("A", "C")],
            homs[("B", "D")],
            homs[("C", "D")],
        )
    except PolyError as exc:
        raise ParseError(str(exc)) from None
    return SquareJob(square, degree_bound)
