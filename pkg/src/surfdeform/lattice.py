"""Chessboard surface-code geometry.

Conventions, fixed once for the whole package:

* sites live at integer (row, col) with 0 <= row < height, 0 <= col < width;
* the cell at (r, c) covers sites (r, c), (r, c+1), (r+1, c), (r+1, c+1);
  cells range over -1 <= r <= height-1, -1 <= c <= width-1;
* a cell is dark when (r + c) is even, light otherwise; dark cells carry
  X plaquette operators, light cells carry Z;
* borders are voided cells tagged with the border color; a cell is a kept
  plaquette exactly when it has at least two active sites and is not voided;
* the hardware register indexes grid sites row-major, and every hardware
  qubit outside the active set is fixed by a single-qubit Z.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gf2 import Solver, kernel
from .pauli import PauliOperator
from .stabilizer import StabilizerGroup, validate_group

Site = Tuple[int, int]
Cell = Tuple[int, int]

DARK = "dark"
LIGHT = "light"

# Operator letter attached to string/plaquette objects of each color.
PLAQUETTE_LETTER = {DARK: "X", LIGHT: "Z"}
STRING_LETTER = {DARK: "Z", LIGHT: "X"}


class LatticeError(ValueError):
    pass


class InvalidColoring(LatticeError):
    pass


class HardwareTooSmall(LatticeError):
    pass


class MissingPlaquette(LatticeError):
    pass


class MalformedPath(LatticeError):
    pass


class OpenString(LatticeError):
    pass


def cell_color(cell: Cell) -> str:
    return DARK if (cell[0] + cell[1]) % 2 == 0 else LIGHT


def other_color(color: str) -> str:
    return LIGHT if color == DARK else DARK


def sites_of_cell(cell: Cell) -> Tuple[Site, ...]:
    r, c = cell
    return ((r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1))


def cells_of_site(site: Site) -> Tuple[Cell, ...]:
    r, c = site
    return ((r - 1, c - 1), (r - 1, c), (r, c - 1), (r, c))


def shared_cells(a: Site, b: Site) -> Tuple[Cell, ...]:
    return tuple(sorted(set(cells_of_site(a)) & set(cells_of_site(b))))


@dataclass(frozen=True)
class Plaquette:
    cell: Cell
    color: str
    sites: Tuple[Site, ...]


@dataclass(frozen=True)
class StringPath:
    color: str
    sites: Tuple[Site, ...]

    def __post_init__(self):
        if self.color not in (DARK, LIGHT):
            raise MalformedPath(f"bad color {self.color!r}")
        if not self.sites:
            raise MalformedPath("empty string path")


@dataclass(frozen=True)
class Hole:
    ident: str
    color: str
    cells: Tuple[Cell, ...]


@dataclass(frozen=True)
class HoleSpec:
    voids: Tuple[Tuple[Cell, str], ...]


@dataclass(frozen=True)
class LatticeSpec:
    height: int
    width: int
    border_runs: Tuple[Tuple[str, int], ...]
    holes: Tuple[HoleSpec, ...] = ()
    deactivated: Tuple[Site, ...] = ()


def perimeter_walk(height: int, width: int) -> List[Cell]:
    """Outer boundary cells, clockwise from the top-left corner cell."""
    cells: List[Cell] = []
    cells += [(-1, c) for c in range(-1, width)]
    cells += [(r, width - 1) for r in range(0, height)]
    cells += [(height - 1, c) for c in range(width - 2, -2, -1)]
    cells += [(r, -1) for r in range(height - 2, -1, -1)]
    return cells


def rectangle(height: int, width: int) -> LatticeSpec:
    """Plain rectangle with the alternating border coloring of a planar patch:
    light top and bottom, dark left and right."""
    runs = (
        (LIGHT, width + 1),   # top row of cells
        (DARK, height),       # right column
        (LIGHT, width),       # bottom row
        (DARK, height - 1),   # left column
    )
    return LatticeSpec(height=height, width=width, border_runs=runs)


class SurfaceCode:
    """Immutable lattice geometry bound to its stabilizer group."""

    def __init__(self, height: int, width: int, hardware_n: int,
                 active: FrozenSet[Site], voided: Mapping[Cell, str],
                 holes: Tuple[Hole, ...] = (),
                 origin: Optional[LatticeSpec] = None,
                 _validate: bool = True):
        self.height = height
        self.width = width
        self.hardware_n = hardware_n
        self.active = frozenset(active)
        self.voided = dict(voided)
        self.holes = tuple(sorted(holes, key=lambda h: h.ident))
        self.origin = origin
        if hardware_n < height * width:
            raise HardwareTooSmall(
                f"hardware register {hardware_n} < {height}x{width} grid")
        for s in self.active:
            if not (0 <= s[0] < height and 0 <= s[1] < width):
                raise LatticeError(f"active site {s} outside the grid")
        self._build()
        if _validate:
            self._check()

    # -- derived structure -------------------------------------------------

    def qubit_index(self, site: Site) -> int:
        return site[0] * self.width + site[1]

    def cell_in_range(self, cell: Cell) -> bool:
        return -1 <= cell[0] <= self.height - 1 and -1 <= cell[1] <= self.width - 1

    def active_sites_of_cell(self, cell: Cell) -> Tuple[Site, ...]:
        return tuple(s for s in sites_of_cell(cell) if s in self.active)

    def _build(self) -> None:
        plaquettes: Dict[Cell, Plaquette] = {}
        for r in range(-1, self.height):
            for c in range(-1, self.width):
                cell = (r, c)
                if cell in self.voided:
                    continue
                sites = self.active_sites_of_cell(cell)
                if len(sites) >= 2:
                    plaquettes[cell] = Plaquette(cell, cell_color(cell), tuple(sorted(sites)))
        self.plaquettes = plaquettes
        gens = [self._plaquette_pauli(p) for _, p in sorted(plaquettes.items())]
        active_idx = {self.qubit_index(s) for s in self.active}
        gens += [PauliOperator.single(self.hardware_n, q, "Z")
                 for q in range(self.hardware_n) if q not in active_idx]
        self.group = StabilizerGroup(self.hardware_n, tuple(gens))
        self.n_active = len(self.active)
        self.params = validate_group(self.group)
        self.k = self.params.k
        self._site_order = sorted(self.active)
        self._site_pos = {s: i for i, s in enumerate(self._site_order)}
        self._homology: Dict[str, Tuple[List[int], List[int], Solver]] = {}

    def _check(self) -> None:
        for s in self.active:
            if not any(s in p.sites for p in self.plaquettes.values()):
                raise InvalidColoring(f"active site {s} lies in no plaquette")
        if self.class_count(DARK) != self.k or self.class_count(LIGHT) != self.k:
            raise InvalidColoring(
                f"homology dimensions {self.class_count(DARK)}/{self.class_count(LIGHT)}"
                f" disagree with k={self.k}")

    def _plaquette_pauli(self, p: Plaquette) -> PauliOperator:
        letter = PLAQUETTE_LETTER[p.color]
        return PauliOperator.from_support(
            self.hardware_n, (self.qubit_index(s) for s in p.sites), letter)

    # -- compressed site masks for homology --------------------------------

    def _site_mask(self, sites: Iterable[Site]) -> int:
        mask = 0
        for s in sites:
            mask |= 1 << self._site_pos[s]
        return mask

    def _homology_data(self, color: str) -> Tuple[List[int], List[int], Solver]:
        """(boundary rows, class representative masks, decomposition solver).

        For strings of `color`, cycles are constrained by same-color
        plaquettes and boundaries are spanned by opposite-color plaquettes.
        """
        if color not in self._homology:
            constraint_rows = [self._site_mask(p.sites)
                               for _, p in sorted(self.plaquettes.items())
                               if p.color == color]
            boundary_rows = [self._site_mask(p.sites)
                             for _, p in sorted(self.plaquettes.items())
                             if p.color != color]
            cycles = kernel(constraint_rows, len(self._site_order))
            span = Solver(boundary_rows)
            reps = [v for v in cycles if span.add(v)]
            solver = Solver(boundary_rows + reps)
            self._homology[color] = (boundary_rows, reps, solver)
        return self._homology[color]

    def class_count(self, color: str) -> int:
        return len(self._homology_data(color)[1])

    def class_representatives(self, color: str) -> List[StringPath]:
        """One closed string (as a site set) per nontrivial homology class."""
        _, reps, _ = self._homology_data(color)
        out = []
        for mask in reps:
            sites = tuple(self._site_order[i] for i in range(len(self._site_order))
                          if (mask >> i) & 1)
            out.append(StringPath(color, sites))
        return out

    # -- public operations ---------------------------------------------------

    def plaquette_operator(self, cell: Cell) -> PauliOperator:
        if cell not in self.plaquettes:
            raise MissingPlaquette(f"no plaquette at {cell}")
        return self._plaquette_pauli(self.plaquettes[cell])

    def validate_path(self, path: StringPath) -> None:
        for s in path.sites:
            if s not in self.active:
                raise MalformedPath(f"site {s} not active")
        for a, b in zip(path.sites, path.sites[1:]):
            cells = [c for c in shared_cells(a, b)
                     if self.cell_in_range(c) and cell_color(c) == path.color]
            if not cells:
                raise MalformedPath(f"step {a}->{b} has no {path.color} cell")

    def pattern_operator(self, color: str, sites: Iterable[Site]) -> PauliOperator:
        """Operator of a same-color site pattern, without path-shape checks."""
        sites = set(sites)
        for s in sites:
            if s not in self.active:
                raise MalformedPath(f"site {s} not active")
        letter = STRING_LETTER[color]
        return PauliOperator.from_support(
            self.hardware_n, (self.qubit_index(s) for s in sites), letter)

    def string_operator(self, path: StringPath) -> PauliOperator:
        self.validate_path(path)
        return self.pattern_operator(path.color, path.sites)

    def is_closed(self, path: StringPath) -> bool:
        op = self.pattern_operator(path.color, path.sites)
        return all(op.commutes(g) for g in self.group.generators)

    def is_boundary(self, path: StringPath) -> bool:
        if not self.is_closed(path):
            raise OpenString("boundary test on an open string")
        boundary_rows, _, _ = self._homology_data(path.color)
        mask = self._site_mask(set(path.sites))
        return Solver(boundary_rows).contains(mask)

    def homology_class(self, path: StringPath) -> Tuple[int, ...]:
        if not self.is_closed(path):
            raise OpenString("homology class of an open string")
        return self.pattern_class(path.color, self._site_mask(set(path.sites)))

    def pattern_class(self, color: str, site_mask: int) -> Tuple[int, ...]:
        """Class coordinates of a closed same-color site pattern."""
        boundary_rows, reps, solver = self._homology_data(color)
        combo = solver.decompose(site_mask)
        if combo is None:
            raise OpenString("pattern is not a cycle")
        offset = len(boundary_rows)
        return tuple((combo >> (offset + i)) & 1 for i in range(len(reps)))

    def operator_class(self, op: PauliOperator, color: str) -> Tuple[int, ...]:
        """Class coordinates of a pure-type operator (Z-type dark, X-type light)."""
        bits = op.zbits if color == DARK else op.xbits
        sites = [s for s in self._site_order if (bits >> self.qubit_index(s)) & 1]
        return self.pattern_class(color, self._site_mask(sites))

    def endpoint_cells(self, path: StringPath) -> Tuple[Cell, ...]:
        """Kept same-color plaquettes whose operator anticommutes with the string."""
        op = self.pattern_operator(path.color, path.sites)
        out = []
        for cell, p in sorted(self.plaquettes.items()):
            if p.color == path.color and not self._plaquette_pauli(p).commutes(op):
                out.append(cell)
        return tuple(out)

    # -- identity and reshaping ----------------------------------------------

    def code_id(self) -> str:
        payload = repr((self.height, self.width, self.hardware_n,
                        sorted(self.active), sorted(self.voided.items()),
                        tuple((h.ident, h.color, tuple(sorted(h.cells)))
                              for h in self.holes)))
        return hashlib.sha256(payload.encode()).hexdigest()[:12]

    def rebuild(self, active: Optional[Iterable[Site]] = None,
                voided: Optional[Mapping[Cell, str]] = None,
                holes: Optional[Tuple[Hole, ...]] = None,
                validate: bool = True) -> "SurfaceCode":
        return SurfaceCode(
            self.height, self.width, self.hardware_n,
            frozenset(self.active if active is None else active),
            dict(self.voided if voided is None else voided),
            self.holes if holes is None else holes,
            origin=self.origin,
            _validate=validate)

    def same_geometry(self, other: "SurfaceCode") -> bool:
        return (self.active == other.active and self.voided == other.voided
                and self.height == other.height and self.width == other.width)


def crossing_parity(s_dark: StringPath, s_light: StringPath) -> str:
    """'even' or 'odd' count of shared sites between opposite-color strings."""
    if s_dark.color == s_light.color:
        raise MalformedPath("crossing parity needs opposite colors")
    shared = len(set(s_dark.sites) & set(s_light.sites))
    return "odd" if shared % 2 else "even"


def build_code(spec: LatticeSpec, hardware_n: int) -> SurfaceCode:
    """Compile a declarative lattice description into a SurfaceCode."""
    height, width = spec.height, spec.width
    if height < 2 or width < 2:
        raise InvalidColoring("grid must be at least 2x2 sites")
    walk = perimeter_walk(height, width)
    total = sum(length for _, length in spec.border_runs)
    if total != len(walk):
        raise InvalidColoring(
            f"border runs cover {total} cells, perimeter has {len(walk)}")
    voided: Dict[Cell, str] = {}
    pos = 0
    for color, length in spec.border_runs:
        if color not in (DARK, LIGHT):
            raise InvalidColoring(f"bad border color {color!r}")
        if length < 1:
            raise InvalidColoring("border runs must have positive length")
        for cell in walk[pos:pos + length]:
            if cell_color(cell) == color:
                voided[cell] = color
        pos += length
    holes: List[Hole] = []
    for i, hole_spec in enumerate(spec.holes):
        cells = []
        for cell, color in hole_spec.voids:
            cell = tuple(cell)
            if not (0 <= cell[0] < height - 1 and 0 <= cell[1] < width - 1):
                raise InvalidColoring(f"hole cell {cell} not interior")
            voided[cell] = color
            cells.append(cell)
        colors = {color for _, color in hole_spec.voids}
        holes.append(Hole(f"hole{i}", colors.pop() if len(colors) == 1 else "mixed",
                          tuple(sorted(cells))))
    active = {(r, c) for r in range(height) for c in range(width)}
    active -= set(map(tuple, spec.deactivated))

    def in_range(cell: Cell) -> bool:
        return -1 <= cell[0] <= height - 1 and -1 <= cell[1] <= width - 1

    # A site with every in-range cell voided belongs to no plaquette.
    for site in sorted(active):
        if all((not in_range(c)) or c in voided for c in cells_of_site(site)):
            active.discard(site)
    return SurfaceCode(height, width, hardware_n, frozenset(active), voided,
                       tuple(holes), origin=spec)
