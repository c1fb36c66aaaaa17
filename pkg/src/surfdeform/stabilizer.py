"""Stabilizer groups, code parameters, logical bases and distance search."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import gf2
from .gf2 import Solver, parity
from .pauli import PauliOperator, product


class GroupError(ValueError):
    pass


class AnticommutingGenerators(GroupError):
    pass


class MinusOneInGroup(GroupError):
    pass


class NoLogicals(GroupError):
    pass


class TooLarge(GroupError):
    pass


def _combined(p: PauliOperator) -> int:
    """2n-bit row (x | z << n) used for GF(2) span arithmetic."""
    return p.xbits | (p.zbits << p.n)


def _flipped(p: PauliOperator) -> int:
    """Symplectic partner row: parity(flipped(a) & combined(b)) = anticommutation."""
    return p.zbits | (p.xbits << p.n)


def _from_combined(n: int, bits: int, hermitian_plus: bool = True) -> PauliOperator:
    x = bits & ((1 << n) - 1)
    z = bits >> n
    phase = (x & z).bit_count() % 4 if hermitian_plus else 0
    return PauliOperator(n, x, z, phase)


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: Optional[int] = None


@dataclass(frozen=True)
class LogicalBasis:
    xops: Tuple[PauliOperator, ...]
    zops: Tuple[PauliOperator, ...]

    @property
    def k(self) -> int:
        return len(self.xops)


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    generators: Tuple[PauliOperator, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.n != self.n:
                raise GroupError("generator length mismatch")

    @classmethod
    def from_operators(cls, n: int, gens: Sequence[PauliOperator]) -> "StabilizerGroup":
        return cls(n, tuple(gens))

    @classmethod
    def from_literals(cls, literals: Sequence[str]) -> "StabilizerGroup":
        gens = tuple(PauliOperator.from_string(s) for s in literals)
        if not gens:
            raise GroupError("empty literal list")
        return cls(gens[0].n, gens)

    def to_literals(self) -> List[str]:
        return [g.to_string() for g in self.generators]

    def combined_rows(self) -> List[int]:
        return [_combined(g) for g in self.generators]

    def solver(self) -> Solver:
        return Solver(self.combined_rows())

    def is_css(self) -> bool:
        return all(g.xbits == 0 or g.zbits == 0 for g in self.generators)


def validate_group(group: StabilizerGroup) -> CodeParameters:
    """Check commutativity and -1-freeness; return (n, k)."""
    gens = group.generators
    for j, g in enumerate(gens):
        if not g.is_hermitian():
            raise MinusOneInGroup(f"generator {j} has imaginary sign")
        for i in range(j):
            if not gens[i].commutes(g):
                raise AnticommutingGenerators(f"generators {i} and {j} anticommute")
    solver = group.solver()
    for combo in solver.null_combos:
        prod = product((gens[i] for i in gf2.bits_of(combo)), group.n)
        if prod.phase % 4 == 2:
            raise MinusOneInGroup("a product of generators equals -1")
        if prod.phase % 4 != 0:
            raise MinusOneInGroup("a product of generators has imaginary phase")
    return CodeParameters(n=group.n, k=group.n - solver.rank)


def in_group(group: StabilizerGroup, p: PauliOperator) -> bool:
    """Exact membership, sign included."""
    if p.n != group.n:
        raise GroupError("length mismatch")
    combo = group.solver().decompose(_combined(p))
    if combo is None:
        return False
    prod = product((group.generators[i] for i in gf2.bits_of(combo)), group.n)
    return prod.phase == p.phase


def in_group_pattern(group: StabilizerGroup, p: PauliOperator) -> bool:
    """Membership of the bit pattern, ignoring sign."""
    if p.n != group.n:
        raise GroupError("length mismatch")
    return group.solver().contains(_combined(p))


def in_normalizer(group: StabilizerGroup, p: PauliOperator) -> bool:
    if p.n != group.n:
        raise GroupError("length mismatch")
    return all(p.commutes(g) for g in group.generators)


def _type_score(bits: int, n: int) -> int:
    x = bits & ((1 << n) - 1)
    z = bits >> n
    if z == 0:
        return 0  # pure X
    if x == 0:
        return 2  # pure Z
    return 1


def logical_basis(group: StabilizerGroup) -> LogicalBasis:
    """Deterministic symplectic Gram-Schmidt over the centralizer of the group."""
    params = validate_group(group)
    n, k = params.n, params.k
    if k == 0:
        return LogicalBasis((), ())
    flip_rows = [_flipped(g) for g in group.generators]
    pool = gf2.kernel(flip_rows, 2 * n)
    span = Solver(group.combined_rows())
    xops: List[PauliOperator] = []
    zops: List[PauliOperator] = []
    mask = (1 << n) - 1

    def flip(v: int) -> int:
        return (v >> n) | ((v & mask) << n)

    while len(xops) < k:
        u_idx = next((i for i, v in enumerate(pool) if v and not span.contains(v)), None)
        if u_idx is None:
            raise GroupError("failed to complete a logical basis")
        u = pool[u_idx]
        u_flip = flip(u)
        w_idx = next((i for i, v in enumerate(pool)
                      if i != u_idx and v and parity(u_flip & v) == 1), None)
        if w_idx is None:
            raise GroupError("no symplectic partner found")
        w = pool[w_idx]
        w_flip = flip(w)
        # Make the rest of the pool commute with the chosen pair.
        new_pool = []
        for i, v in enumerate(pool):
            if i in (u_idx, w_idx):
                continue
            if parity(w_flip & v):
                v ^= u
            if parity(u_flip & v):
                v ^= w
            new_pool.append(v)
        pool = new_pool
        span.add(u)
        span.add(w)
        if _type_score(w, n) < _type_score(u, n):
            u, w = w, u
        xops.append(_from_combined(n, u))
        zops.append(_from_combined(n, w))
    return LogicalBasis(tuple(xops), tuple(zops))


def _sector_distance(stab_rows: List[int], opposite_flip_rows: List[int], n: int,
                     limit: int = 1 << 26) -> Optional[int]:
    """Minimum weight over (kernel of opposite-type checks) minus (stabilizer span)."""
    cycles = gf2.kernel(opposite_flip_rows, n)
    span = Solver(stab_rows)
    dim = len(cycles)
    if 1 << dim > limit:
        raise TooLarge(f"sector enumeration of 2^{dim} vectors refused")
    best = None
    vec = 0
    # Gray-code sweep over all combinations of cycle basis vectors.
    for i in range(1, 1 << dim):
        vec ^= cycles[(i & -i).bit_length() - 1]
        if span.contains(vec):
            continue
        w = vec.bit_count()
        if best is None or w < best:
            best = w
    return best


def distance(group: StabilizerGroup, n_max: int = 16) -> int:
    """Exact minimum weight over the normalizer minus the group.

    CSS groups are searched per Pauli sector, which stays exact and reaches
    larger codes; general groups enumerate the full normalizer and are guarded
    by `n_max`.
    """
    params = validate_group(group)
    if params.k == 0:
        raise NoLogicals("k = 0 group has no logical operators")
    n = group.n
    if group.is_css():
        x_rows = [g.xbits for g in group.generators if g.zbits == 0 and g.xbits]
        z_rows = [g.zbits for g in group.generators if g.xbits == 0 and g.zbits]
        # X-type logicals are constrained by Z checks and quotiented by X rows.
        d_x = _sector_distance(x_rows, z_rows, n)
        d_z = _sector_distance(z_rows, x_rows, n)
        candidates = [d for d in (d_x, d_z) if d is not None]
        if not candidates:
            raise NoLogicals("no nontrivial sector logicals found")
        return min(candidates)
    if n > n_max:
        raise TooLarge(f"n={n} exceeds exhaustive-search guard {n_max}")
    flip_rows = [_flipped(g) for g in group.generators]
    centralizer = gf2.kernel(flip_rows, 2 * n)
    span = Solver(group.combined_rows())
    dim = len(centralizer)
    if dim > 26:
        raise TooLarge(f"normalizer enumeration of 2^{dim} elements refused")
    best = None
    mask = (1 << n) - 1
    vec = 0
    for i in range(1, 1 << dim):
        vec ^= centralizer[(i & -i).bit_length() - 1]
        if span.contains(vec):
            continue
        w = ((vec & mask) | (vec >> n)).bit_count()
        if best is None or w < best:
            best = w
    if best is None:
        raise NoLogicals("normalizer equals the group")
    return best


def css_sector_distances(group: StabilizerGroup) -> Tuple[int, int]:
    """(min X-type logical weight, min Z-type logical weight) for CSS groups."""
    if not group.is_css():
        raise GroupError("not a CSS group")
    x_rows = [g.xbits for g in group.generators if g.zbits == 0 and g.xbits]
    z_rows = [g.zbits for g in group.generators if g.xbits == 0 and g.zbits]
    d_x = _sector_distance(x_rows, z_rows, group.n)
    d_z = _sector_distance(z_rows, x_rows, group.n)
    if d_x is None or d_z is None:
        raise NoLogicals("a sector has no nontrivial logicals")
    return d_x, d_z


def extend_register(group: StabilizerGroup, extra: int) -> StabilizerGroup:
    """Enlarge the register; each new qubit is fixed by a single-qubit Z."""
    if extra < 0:
        raise GroupError("extra must be >= 0")
    n2 = group.n + extra
    gens = [g.embed(n2, list(range(group.n))) for g in group.generators]
    gens += [PauliOperator.single(n2, group.n + j, "Z") for j in range(extra)]
    return StabilizerGroup(n2, tuple(gens))
