"""GF(2) linear algebra on int bitsets (bit i = column i)."""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple


def parity(x: int) -> int:
    """Parity of the popcount of x."""
    return x.bit_count() & 1


def rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) via Gaussian elimination."""
    work = [r for r in rows if r]
    rk = 0
    while work:
        pivot_row = work[0]
        pivot_bit = pivot_row & -pivot_row
        rk += 1
        work = [r ^ pivot_row if r & pivot_bit else r for r in work[1:]]
        work = [r for r in work if r]
    return rk


class Solver:
    """Incrementally built row basis supporting membership and decomposition.

    Each inserted row is tracked together with the combination of input rows
    that produced it, so `decompose` can report which inputs sum to a target.
    """

    def __init__(self, rows: Iterable[int] = ()):
        self._basis: List[Tuple[int, int]] = []  # (reduced row, input combo mask)
        self._n_inputs = 0
        self._null_combos: List[int] = []  # combos of inputs that sum to zero
        for r in rows:
            self.add(r)

    def add(self, row: int) -> bool:
        """Insert a row; returns True if it was independent of the basis."""
        combo = 1 << self._n_inputs
        self._n_inputs += 1
        row, combo = self._reduce(row, combo)
        if row == 0:
            self._null_combos.append(combo)
            return False
        self._basis.append((row, combo))
        self._basis.sort(key=lambda rc: rc[0] & -rc[0])
        return True

    def _reduce(self, row: int, combo: int) -> Tuple[int, int]:
        for b_row, b_combo in self._basis:
            if row & (b_row & -b_row):
                row ^= b_row
                combo ^= b_combo
        return row, combo

    @property
    def rank(self) -> int:
        return len(self._basis)

    @property
    def null_combos(self) -> List[int]:
        return list(self._null_combos)

    def contains(self, target: int) -> bool:
        row, _ = self._reduce(target, 0)
        return row == 0

    def decompose(self, target: int) -> Optional[int]:
        """Bitmask over input rows summing to target, or None."""
        row, combo = self._reduce(target, 0)
        return combo if row == 0 else None


def in_rowspan(rows: Sequence[int], target: int) -> bool:
    return Solver(rows).contains(target)


def kernel(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of {v : parity(r & v) = 0 for every row r}, as int bitsets.

    Equivalent to the nullspace of the matrix whose rows are `rows`.
    """
    # Reduce rows to RREF, remembering pivot columns.
    reduced: List[int] = []
    pivots: List[int] = []
    for row in rows:
        for p_row, p_col in zip(reduced, pivots):
            if (row >> p_col) & 1:
                row ^= p_row
        if row == 0:
            continue
        col = (row & -row).bit_length() - 1
        # Back-substitute into existing rows.
        reduced = [r ^ row if (r >> col) & 1 else r for r in reduced]
        reduced.append(row)
        pivots.append(col)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for p_row, p_col in zip(reduced, pivots):
            if (p_row >> free) & 1:
                vec |= 1 << p_col
        basis.append(vec)
    return basis


def solve(rows: Sequence[int], rhs: Sequence[int], n_cols: int) -> Optional[int]:
    """One solution v of parity(rows[i] & v) = rhs[i] for all i, or None.

    Free variables are set to zero, so the solution is deterministic.
    """
    # Eliminate on the augmented system (row, value).
    system: List[Tuple[int, int]] = []
    for row, val in zip(rows, rhs):
        for s_row, s_val in system:
            if row & (s_row & -s_row):
                row ^= s_row
                val ^= s_val
        if row == 0:
            if val:
                return None
            continue
        system.append((row, val))
        system.sort(key=lambda rv: rv[0] & -rv[0])
    solution = 0
    # Solve back-to-front on pivot bits.
    for row, val in sorted(system, key=lambda rv: -(rv[0] & -rv[0]).bit_length()):
        pivot = row & -row
        if parity(row & solution) != val:
            solution ^= pivot
    return solution


def bits_of(x: int) -> List[int]:
    """Indices of set bits, ascending."""
    out = []
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return out
