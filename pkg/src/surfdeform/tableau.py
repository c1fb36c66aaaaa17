"""Sign-tracking stabilizer tableau with destabilizer rows.

Rows are stored as (xbits, zbits, phase) int triples in the same canonical
form as PauliOperator.  The stabilizer rows always form a rank-n group that
fixes the simulated state; destabilizer row j anticommutes with stabilizer
row j and commutes with every other row.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Tuple

from .gf2 import parity
from .pauli import PauliOperator

# Set by the test suite: re-validate tableau invariants after every measurement.
PARANOID = False

Row = Tuple[int, int, int]

OutcomeSource = Callable[[], int]  # returns 0 or 1


class TableauError(ValueError):
    pass


def _row_mul(a: Row, b: Row) -> Row:
    phase = (a[2] + b[2] + 2 * parity(a[1] & b[0])) % 4
    return (a[0] ^ b[0], a[1] ^ b[1], phase)


def _anticommutes(a: Row, b: Row) -> int:
    return parity(a[0] & b[1]) ^ parity(a[1] & b[0])


def _row_sign(row: Row) -> int:
    """+1 or -1 for a Hermitian row."""
    s = (row[2] - (row[0] & row[1]).bit_count()) % 4
    if s == 0:
        return 1
    if s == 2:
        return -1
    raise TableauError("non-Hermitian tableau row")


class TableauState:
    """Stabilizer state of the full hardware register."""

    def __init__(self, n: int, stab: List[Row], destab: List[Row]):
        self.n = n
        self.stab = stab
        self.destab = destab

    @classmethod
    def zero_state(cls, n: int) -> "TableauState":
        stab = [(0, 1 << j, 0) for j in range(n)]
        destab = [(1 << j, 0, 0) for j in range(n)]
        return cls(n, stab, destab)

    def copy(self) -> "TableauState":
        return TableauState(self.n, list(self.stab), list(self.destab))

    # -- queries -------------------------------------------------------

    def stabilizer_operators(self) -> List[PauliOperator]:
        return [PauliOperator(self.n, x, z, p) for x, z, p in self.stab]

    def expectation_sign(self, p: PauliOperator) -> Optional[int]:
        """+1/-1 when p (or -p) is in the stabilizer group, else None."""
        row = (p.xbits, p.zbits, p.phase % 4)
        if not PauliOperator(p.n, p.xbits, p.zbits, p.phase).is_hermitian():
            raise TableauError("expectation of a non-Hermitian operator")
        for j in range(self.n):
            if _anticommutes(self.stab[j], row):
                return None
        acc = (0, 0, 0)
        for j in range(self.n):
            if _anticommutes(self.destab[j], row):
                acc = _row_mul(acc, self.stab[j])
        if acc[0] != row[0] or acc[1] != row[1]:
            raise TableauError("operator commutes with a rank-deficient tableau")
        diff = (row[2] - acc[2]) % 4
        if diff == 0:
            return 1
        if diff == 2:
            return -1
        raise TableauError("phase mismatch in deterministic expectation")

    # -- state updates ---------------------------------------------------

    def apply_pauli(self, p: PauliOperator) -> None:
        """Conjugate the state: stabilizer signs flip where rows anticommute."""
        if p.n != self.n:
            raise TableauError("length mismatch")
        row = (p.xbits, p.zbits, p.phase)
        for j in range(self.n):
            if _anticommutes(self.stab[j], row):
                x, z, ph = self.stab[j]
                self.stab[j] = (x, z, (ph + 2) % 4)
            if _anticommutes(self.destab[j], row):
                x, z, ph = self.destab[j]
                self.destab[j] = (x, z, (ph + 2) % 4)

    def measure(self, p: PauliOperator, outcome_source: OutcomeSource,
                forced: Optional[int] = None) -> Tuple[int, bool]:
        """Projectively measure a Hermitian Pauli.

        Returns (outcome, deterministic) with outcome in {+1, -1}.  `forced`
        pins the outcome of a random measurement (used for replay); forcing a
        deterministic measurement to the opposite value raises.
        """
        if p.n != self.n:
            raise TableauError("length mismatch")
        if not p.is_hermitian():
            raise TableauError("measurement of a non-Hermitian operator")
        row = (p.xbits, p.zbits, p.phase % 4)
        anti = [j for j in range(self.n) if _anticommutes(self.stab[j], row)]
        if not anti:
            outcome = self.expectation_sign(p)
            if forced is not None and forced != outcome:
                raise TableauError("cannot force a deterministic outcome")
            if PARANOID:
                self.check()
            return outcome, True
        pivot = anti[0]
        pivot_row = self.stab[pivot]
        for j in anti[1:]:
            self.stab[j] = _row_mul(self.stab[j], pivot_row)
        for j in range(self.n):
            if j != pivot and _anticommutes(self.destab[j], row):
                self.destab[j] = _row_mul(self.destab[j], pivot_row)
        if forced is None:
            outcome = 1 if outcome_source() == 0 else -1
        else:
            outcome = forced
        self.destab[pivot] = pivot_row
        phase = (row[2] + (0 if outcome == 1 else 2)) % 4
        self.stab[pivot] = (row[0], row[1], phase)
        if PARANOID:
            self.check()
        return outcome, False

    def force_measure(self, p: PauliOperator, value: int,
                      outcome_source: OutcomeSource) -> Tuple[int, bool]:
        """Measure p; if the outcome is random and wrong, flip it with a Pauli."""
        outcome, deterministic = self.measure(p, outcome_source)
        if outcome != value:
            if deterministic:
                raise TableauError("state already fixes the opposite eigenvalue")
            # The measurement installed +-p as a stabilizer row; its paired
            # destabilizer anticommutes with that row only, so applying it
            # flips exactly this sign.
            pivot = next(j for j in range(self.n)
                         if self.stab[j][0] == p.xbits and self.stab[j][1] == p.zbits)
            x, z, ph = self.destab[pivot]
            self.apply_pauli(PauliOperator(self.n, x, z, ph % 4))
            outcome = value
        return outcome, deterministic

    def extend(self, extra: int) -> "TableauState":
        """Append `extra` fresh qubits fixed in |0> by single-qubit Z."""
        if extra < 0:
            raise TableauError("extra must be >= 0")
        n2 = self.n + extra
        stab = list(self.stab) + [(0, 1 << (self.n + j), 0) for j in range(extra)]
        destab = list(self.destab) + [(1 << (self.n + j), 0, 0) for j in range(extra)]
        return TableauState(n2, stab, destab)

    # -- validation -------------------------------------------------------

    def check(self) -> None:
        n = self.n
        for j in range(n):
            _row_sign(self.stab[j])
            for i in range(j):
                if _anticommutes(self.stab[i], self.stab[j]):
                    raise TableauError(f"stabilizer rows {i},{j} anticommute")
                if _anticommutes(self.destab[i], self.destab[j]):
                    raise TableauError(f"destabilizer rows {i},{j} anticommute")
            for i in range(n):
                want = 1 if i == j else 0
                if _anticommutes(self.destab[i], self.stab[j]) != want:
                    raise TableauError(f"destabilizer {i} vs stabilizer {j} broken")
