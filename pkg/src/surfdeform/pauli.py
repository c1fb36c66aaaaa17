"""n-qubit Pauli operators in binary symplectic form with exact phase.

The canonical form is ``i**phase * X^xbits * Z^zbits`` with all X factors to
the left of all Z factors, so on one qubit ``X*Z = -iY`` and ``Z*X = +iY``.
Bit j of ``xbits``/``zbits`` refers to qubit j; a qubit with both bits set
carries a Y (up to the tracked phase).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .gf2 import parity

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    pass


@dataclass(frozen=True)
class PauliOperator:
    n: int
    xbits: int
    zbits: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise PauliError("negative qubit count")
        mask = (1 << self.n) - 1
        if self.xbits & ~mask or self.zbits & ~mask:
            raise PauliError("bit vector exceeds qubit count")
        if not 0 <= self.phase <= 3:
            raise PauliError("phase exponent must be in 0..3")

    # -- construction ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_string(cls, text: str) -> "PauliOperator":
        """Parse a literal like '+XIYZX' or '-iZZ'."""
        body_start = 0
        while body_start < len(text) and text[body_start] not in "IXYZ":
            body_start += 1
        prefix, body = text[:body_start], text[body_start:]
        if prefix not in _PREFIX_PHASE:
            raise PauliError(f"bad phase prefix {prefix!r}")
        if not body or any(ch not in _LETTER_BITS for ch in body):
            raise PauliError(f"bad Pauli body {body!r}")
        x = z = 0
        y_count = 0
        for j, ch in enumerate(body):
            xb, zb = _LETTER_BITS[ch]
            x |= xb << j
            z |= zb << j
            y_count += xb & zb
        phase = (_PREFIX_PHASE[prefix] + y_count) % 4
        return cls(len(body), x, z, phase)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        xb, zb = _LETTER_BITS[letter]
        return cls(n, xb << qubit, zb << qubit, xb & zb)

    @classmethod
    def from_support(cls, n: int, sites: Iterable[int], letter: str) -> "PauliOperator":
        """Same letter on every listed qubit, e.g. a string operator."""
        xb, zb = _LETTER_BITS[letter]
        x = z = 0
        count = 0
        for q in sites:
            x |= xb << q
            z |= zb << q
            count += 1
        return cls(n, x, z, (xb & zb) * count % 4)

    # -- algebra -----------------------------------------------------

    def mul(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise PauliError("length mismatch")
        phase = (self.phase + other.phase + 2 * parity(self.zbits & other.xbits)) % 4
        return PauliOperator(self.n, self.xbits ^ other.xbits, self.zbits ^ other.zbits, phase)

    __mul__ = mul

    def commutes(self, other: "PauliOperator") -> bool:
        if self.n != other.n:
            raise PauliError("length mismatch")
        return (parity(self.xbits & other.zbits) ^ parity(self.zbits & other.xbits)) == 0

    def weight(self) -> int:
        return (self.xbits | self.zbits).bit_count()

    def embed(self, n_total: int, sites: Sequence[int]) -> "PauliOperator":
        """The same operator on the named qubits of a larger register."""
        if len(sites) != self.n:
            raise PauliError("site list must match qubit count")
        if len(set(sites)) != len(sites):
            raise PauliError("site indices collide")
        x = z = 0
        for j, q in enumerate(sites):
            if not 0 <= q < n_total:
                raise PauliError("site index out of range")
            x |= ((self.xbits >> j) & 1) << q
            z |= ((self.zbits >> j) & 1) << q
        return PauliOperator(n_total, x, z, self.phase)

    def negate(self) -> "PauliOperator":
        return PauliOperator(self.n, self.xbits, self.zbits, (self.phase + 2) % 4)

    # -- queries -----------------------------------------------------

    @property
    def sign(self) -> int:
        """Printed sign exponent of i, in 0..3 (0 means '+')."""
        return (self.phase - (self.xbits & self.zbits).bit_count()) % 4

    def is_hermitian(self) -> bool:
        return self.sign % 2 == 0

    def is_identity_pattern(self) -> bool:
        return self.xbits == 0 and self.zbits == 0

    def support(self) -> Tuple[int, ...]:
        bits = self.xbits | self.zbits
        out = []
        while bits:
            b = bits & -bits
            out.append(b.bit_length() - 1)
            bits ^= b
        return tuple(out)

    def letter(self, qubit: int) -> str:
        return _BITS_LETTER[((self.xbits >> qubit) & 1, (self.zbits >> qubit) & 1)]

    def to_string(self) -> str:
        body = "".join(self.letter(j) for j in range(self.n))
        prefix = _PHASE_PREFIX[self.sign]
        return prefix + body

    __str__ = to_string

    def __repr__(self):
        return f"PauliOperator({self.to_string()!r})"


def symplectic_parity(a: PauliOperator, b: PauliOperator) -> int:
    """1 when a and b anticommute, else 0."""
    return parity(a.xbits & b.zbits) ^ parity(a.zbits & b.xbits)


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    acc = PauliOperator.identity(n)
    for op in ops:
        acc = acc.mul(op)
    return acc
