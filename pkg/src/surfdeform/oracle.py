"""Independent ground-truth engines used only by tests.

Contains a dense statevector simulator, exhaustive brute-force searches over
small Pauli groups, and a second stabilizer engine built on per-qubit letter
tables rather than the packed symplectic form, so cross-checks do not share
arithmetic with the production tableau.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import Solver, bits_of
from .pauli import PauliOperator
from .stabilizer import LogicalBasis, NoLogicals, StabilizerGroup, TooLarge, validate_group

# 2**16 amplitudes (1 MiB) keeps shadow runs of small deformation demos cheap.
MAX_DENSE_QUBITS = 16
_SEED_STATE = 0x5EED


class OracleError(ValueError):
    pass


class NormZero(OracleError):
    pass


class InconsistentSigns(OracleError):
    pass


def _phase_mask(n: int, bits: int) -> np.ndarray:
    """(-1)**parity(index & bits) over all 2**n basis indices."""
    signs = np.zeros(1 << n, dtype=np.int8)
    for b in bits_of(bits):
        idx = np.arange(1 << n) >> b
        signs ^= (idx & 1).astype(np.int8)
    return 1.0 - 2.0 * signs


class DenseState:
    """Unit vector over 2**n amplitudes, qubit j on index bit j."""

    def __init__(self, n: int, amplitudes: np.ndarray):
        if n > MAX_DENSE_QUBITS:
            raise OracleError(f"dense oracle capped at {MAX_DENSE_QUBITS} qubits")
        self.n = n
        self.vec = np.asarray(amplitudes, dtype=np.complex128)
        if self.vec.shape != (1 << n,):
            raise OracleError("amplitude vector has wrong length")

    @classmethod
    def zero_state(cls, n: int) -> "DenseState":
        vec = np.zeros(1 << n, dtype=np.complex128)
        vec[0] = 1.0
        return cls(n, vec)

    @classmethod
    def random_state(cls, n: int, seed: int = _SEED_STATE) -> "DenseState":
        rng = np.random.default_rng(seed)
        vec = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        return cls(n, vec / np.linalg.norm(vec))

    def copy(self) -> "DenseState":
        return DenseState(self.n, self.vec.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def pauli_applied(self, p: PauliOperator) -> np.ndarray:
        if p.n != self.n:
            raise OracleError("length mismatch")
        signs = _phase_mask(self.n, p.zbits)
        shifted = np.empty_like(self.vec)
        idx = np.arange(1 << self.n)
        shifted[idx ^ p.xbits] = signs * self.vec
        return (1j ** p.phase) * shifted

    def apply_pauli(self, p: PauliOperator) -> None:
        self.vec = self.pauli_applied(p)

    def expectation(self, p: PauliOperator) -> complex:
        return complex(np.vdot(self.vec, self.pauli_applied(p)))

    def project_measure(self, p: PauliOperator, rng,
                        forced: Optional[int] = None) -> int:
        """Born-rule measurement of a Hermitian Pauli; state is updated."""
        if not p.is_hermitian():
            raise OracleError("non-Hermitian measurement")
        applied = self.pauli_applied(p)
        p_plus = 0.5 * (1.0 + float(np.real(np.vdot(self.vec, applied))))
        p_plus = min(1.0, max(0.0, p_plus))
        if forced is not None:
            outcome = forced
        else:
            outcome = 1 if rng.random() < p_plus else -1
        prob = p_plus if outcome == 1 else 1.0 - p_plus
        if prob < 1e-12:
            raise NormZero("projection onto an empty branch")
        post = 0.5 * (self.vec + outcome * applied)
        self.vec = post / np.sqrt(prob)
        return outcome


def stabilizer_to_dense(n: int, fixed: Sequence[Tuple[PauliOperator, int]]) -> DenseState:
    """The state fixed by each (operator, eigenvalue) pair.

    Built by projecting a fixed pseudorandom state, so the result is
    deterministic; raises InconsistentSigns when the constraints conflict.
    """
    state = DenseState.random_state(n)
    for op, value in fixed:
        applied = state.pauli_applied(op)
        post = 0.5 * (state.vec + value * applied)
        norm = np.linalg.norm(post)
        if norm < 1e-8:
            raise InconsistentSigns(f"no state satisfies {op} = {value:+d}")
        state.vec = post / norm
    # Second pass verifies joint consistency.
    for op, value in fixed:
        if abs(state.expectation(op) - value) > 1e-8:
            raise InconsistentSigns(f"constraint {op} = {value:+d} failed")
    return state


# -- exhaustive searches over small groups ---------------------------------

def iter_patterns(n: int, max_weight: Optional[int] = None):
    """Non-identity Pauli patterns by ascending weight, deterministic order."""
    top = n if max_weight is None else min(n, max_weight)
    letters = ("X", "Y", "Z")
    for w in range(1, top + 1):
        for sites in itertools.combinations(range(n), w):
            for choice in itertools.product(letters, repeat=w):
                x = z = 0
                for q, ch in zip(sites, choice):
                    if ch != "Z":
                        x |= 1 << q
                    if ch != "X":
                        z |= 1 << q
                yield PauliOperator(n, x, z, (x & z).bit_count() % 4)


def enumerate_group(group: StabilizerGroup) -> List[PauliOperator]:
    """All distinct group elements, signs included."""
    solver = Solver()
    independent = [g for g in group.generators
                   if solver.add(g.xbits | (g.zbits << group.n))]
    if len(independent) > 20:
        raise TooLarge("group enumeration beyond 2^20 refused")
    elements = [PauliOperator.identity(group.n)]
    for g in independent:
        elements += [e.mul(g) for e in elements]
    return elements


def brute_force_distance(group: StabilizerGroup) -> int:
    """Minimum weight over normalizer-minus-group by literal enumeration."""
    params = validate_group(group)
    if params.k == 0:
        raise NoLogicals("k = 0")
    if group.n > 12:
        raise TooLarge("brute-force distance capped at 12 qubits")
    member = Solver(group.combined_rows())
    for p in iter_patterns(group.n):
        if not all(p.commutes(g) for g in group.generators):
            continue
        if member.contains(p.xbits | (p.zbits << group.n)):
            continue
        return p.weight()
    raise NoLogicals("normalizer equals the group")


def brute_force_logical_pairs(group: StabilizerGroup) -> LogicalBasis:
    """Minimum-weight-first search for a full set of Eq-style logical pairs."""
    params = validate_group(group)
    n, k = params.n, params.k
    if n > 8:
        raise TooLarge("brute-force pair search capped at 8 qubits")
    span = Solver(group.combined_rows())
    xops: List[PauliOperator] = []
    zops: List[PauliOperator] = []
    for _ in range(k):
        u = None
        for p in iter_patterns(n):
            if not all(p.commutes(g) for g in group.generators):
                continue
            if span.contains(p.xbits | (p.zbits << n)):
                continue
            if not all(p.commutes(q) for q in xops + zops):
                continue
            u = p
            break
        if u is None:
            raise NoLogicals("pair search exhausted")
        w = None
        for p in iter_patterns(n):
            if not all(p.commutes(g) for g in group.generators):
                continue
            if p.commutes(u):
                continue
            if not all(p.commutes(q) for q in xops + zops):
                continue
            w = p
            break
        if w is None:
            raise NoLogicals("no anticommuting partner")
        span.add(u.xbits | (u.zbits << n))
        span.add(w.xbits | (w.zbits << n))
        xops.append(u)
        zops.append(w)
    return LogicalBasis(tuple(xops), tuple(zops))


# -- independent letter-table stabilizer engine ----------------------------

_MUL_LETTER = np.zeros((4, 4), dtype=np.uint8)
_MUL_PHASE = np.zeros((4, 4), dtype=np.int8)  # power of i from letter product
# Letters: 0=I, 1=X, 2=Y, 3=Z; X*Y = iZ, Y*Z = iX, Z*X = iY and reverses -i.
for _a in range(4):
    _MUL_LETTER[0, _a] = _MUL_LETTER[_a, 0] = _a
for _a in range(1, 4):
    _MUL_LETTER[_a, _a] = 0
for (_a, _b, _c, _s) in [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1),
                         (2, 1, 3, -1), (3, 2, 1, -1), (1, 3, 2, -1)]:
    _MUL_LETTER[_a, _b] = _c
    _MUL_PHASE[_a, _b] = _s


class MatrixTableau:
    """Sign-tracked stabilizer rows as per-qubit letter codes.

    A deliberately separate implementation used as a recomputation oracle:
    no destabilizers, deterministic outcomes recovered by Gaussian
    elimination over the row set.
    """

    def __init__(self, n: int, rows: np.ndarray, signs: np.ndarray):
        self.n = n
        self.rows = rows    # shape (n, n), uint8 letter codes
        self.signs = signs  # shape (n,), int8 in {+1, -1}

    @classmethod
    def zero_state(cls, n: int) -> "MatrixTableau":
        rows = np.zeros((n, n), dtype=np.uint8)
        rows[np.arange(n), np.arange(n)] = 3
        return cls(n, rows, np.ones(n, dtype=np.int8))

    @classmethod
    def _letters(cls, p: PauliOperator) -> np.ndarray:
        out = np.zeros(p.n, dtype=np.uint8)
        for j in range(p.n):
            out[j] = {"I": 0, "X": 1, "Y": 2, "Z": 3}[p.letter(j)]
        return out

    def copy(self) -> "MatrixTableau":
        return MatrixTableau(self.n, self.rows.copy(), self.signs.copy())

    @staticmethod
    def _anti(row: np.ndarray, other: np.ndarray) -> bool:
        both = (row != 0) & (other != 0) & (row != other)
        return bool(both.sum() & 1)

    def _mul_into(self, i: int, letters: np.ndarray, sign: int) -> None:
        phases = _MUL_PHASE[self.rows[i], letters]
        total = int(phases.sum()) % 4
        if total == 0:
            factor = 1
        elif total == 2:
            factor = -1
        else:
            raise OracleError("non-Hermitian row product")
        self.rows[i] = _MUL_LETTER[self.rows[i], letters]
        self.signs[i] = self.signs[i] * sign * factor

    def measure(self, p: PauliOperator, forced_sign: int) -> bool:
        """Project onto the forced outcome; returns True when deterministic."""
        letters = self._letters(p)
        if p.sign == 2:
            letters_sign = -forced_sign
        else:
            letters_sign = forced_sign
        anti = [j for j in range(self.n) if self._anti(self.rows[j], letters)]
        if anti:
            pivot = anti[0]
            pivot_row = self.rows[pivot].copy()
            pivot_sign = int(self.signs[pivot])
            for j in anti[1:]:
                self._mul_into(j, pivot_row, pivot_sign)
            self.rows[pivot] = letters
            self.signs[pivot] = letters_sign
            return False
        # Deterministic: find the row combination reproducing the pattern.
        xz = np.zeros((self.n, 2 * self.n), dtype=np.uint8)
        xz[:, : self.n] = (self.rows == 1) | (self.rows == 2)
        xz[:, self.n:] = (self.rows == 3) | (self.rows == 2)
        target = np.concatenate([(letters == 1) | (letters == 2),
                                 (letters == 3) | (letters == 2)]).astype(np.uint8)
        solver = Solver()
        packed = []
        for j in range(self.n):
            bits = 0
            for c in np.nonzero(xz[j])[0]:
                bits |= 1 << int(c)
            packed.append(bits)
            solver.add(bits)
        tbits = 0
        for c in np.nonzero(target)[0]:
            tbits |= 1 << int(c)
        combo = solver.decompose(tbits)
        if combo is None:
            raise OracleError("deterministic measurement with no row combination")
        acc = np.zeros(self.n, dtype=np.uint8)
        acc_sign = 1
        for j in bits_of(combo):
            phases = _MUL_PHASE[acc, self.rows[j]]
            total = int(phases.sum()) % 4
            if total == 0:
                factor = 1
            elif total == 2:
                factor = -1
            else:
                raise OracleError("non-Hermitian combination")
            acc = _MUL_LETTER[acc, self.rows[j]]
            acc_sign = acc_sign * factor * int(self.signs[j])
        if not np.array_equal(acc, letters):
            raise OracleError("row combination mismatch")
        if acc_sign != letters_sign:
            raise OracleError(
                f"deterministic outcome disagrees: state fixes {acc_sign:+d}")
        return True

    def apply_pauli(self, p: PauliOperator) -> None:
        letters = self._letters(p)
        for j in range(self.n):
            if self._anti(self.rows[j], letters):
                self.signs[j] = -self.signs[j]

    def stabilizes(self, p: PauliOperator, sign: int) -> bool:
        probe = self.copy()
        try:
            return probe.measure(p, sign)
        except OracleError:
            return False
