"""Exact gate algebra for easy/hard cycle circuits.

Easy gates form the order-8 dihedral group generated by the phase gate
R = diag(1, i) and the Pauli X, with global phases discarded throughout.
Hard rounds assign Wire/H/T per qubit plus a set of disjoint CZ pairs,
and the final hard round of every circuit is all-Wire.

Matrix realizations use the computational basis with qubit 0 as the most
significant bit of a state index, i.e. tensor factors are ordered
``U_0 (x) U_1 (x) ... (x) U_{n-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

WIRE = "W"
HGATE = "H"
TGATE = "T"
SINGLE_HARD_GATES = (WIRE, HGATE, TGATE)

R_MAT = np.diag([1.0 + 0.0j, 1.0j])
X_MAT = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Z_MAT = np.diag([1.0 + 0.0j, -1.0])
Y_MAT = np.array([[0.0, -1.0j], [1.0j, 0.0]])
H_MAT = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
T_MAT = np.diag([1.0 + 0.0j, np.exp(0.25j * np.pi)])
CZ_MAT = np.diag([1.0 + 0.0j, 1.0, 1.0, -1.0])


@dataclass(frozen=True)
class PauliElem:
    """Single-qubit Pauli X^x Z^z with the global phase discarded."""

    x: int
    z: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", int(self.x) % 2)
        object.__setattr__(self, "z", int(self.z) % 2)


PAULI_I = PauliElem(0, 0)
PAULI_X = PauliElem(1, 0)
PAULI_Y = PauliElem(1, 1)
PAULI_Z = PauliElem(0, 1)
ALL_PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True)
class DihedralElem:
    """Easy-group element R^a X^b (a mod 4, b mod 2), global phase discarded."""

    a: int
    b: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", int(self.a) % 4)
        object.__setattr__(self, "b", int(self.b) % 2)


DIHEDRAL_IDENTITY = DihedralElem(0, 0)
ALL_DIHEDRAL = tuple(DihedralElem(a, b) for a in range(4) for b in range(2))


def dihedral_mul(g1: DihedralElem, g2: DihedralElem) -> DihedralElem:
    """Group product (R^a X^b)(R^c X^d) = R^(a + (-1)^b c) X^(b xor d)."""
    sign = -1 if g1.b else 1
    return DihedralElem(g1.a + sign * g2.a, g1.b ^ g2.b)


def dihedral_inverse(g: DihedralElem) -> DihedralElem:
    # X^b R^-a folded back into canonical R^a' X^b form.
    return DihedralElem(g.a if g.b else -g.a, g.b)


def pauli_embed(p: PauliElem) -> DihedralElem:
    """Embed X^x Z^z as R^(2z) X^x, using Z = R^2."""
    return DihedralElem(2 * p.z, p.x)


def pauli_matrix(p: PauliElem) -> np.ndarray:
    m = np.eye(2, dtype=complex)
    if p.x:
        m = m @ X_MAT
    if p.z:
        m = m @ Z_MAT
    return m


def easy_matrix(g: DihedralElem) -> np.ndarray:
    """Canonical 2x2 unitary of a dihedral element."""
    m = np.linalg.matrix_power(R_MAT, g.a)
    if g.b:
        m = m @ X_MAT
    return m


@dataclass(frozen=True)
class HardRound:
    """One hard round: per-qubit Wire/H/T assignments and disjoint CZ pairs.

    Qubits appearing in a CZ pair must carry a Wire single assignment; the
    CZ is their one hard gate for the round.
    """

    singles: tuple[str, ...]
    cz: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        singles = tuple(self.singles)
        for s in singles:
            if s not in SINGLE_HARD_GATES:
                raise ValueError(f"unknown single-qubit hard gate {s!r}")
        n = len(singles)
        pairs = tuple(sorted(tuple(sorted((int(i), int(j)))) for i, j in self.cz))
        seen: set[int] = set()
        for i, j in pairs:
            if i == j:
                raise ValueError("CZ pair must couple two distinct qubits")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("CZ pair out of range")
            if i in seen or j in seen:
                raise ValueError("CZ pairs must be disjoint")
            seen.update((i, j))
            if singles[i] != WIRE or singles[j] != WIRE:
                raise ValueError("a qubit in a CZ pair cannot also carry H or T")
        object.__setattr__(self, "singles", singles)
        object.__setattr__(self, "cz", pairs)

    @property
    def n(self) -> int:
        return len(self.singles)

    def is_identity(self) -> bool:
        return not self.cz and all(s == WIRE for s in self.singles)


def all_wire_round(n: int) -> HardRound:
    return HardRound((WIRE,) * n)


EasyRound = tuple[DihedralElem, ...]
PauliRound = tuple[PauliElem, ...]


@dataclass(frozen=True)
class Cycle:
    easy: EasyRound
    hard: HardRound

    def __post_init__(self) -> None:
        easy = tuple(self.easy)
        if len(easy) != self.hard.n:
            raise ValueError("easy round width differs from hard round width")
        if not all(isinstance(g, DihedralElem) for g in easy):
            raise ValueError("easy round must consist of DihedralElem gates")
        object.__setattr__(self, "easy", easy)


@dataclass(frozen=True)
class Circuit:
    """K cycles of (easy round, hard round) over n qubits, with G_K = identity."""

    n: int
    cycles: tuple[Cycle, ...]

    def __post_init__(self) -> None:
        cycles = tuple(self.cycles)
        if self.n < 1:
            raise ValueError("circuit needs at least one qubit")
        if not cycles:
            raise ValueError("circuit needs at least one cycle")
        for cyc in cycles:
            if cyc.hard.n != self.n:
                raise ValueError("cycle width differs from circuit width")
        if not cycles[-1].hard.is_identity():
            raise ValueError("final hard round must be all-Wire")
        object.__setattr__(self, "cycles", cycles)

    @property
    def k(self) -> int:
        return len(self.cycles)


def conjugate_pauli_round(hard: HardRound, paulis: Sequence[PauliElem]) -> EasyRound:
    """Conjugate an n-qubit Pauli through one hard round, G P G^dag.

    Wire and CZ map Paulis to Paulis; H swaps the X and Z parts; the T gate
    sends X^x Z^z to R^x X^x Z^z, which lands in the dihedral group proper.
    CZ acts on a pair as (x_i, z_i),(x_j, z_j) -> (x_i, z_i^x_j),(x_j, z_j^x_i).
    """
    n = hard.n
    if len(paulis) != n:
        raise ValueError("Pauli round width differs from hard round width")
    cur = list(paulis)
    out: list[DihedralElem | None] = [None] * n
    for i, j in hard.cz:
        pi, pj = cur[i], cur[j]
        cur[i] = PauliElem(pi.x, pi.z ^ pj.x)
        cur[j] = PauliElem(pj.x, pj.z ^ pi.x)
        out[i] = pauli_embed(cur[i])
        out[j] = pauli_embed(cur[j])
    for q, s in enumerate(hard.singles):
        if out[q] is not None:
            continue
        p = cur[q]
        if s == WIRE:
            out[q] = pauli_embed(p)
        elif s == HGATE:
            out[q] = pauli_embed(PauliElem(p.z, p.x))
        else:  # TGATE
            out[q] = DihedralElem(p.x + 2 * p.z, p.x)
    return tuple(out)  # type: ignore[arg-type]


def _kron_chain(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def easy_round_matrix(easy: EasyRound) -> np.ndarray:
    return _kron_chain([easy_matrix(g) for g in easy])


def _cz_diag(n: int, i: int, j: int) -> np.ndarray:
    idx = np.arange(2**n)
    bit_i = (idx >> (n - 1 - i)) & 1
    bit_j = (idx >> (n - 1 - j)) & 1
    d = np.ones(2**n)
    d[(bit_i & bit_j) == 1] = -1.0
    return d


def hard_round_matrix(hard: HardRound) -> np.ndarray:
    table = {WIRE: np.eye(2, dtype=complex), HGATE: H_MAT, TGATE: T_MAT}
    m = _kron_chain([table[s] for s in hard.singles])
    for i, j in hard.cz:
        m = _cz_diag(hard.n, i, j)[:, None] * m
    return m


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of the whole circuit (global phase meaningful here)."""
    if circuit.n > 10:
        raise ValueError("dense circuit unitaries are limited to 10 qubits")
    u = np.eye(2**circuit.n, dtype=complex)
    for cyc in circuit.cycles:
        u = hard_round_matrix(cyc.hard) @ (easy_round_matrix(cyc.easy) @ u)
    return u


def sample_hard_round(n: int, rng: np.random.Generator) -> HardRound:
    """Draw one bulk hard round.

    Qubits are visited in order; an unpaired qubit is paired with
    probability 1/2 to a uniformly random later unpaired qubit, and whatever
    stays unpaired draws Wire/H/T uniformly.
    """
    paired = [False] * n
    cz: list[tuple[int, int]] = []
    for i in range(n):
        if paired[i]:
            continue
        later = [j for j in range(i + 1, n) if not paired[j]]
        if later and rng.integers(2) == 1:
            j = later[int(rng.integers(len(later)))]
            paired[i] = paired[j] = True
            cz.append((i, j))
    singles = tuple(
        WIRE if paired[q] else SINGLE_HARD_GATES[int(rng.integers(3))] for q in range(n)
    )
    return HardRound(singles, tuple(cz))


def sample_easy_round(n: int, rng: np.random.Generator) -> EasyRound:
    return tuple(
        DihedralElem(int(rng.integers(4)), int(rng.integers(2))) for _ in range(n)
    )


def sample_random_circuit(n: int, k: int, rng: np.random.Generator) -> Circuit:
    """Uniform easy rounds; matching-based hard rounds; all-Wire final round."""
    if k < 1:
        raise ValueError("need at least one cycle")
    cycles = []
    for idx in range(k):
        easy = sample_easy_round(n, rng)
        hard = all_wire_round(n) if idx == k - 1 else sample_hard_round(n, rng)
        cycles.append(Cycle(easy, hard))
    return Circuit(n, tuple(cycles))


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "n": circuit.n,
        "cycles": [
            {
                "easy": [[g.a, g.b] for g in cyc.easy],
                "hard": {
                    "singles": list(cyc.hard.singles),
                    "cz": [list(p) for p in cyc.hard.cz],
                },
            }
            for cyc in circuit.cycles
        ],
    }


def circuit_from_dict(data: dict) -> Circuit:
    cycles = tuple(
        Cycle(
            tuple(DihedralElem(a, b) for a, b in c["easy"]),
            HardRound(tuple(c["hard"]["singles"]), tuple(map(tuple, c["hard"]["cz"]))),
        )
        for c in data["cycles"]
    )
    return Circuit(int(data["n"]), cycles)


def circuit_to_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit))


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))
