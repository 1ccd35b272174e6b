"""Randomized compiling: dress each easy round with a fresh Pauli twirl.

Cycle k of the compiled circuit carries the single easy gate
T_k * C_k * T^c_{k-1}, where the correction T^c_k = G_k T_k G_k^dag undoes
the twirl after it has passed through the hard round (Paulis are self-inverse
up to phase).  The final twirl is never corrected in hardware; its X part is
recorded as a measurement relabeling frame instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gates import (
    Circuit,
    Cycle,
    DIHEDRAL_IDENTITY,
    EasyRound,
    HardRound,
    PauliElem,
    PauliRound,
    circuit_from_dict,
    circuit_to_dict,
    circuit_unitary,
    conjugate_pauli_round,
    dihedral_mul,
    pauli_embed,
    pauli_matrix,
)


@dataclass(frozen=True)
class RandomizedCircuit:
    """A compiled circuit plus the frame needed to interpret its outcomes."""

    compiled: Circuit
    frame_x: tuple[int, ...]
    twirl_log: tuple[PauliRound, ...]

    def __post_init__(self) -> None:
        if len(self.frame_x) != self.compiled.n:
            raise ValueError("frame width differs from circuit width")
        if len(self.twirl_log) != self.compiled.k:
            raise ValueError("need one logged twirl per cycle")


def identity_round(n: int) -> EasyRound:
    return (DIHEDRAL_IDENTITY,) * n


def sample_pauli_round(n: int, rng: np.random.Generator) -> PauliRound:
    return tuple(
        PauliElem(int(rng.integers(2)), int(rng.integers(2))) for _ in range(n)
    )


def correction_round(hard: HardRound, twirl: Sequence[PauliElem]) -> EasyRound:
    """Correction G T G^dag for a Pauli twirl T; T^dag = T up to phase."""
    return conjugate_pauli_round(hard, twirl)


def dress_cycle(
    easy: EasyRound, twirl: Sequence[PauliElem], correction_prev: EasyRound
) -> EasyRound:
    """Fold twirl, bare easy gate, and previous correction into one easy gate."""
    if not len(easy) == len(twirl) == len(correction_prev):
        raise ValueError("round widths differ")
    return tuple(
        dihedral_mul(pauli_embed(t), dihedral_mul(c, prev))
        for t, c, prev in zip(twirl, easy, correction_prev)
    )


def compile_with_twirls(bare: Circuit, twirls: Sequence[PauliRound]) -> RandomizedCircuit:
    """Deterministically compile a circuit for a given twirl per cycle."""
    if len(twirls) != bare.k:
        raise ValueError("need exactly one twirl round per cycle")
    correction_prev = identity_round(bare.n)
    compiled = []
    for cycle, twirl in zip(bare.cycles, twirls):
        if len(twirl) != bare.n:
            raise ValueError("twirl width differs from circuit width")
        compiled.append(Cycle(dress_cycle(cycle.easy, twirl, correction_prev), cycle.hard))
        correction_prev = correction_round(cycle.hard, twirl)
    frame_x = tuple(p.x for p in twirls[-1])
    return RandomizedCircuit(Circuit(bare.n, tuple(compiled)), frame_x, tuple(twirls))


def randomize_circuit(bare: Circuit, rng: np.random.Generator) -> RandomizedCircuit:
    """Compile one independent randomization with i.i.d. uniform Pauli twirls."""
    twirls = tuple(sample_pauli_round(bare.n, rng) for _ in range(bare.k))
    return compile_with_twirls(bare, twirls)


def _xor_permutation(n: int, bits: Sequence[int]) -> np.ndarray:
    mask = 0
    for q, b in enumerate(bits):
        mask |= (int(b) & 1) << (n - 1 - q)
    return np.arange(2**n) ^ mask


def check_logical_equivalence(bare: Circuit, rc: RandomizedCircuit) -> float:
    """Max variational distance, over computational basis inputs, between the
    noiseless bare distribution and the relabeled noiseless compiled one."""
    if bare.n != rc.compiled.n:
        raise ValueError("circuit widths differ")
    u_bare = circuit_unitary(bare)
    u_comp = circuit_unitary(rc.compiled)
    perm = _xor_permutation(bare.n, rc.frame_x)
    p = np.abs(u_bare) ** 2
    q = np.abs(u_comp) ** 2
    q = q[perm, :]
    return float(np.max(0.5 * np.sum(np.abs(p - q), axis=0)))


def frame_residual(bare: Circuit, rc: RandomizedCircuit) -> float:
    """Unitary-level residual min_phi || U_bare - e^(i phi) T_K U_compiled ||_F,
    with T_K the full final twirl (X and Z parts) from the log."""
    u_bare = circuit_unitary(bare)
    u_comp = circuit_unitary(rc.compiled)
    frame = pauli_matrix(rc.twirl_log[-1][0])
    for p in rc.twirl_log[-1][1:]:
        frame = np.kron(frame, pauli_matrix(p))
    dim = u_bare.shape[0]
    overlap = abs(np.trace(u_bare.conj().T @ frame @ u_comp))
    return float(np.sqrt(max(0.0, 2.0 * dim - 2.0 * overlap)))


def randomized_to_dict(rc: RandomizedCircuit) -> dict:
    data = circuit_to_dict(rc.compiled)
    data["frame_x"] = list(rc.frame_x)
    data["twirl_log"] = [[[p.x, p.z] for p in round_] for round_ in rc.twirl_log]
    return data


def randomized_from_dict(data: dict) -> RandomizedCircuit:
    compiled = circuit_from_dict(data)
    frame_x = tuple(int(b) for b in data["frame_x"])
    twirls = tuple(
        tuple(PauliElem(x, z) for x, z in round_) for round_ in data["twirl_log"]
    )
    return RandomizedCircuit(compiled, frame_x, twirls)


def randomized_to_json(rc: RandomizedCircuit) -> str:
    return json.dumps(randomized_to_dict(rc))


def randomized_from_json(text: str) -> RandomizedCircuit:
    return randomized_from_dict(json.loads(text))
