"""Statevector execution of circuits under over-rotation noise.

Every noisy gate is still unitary, so a run is a single statevector pass;
distributions over bitstrings come from the final amplitudes.  Tailored
execution averages relabeled distributions over fresh randomizations.
"""

from __future__ import annotations

import numpy as np

from .channels import NoiseSpec
from .gates import ALL_DIHEDRAL, Circuit, HGATE, TGATE, WIRE, HardRound
from .randomize import RandomizedCircuit, _xor_permutation, randomize_circuit

_MAX_QUBITS = 10
_NORM_TOL = 1e-10

Distribution = np.ndarray


def _gate_table(noise: NoiseSpec) -> dict:
    """Noisy matrices for every gate identity, plus the CZ |11> phase."""
    table = {g: noise.noisy_matrix(g) for g in ALL_DIHEDRAL}
    table[HGATE] = noise.noisy_matrix("H")
    table[TGATE] = noise.noisy_matrix("T")
    table["CZ_PHASE"] = -np.exp(1j * noise.delta("CZ"))
    return table


def _apply_single(state: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    s = state.reshape(2**q, 2, -1)
    return np.einsum("ab,ibj->iaj", u, s).reshape(-1)


def _apply_hard(state: np.ndarray, hard: HardRound, table: dict, n: int) -> np.ndarray:
    for q, s in enumerate(hard.singles):
        if s != WIRE:
            state = _apply_single(state, table[s], q, n)
    if hard.cz:
        phase = table["CZ_PHASE"]
        shaped = state.reshape([2] * n)
        for i, j in hard.cz:
            idx: list = [slice(None)] * n
            idx[i] = 1
            idx[j] = 1
            shaped[tuple(idx)] *= phase
        state = shaped.reshape(-1)
    return state


def _check_norm(state: np.ndarray) -> None:
    if abs(np.vdot(state, state).real - 1.0) > _NORM_TOL:
        raise RuntimeError("statevector norm drifted beyond tolerance")


def _run(circuit: Circuit, table: dict) -> Distribution:
    n = circuit.n
    if n > _MAX_QUBITS:
        raise ValueError(f"simulator is limited to {_MAX_QUBITS} qubits")
    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    for cycle in circuit.cycles:
        for q, g in enumerate(cycle.easy):
            state = _apply_single(state, table[g], q, n)
        _check_norm(state)
        state = _apply_hard(state, cycle.hard, table, n)
        _check_norm(state)
    return np.abs(state) ** 2


def ideal_distribution(circuit: Circuit) -> Distribution:
    """Noiseless outcome distribution from |0...0>."""
    return _run(circuit, _gate_table(NoiseSpec.noiseless()))


def run_bare(circuit: Circuit, noise: NoiseSpec) -> Distribution:
    """Outcome distribution of the circuit as written, under the noise model."""
    return _run(circuit, _gate_table(noise))


def relabel_distribution(dist: Distribution, frame_x: tuple[int, ...]) -> Distribution:
    """Record outcome z as z xor x: permute the distribution by the frame."""
    n = len(frame_x)
    if dist.shape != (2**n,):
        raise ValueError("distribution length does not match the frame width")
    return dist[_xor_permutation(n, frame_x)]


def run_randomized(rc: RandomizedCircuit, noise: NoiseSpec) -> Distribution:
    """One compiled randomization, noisy run plus frame relabeling."""
    return relabel_distribution(run_bare(rc.compiled, noise), rc.frame_x)


def run_tailored(
    circuit: Circuit, noise: NoiseSpec, randomizations: int, rng: np.random.Generator
) -> Distribution:
    """Mean relabeled distribution over independent randomizations."""
    if randomizations < 1:
        raise ValueError("need at least one randomization")
    table = _gate_table(noise)
    acc = np.zeros(2**circuit.n)
    for _ in range(randomizations):
        rc = randomize_circuit(circuit, rng)
        acc += relabel_distribution(_run(rc.compiled, table), rc.frame_x)
    return acc / randomizations
