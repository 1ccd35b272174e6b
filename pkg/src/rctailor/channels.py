"""Pauli transfer matrices, Pauli twirling, and the over-rotation noise model.

A channel E is stored as its real 4^n x 4^n transfer matrix m with
m[i, j] = Tr[P_i E(P_j)] / 2^n in the lexicographic I, X, Y, Z product
basis.  Channel composition is matrix multiplication, and a channel is a
Pauli channel exactly when m is diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Union

import numpy as np

from .gates import (
    ALL_DIHEDRAL,
    CZ_MAT,
    DihedralElem,
    H_MAT,
    T_MAT,
    X_MAT,
    Y_MAT,
    Z_MAT,
    easy_matrix,
)

GateKey = Union[DihedralElem, str]

_TP_TOL = 1e-12
_MAX_DENSE_QUBITS = 3

# Single-qubit Pauli index p -> (x, z) bits of X^x Z^z, ordered I, X, Y, Z.
_XBIT = np.array([0, 1, 1, 0])
_ZBIT = np.array([0, 0, 1, 1])


@lru_cache(maxsize=None)
def pauli_basis(n: int) -> tuple[np.ndarray, ...]:
    """Unnormalized n-qubit Pauli matrices in lexicographic order."""
    singles = (np.eye(2, dtype=complex), X_MAT, Y_MAT, Z_MAT)
    mats = [np.array([[1.0 + 0.0j]])]
    for _ in range(n):
        mats = [np.kron(m, s) for m in mats for s in singles]
    return tuple(m for m in mats)


@lru_cache(maxsize=None)
def _basis_stack(n: int) -> np.ndarray:
    return np.stack(pauli_basis(n))


@lru_cache(maxsize=None)
def _sign_table(n: int) -> np.ndarray:
    """S[p, q] = +1 if P_p and P_q commute, else -1 (symplectic parity)."""
    digits = np.arange(4**n)
    xs = np.zeros((n, 4**n), dtype=np.int64)
    zs = np.zeros((n, 4**n), dtype=np.int64)
    for k in range(n):
        d = (digits // 4 ** (n - 1 - k)) % 4
        xs[k] = _XBIT[d]
        zs[k] = _ZBIT[d]
    parity = (xs.T @ zs + zs.T @ xs) % 2
    return 1.0 - 2.0 * parity


def _infer_qubits(dim: int) -> int:
    n = int(round(np.log2(dim)))
    if 2**n != dim or n < 1:
        raise ValueError(f"dimension {dim} is not a positive power of two")
    if n > _MAX_DENSE_QUBITS:
        raise ValueError(f"dense transfer matrices are limited to {_MAX_DENSE_QUBITS} qubits")
    return n


@dataclass(eq=False)
class Ptm:
    """Real Pauli transfer matrix of an n-qubit channel."""

    n: int
    m: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        dim = 4**self.n
        if m.shape != (dim, dim):
            raise ValueError(f"transfer matrix must be {dim}x{dim} for n={self.n}")
        self.m = m

    def is_trace_preserving(self, tol: float = _TP_TOL) -> bool:
        row = np.zeros(4**self.n)
        row[0] = 1.0
        return bool(np.max(np.abs(self.m[0] - row)) <= tol)


def _require_tp(e: Ptm) -> None:
    if not e.is_trace_preserving():
        raise ValueError("channel is not trace preserving (identity row deviates)")


def ptm_identity(n: int) -> Ptm:
    return Ptm(n, np.eye(4**n))


def ptm_from_unitary(u: np.ndarray) -> Ptm:
    """Transfer matrix of rho -> U rho U^dag."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("unitary must be square")
    n = _infer_qubits(u.shape[0])
    basis = _basis_stack(n)
    rotated = u[None, :, :] @ basis @ u.conj().T[None, :, :]
    m = np.einsum("iab,jba->ij", basis, rotated) / 2**n
    if np.max(np.abs(m.imag)) > 1e-10:
        raise ValueError("transfer matrix of a unitary should be real")
    return Ptm(n, m.real)


def ptm_compose(a: Ptm, b: Ptm) -> Ptm:
    """Channel applying b first and a second (matrix product a.m @ b.m)."""
    if a.n != b.n:
        raise ValueError("cannot compose channels on different qubit counts")
    return Ptm(a.n, a.m @ b.m)


def ptm_tensor(a: Ptm, b: Ptm) -> Ptm:
    if a.n + b.n > _MAX_DENSE_QUBITS:
        raise ValueError("tensor product exceeds the dense size limit")
    return Ptm(a.n + b.n, np.kron(a.m, b.m))


def apply_ptm(e: Ptm, rho: np.ndarray) -> np.ndarray:
    """Apply the channel to a density matrix given in the computational basis."""
    d = 2**e.n
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise ValueError("density matrix has the wrong shape")
    basis = _basis_stack(e.n)
    coeffs = np.einsum("iab,ba->i", basis, rho) / d
    out = e.m @ coeffs.real + 1j * (e.m @ coeffs.imag)
    return np.einsum("i,iab->ab", out, basis)


@dataclass(eq=False)
class PauliChannel:
    """Stochastic Pauli channel rho -> sum_P c_P P rho P^dag."""

    n: int
    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.c, dtype=float)
        if c.shape != (4**self.n,):
            raise ValueError("probability vector has the wrong length")
        if c.min() < -_TP_TOL:
            raise ValueError("Pauli probabilities must be nonnegative")
        if abs(c.sum() - 1.0) > 1e-9:
            raise ValueError("Pauli probabilities must sum to one")
        self.c = c

    def as_ptm(self) -> Ptm:
        lam = _sign_table(self.n) @ self.c
        return Ptm(self.n, np.diag(lam))


def pauli_twirl(e: Ptm) -> PauliChannel:
    """Average T^dag E T over all 4^n Pauli rounds T.

    The average must come out diagonal in the Pauli basis (this is asserted,
    not assumed); the diagonal eigenvalues are then converted to Pauli
    probabilities through the commutation-sign (Walsh-type) transform.
    """
    _require_tp(e)
    signs = _sign_table(e.n)
    count = 4**e.n
    acc = np.zeros_like(e.m)
    for t in range(count):
        d = signs[t]
        acc += (d[:, None] * e.m) * d[None, :]
    acc /= count
    lam = np.diag(acc).copy()
    off = acc - np.diag(lam)
    if np.max(np.abs(off)) > _TP_TOL:
        raise ValueError("twirled channel failed to diagonalize")
    c = signs @ lam / count
    if c.min() < -_TP_TOL:
        raise ValueError("twirl produced a negative probability (input not CP?)")
    return PauliChannel(e.n, c)


def infidelity(e: Ptm) -> float:
    """r = 1 - F_avg = 1 - (Tr m + 2^n) / (4^n + 2^n)."""
    _require_tp(e)
    d = 2**e.n
    return 1.0 - (np.trace(e.m) + d) / (d**2 + d)


def _gate_matrix(gate: GateKey) -> np.ndarray:
    if isinstance(gate, DihedralElem):
        return easy_matrix(gate)
    if gate == "H":
        return H_MAT.copy()
    if gate == "T":
        return T_MAT.copy()
    if gate == "CZ":
        return CZ_MAT.copy()
    raise ValueError(f"unsupported gate {gate!r}")


def over_rotation(gate: GateKey, delta: float) -> np.ndarray:
    """Noisy unitary for a gate: one eigenvalue picks up the phase e^(i delta).

    The perturbed eigenvalue is the one with the largest principal argument;
    a fully degenerate spectrum (the identity) resolves toward |1...1>.  For
    diagonal gates this reduces to multiplying one diagonal entry, e.g. the
    noisy CZ is diag(1, 1, 1, -e^(i delta)).
    """
    u = _gate_matrix(gate)
    if delta == 0.0:
        return u
    phase = np.exp(1j * delta)
    off = u - np.diag(np.diag(u))
    if not np.any(off):
        ent = np.diag(u).astype(complex).copy()
        ang = np.angle(ent)
        k = len(ent) - 1 - int(np.argmax(ang[::-1]))
        ent[k] *= phase
        return np.diag(ent)
    w, v = np.linalg.eig(u)
    k = int(np.argmax(np.angle(w)))
    vec = v[:, k] / np.linalg.norm(v[:, k])
    return u + (phase - 1.0) * w[k] * np.outer(vec, vec.conj())


def error_channel(gate: GateKey, delta: float) -> Ptm:
    """Transfer matrix of the error unitary U_noisy U^dag for one gate."""
    u = _gate_matrix(gate)
    return ptm_from_unitary(over_rotation(gate, delta) @ u.conj().T)


# Over-rotation by delta has infidelity (2/3) sin^2(delta/2) on one qubit and
# (3/5) sin^2(delta/2) for CZ, so the reachable targets are r < 2/3 and r < 3/5.
_CAL_SINGLE_MAX = 2.0 / 3.0
_CAL_CZ_MAX = 3.0 / 5.0


def calibrate_delta(kind: str, r_target: float) -> float:
    """Rotation angle whose over-rotation noise has average infidelity r_target."""
    if kind == "single":
        limit, scale = _CAL_SINGLE_MAX, 1.5
    elif kind == "cz":
        limit, scale = _CAL_CZ_MAX, 5.0 / 3.0
    else:
        raise ValueError("kind must be 'single' or 'cz'")
    if not 0.0 <= r_target < limit:
        raise ValueError(f"target infidelity {r_target} outside [0, {limit})")
    return 2.0 * np.arcsin(np.sqrt(scale * r_target))


@dataclass(frozen=True)
class NoiseSpec:
    """Over-rotation angle per gate identity; absent gates are noiseless."""

    deltas: Mapping[GateKey, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for key, delta in dict(self.deltas).items():
            if not isinstance(key, DihedralElem) and key not in ("H", "T", "CZ"):
                raise ValueError(f"unsupported gate key {key!r}")
            if not -np.pi < delta <= np.pi:
                raise ValueError("over-rotation angle must lie in (-pi, pi]")
            clean[key] = float(delta)
        object.__setattr__(self, "deltas", clean)

    def delta(self, gate: GateKey) -> float:
        return self.deltas.get(gate, 0.0)

    def noisy_matrix(self, gate: GateKey) -> np.ndarray:
        return over_rotation(gate, self.delta(gate))

    @classmethod
    def noiseless(cls) -> "NoiseSpec":
        return cls({})

    @classmethod
    def calibrated(cls, r_cz: float, r_single: float) -> "NoiseSpec":
        """Assign r_single to every single-qubit gate (easy and hard) and r_cz to CZ."""
        d1 = calibrate_delta("single", r_single)
        dcz = calibrate_delta("cz", r_cz)
        deltas: dict[GateKey, float] = {g: d1 for g in ALL_DIHEDRAL}
        deltas["H"] = d1
        deltas["T"] = d1
        deltas["CZ"] = dcz
        return cls(deltas)
