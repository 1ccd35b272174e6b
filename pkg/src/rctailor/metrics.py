"""Worst-case error metrics and the bound arithmetic used by the figures.

Throughout, eps denotes half the diamond norm distance to the identity,
eps(E) = (1/2) || E - I ||_diamond, and r the average-fidelity infidelity.
For an n-qubit system of dimension d the two are bracketed by

    r (d + 1) / d  <=  eps  <=  sqrt( r d (d + 1) ),

with the lower bound saturated by Pauli channels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .channels import PauliChannel, Ptm, _basis_stack

_DIST_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    r: float
    lower: float
    upper: float
    d: int


def eq3_bounds(r: float, d: int) -> BoundReport:
    """Diamond-distance bracket from the average infidelity r in dimension d."""
    if not 0.0 <= r <= 1.0:
        raise ValueError("infidelity must lie in [0, 1]")
    if d < 2:
        raise ValueError("dimension must be at least 2")
    return BoundReport(r, r * (d + 1) / d, float(np.sqrt(r * d * (d + 1))), d)


def variational_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """tau(p, q) = (1/2) sum_j |p_j - q_j| for two outcome distributions."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError("distributions have different lengths")
    for dist in (p, q):
        if dist.min() < -_DIST_TOL or abs(dist.sum() - 1.0) > 1e-8:
            raise ValueError("input is not a probability distribution")
    return float(0.5 * np.sum(np.abs(p - q)))


def diamond_pauli(channel: PauliChannel) -> float:
    """Exact eps for a Pauli channel: the total non-identity probability."""
    return float(1.0 - channel.c[0])


def diamond_unitary(u: np.ndarray) -> float:
    """Exact eps for a unitary channel via its eigenvalue hull.

    eps = sqrt(1 - nu^2) where nu is the distance from the origin to the
    convex hull of the eigenvalues.  On the unit circle this reduces to the
    largest angular gap G between consecutive eigenvalues:  nu = -cos(G/2)
    when G > pi and 0 otherwise (origin inside the hull).
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] > 8:
        raise ValueError("need a square unitary of dimension at most 8")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > 1e-10:
        raise ValueError("matrix is not unitary")
    angles = np.sort(np.angle(np.linalg.eigvals(u)))
    gaps = np.diff(angles, append=angles[0] + 2.0 * np.pi)
    nu = max(0.0, -np.cos(np.max(gaps) / 2.0))
    return float(np.sqrt(max(0.0, 1.0 - nu * nu)))


class Thm2Bound(NamedTuple):
    group_normalized: float
    general: float


def thm2_bound(
    per_cycle_deltas: Sequence[float], per_cycle_eps: Sequence[float]
) -> Thm2Bound:
    """Distance bound between gate-dependent and gate-independent compilations.

    With delta_k the mean diamond distance of the kth easy-noise channel from
    its twirl average and eps_k the worst-case error of the kth tailored
    cycle, the group-normalized form is delta_1 + sum_{k>=2} 2 delta_k eps_{k-1};
    the form for arbitrary twirls is sum_k delta_k.
    """
    deltas = [float(x) for x in per_cycle_deltas]
    eps = [float(x) for x in per_cycle_eps]
    if not deltas:
        raise ValueError("need at least one cycle")
    if len(eps) != len(deltas) - 1:
        raise ValueError("need exactly one eps per cycle after the first")
    strong = deltas[0] + sum(2.0 * d * e for d, e in zip(deltas[1:], eps))
    return Thm2Bound(strong, sum(deltas))


def thm3_local_bound(r_easy: Sequence[float]) -> float:
    """Local-noise bound sum_j 4 sqrt(6 r_j) on the twirl-average distance."""
    rates = np.asarray(r_easy, dtype=float)
    if rates.size == 0 or rates.min() < 0:
        raise ValueError("need nonnegative per-qubit infidelities")
    return float(np.sum(4.0 * np.sqrt(6.0 * rates)))


def thm3_general_bound(eps_twirled: float, eps_sq_mean: float) -> float:
    """Arbitrary-noise form 2 eps(E^T) + 2 sqrt(E[eps^2])."""
    if eps_twirled < 0 or eps_sq_mean < 0:
        raise ValueError("bound inputs must be nonnegative")
    return 2.0 * eps_twirled + 2.0 * float(np.sqrt(eps_sq_mean))


def fig2_upper_bound(
    r_hard: float,
    r_easy_per_qubit: Sequence[float] = (),
    tailored: bool = False,
    gate_dependent: bool = False,
) -> float:
    """Worst-case error bound for a two-qubit hard gate in the circuit bulk.

    Untailored: sqrt(20 r_hard).  Tailored, gate-independent easy noise:
    (5/4) r_hard (the tailored noise is Pauli, saturating the lower bound).
    Tailored with gate-dependent local easy noise adds the per-cycle penalty
    2 * [sum_j 4 sqrt(6 r_j)] * eps_prev, where eps_prev is the untailored
    upper bound sqrt(20 r_cycle) for the preceding cycle and r_cycle its
    composite infidelity r_hard + sum_j r_j (small-error additivity).
    """
    if not 0.0 <= r_hard <= 1.0:
        raise ValueError("infidelity must lie in [0, 1]")
    d = 4
    if not tailored:
        return float(np.sqrt(r_hard * d * (d + 1)))
    base = r_hard * (d + 1) / d
    if not gate_dependent:
        return float(base)
    rates = np.asarray(r_easy_per_qubit, dtype=float)
    if rates.size == 0:
        raise ValueError("gate-dependent bound needs per-qubit easy rates")
    r_cycle = r_hard + float(rates.sum())
    eps_prev = float(np.sqrt(r_cycle * d * (d + 1)))
    return float(base + 2.0 * thm3_local_bound(rates) * eps_prev)


def telescoping_residual(a_seq: Sequence[Ptm], b_seq: Sequence[Ptm]) -> float:
    """Max-entry residual of A_{K:1} - B_{K:1} = sum_k A_{K:k+1}(A_k - B_k)B_{k-1:1}."""
    if len(a_seq) != len(b_seq) or not a_seq:
        raise ValueError("need two equal-length nonempty sequences")
    a = [p.m for p in a_seq]
    b = [p.m for p in b_seq]
    k = len(a)
    dim = a[0].shape[0]

    def chain(mats: list[np.ndarray], lo: int, hi: int) -> np.ndarray:
        out = np.eye(dim)
        for idx in range(lo, hi):
            out = mats[idx] @ out
        return out

    lhs = chain(a, 0, k) - chain(b, 0, k)
    rhs = np.zeros_like(lhs)
    for idx in range(k):
        rhs += chain(a, idx + 1, k) @ (a[idx] - b[idx]) @ chain(b, 0, idx)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# Numerical lower-bound search for the diamond distance.


@dataclass(frozen=True)
class DiamondSearchResult:
    value: float
    converged: bool


@lru_cache(maxsize=None)
def _vec_basis(n: int) -> np.ndarray:
    """Rows are conj(vec(P_i / sqrt(d))): unitary change of basis for vec(rho)."""
    stack = _basis_stack(n)
    d = 2**n
    return stack.conj().reshape(4**n, d * d) / np.sqrt(d)


def _comp_superop(m: np.ndarray, n: int) -> np.ndarray:
    """Superoperator on row-major vec(rho) matching a Pauli-basis matrix m."""
    ub = _vec_basis(n)
    return ub.conj().T @ m.astype(complex) @ ub


def _apply_on_first(s4: np.ndarray, rho4: np.ndarray) -> np.ndarray:
    return np.einsum("ijkl,kxly->ixjy", s4, rho4)


def _ascent(
    scomp: np.ndarray, d: int, restarts: int, iters: int, tol: float, rng: np.random.Generator
) -> tuple[float, bool]:
    """Maximize || (Delta (x) I)(psi psi^dag) ||_1 over pure psi on d*d dims.

    Alternates the exact best sign operator for the current state with the
    exact best state for the current sign operator, so every iterate is a
    certified lower bound and the sequence is nondecreasing.
    """
    dim = d * d
    s4 = scomp.reshape(d, d, d, d)
    s4_adj = scomp.conj().T.reshape(d, d, d, d)
    best = 0.0
    best_converged = True
    for _ in range(restarts):
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)
        value = 0.0
        converged = False
        for _ in range(iters):
            rho4 = np.outer(psi, psi.conj()).reshape(d, d, d, d)
            x = _apply_on_first(s4, rho4).reshape(dim, dim)
            x = 0.5 * (x + x.conj().T)
            w, v = np.linalg.eigh(x)
            f = float(np.sum(np.abs(w)))
            if f <= value + tol:
                value = max(value, f)
                converged = True
                break
            value = f
            sign_op = (v * np.where(w >= 0.0, 1.0, -1.0)) @ v.conj().T
            grad = _apply_on_first(s4_adj, sign_op.reshape(d, d, d, d)).reshape(dim, dim)
            grad = 0.5 * (grad + grad.conj().T)
            _, gv = np.linalg.eigh(grad)
            psi = gv[:, -1]
        if value > best:
            best = value
            best_converged = converged
    return best, best_converged


def diamond_lower_search(
    e: Ptm,
    restarts: int = 50,
    iters: int = 500,
    tol: float = 1e-10,
    rng: np.random.Generator | None = None,
) -> DiamondSearchResult:
    """Certified lower bound on eps(E) from pure states on the doubled system."""
    if e.n > 2:
        raise ValueError("search is limited to two qubits")
    if rng is None:
        rng = np.random.default_rng(0)
    delta = e.m - np.eye(4**e.n)
    scomp = _comp_superop(delta, e.n)
    best, converged = _ascent(scomp, 2**e.n, restarts, iters, tol, rng)
    return DiamondSearchResult(0.5 * best, converged)


def diamond_diff_lower_search(
    a: Ptm,
    b: Ptm,
    restarts: int = 50,
    iters: int = 500,
    tol: float = 1e-10,
    rng: np.random.Generator | None = None,
) -> DiamondSearchResult:
    """Certified lower bound on || A - B ||_diamond for two channels."""
    if a.n != b.n:
        raise ValueError("channels act on different qubit counts")
    if a.n > 2:
        raise ValueError("search is limited to two qubits")
    if rng is None:
        rng = np.random.default_rng(0)
    scomp = _comp_superop(a.m - b.m, a.n)
    best, converged = _ascent(scomp, 2**a.n, restarts, iters, tol, rng)
    return DiamondSearchResult(best, converged)
