"""Shared oracles for the test suite.

Everything here is deliberately independent of the library's internal code
paths: matrices are built by hand, channels by dense conjugation, and the
worst-case-error certificates by Choi-matrix trace norms, so that agreement
between library and helper is evidence rather than tautology.
"""

import itertools

import numpy as np

from rctailor import channels as ch
from rctailor import gates as g
from rctailor import randomize as rz
from rctailor.metrics import diamond_diff_lower_search, thm2_bound


def haar_unitary(dim, rng):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def phase_dist(u, v):
    """max|u - e^{i phi} v| minimized over the global phase phi."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    k = np.argmax(np.abs(v))
    idx = np.unravel_index(k, v.shape)
    phase = u[idx] / v[idx]
    if np.abs(v[idx]) < 1e-12 or np.abs(np.abs(phase) - 1) > 1e-9:
        return float(np.max(np.abs(u - v)))
    return float(np.max(np.abs(u - phase * v)))


def chi2_stat(observed, expected_probs, total):
    expected = np.asarray(expected_probs) * total
    observed = np.asarray(observed, dtype=float)
    mask = expected > 0
    return float(np.sum((observed[mask] - expected[mask]) ** 2 / expected[mask]))


def chi2_limit(dof):
    """~3 sigma upper limit for a chi-square statistic with `dof` degrees."""
    return dof + 3.0 * np.sqrt(2.0 * dof)


def ptm_to_choi(m):
    """Choi matrix (unnormalized, trace d for TP maps) of a transfer matrix."""
    n = int(round(np.log2(m.shape[0]) / 2))
    d = 2**n
    paulis = ch.pauli_basis(n)
    basis = np.stack([p.reshape(-1).conj() / np.sqrt(d) for p in paulis])
    sup = basis.conj().T @ m @ basis
    return sup.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def trace_norm(h):
    h = (h + h.conj().T) / 2
    return float(np.sum(np.abs(np.linalg.eigvalsh(h))))


def diamond_upper_of_diff(m):
    """Certified upper bound on the diamond norm of a PTM difference."""
    return trace_norm(ptm_to_choi(m))


def eps_upper(ptm):
    """Certified upper bound on the worst-case error of a channel."""
    return 0.5 * trace_norm(ptm_to_choi(ptm.m - np.eye(ptm.m.shape[0])))


def easy_error_ptm(elem, delta_map):
    u = g.easy_matrix(elem)
    noisy = ch.over_rotation(elem, delta_map[elem])
    return ch.ptm_from_unitary(noisy @ u.conj().T)


def hard_error_ptm(name, delta_h, delta_t):
    if name == g.WIRE:
        return ch.ptm_identity(1)
    delta = delta_h if name == g.HGATE else delta_t
    u = g.H_MAT if name == g.HGATE else g.T_MAT
    return ch.ptm_from_unitary(ch.over_rotation(name, delta) @ u.conj().T)


def dressed_ensembles(circ):
    """Per-cycle multiset of dressed easy gates over all twirl choices (n=1)."""
    out = []
    for k, cyc in enumerate(circ.cycles):
        items = []
        if k == 0:
            for t in g.ALL_PAULIS:
                items.append(g.dihedral_mul(g.pauli_embed(t), cyc.easy[0]))
        else:
            for t_prev in g.ALL_PAULIS:
                corr = rz.correction_round(circ.cycles[k - 1].hard, (t_prev,))[0]
                base = g.dihedral_mul(cyc.easy[0], corr)
                for t in g.ALL_PAULIS:
                    items.append(g.dihedral_mul(g.pauli_embed(t), base))
        out.append(items)
    return out


def gate_dependent_instance(rng, restarts=20, iters=300):
    """Random single-qubit compiled circuit with per-gate easy noise.

    Returns the search lower bound on the distance between the averaged
    compiled channel under per-gate noise and under ensemble-mean noise,
    together with the two bound forms evaluated from certified per-cycle
    upper bounds.  The bound forms are monotone in their inputs, so using
    upper bounds for the measured quantities keeps the comparison sound.
    """
    k_cycles = int(rng.integers(1, 4))
    circ = g.sample_random_circuit(1, k_cycles, rng)
    delta_map = {e: float(rng.uniform(-0.15, 0.15)) for e in g.ALL_DIHEDRAL}
    delta_h = float(rng.uniform(-0.1, 0.1))
    delta_t = float(rng.uniform(-0.1, 0.1))
    hard_ideal = [ch.ptm_from_unitary(g.hard_round_matrix(c.hard)).m for c in circ.cycles]
    hard_err = [hard_error_ptm(c.hard.singles[0], delta_h, delta_t).m for c in circ.cycles]

    ensembles = dressed_ensembles(circ)
    mean_err = []
    for items in ensembles:
        acc = np.zeros((4, 4))
        for e in items:
            acc += easy_error_ptm(e, delta_map).m
        mean_err.append(acc / len(items))

    deltas = []
    for items, mean in zip(ensembles, mean_err):
        vals = [diamond_upper_of_diff(easy_error_ptm(e, delta_map).m - mean) for e in items]
        deltas.append(float(np.mean(vals)))
    eps = []
    for k in range(k_cycles - 1):
        comp = hard_err[k] @ mean_err[k]
        eps.append(0.5 * trace_norm(ptm_to_choi(comp - np.eye(4))))

    acc_gd = np.zeros((4, 4))
    acc_gi = np.zeros((4, 4))
    for ts in itertools.product(g.ALL_PAULIS, repeat=k_cycles):
        rc = rz.compile_with_twirls(circ, tuple((t,) for t in ts))
        a = np.eye(4)
        b = np.eye(4)
        for k in range(k_cycles):
            dressed = rc.compiled.cycles[k].easy[0]
            ideal = ch.ptm_from_unitary(g.easy_matrix(dressed)).m
            err = easy_error_ptm(dressed, delta_map).m
            a = hard_ideal[k] @ hard_err[k] @ err @ ideal @ a
            b = hard_ideal[k] @ hard_err[k] @ mean_err[k] @ ideal @ b
        acc_gd += a
        acc_gi += b
    gd = ch.Ptm(1, acc_gd / 4**k_cycles)
    gi = ch.Ptm(1, acc_gi / 4**k_cycles)
    lhs = diamond_diff_lower_search(gd, gi, restarts=restarts, iters=iters)
    return lhs, thm2_bound(deltas, eps)


def statevector_oracle(circ, noise):
    """Output distribution by dense noisy-matrix chaining (n <= 3)."""
    n = circ.n
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    for cyc in circ.cycles:
        easy = np.array([[1.0]], dtype=complex)
        for elem in cyc.easy:
            easy = np.kron(easy, noise.noisy_matrix(elem))
        psi = easy @ psi
        singles = np.array([[1.0]], dtype=complex)
        for name in cyc.hard.singles:
            if name == g.WIRE:
                singles = np.kron(singles, np.eye(2, dtype=complex))
            else:
                singles = np.kron(singles, noise.noisy_matrix(name))
        psi = singles @ psi
        for (i, j) in cyc.hard.cz:
            cz = np.eye(2**n, dtype=complex)
            phase = -np.exp(1j * noise.delta("CZ"))
            for idx in range(2**n):
                if (idx >> (n - 1 - i)) & 1 and (idx >> (n - 1 - j)) & 1:
                    cz[idx, idx] = phase
            psi = cz @ psi
    return np.abs(psi) ** 2


def exact_tailored(circ, noise):
    """M -> infinity tailored distribution by enumerating every twirl choice."""
    from rctailor import simulate as sim

    n, k_cycles = circ.n, len(circ.cycles)
    rounds = list(itertools.product(g.ALL_PAULIS, repeat=n))
    acc = np.zeros(2**n)
    count = 0
    for seq in itertools.product(rounds, repeat=k_cycles):
        rc = rz.compile_with_twirls(circ, seq)
        acc += sim.run_randomized(rc, noise)
        count += 1
    return acc / count
