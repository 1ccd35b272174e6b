"""Acceptance gate: one test per top-level criterion, one verdict line each.

Run with `pytest -s tests/test_acceptance.py` to see the verdict lines.
"""

import itertools
import math
import time

import numpy as np

from rctailor import channels as ch
from rctailor import experiments as ex
from rctailor import gates as g
from rctailor import metrics as mt
from rctailor import randomize as rz
from helpers import gate_dependent_instance, haar_unitary, phase_dist


def _verdict(name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"{tag} - {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_logical_equivalence_exactness():
    rng = np.random.default_rng(1001)
    start = time.monotonic()
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 11))
        circ = g.sample_random_circuit(n, k, rng)
        rc = rz.randomize_circuit(circ, rng)
        worst = max(worst, rz.check_logical_equivalence(circ, rc))
    elapsed = time.monotonic() - start
    _verdict(
        "logical equivalence: 100 random circuits within 1e-10",
        worst < 1e-10 and elapsed < 30,
        f"max deviation {worst:.2e}, {elapsed:.1f}s")


def test_twirl_diagonalization():
    rng = np.random.default_rng(1002)
    start = time.monotonic()
    worst_off = 0.0
    worst_prob = 0.0
    worst_fid = 0.0
    def pauli_round_matrix(ps):
        m = np.array([[1.0]], dtype=complex)
        for p in ps:
            m = np.kron(m, g.pauli_matrix(p))
        return m

    sandwiches = {
        n: [ch.ptm_from_unitary(pauli_round_matrix(ps)).m
            for ps in itertools.product(g.ALL_PAULIS, repeat=n)]
        for n in (1, 2)
    }
    for i in range(1000):
        n = 1 if i % 2 == 0 else 2
        m = ch.ptm_from_unitary(haar_unitary(2**n, rng))
        acc = np.zeros_like(m.m)
        for s in sandwiches[n]:
            acc += s @ m.m @ s
        avg = acc / len(sandwiches[n])
        off = avg - np.diag(np.diag(avg))
        worst_off = max(worst_off, float(np.max(np.abs(off))))
        pc = ch.pauli_twirl(m)
        worst_prob = max(worst_prob, float(-np.min(pc.c)), abs(float(np.sum(pc.c)) - 1.0))
        worst_fid = max(worst_fid, abs(ch.infidelity(pc.as_ptm()) - ch.infidelity(m)))
    elapsed = time.monotonic() - start
    _verdict(
        "twirl: 1000 random unitary channels diagonal, valid, fidelity-preserving",
        worst_off < 1e-12 and worst_prob < 1e-9 and worst_fid < 1e-12 and elapsed < 60,
        f"off-diag {worst_off:.1e}, prob defect {worst_prob:.1e}, "
        f"fidelity drift {worst_fid:.1e}, {elapsed:.1f}s")


def test_conjugation_and_product_algebra():
    def elem_matrix(e):
        r = np.diag([1, 1j]).astype(complex)
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        return np.linalg.matrix_power(r, e.a) @ np.linalg.matrix_power(x, e.b)

    failures = 0
    for e1 in g.ALL_DIHEDRAL:
        for e2 in g.ALL_DIHEDRAL:
            got = elem_matrix(g.dihedral_mul(e1, e2))
            if phase_dist(elem_matrix(e1) @ elem_matrix(e2), got) > 1e-12:
                failures += 1
    singles = {"W": np.eye(2, dtype=complex), "H": g.H_MAT, "T": g.T_MAT}
    for name, mat in singles.items():
        for p in g.ALL_PAULIS:
            out = g.conjugate_pauli_round(g.HardRound((name,)), (p,))[0]
            if phase_dist(mat @ g.pauli_matrix(p) @ mat.conj().T, elem_matrix(out)) > 1e-12:
                failures += 1
    cz = g.HardRound(("W", "W"), ((0, 1),))
    for p in g.ALL_PAULIS:
        for q in g.ALL_PAULIS:
            out = g.conjugate_pauli_round(cz, (p, q))
            got = np.kron(elem_matrix(out[0]), elem_matrix(out[1]))
            want = g.CZ_MAT @ np.kron(g.pauli_matrix(p), g.pauli_matrix(q)) @ g.CZ_MAT
            if phase_dist(want, got) > 1e-12:
                failures += 1
    _verdict("conjugation and product algebra: exhaustive oracle, zero failures",
             failures == 0, f"{failures} failures")


def test_bound_chain_on_random_channels():
    rng = np.random.default_rng(1004)
    ok = True
    saturation = 0.0
    detail = ""
    for i in range(200):
        n = 1 if i % 4 < 2 else 2
        d = 2**n
        if i % 2 == 0:
            c = rng.dirichlet(np.ones(4**n))
            eps = mt.diamond_pauli(ch.PauliChannel(n, c))
            r = ch.infidelity(ch.PauliChannel(n, c).as_ptm())
            saturation = max(saturation, abs(eps - r * (d + 1) / d))
        else:
            u = haar_unitary(d, rng)
            eps = mt.diamond_unitary(u)
            r = ch.infidelity(ch.ptm_from_unitary(u))
        rep = mt.eq3_bounds(r, d)
        if not (rep.lower - 1e-9 <= eps <= rep.upper + 1e-9):
            ok = False
            detail = f"violation at i={i}: {rep.lower} <= {eps} <= {rep.upper}"
            break
    _verdict("bound chain: 200 random channels bracketed, stochastic channels saturate",
             ok and saturation < 1e-12,
             detail or f"max saturation defect {saturation:.1e}")


def test_coherent_error_example():
    delta = ch.calibrate_delta("single", 1e-4)
    err = ch.over_rotation("T", delta) @ g.T_MAT.conj().T
    eps = mt.diamond_unitary(err)
    res = mt.diamond_lower_search(ch.ptm_from_unitary(err))
    _verdict("coherent error at r=1e-4: eps in [5e-3, 3e-2], search matches closed form",
             5e-3 <= eps <= 3e-2 and abs(res.value - eps) <= 1e-4,
             f"eps {eps:.4e}, search gap {abs(res.value - eps):.1e}")


def test_error_rate_sweep_slope():
    cfg = ex.ExperimentConfig(qubits=4, cycles=50, randomizations=200,
                              circuits=10, r_min=1e-5, r_max=1e-2, points=7,
                              easy_ratio=0.1, seed=1234)
    start = time.monotonic()
    rows = ex.fig3_rows(cfg)
    elapsed = time.monotonic() - start
    arr = np.array([(row[1], row[2], row[3]) for row in rows])
    rs = np.unique(arr[:, 0])
    med_bare = np.array([np.median(arr[arr[:, 0] == r][:, 1]) for r in rs])
    med_tail = np.array([np.median(arr[arr[:, 0] == r][:, 2]) for r in rs])
    slope_bare = np.polyfit(np.log(rs), np.log(med_bare), 1)[0]
    slope_tail = np.polyfit(np.log(rs), np.log(med_tail), 1)[0]
    ratio = slope_tail / (2 * slope_bare)
    _verdict("error-rate sweep: tailored log-log slope within 30% of twice the bare slope",
             0.7 <= ratio <= 1.3 and elapsed < 600,
             f"slopes {slope_bare:.3f}/{slope_tail:.3f}, ratio {ratio:.3f}, {elapsed:.0f}s")


def test_cycle_count_sweep_linearity():
    cfg = ex.fig4_default_config()
    start = time.monotonic()
    rows = ex.fig4_rows(cfg)
    elapsed = time.monotonic() - start
    arr = np.array([(row[0], row[2]) for row in rows])
    ks = np.unique(arr[:, 0])
    med = np.array([np.median(arr[arr[:, 0] == k][:, 1]) for k in ks])
    fit = np.polyval(np.polyfit(ks, med, 1), ks)
    r2 = 1 - np.sum((med - fit) ** 2) / np.sum((med - np.mean(med)) ** 2)
    _verdict("cycle-count sweep: tailored error grows linearly (R^2 > 0.9)",
             r2 > 0.9 and elapsed < 600, f"R^2 {r2:.4f}, {elapsed:.0f}s")


def test_gate_dependent_bound_soundness():
    rng = np.random.default_rng(2024)
    worst_strong = worst_general = np.inf
    for _ in range(20):
        lhs, bound = gate_dependent_instance(rng)
        worst_strong = min(worst_strong, bound.group_normalized - lhs.value)
        worst_general = min(worst_general, bound.general - lhs.value)
    rng2 = np.random.default_rng(1008)
    worst_residual = 0.0
    for _ in range(100):
        k = int(rng2.integers(1, 5))
        a = [ch.ptm_from_unitary(haar_unitary(2, rng2)) for _ in range(k)]
        b = [ch.ptm_from_unitary(haar_unitary(2, rng2)) for _ in range(k)]
        worst_residual = max(worst_residual, mt.telescoping_residual(a, b))
    _verdict("gate-dependent noise: searched distance never exceeds either bound form",
             worst_strong >= -1e-9 and worst_general >= -1e-9 and worst_residual < 1e-12,
             f"margins {worst_strong:.3e}/{worst_general:.3e}, "
             f"telescoping residual {worst_residual:.1e}")


def test_bound_curve_ordering():
    cfg = ex.ExperimentConfig(r_min=1e-6, r_max=1e-2, points=25)
    rows = ex.fig2_rows(cfg)
    cols = list(ex.FIG2_COLUMNS)
    i_r = cols.index("r_hard")
    i_solid = cols.index("eps_untailored")
    i_dotted = cols.index("eps_tailored_gi")
    i_dashed = cols.index("eps_tailored_gd_1e-05")
    ok = True
    for row in rows:
        if row[i_r] >= 1e-4:
            ok = ok and (row[i_dotted] < row[i_dashed] < row[i_solid])
    _verdict("bound curves: gate-dependent upper bound sits strictly between "
             "the stochastic and untailored bounds for r >= 1e-4", ok)
