"""Figure sweeps and CSV emission backing the rctailor CLI.

Every data point owns a seed derived from the master seed and the point's
flat index through numpy's SeedSequence (a documented counter scheme), so a
fixed configuration reproduces its CSV byte for byte regardless of thread
count: workers may run out of order but rows are written in index order.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .channels import NoiseSpec
from .gates import sample_random_circuit
from .metrics import fig2_upper_bound, variational_distance
from .simulate import ideal_distribution, run_bare, run_tailored

R_EASY_FIG2 = (1e-5, 1e-4, 5e-4, 1e-3)


@dataclass(frozen=True)
class ExperimentConfig:
    qubits: int = 4
    cycles: int = 50
    cycles_min: int = 5
    cycles_max: int = 100
    randomizations: int = 200
    circuits: int = 10
    r_cz: float | None = None
    r_min: float = 1e-5
    r_max: float = 1e-2
    points: int = 7
    easy_ratio: float = 0.1
    seed: int = 1234
    threads: int = 1

    def validate(self) -> None:
        if not 1 <= self.qubits <= 10:
            raise ValueError("qubit count must be in 1..10")
        if min(self.cycles, self.cycles_min, self.cycles_max) < 1:
            raise ValueError("cycle counts must be positive")
        if self.cycles_min > self.cycles_max:
            raise ValueError("cycles-min exceeds cycles-max")
        if self.randomizations < 1 or self.circuits < 1 or self.points < 1:
            raise ValueError("counts must be positive")
        if self.easy_ratio < 0:
            raise ValueError("easy-ratio must be nonnegative")
        if self.r_cz is None and not 0 < self.r_min <= self.r_max:
            raise ValueError("need 0 < r-min <= r-max for a sweep")
        if self.seed < 0 or self.threads < 1:
            raise ValueError("seed and threads must be nonnegative/positive")


def point_seed(master: int, index: int) -> int:
    """Per-point seed: SeedSequence(master, spawn_key=(index,)) as one uint64."""
    ss = np.random.SeedSequence(master, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _r_values(cfg: ExperimentConfig) -> list[float]:
    if cfg.r_cz is not None:
        return [float(cfg.r_cz)]
    return [float(r) for r in np.geomspace(cfg.r_min, cfg.r_max, cfg.points)]


def _k_values(cfg: ExperimentConfig) -> list[int]:
    ks = np.unique(np.linspace(cfg.cycles_min, cfg.cycles_max, 10).round().astype(int))
    return [int(k) for k in ks]


def _tau_pair(n: int, k: int, r_cz: float, easy_ratio: float, m: int, seed: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    circuit = sample_random_circuit(n, k, rng)
    noise = NoiseSpec.calibrated(r_cz, r_cz * easy_ratio) if r_cz > 0 else NoiseSpec.noiseless()
    ideal = ideal_distribution(circuit)
    tau_bare = variational_distance(run_bare(circuit, noise), ideal)
    tau_tail = variational_distance(run_tailored(circuit, noise, m, rng), ideal)
    return tau_bare, tau_tail


def _fig3_point(args: tuple) -> list:
    cfg, index, circuit_index, r = args
    seed = point_seed(cfg.seed, index)
    tau_bare, tau_tail = _tau_pair(
        cfg.qubits, cfg.cycles, r, cfg.easy_ratio, cfg.randomizations, seed
    )
    return [circuit_index, r, tau_bare, tau_tail, seed]


def _fig4_point(args: tuple) -> list:
    cfg, index, k = args
    seed = point_seed(cfg.seed, index)
    tau_bare, tau_tail = _tau_pair(
        cfg.qubits, k, 1e-3 if cfg.r_cz is None else cfg.r_cz, cfg.easy_ratio,
        cfg.randomizations, seed,
    )
    return [k, tau_bare, tau_tail, seed]


def _map_points(cfg: ExperimentConfig, fn: Callable, tasks: list[tuple]) -> list[list]:
    if cfg.threads == 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, tasks))


def fig3_rows(cfg: ExperimentConfig) -> list[list]:
    """One row per (r value, circuit): circuit_index, r_cz, tau_bare, tau_tailored, seed."""
    cfg.validate()
    tasks = []
    index = 0
    for r in _r_values(cfg):
        for c in range(cfg.circuits):
            tasks.append((cfg, index, c, r))
            index += 1
    return _map_points(cfg, _fig3_point, tasks)


def fig4_rows(cfg: ExperimentConfig) -> list[list]:
    """One row per (cycle count, circuit): K, tau_bare, tau_tailored, seed."""
    cfg.validate()
    tasks = []
    index = 0
    for k in _k_values(cfg):
        for _ in range(cfg.circuits):
            tasks.append((cfg, index, k))
            index += 1
    return _map_points(cfg, _fig4_point, tasks)


def fig2_rows(cfg: ExperimentConfig) -> list[list]:
    """Bound curves on an r_hard grid; one gate-dependent column per easy rate."""
    cfg.validate()
    rows = []
    for r in np.geomspace(cfg.r_min, cfg.r_max, cfg.points):
        row = [
            float(r),
            fig2_upper_bound(r),
            fig2_upper_bound(r, tailored=True),
        ]
        for r_easy in R_EASY_FIG2:
            row.append(
                fig2_upper_bound(r, (r_easy, r_easy), tailored=True, gate_dependent=True)
            )
        rows.append(row)
    return rows


FIG2_COLUMNS = tuple(
    ["r_hard", "eps_untailored", "eps_tailored_gi"]
    + [f"eps_tailored_gd_{r:.0e}" for r in R_EASY_FIG2]
)
FIG3_COLUMNS = ("circuit_index", "r_cz", "tau_bare", "tau_tailored", "seed")
FIG4_COLUMNS = ("K", "tau_bare", "tau_tailored", "seed")


def _config_comment(kind: str, cfg: ExperimentConfig) -> str:
    if kind == "fig2":
        keys = ("r_min", "r_max", "points")
    elif kind == "fig3":
        keys = ("qubits", "cycles", "randomizations", "circuits", "r_cz", "r_min",
                "r_max", "points", "easy_ratio", "seed")
    else:
        keys = ("qubits", "cycles_min", "cycles_max", "randomizations", "circuits",
                "r_cz", "easy_ratio", "seed")
    parts = " ".join(f"{k}={getattr(cfg, k)}" for k in keys)
    return f"# rctailor {kind} {parts}"


def write_csv(out, comment: str, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    close = False
    if isinstance(out, (str, Path)):
        out = open(out, "w", encoding="utf-8", newline="")
        close = True
    try:
        out.write(comment + "\n")
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(_format_cell(v) for v in row) + "\n")
    finally:
        if close:
            out.close()


def _format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def run_figure(kind: str, cfg: ExperimentConfig, out) -> list[list]:
    builders = {"fig2": (fig2_rows, FIG2_COLUMNS), "fig3": (fig3_rows, FIG3_COLUMNS),
                "fig4": (fig4_rows, FIG4_COLUMNS)}
    if kind not in builders:
        raise KeyError(f"unknown figure kind {kind!r}")
    build, columns = builders[kind]
    rows = build(cfg)
    write_csv(out, _config_comment(kind, cfg), columns, rows)
    return rows


def csv_text(kind: str, cfg: ExperimentConfig) -> str:
    buf = io.StringIO()
    run_figure(kind, cfg, buf)
    return buf.getvalue()


def fig4_default_config(**overrides) -> ExperimentConfig:
    cfg = ExperimentConfig(r_cz=1e-3, easy_ratio=0.01)
    return replace(cfg, **overrides) if overrides else cfg
