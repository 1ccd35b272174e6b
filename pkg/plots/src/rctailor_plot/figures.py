"""Turn rctailor sweep CSVs into figures.

Each figure kind names a fixed CSV schema (the one the rctailor CLI emits)
and a fixed visual grammar: fig2 is a family of worst-case-bound curves on
log-log axes, fig3 a bare-vs-tailored scatter against the swept two-qubit
error rate (log x), and fig4 the same scatter against cycle count on linear
axes. Bare data wears blue circles, tailored data red squares, and every
series carries a stable SVG group id (``series-bare``, ``curve-dashed-…``)
so tooling can count markers and curves structurally.

SVG output is byte-for-byte reproducible for a given input: the id hash salt
is pinned, the date stamp is dropped, and text is stored as glyph paths.
Input files are only ever opened for reading.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib as mpl
from matplotlib.figure import Figure

KINDS = ("fig2", "fig3", "fig4")

REQUIRED_COLUMNS = {
    "fig2": ("r_hard", "eps_untailored", "eps_tailored_gi"),
    "fig3": ("r_cz", "tau_bare", "tau_tailored"),
    "fig4": ("K", "tau_bare", "tau_tailored"),
}

AXIS_SCALES = {
    "fig2": ("log", "log"),
    "fig3": ("log", "linear"),
    "fig4": ("linear", "linear"),
}

# fig2 columns holding the gate-dependent tailored bound, one per easy rate.
GD_PREFIX = "eps_tailored_gd_"

_HASHSALT = "rctailor-plot"
_SCALES = ("linear", "log")


class SchemaError(ValueError):
    """The CSV does not provide what the figure kind requires."""


@dataclass(frozen=True)
class FigureSpec:
    """One render job: input CSV, figure kind, output path, axis scales."""

    csv_path: Path
    kind: str
    out_path: Path
    x_scale: str
    y_scale: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.x_scale not in _SCALES or self.y_scale not in _SCALES:
            raise ValueError(f"axis scales must be in {_SCALES}")

    @classmethod
    def for_kind(cls, kind: str, csv_path, out_path, *,
                 x_scale: str | None = None, y_scale: str | None = None) -> "FigureSpec":
        """Spec with the kind's default axis scales unless overridden."""
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        dx, dy = AXIS_SCALES[kind]
        return cls(Path(csv_path), kind, Path(out_path), x_scale or dx, y_scale or dy)


def read_table(path) -> tuple[list[str], list[list[float]]]:
    """Parse a harness CSV: '#' comment lines, then a header row, then floats.

    Raises SchemaError for a missing header, ragged rows, non-numeric cells,
    or an empty data section; OSError if the file cannot be read.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise SchemaError(f"{path}: no header row")
    raw = list(csv.reader(lines))
    header = [cell.strip() for cell in raw[0]]
    rows = []
    for cells in raw[1:]:
        if len(cells) != len(header):
            raise SchemaError(f"{path}: row with {len(cells)} cells under "
                              f"{len(header)}-column header")
        try:
            rows.append([float(cell) for cell in cells])
        except ValueError:
            raise SchemaError(f"{path}: non-numeric cell in row {cells!r}") from None
    if not rows:
        raise SchemaError(f"{path}: empty data section")
    return header, rows


def check_columns(kind: str, header: list[str]) -> None:
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in header]
    if missing:
        raise SchemaError(f"{kind} needs columns {missing}; CSV has {header}")


def render(spec: FigureSpec, fmt: str | None = None) -> Path:
    """Render the figure described by ``spec``; returns the output path.

    ``fmt`` is "svg" or "png"; by default it follows the output suffix and
    falls back to SVG. The output file is only created once the CSV has
    passed schema validation, so failures leave nothing behind.
    """
    fmt = fmt or ("png" if Path(spec.out_path).suffix.lower() == ".png" else "svg")
    if fmt not in ("svg", "png"):
        raise ValueError(f"format must be 'svg' or 'png', got {fmt!r}")
    header, rows = read_table(spec.csv_path)
    check_columns(spec.kind, header)
    col = {name: [row[i] for row in rows] for i, name in enumerate(header)}

    fig = Figure(figsize=(6.4, 4.4), layout="tight")
    ax = fig.add_subplot()
    _DRAW[spec.kind](ax, header, col)
    ax.set_xscale(spec.x_scale)
    ax.set_yscale(spec.y_scale)
    legend = ax.legend(fontsize="small")
    for handle in legend.legend_handles:
        handle.set_gid(None)  # keep series ids counting data markers only
    with mpl.rc_context({"svg.hashsalt": _HASHSALT, "svg.fonttype": "path"}):
        if fmt == "svg":
            fig.savefig(spec.out_path, format="svg", metadata={"Date": None})
        else:
            fig.savefig(spec.out_path, format="png", dpi=150)
    return Path(spec.out_path)


def _draw_fig2(ax, header, col) -> None:
    x = col["r_hard"]
    ax.plot(x, col["eps_untailored"], "-", color="black",
            gid="curve-solid", label="untailored")
    ax.plot(x, col["eps_tailored_gi"], ":", color="tab:blue",
            gid="curve-dotted", label="tailored, gate-independent")
    for name in (c for c in header if c.startswith(GD_PREFIX)):
        rate = name[len(GD_PREFIX):]
        ax.plot(x, col[name], "--", gid=f"curve-dashed-{rate}",
                label=f"tailored, easy-gate r={rate}")
    ax.set_xlabel("hard-gate infidelity r")
    ax.set_ylabel("worst-case error bound")


def _scatter(ax, x, col) -> None:
    ax.plot(x, col["tau_bare"], marker="o", linestyle="none", color="tab:blue",
            markersize=5, gid="series-bare", label="bare")
    ax.plot(x, col["tau_tailored"], marker="s", linestyle="none", color="tab:red",
            markersize=5, gid="series-tailored", label="tailored")
    ax.set_ylabel("total variation error")


def _draw_fig3(ax, header, col) -> None:
    _scatter(ax, col["r_cz"], col)
    ax.set_xlabel("two-qubit gate infidelity")


def _draw_fig4(ax, header, col) -> None:
    _scatter(ax, col["K"], col)
    ax.set_xlabel("cycles")


_DRAW = {"fig2": _draw_fig2, "fig3": _draw_fig3, "fig4": _draw_fig4}
