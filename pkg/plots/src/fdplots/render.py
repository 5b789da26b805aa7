"""Line-figure rendering over the experiment CSV contract.

Reads aggregate CSVs (one row per (tx_mode, target_rate, p_max_dbm) cell),
groups rows into one series per precoder mode, and writes static PNG + SVG
figures.  Inputs are read-only and validation happens before any file is
written, so a failed render leaves no partial outputs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # batch renderer, never needs a display
import matplotlib.pyplot as plt  # noqa: E402

#: axis labels (with units) for the known CSV columns
FIELD_LABELS = {
    "target_rate": "Target rate [bps/Hz]",
    "p_max_dbm": "Available TX power P_max [dBm]",
    "mean_tx_power_dbm": "Average TX power [dBm]",
    "mean_residual_si_dbm": "Average residual SI power [dBm]",
    "outage_prob": "TX power outage probability",
    "mean_runtime_s": "Average run time [s]",
    "mean_iterations": "Average iterations",
    "convergence_rate": "Convergence rate",
}

Y_SCALES = ("linear", "dB")


@dataclass(frozen=True)
class FigureSpec:
    """One figure: which CSV, which columns, where the images go.

    ``output_path`` is the stem; render writes ``<stem>.png`` and
    ``<stem>.svg``.  ``y_scale`` is "dB" when the column already holds
    decibel values and "linear" otherwise.
    """

    input_csv: Path
    x_field: str
    y_field: str
    series_field: str = "tx_mode"
    y_scale: str = "dB"
    output_path: Path = Path("figure")

    def __post_init__(self):
        if self.y_scale not in Y_SCALES:
            raise ValueError(f"y_scale must be one of {Y_SCALES}, got {self.y_scale!r}")
        object.__setattr__(self, "input_csv", Path(self.input_csv))
        object.__setattr__(self, "output_path", Path(self.output_path))


def _label(field: str) -> str:
    return FIELD_LABELS.get(field, field)


def read_series(spec: FigureSpec) -> dict[str, list[tuple[float, float]]]:
    """Parse the CSV into {series name: [(x, y), ...]} sorted by x.

    Raises ValueError when a referenced column is missing from the header or
    when the file holds no data rows.
    """
    try:
        with open(spec.input_csv, newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [f for f in (spec.x_field, spec.y_field, spec.series_field)
                       if f not in header]
            if missing:
                raise ValueError(
                    f"{spec.input_csv}: missing column(s) {', '.join(missing)}")
            rows = list(reader)
    except OSError as exc:
        raise OSError(f"failed to read {spec.input_csv}: {exc}") from exc
    if not rows:
        raise ValueError(f"{spec.input_csv}: no data rows to plot")
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        series.setdefault(row[spec.series_field], []).append(
            (float(row[spec.x_field]), float(row[spec.y_field])))
    for points in series.values():
        points.sort(key=lambda p: p[0])
    return series


def render(spec: FigureSpec) -> list[Path]:
    """Render one figure and return the written image paths (PNG and SVG)."""
    series = read_series(spec)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    try:
        for name in sorted(series):
            xs, ys = zip(*series[name])
            ax.plot(xs, ys, marker="o", label=name)
        ax.set_xlabel(_label(spec.x_field))
        ax.set_ylabel(_label(spec.y_field))
        if spec.y_field == "outage_prob":
            ax.set_ylim(0.0, 1.0)
        ax.grid(True, alpha=0.4)
        ax.legend()
        fig.tight_layout()
        out = []
        spec.output_path.parent.mkdir(parents=True, exist_ok=True)
        for suffix in (".png", ".svg"):
            path = spec.output_path.with_suffix(suffix)
            fig.savefig(path)
            out.append(path)
        return out
    finally:
        plt.close(fig)


#: the three standard figures over the harness output files
STANDARD_FIGURES = (
    ("figure2", "figure2.csv", "target_rate", "mean_tx_power_dbm", "dB"),
    ("figure3", "figure3.csv", "target_rate", "mean_residual_si_dbm", "dB"),
    ("figure4", "figure4.csv", "p_max_dbm", "outage_prob", "linear"),
)


def render_standard(results_dir, figures_dir) -> list[Path]:
    """Render the TX-power, residual-SI, and outage figures from a results
    directory.  Every expected CSV must be present."""
    results_dir = Path(results_dir)
    figures_dir = Path(figures_dir)
    written: list[Path] = []
    for name, csv_name, x_field, y_field, y_scale in STANDARD_FIGURES:
        csv_path = results_dir / csv_name
        if not csv_path.exists():
            raise FileNotFoundError(f"expected results file {csv_path} not found")
        spec = FigureSpec(input_csv=csv_path, x_field=x_field, y_field=y_field,
                          y_scale=y_scale, output_path=figures_dir / name)
        written.extend(render(spec))
    return written
