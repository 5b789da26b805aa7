"""Monte-Carlo experiment driver.

Sweeps precoder modes, target rates, and power caps over a seeded channel
ensemble, aggregates per-combination statistics, and writes the CSV / JSON
result files consumed by the plotting layer.  Trials are embarrassingly
parallel; aggregation reduces in fixed trial order so parallel and serial
runs produce identical numbers (runtime columns aside).

Averaging conventions: TX power and residual SI are averaged in linear mW
over trials and both nodes before conversion to dBm.
"""

from __future__ import annotations

import dataclasses
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from pathlib import Path

import numpy as np

from .cancellation import build_canceller, select_taps
from .channel import draw_channel_set, trial_rng
from .config import (SinrTargets, SystemConfig, TX_MODES, ZERO_POWER_DBM,
                     dbm_to_mw, mw_to_dbm)
from .solver import SolveResult, solve

OUTAGE_MODES = ("min", "max")


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to reproduce one experiment run."""

    base: SystemConfig = SystemConfig()
    target_rates_bps_hz: tuple = (2.0, 4.0, 6.0, 8.0)
    p_max_sweep_dbm: tuple = (30.0,)
    n_trials: int = 500
    master_seed: int = 12345
    tx_modes: tuple = TX_MODES
    output_dir: str = "results"
    outage_mode: str = "min"  # "min" is the literal definition; "max" flags either node

    def __post_init__(self):
        object.__setattr__(self, "target_rates_bps_hz",
                           tuple(float(r) for r in self.target_rates_bps_hz))
        object.__setattr__(self, "p_max_sweep_dbm",
                           tuple(float(p) for p in self.p_max_sweep_dbm))
        object.__setattr__(self, "tx_modes", tuple(str(m) for m in self.tx_modes))
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        if not self.target_rates_bps_hz or any(r <= 0 for r in self.target_rates_bps_hz):
            raise ValueError("target rates must be a non-empty list of positive values")
        if not self.p_max_sweep_dbm:
            raise ValueError("p_max sweep must be non-empty")
        if not self.tx_modes or any(m not in TX_MODES for m in self.tx_modes):
            raise ValueError(f"tx_modes must be a non-empty subset of {TX_MODES}")
        if self.outage_mode not in OUTAGE_MODES:
            raise ValueError(f"outage_mode must be one of {OUTAGE_MODES}")


@dataclass(frozen=True)
class AggregateRow:
    """One aggregated (mode, rate, cap) cell of an experiment."""

    tx_mode: str
    target_rate: float
    p_max_dbm: float
    mean_tx_power_dbm: float
    mean_residual_si_dbm: float
    outage_prob: float
    convergence_rate: float
    mean_iterations: float
    mean_runtime_s: float


CSV_FIELDS = tuple(f.name for f in dataclasses.fields(AggregateRow))

#: columns allowed to differ between repeated runs of the same spec
RUNTIME_FIELDS = ("mean_runtime_s",)


@dataclass(frozen=True)
class TrialOutcome:
    """One solve inside an experiment, tagged with its sweep coordinates."""

    tx_mode: str
    target_rate: float
    p_max_dbm: float
    trial: int
    result: SolveResult


def _combos(spec: ExperimentSpec) -> list[tuple[str, float, float]]:
    return [(mode, rate, p_max)
            for mode in spec.tx_modes
            for rate in spec.target_rates_bps_hz
            for p_max in spec.p_max_sweep_dbm]


def _run_trial(spec: ExperimentSpec, trial: int) -> list[TrialOutcome]:
    """All solves of one trial: one channel + canceller realization shared
    across every (mode, rate, cap) combination."""
    rng = trial_rng(spec.master_seed, trial, stream=0)
    base = spec.base
    ch = draw_channel_set(base, rng)
    canc_1 = build_canceller(ch.h_11, select_taps(ch.h_11, base.n_tap),
                             base.amp_imp_db, base.phase_imp_deg, rng)
    canc_2 = build_canceller(ch.h_22, select_taps(ch.h_22, base.n_tap),
                             base.amp_imp_db, base.phase_imp_deg, rng)
    out = []
    for mode, rate, p_max in _combos(spec):
        cfg = replace(base, p_max_dbm=p_max)
        res = solve(cfg, ch, (canc_1, canc_2), SinrTargets.from_rate(rate),
                    trial_rng(spec.master_seed, trial, stream=1), mode)
        out.append(TrialOutcome(tx_mode=mode, target_rate=rate, p_max_dbm=p_max,
                                trial=trial, result=res))
    return out


def iter_trial_results(spec: ExperimentSpec, n_workers: int = 1):
    """Yield every TrialOutcome of the experiment in trial-major order."""
    if n_workers <= 1:
        for trial in range(spec.n_trials):
            yield from _run_trial(spec, trial)
    else:
        chunk = max(1, spec.n_trials // (4 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            for recs in pool.map(partial(_run_trial, spec), range(spec.n_trials),
                                 chunksize=chunk):
                yield from recs


def outage_probability(results: list[SolveResult], p_max_mw: float,
                       mode: str = "min") -> float:
    """Fraction of results whose required TX power exceeds the cap.

    The default follows the literal definition min(P1, P2) > p_max;
    mode="max" instead flags realizations where either node exceeds it.
    """
    if not results:
        raise ValueError("outage probability of an empty result list is undefined")
    if mode not in OUTAGE_MODES:
        raise ValueError(f"outage mode must be one of {OUTAGE_MODES}")
    pick = np.min if mode == "min" else np.max
    hits = sum(1 for r in results if float(pick(r.state.p)) > p_max_mw)
    return hits / len(results)


def _to_dbm_or_floor(mean_mw: float) -> float:
    return mw_to_dbm(mean_mw) if mean_mw > 0.0 else ZERO_POWER_DBM


def _aggregate(mode: str, rate: float, p_max_dbm: float,
               results: list[SolveResult], outage_mode: str) -> AggregateRow:
    powers = np.array([r.state.p for r in results])             # (n, 2) mW
    resid = np.array([dbm_to_mw(x) for r in results for x in r.residual_si_dbm])
    return AggregateRow(
        tx_mode=mode,
        target_rate=rate,
        p_max_dbm=p_max_dbm,
        mean_tx_power_dbm=_to_dbm_or_floor(float(powers.mean())),
        mean_residual_si_dbm=_to_dbm_or_floor(float(resid.mean())),
        outage_prob=outage_probability(results, dbm_to_mw(p_max_dbm), outage_mode),
        convergence_rate=float(np.mean([r.converged for r in results])),
        mean_iterations=float(np.mean([r.iterations for r in results])),
        mean_runtime_s=float(np.mean([r.wall_time_s for r in results])),
    )


def run_experiment(spec: ExperimentSpec, n_workers: int = 1) -> list[AggregateRow]:
    """Run the full sweep and aggregate one row per (mode, rate, cap)."""
    buckets: dict[tuple, list[SolveResult]] = {c: [] for c in _combos(spec)}
    for rec in iter_trial_results(spec, n_workers):
        buckets[(rec.tx_mode, rec.target_rate, rec.p_max_dbm)].append(rec.result)
    return [_aggregate(mode, rate, p_max, results, spec.outage_mode)
            for (mode, rate, p_max), results in buckets.items()]


# ---------------------------------------------------------------------------
# result files
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def write_results(rows: list[AggregateRow], csv_path, spec: ExperimentSpec | None = None) -> None:
    """Write aggregate rows as CSV (header + %.6g floats, fields in
    AggregateRow order); when a spec is given, also write summary.json next
    to the CSV for provenance."""
    csv_path = Path(csv_path)
    try:
        with open(csv_path, "w", newline="") as fh:
            fh.write(",".join(CSV_FIELDS) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(getattr(row, f)) for f in CSV_FIELDS) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write {csv_path}: {exc}") from exc
    if spec is not None:
        write_summary(spec, csv_path.parent / "summary.json")


def read_rows(csv_path) -> list[AggregateRow]:
    """Read back a CSV written by :func:`write_results`."""
    lines = Path(csv_path).read_text().strip().split("\n")
    header = tuple(lines[0].split(","))
    if header != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header in {csv_path}: {header}")
    rows = []
    for line in lines[1:]:
        vals = line.split(",")
        rows.append(AggregateRow(tx_mode=vals[0],
                                 **{f: float(v) for f, v in zip(CSV_FIELDS[1:], vals[1:])}))
    return rows


def spec_to_dict(spec: ExperimentSpec) -> dict:
    d = dataclasses.asdict(spec)
    d["target_rates_bps_hz"] = list(spec.target_rates_bps_hz)
    d["p_max_sweep_dbm"] = list(spec.p_max_sweep_dbm)
    d["tx_modes"] = list(spec.tx_modes)
    return d


def spec_from_dict(d: dict) -> ExperimentSpec:
    base = SystemConfig(**d["base"])
    rest = {k: v for k, v in d.items() if k != "base"}
    return ExperimentSpec(base=base, **rest)


def write_summary(spec: ExperimentSpec, path) -> None:
    """JSON provenance record embedding the full experiment spec."""
    payload = {
        "spec": spec_to_dict(spec),
        "conventions": {
            "power_averaging": "linear mW over trials and both nodes, then dBm",
            "residual_si_floor_dbm": ZERO_POWER_DBM,
            "outage_definition": f"{spec.outage_mode}(P1, P2) > P_max",
        },
    }
    try:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc


def load_summary(path) -> ExperimentSpec:
    """Recover the ExperimentSpec embedded in a summary.json."""
    return spec_from_dict(json.loads(Path(path).read_text())["spec"])


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

_CONFIG_INT = ("M", "N", "n_tap", "max_iter")
_CONFIG_FLOAT = ("noise_floor_dbm", "p_max_dbm", "pl_link_db", "pl_si_db",
                 "k_factor_db", "amp_imp_db", "phase_imp_deg", "conv_tol")
_SPEC_INT = ("n_trials", "master_seed")
_SPEC_FLOAT_LIST = ("target_rates_bps_hz", "p_max_sweep_dbm")
_SPEC_STR_LIST = ("tx_modes",)
_SPEC_STR = ("output_dir", "outage_mode")
_ALL_KEYS = (_CONFIG_INT + _CONFIG_FLOAT + _SPEC_INT + _SPEC_FLOAT_LIST
             + _SPEC_STR_LIST + _SPEC_STR)


def default_spec() -> ExperimentSpec:
    """The bundled desk-scale experiment configuration."""
    return ExperimentSpec()


def parse_config_file(path) -> ExperimentSpec:
    """Parse a flat ``key = value`` experiment config.

    Keys mirror the ExperimentSpec fields with the SystemConfig fields
    flattened in; lists are comma-separated; '#' starts a comment.  Unknown
    keys are rejected.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().split("\n"), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in raw:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    unknown = sorted(set(raw) - set(_ALL_KEYS))
    if unknown:
        raise ValueError(f"{path}: unknown config keys: {', '.join(unknown)}")

    cfg_kwargs: dict = {}
    spec_kwargs: dict = {}
    for key, value in raw.items():
        if key in _CONFIG_INT:
            cfg_kwargs[key] = int(value)
        elif key in _CONFIG_FLOAT:
            cfg_kwargs[key] = float(value)
        elif key in _SPEC_INT:
            spec_kwargs[key] = int(value)
        elif key in _SPEC_FLOAT_LIST:
            spec_kwargs[key] = tuple(float(v) for v in value.split(",") if v.strip())
        elif key in _SPEC_STR_LIST:
            spec_kwargs[key] = tuple(v.strip() for v in value.split(",") if v.strip())
        else:
            spec_kwargs[key] = value
    return ExperimentSpec(base=SystemConfig(**cfg_kwargs), **spec_kwargs)
