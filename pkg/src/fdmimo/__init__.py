"""Bi-directional full-duplex MIMO link simulator.

Jointly computes transmit precoders, receive combiners, and minimum TX
powers under per-node SINR targets, with multi-tap analog self-interference
cancellation, and drives seeded Monte-Carlo experiments over the result.
"""

from .config import (DegenerateLinkError, LinkState, SinrTargets, SystemConfig,
                     TX_MODES, ZERO_POWER_DBM, complex_matrix, db_to_linear,
                     dbm_to_mw, linear_to_db, mw_to_dbm)
from .channel import (ChannelSet, draw_channel_set, dump_channel_set,
                      gen_rayleigh, gen_ricean, load_channel_set,
                      rng_from_seed, trial_rng)
from .cancellation import (Canceller, TapMask, build_canceller,
                           residual_channel, select_taps)
from .beamforming import (RqProblem, build_rq_problem, mrt_precoder,
                          rq_combiner, rq_rq_precoder, zf_rq_precoder)
from .power_control import (PfSystem, PowerSolution, build_pf_system,
                            pf_solve, sinr)
from .solver import SolveResult, converged, solve
from .harness import (AggregateRow, CSV_FIELDS, ExperimentSpec, OUTAGE_MODES,
                      TrialOutcome, default_spec, iter_trial_results,
                      load_summary, outage_probability, parse_config_file,
                      read_rows, run_experiment, spec_from_dict, spec_to_dict,
                      write_results, write_summary)

__version__ = "0.1.0"

__all__ = [
    "AggregateRow", "Canceller", "ChannelSet", "CSV_FIELDS",
    "DegenerateLinkError", "ExperimentSpec", "LinkState", "OUTAGE_MODES",
    "PfSystem", "PowerSolution", "RqProblem", "SinrTargets", "SolveResult",
    "SystemConfig", "TapMask", "TrialOutcome", "TX_MODES", "ZERO_POWER_DBM",
    "build_canceller", "build_pf_system", "build_rq_problem", "complex_matrix",
    "converged", "db_to_linear", "dbm_to_mw", "default_spec",
    "draw_channel_set", "dump_channel_set", "gen_rayleigh", "gen_ricean",
    "iter_trial_results", "linear_to_db", "load_channel_set", "load_summary",
    "mrt_precoder", "mw_to_dbm", "outage_probability", "parse_config_file",
    "pf_solve", "read_rows", "residual_channel", "rng_from_seed",
    "rq_combiner", "rq_rq_precoder", "run_experiment", "select_taps", "sinr",
    "solve", "spec_from_dict", "spec_to_dict", "trial_rng", "write_results",
    "write_summary", "zf_rq_precoder",
]
