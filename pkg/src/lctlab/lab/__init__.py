"""Numerical experiments on parameter-dependent quadratic-phase operators."""

from .counterexample import (CounterexampleSpec, counterexample_report, counterexample_values,
                             holder_counterexample, make_phi)
from .global_probe import global_unboundedness_probe, modulated_indicator, witness_bound
from .maximal import (LP_NOTE, MaximalQuery, ae_convergence_fraction, geometric_a_grid,
                      holder_maximal_growth, lp_norm, maximal_estimate, maximal_values)
from .oscillatory import oscillatory_integral, oscillatory_integral_check, oscillatory_lattice
from .report import ExperimentReport, PowerFit, fit_power_law
from .sweep import AlphaProfile, SweepConfig, dual_norm, l2_continuity_sweep, pointwise_probe
from .wavepacket import packet, packet_shape, select_a, wavepacket_probe

__all__ = [
    "AlphaProfile", "CounterexampleSpec", "ExperimentReport", "LP_NOTE", "MaximalQuery",
    "PowerFit", "SweepConfig", "ae_convergence_fraction", "counterexample_report",
    "counterexample_values", "dual_norm", "fit_power_law", "geometric_a_grid",
    "global_unboundedness_probe", "holder_counterexample", "holder_maximal_growth",
    "l2_continuity_sweep", "lp_norm", "make_phi", "maximal_estimate", "maximal_values",
    "modulated_indicator", "oscillatory_integral", "oscillatory_integral_check",
    "oscillatory_lattice", "packet", "packet_shape", "pointwise_probe", "select_a",
    "wavepacket_probe", "witness_bound",
]
