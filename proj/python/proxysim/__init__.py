"""Python bindings for the proxysim cache simulator and Zipf demand model."""

from ._core import (
    AccessOutcome,
    BandwidthParams,
    ComparisonRow,
    ObjectAttributes,
    SimConfig,
    SimReport,
    Workload,
    ZipfCatalog,
    aggregate_bandwidth,
    assign_attributes,
    bandwidth_per_rank,
    compare_analytic,
    fit_power_law,
    generalized_harmonic,
    generate_workload,
    hit_miss_on_demand,
    load_trace,
    miss_probability,
    power_modulus,
    rank_histogram,
    run_policy,
    run_simulation,
    save_trace,
    sweep,
    top_c_mass,
    top_c_mass_asymptotic,
    zeta_partial_terms,
)

DEFAULT_ALPHAS = (0.98, 0.75, 0.64, 0.51, 0.41, 0.31)

__all__ = [name for name in dir() if not name.startswith("_")]
