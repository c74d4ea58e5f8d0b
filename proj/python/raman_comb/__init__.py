"""Quantum statistics of multiorder Raman sidebands."""

from ._core import (
    CapacityError,
    ConfigError,
    DomainError,
    ModeState,
    RangeError,
    SidebandWindow,
    SingleModeScenario,
    TruncationError,
    TwoModeScenario,
    UndefinedStatistic,
    WindowTooSmall,
    analytic_record,
    bessel_j,
    bessel_row,
    coincidence_01,
    input_squeezing_factor,
    interference_zeros,
    normalized_autocorrelation,
    oracle_record,
    photon_number_distribution,
    recommend_window,
    run_config,
    two_photon_probabilities,
)

__all__ = [name for name in dir() if not name.startswith("_")]
