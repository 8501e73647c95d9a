"""Photon blockade in a spinning Kerr resonator (Python bindings)."""

from ._spinkerr import (  # noqa: F401
    CSV_HEADER,
    Classification,
    CorrelationReport,
    DegenerateParameter,
    DegenerateSystem,
    DensityMatrix,
    DriveSide,
    Error,
    FockSpace,
    InvalidDetuning,
    InvalidParameter,
    ModelParams,
    PhysicalConfig,
    ResonanceCheck,
    StepSizeError,
    SteadyStateReport,
    SweepRow,
    TruncationFailure,
    UndefinedCorrelation,
    builtin_scenario_names,
    classify,
    correlations,
    decay_rate,
    drive_amplitude,
    fizeau_shift,
    g2_analytic,
    g3_analytic,
    hamiltonian,
    kerr_strength,
    model_params,
    resonance_compatibility,
    run_point,
    run_scenario,
    scenario_json,
    steady_state,
    weak_drive_g2,
)

__version__ = "0.1.0"
