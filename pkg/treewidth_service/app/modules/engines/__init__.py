from .column_engine import ColumnEngine, cols_perm, run_columns
from .dispatcher import (
    ENGINES,
    FUNCTIONS,
    ComputeResult,
    DecompositionSource,
    compute,
    has_structural_matching,
    reference_value,
    signature_for,
)
from .engine_run import EngineRun, EngineStats, sweep
from .generalized_engine import GeneralizedEngine, generalized_engine, run_generalized

__all__ = [
    "ColumnEngine",
    "cols_perm",
    "run_columns",
    "ENGINES",
    "FUNCTIONS",
    "ComputeResult",
    "DecompositionSource",
    "compute",
    "has_structural_matching",
    "reference_value",
    "signature_for",
    "EngineRun",
    "EngineStats",
    "sweep",
    "GeneralizedEngine",
    "generalized_engine",
    "run_generalized",
]
