"""Link-level simulation of multi-RISS sensing and communication."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DegenerateGeometryError,
    InfeasiblePlacementError,
    InvalidInputError,
    OracleInfeasibleError,
    RissSimError,
)
from .scene import Scenario, default_scenario, load_scenario  # noqa: E402

__all__ = [
    "ConfigError",
    "DegenerateGeometryError",
    "InfeasiblePlacementError",
    "InvalidInputError",
    "OracleInfeasibleError",
    "RissSimError",
    "Scenario",
    "default_scenario",
    "load_scenario",
]
