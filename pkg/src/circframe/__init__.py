"""circframe: topological net routing via the Circular Frame transform.

A bounded routing environment is cut open along a boundary-anchored forest,
nets are connected by non-crossing chords through the resulting frame,
their topological classes are read off, and each class is embedded back in
the plane as a rubber-band sketch of tangent lines and arcs.  Grid A*
routers and a benchmark harness are included for comparison.
"""

from .bench import ExperimentConfig, ExperimentResult, run_experiment
from .forest import Forest, ForestConstructionError, build_forest
from .frame import Frame, RoutedFrame, cut, glue
from .geometry import (
    Environment,
    EnvironmentGenerationError,
    Net,
    PlanePoint,
    RectBoundary,
    derive_environment_seed,
    generate_environment,
)
from .gridastar import GridRouteResult, route_env_astar
from .router import (
    RoutingError,
    RoutingStrategy,
    TopologicalClass,
    extract_all_classes,
    route_all,
    route_net,
)
from .sketch import (
    SketchConfig,
    SketchPath,
    find_crossings,
    path_length,
    sketch_all,
    sketch_path,
)

__version__ = "0.1.0"

__all__ = [
    "Environment", "EnvironmentGenerationError", "Net", "PlanePoint",
    "RectBoundary", "generate_environment", "derive_environment_seed",
    "Forest", "ForestConstructionError", "build_forest",
    "Frame", "RoutedFrame", "cut", "glue",
    "RoutingStrategy", "RoutingError", "TopologicalClass",
    "route_net", "route_all", "extract_all_classes",
    "SketchConfig", "SketchPath", "sketch_path", "sketch_all",
    "path_length", "find_crossings",
    "GridRouteResult", "route_env_astar",
    "ExperimentConfig", "ExperimentResult", "run_experiment",
    "__version__",
]
