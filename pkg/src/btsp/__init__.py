"""Exact tools for the bipartite TSP on (relaxed) Van der Veen matrices."""

from .conditions import (ReducedMatrix, Violation, ViolationReport,
                         check_a_system, check_relaxed_van_der_veen,
                         check_van_der_veen, extract_a)
from .core import (DEFAULT_TOLERANCE, FORBIDDEN, Coloring, ColoringError,
                   DeltaValue, DistanceMatrix, MaskedEntryError, PointSet,
                   Tour, TourError, build_matrix, delta, is_feasible_bipartite,
                   is_pyramidal, tour_length, valleys)
from .improvement import (ImproveStepRecord, improve_step,
                          improve_to_pyramidal, minimal_valley_above_one)
from .pyramidal import DpState, dp_trace, solve_pyramidal_btsp
from .recognition import (RecognitionResult, apply_permutations, recognize,
                          recognize_full, select_next_column, select_next_row)
from .reduction import (BipartiteGraph, InstanceTooLargeError,
                        brute_force_btsp, generate_line_instance,
                        has_hamiltonian_cycle, reduce_graph)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCE", "FORBIDDEN", "BipartiteGraph", "Coloring", "ColoringError",
    "DeltaValue", "DistanceMatrix", "DpState", "ImproveStepRecord",
    "InstanceTooLargeError", "MaskedEntryError", "PointSet", "RecognitionResult",
    "ReducedMatrix", "Tour", "TourError", "Violation", "ViolationReport",
    "apply_permutations", "brute_force_btsp", "build_matrix", "check_a_system",
    "check_relaxed_van_der_veen", "check_van_der_veen", "delta", "dp_trace",
    "extract_a", "generate_line_instance", "has_hamiltonian_cycle", "improve_step",
    "improve_to_pyramidal", "is_feasible_bipartite", "is_pyramidal",
    "minimal_valley_above_one", "recognize", "recognize_full", "reduce_graph",
    "select_next_column", "select_next_row", "solve_pyramidal_btsp", "tour_length",
    "valleys",
]
