from .engine import (CompressibleMove, GameState, Transcript, Violation,
                     replay_transcript, run_match, transcript_from_json,
                     validate_compressible_move)
from .moves import MoveSolver
from .separators import (CordonQueryResult, cordon_query, cyclic_row_intervals,
                         diam, find_I_periodic_path, find_virtual_cordon,
                         is_a_separating, is_critical, is_I_separating,
                         is_vertex_separator, minimal_virtual_cordons,
                         path_edges)
from .strategies import (LockstepCops, ScriptedRobber, RandomCops, RandomRobber,
                         RefutationCops)
from .twisting import (Twisting, edge_robber_caught, singleton_incident_edges,
                       translate_vr_transcript, validate_twisting,
                       vr_move_to_twisting)

__all__ = [
    "CompressibleMove", "GameState", "Transcript", "Violation",
    "replay_transcript", "run_match", "transcript_from_json",
    "validate_compressible_move", "MoveSolver", "CordonQueryResult",
    "cordon_query", "cyclic_row_intervals", "diam", "find_I_periodic_path",
    "find_virtual_cordon", "is_a_separating", "is_critical",
    "is_I_separating", "is_vertex_separator", "minimal_virtual_cordons",
    "path_edges", "LockstepCops", "ScriptedRobber", "RandomCops", "RandomRobber",
    "RefutationCops", "Twisting", "edge_robber_caught",
    "singleton_incident_edges", "translate_vr_transcript",
    "validate_twisting", "vr_move_to_twisting",
]
