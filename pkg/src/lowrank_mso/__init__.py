"""Model checking for low rank MSO and flip-reachability logics, with the cutrank,
flip, suffix and seed machinery they are built on."""

from .bitset import VertexSet
from .errors import (CapExceeded, FormulaError, InputError, LowRankError, NotASeparation,
                     NotASuffix, TooLarge)
from .evaluator import (Assignment, EvalConfig, Evaluator, check_freach_suffix_duality,
                        compile_conn_to_flipconn, compile_flipconn_to_flipreach, evaluate)
from .flips import (AtomicType, FlipSpec, Pattern, apply_flip, atomic_type, build_h_digraph,
                    complement_spec, identity_spec, s_operation_flip, s_operation_separator)
from .graph import ColoredGraph, Digraph, generate, load_graph, parse_graph, random_graph
from .logic import parse_formula, validate
from .lowrank import (Seed, SuffixFamily, brute_lowrank, find_isolating_flip, lowrank_via_suffixes,
                      seed_for_suffix, seed_from_params, span, span_contains, suffixes)
from .rank import (capture_separation, check_duality, cutrank, rank_measures, representatives,
                   twin_reduce, vc_dimension)
from .scc import condense

__all__ = [name for name in dir() if not name.startswith("_")]
