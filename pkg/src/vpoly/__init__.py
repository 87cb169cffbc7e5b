"""Potts partition functions with external magnetic field.

Weighted-graph polynomials in edge and weight variables, point evaluation
by dynamic programming, zero counting over prime fields, and torus-class
recursions for banana graphs.
"""

from .errors import (CapExceededError, ContractLoopError, EvaluationError,
                     InputError, VpolyError)
from .graph_model import (ComponentDecomposition, Weight, WeightedGraph,
                          banana_graph, build_family, cycle_graph,
                          full_binary_tree, graph_from_json, graph_to_json,
                          line_graph, one_plus_1_over_n_tree)
from .multipoly import (Assignment, MultiPoly, VarKey, evaluate, parse_poly,
                        variables_of)
from .vpolynomial import dc_polynomial, doubled_edge_polynomial, fk_polynomial
from .evaluators import (GadgetInstance, OpCounter, build_partition_gadget,
                         build_partition_gadget_general, decide_half_partition,
                         eval_cycle, eval_generic, eval_line, eval_tree,
                         physical_partition_function, physical_via_symbolic,
                         subset_sum_half_oracle)
from .ffcount import (CountabilityReport, CountReport, count_curve_f,
                      count_zeros, countability_test)
from .groth_classes import (TorusPoly, banana_base, banana_closed,
                            banana_recursion, class_to_count,
                            closed_from_bases, euler_char_c, no_field_banana)

__version__ = "0.1.0"

__all__ = [
    "Assignment", "CapExceededError", "ComponentDecomposition",
    "ContractLoopError", "CountReport", "CountabilityReport",
    "EvaluationError", "GadgetInstance", "InputError", "MultiPoly",
    "OpCounter", "TorusPoly", "VarKey", "VpolyError", "Weight",
    "WeightedGraph", "banana_base", "banana_closed", "banana_graph",
    "banana_recursion", "build_family", "build_partition_gadget",
    "build_partition_gadget_general", "class_to_count", "closed_from_bases",
    "count_curve_f", "count_zeros", "countability_test", "cycle_graph",
    "dc_polynomial", "decide_half_partition", "doubled_edge_polynomial",
    "euler_char_c", "eval_cycle", "eval_generic", "eval_line", "eval_tree",
    "evaluate", "fk_polynomial", "full_binary_tree", "graph_from_json",
    "graph_to_json", "line_graph", "no_field_banana",
    "one_plus_1_over_n_tree", "parse_poly", "physical_partition_function",
    "physical_via_symbolic", "subset_sum_half_oracle", "variables_of",
]
