"""Exact coupled-spin multiplet bases for qubits, with entanglement diagnostics.

Builds the simultaneous eigenbasis of the commuting spin operators of any
binary coupling order over n spin-1/2 particles, with every amplitude an
exact signed square root of a rational, and evaluates the measures that
tell GHZ, W and Dicke-type states apart.
"""

from .coupling import (
    HALF,
    CoupledLabel,
    CouplingTree,
    Leaf,
    Node,
    Spin,
    SpinProjection,
    StateVector,
    all_coupling_trees,
    allowed_couplings,
    cg,
    config_from_string,
    config_to_string,
    dense_index,
    enumerate_multiplets,
    expand,
    full_basis,
    projections,
    recouple,
    triangle_ok,
)
from .exactnum import NotClosedError, SignedRadical, radical_sum
from .measures import (
    DensityMatrix,
    MeasurementBasis,
    MeasurementBranch,
    PairReport,
    ThreeQubitClass,
    classify_three_qubit,
    concurrence,
    is_pair_connectable,
    maximal_connectedness,
    measure_branches,
    meyer_wallach_q,
    partial_trace,
    persistency,
    three_tangle,
)
from .operators import (
    LabeledOperator,
    SparseOperator,
    apply,
    commuting_set,
    joint_eigenbasis,
    site_operator,
    subset_casimir,
    total_sz,
    verify_eigenstate,
)
from .registry import available_states, named_state
from .report import emit_table, run_measures, run_verify
from .statefile import StateFileError, emit_state_file, parse_state_file

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "NotClosedError",
    "SignedRadical",
    "radical_sum",
    "Spin",
    "SpinProjection",
    "HALF",
    "projections",
    "triangle_ok",
    "allowed_couplings",
    "cg",
    "Leaf",
    "Node",
    "CouplingTree",
    "all_coupling_trees",
    "CoupledLabel",
    "StateVector",
    "dense_index",
    "config_to_string",
    "config_from_string",
    "enumerate_multiplets",
    "expand",
    "full_basis",
    "recouple",
    "SparseOperator",
    "LabeledOperator",
    "site_operator",
    "subset_casimir",
    "total_sz",
    "apply",
    "verify_eigenstate",
    "commuting_set",
    "joint_eigenbasis",
    "DensityMatrix",
    "MeasurementBasis",
    "MeasurementBranch",
    "PairReport",
    "ThreeQubitClass",
    "partial_trace",
    "meyer_wallach_q",
    "concurrence",
    "three_tangle",
    "classify_three_qubit",
    "measure_branches",
    "persistency",
    "is_pair_connectable",
    "maximal_connectedness",
    "named_state",
    "available_states",
    "parse_state_file",
    "emit_state_file",
    "StateFileError",
    "emit_table",
    "run_verify",
    "run_measures",
]
