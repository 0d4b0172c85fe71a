"""Simultaneous conjugacy in Garside groups, instantiated for braid groups.

Public surface: the two braid structures (classical and band-generator),
normal-form element arithmetic, interval orbit computation, the
lexicographic super-summit invariants, SCP decision/search, the protocol
reductions, and the benchmark harness.
"""

from .braids import (
    ArtinStructure,
    BKLStructure,
    artin_structure,
    bkl_structure,
    enumerate_simples,
    structure_for,
)
from .core import (
    Element,
    GarsideStructure,
    Interval,
    TupleElement,
    box_of,
    complement,
    conjugate,
    conjugate_by_simple,
    conjugate_tuple_by_simple,
    decode_element,
    decode_tuple,
    delta_meet,
    delta_power,
    element_from_json,
    element_to_json,
    element_to_word,
    encode_element,
    encode_tuple,
    exp_sum,
    identity_element,
    in_interval,
    inverse,
    lattice,
    make_element,
    multiply,
    partial,
    simple_element,
    tau_power,
    validate_element,
)
from .solver import (
    ConjResult,
    InvariantResult,
    MinimalIntervalResult,
    OrbitSet,
    SlidingTarget,
    conj_to_interval,
    invariant_set,
    invariant_set_detail,
    lex_minimal_interval,
    min_simple,
    minimal_simple_set,
    mod_tau_reduce,
    normalize_kind,
    orbit_in_interval,
    scp_decide,
    scp_search,
    sliding_element,
)
from .reductions import (
    CountingOracle,
    ProblemInstance,
    SubgroupSpec,
    centralizer_protocol_recover,
    commutator_recover,
    dh_recover,
    double_coset_recover,
    gen_instance,
    normalize_problem,
    run_recovery,
)
from .bench import (
    KINDS,
    ConjugatePair,
    ExperimentConfig,
    StatRow,
    default_word_length,
    emit,
    random_conjugate_pair,
    random_element,
    run_experiment,
    table1_rows,
    table2_rows,
    trial_seed,
)
from . import errors

__all__ = [
    "KINDS",
    "ConjResult",
    "ConjugatePair",
    "CountingOracle",
    "ExperimentConfig",
    "InvariantResult",
    "MinimalIntervalResult",
    "OrbitSet",
    "ProblemInstance",
    "SlidingTarget",
    "StatRow",
    "SubgroupSpec",
    "centralizer_protocol_recover",
    "commutator_recover",
    "conj_to_interval",
    "default_word_length",
    "dh_recover",
    "double_coset_recover",
    "emit",
    "gen_instance",
    "invariant_set",
    "invariant_set_detail",
    "lex_minimal_interval",
    "min_simple",
    "minimal_simple_set",
    "mod_tau_reduce",
    "normalize_kind",
    "normalize_problem",
    "orbit_in_interval",
    "random_conjugate_pair",
    "random_element",
    "run_experiment",
    "run_recovery",
    "scp_decide",
    "scp_search",
    "sliding_element",
    "table1_rows",
    "table2_rows",
    "trial_seed",
    "ArtinStructure",
    "BKLStructure",
    "Element",
    "GarsideStructure",
    "Interval",
    "TupleElement",
    "artin_structure",
    "bkl_structure",
    "box_of",
    "complement",
    "conjugate",
    "conjugate_by_simple",
    "conjugate_tuple_by_simple",
    "decode_element",
    "decode_tuple",
    "delta_meet",
    "delta_power",
    "element_from_json",
    "element_to_json",
    "element_to_word",
    "encode_element",
    "encode_tuple",
    "enumerate_simples",
    "errors",
    "exp_sum",
    "identity_element",
    "in_interval",
    "inverse",
    "lattice",
    "make_element",
    "multiply",
    "partial",
    "simple_element",
    "structure_for",
    "tau_power",
    "validate_element",
]
