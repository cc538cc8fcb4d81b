"""semidlog: cycle structure and discrete logarithms for torsion elements
of finite semigroups, with instrumented algorithm variants and a CLI."""

from .core import (
    CollisionTable,
    CycleStructure,
    IncompatibleElementError,
    NoSolutionError,
    OracleFailureError,
    SemigroupContext,
    SemigroupError,
    build_power_table,
    canonical_key,
    find_matches,
    multiply,
    power,
)
from .cycle import (
    Alg4Trace,
    BaninTrace,
    MonicoTrace,
    banin_tsaban_cycle_length,
    brute_force_cycle,
    cycle_start_search,
    cycle_structure,
    deterministic_cycle_length,
    group_dlog_oracle,
    monico_cycle_length,
    monico_strip,
)
from .dlp import (
    DlogSolution,
    DlogTrace,
    GroupView,
    PohligHellmanTrace,
    bsgs_group_dlog,
    crt_combine,
    factor_integer,
    in_group,
    inverse_in_group,
    make_group_view,
    pohlig_hellman_dlog,
    semigroup_dlog,
    solution_set,
)
from .instances import (
    BoolMatContext,
    ElementSpecError,
    MatModContext,
    MonogenicContext,
    TransformationContext,
    ZModContext,
    make_context,
    parse_element_spec,
    random_element,
)

__version__ = "0.1.0"

__all__ = [
    "Alg4Trace",
    "BaninTrace",
    "BoolMatContext",
    "CollisionTable",
    "CycleStructure",
    "DlogSolution",
    "DlogTrace",
    "ElementSpecError",
    "GroupView",
    "IncompatibleElementError",
    "MatModContext",
    "MonicoTrace",
    "MonogenicContext",
    "NoSolutionError",
    "OracleFailureError",
    "PohligHellmanTrace",
    "SemigroupContext",
    "SemigroupError",
    "TransformationContext",
    "ZModContext",
    "banin_tsaban_cycle_length",
    "brute_force_cycle",
    "bsgs_group_dlog",
    "build_power_table",
    "canonical_key",
    "crt_combine",
    "cycle_start_search",
    "cycle_structure",
    "deterministic_cycle_length",
    "factor_integer",
    "find_matches",
    "group_dlog_oracle",
    "in_group",
    "inverse_in_group",
    "make_context",
    "make_group_view",
    "monico_cycle_length",
    "monico_strip",
    "multiply",
    "parse_element_spec",
    "pohlig_hellman_dlog",
    "power",
    "random_element",
    "semigroup_dlog",
    "solution_set",
]
