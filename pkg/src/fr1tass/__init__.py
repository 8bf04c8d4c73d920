"""Workbench for freezing one-tag systems with states."""

from .exceptions import (
    AlphabetMismatchError,
    CycleError,
    ErasingInputError,
    Fr1tassError,
    IndexOutOfRangeError,
    LimitExceededError,
    ModeError,
    PcpInstanceError,
    PreconditionError,
)
from .gallery import (
    GALLERY,
    PcpInstance,
    balance_ab_et,
    center_language,
    encode_pcp_candidate,
    marked_copy,
    parse_pcp_instance,
    pcp_machine,
    power_of_two,
    random_unary_noaux,
)
from .model import (
    Machine,
    Mode,
    OrderedAlphabet,
    ParseError,
    Violation,
    ViolationCode,
    make_machine,
    parse_machine,
    serialize_machine,
    to_dot,
    validate,
)
from .oracle import (
    Counterexample,
    UnaryClass,
    UnaryKind,
    classify_unary_noaux,
    enumerate_accepted,
    equivalent_up_to,
    has_strongly_equivalent_states,
    matches_predicate_up_to,
)
from .simulate import (
    RunLimits,
    RunResult,
    SweepCase,
    SweepRecord,
    Verdict,
    accepts,
    flatten_trace,
    initial_configuration,
    run,
    step,
    sweep_bound,
)
from .transform import (
    DfaSpec,
    PartialOrderSpec,
    as_to_et,
    complement,
    dfa_accepts,
    et_to_as,
    from_dfa,
    intersect,
    intersect_sequential,
    linear_extension,
    parse_dfa,
    remove_erasing,
    union,
    union_sequential,
)

__all__ = [
    "AlphabetMismatchError",
    "Counterexample",
    "CycleError",
    "DfaSpec",
    "ErasingInputError",
    "Fr1tassError",
    "GALLERY",
    "IndexOutOfRangeError",
    "LimitExceededError",
    "Machine",
    "Mode",
    "ModeError",
    "OrderedAlphabet",
    "ParseError",
    "PartialOrderSpec",
    "PcpInstance",
    "PcpInstanceError",
    "PreconditionError",
    "RunLimits",
    "RunResult",
    "SweepCase",
    "SweepRecord",
    "UnaryClass",
    "UnaryKind",
    "Verdict",
    "Violation",
    "ViolationCode",
    "accepts",
    "as_to_et",
    "balance_ab_et",
    "center_language",
    "classify_unary_noaux",
    "complement",
    "dfa_accepts",
    "encode_pcp_candidate",
    "enumerate_accepted",
    "equivalent_up_to",
    "et_to_as",
    "flatten_trace",
    "from_dfa",
    "has_strongly_equivalent_states",
    "initial_configuration",
    "intersect",
    "intersect_sequential",
    "linear_extension",
    "make_machine",
    "marked_copy",
    "matches_predicate_up_to",
    "parse_dfa",
    "parse_machine",
    "parse_pcp_instance",
    "pcp_machine",
    "power_of_two",
    "random_unary_noaux",
    "remove_erasing",
    "run",
    "serialize_machine",
    "step",
    "sweep_bound",
    "to_dot",
    "union",
    "union_sequential",
    "validate",
]
