"""Exact-arithmetic engine for limit-series skeletons on chains of elliptic
components: parameter classification, explicit construction, combinatorial
certification, and the dimension audit against the Brill-Noether number."""

from .construct import BlockIndex, construct, tail_count, vanishing_tables
from .errors import (
    EngineError,
    HypothesisFailed,
    InstanceTooLarge,
    InternalCoverage,
    KLERegime,
    MultiplicityMismatch,
    PairingNotGiven,
    ParameterError,
)
from .ledger import AuditResult, DimensionLedger, LedgerRow, audit_equals_rho, ledger
from .oracle import (
    DEFAULT_BOUND,
    CrossValidation,
    PairingInstance,
    cross_validate,
    exists_feasible_pairing,
    min_sum_pairing_exists,
)
from .params import (
    Case,
    Classification,
    Decomposition,
    HypothesisCheck,
    Params,
    brill_noether_rho,
    classify,
    decompose,
    rho_value,
)
from .skeleton import (
    ChainCurve,
    ComponentBundle,
    GluingSpec,
    LimitSeriesSkeleton,
    Summand,
    VanishingTable,
    build_chain,
    canonical_dumps,
    degree_balance,
    minimal_boundary_table,
    skeleton_from_json_dict,
    skeleton_to_canonical_json,
    skeleton_to_json_dict,
)
from .verify import (
    SlopeQuery,
    VerificationReport,
    check_boundary,
    check_component_feasibility,
    check_node_pairing,
    induced_pairs,
    node_min_sum_greedy,
    slope_ok,
    slope_query_ok,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "AuditResult",
    "BlockIndex",
    "Case",
    "ChainCurve",
    "Classification",
    "ComponentBundle",
    "CrossValidation",
    "DEFAULT_BOUND",
    "Decomposition",
    "DimensionLedger",
    "EngineError",
    "GluingSpec",
    "HypothesisCheck",
    "HypothesisFailed",
    "InstanceTooLarge",
    "InternalCoverage",
    "KLERegime",
    "LedgerRow",
    "LimitSeriesSkeleton",
    "MultiplicityMismatch",
    "PairingInstance",
    "PairingNotGiven",
    "ParameterError",
    "Params",
    "SlopeQuery",
    "Summand",
    "VanishingTable",
    "VerificationReport",
    "audit_equals_rho",
    "brill_noether_rho",
    "build_chain",
    "canonical_dumps",
    "check_boundary",
    "check_component_feasibility",
    "check_node_pairing",
    "classify",
    "construct",
    "cross_validate",
    "decompose",
    "degree_balance",
    "exists_feasible_pairing",
    "induced_pairs",
    "ledger",
    "min_sum_pairing_exists",
    "minimal_boundary_table",
    "node_min_sum_greedy",
    "rho_value",
    "skeleton_from_json_dict",
    "skeleton_to_canonical_json",
    "skeleton_to_json_dict",
    "slope_ok",
    "slope_query_ok",
    "tail_count",
    "vanishing_tables",
    "verify",
]
