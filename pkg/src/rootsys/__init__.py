"""Exact computations with crystallographic root systems: Cartan data,
positive-root enumeration, Weyl exponents, and structural verification."""

from .cartan import (
    CartanMatrix,
    DynkinGraph,
    ExtendedDynkinGraph,
    RankedType,
    SymmetrizedForm,
    all_types,
    build_cartan,
    dynkin_graph,
    extended_dynkin_graph,
    symmetrizer,
    validate_cartan,
)
from .errors import (
    InternalInconsistencyError,
    InvalidArgumentError,
    InvalidCartanError,
    InvalidTypeError,
    NumericInconsistencyError,
)
from .exponents import (
    ExponentReport,
    HeightDistribution,
    check_duality,
    coxeter_exponents,
    coxeter_matrix,
    coxeter_order,
    dual_partition,
    height_distribution,
)
from .roots import Root, RootSystem, build_system, enumerate_roots
from .verify import (
    CaseSplit,
    CheckResult,
    MarkChain,
    TopChain,
    VerificationLedger,
    build_ledger,
    classify_case,
    g2_criterion_report,
    mark_chain,
    top_chain,
)

__version__ = "0.1.0"
