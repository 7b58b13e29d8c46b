"""Finite-group class calculus and normalizer-quotient realization.

Permutation groups with deterministic stabilizer chains, normal-subgroup
lattices and quotients, a small expression language for group classes with
dual/iterated-extension operators and closure audits, wreath-product
realization certificates for N(H)/H, and a registered verification suite
runnable from the `classlab` command.
"""

from .classes import (
    AuditReport,
    ClassEval,
    ClassExpr,
    audit_property,
    classify,
    parse_class_expr,
)
from .config import Caps, DEFAULT_CAPS, caps_from_env, current_caps, set_caps
from .errors import (
    CapExceeded,
    ClasslabError,
    DegreeMismatch,
    FalsificationAlarm,
    InvalidInput,
    ParseError,
    SubgroupLimitExceeded,
)
from .perm import (
    GroupHom,
    PermGroup,
    Permutation,
    StabChain,
    coset_action,
    direct_power,
    generate,
    identity_hom,
    point_stabilizer,
    regular_representation,
    wreath_by_cosets,
)
from .realization import (
    BruteHit,
    RealizationCertificate,
    alternating_embedding,
    brute_normalizer,
    brute_search,
    build_realization,
    diagonal_subgroup,
    embedding_into,
    factor_permutation_check,
    is_primitive,
    maximal_selfnormalizing,
    realize,
    split_check,
)
from .structure import (
    IsoCertificate,
    NormalLattice,
    baer_radical,
    center,
    conjugacy_classes,
    derived_series,
    fingerprint,
    has_prime_order_quotient,
    is_abelian,
    is_cyclic,
    is_nilpotent,
    is_simple,
    is_solvable,
    isomorphic,
    normal_subgroups,
    quotient,
    radical_factorization,
    simple_quotients,
    subgroups,
)
from .suite import CheckResult, run_suite
from .universe import (
    Catalog,
    alternating,
    build_universe,
    cyclic,
    dihedral,
    klein_four,
    load_catalog,
    parse_group_spec,
    quaternion,
    recognize_name,
    save_catalog,
    special_linear,
    symmetric,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "ClassEval", "ClassExpr", "audit_property", "classify",
    "parse_class_expr",
    "Caps", "DEFAULT_CAPS", "caps_from_env", "current_caps", "set_caps",
    "CapExceeded", "ClasslabError", "DegreeMismatch", "FalsificationAlarm",
    "InvalidInput", "ParseError", "SubgroupLimitExceeded",
    "GroupHom", "PermGroup", "Permutation", "StabChain", "coset_action",
    "direct_power", "generate", "identity_hom", "point_stabilizer",
    "regular_representation", "wreath_by_cosets",
    "BruteHit", "RealizationCertificate", "alternating_embedding",
    "brute_normalizer", "brute_search", "build_realization",
    "diagonal_subgroup", "embedding_into", "factor_permutation_check",
    "is_primitive", "maximal_selfnormalizing", "realize", "split_check",
    "IsoCertificate", "NormalLattice", "baer_radical", "center",
    "conjugacy_classes", "derived_series", "fingerprint",
    "has_prime_order_quotient", "is_abelian", "is_cyclic", "is_nilpotent",
    "is_simple", "is_solvable", "isomorphic", "normal_subgroups", "quotient",
    "radical_factorization", "simple_quotients", "subgroups",
    "CheckResult", "run_suite",
    "Catalog", "alternating", "build_universe", "cyclic", "dihedral",
    "klein_four", "load_catalog", "parse_group_spec", "quaternion",
    "recognize_name", "save_catalog", "special_linear", "symmetric",
    "__version__",
]
