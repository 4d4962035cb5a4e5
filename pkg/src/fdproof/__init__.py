"""Armstrong-axiom saturation for functional dependencies, with proof extraction."""
from .axioms import (
    GenBatch,
    check_step,
    gen_aug,
    gen_comp,
    gen_decomp,
    gen_genuni,
    gen_selfdet,
    gen_trans,
    gen_union,
)
from .core import (
    FD,
    AttrSet,
    AxiomTag,
    FDError,
    IntegrityError,
    Provenance,
    RuleStore,
    UnknownRuleError,
    Universe,
    ValidationError,
    attrset_difference,
    attrset_insert,
    attrset_member,
    attrset_subset,
    attrset_union,
    canonical_attrset,
    store_find,
    store_get,
    store_insert,
)
from .dsl import RulesDocument, case_study, parse_fd_expr, parse_rules_file
from .oracle import attribute_closure, implies, semantic_fd_set
from .proof import (
    ProofTree,
    extract_proof,
    parse_paper_proof,
    prove,
    render,
    validate_proof,
)
from .saturation import (
    SaturationConfig,
    SaturationResult,
    Status,
    find_target,
    run_stage,
    saturate,
)

__version__ = "0.1.0"
