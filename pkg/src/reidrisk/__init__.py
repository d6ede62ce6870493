"""Belief-function analysis of re-identification risk for masked microdata.

Core value types and operations are re-exported here; the sklearn-style
wrappers live in ``reidrisk.estimators`` (imported separately so the
core stays light), and the command-line front end in ``reidrisk.cli``.
"""

from .frames import (
    MAX_FRAME,
    TOL_SUM,
    Frame,
    FrameCapacityError,
    FrameMismatchError,
    mobius_transform,
    powerset_iter,
    subset_sizes,
    zeta_transform,
)
from .belief import (
    BeliefFunction,
    MassAssignment,
    ProbabilityDistribution,
    ValidationError,
    ValidationReport,
    as_probability,
    belief_from_mass,
    mass_from_belief,
    pignistic,
    validate_belief,
    validate_mass,
)
from .compatibility import (
    CompatibilityResult,
    CompatibleProbabilityResult,
    TrueProbability,
    is_compatible,
    is_compatible_probability,
    is_dirac,
    random_mass,
    sample_compatible_mass,
    support,
)
from .measures import (
    majorizes,
    nonspecificity,
    pignistic_entropy,
    shannon_entropy,
    transfer_mass,
)
from .combination import (
    AcceptabilityError,
    CombinationError,
    CombinationRule,
    ConflictError,
    IncompatibleEvidenceError,
    combine_checked,
    combine_many,
    conjunctive_rule,
    dempster_rule,
    fold_combine,
)
from .reident import (
    AuxiliaryInfo,
    EmptyCandidateSetError,
    GeneralizationScheme,
    GroupGeneralizer,
    IdentityGeneralizer,
    IntervalGeneralizer,
    MaskedTable,
    MissingPreimageError,
    Table,
    UncoveredValueError,
    adversarial_missing_record,
    candidate_indices,
    candidate_set,
    mask_generalize,
    n3_masking_posterior,
    n3_proposition_probability,
    n3_reident_belief,
    n3_scenario,
    noise_mask_n3,
    noise_mask_n3_random,
    reidentify_belief,
    reidentify_prob,
    true_probability,
)
from .risk import RiskReport, analyze_table

__version__ = "0.1.0"

__all__ = [
    "MAX_FRAME",
    "TOL_SUM",
    "Frame",
    "FrameCapacityError",
    "FrameMismatchError",
    "mobius_transform",
    "powerset_iter",
    "subset_sizes",
    "zeta_transform",
    "BeliefFunction",
    "MassAssignment",
    "ProbabilityDistribution",
    "ValidationError",
    "ValidationReport",
    "as_probability",
    "belief_from_mass",
    "mass_from_belief",
    "pignistic",
    "validate_belief",
    "validate_mass",
    "CompatibilityResult",
    "CompatibleProbabilityResult",
    "TrueProbability",
    "is_compatible",
    "is_compatible_probability",
    "is_dirac",
    "random_mass",
    "sample_compatible_mass",
    "support",
    "majorizes",
    "nonspecificity",
    "pignistic_entropy",
    "shannon_entropy",
    "transfer_mass",
    "AcceptabilityError",
    "CombinationError",
    "CombinationRule",
    "ConflictError",
    "IncompatibleEvidenceError",
    "combine_checked",
    "combine_many",
    "conjunctive_rule",
    "dempster_rule",
    "fold_combine",
    "AuxiliaryInfo",
    "EmptyCandidateSetError",
    "GeneralizationScheme",
    "GroupGeneralizer",
    "IdentityGeneralizer",
    "IntervalGeneralizer",
    "MaskedTable",
    "MissingPreimageError",
    "Table",
    "UncoveredValueError",
    "adversarial_missing_record",
    "candidate_indices",
    "candidate_set",
    "mask_generalize",
    "n3_masking_posterior",
    "n3_proposition_probability",
    "n3_reident_belief",
    "n3_scenario",
    "noise_mask_n3",
    "noise_mask_n3_random",
    "reidentify_belief",
    "reidentify_prob",
    "true_probability",
    "RiskReport",
    "analyze_table",
    "__version__",
]
