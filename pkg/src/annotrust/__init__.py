"""Trust scoring for user-generated annotations, with a choice-based
conjoint engine for calibrating the model's dimension weights."""

from .conjoint import (
    Attribute,
    ChoiceRecord,
    Concept,
    Design,
    DesignKind,
    ImportanceVector,
    PartWorths,
    SampleSizeCheck,
    STANDARD_ATTRIBUTES,
    Tally,
    Task,
    build_tasks,
    full_factorial,
    half_fraction,
    importance_counts,
    importance_partworths,
    make_design,
    recenter,
    sample_size_check,
    tally_choices,
    utility_counts,
    utility_levels,
)
from .degrees import (
    DEFAULT_CLASS_SHARES,
    DEFAULT_METRIC_BANDS,
    DEFAULT_THRESHOLDS,
    MetricBands,
    MetricClassification,
    TranslatorThresholds,
    TrustDegree,
    classify_metrics,
    derive_thresholds,
    translate_trust,
)
from .estimation import (
    fit_logit,
    logit_loglikelihood,
    simulate_respondents,
    softmax,
    task_probabilities,
)
from .ingest import (
    DataError,
    export_results,
    load_annotations,
    load_choices,
    load_design,
    load_results,
    save_annotations,
    save_choices,
    save_design,
)
from .optim import NelderMeadConfig, NelderMeadResult, nelder_mead
from .scoring import (
    Annotation,
    Author,
    DEFAULT_WEIGHTS,
    EXAMPLE_WEIGHTS,
    Edit,
    EditKind,
    Role,
    TrustWeights,
    credibility,
    default_role,
    edits_at,
    edits_types,
    quality,
    role_power,
    stability,
    trust,
    uccf,
)

__version__ = "0.1.0"
