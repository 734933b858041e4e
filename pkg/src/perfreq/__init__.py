"""Performance requirements modeling, verification and test environment generation."""

__version__ = "0.1.0"

from .generator import GenerationResult, build_lists, generate, parse_environments, serialize
from .ingestion import AspectSuggestion, ModelFileError, ParseError, dump_models, parse_models, suggest_aspects
from .model import (
    Defect,
    DefectCategory,
    ParameterRole,
    PerformanceAspect,
    PerformanceModel,
    PerformanceParameter,
    Severity,
    TestEnvironment,
    quantified,
)
from .reporting import CorpusSummary, summarize
from .taxonomy import TREE, classify_role, expected_aspects
from .verifier import (
    VerificationReport,
    check_completeness,
    check_conflicts,
    check_quantification,
    merge_models,
    verify,
)
