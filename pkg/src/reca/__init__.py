"""Cellular-automata reservoir computing with a trained linear readout."""

from .ca import (
    Rule,
    complement_rule,
    evolve,
    lambda_param,
    make_rule,
    mirror_rule,
    step,
)
from .encoding import (
    EncoderConfig,
    MappingSet,
    combine_overwrite,
    encode_initial,
    generate_mappings,
)
from .memory_task import EvaluationResult, TaskSequence, all_patterns, evaluate, generate
from .pipeline import (
    BatchResult,
    RunConfig,
    RunResult,
    build_config,
    run_batch,
    run_layered,
    run_single,
)
from .readout import ReadoutModel, binarize, binarize_array, fit, predict
from .reservoir import ReservoirParams, record_space_time, run_sequence, run_sequences

__all__ = [
    "Rule",
    "make_rule",
    "step",
    "evolve",
    "lambda_param",
    "mirror_rule",
    "complement_rule",
    "EncoderConfig",
    "MappingSet",
    "generate_mappings",
    "encode_initial",
    "combine_overwrite",
    "ReservoirParams",
    "run_sequence",
    "run_sequences",
    "record_space_time",
    "ReadoutModel",
    "fit",
    "predict",
    "binarize",
    "binarize_array",
    "TaskSequence",
    "EvaluationResult",
    "generate",
    "all_patterns",
    "evaluate",
    "RunConfig",
    "RunResult",
    "BatchResult",
    "build_config",
    "run_single",
    "run_layered",
    "run_batch",
]
