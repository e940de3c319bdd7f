"""Drive a CA reservoir over input sequences and collect feature vectors.

Per time step the input is written onto the automaton (onto zeros at t=0,
onto the previous step's last iteration afterwards), the rule is applied I
times, and the I evolved rows are concatenated into one feature vector of
I*R*L_d bits. The pre-evolution row is not part of the features.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ca import make_rule, step_rows
from .encoding import (
    EncoderConfig,
    MappingSet,
    combine_overwrite_rows,
    encode_initial_rows,
    generate_mappings,
)


@dataclass(frozen=True)
class ReservoirParams:
    rule: int
    iterations: int
    mapping_count: int
    diffuse_length: int
    input_width: int
    seed: int

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.mapping_count < 1:
            raise ValueError("mapping_count must be >= 1")
        if self.diffuse_length < self.input_width:
            raise ValueError("diffuse_length must be >= input_width")

    @property
    def state_width(self) -> int:
        return self.mapping_count * self.diffuse_length

    @property
    def feature_length(self) -> int:
        return self.iterations * self.state_width

    def encoder_config(self) -> EncoderConfig:
        return EncoderConfig(
            self.input_width, self.diffuse_length, self.mapping_count, self.seed
        )


def make_mappings(params: ReservoirParams) -> MappingSet:
    return generate_mappings(params.encoder_config())


def run_sequences(
    inputs: np.ndarray, params: ReservoirParams, mappings: MappingSet
) -> tuple[np.ndarray, np.ndarray]:
    """Run a batch of independent sequences through one reservoir.

    Args:
        inputs: (n_sequences, T, L_in) binary array.
        params: reservoir parameters; ``mappings`` must match them.
        mappings: the fixed random mappings.

    Returns:
        (features, finals): features has shape (n_sequences, T, I*R*L_d);
        finals holds each sequence's last evolved automaton row.
    """
    x = np.asarray(inputs, dtype=np.uint8)
    if x.ndim != 3 or x.shape[2] != params.input_width:
        raise ValueError(f"inputs must have shape (n, T, {params.input_width})")
    if (
        mappings.input_width != params.input_width
        or mappings.count != params.mapping_count
        or mappings.diffuse_length != params.diffuse_length
    ):
        raise ValueError("mappings are inconsistent with reservoir params")

    n_seq, seq_len, _ = x.shape
    width = params.state_width
    rule = make_rule(params.rule)
    features = np.empty((n_seq, seq_len, params.feature_length), dtype=np.uint8)

    states = np.zeros((n_seq, width), dtype=np.uint8)
    for t in range(seq_len):
        if t == 0:
            states = encode_initial_rows(x[:, t], mappings)
        else:
            states = combine_overwrite_rows(x[:, t], states, mappings)
        for k in range(params.iterations):
            states = step_rows(states, rule)
            features[:, t, k * width : (k + 1) * width] = states
    return features, states


def run_sequence(
    inputs: np.ndarray, params: ReservoirParams, mappings: MappingSet
) -> tuple[np.ndarray, np.ndarray]:
    """Run a single sequence; returns (features (T, I*R*L_d), final state)."""
    x = np.asarray(inputs, dtype=np.uint8)
    if x.ndim != 2:
        raise ValueError("inputs must have shape (T, L_in)")
    features, finals = run_sequences(x[None], params, mappings)
    return features[0], finals[0]


def record_space_time(
    inputs: np.ndarray, params: ReservoirParams, mappings: MappingSet
) -> np.ndarray:
    """Full iteration-by-iteration grid for one sequence.

    Row (t*I + k) is the k-th evolved automaton row of time step t; the grid
    is exactly the run_sequence features reshaped to (T*I, R*L_d).
    """
    features, _ = run_sequence(inputs, params, mappings)
    return features.reshape(-1, params.state_width)
