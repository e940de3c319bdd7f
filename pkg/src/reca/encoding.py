"""Random-mapping input encoder.

Each of the R mappings scatters the L_in input bits onto distinct positions
of an otherwise untouched segment of L_d cells. The R segments are
concatenated into a single automaton of width R*L_d before any evolution.
Mappings are drawn once from a seeded generator and never change afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class EncoderConfig:
    input_width: int
    diffuse_length: int
    mapping_count: int
    seed: int

    def __post_init__(self):
        if self.input_width < 1:
            raise ValueError("input_width must be >= 1")
        if self.mapping_count < 1:
            raise ValueError("mapping_count must be >= 1")
        if self.diffuse_length < self.input_width:
            raise ValueError(
                f"diffuse_length ({self.diffuse_length}) must be >= "
                f"input_width ({self.input_width})"
            )


@dataclass(frozen=True, eq=False)
class MappingSet:
    """R fixed injections of input positions into L_d-cell segments.

    ``maps[r][j]`` is the cell (within segment r) that receives input bit j.
    """

    input_width: int
    diffuse_length: int
    maps: np.ndarray  # shape (R, L_in), int64
    # Absolute cell positions in the concatenated automaton, one entry per
    # (segment, input bit) pair; precomputed for the write-heavy paths.
    positions: np.ndarray = field(init=False)

    def __post_init__(self):
        maps = np.asarray(self.maps, dtype=np.int64)
        if maps.ndim != 2 or maps.shape[1] != self.input_width:
            raise ValueError("maps must have shape (R, input_width)")
        if maps.min() < 0 or maps.max() >= self.diffuse_length:
            raise ValueError("map positions must lie in [0, diffuse_length)")
        for row in maps:
            if len(set(row.tolist())) != self.input_width:
                raise ValueError("positions within one mapping must be distinct")
        offsets = np.arange(maps.shape[0], dtype=np.int64) * self.diffuse_length
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "positions", (maps + offsets[:, None]).ravel())

    @property
    def count(self) -> int:
        return self.maps.shape[0]

    @property
    def state_width(self) -> int:
        return self.count * self.diffuse_length


def generate_mappings(config: EncoderConfig) -> MappingSet:
    """Draw the R random injections for ``config``; deterministic in the seed."""
    rng = np.random.default_rng(config.seed)
    maps = np.stack(
        [
            rng.choice(config.diffuse_length, size=config.input_width, replace=False)
            for _ in range(config.mapping_count)
        ]
    )
    return MappingSet(config.input_width, config.diffuse_length, maps)


def _check_input(input_bits: np.ndarray, mappings: MappingSet) -> np.ndarray:
    x = np.asarray(input_bits, dtype=np.uint8)
    if x.shape != (mappings.input_width,):
        raise ValueError(
            f"input must have length {mappings.input_width}, got shape {x.shape}"
        )
    return x


def encode_initial(input_bits: np.ndarray, mappings: MappingSet) -> np.ndarray:
    """Map an input vector onto a fresh all-zero automaton of width R*L_d."""
    x = _check_input(input_bits, mappings)
    state = np.zeros(mappings.state_width, dtype=np.uint8)
    state[mappings.positions] = np.tile(x, mappings.count)
    return state


def combine_overwrite(
    input_bits: np.ndarray, previous_final: np.ndarray, mappings: MappingSet
) -> np.ndarray:
    """Write the mapped input (zeros included) onto a copy of the previous state."""
    x = _check_input(input_bits, mappings)
    prev = np.asarray(previous_final, dtype=np.uint8)
    if prev.shape != (mappings.state_width,):
        raise ValueError(
            f"previous state must have width {mappings.state_width}, "
            f"got shape {prev.shape}"
        )
    state = prev.copy()
    state[mappings.positions] = np.tile(x, mappings.count)
    return state


def encode_initial_rows(inputs: np.ndarray, mappings: MappingSet) -> np.ndarray:
    """Batched encode_initial: rows of ``inputs`` (n, L_in) -> states (n, R*L_d)."""
    x = np.asarray(inputs, dtype=np.uint8)
    if x.ndim != 2 or x.shape[1] != mappings.input_width:
        raise ValueError(f"inputs must have shape (n, {mappings.input_width})")
    states = np.zeros((x.shape[0], mappings.state_width), dtype=np.uint8)
    states[:, mappings.positions] = np.tile(x, (1, mappings.count))
    return states


def combine_overwrite_rows(
    inputs: np.ndarray, previous_finals: np.ndarray, mappings: MappingSet
) -> np.ndarray:
    """Batched combine_overwrite over matching rows of inputs and states."""
    x = np.asarray(inputs, dtype=np.uint8)
    if x.ndim != 2 or x.shape[1] != mappings.input_width:
        raise ValueError(f"inputs must have shape (n, {mappings.input_width})")
    states = np.asarray(previous_finals, dtype=np.uint8).copy()
    if states.shape != (x.shape[0], mappings.state_width):
        raise ValueError("previous states do not match inputs and mapping width")
    states[:, mappings.positions] = np.tile(x, (1, mappings.count))
    return states
