"""Elementary cellular automata: rules, synchronous evolution, rule algebra.

Cells are binary and live on a 1-D ring (wrap-around boundary). A rule is
one of the 256 elementary transition tables, numbered the standard Wolfram
way: bit n of the rule number is the output for the neighborhood whose
three cells read as the binary number n (left*4 + center*2 + right*1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_WIDTH = 3


@dataclass(frozen=True, eq=False)
class Rule:
    """An elementary CA rule: its number and 8-entry lookup table.

    ``table[n]`` is the next cell state for neighborhood value ``n``.
    """

    number: int
    table: np.ndarray  # shape (8,), uint8

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return self.number == other.number

    def __hash__(self):
        return hash(self.number)


def make_rule(number: int) -> Rule:
    """Build the lookup table for rule ``number`` (0-255)."""
    if not 0 <= number <= 255:
        raise ValueError(f"rule number must be in [0, 255], got {number}")
    table = np.array([(number >> n) & 1 for n in range(8)], dtype=np.uint8)
    return Rule(int(number), table)


def rule_from_table(table: np.ndarray) -> Rule:
    """Reconstruct a Rule from an 8-entry output table."""
    table = np.asarray(table, dtype=np.uint8)
    if table.shape != (8,) or not np.all(table <= 1):
        raise ValueError("table must be 8 binary entries")
    number = int(sum(int(table[n]) << n for n in range(8)))
    return Rule(number, table)


def step(state: np.ndarray, rule: Rule) -> np.ndarray:
    """Advance one row of cells by one synchronous update on the ring."""
    s = np.asarray(state, dtype=np.uint8)
    if s.ndim != 1:
        raise ValueError("state must be one-dimensional")
    if s.size < MIN_WIDTH:
        raise ValueError(f"state width must be >= {MIN_WIDTH}, got {s.size}")
    idx = (np.roll(s, 1) << 2) | (s << 1) | np.roll(s, -1)
    return rule.table[idx]


def step_rows(states: np.ndarray, rule: Rule) -> np.ndarray:
    """Advance a batch of rows (shape (n, width)) by one update each.

    Rows are independent automata; the ring wraps within each row.
    """
    s = np.asarray(states, dtype=np.uint8)
    if s.ndim != 2:
        raise ValueError("states must be two-dimensional")
    if s.shape[1] < MIN_WIDTH:
        raise ValueError(f"state width must be >= {MIN_WIDTH}, got {s.shape[1]}")
    idx = (np.roll(s, 1, axis=1) << 2) | (s << 1) | np.roll(s, -1, axis=1)
    return rule.table[idx]


def evolve(state: np.ndarray, rule: Rule, iterations: int) -> np.ndarray:
    """Iterate ``state`` for ``iterations`` steps, returning every evolved row.

    The returned array has shape (iterations, width); the seed state itself
    is not included.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    s = np.asarray(state, dtype=np.uint8)
    out = np.empty((iterations, s.size), dtype=np.uint8)
    for k in range(iterations):
        s = step(s, rule)
        out[k] = s
    return out


def lambda_param(rule: Rule) -> float:
    """Langton's lambda: fraction of table entries producing a live cell."""
    return float(rule.table.sum()) / 8.0


def mirror_rule(rule: Rule) -> Rule:
    """Left-right equivalent rule: swaps the roles of left and right neighbors."""
    table = np.empty(8, dtype=np.uint8)
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                table[4 * a + 2 * b + c] = rule.table[4 * c + 2 * b + a]
    return rule_from_table(table)


def complement_rule(rule: Rule) -> Rule:
    """Black-white equivalent rule: interchanges live and quiescent cells."""
    table = np.empty(8, dtype=np.uint8)
    for n in range(8):
        table[n] = 1 - rule.table[7 - n]
    return rule_from_table(table)
