"""Space-time diagram output: binary PGM images and ASCII art."""

from __future__ import annotations

import numpy as np

ASCII_LIVE = "#"
ASCII_DEAD = "."


def grid_to_pgm(grid: np.ndarray) -> bytes:
    """Encode a binary grid as a P5 PGM, live cells black on white."""
    g = np.asarray(grid, dtype=np.uint8)
    if g.ndim != 2:
        raise ValueError("grid must be 2-D")
    height, width = g.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    pixels = np.where(g == 1, 0, 255).astype(np.uint8)
    return header + pixels.tobytes()


def write_pgm(path, grid: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(grid_to_pgm(grid))


def grid_to_ascii(grid: np.ndarray) -> str:
    """Render a binary grid as lines of '#' (live) and '.' (dead)."""
    g = np.asarray(grid, dtype=np.uint8)
    if g.ndim != 2:
        raise ValueError("grid must be 2-D")
    return "\n".join(
        "".join(ASCII_LIVE if cell else ASCII_DEAD for cell in row) for row in g
    )
