"""Synthetic gaze recordings for sanity experiments.

Real gaze data is not available, so the end-to-end checks draw samples whose
density is a known function of the map and confirm the AUC moves the right way.
"""

from __future__ import annotations

import numpy as np

from codeattn.gaze import GazePoint
from codeattn.spatial_map import LayoutConfig, ScalarField


def sample_gaze(
    weights: np.ndarray,
    n: int,
    rng: np.random.Generator,
    cfg: LayoutConfig,
    downsample: int = 1,
    rate_hz: float = 120.0,
) -> list[GazePoint]:
    """Draw ``n`` stimulus-frame points with cell probability proportional to ``weights``.

    Points are jittered uniformly inside the chosen cell and time-stamped at
    ``rate_hz``.
    """
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.min() < 0 or not w.sum() > 0:
        raise ValueError("weights must be non-negative with a positive sum")
    h, width = np.shape(weights)
    cells = rng.choice(w.size, size=n, p=w / w.sum())
    rows, cols = np.divmod(cells, width)
    x = (cols + rng.random(n)) * downsample + cfg.clip.x0
    y = (rows + rng.random(n)) * downsample + cfg.clip.y0
    t = np.arange(n) / rate_hz
    return [GazePoint(float(a), float(b), float(c)) for a, b, c in zip(t, x, y)]


def toward_map(field: ScalarField) -> np.ndarray:
    return field.values


def uniform(field: ScalarField) -> np.ndarray:
    return np.ones_like(field.values)


def away_from_map(field: ScalarField) -> np.ndarray:
    return field.values.max() - field.values


SCENARIOS = {"toward": toward_map, "uniform": uniform, "away": away_from_map}
