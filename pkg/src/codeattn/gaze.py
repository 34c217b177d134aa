"""Gaze logs: parsing, clipping to the analysis square, per-pixel counts (G+ / G-)."""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from codeattn.errors import BadDownsample, EmptyInput, FormatError
from codeattn.spatial_map import LayoutConfig

HEADER = ("timestamp", "x", "y")


@dataclass(frozen=True)
class GazePoint:
    t: float
    x: float
    y: float


@dataclass(frozen=True)
class GazeStats:
    total: int
    retained: int
    lost: int  # non-finite or negative coordinates
    out_of_bounds: int

    @property
    def removed(self) -> int:
        return self.lost + self.out_of_bounds

    @property
    def removed_fraction(self) -> float:
        return self.removed / self.total if self.total else 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["removed_fraction"] = self.removed_fraction
        return d


@dataclass
class GazeHistogram:
    counts: np.ndarray  # int64, shape (height, width)
    removed_fraction: float = 0.0

    @property
    def width(self) -> int:
        return self.counts.shape[1]

    @property
    def height(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def parse_gaze(text: str) -> list[GazePoint]:
    """Parse a ``timestamp,x,y`` CSV into full-stimulus points.

    Empty, ``nan``, or ``inf`` coordinates are kept as non-finite values so the
    clipper can count them as tracker loss.
    """
    points: list[GazePoint] = []
    header_seen = False
    rows = csv.reader(io.StringIO(text))
    for row in rows:
        lineno = rows.line_num
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if tuple(c.lower() for c in cells) != HEADER:
                raise FormatError(f"expected header 'timestamp,x,y', got {','.join(cells)!r}", lineno)
            header_seen = True
            continue
        if len(cells) != 3:
            raise FormatError(f"expected 3 fields, got {len(cells)}", lineno)
        try:
            t = float(cells[0])
            x = float(cells[1]) if cells[1] else math.nan
            y = float(cells[2]) if cells[2] else math.nan
        except ValueError:
            raise FormatError(f"non-numeric field in {','.join(cells)!r}", lineno) from None
        if not math.isfinite(t):
            raise FormatError("timestamp must be finite", lineno)
        points.append(GazePoint(t, x, y))
    if not header_seen:
        raise FormatError("missing header 'timestamp,x,y'")
    return points


def clip_points(
    points: Sequence[GazePoint],
    cfg: LayoutConfig,
    t_range: tuple[float, float] | None = None,
) -> tuple[list[GazePoint], GazeStats]:
    """Keep points inside the half-open clip square, translated to clip-local.

    Points outside ``t_range`` (inclusive bounds) are not part of the trial and
    are not counted at all.
    """
    c = cfg.clip
    kept = []
    total = lost = oob = 0
    last_t = -math.inf
    backwards = 0
    for p in points:
        if t_range is not None and not (t_range[0] <= p.t <= t_range[1]):
            continue
        total += 1
        if p.t < last_t:
            backwards += 1
        last_t = p.t
        if not (math.isfinite(p.x) and math.isfinite(p.y)) or p.x < 0 or p.y < 0:
            lost += 1
        elif c.x0 <= p.x < c.x0 + c.side and c.y0 <= p.y < c.y0 + c.side:
            kept.append(GazePoint(p.t, p.x - c.x0, p.y - c.y0))
        else:
            oob += 1
    if backwards:
        warnings.warn(f"{backwards} gaze sample(s) have decreasing timestamps", stacklevel=2)
    return kept, GazeStats(total, len(kept), lost, oob)


def load_gaze(
    path: str | Path,
    cfg: LayoutConfig,
    t_range: tuple[float, float] | None = None,
) -> tuple[list[GazePoint], GazeStats]:
    """Read a gaze CSV and keep clip-local points. Raises EmptyInput if none survive."""
    points = parse_gaze(Path(path).read_text(encoding="utf-8"))
    kept, stats = clip_points(points, cfg, t_range)
    if not kept:
        raise EmptyInput(f"{path}: no gaze points inside the clip square ({stats.total} read)")
    return kept, stats


def gaze_histogram(
    points: Iterable[GazePoint],
    side: int,
    downsample: int = 1,
    removed_fraction: float = 0.0,
) -> GazeHistogram:
    """Count clip-local points per ``downsample``-sized cell."""
    if downsample < 1 or side % downsample:
        raise BadDownsample(f"clip side {side} is not divisible by downsample {downsample}")
    n = side // downsample
    pts = list(points)
    counts = np.zeros((n, n), dtype=np.int64)
    if pts:
        xy = np.array([(p.x, p.y) for p in pts], dtype=np.float64)
        ix = np.floor(xy[:, 0] / downsample).astype(np.int64)
        iy = np.floor(xy[:, 1] / downsample).astype(np.int64)
        if ix.min() < 0 or iy.min() < 0 or ix.max() >= n or iy.max() >= n:
            raise ValueError("gaze point outside the clip grid; clip points first")
        np.add.at(counts, (iy, ix), 1)
    return GazeHistogram(counts, removed_fraction)


def negate_histogram(g: GazeHistogram | np.ndarray) -> np.ndarray:
    """Binary G-: 1 exactly where the gaze count is zero."""
    counts = g.counts if isinstance(g, GazeHistogram) else np.asarray(g)
    return (counts == 0).astype(np.uint8)


def format_gaze(points: Iterable[GazePoint]) -> str:
    lines = [",".join(HEADER)]
    lines.extend(f"{p.t!r},{p.x!r},{p.y!r}" for p in points)
    return "\n".join(lines) + "\n"
