"""Token layout on a monospace grid and Gaussian-mixture attention maps."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from codeattn._io import atomic_write_bytes, atomic_write_text
from codeattn.errors import BadDownsample, ConfigError, FormatError, LayoutOverflow
from codeattn.syntax import SyntaxTree, Token


@dataclass(frozen=True)
class Clip:
    x0: float = 540.0
    y0: float = 120.0
    side: int = 840


@dataclass(frozen=True)
class LayoutConfig:
    """Pixel geometry of a code stimulus.

    Text cell (col, line) occupies ``[margin_x + col*cell_w, +cell_w)`` by
    ``[margin_y + line*cell_h, +cell_h)`` in stimulus coordinates. The clip
    square is the analysis window; everything downstream is clip-local.
    """

    cell_w: float = 12.0
    cell_h: float = 24.0
    margin_x: float = 600.0
    margin_y: float = 180.0
    stimulus_w: int = 1920
    stimulus_h: int = 1080
    clip: Clip = field(default_factory=Clip)
    sigma_divisor: float = 4.0  # sigma = token extent / divisor

    def __post_init__(self):
        if not (self.cell_w > 0 and self.cell_h > 0):
            raise ConfigError("cell_w and cell_h must be > 0")
        if self.sigma_divisor <= 0:
            raise ConfigError("sigma_divisor must be > 0")
        c = self.clip
        if not isinstance(c.side, int) or c.side <= 0:
            raise ConfigError("clip side must be a positive integer")
        if c.x0 < 0 or c.y0 < 0 or c.x0 + c.side > self.stimulus_w or c.y0 + c.side > self.stimulus_h:
            raise ConfigError(f"clip {c} does not lie inside the {self.stimulus_w}x{self.stimulus_h} stimulus")

    @classmethod
    def from_dict(cls, d: dict) -> "LayoutConfig":
        d = dict(d)
        clip = d.pop("clip", None)
        unknown = set(d) - {f for f in cls.__dataclass_fields__ if f != "clip"}
        if unknown:
            raise ConfigError(f"unknown layout field(s): {sorted(unknown)}")
        try:
            if clip is not None:
                d["clip"] = Clip(**clip)
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(f"bad layout config: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "LayoutConfig":
        try:
            return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TokenGeometry:
    token: Token
    center_x: float
    center_y: float
    width_px: float
    height_px: float
    sigma_x: float
    sigma_y: float


@dataclass
class ScalarField:
    """Row-major grid ``values[row, col]`` over the clip square.

    Each cell covers ``downsample`` x ``downsample`` pixels.
    """

    values: np.ndarray
    downsample: int = 1

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError("field must be 2-D")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("field values must be finite and >= 0")

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


def layout_tokens(tree: SyntaxTree, cfg: LayoutConfig) -> list[TokenGeometry]:
    """Place every representative token, in source order, on the clip frame."""
    out = []
    for tok in sorted(tree.tokens.values(), key=lambda t: (t.span.start, t.owner)):
        n = len(tok.text)
        line, col = tok.span.start_line, tok.span.start_col
        left = cfg.margin_x + col * cfg.cell_w
        top = cfg.margin_y + line * cfg.cell_h
        w = n * cfg.cell_w
        h = cfg.cell_h
        if left < 0 or top < 0 or left + w > cfg.stimulus_w or top + h > cfg.stimulus_h:
            raise LayoutOverflow(
                f"token {tok.text!r} at line {line + 1} col {col + 1} falls outside the "
                f"{cfg.stimulus_w}x{cfg.stimulus_h} stimulus"
            )
        out.append(
            TokenGeometry(
                token=tok,
                center_x=cfg.margin_x + (col + n / 2) * cfg.cell_w - cfg.clip.x0,
                center_y=cfg.margin_y + (line + 0.5) * cfg.cell_h - cfg.clip.y0,
                width_px=w,
                height_px=h,
                sigma_x=w / cfg.sigma_divisor,
                sigma_y=h / cfg.sigma_divisor,
            )
        )
    return out


def cell_centers(side: int, downsample: int = 1) -> np.ndarray:
    """Clip-local coordinates of the grid cell centers along one axis."""
    if downsample < 1 or side % downsample:
        raise BadDownsample(f"clip side {side} is not divisible by downsample {downsample}")
    n = side // downsample
    return (np.arange(n, dtype=np.float64) + 0.5) * downsample


def evaluate_field(geoms: Sequence[TokenGeometry], node_attn, xs, ys) -> np.ndarray:
    """Gaussian mixture evaluated at arbitrary clip-local points."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    total = np.zeros(np.broadcast(xs, ys).shape)
    for g in geoms:
        a = node_attn.get(g.token.owner, 0.0)
        if a == 0:
            continue
        q = (xs - g.center_x) ** 2 / (2 * g.sigma_x**2) + (ys - g.center_y) ** 2 / (2 * g.sigma_y**2)
        total = total + a * np.exp(-q)
    return total


def generate_attention_map(
    geoms: Sequence[TokenGeometry],
    node_attn,
    cfg: LayoutConfig,
    downsample: int = 1,
) -> ScalarField:
    """Sum of token-centred Gaussians sampled at cell centres.

    Each Gaussian peaks at its owner node's attention. The 2-D kernel is
    separable, so every token adds one outer product; tokens are summed in
    the given order, which fixes the floating-point result.
    """
    xs = cell_centers(cfg.clip.side, downsample)
    ys = xs
    values = np.zeros((ys.size, xs.size))
    for g in geoms:
        a = node_attn.get(g.token.owner, 0.0)
        if a == 0:
            continue
        gx = np.exp(-((xs - g.center_x) ** 2) / (2 * g.sigma_x**2))
        gy = np.exp(-((ys - g.center_y) ** 2) / (2 * g.sigma_y**2))
        values += a * np.outer(gy, gx)
    return ScalarField(values, downsample)


def unplaced_mass(tree: SyntaxTree, node_attn) -> float:
    """Attention held by nodes that have no token to carry a Gaussian."""
    return math.fsum(v for nid, v in node_attn.values.items() if nid not in tree.tokens)


def field_csv(field: ScalarField) -> str:
    rows = [f"{field.width},{field.height}"]
    rows.extend(",".join(map(repr, row)) for row in field.values.tolist())
    return "\n".join(rows) + "\n"


def field_pgm(field: ScalarField) -> bytes:
    """8-bit P5 image, ``floor(255 * v / max)``; an all-zero field stays zero."""
    m = float(field.values.max()) if field.values.size else 0.0
    if m > 0:
        px = np.floor(255.0 * field.values / m)
    else:
        px = np.zeros_like(field.values)
    px = np.clip(px, 0, 255).astype(np.uint8)
    header = f"P5\n{field.width} {field.height}\n255\n".encode("ascii")
    return header + px.tobytes()


def render_field(field: ScalarField, stem: str | Path) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` and ``<stem>.pgm``; returns both paths."""
    stem = Path(stem)
    csv_path = stem.with_name(stem.name + ".csv")
    pgm_path = stem.with_name(stem.name + ".pgm")
    atomic_write_text(csv_path, field_csv(field))
    atomic_write_bytes(pgm_path, field_pgm(field))
    return csv_path, pgm_path


def read_field_csv(path: str | Path, downsample: int = 1) -> ScalarField:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise FormatError(f"{path}: empty map file")
    try:
        w, h = (int(v) for v in lines[0].split(","))
    except ValueError:
        raise FormatError(f"{path}: header must be 'width,height'", 1) from None
    if len(lines) - 1 != h:
        raise FormatError(f"{path}: header says {h} rows, found {len(lines) - 1}")
    values = np.empty((h, w))
    for i, line in enumerate(lines[1:]):
        try:
            row = [float(v) for v in line.split(",")]
        except ValueError:
            raise FormatError(f"{path}: non-numeric value", i + 2) from None
        if len(row) != w:
            raise FormatError(f"{path}: expected {w} values, found {len(row)}", i + 2)
        values[i] = row
    try:
        return ScalarField(values, downsample)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5" or len(parts) < 4:
        raise FormatError(f"{path}: not a binary PGM")
    w, h = (int(v) for v in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)
