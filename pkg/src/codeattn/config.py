"""Run configuration: one JSON file holding device and model constants."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from codeattn import __version__
from codeattn.errors import ConfigError
from codeattn.pathctx import ExtractionLimits
from codeattn.spatial_map import LayoutConfig

UNIFORM = "uniform"


@dataclass(frozen=True)
class RunConfig:
    layout: LayoutConfig = field(default_factory=LayoutConfig)
    limits: ExtractionLimits = field(default_factory=ExtractionLimits)
    attention_source: str = UNIFORM  # file path or "uniform"
    downsample: int = 1
    t_range: tuple[float, float] | None = None
    output_dir: str = "out"

    def __post_init__(self):
        if not isinstance(self.downsample, int) or self.downsample < 1:
            raise ConfigError(f"downsample must be a positive integer, got {self.downsample!r}")
        if self.layout.clip.side % self.downsample:
            raise ConfigError(
                f"downsample {self.downsample} does not divide clip side {self.layout.clip.side}"
            )
        if self.t_range is not None:
            lo, hi = self.t_range
            if not lo <= hi:
                raise ConfigError(f"t_range start {lo} is after end {hi}")

    @classmethod
    def from_dict(cls, d: dict, base_dir: Path | None = None) -> "RunConfig":
        d = dict(d)
        known = {"layout", "limits", "attention", "downsample", "t_range", "output_dir"}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
        kwargs = {}
        if "layout" in d:
            kwargs["layout"] = LayoutConfig.from_dict(d["layout"])
        if "limits" in d:
            try:
                kwargs["limits"] = ExtractionLimits(**d["limits"])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad limits: {exc}") from None
        if "attention" in d:
            src = str(d["attention"])
            if src != UNIFORM and base_dir is not None:
                src = str(base_dir / src)
            kwargs["attention_source"] = src
        if "downsample" in d:
            kwargs["downsample"] = d["downsample"]
        if d.get("t_range") is not None:
            kwargs["t_range"] = parse_t_range(d["t_range"])
        if "output_dir" in d:
            out = Path(d["output_dir"])
            kwargs["output_dir"] = str(base_dir / out if base_dir is not None else out)
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(data, base_dir=path.parent)

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def digest(self) -> str:
        """SHA-256 over the resolved settings; attention files by content."""
        d = {
            "layout": self.layout.to_dict(),
            "limits": asdict(self.limits),
            "downsample": self.downsample,
            "t_range": list(self.t_range) if self.t_range else None,
        }
        if self.attention_source == UNIFORM:
            d["attention"] = UNIFORM
        else:
            p = Path(self.attention_source)
            d["attention"] = hashlib.sha256(p.read_bytes()).hexdigest() if p.exists() else str(p)
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def provenance(self) -> dict:
        return {"tool_version": __version__, "config_digest": self.digest()}


def parse_t_range(value) -> tuple[float, float]:
    try:
        if isinstance(value, str):
            lo, hi = (float(v) for v in value.replace(",", ":").split(":"))
        else:
            lo, hi = (float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"t_range must be 'start:end', got {value!r}") from None
    if not lo <= hi:
        raise ConfigError(f"t_range start {lo} is after end {hi}")
    return lo, hi
