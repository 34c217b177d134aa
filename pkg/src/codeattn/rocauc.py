"""Thresholded maps scored against gaze counts: ROC sweep and trapezoidal AUC."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from codeattn.errors import DegenerateGaze, MalformedCurve


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    fpr: float
    tpr: float

    def __post_init__(self):
        if not (0.0 <= self.fpr <= 1.0 and 0.0 <= self.tpr <= 1.0):
            raise ValueError(f"rates out of [0, 1]: {self}")


@dataclass
class EvalReport:
    snippet_id: str
    auc: float
    roc: list[RocPoint]
    gaze_stats: dict = field(default_factory=dict)

    @property
    def n_thresholds(self) -> int:
        return len(self.roc)

    def to_dict(self) -> dict:
        return {
            "snippet_id": self.snippet_id,
            "auc": self.auc,
            "n_thresholds": self.n_thresholds,
            "gaze_stats": self.gaze_stats,
        }


def _values(c) -> np.ndarray:
    return np.asarray(getattr(c, "values", c), dtype=np.float64)


def _counts(g) -> np.ndarray:
    return np.asarray(getattr(g, "counts", g))


def binarize(c, threshold: float) -> np.ndarray:
    """1 where the map is strictly above ``threshold``, else 0."""
    return (_values(c) > threshold).astype(np.uint8)


def tpr_fpr(gplus, gminus, cbin) -> tuple[float, float]:
    """Gaze-count-weighted hit rate and non-gazed false-alarm rate."""
    gp = _counts(gplus).astype(np.int64)
    gm = np.asarray(gminus).astype(np.int64)
    cb = np.asarray(cbin).astype(np.int64)
    if not gp.shape == gm.shape == cb.shape:
        raise ValueError(f"shape mismatch: {gp.shape}, {gm.shape}, {cb.shape}")
    p, n = int(gp.sum()), int(gm.sum())
    if p == 0 or n == 0:
        raise DegenerateGaze(f"sum(G+)={p}, sum(G-)={n}; rates undefined")
    return int((gp * cb).sum()) / p, int((gm * cb).sum()) / n


def roc_curve(c, gplus) -> list[RocPoint]:
    """ROC over every distinct map value plus one sentinel below the minimum.

    Thresholding at the largest value selects nothing and gives (0, 0); the
    sentinel selects everything and gives (1, 1). Points come back sorted by
    FPR, then TPR.
    """
    vals = _values(c).ravel()
    counts = _counts(gplus).ravel().astype(np.int64)
    if vals.shape != counts.shape:
        raise ValueError("map and gaze histogram shapes differ")
    neg = (counts == 0).astype(np.int64)
    p, n = int(counts.sum()), int(neg.sum())
    if p == 0 or n == 0:
        raise DegenerateGaze(f"sum(G+)={p}, sum(G-)={n}; ROC undefined")

    order = np.argsort(-vals, kind="stable")
    sv = vals[order]
    # group boundaries of equal values (descending)
    starts = np.flatnonzero(np.r_[True, sv[1:] != sv[:-1]])
    pos_per_group = np.add.reduceat(counts[order], starts)
    neg_per_group = np.add.reduceat(neg[order], starts)
    tp = np.r_[0, np.cumsum(pos_per_group)]
    fp = np.r_[0, np.cumsum(neg_per_group)]
    below = sv[-1] - 1.0
    if not below < sv[-1]:
        below = np.nextafter(sv[-1], -np.inf)
    thresholds = np.r_[sv[starts], below]

    points = [
        RocPoint(float(t), int(f) / n, int(q) / p)
        for t, f, q in zip(thresholds.tolist(), fp.tolist(), tp.tolist())
    ]
    points.sort(key=lambda r: (r.fpr, r.tpr))
    return points


def _exact_ints(xs: Sequence[float]) -> tuple[list[int], int]:
    """Scale dyadic floats to integers over a shared power-of-two denominator."""
    ratios = [x.as_integer_ratio() for x in xs]
    den = max(d for _, d in ratios)
    return [num * (den // d) for num, d in ratios], den


def auc(roc: Sequence[RocPoint]) -> float:
    """Trapezoidal area under the ROC, computed exactly then rounded once."""
    if len(roc) < 2:
        raise MalformedCurve("need at least two ROC points")
    if (roc[0].fpr, roc[0].tpr) != (0.0, 0.0) or (roc[-1].fpr, roc[-1].tpr) != (1.0, 1.0):
        raise MalformedCurve("ROC must start at (0, 0) and end at (1, 1)")
    for a, b in zip(roc, roc[1:]):
        if (b.fpr, b.tpr) < (a.fpr, a.tpr):
            raise MalformedCurve("ROC points are not sorted by (fpr, tpr)")
    f, fd = _exact_ints([r.fpr for r in roc])
    t, td = _exact_ints([r.tpr for r in roc])
    twice = sum((f[i + 1] - f[i]) * (t[i] + t[i + 1]) for i in range(len(roc) - 1))
    return float(Fraction(twice, 2 * fd * td))


def evaluate(c, gplus, snippet_id: str = "", gaze_stats: dict | None = None) -> EvalReport:
    roc = roc_curve(c, gplus)
    return EvalReport(snippet_id, auc(roc), roc, dict(gaze_stats or {}))


def roc_csv(roc: Sequence[RocPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["threshold", "fpr", "tpr"])
    for r in roc:
        w.writerow([repr(r.threshold), repr(r.fpr), repr(r.tpr)])
    return buf.getvalue()
