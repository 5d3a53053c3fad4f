"""Fixation-data ingestion, time-sliced fixation density maps and the ROC
cross-validation protocol checking that coarse-scale maps predict early
fixations and fine-scale maps predict late fixations."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .spectral import ValidationError


@dataclass
class FixationRecord:
    subject_id: str
    image_id: str
    t_ms: float
    x: int
    y: int


@dataclass
class TimeSliceSpec:
    """Half-open time slices [e_i, e_{i+1}) over stimulus time, with a
    leading discard interval for carry-over fixations from the previous
    stimulus."""

    boundaries: list[float]
    discard_before_ms: float = 100.0

    def __post_init__(self):
        edges = list(self.boundaries)
        if len(edges) < 2:
            raise ValidationError("need at least two slice edges")
        if any(b >= a for b, a in zip(edges, edges[1:])):
            raise ValidationError("slice edges must be strictly increasing")
        if self.discard_before_ms > edges[0]:
            raise ValidationError("discard interval must end at or before the first edge")
        self.boundaries = edges

    @property
    def n_slices(self) -> int:
        return len(self.boundaries) - 1


@dataclass
class FixationMap:
    """Normalized fixation density for one time slice; all-zero iff empty."""

    values: np.ndarray
    slice_index: int
    n_records: int


class IngestionError(ValueError):
    """A fixation CSV violated the schema in strict mode."""


def load_fixations(source, bounds: dict, strict: bool = True, warn=None):
    """Parse fixation records from a CSV stream or path.

    `bounds` maps image_id -> (width, height). Malformed rows, unknown
    image ids, negative times and out-of-bounds coordinates abort with the
    row number in strict mode and are skipped (with a warning via `warn`)
    in lenient mode.
    """
    if warn is None:
        warn = lambda msg: None
    close = False
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        source = open(source, newline="", encoding="utf-8")
        close = True
    try:
        reader = csv.DictReader(source)
        records = []
        for row_no, row in enumerate(reader, start=2):
            try:
                image_id = row["image_id"].strip()
                if image_id not in bounds:
                    raise ValueError(f"unknown image_id {image_id!r}")
                t_ms = float(row["t_ms"])
                if t_ms < 0:
                    raise ValueError(f"negative time {t_ms}")
                x = int(row["x"])
                y = int(row["y"])
                width, height = bounds[image_id]
                if not (0 <= x < width and 0 <= y < height):
                    raise ValueError(f"coordinates ({x}, {y}) outside {width}x{height}")
                records.append(
                    FixationRecord(
                        subject_id=row["subject_id"].strip(),
                        image_id=image_id,
                        t_ms=t_ms,
                        x=x,
                        y=y,
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                if strict:
                    raise IngestionError(f"row {row_no}: {exc}") from exc
                warn(f"row {row_no} skipped: {exc}")
        return records
    finally:
        if close:
            source.close()


def slice_fixations(records, spec: TimeSliceSpec):
    """Bin records into the spec's half-open time slices.

    Records before the discard interval's end or at/after the last edge are
    dropped; an edge value belongs to the later slice.
    """
    edges = spec.boundaries
    slices = [[] for _ in range(spec.n_slices)]
    for rec in records:
        if rec.t_ms < spec.discard_before_ms or rec.t_ms < edges[0]:
            continue
        if rec.t_ms >= edges[-1]:
            continue
        idx = int(np.searchsorted(edges, rec.t_ms, side="right")) - 1
        slices[idx].append(rec)
    return slices


def fixation_map(
    records, width: int, height: int, blur_sigma: float | None = None, slice_index: int = 0
) -> FixationMap:
    """Accumulate unit mass per fixation, blur, normalize to a unit-sum
    density. Default blur is a small fraction of the short side; the paper's
    degree-of-visual-angle convention needs viewing geometry we don't have."""
    if blur_sigma is None:
        blur_sigma = 0.02 * min(width, height)
    if blur_sigma < 0:
        raise ValidationError(f"blur_sigma must be >= 0, got {blur_sigma}")
    values = np.zeros((height, width), dtype=np.float64)
    for rec in records:
        values[rec.y, rec.x] += 1.0
    n = len(records)
    if n and blur_sigma > 0:
        values = ndimage.gaussian_filter(values, blur_sigma, mode="reflect")
    if n:
        values /= values.sum()
    return FixationMap(values=values, slice_index=slice_index, n_records=n)


@dataclass
class RocCurve:
    """Threshold-sweep curve over fixated vs. non-fixated pixels.

    points run from (0, 0) to (1, 1) with both coordinates non-decreasing;
    thresholds[i] is the cut producing points[i+1] (the endpoints are
    synthetic)."""

    points: list[tuple[float, float]]
    thresholds: list[float]
    auc: float = field(init=False)

    def __post_init__(self):
        fpr = np.array([p[0] for p in self.points])
        tpr = np.array([p[1] for p in self.points])
        self.auc = float(np.trapezoid(tpr, fpr))


def roc_curve(saliency, positives, negatives) -> RocCurve:
    """Sweep thresholds over the distinct saliency values of the labeled
    pixels; TPR/FPR count values at-or-above each threshold.

    `positives` and `negatives` are disjoint iterables of (y, x) pixel
    coordinates; `saliency` is a 2-D array or a SaliencyMap.
    """
    values = np.asarray(getattr(saliency, "values", saliency), dtype=np.float64)
    pos = list(positives)
    neg = list(negatives)
    if not pos or not neg:
        raise ValidationError("need at least one positive and one negative pixel")
    if set(pos) & set(neg):
        raise ValidationError("positive and negative pixel sets must be disjoint")
    pos_vals = np.array([values[p] for p in pos])
    neg_vals = np.array([values[p] for p in neg])
    thresholds = np.unique(np.concatenate([pos_vals, neg_vals]))[::-1]
    points = [(0.0, 0.0)]
    for th in thresholds:
        tpr = float(np.mean(pos_vals >= th))
        fpr = float(np.mean(neg_vals >= th))
        points.append((fpr, tpr))
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))
    return RocCurve(points=points, thresholds=[float(t) for t in thresholds])


def _positive_pixels(fixmap: FixationMap, quantile: float):
    """Pixels carrying the top `quantile` fraction of fixation-map values."""
    values = fixmap.values
    n_top = max(1, int(round(quantile * values.size)))
    flat = np.argsort(values, axis=None)[::-1][:n_top]
    ys, xs = np.unravel_index(flat, values.shape)
    return list(zip(ys.tolist(), xs.tolist()))


def _sample_negatives(shape, positives, n, rng):
    """Uniform sample (without replacement) of non-positive pixels."""
    mask = np.ones(shape, dtype=bool)
    for y, x in positives:
        mask[y, x] = False
    candidates = np.flatnonzero(mask.ravel())
    chosen = rng.choice(candidates, size=min(n, candidates.size), replace=False)
    ys, xs = np.unravel_index(chosen, shape)
    return list(zip(ys.tolist(), xs.tolist()))


def cross_validate(
    sequences: dict,
    fixation_maps: dict,
    quantile: float = 0.05,
    seed: int = 0,
    pooled: bool = False,
):
    """Mean AUC for every (scale, slice) pair over a set of images.

    `sequences` maps image_id -> list of saliency maps (one per scale);
    `fixation_maps` maps image_id -> list of FixationMap (one per slice).
    Positives are each slice's top-quantile fixation pixels; negatives are a
    seed-controlled uniform sample of equal size from the rest. With
    `pooled`, ROC statistics are pooled over images before integrating
    instead of averaging per-image AUCs.
    """
    if not sequences:
        raise ValidationError("no images to evaluate")
    missing = set(sequences) ^ set(fixation_maps)
    if missing:
        raise ValidationError(f"image(s) missing from one input: {sorted(missing)}")
    image_ids = sorted(sequences)
    n_scales = len(sequences[image_ids[0]])
    n_slices = len(fixation_maps[image_ids[0]])
    if n_scales < 2 or n_slices < 2:
        raise ValidationError("need at least two scales and two slices")
    rng = np.random.default_rng(seed)
    auc = np.zeros((n_scales, n_slices))
    counts = np.zeros(n_slices, dtype=int)
    # per image and slice, draw one positive/negative labeling shared by all
    # scales so scale comparisons are paired
    labelings = {}
    for image_id in image_ids:
        for t, fixmap in enumerate(fixation_maps[image_id]):
            if fixmap.n_records == 0:
                continue
            pos = _positive_pixels(fixmap, quantile)
            neg = _sample_negatives(fixmap.values.shape, pos, len(pos), rng)
            labelings[image_id, t] = (pos, neg)
    for s in range(n_scales):
        for t in range(n_slices):
            if pooled:
                pos_vals, neg_vals = [], []
                for image_id in image_ids:
                    if (image_id, t) not in labelings:
                        continue
                    pos, neg = labelings[image_id, t]
                    values = np.asarray(
                        getattr(sequences[image_id][s], "values", sequences[image_id][s])
                    )
                    pos_vals.extend(values[p] for p in pos)
                    neg_vals.extend(values[p] for p in neg)
                auc[s, t] = _auc_from_scores(np.array(pos_vals), np.array(neg_vals))
                if s == 0:
                    counts[t] = sum(1 for i in image_ids if (i, t) in labelings)
            else:
                per_image = []
                for image_id in image_ids:
                    if (image_id, t) not in labelings:
                        continue
                    pos, neg = labelings[image_id, t]
                    per_image.append(roc_curve(sequences[image_id][s], pos, neg).auc)
                if not per_image:
                    raise ValidationError(f"no fixations in slice {t} for any image")
                auc[s, t] = float(np.mean(per_image))
                if s == 0:
                    counts[t] = len(per_image)
    return auc, counts


def _auc_from_scores(pos_vals: np.ndarray, neg_vals: np.ndarray) -> float:
    thresholds = np.unique(np.concatenate([pos_vals, neg_vals]))[::-1]
    fpr = [0.0]
    tpr = [0.0]
    for th in thresholds:
        tpr.append(float(np.mean(pos_vals >= th)))
        fpr.append(float(np.mean(neg_vals >= th)))
    return float(np.trapezoid(tpr, fpr))
