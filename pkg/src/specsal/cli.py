"""Batch command-line front end: saliency sequences, baseline maps, the 1-D
demonstrations and fixation ROC evaluation.

Exit codes: 0 success, 1 runtime/data error, 2 usage error (click's default).
"""

from __future__ import annotations

import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np
from PIL import Image

from . import baselines, fixation, pfm, signals1d
from .scale_space import num_scales, saliency_sequence
from .spectral import ValidationError

IMAGE_SUFFIXES = {".png", ".pgm"}


def load_image(path: Path, resize: tuple[int, int] | None = None) -> np.ndarray:
    """Load an 8-bit PNG/PGM as float64 in [0, 1]; HxW or HxWx3."""
    with Image.open(path) as im:
        if resize is not None:
            im = im.resize(resize, Image.BILINEAR)
        if im.mode in ("L", "I;16"):
            arr = np.asarray(im.convert("L"), dtype=np.float64) / 255.0
        else:
            arr = np.asarray(im.convert("RGB"), dtype=np.float64) / 255.0
    return arr


def _collect_images(inputs) -> list[Path]:
    paths = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(sorted(q for q in p.iterdir() if q.suffix.lower() in IMAGE_SUFFIXES))
        else:
            paths.append(p)
    return paths


def save_map_pair(out_dir: Path, stem: str, values: np.ndarray) -> None:
    pfm.write_pfm(out_dir / f"{stem}.pfm", values)
    png = (np.clip(values, 0.0, 1.0) * 255.0).round().astype(np.uint8)
    Image.fromarray(png, mode="L").save(out_dir / f"{stem}.png")


def _parse_resize(value) -> tuple[int, int] | None:
    if value is None:
        return None
    try:
        w, h = (int(v) for v in value.lower().split("x"))
    except ValueError:
        raise click.BadParameter(f"expected WxH, got {value!r}")
    return (w, h)


def _parse_scales(value) -> list[int] | None:
    if value is None:
        return None
    try:
        scales = sorted({int(v) for v in value.split(",")})
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")
    if any(s < 1 for s in scales):
        raise click.BadParameter("scale indices start at 1")
    return scales


@click.group()
def main():
    """Spectrum scale-space saliency toolbox."""


shared = [
    click.option("--t0", type=float, default=0.5, show_default=True, help="Base kernel scale."),
    click.option(
        "--linear-amplitude",
        is_flag=True,
        help="Smooth the raw amplitude spectrum instead of its logarithm.",
    ),
    click.option(
        "--channel-mode",
        type=click.Choice(["gray", "opponent"]),
        default="gray",
        show_default=True,
    ),
    click.option("--post-sigma", type=float, default=None, help="Spatial post-blur sigma."),
    click.option("--resize", default=None, help="Resize inputs to WxH before processing."),
    click.option("--jobs", type=int, default=1, show_default=True, help="Parallel image workers."),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--strict", is_flag=True, help="Abort on the first bad input."),
    click.option(
        "--out",
        type=click.Path(file_okay=False, path_type=Path),
        default=Path("out"),
        show_default=True,
    ),
]


def with_shared_options(cmd):
    for opt in reversed(shared):
        cmd = opt(cmd)
    return cmd


def _run_per_image(paths, jobs, strict, worker):
    failures = []

    def guarded(path):
        try:
            worker(path)
        except Exception as exc:
            failures.append((path, exc))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(guarded, paths))
    else:
        for path in paths:
            guarded(path)
    for path, exc in failures:
        click.echo(f"error: {path}: {exc}", err=True)
    if failures and strict:
        sys.exit(1)


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("--scales", default=None, help="Comma-separated scale indices (default: all).")
@with_shared_options
def sequence(inputs, scales, t0, linear_amplitude, channel_mode, post_sigma, resize, jobs, seed, strict, out):
    """Compute the K-map saliency sequence for each input image."""
    resize = _parse_resize(resize)
    selected = _parse_scales(scales)
    paths = _collect_images(inputs)
    out.mkdir(parents=True, exist_ok=True)
    if not paths:
        click.echo("warning: no input images found", err=True)
        return

    def worker(path):
        img = load_image(path, resize)
        h, w = img.shape[:2]
        K = num_scales(h, w)
        wanted = selected or list(range(1, K + 1))
        bad = [k for k in wanted if k > K]
        if bad:
            raise ValidationError(f"scale index {bad[0]} exceeds K={K} for {w}x{h}")
        seq = saliency_sequence(
            img,
            t0=t0,
            post_sigma=post_sigma,
            use_log=not linear_amplitude,
            channel_mode=channel_mode,
        )
        for k in wanted:
            save_map_pair(out, f"{path.stem}_k{k}", seq[k - 1].values)
        sidecar = {
            "input": str(path),
            "K": K,
            "scales": wanted,
            "t0": t0,
            "use_log": not linear_amplitude,
            "channel_mode": channel_mode,
            "post_sigma": post_sigma,
            "resize": list(resize) if resize else None,
            "seed": seed,
        }
        (out / f"{path.stem}_sequence.json").write_text(json.dumps(sidecar, indent=2))

    _run_per_image(paths, jobs, strict, worker)


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option(
    "--model",
    type=click.Choice(["pft", "sr", "ft", "all"]),
    default="all",
    show_default=True,
)
@with_shared_options
def baseline(inputs, model, t0, linear_amplitude, channel_mode, post_sigma, resize, jobs, seed, strict, out):
    """Compute PFT / SR / FT baseline saliency maps."""
    resize = _parse_resize(resize)
    paths = _collect_images(inputs)
    out.mkdir(parents=True, exist_ok=True)
    if not paths:
        click.echo("warning: no input images found", err=True)
        return
    models = ["pft", "sr", "ft"] if model == "all" else [model]

    def worker(path):
        img = load_image(path, resize)
        for name in models:
            if name == "pft":
                result = baselines.pft_saliency(img, post_sigma)
            elif name == "sr":
                result = baselines.sr_saliency(img, post_sigma=post_sigma)
            else:
                result = baselines.ft_saliency(img)
            save_map_pair(out, f"{path.stem}_{name}", result.values)

    _run_per_image(paths, jobs, strict, worker)


@main.command()
@click.option(
    "--only",
    type=click.Choice(["fig7", "fig8", "both"]),
    default="both",
    show_default=True,
)
@click.option("--sigma", type=float, default=2.0, show_default=True, help="Spectrum smoothing sigma for the suppression trace.")
@click.option("--n-samples", type=int, default=512, show_default=True)
@with_shared_options
def demo1d(only, sigma, n_samples, t0, linear_amplitude, channel_mode, post_sigma, resize, jobs, seed, strict, out):
    """Write CSV traces of the 1-D spike-sharpening and suppression demos."""
    out.mkdir(parents=True, exist_ok=True)
    if only in ("fig7", "both"):
        curve = signals1d.sharpness_curve(16.0, [4, 8, 16], n_samples=n_samples)
        with open(out / "fig7_sharpness.csv", "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["n_cycles", "sharpness"])
            for n, p in curve:
                writer.writerow([n, repr(p)])
    if only in ("fig8", "both"):
        spec = signals1d.CompositeSpec(dc_offset=1.0)
        sig = signals1d.synthesize_composite(spec, n_samples)
        recon, sal = signals1d.suppress_and_reconstruct_1d(
            sig, sigma, use_log=not linear_amplitude
        )
        removed, _ = signals1d.removed_components(sig, recon)
        t = np.arange(n_samples) / sig.sample_rate
        with open(out / "fig8_trace.csv", "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["t", "original", "reconstruction", "saliency", "removed"])
            for row in zip(t, sig.samples, recon.samples, sal.samples, removed.samples):
                writer.writerow([repr(v) for v in row])


@main.command()
@click.option("--fixations", "fixations_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--maps", "maps_dir", type=click.Path(exists=True, file_okay=False), required=True, help="Directory of <image_id>_k<k>.pfm saliency maps.")
@click.option("--scales", required=True, help="Comma-separated scale indices to evaluate.")
@click.option("--slices", "slice_edges", required=True, help="Comma-separated millisecond slice edges.")
@click.option("--discard-before", type=float, default=100.0, show_default=True)
@click.option("--quantile", type=float, default=0.05, show_default=True)
@click.option("--blur-sigma", type=float, default=None)
@click.option("--pooled", is_flag=True, help="Pool ROC statistics over images instead of averaging per-image AUCs.")
@with_shared_options
def eval(fixations_path, manifest_path, maps_dir, scales, slice_edges, discard_before, quantile, blur_sigma, pooled, t0, linear_amplitude, channel_mode, post_sigma, resize, jobs, seed, strict, out):
    """Run the scale-vs-slice ROC cross-validation."""
    out.mkdir(parents=True, exist_ok=True)
    scale_list = _parse_scales(scales)
    try:
        edges = [float(v) for v in slice_edges.split(",")]
        slice_spec = fixation.TimeSliceSpec(boundaries=edges, discard_before_ms=discard_before)
    except (ValueError, ValidationError) as exc:
        raise click.BadParameter(str(exc))
    bounds = {}
    with open(manifest_path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            bounds[row["image_id"].strip()] = (int(row["width"]), int(row["height"]))
    try:
        records = fixation.load_fixations(
            fixations_path, bounds, strict=strict, warn=lambda m: click.echo(m, err=True)
        )
        maps_root = Path(maps_dir)
        sequences = {}
        fixmaps = {}
        by_image: dict[str, list] = {iid: [] for iid in bounds}
        for rec in records:
            by_image[rec.image_id].append(rec)
        for image_id, (width, height) in sorted(bounds.items()):
            per_scale = []
            for k in scale_list:
                path = maps_root / f"{image_id}_k{k}.pfm"
                if not path.exists():
                    raise ValidationError(f"missing saliency map {path}")
                per_scale.append(pfm.read_pfm(path).astype(np.float64))
            sequences[image_id] = per_scale
            slices = fixation.slice_fixations(by_image[image_id], slice_spec)
            fixmaps[image_id] = [
                fixation.fixation_map(recs, width, height, blur_sigma, slice_index=t)
                for t, recs in enumerate(slices)
            ]
        auc, counts = fixation.cross_validate(
            sequences, fixmaps, quantile=quantile, seed=seed, pooled=pooled
        )
    except (ValidationError, fixation.IngestionError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    with open(out / "auc_matrix.csv", "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["scale", "slice", "mean_auc", "n_images", "seed"])
        for si, k in enumerate(scale_list):
            for t in range(slice_spec.n_slices):
                writer.writerow([k, t, repr(float(auc[si, t])), int(counts[t]), seed])
    # per (scale, slice) ROC points for the first image, for plotting
    first = sorted(sequences)[0]
    for si, k in enumerate(scale_list):
        for t, fixmap in enumerate(fixmaps[first]):
            if fixmap.n_records == 0:
                continue
            rng = np.random.default_rng(seed)
            pos = fixation._positive_pixels(fixmap, quantile)
            neg = fixation._sample_negatives(fixmap.values.shape, pos, len(pos), rng)
            curve = fixation.roc_curve(sequences[first][si], pos, neg)
            with open(out / f"roc_scale{k}_slice{t}.csv", "w", newline="") as f:
                writer = csv.writer(f)
                writer.writerow(["threshold", "fpr", "tpr"])
                for th, (fpr, tpr) in zip([float("nan")] + curve.thresholds, curve.points):
                    writer.writerow([repr(th), repr(fpr), repr(tpr)])


if __name__ == "__main__":
    main()
