"""Batch benchmarking over a directory of images and report serialization."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .histogram import L, compute_histogram
from .imageio import ImageFormatError, read_image
from .methods import DEFAULT_RSIHE_DEPTH, MethodId, apply_method
from .metrics import MetricsReport, evaluate

log = logging.getLogger(__name__)

REPORT_FIELDS = ("image", "method", "entropy", "entropy_pct", "psnr", "ambe", "ssim")
METRIC_FIELDS = REPORT_FIELDS[2:]
AVERAGE_KEY = "AVERAGE"


@dataclass(frozen=True)
class BenchmarkRow:
    image: str
    method: MethodId
    metrics: MetricsReport


@dataclass
class BenchmarkRun:
    corpus: str
    methods: list[MethodId]
    rows: list[BenchmarkRow] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def images(self) -> list[str]:
        return sorted({r.image for r in self.rows})

    def rows_for(self, method: MethodId) -> list[BenchmarkRow]:
        return [r for r in self.rows if r.method is method]

    def aggregates(self) -> dict[MethodId, dict[str, float]]:
        """Arithmetic mean of every metric per method, in method order."""
        out = {}
        for method in self.methods:
            rows = self.rows_for(method)
            if not rows:
                continue
            out[method] = {
                name: float(np.mean([r.metrics.as_dict()[name] for r in rows]))
                for name in METRIC_FIELDS
            }
        return out


def corpus_files(directory) -> list[Path]:
    """Non-hidden regular files in ``directory``, sorted by name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"corpus is not a directory: {directory}")
    return sorted(p for p in directory.iterdir() if p.is_file() and not p.name.startswith("."))


def _process(path: Path, methods: Sequence[MethodId], rsihe_depth: int, ssim_window: bool):
    try:
        original = read_image(path)
    except (OSError, ImageFormatError) as exc:
        return path.name, None, str(exc)
    rows = []
    for method in methods:
        enhanced = apply_method(method, original, rsihe_depth)
        rows.append(BenchmarkRow(path.name, method, evaluate(original, enhanced, ssim_window=ssim_window)))
    return path.name, rows, None


def run_benchmark(
    corpus,
    methods: Iterable[MethodId],
    *,
    rsihe_depth: int = DEFAULT_RSIHE_DEPTH,
    ssim_window: bool = False,
    workers: int = 1,
) -> BenchmarkRun:
    """Enhance every image with every method and score it against the original.

    Unreadable files are logged and listed in ``BenchmarkRun.skipped``.
    Rows come out sorted by image name, then in the given method order,
    whatever the worker count.
    """
    methods = [MethodId(m) for m in methods]
    if not methods:
        raise ValueError("no methods given")
    files = corpus_files(corpus)
    if not files:
        raise ValueError(f"empty corpus: {corpus}")

    def work(path):
        return _process(path, methods, rsihe_depth, ssim_window)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, files))
    else:
        results = [work(p) for p in files]

    run = BenchmarkRun(corpus=str(corpus), methods=methods)
    for name, rows, error in sorted(results, key=lambda r: r[0]):
        if error is not None:
            log.warning("skipping %s: %s", name, error)
            run.skipped.append(name)
        else:
            run.rows.extend(rows)
    if not run.rows:
        raise ValueError(f"no loadable images in corpus: {corpus}")
    return run


def format_value(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.3f}"


def _json_value(value: float):
    if math.isnan(value) or math.isinf(value):
        return format_value(value)
    return round(value, 3)


def write_report(run: BenchmarkRun, fmt: str = "csv", *, averages: bool = True) -> str:
    """Serialize per-image rows, then (optionally) the per-method ``AVERAGE`` rows."""
    if not run.rows:
        raise ValueError("empty benchmark run")
    rows = [
        (row.image, row.method.value, *(row.metrics.as_dict()[k] for k in METRIC_FIELDS))
        for row in run.rows
    ]
    summary = []
    if averages:
        for method, means in run.aggregates().items():
            summary.append((AVERAGE_KEY, method.value, *(means[k] for k in METRIC_FIELDS)))

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for rec in rows + summary:
            writer.writerow([rec[0], rec[1], *(format_value(v) for v in rec[2:])])
        return buf.getvalue()
    if fmt == "json":

        def obj(rec):
            return {
                "image": rec[0],
                "method": rec[1],
                **{k: _json_value(v) for k, v in zip(METRIC_FIELDS, rec[2:])},
            }

        doc = {"corpus": run.corpus, "rows": [obj(r) for r in rows], "skipped": list(run.skipped)}
        if averages:
            doc[AVERAGE_KEY] = [{k: v for k, v in obj(r).items() if k != "image"} for r in summary]
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str, fmt: str = "csv") -> tuple[list[dict], list[dict]]:
    """Inverse of :func:`write_report`: ``(rows, averages)`` with float metric values."""

    def numeric(rec):
        return {k: (float(v) if k in METRIC_FIELDS else v) for k, v in rec.items()}

    if fmt == "csv":
        records = [numeric(r) for r in csv.DictReader(io.StringIO(text))]
        rows = [r for r in records if r["image"] != AVERAGE_KEY]
        summary = [r for r in records if r["image"] == AVERAGE_KEY]
        return rows, summary
    if fmt == "json":
        doc = json.loads(text)
        summary = [numeric({"image": AVERAGE_KEY, **r}) for r in doc.get(AVERAGE_KEY, [])]
        return [numeric(r) for r in doc["rows"]], summary
    raise ValueError(f"unknown report format {fmt!r}")


def dump_histogram(image) -> str:
    """256 lines ``level,count``."""
    bins = compute_histogram(image).bins
    return "".join(f"{k},{int(bins[k])}\n" for k in range(L))
