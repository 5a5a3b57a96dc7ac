"""Cross-method comparison: correlations, descriptive stats, rankings, plots.

Quartiles use Tukey's inclusive hinges (for an odd number of observations
the median belongs to both halves) and the standard deviation uses the
sample (n-1) denominator. Plot output is dependency-free: parallel
coordinates are emitted as CSV plus a small hand-written SVG, and the
scatter-matrix point sets as CSV.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ConstantVectorError,
    FewerThanTwoMethodsError,
    LengthMismatchError,
    RegionSetMismatchError,
    TooShortError,
)
from .model import IndexResult, Method


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient of two equal-length vectors."""
    ax = np.asarray(x, dtype=float)
    ay = np.asarray(y, dtype=float)
    if ax.size != ay.size:
        raise LengthMismatchError(ax.size, ay.size)
    if ax.size < 2:
        raise TooShortError(ax.size, 2)
    cx = ax - ax.mean()
    cy = ay - ay.mean()
    sx = float(cx @ cx)
    sy = float(cy @ cy)
    if sx == 0.0 or sy == 0.0:
        raise ConstantVectorError("correlation is undefined for a constant vector")
    r = float((cx @ cy) / math.sqrt(sx * sy))
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class DescriptiveStats:
    """Boxplot-style summary of one index column."""

    min: float
    q1: float
    median: float
    q3: float
    max: float
    iqr: float
    mean: float
    sd: float
    whisker_low: float
    whisker_high: float


def _tukey_hinges(sorted_values: np.ndarray) -> tuple[float, float]:
    n = sorted_values.size
    half = (n + 1) // 2  # odd n: median included in both halves
    lower = sorted_values[:half]
    upper = sorted_values[n - half:]
    return float(np.median(lower)), float(np.median(upper))


def describe(values: Sequence[float]) -> DescriptiveStats:
    """Descriptive statistics with Tukey inclusive-hinge quartiles."""
    data = np.asarray(values, dtype=float)
    if data.size < 2:
        raise TooShortError(data.size, 2)
    ordered = np.sort(data)
    q1, q3 = _tukey_hinges(ordered)
    iqr = q3 - q1
    return DescriptiveStats(
        min=float(ordered[0]),
        q1=q1,
        median=float(np.median(ordered)),
        q3=q3,
        max=float(ordered[-1]),
        iqr=iqr,
        mean=float(data.mean()),
        sd=float(data.std(ddof=1)),
        whisker_low=q1 - 1.5 * iqr,
        whisker_high=q3 + 1.5 * iqr,
    )


def _check_same_regions(results: Sequence[IndexResult]) -> tuple[str, ...]:
    regions = results[0].regions
    for result in results[1:]:
        if set(result.regions) != set(regions):
            raise RegionSetMismatchError(
                f"method {result.method.value!r} covers a different region set"
            )
    return regions


def rank_table(results: Sequence[IndexResult]) -> dict[Method, tuple[str, ...]]:
    """Ranking (descending rescaled value, label tie-break) per method."""
    if not results:
        raise ValueError("rank_table needs at least one result")
    _check_same_regions(results)
    return {result.method: result.ranking for result in results}


def crossings(rank_a: Sequence[str], rank_b: Sequence[str]) -> int:
    """Number of region pairs ordered oppositely by two rankings.

    This is the Kendall discordant-pair count: 0 for identical rankings,
    n*(n-1)/2 for fully reversed ones.
    """
    if set(rank_a) != set(rank_b):
        raise RegionSetMismatchError("rankings cover different region sets")
    pos_b = {region: i for i, region in enumerate(rank_b)}
    count = 0
    items = list(rank_a)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if pos_b[items[i]] > pos_b[items[j]]:
                count += 1
    return count


@dataclass(frozen=True)
class ComparisonReport:
    """Pairwise correlations, per-method stats, rankings and rank crossings."""

    methods: tuple[Method, ...]
    regions: tuple[str, ...]
    pairwise_r: Mapping[tuple[Method, Method], float]
    per_method_stats: Mapping[Method, DescriptiveStats]
    rankings: Mapping[Method, tuple[str, ...]]
    crossings: Mapping[tuple[Method, Method], int]

    def r(self, a: Method, b: Method) -> float:
        return self.pairwise_r[(a, b)]


def build_comparison(results: Sequence[IndexResult]) -> ComparisonReport:
    """Compare two or more method results over the same region set."""
    if len(results) < 2:
        raise FewerThanTwoMethodsError(f"got {len(results)} result(s), need at least 2")
    regions = _check_same_regions(results)
    methods = tuple(result.method for result in results)
    vectors = {result.method: result.rescaled_vector(regions) for result in results}

    pairwise: dict[tuple[Method, Method], float] = {}
    cross: dict[tuple[Method, Method], int] = {}
    for a in results:
        for b in results:
            key = (a.method, b.method)
            pairwise[key] = 1.0 if a is b else pearson(vectors[a.method], vectors[b.method])
            cross[key] = 0 if a is b else crossings(a.ranking, b.ranking)
    stats = {m: describe(vectors[m]) for m in methods}
    rankings = {result.method: result.ranking for result in results}
    return ComparisonReport(
        methods=methods,
        regions=regions,
        pairwise_r=pairwise,
        per_method_stats=stats,
        rankings=rankings,
        crossings=cross,
    )


# -- artifact writers --------------------------------------------------------

def write_report_json(report: ComparisonReport, path: str | Path) -> None:
    payload = {
        "methods": [m.value for m in report.methods],
        "regions": list(report.regions),
        "pairwise_r": {
            f"{a.value}:{b.value}": report.pairwise_r[(a, b)]
            for a in report.methods
            for b in report.methods
        },
        "crossings": {
            f"{a.value}:{b.value}": report.crossings[(a, b)]
            for a in report.methods
            for b in report.methods
        },
        "per_method_stats": {
            m.value: vars(report.per_method_stats[m]) for m in report.methods
        },
        "rankings": {m.value: list(report.rankings[m]) for m in report.methods},
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def write_report_csv(report: ComparisonReport, path: str | Path) -> None:
    """Tabular report: one correlation block, one stats block, one ranking block."""
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["block", "key"] + [m.value for m in report.methods])
        for a in report.methods:
            writer.writerow(
                ["pearson", a.value]
                + [f"{report.pairwise_r[(a, b)]:.6f}" for b in report.methods]
            )
        for a in report.methods:
            writer.writerow(
                ["crossings", a.value]
                + [str(report.crossings[(a, b)]) for b in report.methods]
            )
        stat_fields = ["min", "q1", "median", "q3", "max", "iqr", "mean", "sd"]
        for field_name in stat_fields:
            writer.writerow(
                ["stats", field_name]
                + [
                    f"{getattr(report.per_method_stats[m], field_name):.6f}"
                    for m in report.methods
                ]
            )
        for position in range(len(report.regions)):
            writer.writerow(
                ["ranking", str(position + 1)]
                + [report.rankings[m][position] for m in report.methods]
            )


def write_parallel_csv(results: Sequence[IndexResult], path: str | Path) -> None:
    """Polyline vertices: one row per (region, method axis) pair."""
    regions = _check_same_regions(results)
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["region", "method", "axis", "value"])
        for region in regions:
            for axis, result in enumerate(results):
                writer.writerow(
                    [region, result.method.value, axis, f"{result.rescaled_index[region]:.9f}"]
                )


def read_parallel_csv(path: str | Path) -> dict[str, list[tuple[str, float]]]:
    """Re-parse a polyline CSV into region -> [(method, value), ...]."""
    polylines: dict[str, list[tuple[str, float]]] = {}
    with Path(path).open(newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            polylines.setdefault(row["region"], []).append(
                (row["method"], float(row["value"]))
            )
    return polylines


def write_scatter_csv(results: Sequence[IndexResult], path: str | Path) -> None:
    """Point sets for every unordered method pair (scatter-matrix data)."""
    regions = _check_same_regions(results)
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["method_x", "method_y", "region", "x", "y"])
        for i, a in enumerate(results):
            for b in results[i + 1:]:
                for region in regions:
                    writer.writerow(
                        [
                            a.method.value,
                            b.method.value,
                            region,
                            f"{a.rescaled_index[region]:.6f}",
                            f"{b.rescaled_index[region]:.6f}",
                        ]
                    )


_SVG_WIDTH = 720
_SVG_HEIGHT = 480
_SVG_MARGIN = 60
_POLYLINE_COLORS = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def write_parallel_svg(results: Sequence[IndexResult], path: str | Path) -> None:
    """Emit a minimal static parallel-coordinates SVG (axes, polylines, labels)."""
    regions = _check_same_regions(results)
    n_axes = len(results)
    if n_axes < 2:
        raise FewerThanTwoMethodsError("parallel coordinates need at least two axes")
    inner_w = _SVG_WIDTH - 2 * _SVG_MARGIN
    inner_h = _SVG_HEIGHT - 2 * _SVG_MARGIN

    def x_at(axis: int) -> float:
        return _SVG_MARGIN + inner_w * axis / (n_axes - 1)

    def y_at(value: float) -> float:
        return _SVG_MARGIN + inner_h * (1.0 - value)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_WIDTH}" '
        f'height="{_SVG_HEIGHT}" viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        f'<rect width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" fill="white"/>',
    ]
    for axis, result in enumerate(results):
        x = x_at(axis)
        parts.append(
            f'<line x1="{x:.2f}" y1="{y_at(1.0):.2f}" x2="{x:.2f}" y2="{y_at(0.0):.2f}" '
            'stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{y_at(0.0) + 24:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{result.method.value}</text>'
        )
        for tick in (0.0, 1.0):
            parts.append(
                f'<text x="{x - 8:.2f}" y="{y_at(tick) + 4:.2f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{tick:.0f}</text>'
            )
    for i, region in enumerate(regions):
        color = _POLYLINE_COLORS[i % len(_POLYLINE_COLORS)]
        points = " ".join(
            f"{x_at(axis):.2f},{y_at(result.rescaled_index[region]):.2f}"
            for axis, result in enumerate(results)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        y_label = y_at(results[-1].rescaled_index[region])
        parts.append(
            f'<text x="{x_at(n_axes - 1) + 6:.2f}" y="{y_label + 4:.2f}" '
            f'font-family="sans-serif" font-size="10" fill="{color}">{_xml_escape(region)}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def _xml_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
