"""Index aggregation: hierarchical arithmetic/geometric and weighted mean.

Two of the three index methods live here. The hierarchical method takes
the unweighted arithmetic mean of each pillar's normalized indicators and
joins the four pillar scores with a geometric mean, so a collapse in any
single pillar pulls the whole index down instead of being compensated by
the others. The weighted method is a two-level weighted arithmetic mean
(pillar weights times within-pillar indicator weights). Every method's
raw index is finally min-max rescaled so the best region scores exactly 1
and the worst exactly 0.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import NegativeInputError, WeightManifestMismatchError
from .model import (
    PILLARS,
    IndexResult,
    IndicatorMatrix,
    Manifest,
    Method,
    Pillar,
    PillarScores,
    Stage,
    WeightScheme,
    build_weight_scheme,
)
from .normalize import DegenerateColumnWarning

#: Default pillar weighting for the weighted-mean method, as elicited from
#: an expert panel (percentages; renormalized because they sum to 99.6).
DEFAULT_PILLAR_WEIGHTS: dict[Pillar, float] = {
    Pillar.ECONOMY: 28.4,
    Pillar.SOCIAL_WELFARE: 26.2,
    Pillar.ENVIRONMENT: 24.0,
    Pillar.POPULATION: 21.0,
}


def delphi_default_weights(manifest: Manifest) -> WeightScheme:
    """Weight scheme used by compute_delphi when no override is supplied."""
    return build_weight_scheme(manifest, pillar_weights=DEFAULT_PILLAR_WEIGHTS)


def pillar_arithmetic_means(matrix: IndicatorMatrix, manifest: Manifest) -> PillarScores:
    """Unweighted mean of each pillar's normalized indicators, per region."""
    if matrix.stage is not Stage.NORMALIZED:
        raise ValueError("pillar means are defined on a normalized matrix")
    scores: dict[str, dict[Pillar, float]] = {}
    pillar_columns = {p: matrix.columns(manifest.pillar_ids(p)) for p in PILLARS}
    for i, region in enumerate(matrix.regions):
        scores[region] = {p: float(cols[i].mean()) for p, cols in pillar_columns.items()}
    return PillarScores(method=Method.ABREU, scores=scores)


def geometric_mean(values: Iterable[float]) -> float:
    """Geometric mean of nonnegative values; exactly 0 if any value is 0.

    Computed as exp(mean(log x)) for numerical robustness. The zero case
    is short-circuited (no epsilon flooring): one collapsed component is
    meant to zero the whole product.
    """
    values = [float(v) for v in values]
    if not values:
        raise ValueError("geometric mean of an empty sequence")
    for v in values:
        if v < 0:
            raise NegativeInputError(v)
    if any(v == 0.0 for v in values):
        return 0.0
    return float(math.exp(sum(math.log(v) for v in values) / len(values)))


def rescale_final(raw_index: Mapping[str, float]) -> dict[str, float]:
    """Min-max rescale a raw index so it spans [0, 1] over the regions.

    An all-equal input cannot be spanned; it maps to 0.5 everywhere with a
    DegenerateColumnWarning.
    """
    if len(raw_index) < 2:
        raise ValueError("rescaling needs at least two regions")
    values = np.array(list(raw_index.values()), dtype=float)
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        warnings.warn(
            "raw index is constant across regions; rescaled to 0.5",
            DegenerateColumnWarning,
            stacklevel=2,
        )
        return {region: 0.5 for region in raw_index}
    return {region: (value - lo) / (hi - lo) for region, value in raw_index.items()}


def rank_regions(rescaled_index: Mapping[str, float]) -> tuple[str, ...]:
    """Regions in descending index order; ties broken by label."""
    return tuple(sorted(rescaled_index, key=lambda region: (-rescaled_index[region], region)))


def build_index_result(method: Method, raw_index: Mapping[str, float]) -> IndexResult:
    """Attach the rescaled index and ranking to a raw index vector."""
    rescaled = rescale_final(raw_index)
    return IndexResult(
        method=method,
        raw_index=dict(raw_index),
        rescaled_index=rescaled,
        ranking=rank_regions(rescaled),
    )


def compute_abreu(matrix: IndicatorMatrix, manifest: Manifest) -> IndexResult:
    """Hierarchical index: pillar arithmetic means joined by a geometric mean.

    Indicator and pillar weights are deliberately ignored; all four pillars
    contribute equally.
    """
    pillar_scores = pillar_arithmetic_means(matrix, manifest)
    raw = {
        region: geometric_mean(scores[p] for p in PILLARS)
        for region, scores in pillar_scores.scores.items()
    }
    return build_index_result(Method.ABREU, raw)


def compute_delphi(
    matrix: IndicatorMatrix, manifest: Manifest, weights: WeightScheme | None = None
) -> IndexResult:
    """Two-level weighted arithmetic mean of the normalized indicators.

    raw(region) = sum over pillars of pillar_weight *
    sum over the pillar's indicators of indicator_weight * value.
    """
    if matrix.stage is not Stage.NORMALIZED:
        raise ValueError("the weighted index is defined on a normalized matrix")
    if weights is None:
        weights = delphi_default_weights(manifest)
    unknown = set(weights.indicator_weights) - set(manifest.ids)
    if unknown:
        raise WeightManifestMismatchError(unknown)
    missing = set(manifest.ids) - set(weights.indicator_weights)
    if missing:
        raise WeightManifestMismatchError(missing)

    # Flatten the two weight levels: each column weighs pillar_w * indicator_w.
    flat = np.array(
        [
            weights.pillar_weights[manifest.spec(ind).pillar] * weights.indicator_weights[ind]
            for ind in matrix.indicators
        ]
    )
    raw_vector = matrix.values @ flat
    raw = {region: float(raw_vector[i]) for i, region in enumerate(matrix.regions)}
    return build_index_result(Method.DELPHI, raw)


def write_index_csv(result: IndexResult, path: str | Path) -> None:
    """Write one method's index as CSV (region,raw,rescaled,rank)."""
    ranks = {region: position + 1 for position, region in enumerate(result.ranking)}
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["region", "raw", "rescaled", "rank"])
        for region in result.regions:
            writer.writerow(
                [
                    region,
                    f"{result.raw_index[region]:.6f}",
                    f"{result.rescaled_index[region]:.6f}",
                    ranks[region],
                ]
            )


def write_index_json(result: IndexResult, path: str | Path) -> None:
    payload = {
        "method": result.method.value,
        "raw_index": {r: result.raw_index[r] for r in result.regions},
        "rescaled_index": {r: result.rescaled_index[r] for r in result.regions},
        "ranking": list(result.ranking),
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
