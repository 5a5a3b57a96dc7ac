"""Reading and writing of manifest and dataset files.

File conventions are deliberately rigid so that fixtures round-trip
byte-for-byte: CSV files use a comma delimiter, "." as decimal separator,
UTF-8 encoding and LF line endings. The JSON alternative for datasets is
an object ``{"regions": [...], "indicators": [...], "values": [[...]]}``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ConstantComponentError,
    DuplicateRegionError,
    ManifestFormatError,
    MissingCellError,
    MissingIndicatorError,
    NonNumericCellError,
    UnknownIndicatorError,
)
from .model import Direction, IndicatorMatrix, IndicatorSpec, Manifest, Pillar, Stage, validate_manifest

MANIFEST_COLUMNS = ("id", "label", "pillar", "direction", "weight", "unit")
REGION_COLUMN = "region"


def parse_manifest(path: str | Path) -> Manifest:
    """Load and validate a manifest CSV (columns id,label,pillar,direction,weight,unit)."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = tuple(reader.fieldnames or ())
        if header != MANIFEST_COLUMNS:
            raise ManifestFormatError(
                f"manifest header must be {','.join(MANIFEST_COLUMNS)}, got {','.join(header)}"
            )
        specs = []
        for row in reader:
            try:
                pillar = Pillar(row["pillar"])
            except ValueError:
                raise ManifestFormatError(f"unknown pillar {row['pillar']!r}") from None
            try:
                direction = Direction(row["direction"])
            except ValueError:
                raise ManifestFormatError(f"unknown direction {row['direction']!r}") from None
            weight_text = (row["weight"] or "").strip()
            try:
                weight = float(weight_text) if weight_text else 1.0
            except ValueError:
                raise ManifestFormatError(
                    f"non-numeric weight {weight_text!r} for indicator {row['id']!r}"
                ) from None
            specs.append(
                IndicatorSpec(
                    id=row["id"],
                    label=row["label"],
                    pillar=pillar,
                    direction=direction,
                    weight=weight,
                    unit=row["unit"],
                )
            )
    return validate_manifest(specs)


def _check_header(indicator_ids: Sequence[str], manifest: Manifest) -> None:
    present = set(indicator_ids)
    for indicator_id in indicator_ids:
        if indicator_id not in manifest.ids:
            raise UnknownIndicatorError(indicator_id)
    for indicator_id in manifest.ids:
        if indicator_id not in present:
            raise MissingIndicatorError(indicator_id)
    if len(present) != len(indicator_ids):
        seen: set[str] = set()
        duplicates = sorted({i for i in indicator_ids if i in seen or seen.add(i)})
        raise ManifestFormatError(f"duplicate indicator columns: {', '.join(duplicates)}")


def parse_dataset(path: str | Path, manifest: Manifest) -> IndicatorMatrix:
    """Parse a raw dataset file (CSV or JSON by extension) against a manifest.

    The data columns must match the manifest ids exactly, order-insensitive;
    column order of the file is preserved in the returned matrix. Raises
    MissingCellError, NonNumericCellError, DuplicateRegionError,
    UnknownIndicatorError or MissingIndicatorError.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        return _parse_dataset_json(path, manifest)
    return _parse_dataset_csv(path, manifest)


def _parse_dataset_csv(path: Path, manifest: Manifest) -> IndicatorMatrix:
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ManifestFormatError(f"{path} is empty") from None
        if not header or header[0] != REGION_COLUMN:
            raise ManifestFormatError(f"first data column must be {REGION_COLUMN!r}")
        indicator_ids = tuple(header[1:])
        _check_header(indicator_ids, manifest)
        regions: list[str] = []
        rows: list[list[float]] = []
        for row in reader:
            if not row:
                continue
            region = row[0]
            if region in regions:
                raise DuplicateRegionError(region)
            regions.append(region)
            cells = row[1:]
            values = []
            for indicator_id, text in zip(indicator_ids, cells):
                text = text.strip()
                if not text:
                    raise MissingCellError(region, indicator_id)
                try:
                    values.append(float(text))
                except ValueError:
                    raise NonNumericCellError(region, indicator_id, text) from None
            if len(cells) < len(indicator_ids):
                raise MissingCellError(region, indicator_ids[len(cells)])
            rows.append(values)
    return IndicatorMatrix(regions, indicator_ids, rows, stage=Stage.RAW)


def _parse_dataset_json(path: Path, manifest: Manifest) -> IndicatorMatrix:
    payload = json.loads(path.read_text(encoding="utf-8"))
    regions = payload["regions"]
    indicator_ids = tuple(payload["indicators"])
    values = payload["values"]
    _check_header(indicator_ids, manifest)
    seen: set[str] = set()
    for region in regions:
        if region in seen:
            raise DuplicateRegionError(region)
        seen.add(region)
    for region, row in zip(regions, values):
        if len(row) < len(indicator_ids):
            raise MissingCellError(region, indicator_ids[len(row)])
        for indicator_id, value in zip(indicator_ids, row):
            if value is None:
                raise MissingCellError(region, indicator_id)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise NonNumericCellError(region, indicator_id, repr(value))
    return IndicatorMatrix(regions, indicator_ids, values, stage=Stage.RAW)


def write_dataset_csv(matrix: IndicatorMatrix, path: str | Path) -> None:
    """Serialize a matrix as dataset CSV with exact (shortest round-trip) floats."""
    path = Path(path)
    lines = [REGION_COLUMN + "," + ",".join(matrix.indicators)]
    for i, region in enumerate(matrix.regions):
        cells = (repr(float(v)) for v in matrix.values[i])
        lines.append(region + "," + ",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_dataset_json(matrix: IndicatorMatrix, path: str | Path) -> None:
    payload = {
        "regions": list(matrix.regions),
        "indicators": list(matrix.indicators),
        "values": [[float(v) for v in row] for row in matrix.values],
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def composite_indicator(components: Mapping[str, Sequence[float]]) -> np.ndarray:
    """Combine component columns into one derived indicator column.

    Each component is min-max normalized to [0, 1] across regions and the
    normalized components are averaged per region with equal weight. The
    result is a raw-stage derived column; it takes part in the usual
    normalization later like any other indicator.

    Raises ConstantComponentError if a component has max equal to min.
    """
    if len(components) < 2:
        raise ValueError("need at least two component columns")
    columns = {name: np.asarray(values, dtype=float) for name, values in components.items()}
    lengths = {len(col) for col in columns.values()}
    if len(lengths) != 1:
        raise ValueError("component columns must cover the same regions")
    normalized = []
    for name, col in columns.items():
        lo, hi = col.min(), col.max()
        if hi == lo:
            raise ConstantComponentError(name)
        normalized.append((col - lo) / (hi - lo))
    return np.mean(normalized, axis=0)
