"""Bundled dataset: 9 Portuguese NUTS III regions by 25 indicators.

The package ships three CSV files: the default indicator manifest, the
raw indicator table (``nuts3.csv``) and the reference index values for
the same regions (``table3.csv``), against which the engine's output can
be compared. All loaders return the same immutable objects used by the
rest of the package.
"""

from __future__ import annotations

import csv
from importlib import resources
from pathlib import Path

from .errors import ManifestFormatError
from .ingest import parse_dataset, parse_manifest
from .model import IndexResult, IndicatorMatrix, Manifest, Method
from .aggregate import rank_regions

MANIFEST_FILE = "manifest.csv"
DATASET_FILE = "nuts3.csv"
REFERENCE_FILE = "table3.csv"


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file."""
    return Path(resources.files("indexforge") / "data" / name)


def load_default_manifest() -> Manifest:
    """The 25-indicator manifest (5/7/7/6 per pillar, three cost indicators)."""
    return parse_manifest(data_path(MANIFEST_FILE))


def load_nuts3_dataset() -> tuple[Manifest, IndicatorMatrix]:
    """The bundled raw dataset together with its manifest."""
    manifest = load_default_manifest()
    matrix = parse_dataset(data_path(DATASET_FILE), manifest)
    return manifest, matrix


def load_reference_indexes(path: str | Path | None = None) -> dict[Method, IndexResult]:
    """Reference index values per method, packaged as IndexResult objects.

    These are previously published values for the bundled dataset, kept as
    two-decimal numbers exactly as released; raw and rescaled values are
    identical because the reference columns already span [0, 1].
    """
    path = data_path(REFERENCE_FILE) if path is None else Path(path)
    columns: dict[Method, dict[str, float]] = {m: {} for m in Method}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        expected = {"region", *(m.value for m in Method)}
        missing = expected - set(reader.fieldnames or ())
        if missing:
            raise ManifestFormatError(
                f"reference index file must have columns {sorted(expected)}; "
                f"missing {sorted(missing)}"
            )
        for row in reader:
            for method in Method:
                columns[method][row["region"]] = float(row[method.value])
    results = {}
    for method, column in columns.items():
        results[method] = IndexResult(
            method=method,
            raw_index=column,
            rescaled_index=dict(column),
            ranking=rank_regions(column),
        )
    return results
