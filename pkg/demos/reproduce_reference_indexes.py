"""Recompute the three development indexes for the bundled NUTS III dataset
and line them up against the reference values shipped with the package.

Run:  python demos/reproduce_reference_indexes.py
"""

import numpy as np

from indexforge import (
    Method,
    compute_abreu,
    compute_delphi,
    compute_pca,
    describe,
    normalize_matrix,
    pearson,
)
from indexforge.datasets import load_nuts3_dataset, load_reference_indexes

manifest, raw = load_nuts3_dataset()
print(f"dataset: {len(raw.regions)} regions x {len(raw.indicators)} indicators")
sizes = manifest.pillar_sizes()
print("pillars: " + ", ".join(f"{p.value}={n}" for p, n in sizes.items()))

normalized, records = normalize_matrix(raw, manifest)
degenerate = [r.indicator_id for r in records if r.degenerate]
print(f"normalized; degenerate columns: {degenerate or 'none'}\n")

abreu = compute_abreu(normalized, manifest)
delphi = compute_delphi(normalized, manifest)   # default expert panel weights
pca, audit = compute_pca(normalized, manifest)
reference = load_reference_indexes()

print(f"{'region':34s} {'abreu':>14s} {'delphi':>14s} {'pca':>14s}")
print(f"{'':34s} {'ours / ref':>14s} {'ours / ref':>14s} {'ours / ref':>14s}")
for region in raw.regions:
    cells = []
    for method, result in ((Method.ABREU, abreu), (Method.DELPHI, delphi), (Method.PCA, pca)):
        ours = result.rescaled_index[region]
        ref = reference[method].rescaled_index[region]
        cells.append(f"{ours:.2f} / {ref:.2f}")
    print(f"{region:34s} {cells[0]:>14s} {cells[1]:>14s} {cells[2]:>14s}")

print("\ncorrelation of our columns with the reference columns:")
for method, result in ((Method.ABREU, abreu), (Method.DELPHI, delphi), (Method.PCA, pca)):
    ours = result.rescaled_vector(raw.regions)
    ref = reference[method].rescaled_vector(raw.regions)
    print(f"  {method.value:7s} r = {pearson(ours, ref):.4f}")

print("\ncross-method correlations on the reference columns:")
pairs = [(Method.ABREU, Method.DELPHI), (Method.ABREU, Method.PCA), (Method.DELPHI, Method.PCA)]
for a, b in pairs:
    r = pearson(
        reference[a].rescaled_vector(raw.regions),
        reference[b].rescaled_vector(raw.regions),
    )
    print(f"  {a.value + ':' + b.value:13s} r = {r:.4f}")

print("\nspread of the reference columns (boxplot numbers):")
for method in (Method.ABREU, Method.DELPHI, Method.PCA):
    stats = describe(reference[method].rescaled_vector(raw.regions))
    print(
        f"  {method.value:7s} mean={stats.mean:.2f} median={stats.median:.2f} "
        f"IQR={stats.iqr:.2f} sd={stats.sd:.2f}"
    )

print("\nrankings (best to worst):")
for method, result in ((Method.ABREU, abreu), (Method.DELPHI, delphi), (Method.PCA, pca)):
    print(f"  {method.value:7s} " + " > ".join(result.ranking))

worst = float(
    np.max(np.abs(abreu.rescaled_vector(raw.regions)
                  - reference[Method.ABREU].rescaled_vector(raw.regions)))
)
print(f"\nlargest abreu deviation from the reference column: {worst:.4f}")
