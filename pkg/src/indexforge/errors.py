"""Exception hierarchy shared by all indexforge modules."""

from __future__ import annotations


class CompositeIndexError(Exception):
    """Base class for all errors raised by this package."""


# -- manifest / weights ------------------------------------------------------

class DuplicateIndicatorIdError(CompositeIndexError):
    def __init__(self, indicator_id: str):
        self.indicator_id = indicator_id
        super().__init__(f"duplicate indicator id {indicator_id!r}")


class EmptyPillarError(CompositeIndexError):
    def __init__(self, pillar):
        self.pillar = pillar
        super().__init__(f"no indicators assigned to pillar {pillar.value!r}")


class NegativeWeightError(CompositeIndexError):
    def __init__(self, indicator_id: str, weight: float):
        self.indicator_id = indicator_id
        self.weight = weight
        super().__init__(f"indicator {indicator_id!r} has negative weight {weight}")


class AllZeroWeightsError(CompositeIndexError):
    def __init__(self, scope: str):
        self.scope = scope
        super().__init__(f"all weights are zero in scope {scope!r}")


class WeightManifestMismatchError(CompositeIndexError):
    def __init__(self, unknown_ids):
        self.unknown_ids = tuple(unknown_ids)
        super().__init__(
            "weight scheme references unknown indicators: "
            + ", ".join(sorted(self.unknown_ids))
        )


# -- ingestion ---------------------------------------------------------------

class ManifestFormatError(CompositeIndexError):
    """Malformed manifest file (bad header, unknown pillar or direction)."""


class MissingCellError(CompositeIndexError):
    def __init__(self, region: str, indicator_id: str):
        self.region = region
        self.indicator_id = indicator_id
        super().__init__(f"missing value at region {region!r}, indicator {indicator_id!r}")


class NonNumericCellError(CompositeIndexError):
    def __init__(self, region: str, indicator_id: str, text: str):
        self.region = region
        self.indicator_id = indicator_id
        self.text = text
        super().__init__(
            f"non-numeric value {text!r} at region {region!r}, indicator {indicator_id!r}"
        )


class UnknownIndicatorError(CompositeIndexError):
    def __init__(self, indicator_id: str):
        self.indicator_id = indicator_id
        super().__init__(f"indicator {indicator_id!r} is not in the manifest")


class MissingIndicatorError(CompositeIndexError):
    def __init__(self, indicator_id: str):
        self.indicator_id = indicator_id
        super().__init__(f"manifest indicator {indicator_id!r} is absent from the data file")


class DuplicateRegionError(CompositeIndexError):
    def __init__(self, region: str):
        self.region = region
        super().__init__(f"region {region!r} appears more than once")


class ConstantComponentError(CompositeIndexError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"component column {name!r} is constant (max equals min)")


# -- aggregation -------------------------------------------------------------

class NegativeInputError(CompositeIndexError):
    def __init__(self, value: float):
        self.value = value
        super().__init__(f"geometric mean requires nonnegative inputs, got {value}")


# -- eigensolver / PCA -------------------------------------------------------

class NotSymmetricError(CompositeIndexError):
    """Input matrix is not symmetric within tolerance."""


class NoConvergenceError(CompositeIndexError):
    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"eigensolver did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class ConstantColumnError(CompositeIndexError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"column {column!r} is constant; correlation undefined")


# -- statistics --------------------------------------------------------------

class ConstantVectorError(CompositeIndexError):
    """Pearson correlation is undefined for a constant vector."""


class LengthMismatchError(CompositeIndexError):
    def __init__(self, len_x: int, len_y: int):
        self.len_x = len_x
        self.len_y = len_y
        super().__init__(f"vectors have different lengths ({len_x} vs {len_y})")


class TooShortError(CompositeIndexError):
    def __init__(self, length: int, minimum: int):
        self.length = length
        self.minimum = minimum
        super().__init__(f"need at least {minimum} values, got {length}")


class RegionSetMismatchError(CompositeIndexError):
    """Results being compared do not share the same region set."""


class FewerThanTwoMethodsError(CompositeIndexError):
    """Comparison requires at least two method results."""
