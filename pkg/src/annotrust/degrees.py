"""Translation of numeric trust values into discrete trust degrees.

Two translators are provided: threshold cuts on the composite trust value,
and per-metric interval bands with a combined verdict. Threshold cuts can
be recalibrated from observed trust values via their empirical CDF.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .scoring import InvariantViolation


class InvalidThresholdsError(ValueError):
    """Threshold cuts are not strictly decreasing."""


class BandCoverageError(ValueError):
    """A metric value falls inside no band of a malformed band set."""


class EmptyDataError(ValueError):
    """Threshold derivation requested on an empty sample."""


class InvalidSharesError(ValueError):
    """Class shares are malformed or do not sum to 1."""


class DegenerateDataError(ValueError):
    """Sample too degenerate to yield strictly decreasing thresholds."""


class TrustDegree(enum.IntEnum):
    """Discrete trust classes, ordered from least to most trusted."""

    VERY_UNTRUSTED = 0
    UNTRUSTED = 1
    TRUSTED = 2
    VERY_TRUSTED = 3

    @property
    def label(self) -> str:
        return self.name.replace("_", " ").lower()

    @property
    def code(self) -> str:
        return {0: "vu", 1: "u", 2: "t", 3: "vt"}[self.value]


@dataclass(frozen=True)
class TranslatorThresholds:
    """Lower cuts for very-trusted, trusted and untrusted; each inclusive."""

    vt_cut: float
    t_cut: float
    u_cut: float

    def __post_init__(self):
        if not self.vt_cut > self.t_cut > self.u_cut:
            raise InvalidThresholdsError(
                f"cuts must strictly decrease, got ({self.vt_cut}, {self.t_cut}, {self.u_cut})"
            )


DEFAULT_THRESHOLDS = TranslatorThresholds(vt_cut=15.0, t_cut=13.5, u_cut=12.0)

#: Observed class shares in (vu, u, t, vt) order; input to ECDF recalibration.
DEFAULT_CLASS_SHARES = (0.375, 0.0625, 0.3125, 0.25)

Interval = tuple[float, float]


def _check_bands(metric: str, bands: dict[TrustDegree, Interval]) -> None:
    if set(bands) != set(TrustDegree):
        raise InvariantViolation(metric, "bands must cover all four degrees")
    prev_upper = -math.inf
    for degree in sorted(bands):
        lower, upper = bands[degree]
        if lower >= upper:
            raise InvariantViolation(metric, f"empty interval for {degree.code}")
        if lower < prev_upper:
            raise InvariantViolation(metric, "bands overlap or are out of degree order")
        prev_upper = upper


@dataclass(frozen=True)
class MetricBands:
    """Half-open [lower, upper) value bands per metric, one band per degree."""

    edits_number: dict[TrustDegree, Interval]
    edits_iq: dict[TrustDegree, Interval]
    user_iq: dict[TrustDegree, Interval]

    def __post_init__(self):
        _check_bands("editsNumber", self.edits_number)
        _check_bands("editsIQ", self.edits_iq)
        _check_bands("userIQ", self.user_iq)


def _bands_from_cuts(lo_u: float, lo_t: float, lo_vt: float) -> dict[TrustDegree, Interval]:
    return {
        TrustDegree.VERY_UNTRUSTED: (-math.inf, lo_u),
        TrustDegree.UNTRUSTED: (lo_u, lo_t),
        TrustDegree.TRUSTED: (lo_t, lo_vt),
        TrustDegree.VERY_TRUSTED: (lo_vt, math.inf),
    }


#: Band boundaries observed on the source platform. Boundary values belong
#: to the higher class, matching the ">= cut" rule of the value translator.
DEFAULT_METRIC_BANDS = MetricBands(
    edits_number=_bands_from_cuts(0.0, 2.0, 5.0),
    edits_iq=_bands_from_cuts(0.0, 5.0, 35.0),
    user_iq=_bands_from_cuts(-100.0, 0.0, 1000.0),
)


def translate_trust(value: float, thresholds: TranslatorThresholds) -> TrustDegree:
    """Map a trust value to its degree; each cut is inclusive from above."""
    if value >= thresholds.vt_cut:
        return TrustDegree.VERY_TRUSTED
    if value >= thresholds.t_cut:
        return TrustDegree.TRUSTED
    if value >= thresholds.u_cut:
        return TrustDegree.UNTRUSTED
    return TrustDegree.VERY_UNTRUSTED


def _classify_one(metric: str, value: float, bands: dict[TrustDegree, Interval]) -> TrustDegree:
    for degree, (lower, upper) in bands.items():
        if lower <= value < upper:
            return degree
    raise BandCoverageError(f"{metric}={value} falls in no band")


@dataclass(frozen=True)
class MetricClassification:
    edits_number: TrustDegree
    edits_iq: TrustDegree
    user_iq: TrustDegree
    combined: TrustDegree


def combine_degrees(degrees: list[TrustDegree] | tuple[TrustDegree, ...]) -> TrustDegree:
    """Majority vote; ties fall to the less trusted side (lower median)."""
    ranked = sorted(degrees)
    return ranked[(len(ranked) - 1) // 2]


def classify_metrics(
    edits_number: float,
    edits_iq: float,
    user_iq: float,
    bands: MetricBands = DEFAULT_METRIC_BANDS,
) -> MetricClassification:
    """Classify each metric by its band, plus a combined verdict."""
    en = _classify_one("editsNumber", edits_number, bands.edits_number)
    ei = _classify_one("editsIQ", edits_iq, bands.edits_iq)
    ui = _classify_one("userIQ", user_iq, bands.user_iq)
    return MetricClassification(en, ei, ui, combine_degrees((en, ei, ui)))


def _ecdf_quantile(xs: list[float], share: float) -> float:
    # Linear interpolation of the ECDF: continuous 1-based position share*n.
    n = len(xs)
    h = share * n
    if h <= 1.0:
        return xs[0]
    if h >= n:
        return xs[-1]
    i = int(math.floor(h))
    frac = h - i
    return xs[i - 1] + frac * (xs[i] - xs[i - 1])


def derive_thresholds(
    values: list[float],
    class_shares: tuple[float, float, float, float] = DEFAULT_CLASS_SHARES,
) -> TranslatorThresholds:
    """Place translator cuts at the empirical quantiles of observed values.

    ``class_shares`` are the target fractions per degree in
    (vu, u, t, vt) order; cuts land so each class captures its share.
    """
    if not values:
        raise EmptyDataError("no values to derive thresholds from")
    if len(class_shares) != 4 or min(class_shares) < 0:
        raise InvalidSharesError(f"need four nonnegative shares, got {class_shares}")
    if abs(sum(class_shares) - 1.0) > 1e-9:
        raise InvalidSharesError(f"shares sum to {sum(class_shares)}, expected 1")
    xs = sorted(float(v) for v in values)
    vu, u, t, _ = class_shares
    u_cut = _ecdf_quantile(xs, vu)
    t_cut = _ecdf_quantile(xs, vu + u)
    vt_cut = _ecdf_quantile(xs, vu + u + t)
    if not vt_cut > t_cut > u_cut:
        raise DegenerateDataError(
            f"quantiles ({vt_cut}, {t_cut}, {u_cut}) are not strictly decreasing"
        )
    return TranslatorThresholds(vt_cut=vt_cut, t_cut=t_cut, u_cut=u_cut)
