"""Classical univariate outlier detectors used for comparison.

All four return the same :class:`~gapsense.expanding.Detection` shape as
the expanding detectors, with an empty trace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist, fmean, median

from .expanding import Detection
from .samples import Sample

MAD_CONSISTENCY = 1.4826  # makes MADn estimate sigma under normality


def _sample_sd(values: tuple[float, ...], mean: float) -> float:
    n = len(values)
    return math.sqrt(sum((x - mean) ** 2 for x in values) / (n - 1))


def _interval_detection(sample: Sample, method: str, params: dict,
                        low: float, high: float) -> Detection:
    v = sample.values
    idx = tuple(j for j in range(len(v)) if v[j] < low or v[j] > high)
    return Detection(method=method, params=params,
                     outlier_values=tuple(v[j] for j in idx),
                     outlier_indices=idx,
                     normal_low=low, normal_high=high)


def mean_sigma_detect(sample: Sample, k: float = 3.0) -> Detection:
    """Flag values more than k sample standard deviations from the mean."""
    if sample.n < 2:
        raise ValueError("mean/sigma detection needs at least two values")
    if k <= 0:
        raise ValueError("k must be positive")
    m = fmean(sample.values)
    sd = _sample_sd(sample.values, m)
    if sd == 0.0:
        return _interval_detection(sample, "mean", {"k": k}, m, m)
    return _interval_detection(sample, "mean", {"k": k}, m - k * sd, m + k * sd)


def tukey_hinges(sample: Sample) -> tuple[float, float]:
    """Quartiles as medians of the two halves of the sorted data.

    Each half includes the middle value when n is odd (hinge convention).
    """
    v = sample.values
    n = sample.n
    if n < 2:
        raise ValueError("hinges need at least two values")
    return median(v[: (n + 1) // 2]), median(v[n // 2:])


def boxplot_detect(sample: Sample, whisker: float = 1.5) -> Detection:
    """Flag values outside the hinge fences q1 - w*IQR, q3 + w*IQR.

    With a collapsed IQR the fences degenerate to [q1, q3] and values
    outside are still flagged.
    """
    if whisker <= 0:
        raise ValueError("whisker must be positive")
    q1, q3 = tukey_hinges(sample)
    iqr = q3 - q1
    return _interval_detection(sample, "boxplot", {"whisker": whisker},
                               q1 - whisker * iqr, q3 + whisker * iqr)


def mad_detect(sample: Sample, k: float = 3.0,
               b: float = MAD_CONSISTENCY) -> Detection:
    """Flag values more than k scaled median absolute deviations from the median.

    MADn = b * median(|x - median|).  When MADn is zero every value that
    differs from the median is flagged (degenerate rule; avoids division
    by zero and matches the spirit of an infinitely tight scale).
    """
    if sample.n < 2:
        raise ValueError("median/MAD detection needs at least two values")
    if k <= 0 or b <= 0:
        raise ValueError("k and b must be positive")
    med = median(sample.values)
    madn = b * median(abs(x - med) for x in sample.values)
    params = {"k": k, "b": b}
    if madn == 0.0:
        return _interval_detection(sample, "mad", params, med, med)
    return _interval_detection(sample, "mad", params, med - k * madn, med + k * madn)


def normal_tail(z: float) -> float:
    """Two-sided standard-normal tail probability P(|Z| > z) for z >= 0."""
    if z < 0:
        raise ValueError(f"z must be nonnegative, got {z}")
    return math.erfc(z / math.sqrt(2.0))


def chauvenet_detect(sample: Sample) -> Detection:
    """Single-pass expected-count criterion: flag x when n * P(|Z| > z) < 0.5.

    z is the standardized distance |x - mean| / sd with the sample
    standard deviation (n-1 divisor).  No iterative refitting.
    """
    n = sample.n
    if n < 3:
        raise ValueError("the expected-count criterion needs at least three values")
    m = fmean(sample.values)
    sd = _sample_sd(sample.values, m)
    if sd == 0.0:
        return _interval_detection(sample, "chauvenet", {}, m, m)
    # n * P(|Z| > z) < 0.5  <=>  z > z* with Phi(z*) = 1 - 1/(4n)
    z_star = NormalDist().inv_cdf(1.0 - 0.25 / n)
    return _interval_detection(sample, "chauvenet", {},
                               m - z_star * sd, m + z_star * sd)


@dataclass(frozen=True)
class BaselineSpec:
    """A baseline method plus its parameters, for tables and simulations."""

    method: str  # mean_sigma | boxplot | mad | chauvenet
    k: float | None = None
    whisker: float = 1.5
    b: float = MAD_CONSISTENCY

    def __post_init__(self):
        if self.method not in ("mean_sigma", "boxplot", "mad", "chauvenet"):
            raise ValueError(f"unknown baseline method {self.method!r}")
        if self.k is not None and self.k <= 0:
            raise ValueError("k must be positive")
        if self.whisker <= 0 or self.b <= 0:
            raise ValueError("whisker and b must be positive")

    def detect(self, sample: Sample) -> Detection:
        if self.method == "mean_sigma":
            return mean_sigma_detect(sample, self.k if self.k is not None else 3.0)
        if self.method == "boxplot":
            return boxplot_detect(sample, self.whisker)
        if self.method == "mad":
            return mad_detect(sample, self.k if self.k is not None else 3.0, self.b)
        return chauvenet_detect(sample)
