"""Gap-expansion outlier detection with Weber-law sensitivity.

The score of a candidate gap is its inconsistency rate: with n sorted
values, span R, candidate gap g, and m the largest gap already accepted
as normal,

    score = (n - 1) * (g - m) / R

This closed form equals the ratio of the gap's expansion rate
((n-1) * g / R, gap size relative to the average gap) to its inhibition
rate (g / (g - m), which discounts gaps no bigger than what the normal
set already contains), but stays defined when g == m, where the ratio
form divides by zero.  Both factors are recorded in traces for
explainability; only the closed form is ever used for decisions.

Two detectors share the score:

* :func:`detect_high_side` grows the normal set upward from the minimum
  and flags a high-value tail.
* :func:`detect_two_sided` grows the normal set outward from the median
  and flags both tails.

Sensitivity is a single knob: either the score threshold c in [0, 2]
directly, or a Weber fraction K in [0, 1] (the just-noticeable
difference ratio), linked bijectively by c = 2(1-K)/(1+K).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Literal

from .samples import Sample

#: Threshold used throughout the package unless the caller overrides it;
#: corresponds to a Weber fraction of 0.05.
DEFAULT_THRESHOLD = 1.81

Side = Literal["low", "high"]


def weber_to_threshold(weber_k: float) -> float:
    """Map a Weber fraction K in [0, 1] to the score threshold c = 2(1-K)/(1+K)."""
    if not 0.0 <= weber_k <= 1.0:
        raise ValueError(f"Weber fraction must be in [0, 1], got {weber_k}")
    return 2.0 * (1.0 - weber_k) / (1.0 + weber_k)


def threshold_to_weber(threshold_c: float) -> float:
    """Inverse of :func:`weber_to_threshold`: K = (2-c)/(2+c) for c in [0, 2]."""
    if not 0.0 <= threshold_c <= 2.0:
        raise ValueError(f"threshold must be in [0, 2], got {threshold_c}")
    return (2.0 - threshold_c) / (2.0 + threshold_c)


@dataclass(frozen=True)
class Sensitivity:
    """A Weber fraction and its equivalent score threshold, kept in sync.

    Build with :meth:`from_weber` or :meth:`from_threshold`.
    """

    weber_k: float
    threshold_c: float

    def __post_init__(self):
        expect = weber_to_threshold(self.weber_k)
        if abs(expect - self.threshold_c) > 1e-12:
            raise ValueError(
                f"inconsistent sensitivity: K={self.weber_k} implies "
                f"c={expect}, got c={self.threshold_c}")

    @classmethod
    def from_weber(cls, weber_k: float) -> "Sensitivity":
        return cls(weber_k=weber_k, threshold_c=weber_to_threshold(weber_k))

    @classmethod
    def from_threshold(cls, threshold_c: float) -> "Sensitivity":
        return cls(weber_k=threshold_to_weber(threshold_c),
                   threshold_c=threshold_c)


DEFAULT_SENSITIVITY = Sensitivity.from_threshold(DEFAULT_THRESHOLD)


def iir_closed_form(gap: float, max_prev: float, n: int, span: float) -> float:
    """Inconsistency score of a gap: (n-1) * (gap - max_prev) / span.

    ``n`` is the number of data points (so n-1 is the gap count), ``span``
    their full range.  Negative when the gap is smaller than the largest
    previously accepted one, zero when equal.
    """
    if span <= 0.0:
        raise ValueError(f"span must be positive, got {span}")
    if n < 2:
        raise ValueError(f"need at least two points, got n={n}")
    return (n - 1) * (gap - max_prev) / span


@dataclass(frozen=True)
class IirRecord:
    """One evaluated candidate gap.

    ``index`` is the gap's position i in sorted order (gap i separates
    values i-1 and i, 0-based values).  ``ihr`` is None when the gap
    equals ``max_prev`` (the ratio form is undefined there).
    """

    index: int
    side: Side
    gap: float
    max_prev: float
    er: float
    ihr: float | None
    iir: float
    accepted: bool


@dataclass(frozen=True)
class Detection:
    """Outcome of one detector run on one sample.

    The flagged set is always the sample minus the values inside
    ``[normal_low, normal_high]``.  ``trace`` holds every evaluated
    :class:`IirRecord` (empty for baseline detectors) and ``border`` the
    record that triggered the stop, if any.
    """

    method: str
    params: dict
    outlier_values: tuple[float, ...]
    outlier_indices: tuple[int, ...]
    normal_low: float | None
    normal_high: float | None
    trace: tuple[IirRecord, ...] = ()
    border: IirRecord | None = None
    degenerate: bool = False

    @property
    def n_outliers(self) -> int:
        return len(self.outlier_values)


def _empty_detection(sample: Sample, method: str, params: dict,
                     degenerate: bool) -> Detection:
    return Detection(method=method, params=params,
                     outlier_values=(), outlier_indices=(),
                     normal_low=sample.min, normal_high=sample.max,
                     degenerate=degenerate)


def _record(index: int, side: Side, gap: float, max_prev: float,
            n: int, span: float, threshold: float) -> IirRecord:
    iir = iir_closed_form(gap, max_prev, n, span)
    er = (n - 1) * gap / span
    ihr = gap / (gap - max_prev) if gap != max_prev else None
    return IirRecord(index=index, side=side, gap=gap, max_prev=max_prev,
                     er=er, ihr=ihr, iir=iir, accepted=iir < threshold)


def detect_high_side(sample: Sample,
                     sens: Sensitivity = DEFAULT_SENSITIVITY) -> Detection:
    """Expanding scan from the minimum; flags a high-value tail.

    Walks gaps i = 2..n-1 in sorted order keeping the largest gap seen so
    far.  The border is the first gap with score >= c that also lies in
    the upper half (i > n/2, so fewer than half the values are flagged);
    every value >= the border value is an outlier.  No border means no
    outliers.  Samples with n < 3 or zero span yield an empty detection
    (the degenerate flag set in the zero-span case).
    """
    method = "iir-high"
    params = {"c": sens.threshold_c}
    v = sample.values
    n = sample.n
    if n < 3:
        return _empty_detection(sample, method, params, degenerate=False)
    span = v[-1] - v[0]
    if span == 0.0:
        return _empty_detection(sample, method, params, degenerate=True)

    c = sens.threshold_c
    max_prev = v[1] - v[0]
    trace: list[IirRecord] = []
    border: IirRecord | None = None
    for i in range(2, n):
        gap = v[i] - v[i - 1]
        rec = _record(i, "high", gap, max_prev, n, span, c)
        # the border additionally needs the majority constraint i > n/2
        hit = rec.iir >= c and i > n / 2
        rec = replace(rec, accepted=not hit)
        trace.append(rec)
        if hit:
            border = rec
            break
        max_prev = max(max_prev, gap)

    if border is None:
        return Detection(method=method, params=params,
                         outlier_values=(), outlier_indices=(),
                         normal_low=v[0], normal_high=v[-1],
                         trace=tuple(trace))
    cut = v[border.index]
    idx = tuple(j for j in range(n) if v[j] >= cut)
    normal = [x for x in v if x < cut]
    return Detection(method=method, params=params,
                     outlier_values=tuple(v[j] for j in idx),
                     outlier_indices=idx,
                     normal_low=normal[0] if normal else None,
                     normal_high=normal[-1] if normal else None,
                     trace=tuple(trace), border=border)


def detect_two_sided(sample: Sample,
                     sens: Sensitivity = DEFAULT_SENSITIVITY) -> Detection:
    """Expanding scan outward from the median; flags both tails.

    Phase 1 grows the accepted set from the median position(s) to
    majority size (n//2 + 1 members) by always absorbing the side whose
    frontier gap is smaller (ties go right).  The largest gap interior to
    the accepted set then seeds the inhibition level.  Phase 2 keeps
    absorbing the smaller frontier gap while its score stays below c;
    the first score >= c stops the scan and everything outside the
    accepted interval is flagged.  Reaching both ends means no outliers.
    """
    method = "iir"
    params = {"c": sens.threshold_c}
    v = sample.values
    n = sample.n
    if n < 3:
        return _empty_detection(sample, method, params, degenerate=False)
    span = v[-1] - v[0]
    if span == 0.0:
        return _empty_detection(sample, method, params, degenerate=True)

    c = sens.threshold_c
    if n % 2 == 0:
        lo, hi = n // 2 - 1, n // 2
    else:
        lo = hi = n // 2
    target = n // 2 + 1

    # Phase 1: no scores yet, just grow to majority size.
    while hi - lo + 1 < target:
        if lo == 0:
            hi += 1
        elif hi == n - 1:
            lo -= 1
        elif v[hi + 1] - v[hi] > v[lo] - v[lo - 1]:
            lo -= 1
        else:
            hi += 1

    max_prev = max(v[k] - v[k - 1] for k in range(lo + 1, hi + 1))

    trace: list[IirRecord] = []
    border: IirRecord | None = None
    while not (lo == 0 and hi == n - 1):
        if lo == 0:
            side: Side = "high"
        elif hi == n - 1:
            side = "low"
        elif v[hi + 1] - v[hi] > v[lo] - v[lo - 1]:
            side = "low"
        else:
            side = "high"
        if side == "low":
            idx, gap = lo, v[lo] - v[lo - 1]
        else:
            idx, gap = hi + 1, v[hi + 1] - v[hi]
        rec = _record(idx, side, gap, max_prev, n, span, c)
        trace.append(rec)
        if rec.iir >= c:
            border = rec
            break
        if side == "low":
            lo -= 1
        else:
            hi += 1
        max_prev = max(max_prev, gap)

    if border is None:
        return Detection(method=method, params=params,
                         outlier_values=(), outlier_indices=(),
                         normal_low=v[0], normal_high=v[-1],
                         trace=tuple(trace))
    low, high = v[lo], v[hi]
    idxs = tuple(j for j in range(n) if v[j] < low or v[j] > high)
    return Detection(method=method, params=params,
                     outlier_values=tuple(v[j] for j in idxs),
                     outlier_indices=idxs,
                     normal_low=low, normal_high=high,
                     trace=tuple(trace), border=border)
