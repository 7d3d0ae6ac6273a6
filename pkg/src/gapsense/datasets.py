"""Bundled benchmark datasets and numeric file loaders."""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .oscillator import PointSet
from .samples import Sample


class CatalogError(LookupError):
    """Unknown dataset name; the message lists the valid ones."""


class DataFormatError(ValueError):
    """A numeric input file could not be parsed; carries the line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class DatasetInfo:
    kind: str  # "univariate" | "points2d"
    citation: str


_UNIVARIATE: dict[str, tuple[float, ...]] = {
    # monthly diastolic blood pressure readings of one subject
    "rosner": (90, 93, 86, 92, 95, 83, 75, 40, 88, 80),
    "barnett": (3, 4, 7, 8, 10, 949, 951),
    # strengths of hard-drawn copper wire
    "grubbs1": (568, 570, 570, 570, 572, 572, 572, 578, 584, 596),
    # percent elongation of plastic material
    "grubbs3": (2.02, 2.22, 3.04, 3.23, 3.59, 3.73, 3.94, 4.05, 4.11, 4.13),
    # extra hours of sleep, difference between two drugs, ten patients
    "cushny": (0, 0.8, 1, 1.2, 1.3, 1.3, 1.4, 1.8, 2.4, 4.6),
    # vertical semi-diameter of Venus, Lt. Herndon, Washington 1846
    "venus": (-0.30, 0.48, 0.63, -0.22, 0.18,
              -0.44, -0.24, -0.13, -0.05, 0.39,
              1.01, 0.06, -1.40, 0.20, 0.10),
}

CATALOG: dict[str, DatasetInfo] = {
    "rosner": DatasetInfo("univariate", "Rosner (1983), blood pressure series"),
    "barnett": DatasetInfo("univariate", "Barnett & Lewis, Outliers in Statistical Data"),
    "grubbs1": DatasetInfo("univariate", "Grubbs (1969), copper wire strengths"),
    "grubbs3": DatasetInfo("univariate", "Grubbs (1969), plastic elongations"),
    "cushny": DatasetInfo("univariate", "Cushny & Peebles (1905), sleep data"),
    "venus": DatasetInfo("univariate", "Peirce (1852), Herndon's Venus observations"),
    "ruspini": DatasetInfo("points2d", "Ruspini (1970), Information Sciences 2"),
}

#: Names of the five comparison-table datasets, in their usual order.
TABLE_DATASETS = ("rosner", "barnett", "grubbs1", "grubbs3", "cushny")

#: Published reference grouping of the Ruspini points (1-based row ids):
#: four natural groups, with the right-hand region split into a main part
#: and a small satellite trio.
RUSPINI_REFERENCE_CLUSTERS = (
    frozenset(range(1, 21)),
    frozenset(range(21, 44)),
    frozenset({44, 45} | set(range(49, 61))),
    frozenset({46, 47, 48}),
    frozenset(range(61, 76)),
)


def builtin_dataset(name: str) -> Sample | PointSet:
    """Look up a bundled dataset by name; univariate ones come back sorted."""
    key = name.lower()
    if key not in CATALOG:
        valid = ", ".join(sorted(CATALOG))
        raise CatalogError(f"unknown dataset {name!r}; valid names: {valid}")
    if CATALOG[key].kind == "univariate":
        return Sample.from_iterable(_UNIVARIATE[key], label=key)
    with resources.files("gapsense.data").joinpath("ruspini.csv").open() as fh:
        return _parse_points2d(fh.read().splitlines(), label="ruspini")


def raw_values(name: str) -> tuple[float, ...]:
    """Unsorted embedded values of a univariate dataset (publication order)."""
    key = name.lower()
    if key not in _UNIVARIATE:
        raise CatalogError(f"no embedded univariate dataset {name!r}")
    return _UNIVARIATE[key]


def _tokens(line: str) -> list[str]:
    line = line.strip()
    if not line or line.startswith("#"):
        return []
    if "," in line:
        return [t.strip() for t in line.split(",") if t.strip()]
    return line.split()


def load_univariate(path: str | Path, format: str = "auto") -> Sample:
    """Read one or more finite numbers per line into a sorted Sample.

    ``format`` may be "auto", "csv", or "whitespace"; auto sniffs per
    line.  Any unparsable or non-finite token fails with its line number.
    """
    if format not in ("auto", "csv", "whitespace"):
        raise ValueError(f"unknown format {format!r}")
    path = Path(path)
    values: list[float] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if format == "csv":
                toks = [t.strip() for t in line.strip().split(",") if t.strip()] \
                    if line.strip() and not line.lstrip().startswith("#") else []
            elif format == "whitespace":
                toks = line.split() if not line.lstrip().startswith("#") else []
            else:
                toks = _tokens(line)
            for tok in toks:
                try:
                    x = float(tok)
                except ValueError:
                    raise DataFormatError(
                        f"{path}:{lineno}: cannot parse {tok!r} as a number",
                        line=lineno) from None
                if not math.isfinite(x):
                    raise DataFormatError(
                        f"{path}:{lineno}: non-finite value {tok!r}", line=lineno)
                values.append(x)
    if not values:
        raise DataFormatError(f"{path}: no numeric data found")
    return Sample.from_iterable(values, label=str(path))


def _parse_points2d(lines: list[str], label: str) -> PointSet:
    rows: list[tuple[float, float]] = []
    for lineno, line in enumerate(lines, start=1):
        toks = _tokens(line)
        if not toks:
            continue
        if len(toks) != 2:
            raise DataFormatError(
                f"{label}:{lineno}: expected 2 columns, got {len(toks)}",
                line=lineno)
        try:
            x, y = float(toks[0]), float(toks[1])
        except ValueError:
            raise DataFormatError(
                f"{label}:{lineno}: cannot parse {toks!r} as numbers",
                line=lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DataFormatError(f"{label}:{lineno}: non-finite coordinate",
                                  line=lineno)
        rows.append((x, y))
    if not rows:
        raise DataFormatError(f"{label}: no points found")
    return PointSet.from_iterable(rows, label=label)


def load_points2d(path: str | Path) -> PointSet:
    """Read a two-column numeric file into a PointSet (ids follow file order)."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return _parse_points2d(fh.read().splitlines(), label=str(path))
