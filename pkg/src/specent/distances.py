"""Truncated distance multisets around base points.

Distances are stored as float64 even for integer configurations so the
same type serves the stochastic simulators, whose points are real-valued.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CoverageError, InvalidArgumentError
from .primes import PrimeTable

PointSource = Union[PrimeTable, np.ndarray, Sequence[float]]


@dataclass(frozen=True)
class DistanceMultiset:
    """Sorted positive distances with multiplicity, truncated at ``radius``."""

    values: np.ndarray
    radius: float
    base_points: tuple

    def __len__(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_values(
        cls,
        values: Sequence[float] | np.ndarray,
        radius: float | None = None,
        base_points: Sequence[float] = (),
    ) -> "DistanceMultiset":
        v = np.sort(np.asarray(values, dtype=np.float64))
        if v.size and v[0] <= 0:
            raise InvalidArgumentError("distances must be strictly positive")
        if radius is None:
            radius = float(v[-1]) if v.size else 0.0
        if v.size and v[-1] > radius:
            raise InvalidArgumentError(f"distance {v[-1]} exceeds radius {radius}")
        return cls(values=v, radius=float(radius), base_points=tuple(base_points))

    def scaled(self, c: float) -> "DistanceMultiset":
        """Multiset with every distance multiplied by ``c > 0``."""
        if c <= 0:
            raise InvalidArgumentError(f"scale factor must be positive, got {c}")
        v = self.values * c
        radius = self.radius * c
        if v.size:
            radius = max(radius, float(v[-1]))
        return DistanceMultiset(values=v, radius=radius, base_points=self.base_points)


def _points_array(table: PointSource) -> np.ndarray:
    if isinstance(table, PrimeTable):
        return table.primes
    pts = np.asarray(table, dtype=np.float64)
    if pts.ndim != 1:
        raise InvalidArgumentError("point configuration must be one-dimensional")
    if pts.size > 1 and np.any(np.diff(pts) < 0):
        raise InvalidArgumentError("point configuration must be sorted ascending")
    return pts


def truncated_distances(p: float, table: PointSource, R: float) -> DistanceMultiset:
    """Distances from ``p`` to every other configuration point within ``R``.

    The base point itself is excluded (distance zero), but ``p`` does not
    have to be a member of the configuration.  A ``PrimeTable`` must cover
    ``p + R`` (silent truncation would bias the distribution); a raw array
    is taken to be the complete configuration, so no coverage check applies.
    """
    if R <= 0:
        raise InvalidArgumentError(f"R must be positive, got {R}")
    if isinstance(table, PrimeTable) and not table.covers(p + R):
        raise CoverageError(
            f"prime table limit {table.limit} does not cover p + R = {p + R}"
        )
    pts = _points_array(table)
    lo = int(np.searchsorted(pts, p - R, side="left"))
    hi = int(np.searchsorted(pts, p + R, side="right"))
    d = np.abs(pts[lo:hi] - float(p))
    d = np.sort(d[(d > 0) & (d <= R)])
    return DistanceMultiset(values=d, radius=float(R), base_points=(p,))


def aggregate_distances(points: Sequence[float], table: PointSource, R: float) -> DistanceMultiset:
    """Measure sum of the per-point truncated multisets.

    Duplicated base points contribute their distances with doubled
    multiplicity, matching addition of counting measures.
    """
    parts = [truncated_distances(p, table, R).values for p in points]
    if parts:
        merged = np.sort(np.concatenate(parts))
    else:
        merged = np.empty(0, dtype=np.float64)
    return DistanceMultiset(values=merged, radius=float(R), base_points=tuple(points))


def write_values(path: str | Path, values: Iterable[float]) -> None:
    """One value per line, full float precision."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for v in values:
            handle.write(f"{float(v)!r}\n")


def read_values(path: str | Path) -> np.ndarray:
    """Parse a one-value-per-line file (blank lines and ``#`` comments skipped)."""
    out = []
    try:
        with Path(path).open("r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    out.append(float(line))
                except ValueError:
                    raise InvalidArgumentError(
                        f"{path}:{lineno}: not a number: {line!r}"
                    ) from None
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read points file {path}: {exc}") from None
    return np.asarray(out, dtype=np.float64)
