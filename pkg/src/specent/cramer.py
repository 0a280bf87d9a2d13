"""Random pseudoprime model: integer ``n >= 3`` joins independently with
probability ``1 / log n``.

The inclusion draw for integer ``n`` is stream position ``n`` of a Philox
stream keyed by the seed (see :mod:`specent.rng`), so simulating any window
of integers yields exactly the members a full-range simulation would
produce there.  Distance windows around a base point therefore stay cheap
for large ``N`` without weakening the determinism contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distances import DistanceMultiset
from .entropy import EntropyReport, full_pipeline
from .errors import ConfigurationError, CoverageError, InvalidArgumentError
from .rng import indexed_uniforms, stream_key

RESCALE_MODES = ("base-point", "per-gap")

_CHUNK = 1 << 21


@dataclass(frozen=True)
class CramerConfig:
    """Simulation range ``[3, N]``, RNG seed, and gap-rescaling policy."""

    N: int
    seed: int
    rescale: bool = True
    rescale_mode: str = "base-point"

    def __post_init__(self):
        if self.N < 3:
            raise InvalidArgumentError(f"N must be at least 3, got {self.N}")
        if self.rescale_mode not in RESCALE_MODES:
            raise InvalidArgumentError(
                f"rescale_mode must be one of {RESCALE_MODES}, got {self.rescale_mode!r}"
            )


def members_in_window(config: CramerConfig, lo: int, hi: int) -> np.ndarray:
    """Members of the simulated set in ``[lo, hi]`` (inclusive), as int64.

    Bitwise identical to the matching slice of ``simulate_cramer_set``.
    """
    lo = max(3, int(lo))
    hi = min(int(config.N), int(hi))
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    key = stream_key(config.seed)
    out = []
    n = lo
    while n <= hi:
        count = min(_CHUNK, hi - n + 1)
        u = indexed_uniforms(key, n, count)
        ns = np.arange(n, n + count, dtype=np.int64)
        out.append(ns[u < 1.0 / np.log(ns)])
        n += count
    return np.concatenate(out)


def simulate_cramer_set(config: CramerConfig) -> np.ndarray:
    """The full simulated set on ``[3, N]``, strictly increasing int64."""
    return members_in_window(config, 3, config.N)


def nearest_member(config: CramerConfig, coord: float) -> int:
    """The set member nearest to ``coord`` (ties resolve to the smaller).

    Searches a widening window around ``coord``; a candidate inside the
    window is accepted only once no member outside the window could be
    closer, so the result matches a full-range search.
    """
    coord = float(coord)
    half_width = max(16.0, 8.0 * math.log(max(coord, 3.0)))
    while True:
        lo = max(3, math.floor(coord - half_width))
        hi = min(config.N, math.ceil(coord + half_width))
        members = members_in_window(config, lo, hi)
        whole_range = lo == 3 and hi == config.N
        if members.size:
            i = int(np.searchsorted(members, coord))
            candidates = members[max(0, i - 1) : i + 1]
            best = int(candidates[np.argmin(np.abs(candidates - coord))])
            if whole_range or abs(best - coord) <= half_width:
                return best
        elif whole_range:
            raise ConfigurationError(f"simulated set on [3, {config.N}] is empty")
        half_width *= 4.0


def cramer_distances(
    config: CramerConfig, base_point: int, R: float
) -> DistanceMultiset:
    """Truncated distance multiset around a member of the simulated set.

    With rescaling on, each distance is divided by the local mean gap:
    ``log(base_point)`` for every distance in ``base-point`` mode, or
    ``log(q)`` of the neighbor ``q`` in ``per-gap`` mode.  For a single base
    point the base-point variant is a global rescale, which the log binning
    is invariant to; the distinction matters when aggregating multisets
    across base points.
    """
    if R <= 0:
        raise InvalidArgumentError(f"R must be positive, got {R}")
    if base_point + R > config.N:
        raise CoverageError(
            f"simulation bound N={config.N} does not cover base_point + R = {base_point + R}"
        )
    members = members_in_window(config, math.ceil(base_point - R), math.floor(base_point + R))
    d = np.abs(members - float(base_point))
    keep = (d > 0) & (d <= R)
    d = d[keep]
    radius = float(R)
    if config.rescale and d.size:
        if config.rescale_mode == "base-point":
            scale = math.log(base_point)
            d = d / scale
            radius = R / scale
        else:
            d = d / np.log(members[keep].astype(np.float64))
            radius = float(np.max(d))
    return DistanceMultiset(values=np.sort(d), radius=radius, base_points=(int(base_point),))


def cramer_entropy(config: CramerConfig, base_coord: float, R: float, M: int) -> EntropyReport:
    """Entropy of the simulated set around the member nearest ``base_coord``."""
    base_point = nearest_member(config, base_coord)
    dm = cramer_distances(config, base_point, R)
    provenance = {
        "model": "cramer",
        "N": int(config.N),
        "seed": int(config.seed),
        "R": float(R),
        "base_point": int(base_point),
        "requested_base": float(base_coord),
        "rescale": bool(config.rescale),
        "rescale_mode": config.rescale_mode,
    }
    return full_pipeline(dm, M, provenance=provenance)
