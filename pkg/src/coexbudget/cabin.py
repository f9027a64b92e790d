"""Worst-case master-to-slave distance inside a rectangular railway car.

The cabin is an empty axis-aligned box ``[0, L] x [0, W] x [0, H]`` with the
master transmitter on (or inside) it.  Euclidean distance is convex, so its
maximum over the box is reached at a corner.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

from coexbudget.rfmath import check_finite, check_positive

# Assumed TGV trailer interior; only the resulting ~10 m is known.
DEFAULT_LENGTH_M = 18.70
DEFAULT_WIDTH_M = 2.90
DEFAULT_HEIGHT_M = 2.50

Vec3 = tuple[float, float, float]


@dataclass(frozen=True)
class CabinGeometry:
    length_m: float = DEFAULT_LENGTH_M
    width_m: float = DEFAULT_WIDTH_M
    height_m: float = DEFAULT_HEIGHT_M
    master: Vec3 | None = field(default=None)

    def __post_init__(self) -> None:
        for name in ("length_m", "width_m", "height_m"):
            object.__setattr__(self, name, check_positive(getattr(self, name), name))
        if self.master is None:
            master = (self.length_m / 2.0, self.width_m / 2.0, self.height_m)
        else:
            master = tuple(check_finite(c, "master coordinate") for c in self.master)
            if len(master) != 3:
                raise ValueError("master position must have three coordinates")
        for coord, limit, axis in zip(master, self.dims, "xyz"):
            if not 0.0 <= coord <= limit:
                raise ValueError(f"master {axis}={coord} lies outside the cabin [0, {limit}]")
        object.__setattr__(self, "master", master)

    @property
    def dims(self) -> Vec3:
        return (self.length_m, self.width_m, self.height_m)

    def corners(self) -> list[Vec3]:
        return [tuple(c) for c in itertools.product(*((0.0, d) for d in self.dims))]

    @classmethod
    def from_mapping(cls, doc: Mapping[str, Any]) -> "CabinGeometry":
        """Build from ``{length_m, width_m, height_m, master_x_m?, master_y_m?}``.

        The master stays on the ceiling; missing x/y default to the centre.
        """
        allowed = {"length_m", "width_m", "height_m", "master_x_m", "master_y_m"}
        unknown = set(doc) - allowed
        if unknown:
            raise ValueError(f"unknown geometry key {sorted(unknown)[0]!r}")
        length = float(doc.get("length_m", DEFAULT_LENGTH_M))
        width = float(doc.get("width_m", DEFAULT_WIDTH_M))
        height = float(doc.get("height_m", DEFAULT_HEIGHT_M))
        mx = doc.get("master_x_m")
        my = doc.get("master_y_m")
        if mx is None and my is None:
            return cls(length, width, height)
        master = (
            float(mx) if mx is not None else length / 2.0,
            float(my) if my is not None else width / 2.0,
            height,
        )
        return cls(length, width, height, master)


def farthest_corner(g: CabinGeometry) -> tuple[Vec3, float]:
    """Farthest corner from the master and its distance; ties go to the first in x, y, z order."""
    best, best_d = None, -1.0
    for corner in g.corners():
        d = math.dist(g.master, corner)
        if d > best_d:
            best, best_d = corner, d
    return best, best_d


def worst_case_distance(g: CabinGeometry) -> float:
    return farthest_corner(g)[1]


def optimal_master_xy(g: CabinGeometry) -> tuple[float, float]:
    """Ceiling position minimising the worst-case distance: the rectangle centre.

    Along each axis the farthest wall distance ``max(x, L - x)`` is minimised
    at ``L/2`` independently, and the corner distance is monotone in each term.
    """
    return (g.length_m / 2.0, g.width_m / 2.0)
