"""Flat 2D geometry descriptors shared by the seaweed and fungus renderers.

The engine ships these inside state snapshots; clients draw them verbatim
instead of re-deriving any morphology.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Segment:
    x0: float
    y0: float
    x1: float
    y1: float
    thickness: float


@dataclass(frozen=True)
class Circle:
    x: float
    y: float
    radius: float


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[float, float], ...]
    closed: bool = True


@dataclass(frozen=True)
class GeometryDescriptor:
    segments: tuple[Segment, ...] = ()
    polylines: tuple[Polyline, ...] = ()
    circles: tuple[Circle, ...] = ()

    def as_dict(self) -> dict:
        return {
            "segments": [[s.x0, s.y0, s.x1, s.y1, s.thickness] for s in self.segments],
            "polylines": [
                {"points": [[x, y] for x, y in p.points], "closed": p.closed}
                for p in self.polylines
            ],
            "circles": [[c.x, c.y, c.radius] for c in self.circles],
        }
