"""Shipped curve-system fixtures (placeholder, populated after design)."""

from __future__ import annotations

from dataclasses import dataclass

from .systems import CurveSystem, curve_system_from_crossings


@dataclass(frozen=True)
class Fixture:
    name: str
    genus: int
    variant: str                    # "nonseparating" | "separating"
    gluing_curve: str
    perimeter_curve: str
    passes: dict
    cover_weights: dict | None = None   # arc cocycle for the standard double cover
    notes: str = ""

    def system(self) -> CurveSystem:
        return curve_system_from_crossings(self.genus, self.passes)


REGISTRY: dict[str, Fixture] = {}


def register(fx: Fixture):
    REGISTRY[fx.name] = fx
    return fx


def get(name: str) -> Fixture:
    return REGISTRY[name]


def names() -> list[str]:
    return sorted(REGISTRY)
