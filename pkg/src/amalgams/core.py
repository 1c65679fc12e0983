"""Surfaces, curves and amalgams.

An amalgam is two closed orientable surfaces of genus at least two, glued to
each other along an essential simple closed curve in each.  Curves are recorded
purely by their topological type data: non-separating, or separating with a
genus split (r, s).  That data determines every invariant computed by this
package, so no embeddings or isotopy classes are modelled.

All arithmetic here is exact (integers and ``fractions.Fraction``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

NONSEPARATING = "nonseparating"
SEPARATING = "separating"


@dataclass(frozen=True, order=True)
class Surface:
    """Compact orientable surface of the given genus and boundary count."""

    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.boundary < 0:
            raise ValueError("boundary count must be non-negative")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.boundary


def euler_characteristic(s: Surface) -> int:
    """Euler characteristic 2 - 2g - b."""
    return s.euler


@dataclass(frozen=True, order=True)
class CurveSpec:
    """Topological type of an essential simple closed curve on a closed surface.

    ``kind`` is ``"nonseparating"`` or ``"separating"``; a separating curve
    carries the genus split ``(r, s)`` of its two complementary pieces, stored
    with r <= s.  Validity against a host surface (r + s = genus) is checked by
    the operations that take a host.
    """

    kind: str
    split: tuple[int, int] | None = None

    def __post_init__(self):
        if self.kind not in (NONSEPARATING, SEPARATING):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == NONSEPARATING:
            if self.split is not None:
                raise ValueError("non-separating curves carry no split")
        else:
            if self.split is None:
                raise ValueError("separating curves need a genus split")
            r, s = self.split
            if r < 1 or s < 1:
                raise ValueError("split parts must be at least one (essential curve)")
            if r > s:
                object.__setattr__(self, "split", (s, r))

    @classmethod
    def nonseparating(cls) -> "CurveSpec":
        return cls(NONSEPARATING)

    @classmethod
    def separating(cls, r: int, s: int) -> "CurveSpec":
        return cls(SEPARATING, (r, s))

    @property
    def is_separating(self) -> bool:
        return self.kind == SEPARATING


@dataclass(frozen=True, order=True)
class Amalgam:
    """Two closed surfaces glued along one essential simple closed curve each."""

    left: Surface
    right: Surface
    left_curve: CurveSpec
    right_curve: CurveSpec

    def sides(self):
        return ((self.left, self.left_curve), (self.right, self.right_curve))


def euler_of_amalgam(a: Amalgam) -> int:
    """Euler characteristic of the glued space (the circle contributes zero)."""
    return a.left.euler + a.right.euler


def cut_along(host: Surface, c: CurveSpec) -> list[Surface]:
    """Pieces obtained by cutting a closed surface along the curve.

    A non-separating curve yields one piece S_{g-1,2}; a separating curve with
    split (r, s) yields S_{r,1} and S_{s,1}.  Total Euler characteristic is
    preserved.
    """
    _check_curve(host, c)
    if c.kind == NONSEPARATING:
        return [Surface(host.genus - 1, 2)]
    r, s = c.split
    return sorted([Surface(r, 1), Surface(s, 1)])


def topological_type(host: Surface, c: CurveSpec) -> Fraction:
    """Topological type of the curve: 1 if non-separating, else the ratio of
    the complementary pieces' Euler characteristics arranged to be >= 1."""
    _check_curve(host, c)
    if c.kind == NONSEPARATING:
        return Fraction(1)
    r, s = c.split
    chi_r, chi_s = 1 - 2 * r, 1 - 2 * s
    # chi_s <= chi_r < 0, so chi_s / chi_r >= 1.
    return Fraction(chi_s, chi_r)


def _check_curve(host: Surface, c: CurveSpec):
    if host.boundary != 0:
        raise ValueError("host surface must be closed")
    if c.kind == SEPARATING:
        r, s = c.split
        if r + s != host.genus:
            raise ValueError(
                f"split must sum to genus: {r}+{s} != {host.genus}"
            )


def validate(a: Amalgam) -> list[str]:
    """Validity report for an amalgam; empty list means valid.

    Requires closed sides of genus at least two and well-formed curve specs.
    Each violated constraint is reported with the side at fault.
    """
    errors = []
    for name, surface, curve in (
        ("left", a.left, a.left_curve),
        ("right", a.right, a.right_curve),
    ):
        if surface.boundary != 0:
            errors.append(f"{name}: surface must be closed")
        if surface.genus <= 1:
            errors.append(f"{name}: genus must exceed one")
        if curve.kind == SEPARATING:
            r, s = curve.split
            if r + s != surface.genus:
                errors.append(f"{name}: split must sum to genus ({r}+{s} != {surface.genus})")
    return errors


def require_valid(a: Amalgam):
    errors = validate(a)
    if errors:
        raise ValueError("; ".join(errors))


def amalgam(genus_left, curve_left, genus_right, curve_right) -> Amalgam:
    """Convenience constructor from genera and curve specs."""
    return Amalgam(Surface(genus_left), Surface(genus_right), curve_left, curve_right)


# ---------------------------------------------------------------------------
# JSON encoding.  The wire format used by the CLI and all fixtures:
# {"left":{"genus":G},"right":{"genus":H},
#  "left_curve":{"kind":"nonseparating"}|{"kind":"separating","split":[r,s]},
#  "right_curve":{...}}
# ---------------------------------------------------------------------------

def curve_to_json(c: CurveSpec) -> dict:
    if c.kind == NONSEPARATING:
        return {"kind": NONSEPARATING}
    return {"kind": SEPARATING, "split": list(c.split)}


def curve_from_json(obj) -> CurveSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("curve spec must be an object with a 'kind' field")
    if obj["kind"] == NONSEPARATING:
        return CurveSpec.nonseparating()
    if obj["kind"] == SEPARATING:
        split = obj.get("split")
        if not (isinstance(split, (list, tuple)) and len(split) == 2):
            raise ValueError("separating curve spec needs 'split': [r, s]")
        return CurveSpec.separating(int(split[0]), int(split[1]))
    raise ValueError(f"unknown curve kind {obj['kind']!r}")


def amalgam_to_json(a: Amalgam) -> dict:
    return {
        "left": {"genus": a.left.genus},
        "right": {"genus": a.right.genus},
        "left_curve": curve_to_json(a.left_curve),
        "right_curve": curve_to_json(a.right_curve),
    }


def amalgam_from_json(obj) -> Amalgam:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        left = Surface(int(obj["left"]["genus"]))
        right = Surface(int(obj["right"]["genus"]))
        left_curve = curve_from_json(obj["left_curve"])
        right_curve = curve_from_json(obj["right_curve"])
    except KeyError as missing:
        raise ValueError(f"amalgam JSON is missing field {missing}") from None
    return Amalgam(left, right, left_curve, right_curve)


def fraction_to_json(x) -> dict:
    """Exact rationals on the wire are {"num": .., "den": ..}, never floats."""
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}
