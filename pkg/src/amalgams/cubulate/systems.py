"""Filling curve systems on closed surfaces, as combinatorial maps.

A curve system is a collection of simple closed curves meeting in transverse
double points.  Internally a system is stored by its complementary regions:
each region is a cyclic sequence of sides, a side being an arc of a curve
together with a traversal orientation.  Arc (c, i) is the segment of curve c
between its i-th and (i+1)-st crossings.

Systems can be built two ways:

* from crossing data (each curve as its cyclic sequence of crossing passes,
  with the crossing's four arc-end slots in counterclockwise order); regions
  are then derived by face tracing, and
* from region data directly (the JSON wire form), in which case the crossing
  structure is reconstructed and validated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import Surface

ArcId = tuple[str, int]
Side = tuple[ArcId, int]
Dart = tuple[int, int]  # (crossing, slot)


class CurveSystemError(ValueError):
    pass


@dataclass
class CurveSystem:
    surface: Surface
    curves: list[str]
    arc_counts: dict[str, int]
    regions: list[tuple[Side, ...]]
    # populated when built from crossing data
    passes: dict[str, list[Dart]] | None = None

    # -- basic counts -------------------------------------------------------

    @property
    def arc_count(self) -> int:
        return sum(self.arc_counts.values())

    @property
    def region_count(self) -> int:
        return len(self.regions)

    def arcs(self) -> list[ArcId]:
        return [(c, i) for c in self.curves for i in range(self.arc_counts[c])]

    # -- junction / crossing reconstruction ---------------------------------

    def _side_junctions(self, side: Side):
        """(tail junction, head junction) of a side; junction (c, i) sits at
        the head of arc (c, i) in the curve's own orientation."""
        (c, i), orient = side
        m = self.arc_counts[c]
        tail = (c, (i - 1) % m)
        head = (c, i)
        return (tail, head) if orient == 1 else (head, tail)

    def junction_classes(self):
        """Union-find of junctions into crossings, from region corners."""
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for c in self.curves:
            for i in range(self.arc_counts[c]):
                find((c, i))
        for region in self.regions:
            k = len(region)
            for pos in range(k):
                _, head = self._side_junctions(region[pos])
                tail, _ = self._side_junctions(region[(pos + 1) % k])
                union(head, tail)
        classes = {}
        for c in self.curves:
            for i in range(self.arc_counts[c]):
                classes.setdefault(find((c, i)), []).append((c, i))
        return list(classes.values())

    def corners(self):
        """All region corners as (region index, position); the corner at
        (r, pos) joins side pos to side pos+1 of region r."""
        return [
            (r, pos) for r, region in enumerate(self.regions) for pos in range(len(region))
        ]

    def euler_count(self) -> tuple[int, int, int]:
        v = len(self.junction_classes())
        return v, self.arc_count, self.region_count


@dataclass
class SystemReport:
    items: list[tuple[str, bool, str]] = field(default_factory=list)
    counts: tuple[int, int, int] | None = None

    def add(self, name, ok, detail=""):
        self.items.append((name, bool(ok), detail))

    @property
    def valid(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.items if not ok]


def validate_curve_system(cs: CurveSystem) -> SystemReport:
    """Itemized validity report: every curve crossed, arcs two-sided, crossings
    4-valent, Euler count against the declared surface, connectivity."""
    report = SystemReport()

    crossed = all(cs.arc_counts.get(c, 0) >= 1 for c in cs.curves)
    report.add(
        "curves crossed",
        crossed,
        "every curve must meet the others (filling collection)" if not crossed else "",
    )
    if not crossed:
        return report

    appearances = {}
    for region in cs.regions:
        for (arc, orient) in region:
            appearances.setdefault(arc, []).append(orient)
    two_sided = all(
        sorted(appearances.get(arc, [])) == [-1, 1] for arc in cs.arcs()
    ) and len(appearances) == cs.arc_count
    report.add(
        "arcs two-sided",
        two_sided,
        "" if two_sided else "each arc must appear on exactly two region sides, once per orientation",
    )
    if not two_sided:
        return report

    classes = cs.junction_classes()
    valent = all(
        len(cls) == 2 and len({c for c, _ in cls}) == 2 for cls in classes
    )
    report.add(
        "crossings 4-valent",
        valent,
        "" if valent else "each crossing must be a transverse double point of two curves",
    )

    v, e, f = cs.euler_count()
    report.counts = (v, e, f)
    report.add("arc count doubles crossings", e == 2 * v, f"E={e}, V={v}")
    chi = cs.surface.euler
    report.add(
        "Euler count",
        v - e + f == chi,
        f"V-E+F = {v - e + f}, chi = {chi}",
    )

    # connectivity through shared crossings and arcs
    if valent:
        junction_of = {}
        for idx, cls in enumerate(classes):
            for j in cls:
                junction_of[j] = idx
        adjacency = {}
        for c in cs.curves:
            m = cs.arc_counts[c]
            for i in range(m):
                a, b = junction_of[(c, i)], junction_of[(c, (i - 1) % m)]
                adjacency.setdefault(a, set()).add(b)
                adjacency.setdefault(b, set()).add(a)
        seen = set()
        stack = [0]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adjacency.get(x, ()))
        connected = len(seen) == len(classes)
        report.add("connected", connected, "" if connected else "system is disconnected")
    return report


# ---------------------------------------------------------------------------
# Building from crossing data
# ---------------------------------------------------------------------------

def _check_passes(passes: dict[str, list[Dart]]):
    by_crossing = {}
    for c, plist in passes.items():
        if not plist:
            raise CurveSystemError(f"curve {c!r} has no crossings")
        for x, s in plist:
            if s not in (0, 1, 2, 3):
                raise CurveSystemError(f"bad slot {s} at crossing {x}")
            by_crossing.setdefault(x, []).append((c, s))
    n = max(by_crossing) + 1
    if sorted(by_crossing) != list(range(n)):
        raise CurveSystemError("crossing indices must be 0..n-1 without gaps")
    for x, entries in by_crossing.items():
        if len(entries) != 2:
            raise CurveSystemError(f"crossing {x} has {len(entries)} passes, needs 2")
        (c1, s1), (c2, s2) = entries
        if {s1 % 2, s2 % 2} != {0, 1}:
            raise CurveSystemError(
                f"crossing {x}: passes must use complementary slot pairs"
            )
        if c1 == c2:
            raise CurveSystemError(f"crossing {x}: a curve may not cross itself")
    return n


def curve_system_from_crossings(
    genus: int, passes: dict[str, list[Dart]]
) -> CurveSystem:
    """Build a system from per-curve crossing sequences and trace its regions.

    Each pass (x, s) enters crossing x at slot s and leaves at slot s+2; the
    four slots at a crossing are in counterclockwise order.  The declared genus
    is checked against the traced Euler characteristic by validate.
    """
    _check_passes(passes)
    curves = list(passes)
    arc_counts = {c: len(plist) for c, plist in passes.items()}

    # arc (c, i) runs from the exit dart of pass i to the entry dart of pass i+1
    alpha: dict[Dart, Dart] = {}
    dart_arc: dict[Dart, tuple[ArcId, int]] = {}  # dart -> (arc, +1 tail / -1 head)
    for c, plist in passes.items():
        m = len(plist)
        for i in range(m):
            x, s = plist[i]
            x2, s2 = plist[(i + 1) % m]
            tail = (x, (s + 2) % 4)
            head = (x2, s2)
            if tail in dart_arc or head in dart_arc:
                raise CurveSystemError(f"dart reused around arc {(c, i)}")
            alpha[tail] = head
            alpha[head] = tail
            dart_arc[tail] = ((c, i), 1)
            dart_arc[head] = ((c, i), -1)

    # trace faces: leave along dart d, cross its arc, turn to sigma^-1
    regions = []
    visited = set()
    for start in sorted(dart_arc):
        if start in visited:
            continue
        sides = []
        d = start
        while d not in visited:
            visited.add(d)
            arc, orient = dart_arc[d]
            sides.append((arc, orient))
            x, s = alpha[d]
            d = (x, (s - 1) % 4)
        regions.append(tuple(sides))

    return CurveSystem(
        surface=Surface(genus),
        curves=curves,
        arc_counts=arc_counts,
        regions=regions,
        passes={c: list(p) for c, p in passes.items()},
    )


# ---------------------------------------------------------------------------
# Double covers
# ---------------------------------------------------------------------------

def monodromy(cs: CurveSystem, weights: dict[ArcId, int], curve: str) -> int:
    return sum(weights.get((curve, i), 0) for i in range(cs.arc_counts[curve])) % 2


def pullback_double_cover(cs: CurveSystem, weights: dict[ArcId, int]) -> CurveSystem:
    """Pull the system back through the double cover defined by an arc cocycle.

    ``weights`` assigns 0 or 1 to each arc; a loop lifts closed iff its total
    weight is even.  Every region's boundary weight must be even (otherwise the
    regions would not lift and the data is inconsistent with the incidence).
    Vertices, arcs and regions all double, as does the Euler characteristic.
    """
    if cs.passes is None:
        raise CurveSystemError("pullback needs a system built from crossing data")
    for region in cs.regions:
        total = sum(weights.get(arc, 0) for arc, _ in region) % 2
        if total:
            raise CurveSystemError(
                "covering data inconsistent with incidence: odd region boundary"
            )

    n_crossings = max(x for plist in cs.passes.values() for x, _ in plist) + 1

    def lifted_crossing(x, sheet):
        return x + sheet * n_crossings

    new_passes: dict[str, list[Dart]] = {}
    for c, plist in cs.passes.items():
        m = len(plist)
        lifts = monodromy(cs, weights, c) == 0
        starts = [0, 1] if lifts else [0]
        for start_sheet in starts:
            if lifts:
                name = f"{c}.{start_sheet}"
            else:
                name = f"{c}.01"
            seq = []
            sheet = start_sheet
            rounds = 1 if lifts else 2
            for _ in range(rounds):
                for i in range(m):
                    x, s = plist[i]
                    seq.append((lifted_crossing(x, sheet), s))
                    sheet = (sheet + weights.get((c, i), 0)) % 2
            new_passes[name] = seq
    return curve_system_from_crossings(2 * cs.surface.genus - 1, new_passes)


def deck_quotient(cs: CurveSystem, involution: dict[int, int], genus: int,
                  rename: dict[str, str] | None = None) -> CurveSystem:
    """Quotient a system by a free involution on its crossings.

    The involution must preserve slots (act by sheet exchange); curve orbits
    merge or halve accordingly.  Used to derive quotient fixtures from a
    symmetric double-cover system.
    """
    if cs.passes is None:
        raise CurveSystemError("quotient needs crossing data")
    for x, y in involution.items():
        if x == y or involution[y] != x:
            raise CurveSystemError("involution must be free")
    orbit = {}
    for x in sorted(involution):
        y = involution[x]
        if min(x, y) == x:
            orbit[x] = len(orbit)
    rep = {x: (x if x in orbit else involution[x]) for x in involution}

    new_passes = {}
    consumed = set()
    for c, plist in cs.passes.items():
        if c in consumed:
            continue
        image = [(orbit[rep[x]], s) for x, s in plist]
        m = len(image)
        half = m // 2
        if m % 2 == 0 and image[half:] == image[:half]:
            image = image[:half]  # curve double-covers its quotient
            partner = None
        else:
            partner = _find_partner(cs, c, plist, rep, orbit, consumed)
        name = rename.get(c, c) if rename else c
        new_passes[name] = image
        if partner:
            consumed.add(partner)
    return curve_system_from_crossings(genus, new_passes)


def _find_partner(cs, c, plist, rep, orbit, consumed):
    """Curve whose crossing sequence is the involution image of c's."""
    target = [(orbit[rep[x]], s) for x, s in plist]
    for other, oplist in cs.passes.items():
        if other == c or other in consumed:
            continue
        image = [(orbit[rep[x]], s) for x, s in oplist]
        if len(image) != len(target):
            continue
        for shift in range(len(image)):
            if image[shift:] + image[:shift] == target:
                return other
    raise CurveSystemError(f"no involution partner for curve {c!r}")


# ---------------------------------------------------------------------------
# JSON wire form
# ---------------------------------------------------------------------------

def curve_system_to_json(cs: CurveSystem) -> dict:
    return {
        "surface": {"genus": cs.surface.genus},
        "curves": list(cs.curves),
        "arc_counts": dict(cs.arc_counts),
        "regions": [
            [{"arc": [c, i], "orient": orient} for (c, i), orient in region]
            for region in cs.regions
        ],
    }


def curve_system_from_json(obj) -> CurveSystem:
    try:
        genus = int(obj["surface"]["genus"])
        curves = list(obj["curves"])
        regions = [
            tuple(((side["arc"][0], int(side["arc"][1])), int(side["orient"]))
                  for side in region)
            for region in obj["regions"]
        ]
    except (KeyError, TypeError, IndexError) as exc:
        raise CurveSystemError(f"malformed curve system JSON: {exc}") from None
    if "arc_counts" in obj:
        arc_counts = {c: int(m) for c, m in obj["arc_counts"].items()}
    else:
        arc_counts = {c: 0 for c in curves}
        for region in regions:
            for (c, i), _ in region:
                arc_counts[c] = max(arc_counts.get(c, 0), i + 1)
    return CurveSystem(
        surface=Surface(genus), curves=curves, arc_counts=arc_counts, regions=regions
    )
