"""Commensurability invariants and decision procedures for surface amalgams.

Two independent tests decide abstract commensurability of amalgam fundamental
groups:

* the quadruple test: each amalgam yields a sorted 4-tuple of piece Euler
  characteristics, and two amalgams are commensurable iff the tuples agree
  after dividing out the gcd;
* the expression test: search the (at most three) ways each amalgam decomposes
  as two closed surfaces glued along a curve, and accept when some pair of
  expressions matches in Euler-characteristic ratio and in the topological
  types of both gluing curves.

The quadruple further partitions amalgams into three subclasses C0/C1/C2 which
govern how many minimal "maximal elements" the commensurability class has, and
whether the class contains a right-angled Coxeter group of the two-circuit kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import (
    Amalgam,
    CurveSpec,
    Surface,
    cut_along,
    require_valid,
    topological_type,
)

Quadruple = tuple[int, int, int, int]


class SubclassLabel(Enum):
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"


# ---------------------------------------------------------------------------
# Quadruple invariant
# ---------------------------------------------------------------------------

def pieces(a: Amalgam) -> list[Surface]:
    """Complement of the singular curve: the cut pieces of both sides."""
    require_valid(a)
    return cut_along(a.left, a.left_curve) + cut_along(a.right, a.right_curve)


def quadruple(a) -> Quadruple:
    """Sorted 4-tuple of piece Euler characteristics (most negative first).

    One-boundary pieces contribute their Euler characteristic; a two-boundary
    piece S (a non-separating cut) contributes chi(S)/2 twice.  Not normalized.

    Accepts an Amalgam or anything exposing a ``quadruple()`` method (such as
    maximal-element descriptions).
    """
    if not isinstance(a, Amalgam):
        return a.quadruple()
    entries = []
    for piece in pieces(a):
        if piece.boundary == 1:
            entries.append(piece.euler)
        else:
            entries.append(piece.euler // 2)
            entries.append(piece.euler // 2)
    entries.sort()
    return tuple(entries)


def normalize(q: Quadruple) -> Quadruple:
    """Divide the entries by the gcd of their absolute values."""
    g = math.gcd(*(abs(e) for e in q))
    return tuple(e // g for e in q)


def commensurable(a1, a2) -> bool:
    """Quadruple test: equal normalized quadruples."""
    return normalize(quadruple(a1)) == normalize(quadruple(a2))


# ---------------------------------------------------------------------------
# Expression test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expression:
    """One way of writing an amalgam as two closed surfaces glued along a curve.

    chi_left/chi_right are the Euler characteristics of the two closed sides;
    t_left/t_right the topological types of the gluing curve seen from each side.
    """

    chi_left: int
    chi_right: int
    t_left: Fraction
    t_right: Fraction

    def flipped(self) -> "Expression":
        return Expression(self.chi_right, self.chi_left, self.t_right, self.t_left)

    def matches(self, other: "Expression") -> bool:
        return (
            Fraction(self.chi_left, self.chi_right)
            == Fraction(other.chi_left, other.chi_right)
            and self.t_left == other.t_left
            and self.t_right == other.t_right
        )


def _pair_type(chi_a: int, chi_b: int) -> Fraction:
    """Topological type of a curve splitting a closed surface into one-boundary
    pieces of the given Euler characteristics, arranged to be >= 1."""
    lo, hi = min(chi_a, chi_b), max(chi_a, chi_b)
    return Fraction(lo, hi)


def expressions(a: Amalgam) -> list[Expression]:
    """All decompositions of the glued space as an amalgam of two closed surfaces.

    The given labeling is always one.  When both curves are separating, the four
    one-boundary pieces hang on a single singular curve and may be re-paired into
    two closed surfaces in up to three ways; a two-boundary piece admits no
    re-pairing, so amalgams with a non-separating side decompose uniquely.
    """
    require_valid(a)
    given = Expression(
        a.left.euler,
        a.right.euler,
        topological_type(a.left, a.left_curve),
        topological_type(a.right, a.right_curve),
    )
    if not (a.left_curve.is_separating and a.right_curve.is_separating):
        return [given]
    chis = [p.euler for p in pieces(a)]
    exprs = []
    seen = set()
    p0 = chis[0]
    for partner in (1, 2, 3):
        rest = [i for i in (1, 2, 3) if i != partner]
        ca, cb = p0, chis[partner]
        cc, cd = chis[rest[0]], chis[rest[1]]
        expr = Expression(ca + cb, cc + cd, _pair_type(ca, cb), _pair_type(cc, cd))
        key = (expr.chi_left, expr.chi_right, expr.t_left, expr.t_right)
        if key not in seen:
            seen.add(key)
            exprs.append(expr)
    return exprs


def commensurable_types(a1: Amalgam, a2: Amalgam) -> bool:
    """Expression test, independent of the quadruple machinery.

    True iff some expressions e1 of a1 and e2 of a2 (allowing a side swap of
    e2) have equal side-chi ratios and equal curve types on matching sides.
    """
    e1s = expressions(a1)
    e2s = expressions(a2)
    for e1 in e1s:
        for e2 in e2s:
            if e1.matches(e2) or e1.matches(e2.flipped()):
                return True
    return False


# ---------------------------------------------------------------------------
# Subclass partition
# ---------------------------------------------------------------------------

def subclass(a) -> SubclassLabel:
    """Subclass of the commensurability class of the amalgam.

    C2: the class is realized by a union of two surfaces along curves of
    topological type one, equivalently the quadruple pairs up as (p,p,q,q).
    C0: all four entries distinct (both curves separating, unequal pieces).
    C1: the remaining mixed cases.  Computed from the quadruple pattern so the
    label is constant on commensurability classes.
    """
    q = quadruple(a)
    if q[0] == q[1] and q[2] == q[3]:
        return SubclassLabel.C2
    if len(set(q)) == 4:
        return SubclassLabel.C0
    return SubclassLabel.C1


# ---------------------------------------------------------------------------
# Maximal elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SideDescription:
    """One closed side of a gluing description.

    kind "separating": two one-boundary pieces with the given Euler
    characteristics.  kind "nonseparating": one two-boundary piece with the
    given (even) Euler characteristic.
    """

    kind: str
    piece_chis: tuple[int, ...]

    @property
    def chi(self) -> int:
        return sum(self.piece_chis)

    def quadruple_entries(self) -> tuple[int, ...]:
        if self.kind == "nonseparating":
            half = self.piece_chis[0] // 2
            return (half, half)
        return self.piece_chis

    def realizable(self) -> bool:
        """Whether genuine surfaces of these piece chis exist (one-boundary
        pieces need odd Euler characteristic)."""
        if self.kind == "nonseparating":
            return self.piece_chis[0] % 2 == 0 and self.piece_chis[0] <= -2
        return all(c % 2 == 1 and c <= -1 for c in self.piece_chis)

    def as_surface_and_curve(self) -> tuple[Surface, CurveSpec] | None:
        if not self.realizable():
            return None
        if self.kind == "nonseparating":
            genus = (2 - self.chi) // 2
            return Surface(genus), CurveSpec.nonseparating()
        r = (1 - self.piece_chis[0]) // 2
        s = (1 - self.piece_chis[1]) // 2
        return Surface(r + s), CurveSpec.separating(r, s)


@dataclass(frozen=True)
class MaximalElement:
    """Gluing description of a minimal representative of a commensurability class."""

    name: str
    sides: tuple[SideDescription, SideDescription]

    def quadruple(self) -> Quadruple:
        entries = self.sides[0].quadruple_entries() + self.sides[1].quadruple_entries()
        return tuple(sorted(entries))

    @property
    def realizable(self) -> bool:
        return all(side.realizable() for side in self.sides)

    def as_amalgam(self) -> Amalgam | None:
        """The description as an actual amalgam, when the pieces exist."""
        built = [side.as_surface_and_curve() for side in self.sides]
        if None in built:
            return None
        (sl, cl), (sr, cr) = built
        return Amalgam(sl, sr, cl, cr)


def _sep_side(chi_a: int, chi_b: int) -> SideDescription:
    return SideDescription("separating", tuple(sorted((chi_a, chi_b))))


def _nonsep_side(chi_pair_entry: int) -> SideDescription:
    return SideDescription("nonseparating", (2 * chi_pair_entry,))


def maximal_elements(a) -> list[MaximalElement]:
    """Minimal gluing descriptions covering every member of the class.

    C0 classes have one (four one-boundary pieces at the normalized quadruple);
    C1 classes two; C2 classes four, realizing every combination of replacing an
    equal pair of entries by a non-separating side.  Descriptions whose pieces
    would need even one-boundary Euler characteristics are flagged unrealizable;
    such shapes simply do not occur among the class's members.
    """
    p = normalize(quadruple(a))
    label = subclass(a)
    four_piece = MaximalElement("G0", (_sep_side(p[0], p[1]), _sep_side(p[2], p[3])))
    if label is SubclassLabel.C0:
        return [four_piece]
    if label is SubclassLabel.C1:
        # Exactly one value repeats; the pair becomes the non-separating side.
        pair_value = next(v for v in set(p) if p.count(v) >= 2)
        rest = list(p)
        rest.remove(pair_value)
        rest.remove(pair_value)
        h0 = MaximalElement("H0", (_nonsep_side(pair_value), _sep_side(rest[0], rest[1])))
        return [four_piece, h0]
    # C2: entries pair as (p,p,q,q) with p <= q.
    lo, hi = p[0], p[2]
    h0 = MaximalElement("H0", (_nonsep_side(lo), _sep_side(hi, hi)))
    k0 = MaximalElement("K0", (_nonsep_side(hi), _sep_side(lo, lo)))
    l0 = MaximalElement("L0", (_nonsep_side(lo), _nonsep_side(hi)))
    return [four_piece, h0, k0, l0]


def _shape(a) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(sorted two-boundary piece chis, sorted one-boundary piece chis)."""
    if isinstance(a, Amalgam):
        nonsep, sep = [], []
        for piece in pieces(a):
            (nonsep if piece.boundary == 2 else sep).append(piece.euler)
        return tuple(sorted(nonsep)), tuple(sorted(sep))
    nonsep, sep = [], []
    for side in a.sides:
        if side.kind == "nonseparating":
            nonsep.append(side.piece_chis[0])
        else:
            sep.extend(side.piece_chis)
    return tuple(sorted(nonsep)), tuple(sorted(sep))


def cover_index(a, m) -> int | None:
    """Degree with which `a` covers the maximal element `m`, or None.

    The index is the integer D scaling m's quadruple to a's; it exists only
    when the gluing shapes match piecewise: non-separating sides cover
    non-separating sides by cyclic covers, and one-boundary pieces cover
    one-boundary pieces.  Both-separating amalgams cover the four-piece space
    regardless of how their pieces are paired into sides.
    """
    qa, qm = quadruple(a), quadruple(m)
    if qm[0] == 0:
        return None
    d, rem = divmod(qa[0], qm[0])
    if rem != 0 or d <= 0:
        return None
    if tuple(e * d for e in qm) != qa:
        return None
    nonsep_a, sep_a = _shape(a)
    nonsep_m, sep_m = _shape(m)
    if len(nonsep_a) != len(nonsep_m):
        return None
    if tuple(e * d for e in nonsep_m) != nonsep_a:
        return None
    if tuple(e * d for e in sep_m) != sep_a:
        return None
    return d


# ---------------------------------------------------------------------------
# Right-angled Coxeter correspondences
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CoxeterParams:
    """Parameters (m <= n, both >= 5) of the two-circuit right-angled Coxeter
    group: circuits of lengths m and n sharing a length-2 subpath."""

    m: int
    n: int

    def __post_init__(self):
        if self.m > self.n:
            raise ValueError("params must be ordered m <= n")
        if self.m < 5:
            raise ValueError("params must be at least 5")


def cp_commensurable(p1: CoxeterParams, p2: CoxeterParams) -> bool:
    """Two-circuit Coxeter groups are commensurable iff (m-4)/(n-4) agree."""
    return Fraction(p1.m - 4, p1.n - 4) == Fraction(p2.m - 4, p2.n - 4)


@dataclass(frozen=True)
class CoxeterResult:
    """Coxeter groups attached to a C2 amalgam.

    maximal: parameters of the reflection orbi-complex covered by every member
    of the class (entries 4+|p|, 4+|q| from the normalized quadruple (p,p,q,q)).
    direct: when the amalgam itself glues along curves of type one, the
    parameters (genus+3, genus+3) of the orbi-complex it 8-fold covers.
    """

    maximal: CoxeterParams
    direct: CoxeterParams | None


def coxeter_params(a: Amalgam) -> CoxeterResult | None:
    """Coxeter parameters for the class of `a`, or None outside C2."""
    if subclass(a) is not SubclassLabel.C2:
        return None
    p = normalize(quadruple(a))
    lo, hi = p[0], p[2]
    maximal = CoxeterParams(4 + abs(hi), 4 + abs(lo))
    direct = None
    if (
        topological_type(a.left, a.left_curve) == 1
        and topological_type(a.right, a.right_curve) == 1
    ):
        g, h = sorted((a.left.genus, a.right.genus))
        direct = CoxeterParams(g + 3, h + 3)
    return CoxeterResult(maximal, direct)


# ---------------------------------------------------------------------------
# Generalized theta graphs for both-separating amalgams
# ---------------------------------------------------------------------------

def path_group_orbifold_euler(n: int) -> Fraction:
    """Rational Euler characteristic of the right-angled Coxeter group on a
    path with n vertices: 1 - n/2 + (n-1)/4."""
    return 1 - Fraction(n, 2) + Fraction(n - 1, 4)


@dataclass(frozen=True)
class ThetaCheck:
    piece_genus: int
    n_formula: int
    n_oracle: int

    @property
    def agree(self) -> bool:
        return self.n_formula == self.n_oracle


@dataclass(frozen=True)
class ThetaResult:
    """Generalized theta graph Theta(n_1,..,n_4) whose Coxeter group contains
    the amalgam group with index four, plus the per-piece oracle check."""

    ns: tuple[int, int, int, int]
    checks: tuple[ThetaCheck, ...]

    @property
    def oracle_agrees(self) -> bool:
        return all(c.agree for c in self.checks)


def theta_graph_params(a: Amalgam) -> ThetaResult | None:
    """Theta-graph parameters n_i = 2 g_i + 2 over the four one-boundary pieces.

    None when either curve is non-separating (the pieces must all have one
    boundary component).  Each n_i is cross-checked against the orbifold Euler
    characteristic oracle: the reflection quotient of the piece must have
    chi equal to chi(piece)/4, which pins n via chi(P_n) = (3-n)/4.
    """
    require_valid(a)
    if not (a.left_curve.is_separating and a.right_curve.is_separating):
        return None
    checks = []
    for piece in pieces(a):
        g = piece.genus
        n_formula = 2 * g + 2
        target = Fraction(piece.euler, 4)
        # Solve 1 - n/2 + (n-1)/4 = target for n.
        n_oracle = int(3 - 4 * target)
        assert path_group_orbifold_euler(n_oracle) == target
        checks.append(ThetaCheck(g, n_formula, n_oracle))
    ns = tuple(sorted(c.n_formula for c in checks))
    return ThetaResult(ns, tuple(checks))


# ---------------------------------------------------------------------------
# Enumeration helpers for property suites and the CLI
# ---------------------------------------------------------------------------

def curve_specs(genus: int) -> list[CurveSpec]:
    """All curve types on a closed surface of the given genus."""
    specs = [CurveSpec.nonseparating()]
    specs.extend(CurveSpec.separating(r, genus - r) for r in range(1, genus // 2 + 1))
    return specs


def enumerate_amalgams(max_genus: int, min_genus: int = 2) -> list[Amalgam]:
    """Every amalgam with both genera in [min_genus, max_genus], one per
    unordered pair of sides, in a deterministic order."""
    sides = [
        (Surface(g), spec)
        for g in range(min_genus, max_genus + 1)
        for spec in curve_specs(g)
    ]
    out = []
    for i, (sl, cl) in enumerate(sides):
        for sr, cr in sides[i:]:
            out.append(Amalgam(sl, sr, cl, cr))
    return out
