"""Canonical labeling for curve systems and squared surfaces.

Both structures are rigid combinatorial maps: once a starting flag is fixed, a
breadth-first traversal by a fixed move order visits everything and produces a
relabeling-independent transcript.  The canonical form is the minimum
transcript over all starting flags (and over both orientations, so mirror
images compare equal); two objects are isomorphic iff their forms coincide.
Complexes here have at most a few hundred cells, so the quadratic sweep over
starting flags is cheap.
"""

from __future__ import annotations

from .systems import CurveSystem, CurveSystemError


def _traversal(start, moves, color):
    number = {start: 0}
    order = [start]
    transcript = []
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        row = [color(d)]
        for move in moves:
            nd = move(d)
            if nd not in number:
                number[nd] = len(order)
                order.append(nd)
            row.append(number[nd])
        transcript.append(tuple(row))
    return tuple(transcript), number


def _min_form(flags, moves_list, color):
    best = None
    best_numbering = None
    for moves in moves_list:
        for start in flags:
            transcript, numbering = _traversal(start, moves, color)
            if len(numbering) != len(flags):
                raise CurveSystemError("structure is not connected")
            if best is None or transcript < best:
                best = transcript
                best_numbering = numbering
    return best, best_numbering


# ---------------------------------------------------------------------------
# Curve systems
# ---------------------------------------------------------------------------

def _system_darts(cs: CurveSystem):
    if cs.passes is None:
        raise CurveSystemError("canonical form needs a system built from crossing data")
    alpha = {}
    dart_curve = {}
    for c, plist in cs.passes.items():
        m = len(plist)
        for i in range(m):
            x, s = plist[i]
            x2, s2 = plist[(i + 1) % m]
            tail, head = (x, (s + 2) % 4), (x2, s2)
            alpha[tail] = head
            alpha[head] = tail
            dart_curve[tail] = c
            dart_curve[head] = c
    return alpha, dart_curve


def canonical_form(cs: CurveSystem, distinguished: set[str] = frozenset()):
    """Canonical form of a curve system as an edge-colored combinatorial map.

    ``distinguished`` names curves that must map to distinguished curves under
    any isomorphism (the lifts of a gluing curve); all other curves may permute
    freely.
    """
    alpha, dart_curve = _system_darts(cs)
    darts = sorted(alpha)

    def sigma(d):
        return (d[0], (d[1] + 1) % 4)

    def sigma_inv(d):
        return (d[0], (d[1] - 1) % 4)

    def color(d):
        return 0 if dart_curve[d] in distinguished else 1

    form, _ = _min_form(darts, [[sigma, alpha.get], [sigma_inv, alpha.get]], color)
    return form


def curve_system_certificate(cs: CurveSystem, distinguished: set[str] = frozenset()):
    """Canonical numbering of the darts realizing the canonical form."""
    alpha, dart_curve = _system_darts(cs)
    darts = sorted(alpha)

    def sigma(d):
        return (d[0], (d[1] + 1) % 4)

    def sigma_inv(d):
        return (d[0], (d[1] - 1) % 4)

    def color(d):
        return 0 if dart_curve[d] in distinguished else 1

    form, numbering = _min_form(darts, [[sigma, alpha.get], [sigma_inv, alpha.get]], color)
    return form, numbering


def curve_systems_isomorphic(
    cs1: CurveSystem,
    cs2: CurveSystem,
    distinguished1: set[str] = frozenset(),
    distinguished2: set[str] = frozenset(),
) -> bool:
    return canonical_form(cs1, distinguished1) == canonical_form(cs2, distinguished2)


# ---------------------------------------------------------------------------
# Squared surfaces
# ---------------------------------------------------------------------------

def _square_flags(sq):
    """Flags (square id, position) with rotation and edge-crossing moves."""
    occurrences = {}
    for s, square in sq.squares.items():
        for k in range(4):
            occurrences.setdefault(square.edges[k], []).append((s, k))
    for e, occ in occurrences.items():
        if len(occ) != 2:
            raise CurveSystemError(
                f"edge {e} lies in {len(occ)} squares; canonical form needs a surface"
            )
    flags = [(s, k) for s in sq.squares for k in range(4)]

    def rotate(flag):
        s, k = flag
        return (s, (k + 1) % 4)

    def rotate_inv(flag):
        s, k = flag
        return (s, (k - 1) % 4)

    def cross(flag):
        s, k = flag
        a, b = occurrences[sq.squares[s].edges[k]]
        return b if a == (s, k) else a

    return flags, rotate, rotate_inv, cross


def square_complexes_isomorphic(sq1, sq2) -> bool:
    """Isomorphism of squared surfaces (each edge in exactly two squares),
    allowing mirror images."""

    def form(sq):
        flags, rotate, rotate_inv, cross = _square_flags(sq)

        def color(flag):
            s, k = flag
            square = sq.squares[s]
            # relative direction across the crossed edge is orientation data
            return 0

        best, _ = _min_form(flags, [[rotate, cross], [rotate_inv, cross]], color)
        return best

    return form(sq1) == form(sq2)
