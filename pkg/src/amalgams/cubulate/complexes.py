"""Square complexes dual to curve systems, and their verification.

The dual complex of a filling curve system has one vertex per complementary
region, one edge per arc and one square per crossing; its hyperplane classes
are in bijection with the curves.  The same SquareComplex structure also holds
barycentric subdivisions and complexes glued along paths, so the link and
specialness checks here work uniformly on all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .systems import CurveSystem, CurveSystemError, validate_curve_system


@dataclass
class Square:
    """One square: boundary cycle corners[0] -edges[0]-> corners[1] -> ...

    dirs[k] is +1 when edges[k] is traversed from its stored tail to its stored
    head along the cycle; corners[k] sits between edges[k-1] and edges[k].
    """

    edges: list
    dirs: list
    corners: list


@dataclass
class SquareComplex:
    vertices: list
    edges: dict          # edge id -> (tail vertex, head vertex)
    squares: dict        # square id -> Square
    edge_label: dict = field(default_factory=dict)
    vertex_marks: set = field(default_factory=set)

    def edge_end_at(self, edge, vertex):
        a, b = self.edges[edge]
        if a == vertex:
            return (edge, 0)
        if b == vertex:
            return (edge, 1)
        raise KeyError(f"edge {edge} not incident to {vertex}")


# ---------------------------------------------------------------------------
# Dual complex of a curve system
# ---------------------------------------------------------------------------

def _traversal_head_end(side):
    (arc, orient) = side
    return ("head", arc) if orient == 1 else ("tail", arc)


def _traversal_tail_end(side):
    (arc, orient) = side
    return ("tail", arc) if orient == 1 else ("head", arc)


def dual_square_complex(cs: CurveSystem) -> SquareComplex:
    """Vertices = regions, edges = arcs, squares = crossings.

    Refuses invalid systems (triple points, Euler mismatches).  Every square's
    boundary alternates between the two curves crossing there.
    """
    report = validate_curve_system(cs)
    if not report.valid:
        raise CurveSystemError(
            "cannot dualize an invalid system: " + "; ".join(report.failures())
        )

    # each arc is traversed once positively and once negatively
    plus_region, minus_region = {}, {}
    for r, region in enumerate(cs.regions):
        for pos, (arc, orient) in enumerate(region):
            if orient == 1:
                plus_region[arc] = r
            else:
                minus_region[arc] = r
    edges = {arc: (plus_region[arc], minus_region[arc]) for arc in cs.arcs()}

    # corners, grouped by crossing; each corner joins the head end of one side
    # to the tail end of the next around a region
    classes = cs.junction_classes()
    junction_to_crossing = {}
    for idx, cls in enumerate(classes):
        for j in cls:
            junction_to_crossing[j] = idx
    corners_at = {idx: [] for idx in range(len(classes))}
    for r, region in enumerate(cs.regions):
        k = len(region)
        for pos in range(k):
            side_in = region[pos]
            side_out = region[(pos + 1) % k]
            _, head_junction = cs._side_junctions(side_in)
            corner = {
                "region": r,
                "in_end": _traversal_head_end(side_in),
                "out_end": _traversal_tail_end(side_out),
                "out_orient": side_out[1],
            }
            corners_at[junction_to_crossing[head_junction]].append(corner)

    squares = {}
    for idx, corners in corners_at.items():
        if len(corners) != 4:
            raise CurveSystemError(f"crossing {idx} has {len(corners)} corners, expected 4")
        by_in_end = {}
        for c in corners:
            if c["in_end"] in by_in_end:
                raise CurveSystemError(f"crossing {idx}: duplicated arc end")
            by_in_end[c["in_end"]] = c
        chain = [corners[0]]
        while len(chain) < 4:
            nxt = by_in_end.get(chain[-1]["out_end"])
            if nxt is None or nxt in chain:
                raise CurveSystemError(f"crossing {idx}: corners do not chain")
            chain.append(nxt)
        if chain[-1]["out_end"] != chain[0]["in_end"]:
            raise CurveSystemError(f"crossing {idx}: corners do not close up")
        # chain corner k sits between its in_end (= corner k-1's out_end) and
        # its out_end, so with edges[k] = out_end of corner k the convention
        # corners[k] between edges[k-1], edges[k] holds without shifting
        squares[idx] = Square(
            edges=[c["out_end"][1] for c in chain],
            dirs=[c["out_orient"] for c in chain],
            corners=[c["region"] for c in chain],
        )

    sq = SquareComplex(
        vertices=list(range(len(cs.regions))),
        edges=edges,
        squares=squares,
        edge_label={arc: arc[0] for arc in edges},
    )
    for square in sq.squares.values():
        labels = [sq.edge_label[e] for e in square.edges]
        if labels[0] != labels[2] or labels[1] != labels[3] or labels[0] == labels[1]:
            raise CurveSystemError("square boundary does not alternate between two curves")
    return sq


# ---------------------------------------------------------------------------
# Hyperplanes
# ---------------------------------------------------------------------------

def hyperplane_classes(sq: SquareComplex):
    """Partition edges into hyperplane classes and decide two-sidedness.

    Opposite edges of a square are parallel; along the square's boundary cycle
    they are anti-aligned, which gives the parity constraint deciding whether a
    consistent transverse orientation of the class exists.
    """
    parent = {e: e for e in sq.edges}
    parity = {e: 0 for e in sq.edges}

    def find(e):
        p = 0
        while parent[e] != e:
            p = (p + parity[e]) % 2
            e = parent[e]
        return e, p

    violations = []

    def union(e1, e2, flip):
        r1, p1 = find(e1)
        r2, p2 = find(e2)
        if r1 == r2:
            if (p1 + p2) % 2 != flip:
                violations.append(r1)
            return
        parent[r1] = r2
        parity[r1] = (p1 + p2 + flip) % 2

    for square in sq.squares.values():
        e, d = square.edges, square.dirs
        union(e[0], e[2], 1 if d[0] == d[2] else 0)
        union(e[1], e[3], 1 if d[1] == d[3] else 0)

    classes = {}
    for e in sq.edges:
        root, _ = find(e)
        classes.setdefault(root, []).append(e)
    bad = {find(r)[0] for r in violations}
    return [
        (tuple(members), root not in bad)
        for root, members in sorted(classes.items(), key=lambda kv: str(kv[0]))
    ]


def edge_to_class(sq: SquareComplex) -> dict:
    mapping = {}
    for idx, (members, _) in enumerate(hyperplane_classes(sq)):
        for e in members:
            mapping[e] = idx
    return mapping


# ---------------------------------------------------------------------------
# Links and the non-positive-curvature condition
# ---------------------------------------------------------------------------

def vertex_links(sq: SquareComplex):
    """Per vertex, the link multigraph: nodes are edge-ends at the vertex and
    each square corner there contributes one link edge."""
    links = {v: [] for v in sq.vertices}
    for square in sq.squares.values():
        for pos in range(4):
            v = square.corners[pos]
            e_in, d_in = square.edges[(pos - 1) % 4], square.dirs[(pos - 1) % 4]
            e_out, d_out = square.edges[pos], square.dirs[pos]
            end_in = (e_in, 1 if d_in == 1 else 0)
            end_out = (e_out, 0 if d_out == 1 else 1)
            links[v].append((end_in, end_out))
    return links


def _girth(link_edges) -> float:
    """Girth of a small multigraph given as a list of node pairs."""
    best = float("inf")
    for a, b in link_edges:
        if a == b:
            return 1
    adjacency = {}
    for idx, (a, b) in enumerate(link_edges):
        adjacency.setdefault(a, []).append((b, idx))
        adjacency.setdefault(b, []).append((a, idx))
    for idx, (a, b) in enumerate(link_edges):
        # shortest a-b path avoiding this edge, plus the edge, is a cycle
        dist = {a: 0}
        queue = [a]
        while queue:
            node = queue.pop(0)
            if dist[node] + 1 >= best:
                continue
            for nxt, eidx in adjacency.get(node, ()):
                if eidx == idx or nxt in dist:
                    continue
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
        if b in dist:
            best = min(best, dist[b] + 1)
    return best


def link_girths(sq: SquareComplex) -> dict:
    return {v: _girth(edges) for v, edges in vertex_links(sq).items()}


def check_link_condition(sq: SquareComplex) -> dict:
    """Girth of every vertex link must be at least 4 (no loops, bigons or
    triangles); free faces are allowed."""
    return {v: g >= 4 for v, g in link_girths(sq).items()}


# ---------------------------------------------------------------------------
# Specialness
# ---------------------------------------------------------------------------

@dataclass
class SpecialnessReport:
    two_sided: dict
    embedded: dict
    self_osculations: list
    inter_osculations: list
    link_girth_ok: dict

    @property
    def special(self) -> bool:
        return (
            all(self.two_sided.values())
            and all(self.embedded.values())
            and not self.self_osculations
            and not self.inter_osculations
            and all(self.link_girth_ok.values())
        )


def _nonadjacent_pairs(k):
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            if (j - i) % k in (1, k - 1):
                continue
            out.append((i, j))
    return out


def check_special(cs: CurveSystem, sq: SquareComplex) -> SpecialnessReport:
    """Curve-level specialness scan.

    A curve osculates itself when its arcs lie on two non-adjacent sides of one
    region; two crossing curves inter-osculate when they lie on non-adjacent
    sides of one region.  Two-sidedness and embeddedness are read off the
    hyperplane classes of the dual complex.
    """
    crossing_pairs = set()
    for cls in cs.junction_classes():
        names = sorted({c for c, _ in cls})
        if len(names) == 2:
            crossing_pairs.add(tuple(names))

    self_osc, inter_osc = [], []
    for r, region in enumerate(cs.regions):
        k = len(region)
        for i, j in _nonadjacent_pairs(k):
            ci, cj = region[i][0][0], region[j][0][0]
            if ci == cj:
                self_osc.append((ci, r, (i, j)))
            elif tuple(sorted((ci, cj))) in crossing_pairs:
                inter_osc.append((tuple(sorted((ci, cj))), r, (i, j)))

    classes = hyperplane_classes(sq)
    eclass = edge_to_class(sq)
    two_sided, embedded = {}, {c: True for c in cs.curves}
    for members, ts in classes:
        two_sided[sq.edge_label[members[0]]] = ts
    for square in sq.squares.values():
        if eclass[square.edges[0]] == eclass[square.edges[1]]:
            embedded[sq.edge_label[square.edges[0]]] = False
    class_of_curve = {}
    for e, cls in eclass.items():
        class_of_curve.setdefault(sq.edge_label[e], set()).add(cls)
    for curve, clss in class_of_curve.items():
        if len(clss) != 1:
            embedded[curve] = False

    return SpecialnessReport(
        two_sided=two_sided,
        embedded=embedded,
        self_osculations=self_osc,
        inter_osculations=inter_osc,
        link_girth_ok=check_link_condition(sq),
    )


def complex_specialness(sq: SquareComplex) -> SpecialnessReport:
    """Hyperplane-level specialness scan, usable on subdivided and glued
    complexes: two edges of one class meeting at a vertex without spanning
    a common square witness a self-osculation, and similarly across two
    crossing classes."""
    classes = hyperplane_classes(sq)
    eclass = edge_to_class(sq)
    two_sided = {idx: ts for idx, (_, ts) in enumerate(classes)}
    embedded = dict.fromkeys(two_sided, True)
    in_common_square = set()
    crossing = set()
    for square in sq.squares.values():
        es = square.edges
        c0, c1 = eclass[es[0]], eclass[es[1]]
        if c0 == c1:
            embedded[c0] = False
        crossing.add(tuple(sorted((c0, c1))))
        for i in range(4):
            for j in range(i + 1, 4):
                in_common_square.add(frozenset((es[i], es[j])))

    incident = {}
    for e, (a, b) in sq.edges.items():
        incident.setdefault(a, set()).add(e)
        incident.setdefault(b, set()).add(e)
    self_osc, inter_osc = [], []
    for v, around in incident.items():
        around = sorted(around, key=str)
        for i in range(len(around)):
            for j in range(i + 1, len(around)):
                e1, e2 = around[i], around[j]
                if frozenset((e1, e2)) in in_common_square:
                    continue
                c1, c2 = eclass[e1], eclass[e2]
                if c1 == c2:
                    self_osc.append((c1, v, (e1, e2)))
                elif tuple(sorted((c1, c2))) in crossing:
                    inter_osc.append((tuple(sorted((c1, c2))), v, (e1, e2)))
    return SpecialnessReport(
        two_sided=two_sided,
        embedded=embedded,
        self_osculations=self_osc,
        inter_osculations=inter_osc,
        link_girth_ok=check_link_condition(sq),
    )


# ---------------------------------------------------------------------------
# Barycentric subdivision
# ---------------------------------------------------------------------------

def barycentric_subdivide(sq: SquareComplex) -> SquareComplex:
    """Subdivide every square into four; the new vertices are the edge
    midpoints and square centers, so the vertex count becomes V + E + F."""
    vertices = [("v", v) for v in sq.vertices]
    vertices += [("e", e) for e in sq.edges]
    vertices += [("s", s) for s in sq.squares]

    edges = {}
    for e, (a, b) in sq.edges.items():
        edges[("half", e, 0)] = (("v", a), ("e", e))
        edges[("half", e, 1)] = (("e", e), ("v", b))
    for s, square in sq.squares.items():
        for k in range(4):
            edges[("spoke", s, k)] = (("s", s), ("e", square.edges[k]))

    squares = {}
    for s, square in sq.squares.items():
        for k in range(4):
            v = square.corners[k]
            e_in, d_in = square.edges[(k - 1) % 4], square.dirs[(k - 1) % 4]
            e_out, d_out = square.edges[k], square.dirs[k]
            half_in = ("half", e_in, 1 if d_in == 1 else 0)
            half_out = ("half", e_out, 0 if d_out == 1 else 1)
            squares[(s, k)] = Square(
                edges=[half_out, ("spoke", s, k), ("spoke", s, (k - 1) % 4), half_in],
                dirs=[
                    1 if d_out == 1 else -1,
                    -1,
                    1,
                    1 if d_in == 1 else -1,
                ],
                corners=[("v", v), ("e", e_out), ("s", s), ("e", e_in)],
            )

    labels = {}
    for key in edges:
        if key[0] == "half":
            labels[key] = ("half", sq.edge_label.get(key[1], key[1]))
        else:
            labels[key] = ("spoke",)
    return SquareComplex(
        vertices=vertices,
        edges=edges,
        squares=squares,
        edge_label=labels,
        vertex_marks={("v", v) for v in sq.vertex_marks},
    )


def subdivided_curve_path(cs: CurveSystem, curve: str) -> list:
    """The curve as a closed vertex path in the subdivided dual complex,
    alternating square centers (its crossings) and edge midpoints (its arcs).
    A curve with m crossings becomes a closed path of length 2m."""
    if cs.passes is None:
        raise CurveSystemError("curve paths need a system built from crossing data")
    classes = cs.junction_classes()
    junction_to_crossing = {}
    for idx, cls in enumerate(classes):
        for j in cls:
            junction_to_crossing[j] = idx
    m = cs.arc_counts[curve]
    path = []
    for i in range(m):
        # the crossing of pass i carries the head junction of arc i-1
        path.append(("s", junction_to_crossing[(curve, (i - 1) % m)]))
        path.append(("e", (curve, i)))
    return path


# ---------------------------------------------------------------------------
# Gluing along subdivided curve paths
# ---------------------------------------------------------------------------

@dataclass
class GlueReport:
    alignment: tuple
    link_ok: bool
    locally_geodesic: bool
    specialness: SpecialnessReport
    hyperplanes_before: dict
    hyperplanes_after: dict

    @property
    def counts_preserved(self) -> dict:
        return {
            side: self.hyperplanes_before[side] == self.hyperplanes_after[side]
            for side in self.hyperplanes_before
        }


def path_is_locally_geodesic(sq: SquareComplex, path: list) -> bool:
    """At each vertex of a closed edge path, the two path ends must be at link
    distance >= 4 (angle at least pi on both sides)."""
    n = len(path)
    path_edges = []
    for i in range(n):
        e = _edge_between(sq, path[i], path[(i + 1) % n])
        if e is None:
            return False
        path_edges.append(e)
    links = vertex_links(sq)
    for i in range(n):
        v = path[i]
        end_prev = sq.edge_end_at(path_edges[(i - 1) % n], v)
        end_next = sq.edge_end_at(path_edges[i], v)
        if _link_distance(links[v], end_prev, end_next) < 4:
            return False
    return True


def _edge_between(sq, a, b):
    for e, (u, w) in sq.edges.items():
        if (u, w) in ((a, b), (b, a)):
            return e
    return None


def _link_distance(link_edges, source, target) -> float:
    if source == target:
        return 0
    adjacency = {}
    for x, y in link_edges:
        adjacency.setdefault(x, []).append(y)
        adjacency.setdefault(y, []).append(x)
    dist = {source: 0}
    queue = [source]
    while queue:
        node = queue.pop(0)
        for nxt in adjacency.get(node, ()):
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                if nxt == target:
                    return dist[nxt]
                queue.append(nxt)
    return float("inf")


def _relabel(sq: SquareComplex, tag) -> SquareComplex:
    edges = {(tag, e): ((tag, a), (tag, b)) for e, (a, b) in sq.edges.items()}
    squares = {
        (tag, s): Square(
            edges=[(tag, e) for e in square.edges],
            dirs=list(square.dirs),
            corners=[(tag, v) for v in square.corners],
        )
        for s, square in sq.squares.items()
    }
    return SquareComplex(
        vertices=[(tag, v) for v in sq.vertices],
        edges=edges,
        squares=squares,
        edge_label={(tag, e): (tag, lbl) for e, lbl in sq.edge_label.items()},
        vertex_marks={(tag, v) for v in sq.vertex_marks},
    )


def glue_complexes(left, right) -> tuple[SquareComplex, GlueReport]:
    """Identify two subdivided complexes along their gluing-curve paths.

    ``left`` and ``right`` are (SquareComplex, path, markers) triples: the path
    is the closed length-8 vertex path of the gluing curve and the markers are
    the path vertices lying on the side's perimeter curve.  The identification
    is a combinatorial isometry of the two 8-cycles sending some marked vertex
    to a marked vertex; both paths must be locally geodesic.
    """
    sq_l, path_l, marks_l = left
    sq_r, path_r, marks_r = right
    if len(path_l) != 8 or len(path_r) != 8:
        raise CurveSystemError(
            f"gluing paths must have length 8, got {len(path_l)} and {len(path_r)}"
        )
    if not marks_l or not marks_r:
        raise CurveSystemError("both sides need perimeter markers on the gluing path")
    geodesic = path_is_locally_geodesic(sq_l, path_l) and path_is_locally_geodesic(
        sq_r, path_r
    )

    marked_l = [i for i, v in enumerate(path_l) if v in marks_l]
    marked_r = [i for i, v in enumerate(path_r) if v in marks_r]
    alignment = None
    for reflect in (1, -1):
        for shift in range(8):
            image = {i: (shift + reflect * i) % 8 for i in range(8)}
            if not any(image[i] in marked_r for i in marked_l):
                continue
            if all(path_l[i][0] == path_r[image[i]][0] for i in range(8)):
                alignment = (shift, reflect)
                break
        if alignment:
            break
    if alignment is None:
        raise CurveSystemError("no marker-respecting alignment of the gluing paths")
    shift, reflect = alignment

    L = _relabel(sq_l, "L")
    R = _relabel(sq_r, "R")
    ident = {}
    for i in range(8):
        ident[("L", path_l[i])] = ("glue", i)
        ident[("R", path_r[(shift + reflect * i) % 8])] = ("glue", i)

    def mv(v):
        return ident.get(v, v)

    edges = {}
    edge_rename = {}
    for source in (L, R):
        for e, (a, b) in source.edges.items():
            a2, b2 = mv(a), mv(b)
            if a2[0] == "glue" and b2[0] == "glue":
                key = ("glue-edge", frozenset((a2[1], b2[1])))
                edge_rename[e] = key
                edges.setdefault(key, (a2, b2))
            else:
                edge_rename[e] = e
                edges[e] = (a2, b2)

    squares = {}
    for source in (L, R):
        for s, square in source.squares.items():
            new_edges, new_dirs = [], []
            for e, d in zip(square.edges, square.dirs):
                e2 = edge_rename[e]
                if e2 != e:
                    a, b = source.edges[e]
                    same = edges[e2] == (mv(a), mv(b))
                    new_dirs.append(d if same else -d)
                else:
                    new_dirs.append(d)
                new_edges.append(e2)
            squares[s] = Square(
                edges=new_edges, dirs=new_dirs, corners=[mv(v) for v in square.corners]
            )

    vertices, seen = [], set()
    for source in (L, R):
        for v in source.vertices:
            v2 = mv(v)
            if v2 not in seen:
                seen.add(v2)
                vertices.append(v2)
    labels = {}
    for source in (L, R):
        for e, lbl in source.edge_label.items():
            labels[edge_rename[e]] = lbl
    glued = SquareComplex(
        vertices=vertices,
        edges=edges,
        squares=squares,
        edge_label=labels,
        vertex_marks={mv(v) for v in L.vertex_marks | R.vertex_marks},
    )

    before = {
        "left": len(hyperplane_classes(sq_l)),
        "right": len(hyperplane_classes(sq_r)),
    }
    eclass = edge_to_class(glued)
    after = {}
    for side, tag in (("left", "L"), ("right", "R")):
        touched = {
            eclass[e]
            for e in glued.edges
            if e[0] == tag or e[0] == "glue-edge"
        }
        after[side] = len(touched)

    report = GlueReport(
        alignment=alignment,
        link_ok=all(check_link_condition(glued).values()),
        locally_geodesic=geodesic,
        specialness=complex_specialness(glued),
        hyperplanes_before=before,
        hyperplanes_after=after,
    )
    return glued, report


# ---------------------------------------------------------------------------
# Double covers of square complexes (duality commutation check)
# ---------------------------------------------------------------------------

def double_complex(sq: SquareComplex, weights: dict) -> SquareComplex:
    """Double cover of a squared surface from an edge cocycle: crossing an edge
    of weight 1 swaps sheets.  Square boundaries must have even weight."""
    for square in sq.squares.values():
        if sum(weights.get(e, 0) for e in square.edges) % 2:
            raise CurveSystemError("square boundary has odd covering weight")

    edges = {}
    for e, (a, b) in sq.edges.items():
        w = weights.get(e, 0)
        for sheet in (0, 1):
            edges[(e, sheet)] = ((a, sheet), (b, (sheet + w) % 2))

    squares = {}
    for s, square in sq.squares.items():
        for sheet in (0, 1):
            new_edges, new_dirs, new_corners = [], [], []
            cur = sheet
            for k in range(4):
                e, d, v = square.edges[k], square.dirs[k], square.corners[k]
                new_corners.append((v, cur))
                w = weights.get(e, 0)
                tail_sheet = cur if d == 1 else (cur + w) % 2
                new_edges.append((e, tail_sheet))
                new_dirs.append(d)
                cur = (cur + w) % 2
            squares[(s, sheet)] = Square(edges=new_edges, dirs=new_dirs, corners=new_corners)

    return SquareComplex(
        vertices=[(v, sheet) for v in sq.vertices for sheet in (0, 1)],
        edges=edges,
        squares=squares,
        edge_label={
            (e, sheet): sq.edge_label.get(e, e) for e in sq.edges for sheet in (0, 1)
        },
    )
