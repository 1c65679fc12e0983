"""Explicit finite covers as verified combinatorial objects.

A cover of a one-boundary surface is modelled as a cover of the wedge of 2g
circles: one permutation of the vertex set per free generator.  The boundary
circle corresponds to the product of commutators of the generators, and the
odd-degree construction realizes S_{G,1} as an n-fold cover of S_{g,1} with
connected boundary preimage whenever chi scales by n.

Covers of closed-surface amalgams are recorded at the piece-and-degree level:
four pieces, each with one red and one blue boundary circle, whose Euler
characteristics and boundary degrees are what the matching arguments consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Amalgam, euler_of_amalgam
from .classify import commensurable, quadruple

Letter = tuple[str, int]        # (generator name, +1 or -1)
Word = tuple[Letter, ...]


def generator_names(g: int) -> list[str]:
    return [name for i in range(1, g + 1) for name in (f"a{i}", f"b{i}")]


def boundary_word(g: int) -> Word:
    """The boundary class of a genus-g one-boundary surface: the product of the
    g commutators [a_i, b_i], a word of length 4g."""
    if g < 1:
        raise ValueError("genus must be at least one")
    word = []
    for i in range(1, g + 1):
        word += [(f"a{i}", 1), (f"b{i}", 1), (f"a{i}", -1), (f"b{i}", -1)]
    return tuple(word)


@dataclass
class GraphCover:
    """A degree-n cover of a wedge of circles.

    ``action`` maps each generator name to the image list of a permutation of
    {0..n-1}; vertex i is carried to action[gen][i] by the positive letter.
    Words act on the right (paths read left to right).
    """

    degree: int
    generators: list[str]
    action: dict[str, list[int]]

    def act(self, vertex: int, letter: Letter) -> int:
        name, power = letter
        if name not in self.action:
            raise KeyError(f"unknown generator {name!r}")
        perm = self.action[name]
        if power == 1:
            return perm[vertex]
        return perm.index(vertex)

    def word_permutation(self, word: Word) -> list[int]:
        """Image list of the permutation induced by the word."""
        inverses = {}
        perm = list(range(self.degree))
        for name, power in word:
            if name not in self.action:
                raise KeyError(f"unknown generator {name!r}")
            if power == 1:
                step = self.action[name]
            else:
                if name not in inverses:
                    inv = [0] * self.degree
                    for i, j in enumerate(self.action[name]):
                        inv[j] = i
                    inverses[name] = inv
                step = inverses[name]
            perm = [step[v] for v in perm]
        return perm


def word_action(cover: GraphCover, word: Word, start: int) -> int:
    """Terminal vertex of the lift of the word starting at the given vertex."""
    v = start
    for letter in word:
        v = cover.act(v, letter)
    return v


def boundary_components(cover: GraphCover, word: Word) -> list[int]:
    """Cycle lengths of the permutation induced by the word, largest first.

    These are the covering degrees of the components of the preimage of the
    loop the word spells; they always partition the cover degree.
    """
    perm = cover.word_permutation(word)
    seen = [False] * cover.degree
    lengths = []
    for start in range(cover.degree):
        if seen[start]:
            continue
        length, v = 0, start
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        lengths.append(length)
    return sorted(lengths, reverse=True)


def first_return(cover: GraphCover, word: Word, start: int = 0) -> int:
    """Smallest k >= 1 with word^k fixing the start vertex."""
    perm = cover.word_permutation(word)
    k, v = 1, perm[start]
    while v != start:
        v = perm[v]
        k += 1
    return k


def build_odd_cover(g: int, n: int) -> GraphCover:
    """Odd-degree cover of the wedge of 2g circles with connected boundary preimage.

    Every generator except a1 acts as the n-cycle i -> i+1; a1 acts as the
    involution fixing 0 and swapping (2i-1, 2i).  The degree must be odd: a
    one-boundary surface has odd Euler characteristic, which rules out even
    covers with connected boundary of the same kind.
    """
    if g < 1:
        raise ValueError("genus must be at least one")
    if n < 1 or n % 2 == 0:
        raise ValueError("cover degree must be odd")
    cycle = [(i + 1) % n for i in range(n)]
    a1 = list(range(n))
    for i in range(1, (n - 1) // 2 + 1):
        a1[2 * i - 1], a1[2 * i] = a1[2 * i], a1[2 * i - 1]
    names = generator_names(g)
    action = {name: list(cycle) for name in names}
    action["a1"] = a1
    return GraphCover(n, names, action)


@dataclass
class CoverReport:
    degree: int
    base_euler: int
    total_euler: int
    bijective: dict[str, bool]
    transitive: bool
    failures: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures


def verify_cover(cover: GraphCover) -> CoverReport:
    """Check the covering-space axioms at the graph level.

    Each generator must act bijectively and the joint action must be
    transitive.  The total space Euler characteristic is degree times the base
    wedge's 1 - 2g.
    """
    n = cover.degree
    failures = []
    bijective = {}
    for name in cover.generators:
        perm = cover.action.get(name)
        ok = (
            perm is not None
            and len(perm) == n
            and all(isinstance(v, int) and 0 <= v < n for v in perm)
            and len(set(perm)) == n
        )
        bijective[name] = ok
        if not ok:
            failures.append(f"generator {name} does not act bijectively")
    reached = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for name in cover.generators:
            perm = cover.action.get(name)
            if not bijective[name]:
                continue
            for w in (perm[v], perm.index(v)):
                if w not in reached:
                    reached.add(w)
                    frontier.append(w)
    transitive = len(reached) == n
    if not transitive:
        failures.append("action is not transitive (cover disconnected)")
    base_euler = 1 - len(cover.generators)
    return CoverReport(
        degree=n,
        base_euler=base_euler,
        total_euler=n * base_euler,
        bijective=bijective,
        transitive=transitive,
        failures=failures,
    )


def boundary_label_formula(n: int, k: int) -> int:
    """Closed-form vertex label after k boundary commutators, as published.

    Simulation disagrees with this formula for some k in the middle range; it
    is reported for comparison and never asserted.
    """
    k = k % n
    if k == 0:
        return 0
    if k < n // 2:
        return 2 * k - 1
    return (2 * n - 2 * k) % n


def boundary_label_trace(g: int, n: int) -> dict:
    """Simulated orbit of vertex 0 under the boundary word, with the closed
    form alongside.  The load-bearing fact is the first return at k = n."""
    cover = build_odd_cover(g, n)
    perm = cover.word_permutation(boundary_word(g))
    simulated = []
    v = 0
    for _ in range(n):
        v = perm[v]
        simulated.append(v)
    formula = [boundary_label_formula(n, k) for k in range(1, n + 1)]
    return {
        "simulated": simulated,
        "formula": formula,
        "agree": simulated == formula,
        "first_return": first_return(cover, boundary_word(g)),
    }


# ---------------------------------------------------------------------------
# Matched covers of two amalgams with equal Euler characteristic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PieceCover:
    """One piece of a matched cover: a surface with one red and one blue
    boundary circle, each covering the base singular curve with the given degree."""

    chi: int
    boundaries: tuple[tuple[str, int], tuple[str, int]]


@dataclass(frozen=True)
class MatchedCovers:
    """Covers Y_i -> X_i of common Euler characteristic L.

    Each Y_i consists of four pieces, all red boundaries identified and all
    blue boundaries identified, so Y_i has two singular curves.
    """

    L: int
    d1: int
    d2: int
    pieces1: tuple[PieceCover, ...]
    pieces2: tuple[PieceCover, ...]


def _cover_pieces(a: Amalgam, d: int) -> tuple[PieceCover, ...]:
    half = d // 2
    return tuple(
        PieceCover(chi=entry * d, boundaries=(("red", half), ("blue", half)))
        for entry in quadruple(a)
    )


def equal_euler_covers(x1: Amalgam, x2: Amalgam) -> MatchedCovers:
    """Finite covers of both amalgams with equal Euler characteristic.

    L = -2 lcm(|chi(X_1)|, |chi(X_2)|) and d_i = L / chi(X_i).  Each side is
    covered first by a double cover in which the glued curve has two preimage
    circles, then by a d_i/2-fold cyclic cover, so every piece carries one red
    and one blue boundary circle of degree d_i/2 over the singular curve.
    """
    chi1, chi2 = euler_of_amalgam(x1), euler_of_amalgam(x2)
    L = -2 * math.lcm(abs(chi1), abs(chi2))
    d1, d2 = L // chi1, L // chi2
    pieces1 = _cover_pieces(x1, d1)
    pieces2 = _cover_pieces(x2, d2)
    assert sum(p.chi for p in pieces1) == L
    assert sum(p.chi for p in pieces2) == L
    return MatchedCovers(L=L, d1=d1, d2=d2, pieces1=pieces1, pieces2=pieces2)


@dataclass(frozen=True)
class CommonCover:
    """Homeomorphic matched covers of two commensurable amalgams."""

    piece_chis: tuple[int, ...]
    degrees: tuple[int, int]
    L: int


def common_cover(a1: Amalgam, a2: Amalgam) -> CommonCover | None:
    """Shared cover of two amalgams, or None when they are not commensurable.

    For commensurable amalgams the matched covers have equal sorted piece
    Euler characteristics, hence are homeomorphic piece for piece.
    """
    if not commensurable(a1, a2):
        return None
    matched = equal_euler_covers(a1, a2)
    chis1 = tuple(sorted(p.chi for p in matched.pieces1))
    chis2 = tuple(sorted(p.chi for p in matched.pieces2))
    if chis1 != chis2:
        raise AssertionError(
            "commensurable amalgams produced mismatched covers (internal bug)"
        )
    return CommonCover(piece_chis=chis1, degrees=(matched.d1, matched.d2), L=matched.L)
