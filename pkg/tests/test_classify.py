import itertools

import pytest

from amalgams.core import Amalgam, CurveSpec, Surface, amalgam
from amalgams.classify import (
    CoxeterParams,
    SubclassLabel,
    commensurable,
    commensurable_types,
    cover_index,
    coxeter_params,
    cp_commensurable,
    enumerate_amalgams,
    maximal_elements,
    normalize,
    quadruple,
    subclass,
    theta_graph_params,
)

NS = CurveSpec.nonseparating()


def sep(r, s):
    return CurveSpec.separating(r, s)


def test_quadruple_examples():
    assert quadruple(amalgam(2, NS, 3, NS)) == (-2, -2, -1, -1)
    assert quadruple(amalgam(2, sep(1, 1), 2, sep(1, 1))) == (-1, -1, -1, -1)
    assert quadruple(amalgam(5, sep(2, 3), 7, sep(3, 4))) == (-7, -5, -5, -3)


def test_quadruple_mixed_sides():
    # one non-separating cut (two-boundary piece) and one separating cut
    a = amalgam(3, NS, 3, sep(1, 2))
    assert quadruple(a) == (-3, -2, -2, -1)


def test_normalize():
    assert normalize((-2, -2, -1, -1)) == (-2, -2, -1, -1)
    assert normalize((-4, -4, -2, -2)) == (-2, -2, -1, -1)
    assert normalize((-9, -6, -6, -3)) == (-3, -2, -2, -1)


def test_quadruple_scale_consistency():
    # multiplying all piece chis by D scales the quadruple by D
    base = amalgam(2, sep(1, 1), 3, sep(1, 2))  # pieces -1,-1 | -1,-3
    scaled = amalgam(4, sep(2, 2), 7, sep(2, 5))  # pieces -3,-3 | -3,-9
    assert quadruple(scaled) == tuple(3 * e for e in quadruple(base))


def test_commensurable_examples():
    a = amalgam(2, NS, 3, NS)
    b = amalgam(3, NS, 5, NS)
    assert commensurable(a, b)
    assert commensurable(a, a)
    assert not commensurable(amalgam(2, NS, 2, NS), a)


def test_commensurable_types_examples():
    a = amalgam(2, NS, 4, sep(2, 2))
    b = amalgam(2, sep(1, 1), 4, NS)
    assert commensurable_types(a, b)
    c = amalgam(3, sep(1, 2), 3, sep(1, 2))
    d = amalgam(3, NS, 3, NS)
    assert not commensurable_types(c, d)


def test_commensurable_types_needs_repairing_search():
    # same four pieces, paired differently: (-1,-3 | -3,-9) vs (-1,-9 | -3,-3);
    # no side-swap-only labeling matches, the decomposition search does.
    a = Amalgam(Surface(3), Surface(7), sep(1, 2), sep(2, 5))
    b = Amalgam(Surface(6), Surface(4), sep(1, 5), sep(2, 2))
    assert quadruple(a) == quadruple(b) == (-9, -3, -3, -1)
    assert commensurable_types(a, b)


ALL8 = enumerate_amalgams(8)


def test_enumeration_size_and_validity():
    # 23 sides of genus 2..8, one amalgam per unordered pair
    assert len(ALL8) == 23 * 24 // 2
    from amalgams.core import validate

    assert all(validate(a) == [] for a in ALL8)


def test_equivalence_of_the_two_tests_small():
    # the full genus-8 sweep lives in the acceptance suite; spot-check genus <= 4
    small = enumerate_amalgams(4)
    for a1, a2 in itertools.product(small, repeat=2):
        assert commensurable(a1, a2) == commensurable_types(a1, a2), (a1, a2)


def test_commensurable_is_equivalence_relation():
    small = enumerate_amalgams(6)
    classes = {}
    for a in small:
        classes.setdefault(normalize(quadruple(a)), []).append(a)
    # reflexive and symmetric by construction; transitivity over representatives
    for members in classes.values():
        for a, b, c in itertools.islice(itertools.product(members, repeat=3), 200):
            if commensurable(a, b) and commensurable(b, c):
                assert commensurable(a, c)


def test_subclass_examples():
    assert subclass(amalgam(2, NS, 2, NS)) is SubclassLabel.C2
    assert subclass(amalgam(5, sep(2, 3), 7, sep(3, 4))) is SubclassLabel.C1
    assert subclass(amalgam(4, sep(1, 3), 8, sep(2, 6))) is SubclassLabel.C0
    assert subclass(amalgam(3, NS, 3, sep(1, 2))) is SubclassLabel.C1


def test_subclass_constant_on_classes():
    byclass = {}
    for a in ALL8:
        byclass.setdefault(normalize(quadruple(a)), set()).add(subclass(a))
    assert all(len(labels) == 1 for labels in byclass.values())


def test_maximal_elements_counts():
    counts = {SubclassLabel.C0: 1, SubclassLabel.C1: 2, SubclassLabel.C2: 4}
    for a in ALL8:
        elements = maximal_elements(a)
        assert len(elements) == counts[subclass(a)]
        for m in elements:
            assert commensurable(m, a)
            assert normalize(m.quadruple()) == m.quadruple()


def test_maximal_element_c0_example():
    # class with normalized quadruple (-11,-5,-3,-1): pieces of genus 6,3,2,1
    a = amalgam(7, sep(1, 6), 5, sep(2, 3))
    assert quadruple(a) == (-11, -5, -3, -1)
    (m,) = maximal_elements(a)
    assert m.realizable
    built = m.as_amalgam()
    genera = sorted(
        p for side in built.sides() for p in side[1].split
    )
    assert genera == [1, 2, 3, 6]


def test_maximal_elements_unrealizable_shapes_flagged():
    # normalized quadruple (-2,-2,-1,-1): no four-piece space exists (even entries)
    a = amalgam(2, NS, 3, NS)
    elements = maximal_elements(a)
    assert len(elements) == 4
    flags = {m.name: m.realizable for m in elements}
    assert flags["L0"] and flags["H0"]
    assert not flags["G0"] and not flags["K0"]


def test_cover_index():
    a = amalgam(2, NS, 2, NS)
    elements = maximal_elements(a)
    l0 = next(m for m in elements if m.name == "L0")
    assert cover_index(a, l0) == 1
    doubled = amalgam(3, NS, 3, NS)  # quadruple (-2,-2,-2,-2)
    assert cover_index(doubled, l0) == 2
    g0 = next(m for m in elements if m.name == "G0")
    # a both-nonseparating amalgam does not cover the four-piece shape
    assert cover_index(a, g0) is None
    four_piece = amalgam(2, sep(1, 1), 2, sep(1, 1))
    assert cover_index(four_piece, g0) == 1


def test_cover_index_divides_on_enumeration():
    for a in enumerate_amalgams(6):
        q = quadruple(a)
        d = q[0] // normalize(q)[0]
        for m in maximal_elements(a):
            idx = cover_index(a, m)
            if idx is not None:
                assert idx == d


def test_cover_index_non_commensurable():
    a = amalgam(2, NS, 2, NS)
    other = maximal_elements(amalgam(2, NS, 3, NS))[0]
    assert cover_index(a, other) is None


def test_coxeter_params():
    res = coxeter_params(amalgam(2, NS, 2, NS))
    assert res.direct == CoxeterParams(5, 5)
    assert res.maximal == CoxeterParams(5, 5)
    # normalized quadruple (-3,-3,-1,-1) -> maximal params (5,7)
    res = coxeter_params(amalgam(2, NS, 4, NS))
    assert res.maximal == CoxeterParams(5, 7)
    # C1 classes (and C0) carry no two-circuit Coxeter group
    assert coxeter_params(amalgam(3, NS, 3, sep(1, 2))) is None
    assert coxeter_params(amalgam(5, sep(2, 3), 7, sep(3, 4))) is None
    # four pieces (-1,-3,-1,-3) re-pair into type-one gluings, so this is C2
    repaired = coxeter_params(amalgam(3, sep(1, 2), 3, sep(1, 2)))
    assert repaired is not None and repaired.maximal == CoxeterParams(5, 7)


def test_coxeter_direct_params_match_genera():
    for g, h in itertools.product(range(2, 7), repeat=2):
        res = coxeter_params(amalgam(g, NS, h, NS))
        assert res is not None
        assert res.direct == CoxeterParams(*sorted((g + 3, h + 3)))


def test_coxeter_params_c2_without_type_one_curves():
    # pieces (-1,-5 | -1,-5): class is C2 but the given curves have type 5
    a = Amalgam(Surface(4), Surface(4), sep(1, 3), sep(1, 3))
    assert subclass(a) is SubclassLabel.C2
    res = coxeter_params(a)
    assert res.direct is None
    assert res.maximal == CoxeterParams(5, 9)


def test_cp_commensurable():
    assert cp_commensurable(CoxeterParams(5, 6), CoxeterParams(6, 8))
    assert cp_commensurable(CoxeterParams(5, 6), CoxeterParams(5, 6))
    assert not cp_commensurable(CoxeterParams(5, 6), CoxeterParams(5, 7))


def test_coxeter_consistency_with_commensurability():
    c2 = [a for a in enumerate_amalgams(6) if subclass(a) is SubclassLabel.C2]
    for a1, a2 in itertools.product(c2, repeat=2):
        agree = cp_commensurable(
            coxeter_params(a1).maximal, coxeter_params(a2).maximal
        )
        assert agree == commensurable(a1, a2)


def test_theta_graph_params():
    a = amalgam(2, sep(1, 1), 2, sep(1, 1))
    res = theta_graph_params(a)
    assert res.ns == (4, 4, 4, 4)
    assert res.oracle_agrees
    b = amalgam(4, sep(2, 2), 4, sep(2, 2))
    assert theta_graph_params(b).ns == (6, 6, 6, 6)
    assert theta_graph_params(amalgam(2, NS, 2, sep(1, 1))) is None


def test_theta_oracle_agrees_everywhere():
    for a in ALL8:
        res = theta_graph_params(a)
        if res is not None:
            assert res.oracle_agrees
            assert all(n >= 4 for n in res.ns)
