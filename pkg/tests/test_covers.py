import pytest

from amalgams.core import CurveSpec, amalgam
from amalgams.classify import commensurable, enumerate_amalgams
from amalgams.covers import (
    GraphCover,
    boundary_components,
    boundary_label_trace,
    boundary_word,
    build_odd_cover,
    common_cover,
    equal_euler_covers,
    first_return,
    verify_cover,
    word_action,
)

NS = CurveSpec.nonseparating()


def test_boundary_word():
    assert boundary_word(1) == (("a1", 1), ("b1", 1), ("a1", -1), ("b1", -1))
    assert len(boundary_word(2)) == 8
    assert len(boundary_word(3)) == 12


def test_build_odd_cover_anchor():
    # degree 7 over genus 2: total space S_{11,1}
    cover = build_odd_cover(2, 7)
    report = verify_cover(cover)
    assert report.valid
    assert report.total_euler == -21  # chi(S_{11,1})
    assert first_return(cover, boundary_word(2)) == 7
    assert boundary_components(cover, boundary_word(2)) == [7]


def test_build_odd_cover_trivial():
    cover = build_odd_cover(1, 1)
    assert verify_cover(cover).valid
    assert first_return(cover, boundary_word(1)) == 1


def test_build_odd_cover_degree_five():
    cover = build_odd_cover(1, 5)
    report = verify_cover(cover)
    assert report.valid and report.total_euler == -5  # S_{3,1}
    assert boundary_components(cover, boundary_word(1)) == [5]


def test_build_odd_cover_rejects_even():
    with pytest.raises(ValueError):
        build_odd_cover(2, 4)


def test_word_action():
    cover = build_odd_cover(2, 7)
    assert word_action(cover, (), 3) == 3
    w = boundary_word(2)
    assert word_action(cover, w * 7, 0) == 0
    for k in range(1, 7):
        assert word_action(cover, w * k, 0) != 0


def test_word_action_unknown_generator():
    cover = build_odd_cover(1, 3)
    with pytest.raises(KeyError):
        word_action(cover, (("z9", 1),), 0)


def test_boundary_components_identity_and_trivial():
    cover = build_odd_cover(2, 7)
    assert boundary_components(cover, ()) == [1] * 7
    double = GraphCover(2, ["a1", "b1"], {"a1": [0, 1], "b1": [0, 1]})
    assert boundary_components(double, (("a1", 1),)) == [1, 1]


def test_verify_cover_negative_control():
    bad = GraphCover(3, ["a1", "b1"], {"a1": [0, 0, 2], "b1": [1, 2, 0]})
    report = verify_cover(bad)
    assert not report.valid
    assert any("a1" in f for f in report.failures)


def test_return_time_sweep():
    # first return of the boundary orbit at exactly n, for all odd n, small g
    for g in range(1, 6):
        w = boundary_word(g)
        for n in range(1, 100, 2):
            cover = build_odd_cover(g, n)
            assert first_return(cover, w) == n
            assert boundary_components(cover, w) == [n]


def test_euler_multiplicativity():
    for g in range(1, 6):
        for n in range(1, 30, 2):
            report = verify_cover(build_odd_cover(g, n))
            assert report.total_euler == n * (1 - 2 * g)


def test_boundary_label_trace_reports_both():
    trace = boundary_label_trace(2, 7)
    assert trace["first_return"] == 7
    assert trace["simulated"][-1] == 0
    assert len(trace["formula"]) == 7
    # the published closed form disagrees with simulation in the middle range
    assert trace["simulated"][:2] == [1, 3]


def test_equal_euler_covers_example():
    x1 = amalgam(2, NS, 2, NS)  # chi -4
    x2 = amalgam(3, NS, 3, NS)  # chi -8
    matched = equal_euler_covers(x1, x2)
    assert matched.L == -16
    assert (matched.d1, matched.d2) == (4, 2)
    assert sum(p.chi for p in matched.pieces1) == -16
    assert sum(p.chi for p in matched.pieces2) == -16


def test_equal_euler_covers_self():
    x = amalgam(2, NS, 3, sep(1, 2)) if False else amalgam(2, NS, 3, NS)
    matched = equal_euler_covers(x, x)
    assert matched.d1 == matched.d2 == 2
    assert matched.L == -2 * abs(-6)


def sep(r, s):
    return CurveSpec.separating(r, s)


def test_cover_invariants_random_pairs():
    import random

    rng = random.Random(7)
    pool = enumerate_amalgams(6)
    for _ in range(300):
        x1, x2 = rng.choice(pool), rng.choice(pool)
        matched = equal_euler_covers(x1, x2)
        assert matched.d1 % 2 == 0 and matched.d2 % 2 == 0
        for pieces, d in ((matched.pieces1, matched.d1), (matched.pieces2, matched.d2)):
            for p in pieces:
                colors = sorted(c for c, _ in p.boundaries)
                assert colors == ["blue", "red"]
                assert all(deg == d // 2 for _, deg in p.boundaries)
            # per singular curve, boundary degrees over one side sum to the degree
            red_total = sum(
                deg for p in pieces[:2] for c, deg in p.boundaries if c == "red"
            )
            assert red_total == d


def test_common_cover():
    a = amalgam(2, NS, 3, NS)
    b = amalgam(3, NS, 5, NS)
    shared = common_cover(a, b)
    assert shared is not None
    assert len(shared.piece_chis) == 4
    assert common_cover(a, a).degrees[0] == common_cover(a, a).degrees[1]
    assert common_cover(amalgam(2, NS, 2, NS), a) is None


def test_common_cover_iff_commensurable():
    pool = enumerate_amalgams(5)
    for a1 in pool:
        for a2 in pool:
            assert (common_cover(a1, a2) is not None) == commensurable(a1, a2)
