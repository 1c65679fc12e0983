from fractions import Fraction

import pytest

from amalgams.core import (
    Amalgam,
    CurveSpec,
    Surface,
    amalgam,
    amalgam_from_json,
    amalgam_to_json,
    cut_along,
    euler_characteristic,
    euler_of_amalgam,
    topological_type,
    validate,
)


def test_euler_characteristic():
    assert euler_characteristic(Surface(2, 0)) == -2
    assert euler_characteristic(Surface(0, 0)) == 2
    assert euler_characteristic(Surface(2, 1)) == -3
    # consistency with the 7-fold cover S_{11,1} -> S_{2,1}
    assert euler_characteristic(Surface(11, 1)) == 7 * euler_characteristic(Surface(2, 1))


@pytest.mark.parametrize("g,b", [(g, b) for g in range(6) for b in range(4)])
def test_euler_pure_function(g, b):
    assert euler_characteristic(Surface(g, b)) == 2 - 2 * g - b


def test_euler_of_amalgam():
    ns = CurveSpec.nonseparating()
    assert euler_of_amalgam(amalgam(2, ns, 2, ns)) == -4
    assert euler_of_amalgam(amalgam(2, ns, 3, ns)) == -6
    for g in range(2, 8):
        a = amalgam(g, ns, g, ns)
        assert euler_of_amalgam(a) == 2 * euler_characteristic(Surface(g))
        assert euler_of_amalgam(a) < 0 and euler_of_amalgam(a) % 2 == 0


def test_topological_type():
    assert topological_type(Surface(3), CurveSpec.nonseparating()) == 1
    assert topological_type(Surface(3), CurveSpec.separating(1, 2)) == 3
    assert topological_type(Surface(2), CurveSpec.separating(1, 1)) == 1
    assert topological_type(Surface(5), CurveSpec.separating(2, 3)) == Fraction(5, 3)


def test_topological_type_invalid_split():
    with pytest.raises(ValueError):
        topological_type(Surface(3), CurveSpec.separating(1, 3))


@pytest.mark.parametrize("g", range(2, 9))
def test_topological_type_at_least_one(g):
    for r in range(1, g // 2 + 1):
        t = topological_type(Surface(g), CurveSpec.separating(r, g - r))
        assert t >= 1
        assert (t == 1) == (2 * r == g)
    assert topological_type(Surface(g), CurveSpec.nonseparating()) == 1


def test_cut_along():
    assert cut_along(Surface(2), CurveSpec.nonseparating()) == [Surface(1, 2)]
    assert cut_along(Surface(3), CurveSpec.separating(1, 2)) == [Surface(1, 1), Surface(2, 1)]
    assert cut_along(Surface(2), CurveSpec.separating(1, 1)) == [Surface(1, 1), Surface(1, 1)]


@pytest.mark.parametrize("g", range(2, 9))
def test_cut_preserves_euler(g):
    host = Surface(g)
    specs = [CurveSpec.nonseparating()] + [
        CurveSpec.separating(r, g - r) for r in range(1, g // 2 + 1)
    ]
    for spec in specs:
        pieces = cut_along(host, spec)
        assert sum(p.euler for p in pieces) == host.euler


def test_validate():
    ns = CurveSpec.nonseparating()
    assert validate(amalgam(2, ns, 2, ns)) == []
    errors = validate(Amalgam(Surface(1), Surface(2), ns, ns))
    assert any("genus must exceed one" in e for e in errors)
    errors = validate(Amalgam(Surface(3), Surface(3), CurveSpec.separating(1, 3), ns))
    assert any("split must sum to genus" in e for e in errors)


def test_curve_spec_normalizes_split_order():
    assert CurveSpec.separating(3, 1).split == (1, 3)


def test_curve_spec_rejects_bad_input():
    with pytest.raises(ValueError):
        CurveSpec.separating(0, 2)
    with pytest.raises(ValueError):
        CurveSpec("weird")


def test_json_round_trip():
    a = Amalgam(
        Surface(2), Surface(4), CurveSpec.nonseparating(), CurveSpec.separating(2, 2)
    )
    obj = amalgam_to_json(a)
    assert obj == {
        "left": {"genus": 2},
        "right": {"genus": 4},
        "left_curve": {"kind": "nonseparating"},
        "right_curve": {"kind": "separating", "split": [2, 2]},
    }
    assert amalgam_from_json(obj) == a


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        amalgam_from_json({"left": {"genus": 2}})
    with pytest.raises(ValueError):
        amalgam_from_json(
            {
                "left": {"genus": 2},
                "right": {"genus": 2},
                "left_curve": {"kind": "spiral"},
                "right_curve": {"kind": "nonseparating"},
            }
        )
