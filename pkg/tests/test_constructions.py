from __future__ import annotations

import pytest

from mojette_bpxor import Construction, Direction, ParameterError, code_sigma, make_spec, max_degree, validate
from mojette_bpxor.constructions import (
    ceil_odd,
    directions_c33,
    directions_c35,
    katz_counterexample,
    katz_holds,
    reconstruction_size,
)


def ps(dirs):
    return [d.p for d in dirs]


def test_c33_directions():
    assert [tuple(d) for d in directions_c33(3)] == [(-1, 1), (0, 1), (1, 1)]
    assert ps(directions_c33(4)) == [-1, 0, 1, 2]
    assert ps(directions_c33(1)) == [0]
    assert all(d.q == 1 for d in directions_c33(9))


def test_c35_directions():
    assert ps(directions_c35(4, 2)) == [-3, -1, 1, 3]
    assert ps(directions_c35(3, 2)) == [-1, 1, 3]
    assert ps(directions_c35(1, 4)) == [1]
    assert all(d.q == 6 for d in directions_c35(2, 6))
    assert all(d.q == 8 for d in directions_c35(9, 8))


def test_c35_rejects_qe_sharing_a_factor_with_p():
    with pytest.raises(ParameterError, match="shares a factor"):
        directions_c35(5, 6)


@pytest.mark.parametrize("q_e", [0, 1, 3, -2])
def test_c35_rejects_bad_qe(q_e):
    with pytest.raises(ParameterError):
        directions_c35(3, q_e)


def test_ceil_odd():
    assert [ceil_odd(x) for x in range(6)] == [1, 1, 3, 3, 5, 5]


def test_max_degree_examples():
    assert max_degree(Direction(0, 1), 3, 4) == 4
    assert max_degree(Direction(1, 0), 3, 4) == 3
    assert max_degree(Direction(2, 1), 5, 7) == 3
    assert max_degree(Direction(-3, 2), 10, 5) == 3


def test_code_sigma_examples():
    assert make_spec("c33", 5, 4, 100).sigma == 4
    assert make_spec("c35", 4, 6, 100, q_e=2).sigma == 3
    with pytest.raises(ParameterError):
        code_sigma([], 3, 3)


def test_reconstruction_size():
    assert reconstruction_size(make_spec("c33", 6, 4, 5)) == 4
    assert reconstruction_size(make_spec("c35", 6, 7, 5, q_e=2)) == 4
    assert make_spec("c35", 6, 6, 5, q_e=2).t == 3


def test_katz():
    assert katz_holds([Direction(0, 1)] * 3, 5, 3)
    assert not katz_holds([], 2, 2)
    assert katz_holds([Direction(3, 1)], 3, 5)
    assert not katz_holds([Direction(1, 1), Direction(1, 1)], 3, 3)


def test_validate_clean_constructions():
    assert validate(make_spec("c33", 7, 4, 6)) == []
    assert validate(make_spec("c35", 6, 6, 8, q_e=2)) == []


def codes(spec):
    return {f.code for f in validate(spec)}


def test_validate_findings():
    assert "rate-not-below-one" in codes(make_spec("c33", 3, 3, 4))
    dup = make_spec(Construction.CUSTOM, 3, 2, 4, directions=[Direction(1, 1), Direction(1, 1), Direction(0, 1)])
    assert "duplicate-direction" in codes(dup)
    mirrored = make_spec(Construction.CUSTOM, 2, 1, 4, directions=[Direction(0, 1), Direction(0, -1)])
    assert "duplicate-direction" in codes(mirrored)
    assert "too-few-projections" in codes(make_spec("c35", 2, 6, 4, q_e=2))
    weak = make_spec(Construction.CUSTOM, 3, 3, 5, directions=[Direction(1, 1), Direction(-1, 1), Direction(1, 0)])
    assert "katz-unsatisfied" in codes(weak)


def test_katz_counterexample_shortcuts():
    assert katz_counterexample(directions_c33(6), 3, 10, 3) is None
    bad = katz_counterexample([Direction(1, 2), Direction(3, 2), Direction(1, 4)], 1, 10, 3)
    assert bad is not None and not katz_holds(bad, 10, 3)
    with pytest.raises(ParameterError):
        katz_counterexample([Direction(p, q) for p, q in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3)]], 3, 100, 100, max_subsets=5)


def test_make_spec_custom_needs_directions():
    with pytest.raises(ParameterError):
        make_spec("custom", 2, 1, 2)
