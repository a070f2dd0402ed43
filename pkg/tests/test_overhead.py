from __future__ import annotations

from fractions import Fraction

import pytest

from mojette_bpxor import ParameterError, make_spec
from mojette_bpxor.overhead import (
    bracket_c33,
    bracket_c35,
    enumerate_worst_case,
    eps_closed_form_c33,
    eps_closed_form_c35,
    overhead_asymptotic_c33,
    overhead_asymptotic_c33_rate,
    overhead_asymptotic_c35,
    overhead_exact,
    phi,
    sum_abs_p_c33,
    sum_abs_p_c35,
    worst_case_subset,
)


def test_phi():
    assert [phi(x) for x in (0, 1, 4, 5)] == [0, 0, 6, 6]
    with pytest.raises(ParameterError):
        phi(-1)


def test_direction_sums():
    assert [sum_abs_p_c33(t) for t in (3, 4, 1, 0)] == [2, 4, 0, 0]
    assert [sum_abs_p_c35(t) for t in (2, 3, 4)] == [2, 5, 8]
    with pytest.raises(ParameterError):
        sum_abs_p_c33(-1)


def test_c33_asymptotic_example():
    assert overhead_asymptotic_c33(10, 5, 100) == pytest.approx(0.15)
    assert overhead_asymptotic_c33_rate(10, 0.5, 100) == pytest.approx(overhead_asymptotic_c33(10, 5, 100))


def test_c33_exact_small_case():
    # C33 n=4: p in {-1,0,1,2}, lengths on b=10, k=3 are 12, 10, 12, 14
    spec = make_spec("c33", 4, 3, 10)
    assert spec.projection_lengths() == [12, 10, 12, 14]
    rep = overhead_exact(spec)
    assert rep.worst_subset == (0, 2, 3)
    assert rep.eps_exact == Fraction(38, 30) - 1 == rep.eps_closed_form
    assert rep.b_prime_avg == 12
    assert rep.bracket_lo <= rep.eps_exact <= rep.bracket_hi


def test_c35_exact_matches_enumeration():
    spec = make_spec("c35", 6, 6, 50, q_e=2)
    rep = overhead_exact(spec)
    brute = Fraction(enumerate_worst_case(spec.projection_lengths(), 3), 300) - 1
    assert rep.subset_size == 3
    assert rep.eps_exact == brute == eps_closed_form_c35(6, 6, 50, 2)
    assert rep.bracket_lo <= rep.eps_exact <= rep.bracket_hi
    # the large-b form differs by at most (k-1)/(2kb)
    assert abs(rep.eps_asymptotic - float(rep.eps_exact)) <= 5 / 600 + 1e-12


def test_absolute_error_of_c33_approximation():
    for n in range(2, 25):
        for k in range(1, n):
            for b in (7, 100):
                diff = abs(Fraction((k - 1) * (2 * n - k), 4 * b) - eps_closed_form_c33(n, k, b))
                assert diff <= Fraction(k - 1, 4 * k * b)


def test_brackets_contain_closed_forms():
    for n in range(2, 20):
        for k in range(1, n):
            lo, hi = bracket_c33(n, k, 10)
            assert lo <= eps_closed_form_c33(n, k, 10) <= hi
        for k in range(2, 2 * n + 1, 2):
            lo, hi = bracket_c35(n, k, 10, 2)
            assert lo <= eps_closed_form_c35(n, k, 10, 2) <= hi


def test_reconstruction_count_guard():
    with pytest.raises(ParameterError):
        eps_closed_form_c33(3, 4, 10)
    with pytest.raises(ParameterError):
        eps_closed_form_c35(2, 6, 10, 2)
    with pytest.raises(ParameterError):
        overhead_asymptotic_c35(4, 4, 10, 3)


def test_worst_case_subset_ties():
    assert worst_case_subset([5, 7, 7, 3], 2) == (1, 2)
    assert enumerate_worst_case([5, 7, 7, 3], 3) == 19


def test_report_dict_is_json_ready():
    d = overhead_exact(make_spec("c33", 5, 3, 10)).as_dict()
    assert isinstance(d["eps_exact"], str) and isinstance(d["eps_exact_float"], float)
