"""Coding overhead of the Mojette constructions.

The overhead of a code is measured on the survivor subset that costs the
most symbols: ``eps = max_S sum_{i in S} b_i / (k*b) - 1`` where ``|S|`` is
the construction's reconstruction size. It is computed three ways:

* ``eps_exact``: from the actual projection lengths of a spec,
* ``eps_closed_form``: from the direction-sum identities, in exact rationals,
* ``eps_asymptotic``: the large-``b`` approximations, in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .constructions import reconstruction_size
from .errors import ParameterError
from .symbols import CodeSpec, Construction


def phi(x: int) -> int:
    """``floor(x/2) * (floor(x/2) + 1)``."""
    if x < 0:
        raise ParameterError(f"phi is defined for x >= 0, got {x}")
    h = x // 2
    return h * (h + 1)


def sum_abs_p_c33(t: int) -> int:
    """Sum of ``|p|`` over the first ``t`` C33 directions (``t = 0`` gives 0)."""
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    if t == 0:
        return 0
    total = phi(t) + phi(t - 1)
    assert total % 2 == 0
    return total // 2


def sum_abs_p_c35(t: int) -> int:
    """Sum of ``|p|`` over ``t`` C35 directions: ``(t^2 + 1)/2`` for odd ``t``, ``t^2/2`` for even."""
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    return (t * t + 1) // 2 if t % 2 else t * t // 2


def _reconstruction_count(n: int, k: int, q_e: int | None) -> int:
    s = k if q_e is None else -(-k // q_e)
    if s > n:
        raise ParameterError(f"reconstruction needs {s} projections but the code has n={n}")
    return s


def eps_closed_form_c33(n: int, k: int, b: int) -> Fraction:
    _reconstruction_count(n, k, None)
    return Fraction(k - 1, k * b) * (sum_abs_p_c33(n) - sum_abs_p_c33(n - k))


def eps_closed_form_c35(n: int, k: int, b: int, q_e: int) -> Fraction:
    s = _reconstruction_count(n, k, q_e)
    big = s * (b - 1) * q_e + (k - 1) * (sum_abs_p_c35(n) - sum_abs_p_c35(n - s)) + s
    return Fraction(big, k * b) - 1


def bracket_c33(n: int, k: int, b: int) -> tuple[Fraction, Fraction]:
    core = 2 * k * n - k * k
    scale = Fraction(k - 1, 4 * k * b)
    return scale * (core - 1), scale * (core + 1)


def bracket_c35(n: int, k: int, b: int, q_e: int) -> tuple[Fraction, Fraction]:
    s = _reconstruction_count(n, k, q_e)
    core = n * n - (n - s) ** 2
    fixed = Fraction(s * (b - 1) * q_e + s, k * b) - 1
    scale = Fraction(k - 1, 2 * k * b)
    return fixed + scale * (core - 1), fixed + scale * (core + 1)


def overhead_asymptotic_c33(n: int, k: int, b: int) -> float:
    return (k - 1) * (2 * n - k) / (4 * b)


def overhead_asymptotic_c33_rate(n: float, r: float, b: float) -> float:
    """Same approximation written through the rate ``r = k/n``."""
    return n * (2 - r) * (n * r - 1) / (4 * b)


def overhead_asymptotic_c35(n: int, k: int, b: int, q_e: int) -> float:
    if q_e < 2 or q_e % 2:
        raise ParameterError(f"q_e must be even and >= 2, got {q_e}")
    s = -(-k // q_e)
    return s / (k * b) * ((k - 1) * (n - s / 2) + (b - 1) * q_e + 1) - 1


@dataclass(frozen=True)
class OverheadReport:
    subset_size: int
    worst_subset: tuple[int, ...]
    eps_exact: Fraction
    b_prime_avg: Fraction
    eps_avg: Fraction
    eps_closed_form: Fraction | None = None
    eps_asymptotic: float | None = None
    bracket_lo: Fraction | None = None
    bracket_hi: Fraction | None = None

    def as_dict(self) -> dict:
        def num(x):
            return None if x is None else (str(x) if isinstance(x, Fraction) else x)

        return {
            "subset_size": self.subset_size,
            "worst_subset": list(self.worst_subset),
            "eps_exact": num(self.eps_exact),
            "eps_exact_float": float(self.eps_exact),
            "eps_closed_form": num(self.eps_closed_form),
            "eps_asymptotic": self.eps_asymptotic,
            "b_prime_avg": num(self.b_prime_avg),
            "eps_avg": num(self.eps_avg),
            "bracket_lo": num(self.bracket_lo),
            "bracket_hi": num(self.bracket_hi),
        }


def worst_case_subset(lengths: list[int], s: int) -> tuple[int, ...]:
    """Indices of the ``s`` longest projections (ties broken by lower index)."""
    order = sorted(range(len(lengths)), key=lambda i: (-lengths[i], i))
    return tuple(sorted(order[:s]))


def enumerate_worst_case(lengths: list[int], s: int) -> int:
    """Brute-force maximum of ``sum(b_i)`` over all ``s``-subsets."""
    return max(sum(c) for c in combinations(lengths, s))


def overhead_exact(spec: CodeSpec) -> OverheadReport:
    s = reconstruction_size(spec)
    if s > spec.n:
        raise ParameterError(f"reconstruction needs {s} projections but the code has n={spec.n}")
    n, k, b = spec.n, spec.k, spec.b
    lengths = spec.projection_lengths()
    subset = worst_case_subset(lengths, s)
    eps = Fraction(sum(lengths[i] for i in subset), k * b) - 1
    b_avg = Fraction(sum(lengths), n)
    closed = asym = lo = hi = None
    if spec.construction is Construction.C33:
        closed = eps_closed_form_c33(n, k, b)
        asym = overhead_asymptotic_c33(n, k, b)
        lo, hi = bracket_c33(n, k, b)
    elif spec.construction is Construction.C35:
        closed = eps_closed_form_c35(n, k, b, spec.q_e)
        asym = overhead_asymptotic_c35(n, k, b, spec.q_e)
        lo, hi = bracket_c35(n, k, b, spec.q_e)
    return OverheadReport(
        subset_size=s,
        worst_subset=subset,
        eps_exact=eps,
        b_prime_avg=b_avg,
        eps_avg=b_avg / b - 1,
        eps_closed_form=closed,
        eps_asymptotic=asym,
        bracket_lo=lo,
        bracket_hi=hi,
    )
