"""Block-length bounds for BP-decodable array codes.

Three families of upper bounds on the number of columns ``n``:

* the classical bounds for exactly-MDS codes (``k = sigma`` and the large-``b``
  limit for ``k > sigma``),
* the counting bound for codes with overhead ``eps``, where
  ``sigma' = sigma * (1 + eps)``::

      n <= floor(((k*b + sigma - 1)(k - 1) - (sigma - 1)(sigma/2 - 1))
                 / (b*(k - sigma') + sigma - 1))

  valid while ``2 < sigma`` and the denominator is positive,
* its large-``k`` simplification ``n <= k + sigma' - 1``.

``eps`` depends on ``n`` itself, so :func:`solve_n_max` scans ``n`` upward.
All arithmetic is exact (``Fraction``) unless a function says otherwise.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterError
from .overhead import eps_closed_form_c33, eps_closed_form_c35

DEFAULT_CAP = 10**6


class BoundInapplicable(ParameterError):
    """A bound was asked for outside the region where its derivation holds."""

    def __init__(self, checks: list[tuple[str, bool]]):
        self.checks = checks
        failed = [name for name, ok in checks if not ok]
        super().__init__(f"bound inapplicable: {', '.join(failed)}")

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


class CodeFamily(enum.Enum):
    CLASSICAL = "classical"
    C33 = "c33"
    C35 = "c35"


class Formula(enum.Enum):
    COUNTING = "counting"  # full counting bound
    LARGE_K = "large-k"  # n <= k + sigma' - 1
    RATE_CHAIN = "rate-chain"  # large-k bound with k = sigma = r*n (C33 only)


class BoundStatus(enum.Enum):
    FINITE = "finite"
    UNBOUNDED = "unbounded"
    INAPPLICABLE = "inapplicable"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- closed-form classical bounds ---------------------------------------------------------------


def bound_classical_k_eq_sigma(k: int, b: int) -> int:
    return k * b + 1 + max(k - 3, 0)


def bound_classical_limit(k: int, sigma: int) -> int:
    """Large-``b`` limit of the exactly-MDS bound for ``k > sigma > 2``."""
    checks = [("sigma>2", sigma > 2), ("k>sigma", k > sigma)]
    if not all(ok for _, ok in checks):
        raise BoundInapplicable(checks)
    num, den = sigma * (sigma - 1), k - sigma
    return k + sigma - 1 + num // den - (1 if num % den == 0 else 0)


# -- counting bound -----------------------------------------------------------------------------


def counting_checks(k: int, b: int, sigma: int, eps) -> list[tuple[str, bool]]:
    eps = _frac(eps)
    sigma_p = sigma * (1 + eps)
    b_prime = b * (1 + eps)
    denominator = b * (k - sigma_p) + sigma - 1
    # sigma < (bk-1)/(b'-1); b' = 1 leaves no upper limit on sigma
    degree_cap = b_prime == 1 or (b_prime > 1 and sigma * (b_prime - 1) < b * k - 1)
    return [
        ("sigma>2", sigma > 2),
        ("sigma<(bk-1)/(b'-1)", bool(degree_cap)),
        ("positive-denominator", denominator > 0),
    ]


def counting_forms(k: int, b: int, sigma: int, eps) -> tuple[Fraction, Fraction, Fraction]:
    """``(compact, expanded_offset, denominator)`` before flooring.

    ``floor(compact/den)`` and ``k + sigma - 1 + floor(expanded_offset/den)``
    are the two printed forms of the same bound.
    """
    eps = _frac(eps)
    s = Fraction(sigma)
    sigma_p = s * (1 + eps)
    den = b * (k - sigma_p) + s - 1
    compact = (k * b + s - 1) * (k - 1) - (s - 1) * (s / 2 - 1)
    offset = b * (k * (sigma_p - s) + (s - 1) * sigma_p) - (s - 1) * (3 * s / 2 - 1)
    return compact, offset, den


def bound_counting_rhs(n: int | None, k: int, b: int, sigma: int, eps) -> int:
    """Counting bound on ``n`` for overhead ``eps`` (evaluated at block length ``n``).

    ``n`` only identifies where ``eps`` was taken; the value depends on ``eps``.
    Raises :class:`BoundInapplicable` naming the failed hypotheses.
    """
    checks = counting_checks(k, b, sigma, eps)
    if not all(ok for _, ok in checks):
        raise BoundInapplicable(checks)
    compact, offset, den = counting_forms(k, b, sigma, eps)
    first = math.floor(compact / den)
    second = k + sigma - 1 + math.floor(offset / den)
    assert first == second, (n, k, b, sigma, eps, first, second)
    return first


def bpxor_reference_bound(k: int, b: int, sigma: int) -> int:
    """The exactly-MDS finite-``b`` bound without the ``(sigma-1)(sigma/2-1)`` term."""
    den = b * (k - sigma) + sigma - 1
    if den <= 0:
        raise BoundInapplicable([("positive-denominator", False)])
    return ((k * b + sigma - 1) * (k - 1)) // den


def bound_large_k(k: int, sigma: int, eps) -> Fraction:
    """``k + sigma' - 1`` (real-valued; callers floor)."""
    return k + sigma * (1 + _frac(eps)) - 1


def c33_rate_chain_holds(n: int, r, b: int) -> bool:
    """Large-k bound for C33 with ``k = sigma = r n`` and the rate form of its overhead."""
    r = _frac(r)
    eps = Fraction(n) * (2 - r) * (n * r - 1) / (4 * b)
    return n <= r * n + r * n * (1 + eps) - 1


def n_lower_bound_c33(r, b: int) -> float:
    """Minimum ``n`` for which the C33 rate chain holds, ``sqrt(4b(1-2r)/(r^2(2-r)))``.

    Only meaningful for ``0 < r < 1/2``; elsewhere the radicand is not positive.
    """
    r = _frac(r)
    checks = [("0<r", r > 0), ("r<1/2", r < Fraction(1, 2))]
    if not all(ok for _, ok in checks):
        raise BoundInapplicable(checks)
    return math.sqrt(4 * b * (1 - 2 * r) / (r * r * (2 - r)))


# -- solver -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundQuery:
    k: int
    b: int
    family: CodeFamily
    sigma: int | None = None
    q_e: int = 2
    rate_assumed: Fraction | None = None
    formula: Formula | None = None
    cap: int = DEFAULT_CAP

    def resolved_sigma(self) -> int:
        if self.sigma is not None:
            return self.sigma
        if self.family is CodeFamily.C33:
            return self.k
        if self.family is CodeFamily.C35:
            return -(-self.k // self.q_e)
        raise ParameterError("classical bound queries need an explicit sigma")

    def resolved_formula(self) -> Formula:
        if self.formula is not None:
            return self.formula
        if self.family is CodeFamily.CLASSICAL:
            return Formula.COUNTING
        if self.family is CodeFamily.C33 and self.rate_assumed is not None:
            return Formula.RATE_CHAIN
        return Formula.LARGE_K


@dataclass
class BoundResult:
    status: BoundStatus
    n_max: int | None
    formula_used: Formula
    epsilon_at_solution: Fraction | None = None
    hypothesis_checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def value(self) -> int | str:
        """``n_max`` or the status name, as emitted in tables."""
        return self.n_max if self.status is BoundStatus.FINITE else self.status.name


def required_n(k: int, rate) -> int:
    rate = _frac(rate)
    return math.ceil(k / rate)


def overhead_for(family: CodeFamily, n: int, k: int, b: int, q_e: int = 2) -> Fraction:
    """Worst-case overhead the bounds consume, exact."""
    if family is CodeFamily.CLASSICAL:
        return Fraction(0)
    if family is CodeFamily.C33:
        return eps_closed_form_c33(n, k, b)
    return eps_closed_form_c35(n, k, b, q_e)


def _rhs(formula: Formula, k: int, b: int, sigma: int, eps: Fraction, n: int) -> int:
    if formula is Formula.COUNTING:
        return bound_counting_rhs(n, k, b, sigma, eps)
    return math.floor(bound_large_k(k, sigma, eps))


def solve_n_max(query: BoundQuery) -> BoundResult:
    """Largest ``n > k`` satisfying the query's bound before the first failure.

    With ``rate_assumed`` the overhead is frozen at the required block length
    ``ceil(k / r)``; otherwise it is re-evaluated at every scanned ``n``.
    ``n_max == k`` means even ``n = k + 1`` violates the bound.
    """
    k, b, cap = query.k, query.b, query.cap
    formula = query.resolved_formula()
    sigma = query.resolved_sigma()

    if formula is Formula.RATE_CHAIN:
        if query.rate_assumed is None:
            raise ParameterError("rate-chain formula needs an assumed rate")
        n = k + 1
        while n <= cap and c33_rate_chain_holds(n, query.rate_assumed, b):
            n += 1
        if n > cap:
            return BoundResult(BoundStatus.UNBOUNDED, None, formula)
        return BoundResult(BoundStatus.FINITE, n - 1, formula)

    if query.family is CodeFamily.CLASSICAL or query.rate_assumed is not None:
        if query.family is CodeFamily.CLASSICAL:
            eps = Fraction(0)
        else:
            eps = overhead_for(query.family, required_n(k, query.rate_assumed), k, b, query.q_e)
        checks = counting_checks(k, b, sigma, eps) if formula is Formula.COUNTING else []
        try:
            rhs = _rhs(formula, k, b, sigma, eps, required_n(k, query.rate_assumed or 1))
        except BoundInapplicable as exc:
            return BoundResult(BoundStatus.INAPPLICABLE, None, formula, eps, exc.checks)
        if rhs > cap:
            return BoundResult(BoundStatus.UNBOUNDED, None, formula, eps, checks)
        return BoundResult(BoundStatus.FINITE, max(rhs, k), formula, eps, checks)

    checks: list[tuple[str, bool]] = []
    eps = None
    n = k + 1
    while n <= cap:
        try:
            eps_n = overhead_for(query.family, n, k, b, query.q_e)
            rhs = _rhs(formula, k, b, sigma, eps_n, n)
        except BoundInapplicable as exc:
            if n == k + 1:
                return BoundResult(BoundStatus.INAPPLICABLE, None, formula, None, exc.checks)
            checks = [(f"{name}@n={n}", ok) for name, ok in exc.checks]
            break
        except ParameterError:
            # overhead undefined: fewer projections than the reconstruction size
            n += 1
            continue
        if n > rhs:
            break
        eps = eps_n
        n += 1
    if n > cap:
        return BoundResult(BoundStatus.UNBOUNDED, None, formula, eps, checks)
    return BoundResult(BoundStatus.FINITE, n - 1, formula, eps, checks)


# -- tables -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsRow:
    k: int
    required_n: int
    classical: BoundResult
    amds: BoundResult
    amds_counting: BoundResult


def _meets(result: BoundResult, need: int) -> bool:
    if result.status is BoundStatus.UNBOUNDED:
        return True
    return result.status is BoundStatus.FINITE and result.n_max >= need


def bounds_table(
    rate, b: int, q_e: int, ks: Iterable[int], sigma_classical: int = 3, cap: int = DEFAULT_CAP
) -> list[BoundsRow]:
    """Upper bounds on ``n`` against the block length a rate-``r`` code needs.

    The asymptotically-MDS rows use C35 (``sigma = ceil(k/q_e)``) with the
    overhead evaluated at the required block length.
    """
    rate = _frac(rate)
    rows = []
    for k in ks:
        need = required_n(k, rate)
        classical = solve_n_max(BoundQuery(k, b, CodeFamily.CLASSICAL, sigma=sigma_classical, cap=cap))
        amds = solve_n_max(BoundQuery(k, b, CodeFamily.C35, q_e=q_e, rate_assumed=rate, cap=cap))
        counting = solve_n_max(
            BoundQuery(k, b, CodeFamily.C35, q_e=q_e, rate_assumed=rate, formula=Formula.COUNTING, cap=cap)
        )
        rows.append(BoundsRow(k, need, classical, amds, counting))
    return rows


def row_flags(row: BoundsRow) -> tuple[bool, bool]:
    """Whether the classical and asymptotically-MDS bounds admit the required ``n``."""
    return _meets(row.classical, row.required_n), _meets(row.amds, row.required_n)


def crossover(rows: list[BoundsRow], which: str) -> int | None:
    """Smallest ``k`` from which on a property holds through the end of the table.

    ``which='classical-below'``: classical bound < required ``n``.
    ``which='amds-meets'``: asymptotically-MDS bound >= required ``n``.
    """
    start = None
    for row in rows:
        classical_ok, amds_ok = row_flags(row)
        holds = (not classical_ok) if which == "classical-below" else amds_ok
        if holds and start is None:
            start = row.k
        elif not holds:
            start = None
    return start


def min_rate(result: BoundResult, k: int) -> Fraction | None:
    if result.status is BoundStatus.UNBOUNDED:
        return Fraction(0)
    if result.status is BoundStatus.INAPPLICABLE:
        return None
    return Fraction(k, result.n_max)


def min_rate_curve(
    b: int,
    ks: Iterable[int],
    family: CodeFamily,
    rate_assumed,
    q_e: int = 2,
    sigma: int | None = None,
    cap: int = DEFAULT_CAP,
) -> list[tuple[int, Fraction | None]]:
    """``(k, k / n_max)`` per ``k``; ``None`` marks inapplicable entries."""
    rate_assumed = _frac(rate_assumed)
    out = []
    for k in ks:
        query = BoundQuery(
            k, b, family, sigma=sigma, q_e=q_e,
            rate_assumed=None if family is CodeFamily.CLASSICAL else rate_assumed, cap=cap,
        )
        out.append((k, min_rate(solve_n_max(query), k)))
    return out

