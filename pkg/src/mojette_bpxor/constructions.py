"""Direction-set constructions, maximum bin degree and spec validation."""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import ParameterError
from .symbols import CodeSpec, Construction, Direction


def p_values_c33(n: int) -> range:
    """``-floor((n-1)/2) .. ceil((n-1)/2)``."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    lo = -((n - 1) // 2)
    return range(lo, lo + n)


def directions_c33(n: int) -> list[Direction]:
    """``q = 1`` with ``p`` from :func:`p_values_c33`, ascending."""
    return [Direction(p, 1) for p in p_values_c33(n)]


def ceil_odd(x: int) -> int:
    """Smallest odd integer >= x, except that even x maps to x + 1."""
    return x if x % 2 else x + 1


def p_values_c35(n: int) -> range:
    """``n`` consecutive odd integers ending at ``ceil_odd(n - 1)``.

    Symmetric around zero for even ``n``; one extra positive entry for odd ``n``.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    top = ceil_odd(n - 1)
    return range(top - 2 * (n - 1), top + 1, 2)


def directions_c35(n: int, q_e: int) -> list[Direction]:
    """``q = q_e`` with odd ``p`` from :func:`p_values_c35`, ascending."""
    if q_e < 2 or q_e % 2:
        raise ParameterError(f"q_e must be even and >= 2, got {q_e}")
    p_values = p_values_c35(n)
    # odd p is coprime to q_e only when q_e has no odd factor below max |p|
    shared = [p for p in p_values if math.gcd(p, q_e) != 1]
    if shared:
        raise ParameterError(f"q_e={q_e} shares a factor with p={shared[0]}; use a power of two or a smaller n")
    return [Direction(p, q_e) for p in p_values]


def _ceil_div_or_inf(a: int, d: int) -> float:
    return math.inf if d == 0 else -(-a // abs(d))


def max_degree(direction: Direction, b: int, k: int) -> int:
    """Largest number of cells sharing one bin: ``min(ceil(b/|p|), ceil(k/|q|))``."""
    return int(min(_ceil_div_or_inf(b, direction.p), _ceil_div_or_inf(k, direction.q)))


def code_sigma(directions: Sequence[Direction], b: int, k: int) -> int:
    if not directions:
        raise ParameterError("code_sigma needs at least one direction")
    return max(max_degree(d, b, k) for d in directions)


def reconstruction_size(spec: CodeSpec) -> int:
    """Survivor count the construction is designed to decode from."""
    if spec.construction is Construction.C35:
        return -(-spec.k // spec.q_e)
    return spec.k


def katz_holds(directions: Sequence[Direction], b: int, k: int) -> bool:
    return sum(abs(d.p) for d in directions) >= b or sum(abs(d.q) for d in directions) >= k


def make_spec(
    construction: Construction | str,
    n: int,
    k: int,
    b: int,
    width: int = 1,
    q_e: int = 0,
    directions: Sequence[Direction] | None = None,
) -> CodeSpec:
    """Build a :class:`CodeSpec` with its direction list filled in."""
    if isinstance(construction, str):
        construction = Construction.parse(construction)
    if construction is Construction.C33:
        dirs = directions_c33(n)
        q_e = 0
    elif construction is Construction.C35:
        dirs = directions_c35(n, q_e)
    else:
        if directions is None:
            raise ParameterError("custom construction needs an explicit direction list")
        dirs = list(directions)
    return CodeSpec(n=n, k=k, b=b, width=width, construction=construction, directions=tuple(dirs), q_e=q_e)


@dataclass(frozen=True)
class Finding:
    code: str
    message: str

    def as_dict(self) -> dict[str, str]:
        return {"code": self.code, "message": self.message}


def validate(spec: CodeSpec) -> list[Finding]:
    """Check a spec and return machine-readable findings (empty when sound)."""
    findings: list[Finding] = []
    dirs = list(spec.directions)
    # (p, q) and (-p, -q) bin the same lines
    lines = [min((d.p, d.q), (-d.p, -d.q)) for d in dirs]
    if len(set(lines)) != len(lines):
        dupes = sorted({str(d) for d, key in zip(dirs, lines) if lines.count(key) > 1})
        findings.append(Finding("duplicate-direction", f"repeated directions (up to sign): {', '.join(dupes)}"))
    if spec.construction is Construction.C35 and (spec.q_e < 2 or spec.q_e % 2):
        findings.append(Finding("qe-not-even", f"q_e={spec.q_e} must be an even integer >= 2"))
        return findings
    if spec.construction is Construction.C33 and spec.n <= spec.k:
        findings.append(Finding("rate-not-below-one", f"C33 needs n > k, got n={spec.n}, k={spec.k}"))
    if dirs:
        sigma = code_sigma(dirs, spec.b, spec.k)
        if sigma != spec.sigma:
            findings.append(Finding("sigma-mismatch", f"spec sigma {spec.sigma} != computed {sigma}"))
    s = reconstruction_size(spec)
    if s > spec.n:
        findings.append(Finding("too-few-projections", f"reconstruction needs {s} projections, code has {spec.n}"))
    elif dirs:
        try:
            bad = katz_counterexample(dirs, s, spec.b, spec.k)
        except ParameterError as exc:
            findings.append(Finding("katz-undetermined", str(exc)))
            bad = None
        if bad is not None:
            findings.append(
                Finding("katz-unsatisfied", f"survivor set {[str(d) for d in bad]} fails the Katz criterion")
            )
    return findings


def katz_counterexample(
    dirs: Sequence[Direction], s: int, b: int, k: int, max_subsets: int = 200_000
) -> tuple[Direction, ...] | None:
    """Some ``s``-subset of ``dirs`` failing the Katz criterion, or ``None``.

    Katz is monotone in the subset, so size ``s`` covers every larger survivor set.
    """
    by_q = sorted(dirs, key=lambda d: abs(d.q))
    by_p = sorted(dirs, key=lambda d: abs(d.p))
    if sum(abs(d.q) for d in by_q[:s]) >= k or sum(abs(d.p) for d in by_p[:s]) >= b:
        return None
    if len({abs(d.q) for d in dirs}) == 1:
        return tuple(by_p[:s])
    if len({abs(d.p) for d in dirs}) == 1:
        return tuple(by_q[:s])
    if math.comb(len(dirs), s) > max_subsets:
        raise ParameterError(f"too many {s}-subsets of {len(dirs)} directions to check Katz exhaustively")
    return next((c for c in combinations(dirs, s) if not katz_holds(c, b, k)), None)
