"""Self-check suite: every closed form against an independent brute-force oracle.

Each check returns findings; an empty list means the oracle agreed. The
``max_degree_fn`` hook lets tests inject a wrong formula and watch the suite
catch it.
"""
from __future__ import annotations

import math
import random
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .bounds import counting_forms
from .constructions import (
    Finding,
    directions_c33,
    directions_c35,
    katz_holds,
    make_spec,
    max_degree,
    p_values_c33,
    p_values_c35,
    reconstruction_size,
    validate,
)
from .decoder import decode, peel_structure
from .encoder import bin_degree_map, encode
from .overhead import (
    bracket_c33,
    enumerate_worst_case,
    overhead_exact,
    sum_abs_p_c33,
    sum_abs_p_c35,
)
from .symbols import DataGrid, Direction


@dataclass(frozen=True)
class SuiteConfig:
    """Desk-scale sizes; the defaults run in a few seconds."""

    degree_pq: int = 7
    degree_dims: int = 12
    sums_t: int = 2000
    bracket_t: int = 100
    overhead_n: int = 14
    decode_dims: int = 5
    decode_n: int = 7
    counting_samples: int = 1000
    seed: int = 0


def coprime_directions(limit: int) -> Iterator[Direction]:
    for p in range(-limit, limit + 1):
        for q in range(0, limit + 1):
            if (p, q) != (0, 0) and math.gcd(p, q) == 1 and not (q == 0 and p < 0):
                yield Direction(p, q)


def check_max_degree(cfg: SuiteConfig, max_degree_fn: Callable = max_degree) -> list[Finding]:
    out = []
    for d in coprime_directions(cfg.degree_pq):
        for b in range(2, cfg.degree_dims + 1):
            for k in range(2, cfg.degree_dims + 1):
                brute = int(bin_degree_map(d, b, k).max())
                if max_degree_fn(d, b, k) != brute:
                    out.append(Finding("sigma-mismatch", f"{d} on {b}x{k}: formula {max_degree_fn(d, b, k)}, brute {brute}"))
    return out


def check_direction_sums(cfg: SuiteConfig) -> list[Finding]:
    out = []
    for n in range(1, cfg.sums_t + 1):
        brute33 = sum(map(abs, p_values_c33(n)))
        brute35 = sum(map(abs, p_values_c35(n)))
        if sum_abs_p_c33(n) != brute33 or brute33 != n * n // 4:
            out.append(Finding("sum-c33-mismatch", f"t={n}: closed {sum_abs_p_c33(n)}, brute {brute33}"))
        if sum_abs_p_c35(n) != brute35:
            out.append(Finding("sum-c35-mismatch", f"t={n}: closed {sum_abs_p_c35(n)}, brute {brute35}"))
    return out


def check_brackets(cfg: SuiteConfig) -> list[Finding]:
    out = []
    for t2 in range(2, cfg.bracket_t + 1):
        for t1 in range(1, t2):
            diff = t2 * t2 - t1 * t1
            d33 = 4 * (sum_abs_p_c33(t2) - sum_abs_p_c33(t1))
            d35 = 2 * (sum_abs_p_c35(t2) - sum_abs_p_c35(t1))
            if not diff - 1 <= d33 <= diff + 1:
                out.append(Finding("bracket-c33", f"t1={t1}, t2={t2}"))
            if not diff - 1 <= d35 <= diff + 1:
                out.append(Finding("bracket-c35", f"t1={t1}, t2={t2}"))
    return out


def check_overheads(cfg: SuiteConfig) -> list[Finding]:
    out = []
    for n in range(2, cfg.overhead_n + 1):
        for b in (10, 100):
            for k in range(1, n):
                spec = make_spec("c33", n, k, b)
                rep = overhead_exact(spec)
                brute = Fraction(enumerate_worst_case(spec.projection_lengths(), k), k * b) - 1
                lo, hi = bracket_c33(n, k, b)
                if not (rep.eps_exact == brute == rep.eps_closed_form and lo <= brute <= hi):
                    out.append(Finding("overhead-c33", f"n={n}, k={k}, b={b}"))
            for q_e in (2, 4):
                for k in range(q_e, q_e * n + 1, q_e):
                    spec = make_spec("c35", n, k, b, q_e=q_e)
                    rep = overhead_exact(spec)
                    s = rep.subset_size
                    brute = Fraction(enumerate_worst_case(spec.projection_lengths(), s), k * b) - 1
                    if not rep.eps_exact == brute == rep.eps_closed_form:
                        out.append(Finding("overhead-c35", f"n={n}, k={k}, b={b}, q_e={q_e}"))
    return out


def check_decoding(cfg: SuiteConfig) -> list[Finding]:
    out = []
    rng = np.random.default_rng(cfg.seed)
    for b in range(1, cfg.decode_dims + 1):
        for k in range(1, cfg.decode_dims + 1):
            for n in range(1, cfg.decode_n + 1):
                for dirs in (directions_c33(n), directions_c35(n, 2), directions_c35(n, 4)):
                    for r in range(n + 1):
                        for subset in combinations(dirs, r):
                            unresolved, _ = peel_structure(subset, b, k)
                            if (unresolved == 0) != katz_holds(subset, b, k):
                                out.append(Finding("katz-peeling-disagree", f"{b}x{k} {[str(d) for d in subset]}"))
    # real payloads through the full decoder
    for n, k, b in ((5, 3, 4), (7, 4, 6)):
        spec = make_spec("c33", n, k, b, width=3)
        grid = DataGrid.random(b, k, 3, rng)
        projections = encode(grid, spec)
        for subset in combinations(projections, k):
            decoded, report = decode(spec, list(subset))
            if not (report.success and decoded == grid):
                out.append(Finding("roundtrip-failed", f"c33 n={n} k={k} b={b} subset {[p.index for p in subset]}"))
    return out


def check_counting_forms(cfg: SuiteConfig) -> list[Finding]:
    out = []
    rnd = random.Random(cfg.seed)
    done = 0
    while done < cfg.counting_samples:
        sigma = rnd.randint(3, 30)
        k = rnd.randint(sigma + 1, 200)
        b = rnd.randint(1, 10**5)
        eps = Fraction(rnd.randint(0, 10**6), 10**7)
        compact, offset, den = counting_forms(k, b, sigma, eps)
        if den <= 0:
            continue
        done += 1
        if compact // den != k + sigma - 1 + offset // den:
            out.append(Finding("counting-forms-disagree", f"k={k}, b={b}, sigma={sigma}, eps={eps}"))
    return out


CHECKS: dict[str, Callable[[SuiteConfig], list[Finding]]] = {
    "max-degree": check_max_degree,
    "direction-sums": check_direction_sums,
    "brackets": check_brackets,
    "overheads": check_overheads,
    "decoding": check_decoding,
    "counting-bound-forms": check_counting_forms,
}


def run_suite(
    cfg: SuiteConfig | None = None, max_degree_fn: Callable = max_degree
) -> tuple[list[Finding], dict[str, float]]:
    """Run every check; returns findings and per-check wall time in seconds."""
    cfg = cfg or SuiteConfig()
    findings: list[Finding] = []
    timings = {}
    for name, fn in CHECKS.items():
        start = time.perf_counter()
        if name == "max-degree":
            findings += fn(cfg, max_degree_fn)
        else:
            findings += fn(cfg)
        timings[name] = time.perf_counter() - start
    return findings, timings


def verify_spec(spec) -> list[Finding]:
    """Validate a spec and decode every reconstruction-size survivor set (small codes only)."""
    findings = validate(spec)
    if findings:
        return findings
    s = reconstruction_size(spec)
    if math.comb(spec.n, s) > 5000:
        return [Finding("too-large", f"C({spec.n},{s}) survivor sets exceed the exhaustive budget")]
    rng = np.random.default_rng(0)
    grid = DataGrid.random(spec.b, spec.k, spec.width, rng)
    projections = encode(grid, spec)
    for subset in combinations(projections, s):
        decoded, report = decode(spec, list(subset))
        if not (report.success and decoded == grid):
            findings.append(Finding("roundtrip-failed", f"survivors {[p.index for p in subset]}"))
    return findings
