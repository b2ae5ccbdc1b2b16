"""Randomized verification campaigns over seeded trace-free matrices.

One pass per matrix runs every inequality family and records worst-case
relative defects. Aggregation uses only min / max / integer sums, so reports
are byte-identical regardless of chunking or thread count; per-matrix
generators are derived as seed ^ index.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .curvature import kn_identity_suite
from .defaults import ARTIFACT, TOLERANCES, VERSION, tolerance
from .inequalities import (
    bridge_residual,
    cubic_bound,
    lambda_scan,
    lambda_scan_scales,
    main_inequality,
    newton_gap,
    prop_p3,
    prop_p4,
    sigma_norm_identities,
)
from .sampling import derived_rng, equality_family_matrix, random_rotation, random_symmetric
from .spectral import eigen_spectrum, norms, symfun_from_power_sums, symfun_from_spectrum, trace_free_project

__all__ = [
    "CHECK_FAMILIES",
    "run_verification_campaign",
    "equality_family_stats",
]

CHECK_FAMILIES = (
    "newton_gap",
    "prop_p3",
    "prop_p4",
    "cubic_bound",
    "main_inequality",
    "sigma_norm_identities",
    "lambda_scan",
    "kn_identity_suite",
)


def _blank_aggregate(include_kn: bool) -> dict:
    agg: dict = {
        "newton_gap": {"count": 0, "min_relative_defect": math.inf, "violations": 0},
        "prop_p3": {"count": 0, "min_relative_defect": math.inf, "violations": 0},
        "prop_p4": {"count": 0, "min_relative_defect": math.inf, "violations": 0},
        "cubic_bound": {"count": 0, "min_relative_defect": math.inf, "violations": 0},
        "main_inequality": {"count": 0, "min_relative_defect": math.inf, "violations": 0,
                            "false_equalities": 0, "max_bridge_residual": 0.0},
        "sigma_norm_identities": {"count": 0, "max_relative_residual": 0.0},
        "lambda_scan": {"count": 0, "min_relative_gap": math.inf,
                        "max_relative_product": -math.inf},
        "kn_identity_suite": {"count": 0, "max_relative_residual": 0.0},
        "_oracle": {"max_relative_deviation": 0.0},
    }
    if not include_kn:
        del agg["kn_identity_suite"]
    return agg


def _merge(into: dict, part: dict) -> None:
    for family, stats in part.items():
        dest = into[family]
        for key, value in stats.items():
            if key.startswith("min"):
                dest[key] = min(dest[key], value)
            elif key.startswith("max"):
                dest[key] = max(dest[key], value)
            else:
                dest[key] = dest[key] + value


def _examine_range(lo: int, hi: int, dims: list[int], seed: int, lambda_count: int,
                   fuzz_tol: float, include_kn: bool) -> dict:
    agg = _blank_aggregate(include_kn)
    newton = agg["newton_gap"]
    p3s = agg["prop_p3"]
    p4s = agg["prop_p4"]
    cubic = agg["cubic_bound"]
    main = agg["main_inequality"]
    sigma = agg["sigma_norm_identities"]
    lam_stats = agg["lambda_scan"]
    oracle = agg["_oracle"]
    for idx in range(lo, hi):
        rng = derived_rng(seed, idx)
        n = dims[idx % len(dims)]
        a = trace_free_project(random_symmetric(rng, n))
        spectrum = eigen_spectrum(a)
        profile = symfun_from_spectrum(spectrum)
        a2, a22, t3 = norms(a)
        hom4 = max(1.0, a2 * a2)

        alt = symfun_from_power_sums(a)
        sigma_scale = max(1.0, max(abs(s) for s in profile.sigma))
        deviation = max(abs(x - y) for x, y in zip(profile.sigma, alt.sigma)) / sigma_scale
        oracle["max_relative_deviation"] = max(oracle["max_relative_deviation"], deviation)

        for k in range(1, n):
            verdict = newton_gap(profile, k)
            newton["count"] += 1
            rel = verdict.relative_defect
            newton["min_relative_defect"] = min(newton["min_relative_defect"], rel)
            if rel < -fuzz_tol:
                newton["violations"] += 1

        verdict = prop_p3(profile)
        p3s["count"] += 1
        p3s["min_relative_defect"] = min(p3s["min_relative_defect"], verdict.relative_defect)
        if verdict.relative_defect < -fuzz_tol:
            p3s["violations"] += 1

        verdict = prop_p4(profile)
        p4s["count"] += 1
        p4s["min_relative_defect"] = min(p4s["min_relative_defect"], verdict.relative_defect)
        if verdict.relative_defect < -fuzz_tol:
            p4s["violations"] += 1

        verdict = cubic_bound((a2, a22, t3), n, trace=a.trace())
        cubic["count"] += 1
        cubic["min_relative_defect"] = min(cubic["min_relative_defect"], verdict.relative_defect)
        if verdict.relative_defect < -fuzz_tol:
            cubic["violations"] += 1

        verdict, case = main_inequality(a, spectrum=spectrum, profile=profile)
        main["count"] += 1
        main["min_relative_defect"] = min(main["min_relative_defect"], verdict.relative_defect)
        if verdict.relative_defect < -fuzz_tol:
            main["violations"] += 1
        if verdict.equality and not case.large_eigenspace:
            main["false_equalities"] += 1
        main["max_bridge_residual"] = max(
            main["max_bridge_residual"], abs(bridge_residual(profile, a2, a22)) / hom4)

        r2, r4 = sigma_norm_identities(a, profile=profile)
        sigma["count"] += 1
        sigma["max_relative_residual"] = max(
            sigma["max_relative_residual"], max(abs(r2), abs(r4)) / hom4)

        lam = rng.uniform(-2.0, 2.0, lambda_count)
        values = lambda_scan(profile, lam)
        q_scale, product_scale = lambda_scan_scales(profile, lam)
        lam_stats["count"] += 1
        lam_stats["min_relative_gap"] = min(
            lam_stats["min_relative_gap"], float(np.min(values[:-1] / q_scale)))
        lam_stats["max_relative_product"] = max(
            lam_stats["max_relative_product"], float(values[-1]) / product_scale)

        if include_kn:
            kn = agg["kn_identity_suite"]
            residuals = kn_identity_suite(a)
            kn["count"] += 1
            kn["max_relative_residual"] = max(
                kn["max_relative_residual"], max(abs(r) for r in residuals) / hom4)
    return agg


def run_verification_campaign(dims, samples: int, seed: int, lambda_count: int = 100,
                              threads: int = 1, include_kn: bool = True,
                              fuzz_tol: float | None = None) -> dict:
    """Run every check family over a seeded random campaign and build a report.

    ``samples`` counts matrices in total; dimensions cycle round-robin through
    ``dims``. The report is a JSON-ready dict whose check blocks contain only
    chunk-order-independent aggregates.
    """
    dims = [int(n) for n in dims]
    if not dims or any(n < 4 for n in dims):
        raise ValueError(f"dimensions must all be >= 4, got {dims}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    fuzz = tolerance("fuzz_defect_tol", fuzz_tol)
    agg = _blank_aggregate(include_kn)
    if threads <= 1:
        _merge(agg, _examine_range(0, samples, dims, seed, lambda_count, fuzz, include_kn))
    else:
        chunk = max(1, math.ceil(samples / (threads * 4)))
        ranges = [(lo, min(lo + chunk, samples)) for lo in range(0, samples, chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_examine_range, lo, hi, dims, seed, lambda_count,
                                   fuzz, include_kn) for lo, hi in ranges]
            for future in futures:
                _merge(agg, future.result())

    oracle = agg.pop("_oracle")
    checks = {}
    for family in CHECK_FAMILIES:
        if family not in agg:
            continue
        stats = dict(agg[family])
        if family in ("newton_gap", "prop_p3", "prop_p4", "cubic_bound"):
            stats["pass"] = stats["violations"] == 0
        elif family == "main_inequality":
            stats["pass"] = (stats["violations"] == 0 and stats["false_equalities"] == 0
                             and stats["max_bridge_residual"] <= tolerance("bridge_tol"))
        elif family == "sigma_norm_identities":
            stats["pass"] = stats["max_relative_residual"] <= tolerance("sigma_identity_tol")
        elif family == "lambda_scan":
            stats["pass"] = (stats["min_relative_gap"] >= -tolerance("lambda_step_tol")
                             and stats["max_relative_product"] <= tolerance("lambda_step_tol"))
        elif family == "kn_identity_suite":
            stats["pass"] = stats["max_relative_residual"] <= tolerance("kn_identity_tol")
        checks[family] = stats

    diagnostics = {
        "symfun_oracle_max_relative_deviation": oracle["max_relative_deviation"],
        "symfun_oracle_pass": oracle["max_relative_deviation"] <= tolerance("oracle_agreement_tol"),
    }
    return {
        "artifact": ARTIFACT,
        "version": VERSION,
        "command": "verify",
        "config": {
            "dims": dims,
            "samples": samples,
            "seed": seed,
            "lambda_count": lambda_count,
            "include_kn": include_kn,
            "fuzz_defect_tol": fuzz,
        },
        "tolerances": dict(TOLERANCES),
        "checks": checks,
        "diagnostics": diagnostics,
        "pass": all(stats["pass"] for stats in checks.values()) and diagnostics["symfun_oracle_pass"],
    }


def equality_family_stats(dims, count: int, seed: int) -> dict:
    """Verdicts over random orthogonal conjugates of diag(mu, ..., mu, -(n-1) mu)."""
    dims = [int(n) for n in dims]
    worst_defect = 0.0
    all_equality = True
    all_mult = True
    for idx in range(count):
        rng = derived_rng(seed, idx)
        n = dims[idx % len(dims)]
        mu = rng.uniform(0.5, 2.0) * (1.0 if rng.uniform() < 0.5 else -1.0)
        a = equality_family_matrix(n, mu, rotation=random_rotation(rng, n))
        verdict, case = main_inequality(a)
        worst_defect = max(worst_defect, abs(verdict.relative_defect))
        all_equality = all_equality and verdict.equality
        all_mult = all_mult and max(case.multiplicities) == n - 1
    return {
        "count": count,
        "max_abs_relative_defect": worst_defect,
        "all_equality": all_equality,
        "all_multiplicity_n_minus_1": all_mult,
    }
