"""Acceptance gate: one test per criterion, each printing a pass line.

Every test recomputes its criterion from the public interfaces at the stated
tolerance and asserts the stated runtime budget.  Run with ``pytest -v
tests/test_acceptance.py`` to get the one-line-per-criterion report.
"""

import json
import math
import time
from dataclasses import asdict
from fractions import Fraction as F

import numpy as np

from isospec import checks
from isospec import clifford_fkm as cf
from isospec import shape_operators as so
from isospec import spectra
from isospec import tube_integrals as ti

SQRT3 = math.sqrt(3.0)


def report(n, message):
    print(f"ACCEPTANCE criterion {n}: PASS - {message}")


def records_by_id(suite, cfg):
    return {r.check_id: r for r in checks.run_suite_checks(suite, cfg)}


def test_criterion_1_quadrature_closed_forms():
    start = time.perf_counter()
    g = float(ti.compute_G())
    k1 = float(ti.compute_K_alpha(1))
    expected_k1 = 16 * (2 - SQRT3) * (math.pi / 64 + 63 * SQRT3 / 1280)
    assert abs(g - math.pi / 6) < 1e-10
    assert abs(k1 - expected_k1) < 1e-10
    inequalities = ti.verify_KG_inequalities()
    assert inequalities.all_pass
    margins = {c.label: c.margin for c in inequalities.checks}
    assert all(m > 0 for m in margins.values())
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, f"G and K1 within 1e-10, margins {margins} ({elapsed:.2f}s)")


def test_criterion_2_hypersurface_conclusion_chain(cfg):
    start = time.perf_counter()
    records = records_by_id("theorem1", cfg)
    assert all(r.status in ("pass", "assumed") for r in records.values())

    inequalities = ti.verify_KG_inequalities()
    ratio = 2 * inequalities.K_max / float(inequalities.G)
    assert ratio < 7 / 3
    assert spectra.sphere_spectrum(13, F(1), 20).kth_eigenvalue(15) == 28
    cert = ti.g6_hypersurface_ratio()
    assert cert.implied_bound > 12
    assumption = spectra.minimal_dimension_eigenvalue_record(12, 1)
    assert assumption.status == "assumed"
    verdict = spectra.conclude_first_eigenvalue(cert, assumption)
    assert verdict.passed and verdict.lambda1 == 12 and verdict.multiplicity == 14
    assert records["comparison-ratio"].status == "pass"
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(2, f"2K/G={ratio:.6f} < 7/3, bound {cert.implied_bound:.4f} > 12, "
              f"lambda1=12 mult 14 ({elapsed:.2f}s)")


def test_criterion_3_shape_operator_grids():
    start = time.perf_counter()
    rng = np.random.default_rng(0)
    summary = {}
    for which in ("m2", "m1"):
        fam = so.build_shape_family(which)
        t = rng.uniform(1e-3, math.pi - 1e-3, size=10_000)
        s = rng.uniform(0.0, 2.0 * math.pi, size=10_000)
        coeffs = np.stack([np.cos(t), np.sin(t) * np.cos(s), np.sin(t) * np.sin(s)], axis=1)
        if which == "m2":
            stack = np.stack([fam.A_xi, fam.A_zetabar, fam.A_zeta])
        else:
            stack = np.stack([fam.A_xi, fam.A_zeta, fam.A_zetabar])
        matrices = np.einsum("nc,cab->nab", coeffs, stack)
        deviation = float(
            np.max(np.abs(np.linalg.eigvalsh(matrices) - np.sort(so.EIGENVALUES)[None, :]))
        )
        assert deviation < 1e-9

        residual = max(
            so.closed_form_eigenbasis(fam, so.NormalDirection(tv, sv)).residual
            for tv, sv in zip(t[:2000], s[:2000])
        )
        assert residual < 1e-9

        cross = max(
            float(np.max(np.abs(m - np.diag(np.diag(m)))))
            for m in (so.fiber_average_matrix(fam, theta)
                      for theta in (math.pi / 24, math.pi / 12, math.pi / 8))
        )
        assert cross < 1e-10
        summary[which] = (deviation, residual, cross)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(3, f"eigenvalue dev/residual/cross-term per family {summary} ({elapsed:.1f}s)")


def test_criterion_4_g6_focal_constants(cfg):
    start = time.perf_counter()
    assert abs(ti.g6_m2_norm_constant() - math.pi ** 2 / 108) < 1e-10
    expected_energy = (math.pi / 18 - 13 * SQRT3 / 240) * math.pi
    assert abs(ti.g6_m2_energy_constant() - expected_energy) < 1e-10
    assert abs(ti.g6_m2_ratio().ratio - (6 - 117 * SQRT3 / (20 * math.pi))) < 1e-10

    fiber_route = so.energy_constant_via_fibers(so.build_shape_family("m2"))
    assert abs(fiber_route - ti.g6_m2_energy_constant()) < 1e-8

    c3, c15, c24 = ti.g6_m1_constants()
    assert abs(c3 - (math.pi / 36 - 11 * SQRT3 / 240)) < 1e-10
    assert abs(c15 - (math.pi / 144 + 11 * SQRT3 / 1920)) < 1e-10
    assert abs(c24 - (math.pi / 48 - 21 * SQRT3 / 640)) < 1e-10
    assert abs(ti.g6_m1_ratio().ratio - (3 + 99 * SQRT3 / (40 * math.pi))) < 1e-10
    triple = so.energy_constant_via_fibers(so.build_shape_family("m1"))
    assert np.max(np.abs(np.array(triple) - np.array((c3, c15, c24)))) < 1e-8

    bound = ti.eigenvalue_bound_from_ratio(
        ti.g6_m2_ratio(), spectra.sphere_spectrum(13, F(1), 20)
    )
    assert bound.passed
    verdict = spectra.conclude_first_eigenvalue(
        ti.g6_m2_ratio(), spectra.minimal_dimension_eigenvalue_record(10, 3)
    )
    assert verdict.passed and verdict.lambda1 == 10 and verdict.multiplicity == 14
    records = records_by_id("g6-focal", cfg)
    assert records["m2-lambda1"].status == "pass"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(4, f"constants within 1e-10, fiber routes within 1e-8, "
              f"lambda1(second leaf)=10 mult 14 ({elapsed:.1f}s)")


def test_criterion_5_g4_443_chain(cfg):
    start = time.perf_counter()
    sys = cf.build_clifford_system(4, 8)
    eye = np.eye(16)
    residual = max(
        float(np.max(np.abs(p @ q + q @ p - (2.0 if i == j else 0.0) * eye)))
        for i, p in enumerate(sys.matrices)
        for j, q in enumerate(sys.matrices)
    )
    assert residual < 1e-14

    rng = np.random.default_rng(1)
    points = [cf.project_to_focal(sys, rng.normal(size=16), which="M1") for _ in range(100)]
    ranks = {cf.homogeneity_span_check(sys, p) for p in points}
    assert ranks == {10}

    split = cf.tangent_split(sys, points[0], rng.normal(size=16))
    X = split.tangent_part / np.linalg.norm(split.tangent_part)
    batches = np.array(
        [cf.fiber_average_Y(sys, points[0], X, n_mc=10_000, seed=100 + b) for b in range(10)]
    )
    means = batches.mean(axis=0)
    errors = batches.std(axis=0, ddof=1) / math.sqrt(10)
    targets = np.array([0.4, 0.3, 0.3])
    z_scores = np.abs(means - targets) / errors
    assert np.max(z_scores) < 3.0

    energy, norm = ti.g4_443_constants()
    assert abs(norm - 1 / 560) < 1e-10
    assert abs(ti.g4_443_ratio().ratio - (119 / 30 - 7 * math.pi / 16)) < 1e-10
    assert spectra.sphere_spectrum(15, F(1), 20).kth_eigenvalue(17) == 32
    cert = ti.g4_443_ratio()
    assert cert.implied_bound > 12
    assert ti.eigenvalue_bound_from_ratio(cert, spectra.sphere_spectrum(15, F(1), 20)).passed
    verdict = spectra.conclude_first_eigenvalue(
        cert, spectra.minimal_dimension_eigenvalue_record(10, 5)
    )
    assert verdict.passed and verdict.lambda1 == 10 and verdict.multiplicity == 16
    records = records_by_id("g4-443", cfg)
    assert records["m1-443-lambda1"].status == "pass"
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(5, f"anticommutation exact, rank 10 at 100 points, MC max z={np.max(z_scores):.2f}, "
              f"lambda1=10 mult 16 ({elapsed:.1f}s)")


def test_criterion_6_berger_spectrum():
    start = time.perf_counter()
    s = spectra.sphere_spectrum(1, F(1), 10)
    assert all(s.entries[k] == (F(k * k), 2) for k in range(1, 11))
    s = spectra.sphere_spectrum(2, F(1, 2), 10)
    assert all(s.entries[k] == (F(2 * k * (k + 1)), 2 * k + 1) for k in range(11))
    s = spectra.sphere_spectrum(1, F(1, 2), 10)
    assert all(s.entries[k] == (F(2 * k * k), 2) for k in range(1, 11))
    s = spectra.antipodal_quotient_spectrum(3, F(2), 10)
    assert all(s.entries[k] == (F(2 * k * (k + 1)), (2 * k + 1) ** 2) for k in range(6))

    split = spectra.hopf_split_s3_quotient(10)
    parts = sorted((e.base_part, e.fiber_part, e.dimension) for e in split.splitting_at(F(4)))
    assert parts == [(F(2), F(2), 6), (F(4), F(0), 3)]
    rescaled = spectra.rescaled_fiber_spectrum(split, F(2))
    assert rescaled.first_nonzero() == (F(3), 6)

    interval = spectra.g6_11_bound_interval()
    assert tuple(interval) == (F(3), F(5))
    assert interval.pullback_obstruction == F(8)
    assert interval.obstruction_exceeds_upper
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(6, f"tables exact to degree 10, split (4,0,3)+(2,2,6), lambda1=3 mult 6, "
              f"interval (3,5) ({elapsed:.2f}s)")


def test_criterion_7_pointcloud_controls(pointcloud_run):
    by_id = pointcloud_run.by_id
    failures = [r.check_id for r in pointcloud_run.records if r.status == "fail"]
    assert failures == []

    s2 = by_id["s2-lambda1-control"]
    assert abs(s2.computed - 2.0) / 2.0 < 0.12
    s3 = by_id["s3-lambda1-control"]
    assert abs(s3.computed - 3.0) / 3.0 < 0.12
    assert by_id["s2-multiplicity-control"].computed == 3
    assert by_id["s3-multiplicity-control"].computed == 4

    leaf = by_id["m1-otfkm-11-lambda1-estimate"]
    assert abs(leaf.computed - 3.0) / 3.0 < 0.15
    assert by_id["m1-otfkm-11-multiplicity-estimate"].computed == 6

    robustness = by_id["bandwidth-robustness"]
    assert robustness.status == "pass"
    assert robustness.computed < 0.10

    assert pointcloud_run.elapsed < 600.0
    report(7, f"s2 err {abs(s2.computed - 2) / 2:.3f}, s3 err {abs(s3.computed - 3) / 3:.3f}, "
              f"leaf err {abs(leaf.computed - 3) / 3:.3f}, drift {robustness.computed:.3f} "
              f"({pointcloud_run.elapsed:.0f}s)")


def test_criterion_8_determinism(cfg, pointcloud_run):
    def serialize(records):
        return json.dumps([asdict(r) for r in records], sort_keys=True)

    for suite in ("theorem1", "g6-focal", "g4-11", "g4-443", "berger"):
        first = checks.run_suite_checks(suite, cfg)
        second = checks.run_suite_checks(suite, cfg)
        assert first == second
        assert serialize(first) == serialize(second)

    again = checks.run_suite_checks("pointcloud", cfg)
    assert list(again) == list(pointcloud_run.records)
    assert serialize(again) == serialize(pointcloud_run.records)
    report(8, "all six suites bit-identical across re-runs")
