"""Named verification checks bundled into runnable suites.

Every quantitative claim the library certifies is wrapped in a CheckRecord
carrying the claim text, the expected and computed values, the tolerance,
and a pass/fail/assumed/exploratory status.  Checks are grouped into six
suites: the hypersurface-family inequality chain (theorem1), the g = 6
focal-leaf constants (g6-focal), the quaternion-covered small leaf (g4-11),
the homogeneous (4, 3) leaf (g4-443), the exact quotient-sphere spectrum
calculus (berger), and the point-cloud estimator controls (pointcloud).

A suite is a list of Check entries whose ``run`` thunks are lazy: building
a suite costs nothing (that is what --dry-run prints), and each thunk gets
the shared config plus a per-suite scratch dict so expensive intermediates
(sampled clouds, eigensolves) are computed once.  A thunk that raises is
converted into a failing record; one bad check never aborts the suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt
from typing import Callable

import numpy as np
from scipy.linalg import null_space

from . import laplace_pointcloud as lp
from . import shape_operators as so
from . import spectra
from . import tube_integrals as ti
from .clifford_fkm import (
    FocalPoint,
    build_clifford_system,
    fiber_average_Y,
    homogeneity_span_check,
    project_to_focal,
    sigma_double_cover,
    sigma_pushforward,
)

__all__ = [
    "Check",
    "CheckRecord",
    "DEFAULT_POINT_BUDGETS",
    "SUITE_NAMES",
    "build_suite",
    "known_check_ids",
    "run_suite_checks",
    "suite_check_ids",
]

SUITE_NAMES = ("theorem1", "g6-focal", "g4-11", "g4-443", "berger", "pointcloud")

_SQRT3 = sqrt(3.0)


@dataclass(frozen=True)
class CheckRecord:
    """One verified claim: what was expected, what came out, and the verdict."""

    check_id: str
    claim: str
    expected: float | None
    computed: float | None
    abs_err: float | None
    tol: float
    status: str
    detail: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail", "assumed", "exploratory"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "assumed" and self.computed is not None:
            raise ValueError("assumed records carry no computed value")
        if self.abs_err is not None and self.status in ("pass", "fail"):
            if (self.abs_err <= self.tol) != (self.status == "pass"):
                raise ValueError("status must be pass exactly when abs_err <= tol")


@dataclass(frozen=True)
class Check:
    check_id: str
    claim: str
    run: Callable


def _value(cfg, check_id, claim, expected, computed, default_tol, detail=""):
    tol = cfg.tolerance_for(check_id, default_tol)
    err = abs(float(computed) - float(expected))
    return CheckRecord(
        check_id, claim, float(expected), float(computed), err, tol,
        "pass" if err <= tol else "fail", detail,
    )


def _below(cfg, check_id, claim, computed, bound, detail=""):
    """Strict upper bound: computed < bound, overshoot beyond tol fails."""
    tol = cfg.tolerance_for(check_id, 0.0)
    err = max(0.0, float(computed) - float(bound))
    margin = float(bound) - float(computed)
    text = f"margin {margin:.6g}" + (f"; {detail}" if detail else "")
    return CheckRecord(
        check_id, claim, float(bound), float(computed), err, tol,
        "pass" if err <= tol else "fail", text,
    )


def _above(cfg, check_id, claim, computed, bound, detail=""):
    """Strict lower bound: computed > bound."""
    tol = cfg.tolerance_for(check_id, 0.0)
    err = max(0.0, float(bound) - float(computed))
    margin = float(computed) - float(bound)
    text = f"margin {margin:.6g}" + (f"; {detail}" if detail else "")
    return CheckRecord(
        check_id, claim, float(bound), float(computed), err, tol,
        "pass" if err <= tol else "fail", text,
    )


def _exact(cfg, check_id, claim, mismatches, detail=""):
    """Structural equality encoded as a mismatch count that must be zero."""
    tol = cfg.tolerance_for(check_id, 0.0)
    err = float(mismatches)
    return CheckRecord(
        check_id, claim, 0.0, err, err, tol,
        "pass" if err <= tol else "fail", detail,
    )


def _assumed(check_id, claim, detail):
    return CheckRecord(check_id, claim, None, None, None, 0.0, "assumed", detail)


def _child_seed(base: int, index: int) -> int:
    return int(np.random.SeedSequence(base, spawn_key=(index,)).generate_state(1)[0])


# ---------------------------------------------------------------------------
# theorem1: inequality chain for the 12-dimensional hypersurface family

_G_CLOSED = pi / 6.0
_K1_CLOSED = 16.0 * (2.0 - _SQRT3) * (pi / 64.0 + 63.0 * _SQRT3 / 1280.0)


def _kg_report(cfg, ctx):
    if "kg" not in ctx:
        ctx["kg"] = ti.verify_KG_inequalities()
    return ctx["kg"]


def _theorem1_suite() -> list[Check]:
    checks = [
        Check(
            "g-closed-form",
            "total volume integral of the parallel family equals pi/6",
            lambda cfg, ctx: _value(
                cfg, "g-closed-form",
                "total volume integral of the parallel family equals pi/6",
                _G_CLOSED, _kg_report(cfg, ctx).G, 1e-10,
            ),
        ),
        Check(
            "k1-closed-form",
            "first distortion integral equals 16(2-sqrt3)(pi/64 + 63 sqrt3/1280)",
            lambda cfg, ctx: _value(
                cfg, "k1-closed-form",
                "first distortion integral equals 16(2-sqrt3)(pi/64 + 63 sqrt3/1280)",
                _K1_CLOSED, _kg_report(cfg, ctx).K_values[0], 1e-10,
            ),
        ),
        Check(
            "k-pair-symmetry",
            "distortion integrals pair up under reflection of the angle",
            lambda cfg, ctx: _value(
                cfg, "k-pair-symmetry",
                "distortion integrals pair up under reflection of the angle",
                0.0,
                max(
                    abs(_kg_report(cfg, ctx).K_values[i]
                        - _kg_report(cfg, ctx).K_values[5 - i])
                    for i in range(3)
                ),
                1e-10,
            ),
        ),
    ]

    ineq_ids = ("kg-ineq-k1", "kg-ineq-k2", "kg-ineq-k3", "kg-ratio")
    for idx, check_id in enumerate(ineq_ids):
        def run_ineq(cfg, ctx, idx=idx, check_id=check_id):
            ineq = _kg_report(cfg, ctx).checks[idx]
            return _below(cfg, check_id, ineq.label, ineq.lhs, ineq.rhs)
        label = ("K1 < (7/6) G", "K2 < G", "K3 < ((2+sqrt3)/6) G",
                 "2 max(K)/G < 7/3")[idx]
        checks.append(Check(check_id, label, run_ineq))

    def run_lambda15(cfg, ctx):
        value = spectra.sphere_spectrum(13, 1, 4).kth_eigenvalue(15)
        return _value(
            cfg, "lambda15-s13",
            "15th nonzero eigenvalue of the unit 13-sphere is 28",
            28.0, float(value), 0.0,
        )

    def run_bound(cfg, ctx):
        cert = ti.g6_hypersurface_ratio()
        verdict = ti.eigenvalue_bound_from_ratio(
            cert, spectra.sphere_spectrum(13, 1, 17)
        )
        return _above(
            cfg, "hypersurface-implied-bound",
            "lambda_15 lower bound from the volume comparison exceeds 12",
            cert.implied_bound, cert.threshold, detail=verdict.detail,
        )

    def run_comparison(cfg, ctx):
        report = _kg_report(cfg, ctx)
        return _above(
            cfg, "comparison-ratio",
            "eigenvalue comparison constant G/(2 max K) exceeds 3/7",
            report.G / (2.0 * report.K_max), 3.0 / 7.0,
        )

    def run_conclusion(cfg, ctx):
        verdict = spectra.conclude_first_eigenvalue(
            ti.g6_hypersurface_ratio(),
            spectra.minimal_dimension_eigenvalue_record(12, 1),
        )
        bad = int(not (verdict.passed and verdict.lambda1 == 12
                       and verdict.multiplicity == 14))
        return _exact(
            cfg, "hypersurface-lambda1",
            "first eigenvalue of the 12-dimensional hypersurface is 12, multiplicity 14",
            bad, detail=verdict.detail,
        )

    checks += [
        Check("lambda15-s13",
              "15th nonzero eigenvalue of the unit 13-sphere is 28", run_lambda15),
        Check("hypersurface-implied-bound",
              "lambda_15 lower bound from the volume comparison exceeds 12", run_bound),
        Check("comparison-ratio",
              "eigenvalue comparison constant G/(2 max K) exceeds 3/7", run_comparison),
        Check("hypersurface-dim-eigenvalue",
              "12 is an eigenvalue with multiplicity at least 14",
              lambda cfg, ctx: _assumed(
                  "hypersurface-dim-eigenvalue",
                  "12 is an eigenvalue with multiplicity at least 14",
                  "restricted ambient coordinates of a minimal hypersurface",
              )),
        Check("hypersurface-lambda1",
              "first eigenvalue of the 12-dimensional hypersurface is 12, multiplicity 14",
              run_conclusion),
    ]
    return checks


# ---------------------------------------------------------------------------
# g6-focal: shape-operator families and energy constants of the (2,2) leaves

_M2_NORM_CLOSED = pi * pi / 108.0
_M2_ENERGY_CLOSED = (pi / 18.0 - 13.0 * _SQRT3 / 240.0) * pi
_M2_RATIO_CLOSED = 6.0 - 117.0 * _SQRT3 / (20.0 * pi)
_M1_C3_CLOSED = pi / 36.0 - 11.0 * _SQRT3 / 240.0
_M1_C15_CLOSED = pi / 144.0 + 11.0 * _SQRT3 / 1920.0
_M1_C24_CLOSED = pi / 48.0 - 21.0 * _SQRT3 / 640.0
_M1_BOUND_CLOSED = pi * pi / 36.0 + 11.0 * _SQRT3 * pi / 480.0
_M1_RATIO_CLOSED = 3.0 + 99.0 * _SQRT3 / (40.0 * pi)

_THETA_PROBES = (pi / 24.0, pi / 12.0, pi / 8.0, 5.0 * pi / 36.0)


def _random_directions(seed, count, t_margin=0.0):
    rng = np.random.default_rng(seed)
    t = rng.uniform(t_margin, pi - t_margin, size=count)
    s = rng.uniform(0.0, 2.0 * pi, size=count)
    return t, s


def _fam(ctx, which):
    key = ("family", which)
    if key not in ctx:
        ctx[key] = so.build_shape_family(which)
    return ctx[key]


def _shape_trace_residual(fam):
    mats = (fam.A_xi, fam.A_zeta, fam.A_zetabar)
    worst = max(abs(np.trace(m)) for m in mats)
    for i in range(3):
        for j in range(i + 1, 3):
            worst = max(worst, abs(np.trace(mats[i] @ mats[j])))
    return worst


def _eigenvalue_grid_deviation(fam, seed, count=10_000):
    t, s = _random_directions(seed, count)
    coeffs = np.stack(
        [np.cos(t), np.sin(t) * np.cos(s), np.sin(t) * np.sin(s)], axis=1
    )
    if fam.which == "m2":
        stack = np.stack([fam.A_xi, fam.A_zetabar, fam.A_zeta])
    else:
        stack = np.stack([fam.A_xi, fam.A_zeta, fam.A_zetabar])
    matrices = np.einsum("nc,cab->nab", coeffs, stack)
    values = np.linalg.eigvalsh(matrices)
    return float(np.max(np.abs(values - np.sort(so.EIGENVALUES)[None, :])))


def _eigenvector_residual(fam, seed, count=1000):
    t, s = _random_directions(seed, count, t_margin=1e-3)
    worst = 0.0
    for ti_, si_ in zip(t, s):
        system = so.closed_form_eigenbasis(fam, so.NormalDirection(ti_, si_))
        worst = max(worst, system.residual)
    return worst


def _cross_term(fam):
    worst = 0.0
    for theta in _THETA_PROBES:
        matrix = so.fiber_average_matrix(fam, theta)
        off = matrix - np.diag(np.diagonal(matrix))
        worst = max(worst, float(np.max(np.abs(off))))
    return worst


def _fiber_coefficient_deviation(fam):
    worst = 0.0
    for theta in _THETA_PROBES:
        k = ti.g6_focal_pushforward_factors(theta)
        a1_m2 = 0.5 * (k[0] ** 2 + k[1] ** 2 + k[3] ** 2 + k[4] ** 2)
        a3 = 2.0 * k[2] ** 2
        coeffs = so.fiber_average_coefficients(fam, theta)
        if fam.which == "m2":
            expected = (a1_m2, a1_m2, a3, a1_m2, a1_m2)
        else:
            a1 = k[0] ** 2 + k[4] ** 2
            a2 = k[1] ** 2 + k[3] ** 2
            expected = (a1, a2, a3, a2, a1)
        worst = max(worst, float(np.max(np.abs(np.array(coeffs) - expected))))
    return worst


def _g6_focal_suite() -> list[Check]:
    checks = []

    for which, tag in (("m2", "m2"), ("m1", "m1")):
        def run_trace(cfg, ctx, which=which, tag=tag):
            return _value(
                cfg, f"shape-trace-orthogonality-{tag}",
                "shape matrices are traceless and pairwise trace-orthogonal",
                0.0, _shape_trace_residual(_fam(ctx, which)), 1e-12,
            )

        def run_grid(cfg, ctx, which=which, tag=tag):
            seed = _child_seed(cfg.seed_for("g6-focal"), 0 if which == "m2" else 1)
            return _value(
                cfg, f"shape-eigenvalues-{tag}",
                "shape operators keep the fixed quintuple of curvatures",
                0.0, _eigenvalue_grid_deviation(_fam(ctx, which), seed), 1e-9,
            )

        def run_vectors(cfg, ctx, which=which, tag=tag):
            seed = _child_seed(cfg.seed_for("g6-focal"), 2 if which == "m2" else 3)
            return _value(
                cfg, f"eigenvector-residual-{tag}",
                "closed-form eigenvectors solve the eigenproblem",
                0.0, _eigenvector_residual(_fam(ctx, which), seed), 1e-9,
            )

        def run_cross(cfg, ctx, which=which, tag=tag):
            return _value(
                cfg, f"cross-term-{tag}",
                "fiber averaging cancels all off-diagonal couplings",
                0.0, _cross_term(_fam(ctx, which)), 1e-10,
            )

        def run_coeffs(cfg, ctx, which=which, tag=tag):
            return _value(
                cfg, f"fiber-coefficients-{tag}",
                "fiber-averaged gradient coefficients match their closed forms",
                0.0, _fiber_coefficient_deviation(_fam(ctx, which)), 1e-8,
            )

        checks += [
            Check(f"shape-trace-orthogonality-{tag}",
                  "shape matrices are traceless and pairwise trace-orthogonal",
                  run_trace),
            Check(f"shape-eigenvalues-{tag}",
                  "shape operators keep the fixed quintuple of curvatures", run_grid),
            Check(f"eigenvector-residual-{tag}",
                  "closed-form eigenvectors solve the eigenproblem", run_vectors),
            Check(f"cross-term-{tag}",
                  "fiber averaging cancels all off-diagonal couplings", run_cross),
            Check(f"fiber-coefficients-{tag}",
                  "fiber-averaged gradient coefficients match their closed forms",
                  run_coeffs),
        ]

    closed_forms = [
        ("m2-norm-constant", "squared-norm constant equals pi^2/108",
         _M2_NORM_CLOSED, ti.g6_m2_norm_constant),
        ("m2-energy-constant", "energy constant equals (pi/18 - 13 sqrt3/240) pi",
         _M2_ENERGY_CLOSED, ti.g6_m2_energy_constant),
        ("m1-c3", "vertical coefficient equals pi/36 - 11 sqrt3/240",
         _M1_C3_CLOSED, lambda: ti.g6_m1_constants()[0]),
        ("m1-c15", "outer coefficient equals pi/144 + 11 sqrt3/1920",
         _M1_C15_CLOSED, lambda: ti.g6_m1_constants()[1]),
        ("m1-c24", "inner coefficient equals pi/48 - 21 sqrt3/640",
         _M1_C24_CLOSED, lambda: ti.g6_m1_constants()[2]),
        ("m1-bound-constant",
         "energy bound constant equals pi^2/36 + 11 sqrt3 pi/480",
         _M1_BOUND_CLOSED, ti.g6_m1_bound_constant),
    ]
    for check_id, claim, expected, fn in closed_forms:
        def run_cf(cfg, ctx, check_id=check_id, claim=claim, expected=expected, fn=fn):
            return _value(cfg, check_id, claim, expected, fn(), 1e-10)
        checks.append(Check(check_id, claim, run_cf))

    def run_m2_route(cfg, ctx):
        via_fibers = so.energy_constant_via_fibers(_fam(ctx, "m2"))
        return _value(
            cfg, "m2-energy-fiber-route",
            "fiber-average route reproduces the direct energy constant",
            ti.g6_m2_energy_constant(), via_fibers, 1e-8,
        )

    def run_m1_route(cfg, ctx):
        via_fibers = np.array(so.energy_constant_via_fibers(_fam(ctx, "m1")))
        direct = np.array(ti.g6_m1_constants())
        return _value(
            cfg, "m1-constants-fiber-route",
            "fiber-average route reproduces the direct coefficient triple",
            0.0, float(np.max(np.abs(via_fibers - direct))), 1e-8,
        )

    def run_ordering(cfg, ctx):
        c3, c15, c24 = ti.g6_m1_constants()
        return _below(
            cfg, "m1-coefficient-ordering",
            "outer coefficient dominates the other two",
            max(c3, c24), c15,
        )

    def run_m2_ratio(cfg, ctx):
        return _value(
            cfg, "m2-ratio",
            "energy-to-norm ratio equals 6 - 117 sqrt3/(20 pi)",
            _M2_RATIO_CLOSED, ti.g6_m2_ratio().ratio, 1e-10,
        )

    def run_m1_ratio(cfg, ctx):
        return _value(
            cfg, "m1-ratio",
            "energy-to-norm ratio equals 3 + 99 sqrt3/(40 pi)",
            _M1_RATIO_CLOSED, ti.g6_m1_ratio().ratio, 1e-10,
        )

    def run_m2_bound(cfg, ctx):
        cert = ti.g6_m2_ratio()
        verdict = ti.eigenvalue_bound_from_ratio(
            cert, spectra.sphere_spectrum(13, 1, 17)
        )
        return _above(
            cfg, "m2-implied-bound",
            "lambda_15 lower bound for the tridiagonal leaf exceeds 10",
            cert.implied_bound, cert.threshold, detail=verdict.detail,
        )

    def run_m2_conclusion(cfg, ctx):
        verdict = spectra.conclude_first_eigenvalue(
            ti.g6_m2_ratio(), spectra.minimal_dimension_eigenvalue_record(10, 3)
        )
        bad = int(not (verdict.passed and verdict.lambda1 == 10
                       and verdict.multiplicity == 14))
        return _exact(
            cfg, "m2-lambda1",
            "first eigenvalue of the tridiagonal leaf is 10, multiplicity 14",
            bad, detail=verdict.detail,
        )

    def run_m1_open(cfg, ctx):
        cert = ti.g6_m1_ratio()
        return CheckRecord(
            "m1-lambda1-open",
            "energy bound cannot reach the leaf dimension; lambda_1 stays open",
            None, cert.implied_bound, None,
            cfg.tolerance_for("m1-lambda1-open", 0.0), "exploratory",
            f"implied bound {cert.implied_bound:.6g} < 10; {cert.claim}",
        )

    checks += [
        Check("m2-energy-fiber-route",
              "fiber-average route reproduces the direct energy constant",
              run_m2_route),
        Check("m1-constants-fiber-route",
              "fiber-average route reproduces the direct coefficient triple",
              run_m1_route),
        Check("m1-coefficient-ordering",
              "outer coefficient dominates the other two", run_ordering),
        Check("m2-ratio",
              "energy-to-norm ratio equals 6 - 117 sqrt3/(20 pi)", run_m2_ratio),
        Check("m1-ratio",
              "energy-to-norm ratio equals 3 + 99 sqrt3/(40 pi)", run_m1_ratio),
        Check("m2-implied-bound",
              "lambda_15 lower bound for the tridiagonal leaf exceeds 10",
              run_m2_bound),
        Check("m2-dim-eigenvalue",
              "10 is an eigenvalue with multiplicity at least 14",
              lambda cfg, ctx: _assumed(
                  "m2-dim-eigenvalue",
                  "10 is an eigenvalue with multiplicity at least 14",
                  "restricted ambient coordinates of a minimal submanifold",
              )),
        Check("m2-lambda1",
              "first eigenvalue of the tridiagonal leaf is 10, multiplicity 14",
              run_m2_conclusion),
        Check("m1-lambda1-open",
              "energy bound cannot reach the leaf dimension; lambda_1 stays open",
              run_m1_open),
    ]
    return checks


# ---------------------------------------------------------------------------
# g4-11: the quaternion double cover of the small Clifford leaf

def _g4_11_suite() -> list[Check]:
    def quaternion_batch(cfg, ctx, count=256):
        if "quaternions" not in ctx:
            seed = _child_seed(cfg.seed_for("g4-11"), 0)
            rng = np.random.default_rng(seed)
            a = rng.normal(size=(count, 4))
            ctx["quaternions"] = a / np.linalg.norm(a, axis=1, keepdims=True)
        return ctx["quaternions"]

    def run_anticommute(cfg, ctx):
        sys = build_clifford_system(1, 3)
        stacked = sys.stacked()
        anti = np.einsum("aij,bjk->abik", stacked, stacked)
        anti = anti + anti.transpose(1, 0, 2, 3)
        expected = 2.0 * np.einsum(
            "ab,ik->abik", np.eye(len(stacked)), np.eye(sys.ambient_dim)
        )
        return _value(
            cfg, "clifford-anticommutation-11",
            "generator pairs anticommute to twice the identity",
            0.0, float(np.max(np.abs(anti - expected))), 0.0,
        )

    def run_norm(cfg, ctx):
        image = sigma_double_cover(quaternion_batch(cfg, ctx))
        return _value(
            cfg, "sigma-unit-norm",
            "the double cover lands on the unit sphere",
            0.0, float(np.max(np.abs(np.linalg.norm(image, axis=1) - 1.0))), 1e-12,
        )

    def run_constraints(cfg, ctx):
        image = sigma_double_cover(quaternion_batch(cfg, ctx))
        cloud = lp.PointCloud(6, 3, image, "m1-otfkm-11", 0)
        return _value(
            cfg, "sigma-leaf-constraints",
            "images satisfy the orthogonal equal-norm pair equations",
            0.0, float(np.max(lp.constraint_residuals(cloud))), 1e-12,
        )

    def run_frame(cfg, ctx):
        from .clifford_fkm import _qmul

        a = quaternion_batch(cfg, ctx)
        units = np.eye(4)[1:]
        expected = (4.0, 2.0, 2.0)
        worst = 0.0
        for unit, target in zip(units, expected):
            tangent = _qmul(a, unit)
            push = np.stack([sigma_pushforward(q, x) for q, x in zip(a, tangent)])
            norms = np.einsum("ij,ij->i", push, push)
            worst = max(worst, float(np.max(np.abs(norms - target))))
        return _value(
            cfg, "sigma-frame-norms",
            "pushforward frame has squared norms (4, 2, 2)",
            0.0, worst, 1e-10,
        )

    def run_gram(cfg, ctx):
        a = quaternion_batch(cfg, ctx)[:64]
        image = sigma_double_cover(a)
        direct = image @ image.T
        via_quaternions = lp.berger_metric_gram(a)
        return _value(
            cfg, "covering-gram-identity",
            "pairwise inner products computed on the quaternion side agree",
            0.0, float(np.max(np.abs(direct - via_quaternions))), 1e-12,
        )

    def rescaled(cfg, ctx):
        if "rescaled" not in ctx:
            split = spectra.hopf_split_s3_quotient(10)
            ctx["rescaled"] = spectra.rescaled_fiber_spectrum(split, 2)
        return ctx["rescaled"]

    def run_lambda1(cfg, ctx):
        value, _ = rescaled(cfg, ctx).first_nonzero()
        return _value(
            cfg, "m1-11-lambda1",
            "first eigenvalue of the covered leaf is 3",
            3.0, float(value), 0.0,
        )

    def run_multiplicity(cfg, ctx):
        _, mult = rescaled(cfg, ctx).first_nonzero()
        return _value(
            cfg, "m1-11-multiplicity",
            "the first eigenvalue has multiplicity 6",
            6.0, float(mult), 0.0,
        )

    return [
        Check("clifford-anticommutation-11",
              "generator pairs anticommute to twice the identity", run_anticommute),
        Check("sigma-unit-norm",
              "the double cover lands on the unit sphere", run_norm),
        Check("sigma-leaf-constraints",
              "images satisfy the orthogonal equal-norm pair equations",
              run_constraints),
        Check("sigma-frame-norms",
              "pushforward frame has squared norms (4, 2, 2)", run_frame),
        Check("covering-gram-identity",
              "pairwise inner products computed on the quaternion side agree",
              run_gram),
        Check("m1-11-lambda1",
              "first eigenvalue of the covered leaf is 3", run_lambda1),
        Check("m1-11-multiplicity",
              "the first eigenvalue has multiplicity 6", run_multiplicity),
    ]


# ---------------------------------------------------------------------------
# g4-443: the homogeneous four-curvature leaf in the 15-sphere

_443_NORM_CLOSED = 1.0 / 560.0
_443_ENERGY_CLOSED = 17.0 / 2400.0 - pi / 1280.0
_443_RATIO_CLOSED = 119.0 / 30.0 - 7.0 * pi / 16.0


def _focal_sample(cfg, ctx, count):
    key = ("focal", count)
    if key not in ctx:
        sys = build_clifford_system(4, 8)
        rng = np.random.default_rng(_child_seed(cfg.seed_for("g4-443"), 0))
        points = []
        while len(points) < count:
            x0 = rng.normal(size=16)
            points.append(project_to_focal(sys, x0 / np.linalg.norm(x0), "M1"))
        ctx[key] = (sys, points)
    return ctx[key]


def _g4_443_suite() -> list[Check]:
    def run_anticommute(cfg, ctx):
        sys = build_clifford_system(4, 8)
        stacked = sys.stacked()
        anti = np.einsum("aij,bjk->abik", stacked, stacked)
        anti = anti + anti.transpose(1, 0, 2, 3)
        expected = 2.0 * np.einsum(
            "ab,ik->abik", np.eye(len(stacked)), np.eye(sys.ambient_dim)
        )
        return _value(
            cfg, "clifford-anticommutation-443",
            "all ten generator pairs anticommute to twice the identity",
            0.0, float(np.max(np.abs(anti - expected))), 1e-14,
        )

    def run_projection(cfg, ctx):
        _, points = _focal_sample(cfg, ctx, 100)
        return _value(
            cfg, "focal-projection-residual",
            "projected points satisfy both leaf constraints",
            0.0, max(p.residual for p in points), 1e-10,
        )

    def run_span(cfg, ctx):
        sys, points = _focal_sample(cfg, ctx, 100)
        ranks = [homogeneity_span_check(sys, p) for p in points]
        return _exact(
            cfg, "span-rank-100",
            "quadratic orbit directions span the full tangent space",
            sum(1 for r in ranks if r != 10),
            detail=f"rank 10 at {ranks.count(10)}/100 points",
        )

    def run_mc(cfg, ctx):
        sys, points = _focal_sample(cfg, ctx, 100)
        p = points[0]
        rng = np.random.default_rng(_child_seed(cfg.seed_for("g4-443"), 1))
        from .clifford_fkm import tangent_split

        split = tangent_split(sys, p, rng.normal(size=16))
        x = split.tangent_part / np.linalg.norm(split.tangent_part)
        batches = np.array([
            fiber_average_Y(sys, p, x, n_mc=10_000,
                            seed=_child_seed(cfg.seed_for("g4-443"), 10 + b))
            for b in range(10)
        ])
        means = batches.mean(axis=0)
        errors = batches.std(axis=0, ddof=1) / sqrt(batches.shape[0])
        targets = np.array([0.4, 0.3, 0.3])
        z = float(np.max(np.abs(means - targets) / errors))
        detail = ", ".join(
            f"{m:.5f} +- {e:.5f} (target {t})"
            for m, e, t in zip(means, errors, targets)
        )
        return _below(
            cfg, "mc-fiber-averages",
            "Monte-Carlo eigenspace weights match (2/5, 3/10, 3/10) within 3 sigma",
            z, 3.0, detail=detail,
        )

    closed_forms = [
        ("norm-constant-443", "squared-norm constant equals 1/560",
         _443_NORM_CLOSED, lambda: ti.g4_443_constants()[1]),
        ("energy-constant-443", "energy constant equals 17/2400 - pi/1280",
         _443_ENERGY_CLOSED, lambda: ti.g4_443_constants()[0]),
        ("ratio-443", "energy-to-norm ratio equals 119/30 - 7 pi/16",
         _443_RATIO_CLOSED, lambda: ti.g4_443_ratio().ratio),
    ]
    checks = [
        Check("clifford-anticommutation-443",
              "all ten generator pairs anticommute to twice the identity",
              run_anticommute),
        Check("focal-projection-residual",
              "projected points satisfy both leaf constraints", run_projection),
        Check("span-rank-100",
              "quadratic orbit directions span the full tangent space", run_span),
        Check("mc-fiber-averages",
              "Monte-Carlo eigenspace weights match (2/5, 3/10, 3/10) within 3 sigma",
              run_mc),
    ]
    for check_id, claim, expected, fn in closed_forms:
        def run_cf(cfg, ctx, check_id=check_id, claim=claim, expected=expected, fn=fn):
            return _value(cfg, check_id, claim, expected, fn(), 1e-10)
        checks.append(Check(check_id, claim, run_cf))

    def run_lambda17(cfg, ctx):
        value = spectra.sphere_spectrum(15, 1, 4).kth_eigenvalue(17)
        return _value(
            cfg, "lambda17-s15",
            "17th nonzero eigenvalue of the unit 15-sphere is 32",
            32.0, float(value), 0.0,
        )

    def run_bound(cfg, ctx):
        cert = ti.g4_443_ratio()
        verdict = ti.eigenvalue_bound_from_ratio(
            cert, spectra.sphere_spectrum(15, 1, 19)
        )
        return _above(
            cfg, "implied-bound-443",
            "lambda_17 lower bound exceeds 12",
            cert.implied_bound, cert.threshold, detail=verdict.detail,
        )

    def run_conclusion(cfg, ctx):
        verdict = spectra.conclude_first_eigenvalue(
            ti.g4_443_ratio(), spectra.minimal_dimension_eigenvalue_record(10, 5)
        )
        bad = int(not (verdict.passed and verdict.lambda1 == 10
                       and verdict.multiplicity == 16))
        return _exact(
            cfg, "m1-443-lambda1",
            "first eigenvalue of the homogeneous leaf is 10, multiplicity 16",
            bad, detail=verdict.detail,
        )

    checks += [
        Check("lambda17-s15",
              "17th nonzero eigenvalue of the unit 15-sphere is 32", run_lambda17),
        Check("implied-bound-443", "lambda_17 lower bound exceeds 12", run_bound),
        Check("m1-443-dim-eigenvalue",
              "10 is an eigenvalue with multiplicity at least 16",
              lambda cfg, ctx: _assumed(
                  "m1-443-dim-eigenvalue",
                  "10 is an eigenvalue with multiplicity at least 16",
                  "restricted ambient coordinates of a minimal submanifold",
              )),
        Check("m1-443-lambda1",
              "first eigenvalue of the homogeneous leaf is 10, multiplicity 16",
              run_conclusion),
    ]
    return checks


# ---------------------------------------------------------------------------
# berger: exact spectrum calculus for the quotient 3-sphere bundle

def _table_mismatches(spectrum, formula):
    """Count entries of an exact spectrum that miss the reference formula."""
    bad = 0
    for k, (value, mult) in enumerate(spectrum.entries):
        expected_value, expected_mult = formula(k)
        if value != expected_value or mult != expected_mult:
            bad += 1
    return bad


def _berger_suite() -> list[Check]:
    rows = [
        ("table1-s1-unit", "unit circle spectrum is (k^2, 2)",
         lambda: spectra.sphere_spectrum(1, 1, 10),
         lambda k: (k * k, 2 if k else 1)),
        ("table1-s2-half", "half-radius 2-sphere spectrum is (2k(k+1), 2k+1)",
         lambda: spectra.sphere_spectrum(2, "1/2", 10),
         lambda k: (2 * k * (k + 1), 2 * k + 1)),
        ("table1-s1-half", "half-radius circle spectrum is (2k^2, 2)",
         lambda: spectra.sphere_spectrum(1, "1/2", 10),
         lambda k: (2 * k * k, 2 if k else 1)),
        ("table1-s3-quotient",
         "quotient 3-sphere spectrum is (2k(k+1), (2k+1)^2)",
         lambda: spectra.antipodal_quotient_spectrum(3, 2, 10),
         lambda k: (2 * k * (k + 1), (2 * k + 1) ** 2)),
    ]
    checks = []
    for check_id, claim, build, formula in rows:
        def run_row(cfg, ctx, check_id=check_id, claim=claim, build=build,
                    formula=formula):
            return _exact(cfg, check_id, claim, _table_mismatches(build(), formula))
        checks.append(Check(check_id, claim, run_row))

    def split(ctx):
        if "split" not in ctx:
            ctx["split"] = spectra.hopf_split_s3_quotient(10)
        return ctx["split"]

    def run_split4(cfg, ctx):
        parts = split(ctx).splitting_at(4)
        got = sorted((s.base_part, s.fiber_part, s.dimension) for s in parts)
        bad = int(got != [(2, 2, 6), (4, 0, 3)])
        return _exact(
            cfg, "hopf-split-lambda4",
            "eigenvalue 4 splits into 3 base pullbacks plus 6 mixed functions",
            bad, detail=f"split {got}",
        )

    def run_rescaled(cfg, ctx):
        value, mult = spectra.rescaled_fiber_spectrum(split(ctx), 2).first_nonzero()
        bad = int((value, mult) != (3, 6))
        return _exact(
            cfg, "berger-rescaled-lambda1",
            "fiber rescaling by sqrt2 moves the first eigenvalue to 3, multiplicity 6",
            bad, detail=f"first nonzero ({value}, {mult})",
        )

    def run_identity(cfg, ctx):
        total = spectra.antipodal_quotient_spectrum(3, 2, 10)
        rescaled = spectra.rescaled_fiber_spectrum(split(ctx), 1)
        bad = int(rescaled.entries != total.entries)
        return _exact(
            cfg, "berger-t1-identity",
            "rescaling by 1 reproduces the quotient spectrum entrywise",
            bad,
        )

    def run_interval(cfg, ctx):
        interval = spectra.g6_11_bound_interval()
        lower, upper = interval
        bad = int(not (lower == 3 and upper == 5
                       and interval.obstruction_exceeds_upper))
        detail = (
            f"lower {lower}, upper {upper}, pullback obstruction "
            f"{interval.pullback_obstruction} > 5: "
            f"{interval.obstruction_exceeds_upper}; unit 3-sphere head "
            f"{[(int(v), m) for v, m in interval.sphere_head]}"
        )
        return _exact(
            cfg, "interval-3-5",
            "first eigenvalue of the 5-dimensional leaf lies in [3, 5]",
            bad, detail=detail,
        )

    checks += [
        Check("hopf-split-lambda4",
              "eigenvalue 4 splits into 3 base pullbacks plus 6 mixed functions",
              run_split4),
        Check("berger-rescaled-lambda1",
              "fiber rescaling by sqrt2 moves the first eigenvalue to 3, multiplicity 6",
              run_rescaled),
        Check("berger-t1-identity",
              "rescaling by 1 reproduces the quotient spectrum entrywise",
              run_identity),
        Check("interval-3-5",
              "first eigenvalue of the 5-dimensional leaf lies in [3, 5]",
              run_interval),
    ]
    return checks


# ---------------------------------------------------------------------------
# pointcloud: estimator controls and the direct probe of the covered leaf

DEFAULT_POINT_BUDGETS = {
    "m1-otfkm-11": 5000,
    "s2": 3000,
    "s3": 4000,
    "s2-quotient": 3000,
    "s3-quotient": 4000,
    "m1-fkm-443": 100,
    "determinism": 1200,
}

_CLOUD_SEED_INDEX = {
    "m1-otfkm-11": 0,
    "s2": 1,
    "s3": 2,
    "s2-quotient": 3,
    "s3-quotient": 4,
    "m1-fkm-443": 5,
    "determinism": 6,
}

# (expected lambda_1, relative tolerance, expected cluster size) per control;
# sphere tolerances match the calibration band, the leaf gets the wider band
# carried over from the matching-dimension control error.
_CONTROL_TARGETS = {
    "s2": (2.0, 0.12, 3),
    "s3": (3.0, 0.12, 4),
    "s2-quotient": (6.0, 0.15, 5),
    "s3-quotient": (4.0, 0.12, 9),
    "m1-otfkm-11": (3.0, 0.15, 6),
}


def _cloud(cfg, ctx, label):
    n = cfg.points_for(label, DEFAULT_POINT_BUDGETS[label])
    seed = _child_seed(cfg.seed_for("pointcloud"), _CLOUD_SEED_INDEX[label])
    key = ("cloud", label)
    if key not in ctx:
        ctx[key] = lp.sample_manifold(label, n, seed)
    return ctx[key]


def _estimate(cfg, ctx, label):
    key = ("estimate", label)
    if key not in ctx:
        ctx[key] = lp.estimate_lambda1(_cloud(cfg, ctx, label))
    return ctx[key]


def _pointcloud_suite() -> list[Check]:
    def run_sampler(cfg, ctx):
        residual = float(np.max(lp.constraint_residuals(_cloud(cfg, ctx, "m1-otfkm-11"))))
        return _value(
            cfg, "m1-11-sampler-constraints",
            "sampled points satisfy the leaf equations",
            0.0, residual, 1e-12,
        )

    def run_constant_mode(cfg, ctx):
        cloud = _cloud(cfg, ctx, "m1-otfkm-11")
        laplacian = lp.build_kernel_laplacian(
            cloud, lp.default_bandwidth(cloud.n, cloud.intrinsic_dim)
        )
        return _value(
            cfg, "constant-mode-residual",
            "the kernel Laplacian annihilates constants",
            0.0, laplacian.constant_mode_residual(), 1e-10,
        )

    checks = [
        Check("m1-11-sampler-constraints",
              "sampled points satisfy the leaf equations", run_sampler),
        Check("constant-mode-residual",
              "the kernel Laplacian annihilates constants", run_constant_mode),
    ]

    for label in ("s2", "s3", "s2-quotient", "s3-quotient", "m1-otfkm-11"):
        expected, rel_tol, cluster = _CONTROL_TARGETS[label]
        suffix = "estimate" if label == "m1-otfkm-11" else "control"

        def run_value(cfg, ctx, label=label, expected=expected, rel_tol=rel_tol,
                      suffix=suffix):
            est = _estimate(cfg, ctx, label)
            return _value(
                cfg, f"{label}-lambda1-{suffix}",
                f"first eigenvalue recovered within {rel_tol:.0%}",
                expected, est.lambda1, rel_tol * expected,
                detail=f"bandwidth {est.diagnostics['bandwidth']:.5f}",
            )

        def run_cluster(cfg, ctx, label=label, cluster=cluster, suffix=suffix):
            est = _estimate(cfg, ctx, label)
            return _value(
                cfg, f"{label}-multiplicity-{suffix}",
                f"first cluster has size {cluster}",
                float(cluster), float(est.multiplicity), 0.0,
                detail=f"clusters {est.diagnostics['clusters'][:3]}",
            )

        checks += [
            Check(f"{label}-lambda1-{suffix}",
                  "first eigenvalue recovered within the calibration band",
                  run_value),
            Check(f"{label}-multiplicity-{suffix}",
                  "first cluster has the expected size", run_cluster),
        ]

    def run_second_cluster(cfg, ctx):
        est = _estimate(cfg, ctx, "s2")
        value, size = est.diagnostics["clusters"][1]
        return _value(
            cfg, "s2-second-cluster",
            "second eigenvalue cluster of the round 2-sphere sits near 6",
            6.0, value, 0.9, detail=f"cluster size {size}",
        )

    def run_covering(cfg, ctx):
        cloud = _cloud(cfg, ctx, "m1-otfkm-11")
        report = lp.covering_consistency(cloud.n, cloud.seed)
        return _value(
            cfg, "covering-consistency",
            "embedded and quaternion-side estimates coincide",
            0.0, report["difference"], 1e-8,
            detail=f"embedded {report['embedded']:.6f}, gram {report['gram']:.6f}",
        )

    def run_robustness(cfg, ctx):
        report = lp.bandwidth_robustness(_cloud(cfg, ctx, "m1-otfkm-11"))
        return _below(
            cfg, "bandwidth-robustness",
            "estimate drifts less than 10% under bandwidth scaling by sqrt2",
            report["drift"], 0.10,
            detail=", ".join(f"{k} {v:.5f}" for k, v in report["estimates"].items()),
        )

    def run_determinism(cfg, ctx):
        n = cfg.points_for("determinism", DEFAULT_POINT_BUDGETS["determinism"])
        seed = _child_seed(cfg.seed_for("pointcloud"),
                           _CLOUD_SEED_INDEX["determinism"])

        def spectrum_once():
            cloud = lp.sample_m1_11(n, seed)
            laplacian = lp.build_kernel_laplacian(
                cloud, lp.default_bandwidth(n, cloud.intrinsic_dim)
            )
            return lp.lowest_spectrum(laplacian, 16).values

        first, second = spectrum_once(), spectrum_once()
        return _value(
            cfg, "estimate-determinism",
            "repeated runs with one seed agree bit for bit",
            0.0, float(np.max(np.abs(first - second))), 0.0,
        )

    def run_443_constraints(cfg, ctx):
        cloud = _cloud(cfg, ctx, "m1-fkm-443")
        return _value(
            cfg, "m1-443-constraints",
            "projected sample satisfies the quartic leaf equations",
            0.0, float(np.max(lp.constraint_residuals(cloud))), 1e-10,
            detail=f"projection retries {cloud.projection_retries}",
        )

    def focal_points_443(cfg, ctx, count=20):
        key = ("focal-443", count)
        if key not in ctx:
            sys = build_clifford_system(4, 8)
            cloud = _cloud(cfg, ctx, "m1-fkm-443")
            residuals = lp.constraint_residuals(cloud)
            points = [
                FocalPoint(cloud.points[i].copy(), "M1", float(residuals[i]))
                for i in range(count)
            ]
            ctx[key] = (sys, points)
        return ctx[key]

    def run_443_span(cfg, ctx):
        sys, points = focal_points_443(cfg, ctx)
        ranks = [homogeneity_span_check(sys, p) for p in points]
        return _exact(
            cfg, "m1-443-span",
            "orbit directions span the tangent space at sampled points",
            sum(1 for r in ranks if r != 10),
        )

    def run_443_profile(cfg, ctx):
        sys, points = focal_points_443(cfg, ctx)
        rng = np.random.default_rng(_child_seed(cfg.seed_for("pointcloud"), 7))
        target = np.array([-1.0] * 3 + [0.0] * 4 + [1.0] * 3)
        worst = 0.0
        for p in points:
            a = rng.normal(size=5)
            a /= np.linalg.norm(a)
            p_a = np.einsum("b,bij->ij", a, sys.stacked())
            frame = np.concatenate(
                [p.coordinates[None, :], sys.stacked() @ p.coordinates]
            )
            basis = null_space(frame)
            operator = -basis.T @ p_a @ basis
            values = np.sort(np.linalg.eigvalsh(operator))
            worst = max(worst, float(np.max(np.abs(values - target))))
        return _value(
            cfg, "m1-443-shape-profile",
            "shape spectrum is (1, 0, -1) with multiplicities (3, 4, 3)",
            0.0, worst, 1e-9,
        )

    checks += [
        Check("s2-second-cluster",
              "second eigenvalue cluster of the round 2-sphere sits near 6",
              run_second_cluster),
        Check("covering-consistency",
              "embedded and quaternion-side estimates coincide", run_covering),
        Check("bandwidth-robustness",
              "estimate drifts less than 10% under bandwidth scaling by sqrt2",
              run_robustness),
        Check("estimate-determinism",
              "repeated runs with one seed agree bit for bit", run_determinism),
        Check("m1-443-constraints",
              "projected sample satisfies the quartic leaf equations",
              run_443_constraints),
        Check("m1-443-span",
              "orbit directions span the tangent space at sampled points",
              run_443_span),
        Check("m1-443-shape-profile",
              "shape spectrum is (1, 0, -1) with multiplicities (3, 4, 3)",
              run_443_profile),
    ]
    return checks


# ---------------------------------------------------------------------------
# assembly

_SUITE_BUILDERS = {
    "theorem1": _theorem1_suite,
    "g6-focal": _g6_focal_suite,
    "g4-11": _g4_11_suite,
    "g4-443": _g4_443_suite,
    "berger": _berger_suite,
    "pointcloud": _pointcloud_suite,
}


def build_suite(name: str) -> list[Check]:
    if name == "all":
        return [check for suite in SUITE_NAMES for check in build_suite(suite)]
    if name not in _SUITE_BUILDERS:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    return _SUITE_BUILDERS[name]()


def suite_check_ids(name: str) -> list[str]:
    return [check.check_id for check in build_suite(name)]


def known_check_ids() -> frozenset[str]:
    return frozenset(suite_check_ids("all"))


def run_suite_checks(name: str, cfg) -> list[CheckRecord]:
    """Run one suite (or ``all``); failures are recorded, never raised."""
    if name == "all":
        return [r for suite in SUITE_NAMES for r in run_suite_checks(suite, cfg)]
    records = []
    ctx: dict = {}
    for check in build_suite(name):
        try:
            records.append(check.run(cfg, ctx))
        except Exception as exc:  # noqa: BLE001 - suite must keep going
            records.append(
                CheckRecord(
                    check.check_id, check.claim, None, None, None,
                    0.0, "fail", f"{type(exc).__name__}: {exc}",
                )
            )
    return records
