"""Graph-Laplacian eigenvalue estimates on sampled submanifolds.

A Gaussian kernel on extrinsic (chordal) distances, density-normalized in
the Coifman-Lafon sense and rescaled by the bandwidth, has a low spectrum
converging to Laplace-Beltrami eigenvalues of the sampled manifold.  The
estimator here recovers the first nonzero eigenvalue and its multiplicity
cluster.  It is calibrated on round-sphere controls, where the exact
spectrum is known, and applied to the quaternion-covered leaf of the
small Clifford system, whose expected first eigenvalue 3 with a cluster
of 6 it reproduces within the sphere-calibrated tolerance.

Antipodal quotients are handled at the distance level: identifying x with
-x replaces the chordal distance by the smaller of the two lifts, which
drops every odd-degree harmonic cluster from the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .clifford_fkm import (
    _qconj,
    _qmul,
    build_clifford_system,
    project_to_focal,
    sigma_double_cover,
)
from .clifford_fkm import NoConvergence as ProjectionNoConvergence

__all__ = [
    "AmbiguousClustering",
    "BANDWIDTH_CONSTANTS",
    "DisconnectedGraph",
    "EigenEstimate",
    "EstimateConfig",
    "KernelLaplacian",
    "Lambda1Estimate",
    "MANIFOLDS",
    "ManifoldInfo",
    "NoConvergence",
    "PointCloud",
    "UnsupportedDimension",
    "bandwidth_robustness",
    "berger_metric_gram",
    "build_kernel_laplacian",
    "cluster_values",
    "constraint_residuals",
    "covering_consistency",
    "default_bandwidth",
    "estimate_lambda1",
    "lowest_spectrum",
    "sample_m1_11",
    "sample_m1_443",
    "sample_manifold",
    "sample_sphere",
]


class DisconnectedGraph(RuntimeError):
    """Kernel graph fell apart; the bandwidth is far too small."""


class AmbiguousClustering(RuntimeError):
    """No spectral gap exceeds the threshold; carries the raw values."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class UnsupportedDimension(ValueError):
    """λ₁ estimation refused or gated for this intrinsic dimension."""


class NoConvergence(RuntimeError):
    """Eigensolver did not converge; carries whatever it produced."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


# Bandwidth ε = c·n^(-1/(d+4)); c per intrinsic dimension, frozen from the
# sphere-control calibration scan (see scripts/calibrate_bandwidth.py).
BANDWIDTH_CONSTANTS = {1: 0.5, 2: 0.15, 3: 0.12}
_EXPLORATORY_CONSTANT = 0.3


class ManifoldInfo(NamedTuple):
    ambient_dim: int
    intrinsic_dim: int
    antipodal: bool
    r_squared: float


MANIFOLDS = {
    "m1-otfkm-11": ManifoldInfo(6, 3, False, 1.0),
    "m1-fkm-443": ManifoldInfo(16, 12, False, 1.0),
    "s2": ManifoldInfo(3, 2, False, 1.0),
    "s3": ManifoldInfo(4, 3, False, 1.0),
    "s2-quotient": ManifoldInfo(3, 2, True, 1.0),
    "s3-quotient": ManifoldInfo(4, 3, True, 2.0),
}


def default_bandwidth(n: int, intrinsic_dim: int, constant: float | None = None) -> float:
    c = BANDWIDTH_CONSTANTS.get(intrinsic_dim, _EXPLORATORY_CONSTANT) if constant is None else constant
    return c * float(n) ** (-1.0 / (intrinsic_dim + 4))


@dataclass(frozen=True)
class PointCloud:
    ambient_dim: int
    intrinsic_dim: int
    points: np.ndarray
    label: str
    seed: int
    identify_antipodes: bool = False
    projection_retries: int = 0

    @property
    def n(self) -> int:
        return self.points.shape[0]


def _unit_quaternions(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, 4))
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def sample_sphere(
    n: int, dim: int, radius: float = 1.0, seed: int = 0, antipodal: bool = False
) -> PointCloud:
    """Uniform points on the round sphere of the given dimension and radius."""
    if n < 100:
        raise ValueError("need at least 100 points")
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, dim + 1))
    x *= radius / np.linalg.norm(x, axis=1, keepdims=True)
    label = f"s{dim}-quotient" if antipodal else f"s{dim}"
    return PointCloud(dim + 1, dim, x, label, seed, identify_antipodes=antipodal)


def sample_m1_11(n: int, seed: int = 0) -> PointCloud:
    """Uniform sample of the quaternion-covered (1, 3) leaf in R⁶.

    Uniform unit quaternions push forward to the normalized Riemannian
    measure of the induced (Berger) metric: the covering map has constant
    frame distortion, so no reweighting is needed.
    """
    if n < 100:
        raise ValueError("need at least 100 points")
    points = sigma_double_cover(_unit_quaternions(n, seed))
    return PointCloud(6, 3, points, "m1-otfkm-11", seed)


def sample_m1_443(n: int, seed: int = 0) -> PointCloud:
    """Project random 15-sphere points onto the F = +1 leaf of the (4, 8) system.

    Twelve-dimensional, so far beyond λ₁-estimation reach; used for the
    constraint and shape-operator consistency checks.  Starts that fail to
    converge are resampled, with the retry count recorded on the cloud.
    """
    if n < 100:
        raise ValueError("need at least 100 points")
    sys = build_clifford_system(4, 8)
    rng = np.random.default_rng(seed)
    points = np.empty((n, 16))
    retries = 0
    filled = 0
    while filled < n:
        x0 = rng.normal(size=16)
        x0 /= np.linalg.norm(x0)
        try:
            points[filled] = project_to_focal(sys, x0, "M1", tol=1e-12).coordinates
            filled += 1
        except ProjectionNoConvergence:
            retries += 1
            if retries > 10 * n:
                raise
    return PointCloud(16, 12, points, "m1-fkm-443", seed, projection_retries=retries)


def sample_manifold(name: str, n: int, seed: int = 0) -> PointCloud:
    """Samplers by registry name."""
    if name == "m1-otfkm-11":
        return sample_m1_11(n, seed)
    if name == "m1-fkm-443":
        return sample_m1_443(n, seed)
    if name in MANIFOLDS:
        info = MANIFOLDS[name]
        cloud = sample_sphere(
            n, info.intrinsic_dim, np.sqrt(info.r_squared), seed, antipodal=info.antipodal
        )
        assert cloud.label == name
        return cloud
    raise ValueError(f"unknown manifold {name!r}; known: {sorted(MANIFOLDS)}")


def constraint_residuals(cloud: PointCloud) -> np.ndarray:
    """Per-point violation of the manifold's defining equations."""
    info = MANIFOLDS[cloud.label]
    pts = cloud.points
    sphere_res = np.abs(np.einsum("ij,ij->i", pts, pts) - info.r_squared)
    if cloud.label == "m1-otfkm-11":
        x, y = pts[:, :3], pts[:, 3:]
        return np.max(
            [
                np.abs(np.einsum("ij,ij->i", x, y)),
                np.abs(np.einsum("ij,ij->i", x, x) - 0.5),
                np.abs(np.einsum("ij,ij->i", y, y) - 0.5),
            ],
            axis=0,
        )
    if cloud.label == "m1-fkm-443":
        sys = build_clifford_system(4, 8)
        forms = np.einsum("aij,nj,ni->na", sys.stacked(), pts, pts)
        value = np.einsum("ij,ij->i", pts, pts) ** 2 - 2.0 * np.einsum(
            "na,na->n", forms, forms
        )
        return np.maximum(np.abs(value - 1.0), sphere_res)
    return sphere_res


def berger_metric_gram(quaternions: np.ndarray) -> np.ndarray:
    """Gram matrix of the covered leaf computed on the quaternion side.

    ⟨σ(a), σ(b)⟩ depends only on q = ā·b; evaluating the conjugation form
    directly gives the same pairwise geometry as embedding the points,
    which is the covering-consistency check for the estimator.
    """
    a = np.asarray(quaternions, dtype=float)
    q = _qmul(_qconj(a)[:, None, :], a[None, :, :])
    j_part = _qmul(_qmul(q, np.array([0.0, 0.0, 1.0, 0.0])), _qconj(q))[..., 2]
    k_part = _qmul(_qmul(q, np.array([0.0, 0.0, 0.0, 1.0])), _qconj(q))[..., 3]
    return 0.5 * (j_part + k_part)


def _pairwise_sq_distances(points: np.ndarray, identify_antipodes: bool) -> np.ndarray:
    gram = points @ points.T
    sq_norms = np.einsum("ij,ij->i", points, points)
    d2 = sq_norms[:, None] + sq_norms[None, :] - 2.0 * gram
    if identify_antipodes:
        d2 = np.minimum(d2, sq_norms[:, None] + sq_norms[None, :] + 2.0 * gram)
    np.maximum(d2, 0.0, out=d2)
    return d2


@dataclass(frozen=True)
class KernelLaplacian:
    """Density-normalized Gaussian kernel in symmetric form.

    ``matrix`` is the symmetric operator S = D̃^{-1/2} W̃ D̃^{-1/2}; the
    graph Laplacian acting on functions is (Id - D̃^{-1} W̃)/ε, conjugate
    to (Id - S)/ε, so both have the same eigenvalues.  The constant mode
    survives as the D̃^{1/2}-weighted top eigenvector of S.
    """

    bandwidth: float
    matrix: np.ndarray
    degrees: np.ndarray
    seed: int

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def laplacian_action(self, v: np.ndarray) -> np.ndarray:
        """Apply the function-space Laplacian (Id - D̃^{-1}W̃)/ε."""
        scale = np.sqrt(self.degrees)
        return (v - (self.matrix @ (v * scale)) / scale) / self.bandwidth

    def constant_mode_residual(self) -> float:
        """‖(Id - D̃^{-1}W̃)·1‖∞, zero by construction up to rounding."""
        ones = np.ones(self.n)
        return float(np.max(np.abs(self.bandwidth * self.laplacian_action(ones))))


def _kernel_from_sq_distances(d2: np.ndarray, bandwidth: float, seed: int) -> KernelLaplacian:
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    w = np.exp(-d2 / (4.0 * bandwidth))
    components, _ = connected_components(csr_matrix(w > 0.0), directed=False)
    if components > 1:
        raise DisconnectedGraph(
            f"kernel graph has {components} components at bandwidth {bandwidth:g}"
        )
    q = w.sum(axis=1)
    w = w / np.outer(q, q)  # kills the sampling-density bias
    degrees = w.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    matrix = w * np.outer(inv_sqrt, inv_sqrt)
    return KernelLaplacian(bandwidth, matrix, degrees, seed)


def build_kernel_laplacian(cloud: PointCloud, bandwidth: float) -> KernelLaplacian:
    d2 = _pairwise_sq_distances(cloud.points, cloud.identify_antipodes)
    return _kernel_from_sq_distances(d2, bandwidth, cloud.seed)


def cluster_values(values: np.ndarray, gap_threshold: float = 0.15) -> list[tuple[float, int]]:
    """Group a nonnegative sequence at relative gaps above the threshold."""
    values = sorted(float(v) for v in values)
    groups: list[list[float]] = [[float(values[0])]]
    for v in values[1:]:
        v = float(v)
        last = groups[-1][-1]
        if (v - last) / max(last, 1e-12) > gap_threshold:
            groups.append([])
        groups[-1].append(v)
    return [(float(np.mean(g)), len(g)) for g in groups]


@dataclass(frozen=True)
class EigenEstimate:
    values: np.ndarray
    multiplicity_clusters: tuple[tuple[float, int], ...]
    residuals: np.ndarray


def lowest_spectrum(L: KernelLaplacian, k: int) -> EigenEstimate:
    """Lowest k Laplacian eigenvalues via the top of the kernel operator.

    The symmetric form S has its largest eigenvalues where the Laplacian
    (Id - S)/ε has its smallest, so a standard Lanczos run for the top of
    S is a shift-free way to the bottom of the spectrum.  The starting
    vector is seeded, making reruns bit-identical.
    """
    if not 0 < k < L.n / 10:
        raise ValueError("need 0 < k < n/10 converged eigenpairs")
    v0 = np.random.default_rng(L.seed).normal(size=L.n)
    try:
        mu, vec = eigsh(L.matrix, k=k, which="LA", v0=v0, tol=0)
    except ArpackNoConvergence as exc:
        raise NoConvergence("eigensolver stalled", partial=exc.eigenvalues) from exc
    order = np.argsort(mu)[::-1]
    mu, vec = mu[order], vec[:, order]
    values = (1.0 - mu) / L.bandwidth
    residuals = (
        np.linalg.norm(L.matrix @ vec - vec * mu[None, :], axis=0) / L.bandwidth
    )
    return EigenEstimate(
        values=values,
        multiplicity_clusters=tuple(cluster_values(values)),
        residuals=residuals,
    )


@dataclass(frozen=True)
class EstimateConfig:
    bandwidth: float | None = None  # None = calibrated default
    calibration_constant: float | None = None
    k: int = 16
    gap_threshold: float = 0.15
    exploratory: bool = False


@dataclass(frozen=True)
class Lambda1Estimate:
    lambda1: float
    multiplicity: int
    diagnostics: dict

    def __iter__(self):
        yield self.lambda1
        yield self.multiplicity
        yield self.diagnostics


def estimate_lambda1(cloud: PointCloud, config: EstimateConfig | None = None) -> Lambda1Estimate:
    """First nonzero eigenvalue and its cluster size from a point cloud.

    Reliable only in low intrinsic dimension: dimensions up to 3 are the
    supported regime, 4..9 run only behind ``exploratory=True`` and are
    labeled as such, and 10+ are refused outright (sample complexity, not
    implementation, is the obstacle).
    """
    config = config or EstimateConfig()
    d = cloud.intrinsic_dim
    if d >= 10:
        raise UnsupportedDimension(
            f"intrinsic dimension {d} is beyond point-cloud reach at desk scale"
        )
    if d >= 4 and not config.exploratory:
        raise UnsupportedDimension(
            f"intrinsic dimension {d} needs exploratory=True (results are unreliable)"
        )
    bandwidth = (
        config.bandwidth
        if config.bandwidth is not None
        else default_bandwidth(cloud.n, d, config.calibration_constant)
    )
    laplacian = build_kernel_laplacian(cloud, bandwidth)
    estimate = lowest_spectrum(laplacian, config.k)
    if estimate.values[0] > 1e-6:
        raise NoConvergence(
            f"constant mode came out at {estimate.values[0]!r}", partial=estimate
        )
    clusters = cluster_values(estimate.values[1:], config.gap_threshold)
    if len(clusters) < 2:
        raise AmbiguousClustering(
            "no relative gap above the threshold in the computed window",
            values=estimate.values,
        )
    lambda1, multiplicity = clusters[0]
    diagnostics = {
        "manifold": cloud.label,
        "n": cloud.n,
        "bandwidth": bandwidth,
        "intrinsic_dim": d,
        "clusters": clusters,
        "max_residual": float(np.max(estimate.residuals)),
        "constant_mode": float(estimate.values[0]),
        "quality": "EXPLORATORY" if d >= 4 else "calibrated",
    }
    return Lambda1Estimate(lambda1, multiplicity, diagnostics)


def covering_consistency(n: int, seed: int = 0, config: EstimateConfig | None = None) -> dict:
    """λ₁ of the covered (1, 3) leaf computed from two distance routes.

    Route one embeds the sample in R⁶ and uses chordal distances; route two
    never leaves the quaternion side, building the same Gram matrix through
    the conjugation identity.  Agreement pins down that the estimator sees
    the covered metric, not an artifact of the embedding.
    """
    config = config or EstimateConfig()
    quaternions = _unit_quaternions(n, seed)
    cloud = PointCloud(6, 3, sigma_double_cover(quaternions), "m1-otfkm-11", seed)
    bandwidth = (
        config.bandwidth
        if config.bandwidth is not None
        else default_bandwidth(n, 3, config.calibration_constant)
    )

    embedded = estimate_lambda1(cloud, replace(config, bandwidth=bandwidth))

    gram = berger_metric_gram(quaternions)
    d2 = 2.0 - 2.0 * gram
    np.maximum(d2, 0.0, out=d2)
    laplacian = _kernel_from_sq_distances(d2, bandwidth, seed)
    spectral = lowest_spectrum(laplacian, config.k)
    clusters = cluster_values(spectral.values[1:], config.gap_threshold)

    return {
        "bandwidth": bandwidth,
        "embedded": embedded.lambda1,
        "gram": clusters[0][0],
        "difference": abs(embedded.lambda1 - clusters[0][0]),
    }


def bandwidth_robustness(cloud: PointCloud, config: EstimateConfig | None = None) -> dict:
    """λ₁ drift when the bandwidth moves by factor √2 both ways.

    The estimate counts as robust when the drift stays below 10% of the
    central value.
    """
    config = config or EstimateConfig()
    bandwidth = (
        config.bandwidth
        if config.bandwidth is not None
        else default_bandwidth(cloud.n, cloud.intrinsic_dim, config.calibration_constant)
    )
    results = {}
    for tag, scale in (("low", 2.0**-0.5), ("center", 1.0), ("high", 2.0**0.5)):
        est = estimate_lambda1(cloud, replace(config, bandwidth=bandwidth * scale))
        results[tag] = est.lambda1
    center = results["center"]
    drift = max(abs(results["low"] - center), abs(results["high"] - center)) / center
    return {
        "bandwidth": bandwidth,
        "estimates": results,
        "drift": drift,
        "robust": drift < 0.10,
    }
