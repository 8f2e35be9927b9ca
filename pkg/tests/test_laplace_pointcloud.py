import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isospec import laplace_pointcloud as lp


# ---------------------------------------------------------------------------
# samplers

@pytest.mark.parametrize("name", sorted(lp.MANIFOLDS))
def test_sampler_constraints(name):
    n = 120 if name == "m1-fkm-443" else 400
    cloud = lp.sample_manifold(name, n, seed=0)
    info = lp.MANIFOLDS[name]
    assert cloud.points.shape == (n, info.ambient_dim)
    assert cloud.intrinsic_dim == info.intrinsic_dim
    assert cloud.identify_antipodes == info.antipodal
    assert np.max(lp.constraint_residuals(cloud)) < 1e-10


def test_sampler_rejects_tiny_clouds():
    with pytest.raises(ValueError):
        lp.sample_sphere(50, 2)


def test_sampler_rejects_unknown_name():
    with pytest.raises(ValueError):
        lp.sample_manifold("s7", 500)


def test_sampling_is_deterministic():
    a = lp.sample_manifold("s2", 300, seed=5)
    b = lp.sample_manifold("s2", 300, seed=5)
    assert np.array_equal(a.points, b.points)
    c = lp.sample_manifold("s2", 300, seed=6)
    assert not np.array_equal(a.points, c.points)


def test_quotient_sphere_radius():
    cloud = lp.sample_manifold("s3-quotient", 400, seed=0)
    norms = np.linalg.norm(cloud.points, axis=1)
    assert np.allclose(norms, np.sqrt(2.0), atol=1e-12)


def test_berger_gram_bounds():
    rng = np.random.default_rng(0)
    q = rng.normal(size=(50, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    gram = lp.berger_metric_gram(q)
    assert gram.shape == (50, 50)
    assert np.allclose(gram, gram.T, atol=1e-14)
    assert np.allclose(np.diag(gram), 1.0, atol=1e-12)
    assert np.max(np.abs(gram)) <= 1.0 + 1e-12


# ---------------------------------------------------------------------------
# kernel Laplacian

def test_default_bandwidth_scaling():
    assert lp.default_bandwidth(3000, 2) == pytest.approx(0.15 * 3000 ** (-1 / 6))
    assert lp.default_bandwidth(1000, 3) == pytest.approx(0.12 * 1000 ** (-1 / 7))
    assert lp.default_bandwidth(1000, 5) == pytest.approx(0.3 * 1000 ** (-1 / 9))
    assert lp.default_bandwidth(1000, 5, constant=0.2) == pytest.approx(0.2 * 1000 ** (-1 / 9))


def test_constant_mode_residual_is_tiny():
    cloud = lp.sample_manifold("s2", 500, seed=0)
    L = lp.build_kernel_laplacian(cloud, lp.default_bandwidth(500, 2))
    assert L.constant_mode_residual() < 1e-10


def test_laplacian_action_annihilates_constants():
    cloud = lp.sample_manifold("s3", 400, seed=1)
    L = lp.build_kernel_laplacian(cloud, lp.default_bandwidth(400, 3))
    out = L.laplacian_action(np.ones(400))
    assert np.max(np.abs(out)) < 1e-8 / L.bandwidth


def test_disconnected_graph_detected():
    cloud = lp.sample_manifold("s2", 200, seed=0)
    with pytest.raises(lp.DisconnectedGraph):
        lp.build_kernel_laplacian(cloud, 1e-6)


# ---------------------------------------------------------------------------
# clustering

def test_cluster_values_groups_by_relative_gap():
    clusters = lp.cluster_values([1.0, 1.01, 2.0, 2.02, 5.0])
    assert [size for _, size in clusters] == [2, 2, 1]
    assert clusters[0][0] == pytest.approx(1.005)


def test_cluster_values_single_group_without_gaps():
    clusters = lp.cluster_values([1.0, 1.05, 1.1], gap_threshold=0.5)
    assert len(clusters) == 1
    assert clusters[0][1] == 3


@given(st.lists(st.floats(0.1, 100.0), min_size=1, max_size=30),
       st.floats(0.01, 0.5))
@settings(max_examples=100)
def test_cluster_values_partition_property(values, threshold):
    clusters = lp.cluster_values(values, gap_threshold=threshold)
    assert sum(size for _, size in clusters) == len(values)
    means = [mean for mean, _ in clusters]
    assert means == sorted(means)


# ---------------------------------------------------------------------------
# the estimator

def test_small_sphere_control():
    cloud = lp.sample_manifold("s2", 1200, seed=0)
    lambda1, multiplicity, diagnostics = lp.estimate_lambda1(cloud)
    assert multiplicity == 3
    assert abs(lambda1 - 2.0) / 2.0 < 0.12
    assert diagnostics["quality"] == "calibrated"
    assert diagnostics["intrinsic_dim"] == 2


def test_estimate_determinism():
    cloud = lp.sample_manifold("s3", 600, seed=2)
    first = lp.estimate_lambda1(cloud)
    second = lp.estimate_lambda1(cloud)
    assert first.lambda1 == second.lambda1
    assert first.diagnostics["clusters"] == second.diagnostics["clusters"]


def test_explicit_bandwidth_is_used():
    cloud = lp.sample_manifold("s2", 600, seed=0)
    est = lp.estimate_lambda1(cloud, lp.EstimateConfig(bandwidth=0.05))
    assert est.diagnostics["bandwidth"] == 0.05


def test_ambiguous_clustering():
    cloud = lp.sample_manifold("s2", 300, seed=0)
    with pytest.raises(lp.AmbiguousClustering):
        lp.estimate_lambda1(cloud, lp.EstimateConfig(gap_threshold=5.0))


def test_refuses_high_dimension():
    cloud = lp.sample_sphere(400, 10, seed=0)
    with pytest.raises(lp.UnsupportedDimension):
        lp.estimate_lambda1(cloud)


def test_middle_dimensions_need_exploratory_flag():
    cloud = lp.sample_sphere(700, 5, seed=0)
    with pytest.raises(lp.UnsupportedDimension):
        lp.estimate_lambda1(cloud)
    est = lp.estimate_lambda1(cloud, lp.EstimateConfig(exploratory=True))
    assert est.diagnostics["quality"] == "EXPLORATORY"
    # heavily biased at this sample size; only the cluster structure is stable
    assert est.multiplicity == 6
    assert 2.0 < est.lambda1 < 6.0


def test_covering_consistency_routes_agree():
    report = lp.covering_consistency(800, seed=0)
    assert report["difference"] < 1e-10
    assert report["embedded"] == pytest.approx(report["gram"], abs=1e-10)


def test_bandwidth_robustness_on_sphere():
    cloud = lp.sample_manifold("s2", 1500, seed=1)
    report = lp.bandwidth_robustness(cloud)
    assert report["robust"]
    assert report["drift"] < 0.10
    assert set(report["estimates"]) == {"low", "center", "high"}


# ---------------------------------------------------------------------------
# canonical budgets (shared session fixtures; also exercised by acceptance)

def control_record(records, check_id):
    record = records[check_id]
    assert record.status == "pass", record.detail
    return record


def test_sphere_controls_at_canonical_budgets(pointcloud_records):
    for label, expected in (("s2", 2.0), ("s3", 3.0)):
        record = control_record(pointcloud_records, f"{label}-lambda1-control")
        assert abs(record.computed - expected) / expected < 0.12
        control_record(pointcloud_records, f"{label}-multiplicity-control")


def test_quotient_controls_at_canonical_budgets(pointcloud_records):
    record = control_record(pointcloud_records, "s2-quotient-lambda1-control")
    assert abs(record.computed - 6.0) / 6.0 < 0.15
    record = control_record(pointcloud_records, "s3-quotient-lambda1-control")
    assert abs(record.computed - 4.0) / 4.0 < 0.12
    control_record(pointcloud_records, "s3-quotient-multiplicity-control")


def test_covered_leaf_estimate_at_canonical_budget(pointcloud_records):
    record = control_record(pointcloud_records, "m1-otfkm-11-lambda1-estimate")
    assert abs(record.computed - 3.0) / 3.0 < 0.15
    mult = control_record(pointcloud_records, "m1-otfkm-11-multiplicity-estimate")
    assert mult.computed == 6


def test_projective_plane_drops_odd_clusters(pointcloud_records):
    record = control_record(pointcloud_records, "s2-quotient-multiplicity-control")
    assert record.computed == 5  # the degree-1 cluster of the sphere is absent


def test_suite_level_robustness_and_determinism(pointcloud_records):
    control_record(pointcloud_records, "bandwidth-robustness")
    determinism = control_record(pointcloud_records, "estimate-determinism")
    assert determinism.abs_err == 0.0
