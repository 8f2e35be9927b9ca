"""Shared fixtures.

The point-cloud suite is the only expensive piece (tens of seconds), so it
runs once per session; its records and wall time are shared between the
estimator tests and the acceptance gate.
"""

import time
from types import SimpleNamespace

import pytest

from isospec import checks
from isospec.config import default_config


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def pointcloud_run(cfg):
    start = time.perf_counter()
    records = checks.run_suite_checks("pointcloud", cfg)
    elapsed = time.perf_counter() - start
    return SimpleNamespace(
        records=records,
        by_id={r.check_id: r for r in records},
        elapsed=elapsed,
    )


@pytest.fixture(scope="session")
def pointcloud_records(pointcloud_run):
    return pointcloud_run.by_id
