"""Numerical verification of first-eigenvalue claims for isoparametric
hypersurfaces and their focal submanifolds.

The package has three layers: exact/adaptive scalar computations
(``quadrature``, ``tube_integrals``, ``spectra``), linear-algebraic models
of the relevant second fundamental forms (``clifford_fkm``,
``shape_operators``), and an empirical cross-check via kernel Laplacians
on sampled point clouds (``laplace_pointcloud``).  ``checks`` bundles
everything into named suites and ``cli`` exposes them as a command line.
"""

__version__ = "0.1.0"

from .checks import SUITE_NAMES, run_suite_checks, suite_check_ids
from .config import SuiteConfig, default_config, load_config
from .quadrature import adaptive_integrate
from .spectra import sphere_spectrum
from .tube_integrals import verify_KG_inequalities

__all__ = [
    "SUITE_NAMES",
    "SuiteConfig",
    "__version__",
    "adaptive_integrate",
    "default_config",
    "load_config",
    "run_suite_checks",
    "sphere_spectrum",
    "suite_check_ids",
    "verify_KG_inequalities",
]
