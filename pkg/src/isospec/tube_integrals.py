"""Profile integrals of the parallel isoparametric families.

Everything here is a one-dimensional integral in the tube angle θ.  A
parallel hypersurface at angle θ has principal curvatures cot(θ_α) with
θ_α = θ₁ + (α-1)π/g, and its volume element / gradient distortion against
the base leaf is controlled by sine-quotient pushforward factors.  The
six-curvature family with multiplicities (1,1) gives the K_α and G
integrals; the focal cases (both six-curvature (2,2) leaves and the
four-curvature (4,3) leaf) give norm and energy constants whose quotient
is the constant c in the transplantation bound

    λ_k(sphere) ≤ c · λ_k(submanifold),

packaged as a :class:`RatioCertificate` and turned into eigenvalue bounds
against the exact sphere spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .quadrature import QuadratureResult, TooManySubdivisions, adaptive_integrate
from .spectra import Inconsistent, Spectrum, Verdict, sphere_spectrum

__all__ = [
    "InequalityCheck",
    "KGReport",
    "ParallelFamily",
    "QuadratureResult",
    "RatioCertificate",
    "TooManySubdivisions",
    "adaptive_integrate",
    "compute_G",
    "compute_K_alpha",
    "eigenvalue_bound_from_ratio",
    "g4_443_constants",
    "g4_443_ratio",
    "g4_focal_pushforward_factors",
    "g6_focal_pushforward_factors",
    "g6_focal_weight",
    "g6_hypersurface_density",
    "g6_hypersurface_ratio",
    "g6_m1_bound_constant",
    "g6_m1_constants",
    "g6_m1_ratio",
    "g6_m2_energy_constant",
    "g6_m2_norm_constant",
    "g6_m2_ratio",
    "verify_KG_inequalities",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ParallelFamily:
    """An isoparametric family: curvature count g, base angle, multiplicities."""

    g: int
    theta1: float
    multiplicities: tuple[int, int]

    def __post_init__(self):
        if self.g not in (4, 6):
            raise ValueError("only g = 4 and g = 6 families are handled")
        if not 0.0 < self.theta1 < math.pi / self.g:
            raise ValueError("theta1 must lie in (0, pi/g)")

    def principal_angles(self) -> tuple[float, ...]:
        return tuple(
            self.theta1 + (alpha - 1) * math.pi / self.g
            for alpha in range(1, self.g + 1)
        )

    def pushforward_factor(self, alpha: int, theta: float) -> float:
        """Scaling sin(θ_α - θ)/sin θ_α of the α-th principal direction."""
        if not 1 <= alpha <= self.g:
            raise ValueError(f"alpha must be in 1..{self.g}")
        theta_a = self.theta1 + (alpha - 1) * math.pi / self.g
        return math.sin(theta_a - theta) / math.sin(theta_a)


# The g = 6, (1,1) family, parallel leaves parameterized by θ in
# (-π/12, π/12) around the middle (minimal) hypersurface.
G6_11_FAMILY = ParallelFamily(6, math.pi / 12, (1, 1))


def g6_hypersurface_density(theta: float) -> float:
    """Volume density of the middle leaf family: 16cos²2θ sin²(π/6+2θ) sin²(π/6-2θ).

    Even in θ, equal to 1 at θ = 0 and vanishing at θ = ±π/12.
    """
    return (
        16.0
        * math.cos(2 * theta) ** 2
        * math.sin(math.pi / 6 + 2 * theta) ** 2
        * math.sin(math.pi / 6 - 2 * theta) ** 2
    )


def compute_K_alpha(alpha: int, tol: float = 1e-12) -> QuadratureResult:
    """K_α = ∫ density/k_α² over one period of the tube angle.

    The α-th pushforward factor k_α vanishes linearly at one endpoint, but
    the density vanishes quadratically there, so the integrand extends
    continuously; quadrature nodes stay interior either way.
    """
    half = math.pi / 12

    def integrand(theta: float) -> float:
        k = G6_11_FAMILY.pushforward_factor(alpha, theta)
        return g6_hypersurface_density(theta) / (k * k)

    return adaptive_integrate(integrand, -half, half, tol=tol)


def compute_G(tol: float = 1e-12) -> QuadratureResult:
    """G = 2 ∫ density over the tube angle; evaluates to π/6."""
    half = math.pi / 12
    result = adaptive_integrate(g6_hypersurface_density, -half, half, tol=tol)
    return QuadratureResult(2.0 * result.value, 2.0 * result.error_estimate, result.subdivisions)


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs < self.rhs


@dataclass(frozen=True)
class KGReport:
    K_values: tuple[float, ...]
    G: float
    checks: tuple[InequalityCheck, ...]

    @property
    def K_max(self) -> float:
        return max(self.K_values)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_KG_inequalities() -> KGReport:
    """Evaluate all six K_α and check them against their stated bounds.

    K₁ < (7/6)G, K₂ < G, K₃ < ((2+√3)/6)G, and the combined bound
    2·max(K_α)/G < 7/3 that feeds the eigenvalue comparison.
    """
    K = tuple(compute_K_alpha(alpha).value for alpha in range(1, 7))
    G = compute_G().value
    checks = (
        InequalityCheck("K1 < (7/6) G", K[0], 7.0 / 6.0 * G),
        InequalityCheck("K2 < G", K[1], G),
        InequalityCheck("K3 < ((2+sqrt3)/6) G", K[2], (2.0 + _SQRT3) / 6.0 * G),
        InequalityCheck("2 max(K)/G < 7/3", 2.0 * max(K) / G, 7.0 / 3.0),
    )
    return KGReport(K, G, checks)


# ---------------------------------------------------------------------------
# Focal leaves of the g = 6, (2,2) family


def g6_focal_pushforward_factors(theta: float):
    """The five factors k̃_j = sin(jπ/6)/sin(jπ/6 + θ), j = 1..5.

    These scale the principal directions of the tube map from the focal
    leaf at distance θ; all positive for θ in (0, π/6).
    """
    return tuple(
        math.sin(j * math.pi / 6) / math.sin(j * math.pi / 6 + theta)
        for j in range(1, 6)
    )


def g6_focal_weight(theta: float) -> float:
    """Tube volume weight sin²θ / (k̃₁⋯k̃₅)², computed in product form.

    Written as sin²θ·∏(sin(jπ/6+θ)/sin(jπ/6))² so the right endpoint,
    where k̃₅ blows up, needs no special handling.
    """
    w = math.sin(theta) ** 2
    for j in range(1, 6):
        s = math.sin(j * math.pi / 6)
        w *= (math.sin(j * math.pi / 6 + theta) / s) ** 2
    return w


_G6_FOCAL_END = math.pi / 6


@lru_cache(maxsize=None)
def g6_m2_norm_constant() -> float:
    """4π ∫ weight dθ over (0, π/6); closed form π²/108.

    The same constant is the squared-norm growth factor for both (2,2)
    focal leaves, since the weight does not see the normal direction.
    """
    return 4.0 * math.pi * adaptive_integrate(g6_focal_weight, 0.0, _G6_FOCAL_END).value


@lru_cache(maxsize=None)
def g6_m2_energy_constant() -> float:
    """2π ∫ weight · ½(k̃₁²+k̃₂²+k̃₄²+k̃₅²) dθ; closed form (π/18 - 13√3/240)π.

    ½(k̃₁²+k̃₂²+k̃₄²+k̃₅²) is the fiber-averaged gradient distortion on
    eight of the ten tangent directions of this leaf, and it dominates the
    remaining pair's factor 2k̃₃² pointwise on (0, π/6), so this single
    constant bounds the full energy.  The shape operator module recovers
    the same number through the explicit fiber average.
    """

    def integrand(theta: float) -> float:
        k = g6_focal_pushforward_factors(theta)
        avg = 0.5 * (k[0] ** 2 + k[1] ** 2 + k[3] ** 2 + k[4] ** 2)
        return g6_focal_weight(theta) * avg

    return 2.0 * math.pi * adaptive_integrate(integrand, 0.0, _G6_FOCAL_END).value


@lru_cache(maxsize=None)
def g6_m1_constants() -> tuple[float, float, float]:
    """The three θ-integrated coefficients of the second (2,2) focal leaf.

    Ordered (c₃, c₁₅, c₂₄) by the eigenspace pairing of the distortion
    factors: c₃ from k̃₃², c₁₅ from ½(k̃₁²+k̃₅²), c₂₄ from ½(k̃₂²+k̃₄²).
    Closed forms π/36 - 11√3/240, π/144 + 11√3/1920, π/48 - 21√3/640.
    """

    def weighted(select) -> float:
        def integrand(theta: float) -> float:
            k = g6_focal_pushforward_factors(theta)
            return g6_focal_weight(theta) * select(k)

        return adaptive_integrate(integrand, 0.0, _G6_FOCAL_END).value

    c3 = weighted(lambda k: k[2] ** 2)
    c15 = weighted(lambda k: 0.5 * (k[0] ** 2 + k[4] ** 2))
    c24 = weighted(lambda k: 0.5 * (k[1] ** 2 + k[3] ** 2))
    return c3, c15, c24


def g6_m1_bound_constant() -> float:
    """4π·max coefficient = π²/36 + 11√3π/480, the energy bound constant.

    Of the three coefficients, c₁₅ is the largest (the small-angle factors
    k̃₁, k̃₅ distort most), so bounding every eigenspace by it gives the
    energy estimate 4π·c₁₅·(squared gradient norm).
    """
    c3, c15, c24 = g6_m1_constants()
    assert max(c3, c24) <= c15
    return 4.0 * math.pi * c15


@dataclass(frozen=True)
class RatioCertificate:
    """The constant c in λ_k(sphere) ≤ c·λ_k(M), with its consequence.

    ``implied_bound`` = λ_{target_index}(unit sphere of dimension
    ``sphere_dim``)/``ratio`` is a lower bound for λ_{target_index}(M);
    ``threshold`` is the value that bound must exceed for the downstream
    conclusion (None when the chain stops at the bound itself).
    """

    ratio: float
    sphere_dim: int
    target_index: int
    manifold_dim: int
    implied_bound: float
    claim: str
    threshold: float | None = None


def _certificate(ratio, sphere_dim, target_index, manifold_dim, claim, threshold):
    spectrum = sphere_spectrum(sphere_dim, 1, target_index + 2)
    lam_k = float(spectrum.kth_eigenvalue(target_index))
    return RatioCertificate(
        ratio=ratio,
        sphere_dim=sphere_dim,
        target_index=target_index,
        manifold_dim=manifold_dim,
        implied_bound=lam_k / ratio,
        claim=claim,
        threshold=threshold,
    )


def g6_hypersurface_ratio() -> RatioCertificate:
    """Certificate 2K/G for the 12-dimensional minimal hypersurface."""
    report = verify_KG_inequalities()
    ratio = 2.0 * report.K_max / report.G
    return _certificate(
        ratio,
        sphere_dim=13,
        target_index=15,
        manifold_dim=12,
        claim="lambda_15(S^13) = 28 and 2K/G < 7/3 force lambda_15(M^12) > 12",
        threshold=12.0,
    )


def g6_m2_ratio() -> RatioCertificate:
    """Certificate energy/norm = 6 - 117√3/(20π) for the first (2,2) leaf."""
    ratio = g6_m2_energy_constant() / g6_m2_norm_constant()
    return _certificate(
        ratio,
        sphere_dim=13,
        target_index=15,
        manifold_dim=10,
        claim="ratio 6 - 117*sqrt3/(20*pi) < 14/5 forces lambda_15 > 10",
        threshold=10.0,
    )


def g6_m1_ratio() -> RatioCertificate:
    """Certificate 3 + 99√3/(40π) for the second (2,2) leaf.

    The implied bound 28/ratio ≈ 6.4 does not reach the dimension 10, so
    no first-eigenvalue conclusion follows; the certificate is recorded
    without a threshold.
    """
    ratio = g6_m1_bound_constant() / g6_m2_norm_constant()
    return _certificate(
        ratio,
        sphere_dim=13,
        target_index=15,
        manifold_dim=10,
        claim="energy bound gives ratio 3 + 99*sqrt3/(40*pi); no conclusion",
        threshold=None,
    )


# ---------------------------------------------------------------------------
# The four-curvature (4,3) focal leaf in the 15-sphere


def g4_focal_pushforward_factors(theta: float):
    """k̃_j = sin(jπ/4)/sin(jπ/4 + θ) for j = 1, 2, 3.

    Equivalently 1/(cosθ+sinθ), 1/cosθ, 1/(cosθ-sinθ): the distortion of
    the principal directions with curvatures +1, 0, -1.
    """
    return tuple(
        math.sin(j * math.pi / 4) / math.sin(j * math.pi / 4 + theta)
        for j in range(1, 4)
    )


def _g4_443_weight(theta: float) -> float:
    # sin⁴θ/(k̃₁³ k̃₂⁴ k̃₃³), multiplicities (3,4,3); simplifies to
    # sin⁴θ cos³2θ cos⁴θ, which the norm test pins against B(5/2,2)/64.
    k1, k2, k3 = g4_focal_pushforward_factors(theta)
    return math.sin(theta) ** 4 / (k1**3 * k2**4 * k3**3)


@lru_cache(maxsize=None)
def g4_443_constants() -> tuple[float, float]:
    """(energy, norm) θ-integrals of the (4,3) focal leaf over (0, π/4).

    norm = ∫ weight = 1/560; energy = ∫ weight·(3/10·(k̃₁²+k̃₃²) + 2/5·k̃₂²)
    = 17/2400 - π/1280.  The (3/10, 2/5, 3/10) eigenspace weights are the
    fiber averages of the squared shape-operator components, checked by
    Monte Carlo in the Clifford module.
    """
    end = math.pi / 4

    def energy_integrand(theta: float) -> float:
        k1, k2, k3 = g4_focal_pushforward_factors(theta)
        avg = 0.3 * (k1 * k1 + k3 * k3) + 0.4 * (k2 * k2)
        return _g4_443_weight(theta) * avg

    energy = adaptive_integrate(energy_integrand, 0.0, end).value
    norm = adaptive_integrate(_g4_443_weight, 0.0, end).value
    return energy, norm


def g4_443_ratio() -> RatioCertificate:
    """Certificate energy/norm = 119/30 - 7π/16 for the (4,3) leaf."""
    energy, norm = g4_443_constants()
    return _certificate(
        energy / norm,
        sphere_dim=15,
        target_index=17,
        manifold_dim=10,
        claim="lambda_17(S^15) = 32 and ratio 119/30 - 7*pi/16 force lambda_17 > 12",
        threshold=12.0,
    )


def eigenvalue_bound_from_ratio(cert: RatioCertificate, spectrum: Spectrum) -> Verdict:
    """Turn a ratio certificate into an eigenvalue bound against a spectrum.

    Recomputes λ_{target_index} from the supplied spectrum, checks it is
    consistent with the certificate's own bookkeeping (to a few ulp), and
    passes iff the implied bound exceeds the certificate threshold.
    """
    lam_k = float(spectrum.kth_eigenvalue(cert.target_index))
    implied = lam_k / cert.ratio
    if abs(implied - cert.implied_bound) > 1e-14 * max(abs(implied), 1.0):
        raise Inconsistent(
            f"certificate bound {cert.implied_bound!r} disagrees with "
            f"{implied!r} from the supplied spectrum"
        )
    if cert.threshold is None:
        raise ValueError("certificate records no threshold to compare against")
    return Verdict(
        passed=implied > cert.threshold,
        lambda1=None,
        multiplicity=None,
        detail=(
            f"lambda_{cert.target_index}(S^{cert.sphere_dim}) = {lam_k:g}, "
            f"ratio {cert.ratio:.12g} implies bound {implied:.12g} "
            f"vs threshold {cert.threshold:g}"
        ),
    )
