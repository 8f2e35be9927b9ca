"""Shape-operator families of the six-curvature (2,2) focal leaves.

Each of the two ten-dimensional focal leaves carries a rank-3 normal
bundle; picking the unit normal ξ(t,s) inside it gives a two-parameter
family of 10×10 shape operators

    A(t, s) = cos t · A_ξ + sin t cos s · A' + sin t sin s · A''

whose eigenvalues are {±√3, ±1/√3, 0}, each twice, for every (t, s).
The basis is the curvature-adapted one, ordered (e₁, e₁̄, ..., e₅, e₅̄),
with 2×2 blocks; the rotation block J = [[0, -1], [1, 0]] realizes the
phase factor that couples barred and unbarred directions.  The two leaves
differ in which of A', A'' is the plain coupling and which the rotated
one, and in the coupling pattern: first leaf (here ``m2``) tridiagonal
with 2/√3 middles, second leaf (``m1``) antidiagonal with √3 and 1/√3.

The closed-form eigenvectors below reproduce the numerical eigenspaces to
machine precision; together with the tube weight they produce the
fiber-averaged gradient-distortion coefficients, cross-checked against
the direct θ-integrals in :mod:`isospec.tube_integrals`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import adaptive_integrate
from .tube_integrals import g6_focal_pushforward_factors, g6_focal_weight

__all__ = [
    "EigenSystem",
    "NormalDirection",
    "ShapeFamily",
    "SingularParameter",
    "assemble_A",
    "build_shape_family",
    "closed_form_eigenbasis",
    "energy_constant_via_fibers",
    "fiber_average_coefficients",
    "fiber_average_matrix",
]

_SQRT3 = np.sqrt(3.0)

# The five double eigenvalues, in the row order used throughout.
EIGENVALUES = np.repeat([_SQRT3, 1.0 / _SQRT3, 0.0, -1.0 / _SQRT3, -_SQRT3], 2)


class SingularParameter(ValueError):
    """The closed-form eigenvectors degenerate at t = 0 and t = π."""


@dataclass(frozen=True)
class NormalDirection:
    """Angles picking the unit normal cos t·ξ + sin t(cos s, sin s)-combination."""

    t: float
    s: float


@dataclass(frozen=True)
class ShapeFamily:
    which: str
    A_xi: np.ndarray
    A_zeta: np.ndarray
    A_zetabar: np.ndarray


@dataclass(frozen=True)
class EigenSystem:
    """Ten eigenvectors as rows, paired with EIGENVALUES, plus the residual."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual: float


def _block_matrix(blocks: dict[tuple[int, int], np.ndarray]) -> np.ndarray:
    out = np.zeros((10, 10))
    for (i, j), b in blocks.items():
        out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = b
    out.flags.writeable = False
    return out


_I2 = np.eye(2)
_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


def build_shape_family(which: str) -> ShapeFamily:
    which = which.lower()
    a_xi = np.diag(EIGENVALUES)
    a_xi.flags.writeable = False
    if which == "m2":
        a_zetabar = _block_matrix(
            {
                (0, 1): -_I2,
                (1, 0): -_I2,
                (1, 3): 2.0 / _SQRT3 * _I2,
                (3, 1): 2.0 / _SQRT3 * _I2,
                (3, 4): -_I2,
                (4, 3): -_I2,
            }
        )
        a_zeta = _block_matrix(
            {
                (0, 1): _J2,
                (1, 0): -_J2,
                (1, 3): -2.0 / _SQRT3 * _J2,
                (3, 1): 2.0 / _SQRT3 * _J2,
                (3, 4): _J2,
                (4, 3): -_J2,
            }
        )
    elif which == "m1":
        a_zetabar = _block_matrix(
            {
                (0, 4): _SQRT3 * _I2,
                (4, 0): _SQRT3 * _I2,
                (1, 3): 1.0 / _SQRT3 * _I2,
                (3, 1): 1.0 / _SQRT3 * _I2,
            }
        )
        a_zeta = _block_matrix(
            {
                (0, 4): _SQRT3 * _J2,
                (4, 0): -_SQRT3 * _J2,
                (1, 3): 1.0 / _SQRT3 * _J2,
                (3, 1): -1.0 / _SQRT3 * _J2,
            }
        )
    else:
        raise ValueError("which must be 'm1' or 'm2'")
    return ShapeFamily(which, a_xi, a_zeta, a_zetabar)


def assemble_A(fam: ShapeFamily, direction: NormalDirection) -> np.ndarray:
    """A(t, s); the two leaves swap the roles of the second and third matrix."""
    t, s = direction.t, direction.s
    if fam.which == "m2":
        second, third = fam.A_zetabar, fam.A_zeta
    else:
        second, third = fam.A_zeta, fam.A_zetabar
    return (
        np.cos(t) * fam.A_xi
        + np.sin(t) * np.cos(s) * second
        + np.sin(t) * np.sin(s) * third
    )


def _rows_m2(t, s):
    # Components ordered (e1, e1b, e2, e2b, e3, e3b, e4, e4b, e5, e5b);
    # f1 and f2 are the normalizers 1/(4 sin(t/2)), 1/(4 cos(t/2)).
    c, sn = np.cos(t), np.sin(t)
    c2s, s2s, cs, ss = np.cos(2 * s), np.sin(2 * s), np.cos(s), np.sin(s)
    f1 = 1.0 / (4.0 * np.sin(t / 2.0))
    f2 = 1.0 / (4.0 * np.cos(t / 2.0))
    zero = np.zeros(np.broadcast_shapes(np.shape(t), np.shape(s)))
    one = np.ones_like(zero)

    def row(f, e1, e1b, e2, e2b, e4, e4b, e5, e5b):
        return np.stack(
            np.broadcast_arrays(
                f * e1, f * e1b, f * e2, f * e2b, zero, zero, f * e4, f * e4b, f * e5, f * e5b
            ),
            axis=-1,
        )

    r3 = np.stack(np.broadcast_arrays(zero, zero, zero, zero, one, zero, zero, zero, zero, zero), axis=-1)
    r3b = np.stack(np.broadcast_arrays(zero, zero, zero, zero, zero, one, zero, zero, zero, zero), axis=-1)
    return np.stack(
        [
            row(f1, sn * (1 + c) * c2s, -sn * (1 + c) * s2s,
                -_SQRT3 * sn**2 * cs, _SQRT3 * sn**2 * ss,
                -_SQRT3 * sn * (1 - c), zero, (1 - c) ** 2 * cs, (1 - c) ** 2 * ss),
            row(f1, sn * (1 + c) * s2s, sn * (1 + c) * c2s,
                -_SQRT3 * sn**2 * ss, -_SQRT3 * sn**2 * cs,
                zero, -_SQRT3 * sn * (1 - c), -((1 - c) ** 2) * ss, (1 - c) ** 2 * cs),
            row(f2, -_SQRT3 * sn * (1 + c) * c2s, _SQRT3 * sn * (1 + c) * s2s,
                (1 + c) * (1 - 3 * c) * cs, -(1 + c) * (1 - 3 * c) * ss,
                -sn * (1 + 3 * c), zero, _SQRT3 * sn**2 * cs, _SQRT3 * sn**2 * ss),
            row(f2, -_SQRT3 * sn * (1 + c) * s2s, -_SQRT3 * sn * (1 + c) * c2s,
                (1 + c) * (1 - 3 * c) * ss, (1 + c) * (1 - 3 * c) * cs,
                zero, -sn * (1 + 3 * c), -_SQRT3 * sn**2 * ss, _SQRT3 * sn**2 * cs),
            r3,
            r3b,
            row(f1, _SQRT3 * sn * (1 - c) * c2s, -_SQRT3 * sn * (1 - c) * s2s,
                (1 - c) * (1 + 3 * c) * cs, -(1 - c) * (1 + 3 * c) * ss,
                sn * (1 - 3 * c), zero, _SQRT3 * sn**2 * cs, _SQRT3 * sn**2 * ss),
            row(f1, _SQRT3 * sn * (1 - c) * s2s, _SQRT3 * sn * (1 - c) * c2s,
                (1 - c) * (1 + 3 * c) * ss, (1 - c) * (1 + 3 * c) * cs,
                zero, sn * (1 - 3 * c), -_SQRT3 * sn**2 * ss, _SQRT3 * sn**2 * cs),
            row(f2, -sn * (1 - c) * c2s, sn * (1 - c) * s2s,
                -_SQRT3 * sn**2 * cs, _SQRT3 * sn**2 * ss,
                _SQRT3 * sn * (1 + c), zero, (1 + c) ** 2 * cs, (1 + c) ** 2 * ss),
            row(f2, -sn * (1 - c) * s2s, -sn * (1 - c) * c2s,
                -_SQRT3 * sn**2 * ss, -_SQRT3 * sn**2 * cs,
                zero, _SQRT3 * sn * (1 + c), -((1 + c) ** 2) * ss, (1 + c) ** 2 * cs),
        ],
        axis=-2,
    )


def _rows_m1(t, s):
    # Half-angle form: the raw coefficients sin t·sin s/√(2(1-cos t)) etc.
    # collapse to cos(t/2)·sin s and friends, unit rows by construction.
    half = t / 2.0
    a1, b1, r1 = np.cos(half) * np.sin(s), np.cos(half) * np.cos(s), np.sin(half)
    a2, b2, r2 = np.sin(half) * np.sin(s), np.sin(half) * np.cos(s), np.cos(half)
    zero = np.zeros(np.broadcast_shapes(np.shape(t), np.shape(s)))
    one = np.ones_like(zero)

    def row(*cols):
        return np.stack(np.broadcast_arrays(*cols), axis=-1)

    return np.stack(
        [
            row(a1, b1, zero, zero, zero, zero, zero, zero, r1, zero),
            row(-b1, a1, zero, zero, zero, zero, zero, zero, zero, r1),
            row(zero, zero, a1, b1, zero, zero, r1, zero, zero, zero),
            row(zero, zero, -b1, a1, zero, zero, zero, r1, zero, zero),
            row(zero, zero, zero, zero, one, zero, zero, zero, zero, zero),
            row(zero, zero, zero, zero, zero, one, zero, zero, zero, zero),
            row(zero, zero, a2, b2, zero, zero, -r2, zero, zero, zero),
            row(zero, zero, -b2, a2, zero, zero, zero, -r2, zero, zero),
            row(a2, b2, zero, zero, zero, zero, zero, zero, -r2, zero),
            row(-b2, a2, zero, zero, zero, zero, zero, zero, zero, -r2),
        ],
        axis=-2,
    )


def _rows(which: str, t, s):
    return _rows_m2(t, s) if which == "m2" else _rows_m1(t, s)


def closed_form_eigenbasis(fam: ShapeFamily, direction: NormalDirection) -> EigenSystem:
    """The ten closed-form eigenvectors of A(t, s), with their worst residual."""
    t, s = direction.t, direction.s
    if min(abs(t), abs(t - np.pi)) < 1e-6:
        raise SingularParameter(f"eigenvector formulas degenerate at t = {t!r}")
    rows = _rows(fam.which, float(t), float(s))
    a = assemble_A(fam, direction)
    residual = np.abs(rows @ a - EIGENVALUES[:, None] * rows).max()
    return EigenSystem(EIGENVALUES.copy(), rows, float(residual))


@lru_cache(maxsize=None)
def _row_second_moments(which: str, n_grid: int) -> np.ndarray:
    """(1/2π)∫∫ ε_j ε_jᵀ sin t dt ds per row j, over the normal sphere.

    The eigenvector rows are trigonometric polynomials of low degree, so
    tensor Gauss-Legendre at n_grid ≥ 64 per axis is exact to rounding.
    Independent of θ, which enters only through the k̃² row weights.
    """
    nodes_t, weights_t = np.polynomial.legendre.leggauss(n_grid)
    t = (nodes_t + 1.0) * (np.pi / 2.0)
    weights_t = weights_t * (np.pi / 2.0)
    nodes_s, weights_s = np.polynomial.legendre.leggauss(n_grid)
    s = (nodes_s + 1.0) * np.pi
    weights_s = weights_s * np.pi
    rows = _rows(which, t[:, None], s[None, :])
    weight = (weights_t * np.sin(t))[:, None] * weights_s[None, :]
    return np.einsum("ts,tsja,tsjb->jab", weight, rows, rows) / (2.0 * np.pi)


def fiber_average_matrix(fam: ShapeFamily, theta: float, n_grid: int = 128) -> np.ndarray:
    """(1/2π)∫∫ Eᵀ diag(k̃²) E sin t dt ds: the averaged distortion form.

    Diagonal in the curvature-adapted basis; the s-integral kills every
    cross term.
    """
    if n_grid < 64:
        raise ValueError("n_grid below 64 per axis is not supported")
    weights = np.repeat(np.square(g6_focal_pushforward_factors(theta)), 2)
    return np.einsum("j,jab->ab", weights, _row_second_moments(fam.which, n_grid))


def fiber_average_coefficients(fam: ShapeFamily, theta: float, n_grid: int = 128):
    """The five per-pair diagonal coefficients (A₁..A₅) of the fiber average.

    For the first leaf A₁ = A₂ = A₄ = A₅ = ½(k̃₁²+k̃₂²+k̃₄²+k̃₅²) and
    A₃ = 2k̃₃²; for the second A₁ = A₅ = k̃₁²+k̃₅², A₂ = A₄ = k̃₂²+k̃₄²,
    A₃ = 2k̃₃².
    """
    diag = np.diagonal(fiber_average_matrix(fam, theta, n_grid))
    return tuple(float(diag[2 * i]) for i in range(5))


def energy_constant_via_fibers(fam: ShapeFamily, n_grid: int = 128):
    """θ-integrate the fiber coefficients against the tube weight.

    For ``m2`` the result is the single constant 2π∫ w·A₁ dθ (A₁ dominates
    A₃ pointwise, so the worst-case energy coefficient is A₁).  For ``m1``
    it is the triple (½∫w·A₃, ½∫w·A₁, ½∫w·A₂), ordered to match
    :func:`isospec.tube_integrals.g6_m1_constants`.
    """
    moments = _row_second_moments(fam.which, n_grid)
    pair_diag = np.diagonal(moments, axis1=1, axis2=2)  # (10 rows, 10 comps)

    def coefficient(theta: float, row: int) -> float:
        weights = np.repeat(np.square(g6_focal_pushforward_factors(theta)), 2)
        return float(weights @ pair_diag[:, row])

    end = np.pi / 6.0
    if fam.which == "m2":
        integral = adaptive_integrate(
            lambda th: g6_focal_weight(th) * coefficient(th, 0), 0.0, end
        ).value
        return 2.0 * np.pi * integral

    def half_integral(row: int) -> float:
        return 0.5 * adaptive_integrate(
            lambda th: g6_focal_weight(th) * coefficient(th, row), 0.0, end
        ).value

    return half_integral(4), half_integral(0), half_integral(2)
