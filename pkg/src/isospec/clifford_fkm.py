"""Symmetric Clifford systems and the quartic isoparametric polynomial.

A symmetric Clifford system is a family P₀..P_m of symmetric matrices on
R^{2l} with P_iP_j + P_jP_i = 2δ_ij·Id.  The associated quartic

    F(x) = |x|⁴ - 2 Σ_i ⟨P_i x, x⟩²

restricts to an isoparametric function on the unit sphere; its level sets
F = +1 and F = -1 are the two focal submanifolds.  On the F = +1 leaf the
frame {x, P₀x, ..., P_m x} is orthonormal, the shape operator in the unit
normal direction ξ_a = Σ a_β P_β x is X ↦ -(P_a X)^tangential with
eigenvalues {+1, 0, -1}, and for the quaternionic (m, l) = (4, 8) system
the tangent space is spanned by the projections of {P_β P_γ x}.

Two systems are provided: the small (1, 3) system on R⁶, whose F = +1
leaf is double-covered by the unit quaternions via σ below, and the
homogeneous (4, 8) system on R¹⁶ built from right quaternion
multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CliffordSystem",
    "FocalPoint",
    "NoConvergence",
    "NotTangent",
    "NotUnit",
    "TangentSplit",
    "UnsupportedSignature",
    "build_clifford_system",
    "fiber_average_Y",
    "fkm_value_and_gradient",
    "homogeneity_span_check",
    "project_to_focal",
    "shape_operator_action",
    "sigma_double_cover",
    "sigma_pushforward",
    "tangent_split",
]


class UnsupportedSignature(ValueError):
    """No construction is wired up for the requested (m, l)."""


class NoConvergence(RuntimeError):
    """Projection onto the focal leaf failed; carries the last iterate."""

    def __init__(self, message, x=None, residual=None):
        super().__init__(message)
        self.x = x
        self.residual = residual


class NotTangent(ValueError):
    """Vector violates the tangency precondition."""


class NotUnit(ValueError):
    """Vector is not a unit quaternion/direction."""


@dataclass(frozen=True)
class CliffordSystem:
    m: int
    l: int
    matrices: tuple[np.ndarray, ...]

    @property
    def ambient_dim(self) -> int:
        return 2 * self.l

    def stacked(self) -> np.ndarray:
        return np.stack(self.matrices)


def _right_mult_matrix(u: np.ndarray) -> np.ndarray:
    """Matrix of quaternion right multiplication x ↦ x·u on R⁴."""
    w, x, y, z = u
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ],
        dtype=float,
    )


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


def build_clifford_system(m: int, l: int) -> CliffordSystem:
    """Construct the (1, 3) system on R⁶ or the (4, 8) system on R¹⁶.

    Both have exactly integer entries, so the anticommutation relations
    hold with zero residual.  The (4, 8) system uses the three right
    multiplications R_i, R_j, R_k on the quaternions: each is skew,
    squares to -Id, and they pairwise anticommute, which makes the block
    matrices below symmetric with the required relations.  Right (rather
    than left) multiplications give the representation whose tangent
    spaces are spanned by {P_β P_γ x} on the F = +1 leaf; the span check
    below certifies that numerically.
    """
    if (m, l) == (1, 3):
        eye = np.eye(3)
        zero = np.zeros((3, 3))
        p0 = np.block([[eye, zero], [zero, -eye]])
        p1 = np.block([[zero, eye], [eye, zero]])
        return CliffordSystem(1, 3, (_freeze(p0), _freeze(p1)))
    if (m, l) == (4, 8):
        units = np.eye(4)[1:]  # i, j, k
        rights = [np.kron(np.eye(2), _right_mult_matrix(u)) for u in units]
        eye = np.eye(8)
        zero = np.zeros((8, 8))
        mats = [
            np.block([[eye, zero], [zero, -eye]]),
            np.block([[zero, eye], [eye, zero]]),
        ]
        mats += [np.block([[zero, r], [-r, zero]]) for r in rights]
        return CliffordSystem(4, 8, tuple(_freeze(p) for p in mats))
    raise UnsupportedSignature(f"no Clifford system wired up for (m, l) = ({m}, {l})")


def fkm_value_and_gradient(sys: CliffordSystem, x: np.ndarray):
    """F(x) = |x|⁴ - 2Σ⟨P_ix,x⟩² and its gradient 4|x|²x - 8Σ⟨P_ix,x⟩P_ix."""
    x = np.asarray(x, dtype=float)
    px = sys.stacked() @ x
    forms = px @ x
    value = float(x @ x) ** 2 - 2.0 * float(forms @ forms)
    gradient = 4.0 * float(x @ x) * x - 8.0 * (forms @ px)
    return value, gradient


@dataclass(frozen=True)
class FocalPoint:
    coordinates: np.ndarray
    which: str
    residual: float
    iterations: int = 0


def _constraints(sys: CliffordSystem, x: np.ndarray, which: str):
    """Constraint vector and Jacobian defining the requested leaf.

    The F = +1 leaf is cut out by the stronger system {|x|² = 1,
    ⟨P_ix,x⟩ = 0 for all i}: on the unit sphere F = 1 iff every quadratic
    form vanishes, and the extra equations keep the Gauss-Newton step
    well-conditioned where the squared forms would nearly cancel.
    """
    if which == "M1":
        px = sys.stacked() @ x
        c = np.concatenate([[x @ x - 1.0], px @ x])
        jac = np.vstack([2.0 * x, 2.0 * px])
    else:
        value, grad = fkm_value_and_gradient(sys, x)
        c = np.array([x @ x - 1.0, value + 1.0])
        jac = np.vstack([2.0 * x, grad])
    return c, jac


def project_to_focal(
    sys: CliffordSystem, x0: np.ndarray, which: str, tol: float = 1e-12
) -> FocalPoint:
    """Damped Gauss-Newton projection onto the F = +1 or F = -1 leaf.

    Stops when all constraints are within ``tol``; a point already on the
    leaf is returned with zero iterations.  Raises :class:`NoConvergence`
    after 100 iterations or from a degenerate start, which in practice
    means the start lies in the wrong basin.
    """
    if which not in ("M1", "M2"):
        raise ValueError("which must be 'M1' or 'M2'")
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (sys.ambient_dim,) or not np.all(np.isfinite(x)) or not x.any():
        raise NoConvergence("degenerate start point", x=x)

    def residual_of(y):
        value, _ = fkm_value_and_gradient(sys, y)
        return abs(value - (1.0 if which == "M1" else -1.0))

    c, jac = _constraints(sys, x, which)
    for iteration in range(100):
        err = np.max(np.abs(c))
        if err <= tol:
            return FocalPoint(_freeze(x), which, residual_of(x), iteration)
        step = np.linalg.lstsq(jac, -c, rcond=None)[0]
        damping = 1.0
        for _ in range(30):
            trial = x + damping * step
            c_trial, jac_trial = _constraints(sys, trial, which)
            if np.max(np.abs(c_trial)) < err:
                x, c, jac = trial, c_trial, jac_trial
                break
            damping *= 0.5
        else:
            raise NoConvergence(
                "line search stalled", x=x, residual=residual_of(x)
            )
    raise NoConvergence("no convergence in 100 iterations", x=x, residual=residual_of(x))


def _normal_frame(sys: CliffordSystem, p: FocalPoint) -> np.ndarray:
    """Rows x, P₀x, ..., P_mx; orthonormal on the F = +1 leaf."""
    x = p.coordinates
    return np.vstack([x, sys.stacked() @ x])


def _tangent_project(frame: np.ndarray, v: np.ndarray) -> np.ndarray:
    return v - frame.T @ (frame @ v)


def tangent_split(sys: CliffordSystem, p: FocalPoint, v: np.ndarray) -> "TangentSplit":
    """Split an ambient vector at p into tangent and normal parts."""
    v = np.asarray(v, dtype=float)
    frame = _normal_frame(sys, p)
    coeffs = frame @ v
    normal = frame.T @ coeffs
    return TangentSplit(
        tangent_part=v - normal,
        normal_part=normal,
        radial_coeff=float(coeffs[0]),
        normal_coeffs=coeffs[1:].copy(),
    )


@dataclass(frozen=True)
class TangentSplit:
    tangent_part: np.ndarray
    normal_part: np.ndarray
    radial_coeff: float
    normal_coeffs: np.ndarray


def shape_operator_action(
    sys: CliffordSystem, p: FocalPoint, a: np.ndarray, X: np.ndarray
) -> np.ndarray:
    """A_{ξ_a}X = -(P_a X)^tangential at a point of the F = +1 leaf.

    ``a`` selects the unit normal ξ_a = Σ a_β P_β x.  The eigenvalues are
    {+1, 0, -1} with multiplicities (m₂, m₁, m₂) independent of a.
    """
    if p.which != "M1":
        raise ValueError("the algebraic shape operator is set up on the F = +1 leaf")
    a = np.asarray(a, dtype=float)
    X = np.asarray(X, dtype=float)
    if abs(a @ a - 1.0) > 1e-8:
        raise NotUnit("normal coefficient vector must be unit")
    frame = _normal_frame(sys, p)
    xnorm = max(float(np.linalg.norm(X)), 1e-300)
    if np.max(np.abs(frame @ X)) > 1e-8 * xnorm:
        raise NotTangent("X has a component along the normal frame")
    p_a = np.tensordot(a, sys.stacked(), axes=1)
    return -_tangent_project(frame, p_a @ X)


def homogeneity_span_check(sys: CliffordSystem, p: FocalPoint) -> int:
    """Rank of the tangent projections of {P_βP_γ x : β < γ}.

    Rank 10 for the (4, 8) system certifies the homogeneous representation:
    the second-order products already span the whole tangent space.
    Computed with singular values, threshold 1e-8 relative to the largest.
    """
    x = p.coordinates
    frame = _normal_frame(sys, p)
    mats = sys.matrices
    vectors = [
        _tangent_project(frame, mats[beta] @ (mats[gamma] @ x))
        for beta in range(len(mats))
        for gamma in range(beta + 1, len(mats))
    ]
    singular = np.linalg.svd(np.vstack(vectors), compute_uv=False)
    return int(np.sum(singular > 1e-8 * singular[0]))


def fiber_average_Y(
    sys: CliffordSystem,
    p: FocalPoint,
    X: np.ndarray,
    n_mc: int = 100_000,
    seed: int = 0,
):
    """Monte-Carlo averages of the eigenspace split of X over unit normals.

    For each uniform a on the unit m-sphere, X splits orthogonally as
    Y₁ + Y₋₁ + Y along the (+1, -1, 0)-eigenspaces of A_{ξ_a}; returns
    (avg |Y|², avg |Y₁|², avg |Y₋₁|²).  For a unit tangent X of the (4, 8)
    system the averages are (2/5, 3/10, 3/10).
    """
    if n_mc < 10_000:
        raise ValueError("n_mc below 10^4 gives meaningless averages")
    X = np.asarray(X, dtype=float)
    frame = _normal_frame(sys, p)
    stacked = sys.stacked()
    tangent = np.eye(sys.ambient_dim) - frame.T @ frame

    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n_mc, sys.m + 1))
    a /= np.linalg.norm(a, axis=1, keepdims=True)

    px = stacked @ X  # (m+1, 2l)
    w = -(a @ px) @ tangent.T  # A_{ξ_a} X per sample
    pw = np.einsum("kab,nb->nka", stacked, w)
    w2 = -np.einsum("nk,nka->na", a, pw) @ tangent.T  # A²X per sample
    y_plus = 0.5 * (w2 + w)
    y_minus = 0.5 * (w2 - w)
    y_zero = X[None, :] - w2
    sq = lambda v: float(np.mean(np.einsum("na,na->n", v, v)))
    return sq(y_zero), sq(y_plus), sq(y_minus)


# ---------------------------------------------------------------------------
# The quaternion double cover of the (1, 3) leaf


def _qmul(a, b):
    w = a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2] - a[..., 3] * b[..., 3]
    x = a[..., 0] * b[..., 1] + a[..., 1] * b[..., 0] + a[..., 2] * b[..., 3] - a[..., 3] * b[..., 2]
    y = a[..., 0] * b[..., 2] - a[..., 1] * b[..., 3] + a[..., 2] * b[..., 0] + a[..., 3] * b[..., 1]
    z = a[..., 0] * b[..., 3] + a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1] + a[..., 3] * b[..., 0]
    return np.stack([w, x, y, z], axis=-1)


def _qconj(a):
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


_QJ = np.array([0.0, 0.0, 1.0, 0.0])
_QK = np.array([0.0, 0.0, 0.0, 1.0])


def sigma_double_cover(a: np.ndarray) -> np.ndarray:
    """σ(a) = (a j ā, a k ā)/√2 for unit quaternions a; lands on the (1, 3) leaf.

    Conjugation fixes the real part at zero, so the two imaginary 3-vectors
    are returned as a 6-vector (or an (n, 6) batch).  σ(-a) = σ(a): the map
    is the two-fold covering of the leaf by the unit quaternions.
    """
    a = np.asarray(a, dtype=float)
    norms = np.linalg.norm(a, axis=-1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        raise NotUnit("sigma is defined on unit quaternions")
    abar = _qconj(a)
    xj = _qmul(_qmul(a, _QJ), abar)[..., 1:]
    xk = _qmul(_qmul(a, _QK), abar)[..., 1:]
    return np.concatenate([xj, xk], axis=-1) / np.sqrt(2.0)


def sigma_pushforward(a: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Differential of σ at a, applied to a quaternion increment X.

    dσ_a(X) = (a j X̄ + X j ā, a k X̄ + X k ā)/√2.  On the orthonormal frame
    (a·i, a·j, a·k) of the unit quaternions the squared image norms are
    (4, 2, 2): the induced metric on the covered leaf is the fiber-stretched
    (Berger) one, not the round one.
    """
    a = np.asarray(a, dtype=float)
    X = np.asarray(X, dtype=float)
    dj = _qmul(_qmul(a, _QJ), _qconj(X)) + _qmul(_qmul(X, _QJ), _qconj(a))
    dk = _qmul(_qmul(a, _QK), _qconj(X)) + _qmul(_qmul(X, _QK), _qconj(a))
    return np.concatenate([dj[..., 1:], dk[..., 1:]], axis=-1) / np.sqrt(2.0)
