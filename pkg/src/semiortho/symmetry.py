"""Classification of approximate right/left symmetric operators (real field).

An A-bounded operator T is right symmetric for the approximate operator
orthogonality exactly when it is an A-isometry, and left symmetric exactly
when ||T||_A = 0. Both "only if" directions are constructive: this module
builds the counterexample operator, working in range coordinates where the
A-seminorm is Euclidean and lifting the result back with zero action on N(A).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import PsdOperator
from .errors import (
    ComplexFieldError,
    IsometryError,
    RankTooSmallError,
    WitnessConstructionError,
    ZeroANormError,
)
from .numerics import orthonormal_complement
from .operators import (
    ABoundedOperator,
    attainment_coords,
    bind_operator,
    is_a_isometry,
    norm_is_zero,
)
from .vectors import validate_epsilon

_ORTHO_ASSERT_TOL = 1e-8


class ConstructionTag(str, enum.Enum):
    RIGHT_PROOF = "right_proof"
    LEFT_MULTI_PAIR = "left_multi_pair"
    LEFT_CASE_I = "left_case_i"
    LEFT_CASE_II = "left_case_ii"


class SymmetryKind(str, enum.Enum):
    RIGHT_SYMMETRIC = "right_symmetric"
    NOT_RIGHT_SYMMETRIC = "not_right_symmetric"
    LEFT_SYMMETRIC = "left_symmetric"
    NOT_LEFT_SYMMETRIC = "not_left_symmetric"


@dataclass(frozen=True)
class LeftParams:
    """Parameters of the left-symmetry counterexample.

    eps1 is the mixing angle parameter in (eps, 1); t the interior point of
    its admissible interval; a, b the rotation coefficients with a^2 + b^2 = 1
    and a*eps1 > eps; alpha the midpoint of (alpha_lo, alpha_hi); beta the
    secondary singular direction weight (Case II only, else 0).
    """

    eps1: float
    t: float
    a: float
    b: float
    alpha_lo: float
    alpha_hi: float
    alpha: float
    beta: float = 0.0


@dataclass(frozen=True)
class WitnessConstruction:
    """Intermediates and result of a symmetry counterexample.

    Basis data lives in range coordinates (length-r vectors); ``operator`` is
    the ambient n x n lift, zero on N(A); ``tilde`` its coordinate matrix.
    """

    tag: ConstructionTag
    attain_basis: np.ndarray
    extension_basis: np.ndarray
    w: Optional[np.ndarray]
    sign_flipped: bool
    params: Optional[LeftParams]
    operator: np.ndarray
    tilde: np.ndarray


@dataclass(frozen=True)
class SymmetryReport:
    kind: SymmetryKind
    epsilon: float
    evidence: float
    witness: Optional[ABoundedOperator] = None
    construction: Optional[WitnessConstruction] = None


def left_parameters(eps: float) -> LeftParams:
    """Deterministic parameters for the left-symmetry counterexample.

    eps1 = (1 + eps)/2 keeps both denominators away from zero; t is half of
    its admissible upper bound; then a*eps1 > eps and alpha_lo < 1 hold, and
    the alpha interval is nonempty for eps > 0 and degenerates to its single
    admissible endpoint at eps = 0 (which yields the exact-orthogonality
    witness).
    """
    eps = validate_epsilon(eps)
    eps1 = (1.0 + eps) / 2.0
    root_eps = math.sqrt(1.0 - eps**2)
    root_eps1 = math.sqrt(1.0 - eps1**2)
    t = 0.25 * (1.0 - eps * root_eps1 / (eps1 * root_eps))
    a = eps * eps1 + (1.0 - 2.0 * t) * root_eps * root_eps1
    if not -1.0 < a < 1.0:
        raise WitnessConstructionError(f"rotation coefficient out of range: a = {a}")
    b = math.sqrt(1.0 - a**2)
    if a * eps1 <= eps:
        raise WitnessConstructionError(
            f"parameter inequality a*eps1 > eps failed: {a * eps1} <= {eps}"
        )
    alpha_lo = (a * eps1 - eps) / (root_eps1 * b)
    alpha_hi = min(1.0, (a * eps1 + eps) / (root_eps1 * b))
    if alpha_hi < alpha_lo - 1e-12:
        raise WitnessConstructionError(
            f"alpha interval inverted: ({alpha_lo}, {alpha_hi})"
        )
    return LeftParams(
        eps1=eps1,
        t=t,
        a=a,
        b=b,
        alpha_lo=alpha_lo,
        alpha_hi=alpha_hi,
        alpha=(alpha_lo + alpha_hi) / 2.0,
    )


def _require_real(a: PsdOperator, op: ABoundedOperator) -> None:
    if a.is_complex or op.is_complex:
        raise ComplexFieldError("symmetry classification is real-field only")


def _lift(a: PsdOperator, tilde: np.ndarray) -> np.ndarray:
    """Ambient operator with the given range-coordinate matrix, zero on N(A)."""
    return a.w_inv_map @ tilde @ a.w_map.conj().T


def right_witness(a: PsdOperator, t: np.ndarray, eps: float) -> WitnessConstruction:
    """Build U with U perp T but not T perp U, for a non-isometry T.

    Steps, in range coordinates with T normalized to A-norm 1: take the
    attainment basis x_1..x_m, extend by x_{m+1}..x_r; pick an A-orthonormal
    w_0 orthogonal to the (orthonormal) images of the attainment basis; flip
    its sign so the norm cannot dip along +T x_{m+1}; send x_i to -T x_i for
    i <= m, x_{m+1} to w_0, the rest to zero.
    """
    eps = validate_epsilon(eps)
    op = bind_operator(a, t)
    _require_real(a, op)
    if norm_is_zero(op):
        raise ZeroANormError("zero operator is an A-isometry; no right witness exists")
    if is_a_isometry(a, t).ok:
        raise IsometryError("operator is an A-isometry; no right witness exists")
    r = a.rank
    if r < 2:
        raise RankTooSmallError("a non-isometry needs dim R(A) >= 2")

    tilde_n = op.tilde / op.norm
    _, coords = attainment_coords(op)
    m = coords.shape[1]
    if m >= r:
        raise IsometryError("attainment subspace fills R(A); operator is an A-isometry")
    extension = orthonormal_complement(coords, r)
    images = tilde_n @ coords
    gram_defect = float(np.max(np.abs(images.T @ images - np.eye(m))))
    if gram_defect > _ORTHO_ASSERT_TOL:
        raise WitnessConstructionError(
            f"attainment images not orthonormal (defect {gram_defect:.2e}); "
            "attainment cluster is ill-resolved"
        )
    w0 = orthonormal_complement(images, r)[:, 0]
    lead = float(w0 @ (tilde_n @ extension[:, 0]))
    flipped = lead < 0.0
    if flipped:
        w0 = -w0

    tilde_u = -images @ coords.T + np.outer(w0, extension[:, 0])
    return WitnessConstruction(
        tag=ConstructionTag.RIGHT_PROOF,
        attain_basis=coords,
        extension_basis=extension,
        w=w0,
        sign_flipped=flipped,
        params=None,
        operator=_lift(a, tilde_u),
        tilde=tilde_u,
    )


def left_witness(a: PsdOperator, t: np.ndarray, eps: float) -> WitnessConstruction:
    """Build S with T perp S but not S perp T, for any T with ||T||_A > 0.

    Three branches, in range coordinates with T normalized to A-norm 1:

    * attainment multiplicity m >= 2: S vanishes on the A-orthocomplement of
      a second attaining vector z_2 and copies T there;
    * m = 1 and T kills the orthocomplement of its attaining vector x
      (rank-one T): rotate (x, x_1) by eps1 into (z_1, z_2) and send them to
      prescribed combinations of Tx and a unit w orthogonal to Tx;
    * m = 1 with some orthocomplement basis vector x_k not killed: the same
      with x_1 replaced by x_k and w the normalized image of x_k, which is
      orthogonal to Tx automatically (x is a top singular vector).
    """
    eps = validate_epsilon(eps)
    op = bind_operator(a, t)
    _require_real(a, op)
    if norm_is_zero(op):
        raise ZeroANormError("zero-A-norm operator is left symmetric; no witness exists")
    r = a.rank
    if r < 2:
        raise RankTooSmallError("left witness construction needs dim R(A) >= 2")

    tilde_n = op.tilde / op.norm
    _, coords = attainment_coords(op)
    m = coords.shape[1]

    if m >= 2:
        z2 = coords[:, 1]
        tilde_s = np.outer(tilde_n @ z2, z2)
        return WitnessConstruction(
            tag=ConstructionTag.LEFT_MULTI_PAIR,
            attain_basis=coords[:, :2],
            extension_basis=np.zeros((r, 0)),
            w=None,
            sign_flipped=False,
            params=None,
            operator=_lift(a, tilde_s),
            tilde=tilde_s,
        )

    x = coords[:, 0]
    image_x = tilde_n @ x
    complement = orthonormal_complement(x[:, None], r)
    images = tilde_n @ complement
    norms = np.linalg.norm(images, axis=0)
    k = int(np.argmax(norms))
    beta = float(norms[k])

    if beta <= 1e-9:
        tag = ConstructionTag.LEFT_CASE_I
        partner = complement[:, 0]
        w = orthonormal_complement(image_x[:, None], r)[:, 0]
        beta = 0.0
    else:
        tag = ConstructionTag.LEFT_CASE_II
        partner = complement[:, k]
        w = images[:, k] / beta
        cross = abs(float(w @ image_x))
        if cross > _ORTHO_ASSERT_TOL:
            raise WitnessConstructionError(
                f"secondary image not orthogonal to Tx (|<w,Tx>| = {cross:.2e}); "
                "attainment cluster is ill-resolved"
            )

    params = left_parameters(eps)
    e1, s1 = params.eps1, math.sqrt(1.0 - params.eps1**2)
    z1 = e1 * x + s1 * partner
    z2 = -s1 * x + e1 * partner
    tilde_s = np.outer(params.a * image_x + params.b * w, z1) + params.alpha * np.outer(
        params.b * image_x - params.a * w, z2
    )
    params = LeftParams(
        eps1=params.eps1,
        t=params.t,
        a=params.a,
        b=params.b,
        alpha_lo=params.alpha_lo,
        alpha_hi=params.alpha_hi,
        alpha=params.alpha,
        beta=beta,
    )

    value_ts = abs(e1 * params.a - s1 * params.alpha * params.b)
    if value_ts > eps + 1e-9:
        raise WitnessConstructionError(
            f"forward guarantee violated: |<Tx,Sx>| = {value_ts} > eps = {eps}"
        )
    value_st = params.a * e1 + params.b * s1 * beta
    if value_st <= eps:
        raise WitnessConstructionError(
            f"reverse guarantee violated: <Sz1,Tz1> = {value_st} <= eps = {eps}"
        )

    return WitnessConstruction(
        tag=tag,
        attain_basis=x[:, None],
        extension_basis=partner[:, None],
        w=w,
        sign_flipped=False,
        params=params,
        operator=_lift(a, tilde_s),
        tilde=tilde_s,
    )


def classify_right(a: PsdOperator, t: np.ndarray, eps: float) -> SymmetryReport:
    """Right symmetric iff A-isometry; otherwise attach a verified witness."""
    eps = validate_epsilon(eps)
    op = bind_operator(a, t)
    _require_real(a, op)
    if a.rank < 1:
        raise RankTooSmallError("right classification needs dim R(A) >= 1")
    iso = is_a_isometry(a, t)
    if iso.ok:
        return SymmetryReport(
            kind=SymmetryKind.RIGHT_SYMMETRIC, epsilon=eps, evidence=iso.deviation
        )
    construction = right_witness(a, t, eps)
    return SymmetryReport(
        kind=SymmetryKind.NOT_RIGHT_SYMMETRIC,
        epsilon=eps,
        evidence=iso.deviation,
        witness=bind_operator(a, construction.operator),
        construction=construction,
    )


def classify_left(a: PsdOperator, t: np.ndarray, eps: float) -> SymmetryReport:
    """Left symmetric iff ||T||_A = 0; otherwise attach a verified witness."""
    eps = validate_epsilon(eps)
    op = bind_operator(a, t)
    _require_real(a, op)
    if a.rank < 2:
        raise RankTooSmallError("left classification needs dim R(A) >= 2")
    if norm_is_zero(op):
        return SymmetryReport(
            kind=SymmetryKind.LEFT_SYMMETRIC, epsilon=eps, evidence=op.norm
        )
    construction = left_witness(a, t, eps)
    return SymmetryReport(
        kind=SymmetryKind.NOT_LEFT_SYMMETRIC,
        epsilon=eps,
        evidence=op.norm,
        witness=bind_operator(a, construction.operator),
        construction=construction,
    )
