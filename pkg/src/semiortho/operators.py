"""Operator-level machinery for the A-seminorm geometry.

An operator T is A-bounded exactly when it maps N(A) into N(A) (finite
dimensions); its A-norm is then the top singular value of the reduced matrix
T~ = W* T W- expressed in range coordinates, where the degenerate geometry
becomes Euclidean. The attainment set of T intersected with R(A) is the unit
sphere of the span of the top right-singular subspace of T~.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PsdOperator, null_basis
from .errors import NotABoundedError, ZeroANormError


@dataclass(frozen=True)
class BoundedCheck:
    ok: bool
    residual: float


@dataclass(frozen=True)
class ABoundedOperator:
    """An A-bounded operator with its cached reduction.

    ``tilde`` is the r x r matrix of the compression P T restricted to R(A),
    written in coordinates that make the A-seminorm Euclidean; ``norm`` is
    sigma_max(tilde) = ||T||_A.
    """

    psd: PsdOperator
    matrix: np.ndarray
    tilde: np.ndarray
    norm: float

    @property
    def kernel(self) -> np.ndarray:
        """A^{1/2} T W-, the n x r restricted kernel (same singular values)."""
        return self.psd.u_plus @ self.tilde

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.matrix) or self.psd.is_complex)


def check_a_bounded(a: PsdOperator, t: np.ndarray) -> BoundedCheck:
    """Test ||A T v|| <= rank_tol * lam_max * ||v|| on a basis of N(A) and
    report the worst relative residual."""
    t = a.check_matrix(t)
    nb = null_basis(a)
    if nb.shape[1] == 0 or a.lam_max == 0.0:
        return BoundedCheck(ok=True, residual=0.0)
    image = a.matrix @ (t @ nb)
    residual = float(np.max(np.linalg.norm(image, axis=0))) / a.lam_max
    return BoundedCheck(ok=residual <= a.tol.rank_tol, residual=residual)


def tilde_reduce(a: PsdOperator, t: np.ndarray) -> np.ndarray:
    """Matrix of the range compression of T in A-orthonormal coordinates.

    The reduction is linear in T and preserves the operator A-norm:
    sigma_max of the result equals ||T||_A.
    """
    t = _require_bounded(a, t)
    return a.w_map.conj().T @ t @ a.w_inv_map


def _require_bounded(a: PsdOperator, t: np.ndarray) -> np.ndarray:
    t = a.check_matrix(t)
    chk = check_a_bounded(a, t)
    if not chk.ok:
        raise NotABoundedError(
            f"operator does not map N(A) into N(A): residual {chk.residual:.3e}"
        )
    return t


def _singular_system(tilde: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Singular values (descending) and right-singular vectors of tilde."""
    r = tilde.shape[0]
    if r == 0:
        return np.zeros(0), np.zeros((0, 0))
    gram = tilde.conj().T @ tilde
    w, v = np.linalg.eigh(gram)
    order = np.argsort(w)[::-1]
    sig = np.sqrt(np.clip(w[order], 0.0, None))
    return sig, v[:, order]


def bind_operator(a: PsdOperator, t: np.ndarray) -> ABoundedOperator:
    """Validate A-boundedness and cache the reduction of T."""
    t = _require_bounded(a, t)
    tilde = a.w_map.conj().T @ t @ a.w_inv_map
    sig, _ = _singular_system(tilde)
    norm = float(sig[0]) if sig.size else 0.0
    return ABoundedOperator(psd=a, matrix=t, tilde=tilde, norm=norm)


def operator_norm_a(a: PsdOperator, t: np.ndarray) -> float:
    """||T||_A, the supremum of ||Tx||_A over the A-unit sphere."""
    return bind_operator(a, t).norm


def norm_is_zero(op: ABoundedOperator) -> bool:
    """Whether ||T||_A vanishes up to the rounding noise of the reduction."""
    scale = math.sqrt(max(op.psd.lam_max, 1.0)) * (1.0 + float(np.linalg.norm(op.matrix)))
    return op.norm <= 1e-12 * scale


@dataclass(frozen=True)
class NormAttainment:
    """The attainment structure of an A-bounded operator.

    ``attain_coords`` (r x m) spans, in range coordinates, the subspace whose
    A-unit sphere is M_A^T intersected with R(A); ``attain_basis`` are the
    same vectors lifted to the ambient space (columns, A-orthonormal).
    """

    norm: float
    attain_basis: np.ndarray
    attain_coords: np.ndarray
    null_basis: np.ndarray
    multiplicity: int


def attainment_coords(op: ABoundedOperator) -> tuple[np.ndarray, np.ndarray]:
    """Top-cluster right-singular coordinates of the reduction.

    Returns (singular values, r x m coordinate basis). For the zero operator
    every A-unit vector attains, so the basis spans all of the coordinates.
    """
    sig, vecs = _singular_system(op.tilde)
    r = op.tilde.shape[0]
    if op.norm == 0.0 or norm_is_zero(op):
        return sig, np.eye(r, dtype=op.tilde.dtype)
    cluster = sig >= sig[0] * (1.0 - op.psd.tol.cluster_tol)
    m = int(np.count_nonzero(cluster))
    return sig, vecs[:, :m]


def norm_attainment_set(a: PsdOperator, t: np.ndarray) -> NormAttainment:
    """Norm, attainment subspace basis, and N(A) basis for an A-bounded T."""
    op = bind_operator(a, t)
    _, coords = attainment_coords(op)
    return NormAttainment(
        norm=op.norm,
        attain_basis=a.w_inv_map @ coords,
        attain_coords=coords,
        null_basis=null_basis(a),
        multiplicity=coords.shape[1],
    )


@dataclass(frozen=True)
class IsometryCheck:
    ok: bool
    deviation: float


def is_a_isometry(a: PsdOperator, t: np.ndarray) -> IsometryCheck:
    """Whether every A-unit vector attains ||T||_A.

    Equivalent to all singular values of the reduction being equal; the
    reported deviation is (sigma_max^2 - sigma_min^2) / sigma_max^2. The zero
    operator counts as an A-isometry of norm 0.
    """
    op = bind_operator(a, t)
    sig, _ = _singular_system(op.tilde)
    if sig.size == 0 or op.norm == 0.0 or norm_is_zero(op):
        return IsometryCheck(ok=True, deviation=0.0)
    deviation = float((sig[0] ** 2 - sig[-1] ** 2) / sig[0] ** 2)
    return IsometryCheck(ok=deviation <= a.tol.isometry_tol, deviation=deviation)


def require_positive_norm(op: ABoundedOperator) -> None:
    if norm_is_zero(op):
        raise ZeroANormError("operator has zero A-norm; use the direct route")
