"""Deciders for approximate orthogonality of A-bounded operators.

Three routes decide T perp S in the Chmielinski sense, and they must agree:

* direct minimization of g(lambda) = ||T + lambda S||_A^2 - ||T||_A^2
  + 2 eps ||T||_A ||S||_A |lambda| over the scalar field (the definition);
* the real single-vector criterion: some norm-attaining x has
  |<Tx, Sx>_A| <= eps ||T||_A ||S||_A, reduced to an eigenvalue condition on
  the attainment subspace;
* the complex theta sweep: for every phase theta the Hermitian part of the
  rotated attainment form must straddle the band [-E, E].

In finite dimensions every norm supremum is attained and the unit ball of the
range geometry is compact, so sequence-based forms of these criteria collapse
to the attained forms implemented here; the verdicts record that standing
assumption. Disagreement between routes is a defect, not an input property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import PsdOperator
from .errors import AttainmentSubsetError, ComplexFieldError, RealFieldError
from .numerics import golden_min
from .operators import (
    ABoundedOperator,
    attainment_coords,
    bind_operator,
    norm_is_zero,
    require_positive_norm,
)
from .vectors import Method, Scalar, validate_epsilon

FINITE_DIM_NOTE = "finite-dimensional attainment; B_H(A) cap R(A) bounded holds automatically"


@dataclass(frozen=True)
class OperatorWitness:
    """Whichever object certifies the margin: a scalar, a vector, or a
    worst-phase triple."""

    lam: Optional[Scalar] = None
    vector: Optional[np.ndarray] = None
    theta: Optional[float] = None
    x_theta: Optional[np.ndarray] = None
    y_theta: Optional[np.ndarray] = None


@dataclass(frozen=True)
class OperatorOrthoVerdict:
    holds: bool
    margin: float
    method: Method
    witness: Optional[OperatorWitness] = None
    boundary: bool = False
    assumptions: tuple[str, ...] = ()


def _finish(
    margin: float,
    method: Method,
    tol: float,
    witness: Optional[OperatorWitness],
    assumptions: tuple[str, ...] = (),
) -> OperatorOrthoVerdict:
    margin = float(margin)
    return OperatorOrthoVerdict(
        holds=margin >= -tol,
        margin=margin,
        method=method,
        witness=witness,
        boundary=abs(margin) <= tol,
        assumptions=assumptions,
    )


def _smax_sq_batch(t_tilde: np.ndarray, s_tilde: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Squared top singular values of t_tilde + lam * s_tilde for many lam."""
    lams = np.asarray(lams)
    m = t_tilde[None, :, :] + lams[:, None, None] * s_tilde[None, :, :]
    gram = m.conj().transpose(0, 2, 1) @ m
    return np.linalg.eigvalsh(gram)[:, -1].real


def _field_is_complex(*objs: ABoundedOperator) -> bool:
    return any(o.is_complex for o in objs)


def op_orth_direct(
    a: PsdOperator,
    t: np.ndarray,
    s: np.ndarray,
    eps: float,
    ray_grid: int = 48,
    phase_grid: int = 96,
) -> OperatorOrthoVerdict:
    """Decide T perp S by minimizing g(lambda) over the scalar field.

    g restricted to each ray is convex (a max of convex quadratics plus a
    linear term), so a coarse grid brackets the ray minimum and a
    golden-section polish pins it down. Outside |lambda| <=
    2 (1 + eps) ||T||_A / ||S||_A the triangle inequality forces g >= 0, which
    bounds the search interval. For the complex field a phase/ray grid is
    followed by alternating one-dimensional refinements.
    """
    eps = validate_epsilon(eps)
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    tol = a.tol.verdict_margin_tol
    if norm_is_zero(op_t) or norm_is_zero(op_s):
        return _finish(0.0, Method.DIRECT_MINIMIZATION, tol, OperatorWitness(lam=0.0))

    n_t, n_s = op_t.norm, op_s.norm
    penalty = 2.0 * eps * n_t * n_s

    def g(lam: Scalar) -> float:
        m = op_t.tilde + lam * op_s.tilde
        gram = m.conj().T @ m
        smax_sq = float(np.linalg.eigvalsh(gram)[-1].real)
        return smax_sq - n_t**2 + penalty * abs(lam)

    def g_batch(lams: np.ndarray) -> np.ndarray:
        return _smax_sq_batch(op_t.tilde, op_s.tilde, lams) - n_t**2 + penalty * np.abs(lams)

    lam_cap = 2.0 * (1.0 + eps) * n_t / n_s
    best_lam: Scalar = 0.0
    best_val = 0.0  # g(0) = 0 exactly

    if _field_is_complex(op_t, op_s):
        # dips can be very narrow in |lambda|; a log-spaced radial grid plus
        # convexity-bracket polishing per phase keeps them visible
        ts = np.concatenate([[0.0], lam_cap * np.geomspace(1e-9, 1.0, ray_grid)])
        phases = np.exp(2j * math.pi * np.arange(phase_grid) / phase_grid)
        lams = np.outer(ts, phases)
        vals = g_batch(lams.ravel()).reshape(lams.shape)
        per_phase_idx = np.argmin(vals, axis=0)
        per_phase_val = vals[per_phase_idx, np.arange(phase_grid)]
        candidates = np.argsort(per_phase_val)[:6]

        def polish_phase(p: int) -> tuple[float, float]:
            i = int(per_phase_idx[p])
            lo = float(ts[max(i - 1, 0)])
            hi = float(ts[min(i + 1, len(ts) - 1)])
            rad, val = golden_min(lambda r: g(r * phases[p]), lo, hi, rel_tol=1e-10)
            return rad, val

        theta = 0.0
        radius = 0.0
        for p in candidates:
            rad, val = polish_phase(int(p))
            if val < best_val:
                best_val = val
                theta = 2.0 * math.pi * int(p) / phase_grid
                radius = rad
                best_lam = rad * complex(phases[int(p)])

        if radius > 0.0:
            delta = 2.0 * math.pi / phase_grid

            def ray_min_at(th: float) -> tuple[float, float]:
                return golden_min(
                    lambda r: g(r * np.exp(1j * th)),
                    max(radius / 3.0, 0.0),
                    min(3.0 * radius, lam_cap),
                    rel_tol=1e-8,
                    max_iter=30,
                )

            th_best, val = golden_min(
                lambda th: ray_min_at(th)[1], theta - delta, theta + delta,
                rel_tol=1e-5, max_iter=18,
            )
            if val < best_val:
                rad, val2 = ray_min_at(th_best)
                best_val = min(val, val2)
                best_lam = rad * np.exp(1j * th_best)
    else:
        ts = np.linspace(0.0, lam_cap, ray_grid + 1)
        for direction in (1.0, -1.0):
            vals = g_batch(direction * ts)
            idx = int(np.argmin(vals))
            lo = ts[max(idx - 1, 0)]
            hi = ts[min(idx + 1, ray_grid)]
            rad, val = golden_min(lambda r: g(direction * r), lo, hi)
            if vals[idx] < val:
                rad, val = ts[idx], float(vals[idx])
            if val < best_val:
                best_val, best_lam = val, direction * rad

    return _finish(
        best_val, Method.DIRECT_MINIMIZATION, tol, OperatorWitness(lam=best_lam)
    )


def direct_objective(a: PsdOperator, t: np.ndarray, s: np.ndarray, eps: float, lam: Scalar) -> float:
    """Evaluate g(lambda) for the direct route; reproduces a direct-route
    margin when called at its witness lambda*."""
    eps = validate_epsilon(eps)
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    if norm_is_zero(op_t) or norm_is_zero(op_s):
        return 0.0
    m = op_t.tilde + lam * op_s.tilde
    smax_sq = float(np.linalg.eigvalsh(m.conj().T @ m)[-1].real)
    return smax_sq - op_t.norm**2 + 2.0 * eps * op_t.norm * op_s.norm * abs(lam)


def _attainment_form(op_t: ABoundedOperator, op_s: ABoundedOperator) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates C of M_A^T cap R(A) and the m x m form M with
    c* M c = <T v, S v>_A for v = W- C c."""
    _, coords = attainment_coords(op_t)
    form = coords.conj().T @ (op_s.tilde.conj().T @ op_t.tilde) @ coords
    return coords, form


def op_orth_attainment_real(
    a: PsdOperator, t: np.ndarray, s: np.ndarray, eps: float
) -> OperatorOrthoVerdict:
    """Real-field single-vector criterion on the attainment subspace.

    The range of <Tx, Sx>_A over the attainment sphere is the eigenvalue
    interval of the symmetrized form, so the minimum modulus is zero when the
    interval straddles zero and the nearer endpoint otherwise.
    """
    eps = validate_epsilon(eps)
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    if _field_is_complex(op_t, op_s):
        raise ComplexFieldError("attainment criterion is real-field only; use the theta sweep")
    require_positive_norm(op_t)
    coords, form = _attainment_form(op_t, op_s)
    form_sym = (form + form.T) / 2.0
    mu, vecs = np.linalg.eigh(form_sym)
    mu_min, mu_max = float(mu[0]), float(mu[-1])
    if mu_min <= 0.0 <= mu_max:
        minval = 0.0
        spread = mu_max - mu_min
        if spread == 0.0:
            c_star = vecs[:, 0]
        else:
            c_star = (
                math.sqrt(mu_max / spread) * vecs[:, 0]
                + math.sqrt(-mu_min / spread) * vecs[:, -1]
            )
    elif abs(mu_min) <= abs(mu_max):
        minval, c_star = abs(mu_min), vecs[:, 0]
    else:
        minval, c_star = abs(mu_max), vecs[:, -1]
    margin = eps * op_t.norm * op_s.norm - minval
    witness = OperatorWitness(vector=a.w_inv_map @ (coords @ c_star))
    return _finish(
        margin, Method.ATTAINMENT, a.tol.verdict_margin_tol, witness, (FINITE_DIM_NOTE,)
    )


def op_orth_theta_sweep_complex(
    a: PsdOperator, t: np.ndarray, s: np.ndarray, eps: float, grid: int = 128
) -> OperatorOrthoVerdict:
    """Complex-field criterion: for every theta in [0, pi) the Hermitian part
    of e^{-i theta} times the attainment form must meet the band [-E, E] from
    both sides (lambda_max >= -E and lambda_min <= E)."""
    eps = validate_epsilon(eps)
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    if not _field_is_complex(op_t, op_s):
        raise RealFieldError("theta sweep is complex-field only; use the attainment criterion")
    require_positive_norm(op_t)
    coords, form = _attainment_form(op_t, op_s)
    form = form.astype(np.complex128)
    band = eps * op_t.norm * op_s.norm
    tol = a.tol.verdict_margin_tol

    def hermitian_part(theta: np.ndarray) -> np.ndarray:
        ph = np.exp(-1j * np.asarray(theta))[:, None, None]
        return (ph * form[None] + ph.conj() * form.conj().T[None]) / 2.0

    thetas = np.linspace(0.0, math.pi, grid, endpoint=False)
    eigs = np.linalg.eigvalsh(hermitian_part(thetas))
    slack = np.minimum(eigs[:, -1] + band, band - eigs[:, 0])
    worst = int(np.argmin(slack))

    def slack_at(theta: float) -> float:
        w = np.linalg.eigvalsh(hermitian_part(np.array([theta])))[0]
        return float(min(w[-1] + band, band - w[0]))

    step = math.pi / grid
    theta_ref, slack_ref = golden_min(
        slack_at, thetas[worst] - step, thetas[worst] + step
    )
    if slack[worst] <= slack_ref:
        theta_ref, slack_ref = float(thetas[worst]), float(slack[worst])

    h = hermitian_part(np.array([theta_ref]))[0]
    _, vecs = np.linalg.eigh(h)
    witness = OperatorWitness(
        theta=theta_ref,
        x_theta=a.w_inv_map @ (coords @ vecs[:, -1]),
        y_theta=a.w_inv_map @ (coords @ vecs[:, 0]),
    )
    return _finish(slack_ref, Method.THETA_SWEEP, tol, witness, (FINITE_DIM_NOTE,))


def attainment_subset(
    a: PsdOperator, t: np.ndarray, s: np.ndarray, tol: float = 1e-8
) -> bool:
    """Whether M_A^T is contained in M_A^S.

    Both attainment sets are A-unit spheres of subspaces (plus a shared N(A)
    component), so containment of the coordinate spans, measured by the
    largest principal angle, is the criterion.
    """
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    _, coords_t = attainment_coords(op_t)
    _, coords_s = attainment_coords(op_s)
    residual = coords_t - coords_s @ (coords_s.conj().T @ coords_t)
    sine = float(np.linalg.norm(residual, 2)) if residual.size else 0.0
    return sine <= tol


def op_orth_pointwise(
    a: PsdOperator, t: np.ndarray, s: np.ndarray, eps: float
) -> OperatorOrthoVerdict:
    """Vector-level criterion Tx perp Sx minimized over M_A^T, valid when
    M_A^T is a subset of M_A^S (there ||Tx||_A ||Sx||_A = ||T||_A ||S||_A, so
    the spectral closed form of the attainment route applies verbatim)."""
    eps = validate_epsilon(eps)
    op_t = bind_operator(a, t)
    op_s = bind_operator(a, s)
    if _field_is_complex(op_t, op_s):
        raise ComplexFieldError("pointwise criterion is real-field only")
    require_positive_norm(op_t)
    if not attainment_subset(a, t, s):
        raise AttainmentSubsetError("M_A^T is not contained in M_A^S")
    inner = op_orth_attainment_real(a, t, s, eps)
    return OperatorOrthoVerdict(
        holds=inner.holds,
        margin=inner.margin,
        method=Method.POINTWISE,
        witness=inner.witness,
        boundary=inner.boundary,
        assumptions=inner.assumptions,
    )
