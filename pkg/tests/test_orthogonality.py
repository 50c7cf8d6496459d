from __future__ import annotations

import numpy as np
import pytest

from semiortho import (
    AttainmentSubsetError,
    ComplexFieldError,
    RealFieldError,
    ZeroANormError,
    attainment_subset,
    direct_objective,
    inner_a,
    norm_a,
    op_orth_attainment_real,
    op_orth_direct,
    op_orth_pointwise,
    op_orth_theta_sweep_complex,
    operator_norm_a,
    psd_decompose,
)
from semiortho.sampling import (
    random_a_bounded,
    random_psd,
    shared_attainment_pair,
    zero_a_norm_operator,
)

A_REF = psd_decompose(np.diag([1.0, 2.0]))
T_REF = np.diag([2.0, 1.0])
S_REF = np.diag([0.0, 1.0])
EPS_REF = 1.0 / 3.0


def _real_instance(rng, n=None, rank=None):
    n = n or int(rng.integers(2, 7))
    rank = rank or int(rng.integers(1, n + 1))
    a = random_psd(rng, n, rank=rank)
    return a, random_a_bounded(rng, a), random_a_bounded(rng, a)


# ----------------------------- direct route -----------------------------------


def test_direct_reference_asymmetry():
    assert op_orth_direct(A_REF, T_REF, S_REF, EPS_REF).holds
    reverse = op_orth_direct(A_REF, S_REF, T_REF, EPS_REF)
    assert not reverse.holds
    assert reverse.margin == pytest.approx(-1.0 / 9.0, abs=1e-9)


def test_direct_zero_s_holds(rng):
    a, t, _ = _real_instance(rng)
    v = op_orth_direct(a, t, np.zeros_like(t), 0.2)
    assert v.holds and v.margin == 0.0


def test_direct_zero_t_holds(rng):
    a = random_psd(rng, 4, rank=2)
    z = zero_a_norm_operator(rng, a)
    s = random_a_bounded(rng, a)
    assert op_orth_direct(a, z, s, 0.1).holds
    assert op_orth_direct(a, s, z, 0.1).holds


def test_direct_witness_reproduces_margin(rng):
    a, t, s = _real_instance(rng, n=4, rank=4)
    v = op_orth_direct(a, s, t, 0.05)
    g_at_witness = direct_objective(a, s, t, 0.05, v.witness.lam)
    assert g_at_witness == pytest.approx(v.margin, abs=1e-9)


def test_direct_complex_phase_matters():
    # S = iT: at theta = pi/2 the rotated form is definite, so exact
    # orthogonality fails even though <Tx, Sx> is purely imaginary.
    a = psd_decompose(np.eye(2).astype(complex))
    t = np.diag([1.0 + 0j, 0.5 + 0j])
    s = 1j * t
    assert not op_orth_direct(a, t, s, 0.0).holds
    assert not op_orth_theta_sweep_complex(a, t, s, 0.0).holds


# ----------------------------- attainment route --------------------------------


def test_attainment_reference_values():
    fwd = op_orth_attainment_real(A_REF, T_REF, S_REF, EPS_REF)
    assert fwd.holds
    # |<T(1,0), S(1,0)>_A| = 0 <= (1/3) * 2 * 1
    assert fwd.margin == pytest.approx(2.0 / 3.0, abs=1e-12)

    rev = op_orth_attainment_real(A_REF, S_REF, T_REF, EPS_REF)
    assert not rev.holds
    # |<S(0,1/sqrt 2), T(0,1/sqrt 2)>_A| = 1 > 2/3
    assert rev.margin == pytest.approx(2.0 / 3.0 - 1.0, abs=1e-12)


def test_attainment_witness_attains_and_reproduces(rng):
    a, t, s = _real_instance(rng, n=5, rank=3)
    if operator_norm_a(a, t) < 1e-9:
        pytest.skip("degenerate draw")
    v = op_orth_attainment_real(a, t, s, 0.3)
    x = v.witness.vector
    assert abs(norm_a(a, x) - 1.0) <= 1e-8
    assert abs(norm_a(a, t @ x) - operator_norm_a(a, t)) <= 1e-7
    value = abs(inner_a(a, t @ x, s @ x))
    margin = 0.3 * operator_norm_a(a, t) * operator_norm_a(a, s) - value
    assert margin == pytest.approx(v.margin, abs=1e-8)


def test_attainment_self_fails_below_one(rng):
    a, t, _ = _real_instance(rng, n=4, rank=4)
    for eps in (0.0, 0.5, 0.9):
        assert not op_orth_attainment_real(a, t, t, eps).holds


def test_attainment_rejects_complex_and_zero(rng):
    a = random_psd(rng, 3, rank=3, complex_field=True)
    t = random_a_bounded(rng, a)
    with pytest.raises(ComplexFieldError):
        op_orth_attainment_real(a, t, t, 0.1)
    ar = random_psd(rng, 3, rank=2)
    with pytest.raises(ZeroANormError):
        op_orth_attainment_real(ar, zero_a_norm_operator(rng, ar), random_a_bounded(rng, ar), 0.1)


# ----------------------------- theta sweep -------------------------------------


def test_theta_sweep_orthogonal_images_hold(rng):
    # T and S map their shared attaining vector to A-orthogonal images, and
    # the attainment space is one-dimensional: the rotated form is the zero
    # form there, so the sweep holds for every epsilon.
    a = psd_decompose(np.eye(3).astype(complex))
    t = np.zeros((3, 3), dtype=complex)
    t[0, 0] = 1.0
    t[1, 1] = 0.25
    s = np.zeros((3, 3), dtype=complex)
    s[1, 0] = 1.0  # Se1 = e2 perp Te1 = e1
    s[2, 2] = 0.25
    for eps in (0.0, 0.3):
        assert op_orth_theta_sweep_complex(a, t, s, eps).holds


def test_theta_sweep_rejects_real(rng):
    a, t, s = _real_instance(rng)
    with pytest.raises(RealFieldError):
        op_orth_theta_sweep_complex(a, t, s, 0.1)


def test_theta_sweep_agrees_with_direct(rng):
    disagreements = []
    for k in range(200):
        n = int(rng.integers(2, 5))
        a = random_psd(rng, n, rank=int(rng.integers(1, n + 1)), complex_field=True)
        t = random_a_bounded(rng, a)
        s = random_a_bounded(rng, a)
        eps = float(rng.uniform(0.0, 0.99))
        if operator_norm_a(a, t) < 1e-9:
            continue
        direct = op_orth_direct(a, t, s, eps)
        sweep = op_orth_theta_sweep_complex(a, t, s, eps)
        if direct.holds != sweep.holds:
            disagreements.append((k, direct.margin, sweep.margin))
    assert disagreements == []


def test_route_equivalence_real_random(rng):
    disagreements = []
    for k in range(300):
        a, t, s = _real_instance(rng)
        eps = float(rng.uniform(0.0, 0.99))
        if operator_norm_a(a, t) < 1e-9:
            continue
        direct = op_orth_direct(a, t, s, eps)
        attain = op_orth_attainment_real(a, t, s, eps)
        if direct.holds != attain.holds:
            disagreements.append((k, direct.margin, attain.margin))
    assert disagreements == []


# ----------------------------- subset and pointwise ----------------------------


def test_attainment_subset_reference_and_trivial(rng):
    assert not attainment_subset(A_REF, T_REF, S_REF)
    a, t, _ = _real_instance(rng)
    assert attainment_subset(a, t, t)


def test_attainment_subset_constructed_pair(rng):
    a = random_psd(rng, 5, rank=4)
    t, s = shared_attainment_pair(rng, a)
    assert attainment_subset(a, t, s)
    assert attainment_subset(a, s, t)


def test_pointwise_requires_subset():
    with pytest.raises(AttainmentSubsetError):
        op_orth_pointwise(A_REF, T_REF, S_REF, EPS_REF)


def test_pointwise_self_fails(rng):
    a, t, _ = _real_instance(rng, n=4, rank=4)
    assert not op_orth_pointwise(a, t, t, 0.5).holds


def test_pointwise_orthogonal_images_hold():
    # S copies T on the attainment direction rotated into an A-orthogonal
    # image; both operators attain exactly at e1.
    a = psd_decompose(np.eye(3))
    t = np.diag([2.0, 0.5, 0.5])
    s = np.zeros((3, 3))
    s[1, 0] = 2.0
    s[2, 2] = 0.5
    assert attainment_subset(a, t, s)
    verdict = op_orth_pointwise(a, t, s, 0.0)
    assert verdict.holds
    assert op_orth_direct(a, t, s, 0.0).holds


def test_pointwise_agrees_with_direct_on_shared_attainment(rng):
    for _ in range(40):
        n = int(rng.integers(2, 6))
        a = random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
        t, s = shared_attainment_pair(rng, a)
        eps = float(rng.uniform(0.1, 0.9))
        assert op_orth_pointwise(a, t, s, eps).holds == op_orth_direct(a, t, s, eps).holds


# ----------------------------- structural invariants ---------------------------


def test_operator_homogeneity(rng):
    for _ in range(50):
        a, t, s = _real_instance(rng)
        eps = float(rng.uniform(0.0, 0.9))
        ct = float(rng.uniform(0.2, 4.0)) * float(rng.choice([-1, 1]))
        cs = float(rng.uniform(0.2, 4.0)) * float(rng.choice([-1, 1]))
        assert (
            op_orth_direct(a, t, s, eps).holds
            == op_orth_direct(a, ct * t, cs * s, eps).holds
        )


def test_epsilon_monotonicity(rng):
    for _ in range(50):
        a, t, s = _real_instance(rng)
        lo = float(rng.uniform(0.0, 0.7))
        hi = float(rng.uniform(lo, 0.99))
        v_lo = op_orth_direct(a, t, s, lo)
        v_hi = op_orth_direct(a, t, s, hi)
        assert v_hi.margin >= v_lo.margin - 1e-10
        if v_lo.holds:
            assert v_hi.holds


def test_subset_reverses_orthogonality(rng):
    seen_premise = 0
    for _ in range(120):
        n = int(rng.integers(2, 6))
        a = random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
        t, s = shared_attainment_pair(rng, a)
        eps = float(rng.uniform(0.3, 0.9))
        if op_orth_direct(a, t, s, eps).holds:
            seen_premise += 1
            assert op_orth_direct(a, s, t, eps).holds
    assert seen_premise >= 10  # the construction must actually exercise the premise
