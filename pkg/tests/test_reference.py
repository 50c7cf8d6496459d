from __future__ import annotations

import numpy as np

from semiortho import example_3_1


def test_reference_instance_is_exact():
    ref = example_3_1()
    assert np.array_equal(ref.a.matrix, np.diag([1.0, 2.0]))
    assert np.array_equal(ref.t, np.diag([2.0, 1.0]))
    assert np.array_equal(ref.s, np.diag([0.0, 1.0]))
    assert ref.epsilon == 1.0 / 3.0


def test_reference_verdict_chain():
    ref = example_3_1()
    assert ref.t_perp_s_direct.holds and ref.t_perp_s_attainment.holds
    assert not ref.s_perp_t_direct.holds and not ref.s_perp_t_attainment.holds
    # the attainment route margins are the hand values: 2/3 - 0 and 2/3 - 1
    assert abs(ref.t_perp_s_attainment.margin - 2.0 / 3.0) <= 1e-12
    assert abs(ref.s_perp_t_attainment.margin + 1.0 / 3.0) <= 1e-12
