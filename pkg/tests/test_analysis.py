import itertools
import math

import numpy as np
import pytest

from unsharpseq.analysis import CLASSICAL_BOUND, TSIRELSON_BOUND, chsh_closed_form, chsh_exact, chsh_lab_frame, \
    min_entropy_bound, witness_expectation, witness_spectrum
from unsharpseq.exceptions import DegenerateState, InvalidSharpness, OutOfRange
from unsharpseq.protocol import ENTRIES, History, StepParams, max_sharpness, run_branch, theta_for
from unsharpseq.tests import closed_form_error, random_product_witness_minimum, threshold_error


def step_at(eta, mu):
    return StepParams(eta=eta, alpha=0.0, beta=0.0, theta=theta_for(eta), mu=mu)


@pytest.mark.parametrize("eta,mu", itertools.product([0.07, 0.12, 0.34, 0.50, math.pi / 4], [0.0, 0.19, 0.34]))
def test_chsh_born_rule_matches_closed_form(eta, mu):
    assert abs(chsh_exact(step_at(eta, mu)).s_value - chsh_closed_form(eta, mu)) < 1e-10


def test_closed_form_error_on_acceptance_grid():
    assert closed_form_error() < 1e-10


def test_sharp_measurement_on_maximally_entangled_state_reaches_tsirelson():
    breakdown = chsh_exact(step_at(math.pi / 4, 0.0))
    assert breakdown.s_value == pytest.approx(TSIRELSON_BOUND)
    assert breakdown.violates()
    for correlator in breakdown.correlators.values():
        assert abs(correlator) == pytest.approx(1 / math.sqrt(2))


def test_chsh_of_first_step():
    assert chsh_closed_form(math.pi / 4, 0.34) == pytest.approx(2.20, abs=0.005)


def test_chsh_needs_entanglement_and_sharpness():
    with pytest.raises(DegenerateState):
        chsh_exact(step_at(0.0, 0.1))
    with pytest.raises(InvalidSharpness):
        chsh_exact(step_at(0.34, None))


@pytest.mark.parametrize("eta", np.linspace(math.pi / 4 / 1000, math.pi / 4, 1000)[::37])
def test_no_violation_at_maximal_sharpness(eta):
    assert chsh_closed_form(eta, max_sharpness(eta)) == pytest.approx(2.0, abs=1e-9)


def test_threshold_on_dense_grid():
    assert threshold_error(points=1000) < 1e-9


def test_violation_below_maximal_sharpness():
    eta = 0.34
    assert chsh_closed_form(eta, max_sharpness(eta) - 0.01) > CLASSICAL_BOUND
    assert chsh_closed_form(eta, max_sharpness(eta) + 0.01) < CLASSICAL_BOUND


@pytest.mark.parametrize("entries", list(itertools.product(ENTRIES, repeat=2)), ids=lambda entries: History(entries).render())
def test_lab_frame_chsh_matches_canonical_frame(default_config, entries):
    state, trace = run_branch(default_config, History(entries))
    assert chsh_lab_frame(state, trace).s_value == pytest.approx(chsh_exact(trace[-1]).s_value, abs=1e-10)


def test_witness_spectrum():
    np.testing.assert_allclose(witness_spectrum(), [-1, 1, 1, 3], atol=1e-12)


@pytest.mark.parametrize("eta", np.linspace(0, math.pi / 4, 21))
def test_witness_on_canonical_states(eta):
    report = witness_expectation(step_at(eta, None))
    assert report.expectation == pytest.approx(-math.sin(2 * eta), abs=1e-12)
    assert report.entangled == (eta > 1e-9)


def test_witness_is_nonnegative_on_product_states():
    assert random_product_witness_minimum(samples=100_000, seed=1) >= -1e-10


def test_min_entropy_endpoints():
    assert min_entropy_bound(CLASSICAL_BOUND) == 0.0
    assert min_entropy_bound(TSIRELSON_BOUND) == pytest.approx(1.0)


def test_min_entropy_is_monotonic():
    values = [min_entropy_bound(s) for s in np.linspace(2.0, TSIRELSON_BOUND, 50)]
    assert all(later >= earlier for earlier, later in zip(values, values[1:]))


def test_min_entropy_of_amplified_branch():
    expected = -math.log2(0.5 + 0.5 * math.sqrt(2 - 2.61 ** 2 / 4))
    assert min_entropy_bound(2.61) == pytest.approx(expected)
    assert min_entropy_bound(2.61) == pytest.approx(0.372, abs=1e-3)


@pytest.mark.parametrize("s_value", [1.9, 2.9])
def test_min_entropy_out_of_range(s_value):
    with pytest.raises(OutOfRange):
        min_entropy_bound(s_value)
