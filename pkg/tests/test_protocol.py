import itertools
import math

import numpy as np
import pytest

from unsharpseq.exceptions import DegenerateState, HistoryTooLong, InvalidSchedule, InvalidSharpness, OutOfRange
from unsharpseq.protocol import ENTRIES, History, HistoryEntry, ProtocolConfig, StepParams, amplification_condition, \
    arccot, bob_correction, bob_observable, branch_probability, cumulative_beta, enumerate_tree, initial_params, \
    max_sharpness, run_branch, theta_for, trace_params, update_params
from unsharpseq.qcore import TOLERANCE, rotation_y
from unsharpseq.tables import tree_rows
from unsharpseq.tests import GOLDEN_TABLE, golden_mismatches, oracle_error, oracle_grid_error, tree_weight_totals
from unsharpseq.types import Basis, Outcome
from unsharpseq.util import round_half_away


PLUS_Z, MINUS_Z = HistoryEntry(Basis.Z, Outcome.PLUS), HistoryEntry(Basis.Z, Outcome.MINUS)
PLUS_X, MINUS_X = HistoryEntry(Basis.X, Outcome.PLUS), HistoryEntry(Basis.X, Outcome.MINUS)


def step_at(eta, mu):
    return StepParams(eta=eta, alpha=0.0, beta=0.0, theta=theta_for(eta), mu=mu)


def test_arccot_range():
    assert arccot(0.0) == pytest.approx(math.pi / 2)
    assert arccot(1.0) == pytest.approx(math.pi / 4)
    assert 0 < arccot(-1.0) < math.pi


def test_history_render_and_parse():
    history = History([(0, 1), (0, -1), (1, -1)])
    assert history.render() == "+1|0; -1|0; -1|1"
    assert History.parse("+1|0; -1|0; -1|1") == history
    assert History.parse("−1|0") == History([(0, -1)])
    assert History().render() == "not applicable"
    assert History.parse("not applicable") == History()


@pytest.mark.parametrize("text", ["+2|0", "+1|2", "1|", "+1|0;;-1|1"])
def test_history_parse_rejects_malformed_entries(text):
    with pytest.raises(ValueError):
        History.parse(text)


def test_entries_follow_table_order():
    assert [entry.render() for entry in ENTRIES] == ["+1|0", "-1|0", "+1|1", "-1|1"]


def test_protocol_config_validation():
    assert ProtocolConfig([0.34, 0.19, 0]).steps == 3
    assert ProtocolConfig([0.34, 0.19, 0]).mu_at(4) is None
    with pytest.raises(InvalidSchedule):
        ProtocolConfig([0.34, 0.19], steps=3)
    with pytest.raises(InvalidSchedule):
        ProtocolConfig([0.34, 0.0, 0.19])
    with pytest.raises(InvalidSchedule):
        ProtocolConfig([])
    with pytest.raises(InvalidSharpness):
        ProtocolConfig([0.34, 1.0])


def test_initial_params():
    params = initial_params(0.34)
    assert (params.eta, params.alpha, params.beta) == (math.pi / 4, 0.0, 0.0)
    assert params.theta == pytest.approx(math.pi / 4)
    assert params.mu == 0.34


def test_golden_table(golden_rows):
    assert golden_mismatches(golden_rows) == []
    assert len(golden_rows) == 21


def test_golden_table_before_rounding(golden_rows):
    fields = ("eta", "alpha", "beta", "theta", "mu", "s_chsh", "witness")
    for row, (_, _, values) in zip(golden_rows, GOLDEN_TABLE):
        for field, expected in zip(fields, values):
            assert abs(row[field] - expected) < 0.005 + 1e-12


def test_table_row_with_amplification(golden_rows):
    row = next(row for row in golden_rows if row["history"] == "+1|0; -1|0")
    assert [round_half_away(row[field]) for field in ("eta", "theta", "mu", "s_chsh", "witness")] == \
           [0.50, 0.87, 0.0, 2.61, -0.84]
    assert row["alpha"] == row["beta"] == pytest.approx(math.pi / 2)


def test_single_sharp_step_violates_maximally():
    rows = enumerate_tree(ProtocolConfig([0.0]), 1)
    assert len(rows) == 1
    history, params = rows[0]
    assert history.render() == "not applicable"
    assert 2 * math.cos(2 * params.mu) * math.sqrt(1 + math.sin(2 * params.eta) ** 2) == pytest.approx(2 * math.sqrt(2))


def test_x_branch_update_from_maximally_entangled_state():
    config = ProtocolConfig([0.13, 0])
    for history, params in enumerate_tree(config, 2):
        if history[0].basis is Basis.X:
            assert params.eta == pytest.approx(0.13)
            assert params.alpha == pytest.approx(int(history[0].outcome) * math.pi / 4)


@pytest.mark.parametrize("entry", ENTRIES)
def test_update_params_rejects_product_state(entry):
    with pytest.raises(DegenerateState):
        update_params(step_at(0.0, 0.19), entry, None)


def test_update_params_needs_scheduled_sharpness():
    with pytest.raises(InvalidSharpness):
        update_params(step_at(0.34, None), PLUS_Z, None)


def test_folded_branch_stays_canonical():
    params = update_params(step_at(0.12, 0.34), MINUS_Z, None)
    assert (params.alpha, params.beta) == (0.0, 0.0)
    assert params.eta == pytest.approx(math.atan(math.tan(0.12) / math.tan(0.34)))
    assert 0 < params.eta <= math.pi / 4


@pytest.mark.parametrize("history", [History(entries) for entries in itertools.product(ENTRIES, repeat=3)],
                         ids=lambda history: history.render())
def test_update_rules_agree_with_schmidt_decomposition(history):
    config = ProtocolConfig([0.34, 0.19, 0.05])
    assert oracle_error(config, history) < 1e-9


def test_update_rules_agree_on_schedule_grid():
    assert oracle_grid_error() < 1e-9


def test_oracle_through_maximally_entangled_intermediate_state():
    config = ProtocolConfig([0.34, 0.34, 0.19])
    history = History([MINUS_Z, MINUS_Z, PLUS_X])
    assert trace_params(config, History([MINUS_Z, MINUS_Z]))[-1].eta == pytest.approx(math.pi / 4)
    assert oracle_error(config, history) < 1e-9


def test_run_branch_is_normalized(default_config):
    for entries in itertools.product(ENTRIES, repeat=2):
        state, trace = run_branch(default_config, History(entries))
        assert np.vdot(state, state).real == pytest.approx(1.0, abs=1e-12)
        assert len(trace) == 3


def test_history_too_long(default_config):
    with pytest.raises(HistoryTooLong):
        trace_params(default_config, History([PLUS_Z] * 4))
    with pytest.raises(HistoryTooLong):
        enumerate_tree(default_config, 4)
    with pytest.raises(HistoryTooLong):
        enumerate_tree(default_config, 0)


def test_amplification_from_step_two():
    params = update_params(step_at(0.34, 0.19), MINUS_Z, None)
    assert params.eta == pytest.approx(0.50, abs=0.005)
    assert params.eta > 0.34
    assert amplification_condition(0.34, 0.19)


def test_no_amplification_below_threshold():
    mu = 0.1
    assert mu < math.atan(math.tan(0.34) ** 2)
    assert update_params(step_at(0.34, mu), MINUS_Z, None).eta < 0.34
    assert not amplification_condition(0.34, mu)


@pytest.mark.parametrize("eta,mu", itertools.product([0.1, 0.2, 0.34, 0.5, 0.7, math.pi / 4],
                                                     [0.02, 0.1, 0.19, 0.3, 0.45, 0.6, math.pi / 4]))
def test_amplification_condition_predicts_minus_one_branch(eta, mu):
    grows = update_params(step_at(eta, mu), MINUS_Z, None).eta > eta + 1e-12
    assert amplification_condition(eta, mu) == grows


@pytest.mark.parametrize("eta", [0.0, -0.1])
def test_amplification_condition_needs_entanglement(eta):
    with pytest.raises(DegenerateState):
        amplification_condition(eta, 0.1)


def test_max_sharpness():
    assert max_sharpness(math.pi / 4) == pytest.approx(math.pi / 8)
    with pytest.raises(DegenerateState):
        max_sharpness(0.0)
    with pytest.raises(OutOfRange):
        max_sharpness(1.0)


def test_tree_sizes(default_config):
    assert [len(enumerate_tree(default_config, depth)) for depth in (1, 2, 3)] == [1, 4, 16]


def test_tree_root_has_probability_one(default_config):
    assert branch_probability(default_config, History()) == 1.0


@pytest.mark.parametrize("entry", ENTRIES)
def test_first_outcome_is_fair(default_config, entry):
    assert branch_probability(default_config, History([entry])) == pytest.approx(0.5)


def test_tree_weights_sum_to_one(default_config):
    for total in tree_weight_totals(default_config):
        assert total == pytest.approx(1.0, abs=1e-10)


def test_outcome_probabilities_sum_to_one_per_basis_choice(default_config):
    for first in ENTRIES:
        for basis in Basis:
            total = sum(branch_probability(default_config, History([first, HistoryEntry(basis, outcome)]))
                        for outcome in Outcome)
            assert total == pytest.approx(branch_probability(default_config, History([first])), abs=1e-12)


def test_bob_correction_is_cumulative_rotation(default_config):
    trace = trace_params(default_config, History([PLUS_X, MINUS_X, PLUS_X]))
    np.testing.assert_allclose(bob_correction(trace), rotation_y(cumulative_beta(trace)), atol=1e-12)
    assert cumulative_beta(trace) == pytest.approx(sum(step.beta for step in trace))


def test_bob_observables():
    params = step_at(0.34, 0.19)
    for choice in (0, 1):
        observable = bob_observable(params, choice)
        np.testing.assert_allclose(np.linalg.eigvalsh(observable), [-1, 1], atol=TOLERANCE)
    with pytest.raises(ValueError):
        bob_observable(params, 2)
    with pytest.raises(DegenerateState):
        bob_observable(step_at(0.0, 0.19), 0)


def test_sharp_final_step_can_end_in_a_product_state():
    config = ProtocolConfig([0.34, 0.0])
    state, trace = run_branch(config, History([PLUS_Z, PLUS_Z]))
    assert trace[-1].eta == pytest.approx(0.0, abs=1e-15)
    assert trace[-1].mu is None
    assert abs(state[0] * state[3] - state[1] * state[2]) == pytest.approx(0.0, abs=1e-12)


def test_no_amplification_at_the_boundary():
    assert not amplification_condition(math.pi / 4, math.pi / 4)
    assert update_params(step_at(math.pi / 4, math.pi / 4), MINUS_Z, None).eta == pytest.approx(math.pi / 4)
    assert not amplification_condition(0.34, math.pi / 4)


def test_tree_reports_no_amplification_for_noninteractive_steps():
    rows = tree_rows(ProtocolConfig([math.pi / 4, math.pi / 4, 0.0]))
    assert not any(row["amplification"] for row in rows if row["step"] < 3)


@pytest.mark.parametrize("entry", [PLUS_Z, PLUS_X, MINUS_X], ids=lambda entry: entry.render())
def test_monotone_degradation(entry):
    for eta in np.linspace(0.02, math.pi / 4, 40):
        for mu in np.linspace(0.0, 0.7, 40):
            assert update_params(step_at(eta, mu), entry, None).eta < eta - 1e-12
        assert update_params(step_at(eta, math.pi / 4), entry, None).eta == pytest.approx(eta, abs=1e-12)
