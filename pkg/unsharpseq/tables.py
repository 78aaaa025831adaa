"""
Row builders behind the `exact`, `simulate` and `tree` subcommands
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Rows are plain dictionaries keyed by the field names of the fixed headers in `respond`,
one row per (step, history) in table order.
"""

from .analysis import chsh_closed_form, witness_expectation
from .exceptions import EmptyCell
from .montecarlo import ExperimentPlan, estimate_chsh, estimate_witness, significance, simulate_counts
from .protocol import ProtocolConfig, amplification_condition, branch_probability, enumerate_tree, max_sharpness
from .util import to_degrees


ANGLE_FIELDS = ("eta", "alpha", "beta", "theta", "mu", "mu_max")

CHSH_THRESHOLD = 2.1  # Branches below this closed-form S are certified with the witness instead


def _branches(config: ProtocolConfig):
    for depth in range(1, config.steps + 1):
        for index, (history, step) in enumerate(enumerate_tree(config, depth)):
            yield depth, index, history, step


def exact_rows(config: ProtocolConfig) -> list[dict]:
    """ Theoretical parameters, closed-form S_CHSH and witness mean of every branch. """
    return [
        {
            "step": depth, "history": history.render(), **step.as_dict(),
            "s_chsh": chsh_closed_form(step.eta, step.mu),
            "witness": witness_expectation(step).expectation,
        }
        for depth, _, history, step in _branches(config)
    ]


def certified_quantity(eta: float, mu: float) -> str:
    """ chsh when the ideal violation is large enough to be seen with finite counts, witness otherwise """
    return "chsh" if chsh_closed_form(eta, mu) >= CHSH_THRESHOLD else "witness"


def _estimate_row(depth: int, index: int, history, step, plan: ExperimentPlan, quantity: str,
                  warnings: list) -> dict:
    row = {"step": depth, "history": history.render(), "quantity": quantity,
           "value": None, "sd": None, "significance": None}
    table = simulate_counts(step, plan, kind=quantity, stream=(depth, index))
    if table.flagged:
        warnings.append(f"step {depth} [{history.render()}]: no coincidences recorded")
        return row
    try:
        estimate = estimate_chsh(table) if quantity == "chsh" else estimate_witness(table)
    except EmptyCell as error:
        warnings.append(f"step {depth} [{history.render()}]: {error}")
        return row
    if estimate.flagged:
        warnings.append(f"step {depth} [{history.render()}]: standard deviation is exactly 0")
    row.update(value=estimate.value, sd=estimate.std_dev, significance=significance(estimate, quantity))
    return row


def simulate_rows(config: ProtocolConfig, plan: ExperimentPlan,
                  all_witnesses: bool = False) -> tuple[list[dict], list[str]]:
    """
    One emulated estimate per branch, each from its own random stream (step, branch index)

    :param all_witnesses: also estimate <W> on the branches certified with CHSH, one extra row each
    :return: the rows and the warnings to log (empty tables and zero standard deviations)
    """
    rows, warnings = [], []
    for depth, index, history, step in _branches(config):
        quantity = certified_quantity(step.eta, step.mu)
        rows.append(_estimate_row(depth, index, history, step, plan, quantity, warnings))
        if all_witnesses and quantity == "chsh":
            rows.append(_estimate_row(depth, index, history, step, plan, "witness", warnings))
    return rows, warnings


def tree_rows(config: ProtocolConfig) -> list[dict]:
    """
    Every node of the protocol tree with its branch probability (given Alice's choices) and
    its weight under uniformly random choices, which sums to 1 at every step.
    """
    rows = []
    for depth, _, history, step in _branches(config):
        probability = branch_probability(config, history)
        rows.append({
            "step": depth, "history": history.render(), "probability": probability,
            "weight": probability * 2.0 ** -(depth - 1), **step.as_dict(),
            "amplification": amplification_condition(step.eta, step.mu) if step.mu is not None else None,
            "mu_max": max_sharpness(step.eta),
        })
    return rows


def in_degrees(rows: list[dict], degrees: bool) -> list[dict]:
    """ Presentation copy of `rows` with every angle field converted when `degrees` is set """
    if not degrees:
        return rows
    return [{key: to_degrees(value, True) if key in ANGLE_FIELDS else value for key, value in row.items()} for row in rows]
