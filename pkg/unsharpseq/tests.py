import itertools
import math
import threading
import time

import numpy as np

from .analysis import chsh_closed_form, chsh_exact, witness_expectation, witness_operator
from .color import Color, color_print
from .logging import log_color
from .protocol import ENTRIES, History, HistoryEntry, ProtocolConfig, StepParams, cumulative_beta, enumerate_tree, \
    max_sharpness, branch_probability, run_branch, theta_for, update_params
from .qcore import angle_distance_mod_pi, schmidt_decompose
from .tables import exact_rows
from .types import Basis, Outcome
from .util import clean_time, round_half_away


DEFAULT_SCHEDULE = (0.34, 0.19, 0.0)

# Theoretical columns (eta, alpha, beta, theta, mu, S_CHSH, <W>) of the three-step experiment, 2 decimals
_STEP_THREE = {
    "+1|0": (0.07, 0.00, 0.00, 1.44, 0.00, 2.02, -0.14),
    "-1|0": (0.50, 1.57, 1.57, 0.87, 0.00, 2.61, -0.84),
    "+1|1": (0.12, 0.63, 0.32, 1.34, 0.00, 2.05, -0.23),
    "-1|1": (0.12, -0.63, -0.32, 1.34, 0.00, 2.05, -0.23),
}

GOLDEN_TABLE = [
    (1, "not applicable", (0.79, 0.00, 0.00, 0.79, 0.34, 2.20, -1.00)),
    (2, "+1|0", (0.34, 0.00, 0.00, 1.01, 0.19, 2.19, -0.63)),
    (2, "-1|0", (0.34, 1.57, 1.57, 1.01, 0.19, 2.19, -0.63)),
    (2, "+1|1", (0.34, 0.79, 0.79, 1.01, 0.19, 2.19, -0.63)),
    (2, "-1|1", (0.34, -0.79, -0.79, 1.01, 0.19, 2.19, -0.63)),
    *[(3, f"{first}; {second}", values) for first in _STEP_THREE for second, values in _STEP_THREE.items()],
]

GOLDEN_FIELDS = ("eta", "alpha", "beta", "theta", "mu", "s_chsh", "witness")

NEAR_MAXIMAL = 1e-6  # Schmidt vectors are not unique this close to eta = pi/4


def golden_mismatches(rows: list[dict]) -> list[str]:
    """ Every (step, history, field) of `rows` that does not print like the golden table. """
    mismatches = []
    if len(rows) != len(GOLDEN_TABLE):
        return [f"expected {len(GOLDEN_TABLE)} rows, got {len(rows)}"]
    for row, (step, history, values) in zip(rows, GOLDEN_TABLE):
        if (row["step"], row["history"]) != (step, history):
            mismatches.append(f"row order: got {row['step']} [{row['history']}], expected {step} [{history}]")
            continue
        for field, expected in zip(GOLDEN_FIELDS, values):
            if round_half_away(row[field], 2) != expected:
                mismatches.append(f"{step} [{history}] {field}: {row[field]:.4f} != {expected}")
    return mismatches


def oracle_error(config: ProtocolConfig, history: History) -> float:
    """
    Largest disagreement between the analytic StepParams and the Schmidt decomposition of the
    brute-force state of one branch. Angles are compared modulo pi, Bob's as the cumulative angle.
    """
    state, trace = run_branch(config, history)
    params, found = trace[-1], schmidt_decompose(state)
    eta_error = abs(found.eta - params.eta)
    if abs(params.eta - math.pi / 4) < NEAR_MAXIMAL:
        return max(eta_error, angle_distance_mod_pi(found.alpha - found.beta, params.alpha - cumulative_beta(trace)))
    return max(eta_error, angle_distance_mod_pi(found.alpha, params.alpha),
               angle_distance_mod_pi(found.beta, cumulative_beta(trace)))


def oracle_grid_error(sharpness_values=(0.05, 0.19, 0.34), length: int = 3) -> float:
    """ Worst `oracle_error` over every schedule from `sharpness_values` and every history of `length` entries. """
    worst = 0.0
    for schedule in itertools.product(sharpness_values, repeat=length):
        config = ProtocolConfig(schedule)
        for entries in itertools.product(ENTRIES, repeat=length):
            worst = max(worst, oracle_error(config, History(entries)))
    return worst


def closed_form_error(etas=(0.07, 0.12, 0.34, 0.50, math.pi / 4), mus=(0.0, 0.19, 0.34)) -> float:
    return max(abs(chsh_exact(StepParams(eta, 0.0, 0.0, theta_for(eta), mu)).s_value - chsh_closed_form(eta, mu))
               for eta in etas for mu in mus)


def threshold_error(points: int = 1000) -> float:
    etas = np.linspace(math.pi / 4 / points, math.pi / 4, points)
    return max(abs(chsh_closed_form(eta, max_sharpness(eta)) - 2) for eta in etas)


def witness_canonical_error(points: int = 200) -> float:
    etas = np.linspace(0, math.pi / 4, points)
    return max(abs(witness_expectation(StepParams(eta, 0.0, 0.0, theta_for(eta), None)).expectation + math.sin(2 * eta))
               for eta in etas)


def random_product_witness_minimum(samples: int = 100_000, seed: int = 0) -> float:
    """ Smallest <W> over random (complex) product states; never below 0 for a witness. """
    rng = np.random.default_rng(seed)
    alice = rng.normal(size=(samples, 2)) + 1j * rng.normal(size=(samples, 2))
    bob = rng.normal(size=(samples, 2)) + 1j * rng.normal(size=(samples, 2))
    alice /= np.linalg.norm(alice, axis=1, keepdims=True)
    bob /= np.linalg.norm(bob, axis=1, keepdims=True)
    states = np.einsum("ni,nj->nij", alice, bob).reshape(samples, 4)
    return float(np.einsum("ni,ij,nj->n", states.conj(), witness_operator(), states).real.min())


def tree_weight_totals(config: ProtocolConfig) -> list[float]:
    """ Total weight (branch probability times 2^-(step - 1)) at every step of the tree """
    return [sum(branch_probability(config, history) for history, _ in enumerate_tree(config, depth)) * 2.0 ** -(depth - 1)
            for depth in range(1, config.steps + 1)]


class Check:
    def __init__(self, name: str, compute, checks: list = None):
        """
        A named self-check: `compute` produces a value and every predicate in `checks` must hold for it

        :param name: Shown in the report
        :param compute: Callable without arguments
        :param checks: A list of checks that are to be performed on the computed value

        :usage:

            >>> Check(
            >>>     name="CHSH threshold",
            >>>     compute=threshold_error,
            >>>     checks=[
            >>>         lambda error: error < 1e-9  # S = 2 at the maximal sharpness
            >>>     ]
            >>> )

        """
        self.name, self.compute, self.checks = name, compute, checks or []

    def print_check_result(self, success: bool, message: str, elapsed: int | float, value=None) -> None:
        signal_color = 'green' if success else 'red'
        color_print(f" {Color('*', color=signal_color)}  Check `{Color(self.name, color='white')}` "
                    f"{message} [Time: {clean_time(elapsed)}]"
                    f"{'' if success or value is None else f' - - {Color(value, color=signal_color)}'}", color="white")

    def run(self, print_results: bool = True) -> tuple[int, int]:
        """
        :return success_count: The number of checks that held
        :return failed_count: The number of checks that failed
        """
        t0, success_count, failed_count = time.time(), 0, 0
        try:
            value = self.compute()
        except Exception as error:  # Exception thrown during the computation fails every check
            if print_results:
                self.print_check_result(False, f"{Color(f'Failed with exception: {error!r}', color='darkred')}",
                                        round(time.time() - t0, 2))
            return 0, len(self.checks)
        elapsed = round(time.time() - t0, 2)
        for check in self.checks:
            try:
                success = bool(check(value))
            except Exception as error:
                success, value = False, f"{value} ({error!r})"
            success_count, failed_count = success_count + success, failed_count + (not success)
            if print_results:
                self.print_check_result(success, f"{Color('Success' if success else 'Failed', color=log_color(0 if success else 1))}",
                                        elapsed, value)
        return success_count, failed_count


def run_checks(checks: list[Check], print_results: bool = True) -> tuple[int, int]:
    """
    Run every Check in its own thread and print the summary line

    :return: (number of checks that held, total number of checks)
    """
    t0, success_count, failed_count, lock = time.time(), 0, 0, threading.Lock()

    def check_thread(check: Check):
        nonlocal success_count, failed_count
        check_success_count, check_failed_count = check.run(print_results=print_results)
        with lock:
            success_count += check_success_count
            failed_count += check_failed_count

    threads = [threading.Thread(target=check_thread, args=(check,)) for check in checks]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    total = success_count + failed_count
    if print_results:
        color_print(f" *  Checks Completed - - "
                    f"(Success: {Color(f'{success_count}/{total}', color='red' if failed_count else 'green')}) - "
                    f"[Time: {clean_time(round(time.time() - t0, 2))}]", color="white")
    return success_count, total


def acceptance_checks() -> list[Check]:
    amplifying = StepParams(eta=0.34, alpha=0.0, beta=0.0, theta=theta_for(0.34), mu=0.19)
    below = StepParams(eta=0.34, alpha=0.0, beta=0.0, theta=theta_for(0.34), mu=0.1)
    minus_zero = HistoryEntry(Basis.Z, Outcome.MINUS)
    return [
        Check(
            name="golden table",
            compute=lambda: golden_mismatches(exact_rows(ProtocolConfig(DEFAULT_SCHEDULE))),
            checks=[lambda mismatches: mismatches == []]
        ),
        Check(
            name="closed form CHSH against Born rule",
            compute=closed_form_error,
            checks=[lambda error: error < 1e-10]
        ),
        Check(
            name="update rules against Schmidt decomposition",
            compute=oracle_grid_error,
            checks=[lambda error: error < 1e-9]
        ),
        Check(
            name="CHSH threshold at maximal sharpness",
            compute=threshold_error,
            checks=[lambda error: error < 1e-9]
        ),
        Check(
            name="witness on canonical states",
            compute=witness_canonical_error,
            checks=[lambda error: error < 1e-12]
        ),
        Check(
            name="witness on product states",
            compute=lambda: random_product_witness_minimum(samples=10_000),
            checks=[lambda minimum: minimum >= -1e-10]
        ),
        Check(
            name="amplification",
            compute=lambda: (update_params(amplifying, minus_zero, None).eta, update_params(below, minus_zero, None).eta),
            checks=[
                lambda etas: abs(etas[0] - 0.50) <= 0.005 and etas[0] > 0.34,
                lambda etas: etas[1] < 0.34
            ]
        ),
        Check(
            name="tree normalization",
            compute=lambda: tree_weight_totals(ProtocolConfig(DEFAULT_SCHEDULE)),
            checks=[lambda totals: all(abs(total - 1) < 1e-10 for total in totals)]
        ),
    ]
