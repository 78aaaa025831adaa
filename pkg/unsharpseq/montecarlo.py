"""
Finite-count emulation of the experiment
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Each combination of Alice setting i, Bob setting j and outcomes (a, b) is counted for a fixed
exposure, so every cell of a CountTable is an independent Poisson variate whose mean is
proportional to the joint probability. Each cell draws from its own numpy SeedSequence,
keyed by (seed, stream..., i, j, a, b), so a table does not depend on the order in which its
cells (or other tables) are generated.
"""

import numpy as np

from .analysis import CHSH_SIGNS, CLASSICAL_BOUND
from .exceptions import EmptyCell, InvalidSetting, InvalidSharpness, OutOfRange
from .instrument import MeasurementSetting, dichotomic_projector, effect, noisy_pauli
from .protocol import StepParams
from .qcore import canonical_state, expectation, pauli, tensor
from .types import Axis, Outcome


DEFAULT_PAIRS = 30_000

KINDS = ("chsh", "witness")

_PRODUCTS = np.array([[1, -1], [-1, 1]])  # a * b for outcome indices (+1 -> 0, -1 -> 1)


def outcome_index(outcome: Outcome | int) -> int:
    return 0 if Outcome(outcome) is Outcome.PLUS else 1


class ExperimentPlan:
    def __init__(self, pairs_per_config: int = DEFAULT_PAIRS, seed: int = 0,
                 visibility_z: float = 1.0, visibility_x: float = 1.0):
        """
        Finite-statistics settings of one emulated measurement campaign

        :param pairs_per_config: expected coincidences behind one full estimate, split evenly over the four setting pairs
        :param seed: root of every random stream
        :param visibility_z: contrast of correlations when Alice measures in the sigma_Z basis
        :param visibility_x: contrast of correlations when Alice measures in the sigma_X basis

        :usage:

            >>> ExperimentPlan(pairs_per_config=30_000, seed=7, visibility_z=0.99, visibility_x=0.98)
        """
        if pairs_per_config < 0:
            raise OutOfRange(f"pairs_per_config must be non-negative, got {pairs_per_config}")
        if not 0 <= seed < 2 ** 64:
            raise OutOfRange(f"seed must be a 64-bit unsigned integer, got {seed}")
        for name, value in (("visibility_z", visibility_z), ("visibility_x", visibility_x)):
            if not 0 <= value <= 1:
                raise OutOfRange(f"{name} must lie in [0, 1], got {value}")
        self.pairs_per_config, self.seed = pairs_per_config, int(seed)
        self.visibility_z, self.visibility_x = float(visibility_z), float(visibility_x)

    def visibility(self, alice_setting: int) -> float:
        return self.visibility_z if alice_setting == 0 else self.visibility_x

    @property
    def ideal(self) -> bool:
        return self.visibility_z == 1 and self.visibility_x == 1

    def __repr__(self) -> str:
        return (f"ExperimentPlan(pairs_per_config={self.pairs_per_config}, seed={self.seed}, "
                f"visibility_z={self.visibility_z}, visibility_x={self.visibility_x})")


class CountTable:
    def __init__(self, counts: np.ndarray, kind: str = "chsh"):
        """
        Coincidence counts indexed by [alice_setting, bob_setting, alice_outcome, bob_outcome]

        Outcome indices are 0 for +1 and 1 for -1. For kind "witness" the settings are the sharp
        sigma_Z (0) and sigma_X (1) measurements on both sides.
        """
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (2, 2, 2, 2):
            raise ValueError(f"A count table has shape (2, 2, 2, 2), got {counts.shape}")
        if (counts < 0).any():
            raise ValueError("Counts must be non-negative")
        if kind not in KINDS:
            raise InvalidSetting(f"Unknown table kind [{kind}]")
        self.counts, self.kind = counts, kind

    def cell(self, i: int, j: int) -> np.ndarray:
        return self.counts[i, j]

    def total(self, i: int = None, j: int = None) -> int:
        return int(self.counts.sum() if i is None else self.counts[i, j].sum())

    @property
    def flagged(self) -> bool:
        """ An all-zero table carries no information. """
        return self.total() == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, CountTable) and self.kind == other.kind and np.array_equal(self.counts, other.counts)

    def __repr__(self) -> str:
        return f"CountTable(kind={self.kind!r}, total={self.total()})"


class Estimate:
    def __init__(self, value: float, std_dev: float):
        """
        :param value: the estimated quantity
        :param std_dev: first-order Poisson error propagation; exactly 0 is flagged rather than regularized
        """
        self.value, self.std_dev = float(value), float(std_dev)

    @property
    def flagged(self) -> bool:
        return self.std_dev == 0

    def __repr__(self) -> str:
        return f"Estimate(value={self.value:.4f}, std_dev={self.std_dev:.4f})"


def _check_setting(name: str, value: int) -> None:
    if value not in (0, 1):
        raise InvalidSetting(f"{name} must be 0 or 1, got {value!r}")


def _operators(step: StepParams, i: int, j: int, kind: str) -> tuple:
    """ Alice's effects and Bob's observable for one setting pair. """
    if kind == "witness":
        alice_setting = MeasurementSetting(i, 0.0)
        bob = noisy_pauli(j)
    else:
        if step.mu is None:
            raise InvalidSharpness("No sharpness is scheduled for this step")
        alice_setting = MeasurementSetting(i, step.mu)
        sign = 1 if j == 0 else -1
        bob = sign * np.cos(step.theta) * pauli(Axis.X) + np.sin(step.theta) * pauli(Axis.Z)
    return alice_setting, bob


def joint_distribution(step: StepParams, i: int, j: int, plan: ExperimentPlan = None, kind: str = "chsh") -> np.ndarray:
    """
    2x2 array P[a, b] (outcome indices) for one setting pair, including the visibility model.

    With visibility v of Alice's basis the distribution is v P + (1 - v) P_A P_B, which scales
    the correlations and leaves both marginals untouched.
    """
    _check_setting("Alice setting", i)
    _check_setting("Bob setting", j)
    if kind not in KINDS:
        raise InvalidSetting(f"Unknown table kind [{kind}]")
    alice_setting, bob = _operators(step, i, j, kind)
    state = canonical_state(step.eta)
    distribution = np.array([
        [expectation(tensor(effect(alice_setting, a), dichotomic_projector(bob, b)), state) for b in Outcome]
        for a in Outcome
    ])
    visibility = 1.0 if plan is None else plan.visibility(i)
    if visibility < 1:
        marginals = np.outer(distribution.sum(axis=1), distribution.sum(axis=0))
        distribution = visibility * distribution + (1 - visibility) * marginals
    return np.clip(distribution, 0.0, 1.0)


def joint_probability(step: StepParams, i: int, j: int, a: Outcome | int, b: Outcome | int,
                      plan: ExperimentPlan = None, kind: str = "chsh") -> float:
    """
    P(a, b | i, j) = <psi| E_{a|i}(mu) (x) Pi_{b|B_j} |psi> on the canonical state of `step`

    :raises InvalidSetting: for settings outside {0, 1} or outcomes outside {+1, -1}
    """
    try:
        a_index, b_index = outcome_index(a), outcome_index(b)
    except ValueError:
        raise InvalidSetting(f"Outcomes must be +1 or -1, got {a!r}, {b!r}")
    return float(joint_distribution(step, i, j, plan, kind)[a_index, b_index])


def simulate_counts(step: StepParams, plan: ExperimentPlan, kind: str = "chsh", stream: tuple = ()) -> CountTable:
    """
    Poisson coincidence counts with mean pairs_per_config / 4 * P(a, b | i, j) in every cell

    :param stream: extra integers mixed into every cell's seed, to give distinct branches distinct randomness
    """
    counts = np.zeros((2, 2, 2, 2), dtype=np.int64)
    for i in (0, 1):
        for j in (0, 1):
            means = plan.pairs_per_config / 4 * joint_distribution(step, i, j, plan, kind)
            for a_index in (0, 1):
                for b_index in (0, 1):
                    sequence = np.random.SeedSequence(plan.seed, spawn_key=(*stream, KINDS.index(kind), i, j, a_index, b_index))
                    counts[i, j, a_index, b_index] = np.random.default_rng(sequence).poisson(means[a_index, b_index])
    return CountTable(counts, kind=kind)


def estimate_correlator(table: CountTable, i: int, j: int) -> Estimate:
    """
    E = (n++ + n-- - n+- - n-+) / N with sigma^2 = sum_ab ((ab - E) / N)^2 n_ab

    :raises EmptyCell: if the (i, j) cell has no counts
    """
    cell = table.cell(i, j)
    total = cell.sum()
    if total == 0:
        raise EmptyCell(f"No coincidences recorded for settings ({i}, {j})")
    value = float((_PRODUCTS * cell).sum() / total)
    variance = float((((_PRODUCTS - value) / total) ** 2 * cell).sum())
    return Estimate(value=value, std_dev=np.sqrt(variance))


def _check_kind(table: CountTable, kind: str) -> None:
    if table.kind != kind:
        raise InvalidSetting(f"Expected a {kind} table, got a {table.kind} table")


def estimate_chsh(table: CountTable) -> Estimate:
    """ S = E00 + E01 + E10 - E11, variances added. """
    _check_kind(table, "chsh")
    correlators = {pair: estimate_correlator(table, *pair) for pair in CHSH_SIGNS}
    value = sum(sign * correlators[pair].value for pair, sign in CHSH_SIGNS.items())
    variance = sum(estimate.std_dev ** 2 for estimate in correlators.values())
    return Estimate(value=value, std_dev=np.sqrt(variance))


def estimate_witness(table: CountTable) -> Estimate:
    """ <W> = 1 - E_ZZ - E_XX, variances added. """
    _check_kind(table, "witness")
    zz, xx = estimate_correlator(table, 0, 0), estimate_correlator(table, 1, 1)
    return Estimate(value=1 - zz.value - xx.value, std_dev=np.sqrt(zz.std_dev ** 2 + xx.std_dev ** 2))


def significance(estimate: Estimate, quantity: str) -> float | None:
    """
    Distance from the classical/separable boundary in units of SD:
    (S - 2) / sd for CHSH, -<W> / sd for the witness. None when sd is 0.
    """
    if estimate.flagged:
        return None
    if quantity == "chsh":
        return (estimate.value - CLASSICAL_BOUND) / estimate.std_dev
    return -estimate.value / estimate.std_dev


def replicate(step: StepParams, plan: ExperimentPlan, runs: int, kind: str = "chsh") -> list[Estimate]:
    """ `runs` independent estimates of the same quantity, one random stream per run. """
    estimator = estimate_chsh if kind == "chsh" else estimate_witness
    return [estimator(simulate_counts(step, plan, kind=kind, stream=(run,))) for run in range(runs)]
