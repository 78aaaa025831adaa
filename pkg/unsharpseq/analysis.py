import math

import numpy as np

from .exceptions import DegenerateState, InvalidSharpness, OutOfRange
from .instrument import MeasurementSetting, dichotomic_projector, effect
from .protocol import StepParams, bob_correction, bob_observable
from .qcore import TOLERANCE, canonical_state, expectation, identity, pauli, rotation_y, tensor
from .types import Axis, Ket4, Op4, Outcome


TSIRELSON_BOUND = 2 * math.sqrt(2)
CLASSICAL_BOUND = 2.0

# (Alice setting, Bob setting) -> sign in S = <A0B0> + <A0B1> + <A1B0> - <A1B1>
CHSH_SIGNS = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): -1}


class ChshBreakdown:
    def __init__(self, correlators: dict):
        """
        :param correlators: {(i, j): <A_i B_j>} for the four setting pairs
        """
        self.correlators = dict(correlators)
        self.s_value = sum(sign * self.correlators[pair] for pair, sign in CHSH_SIGNS.items())

    def violates(self) -> bool:
        return self.s_value > CLASSICAL_BOUND

    def __repr__(self) -> str:
        return f"ChshBreakdown(s_value={self.s_value:.6f}, correlators={self.correlators})"


class WitnessReport:
    def __init__(self, expectation: float, separable_bound: float = 0.0):
        self.expectation, self.separable_bound = expectation, separable_bound

    @property
    def entangled(self) -> bool:
        """ A mean value below the separable bound certifies entanglement. """
        return self.expectation < self.separable_bound

    def __repr__(self) -> str:
        return f"WitnessReport(expectation={self.expectation:.6f}, separable_bound={self.separable_bound})"


def _check_step(step: StepParams) -> None:
    if step.eta <= 0:
        raise DegenerateState("CHSH certification needs an entangled state (eta > 0)")
    if step.mu is None:
        raise InvalidSharpness("No sharpness is scheduled for this step")


def _correlators(state: Ket4, step: StepParams) -> dict:
    """ <A_i B_j> = sum_{a,b} a b <psi| E_{a|i}(mu) (x) Pi_{b|B_j} |psi> """
    correlators = {}
    for (i, j) in CHSH_SIGNS:
        setting, bob = MeasurementSetting(i, step.mu), bob_observable(step, j)
        correlators[(i, j)] = sum(
            int(a) * int(b) * expectation(tensor(effect(setting, a), dichotomic_projector(bob, b)), state)
            for a in Outcome for b in Outcome
        )
    return correlators


def chsh_exact(step: StepParams) -> ChshBreakdown:
    """
    CHSH quantity by the Born rule on the canonical state cos(eta)|00> + sin(eta)|11>.

    :raises DegenerateState: if eta is 0
    :raises InvalidSharpness: if the step has no sharpness
    """
    _check_step(step)
    return ChshBreakdown(_correlators(canonical_state(step.eta), step))


def chsh_lab_frame(state: Ket4, trace: list[StepParams]) -> ChshBreakdown:
    """
    CHSH quantity on the actual branch state: U_A,k^dagger (x) U_B,k^dagger is applied first.

    :param state: the joint state at the start of the last step of `trace`
    :param trace: StepParams of every step up to the current one
    """
    step = trace[-1]
    _check_step(step)
    correction = tensor(rotation_y(-step.alpha), np.conj(bob_correction(trace)).T)
    return ChshBreakdown(_correlators(correction @ state, step))


def chsh_closed_form(eta: float, mu: float) -> float:
    """ S = 2 cos(2 mu) sqrt(1 + sin^2(2 eta)) """
    return 2 * math.cos(2 * mu) * math.sqrt(1 + math.sin(2 * eta) ** 2)


def witness_operator() -> Op4:
    """ W = 1 (x) 1 - sigma_Z (x) sigma_Z - sigma_X (x) sigma_X, eigenvalues {-1, 1, 1, 3} """
    return identity(4) - tensor(pauli(Axis.Z), pauli(Axis.Z)) - tensor(pauli(Axis.X), pauli(Axis.X))


def witness_spectrum() -> np.ndarray:
    return np.linalg.eigvalsh(witness_operator())


def witness_expectation(step: StepParams) -> WitnessReport:
    """ <W> on the canonical state, which is -sin(2 eta). """
    return WitnessReport(expectation=expectation(witness_operator(), canonical_state(step.eta)))


def min_entropy_bound(s_value: float) -> float:
    """
    Min-entropy (bits) of one of Alice's outcomes certified by a CHSH value, using the standard
    guessing-probability bound  P_guess <= 1/2 + 1/2 sqrt(2 - S^2 / 4).

    :raises OutOfRange: for S below 2 or above 2 sqrt(2)
    """
    if s_value < CLASSICAL_BOUND - TOLERANCE or s_value > TSIRELSON_BOUND + TOLERANCE:
        raise OutOfRange(f"CHSH value {s_value} outside [2, 2 sqrt(2)]")
    if s_value <= CLASSICAL_BOUND:
        return 0.0
    s_value = min(s_value, TSIRELSON_BOUND)
    guessing = 0.5 + 0.5 * math.sqrt(max(0.0, 2 - s_value ** 2 / 4))
    return -math.log2(guessing)
