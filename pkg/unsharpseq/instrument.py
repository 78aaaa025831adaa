import math

import numpy as np

from .exceptions import InvalidSharpness, ImpossibleOutcome
from .qcore import KET_0, KET_1, KET_PLUS, KET_MINUS, TOLERANCE, expectation, identity, normalize, pauli, \
    projector, tensor
from .types import Axis, Basis, Ket4, Op2, Op4, Outcome


IMPOSSIBLE_OUTCOME_PROBABILITY = 1e-12

MAX_SHARPNESS = math.pi / 4  # noninteractive limit

_EIGENBASIS = {
    Basis.Z: (KET_0, KET_1),
    Basis.X: (KET_PLUS, KET_MINUS),
}

_NOISY_AXIS = {Basis.Z: Axis.Z, Basis.X: Axis.X}


def check_sharpness(mu: float) -> float:
    if not (isinstance(mu, (int, float)) and 0 <= mu <= MAX_SHARPNESS):
        raise InvalidSharpness(f"Sharpness must lie in [0, pi/4], got {mu!r}")
    return float(mu)


class MeasurementSetting:
    def __init__(self, basis: Basis | int, sharpness: float):
        """
        One of Alice's two unsharp measurements

        :param basis: 0 for the noisy sigma_Z measurement, 1 for the noisy sigma_X measurement
        :param sharpness: mu in [0, pi/4]; 0 is projective, pi/4 does not touch the state at all

        :usage:

            >>> MeasurementSetting(basis=0, sharpness=0.34)
        """
        self.basis = Basis(basis)
        self.sharpness = check_sharpness(sharpness)

    def __repr__(self) -> str:
        return f"MeasurementSetting(basis={int(self.basis)}, sharpness={self.sharpness})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MeasurementSetting) and (self.basis, self.sharpness) == (other.basis, other.sharpness)

    def __hash__(self) -> int:
        return hash((self.basis, self.sharpness))


class KrausPair:
    def __init__(self, k_plus: Op2, k_minus: Op2):
        self.k_plus, self.k_minus = k_plus, k_minus

    def completeness(self) -> Op2:
        """ K+^dagger K+ + K-^dagger K-, the identity for a valid instrument """
        return np.conj(self.k_plus).T @ self.k_plus + np.conj(self.k_minus).T @ self.k_minus

    def __getitem__(self, outcome: Outcome | int) -> Op2:
        return self.k_plus if Outcome(outcome) is Outcome.PLUS else self.k_minus


def kraus(setting: MeasurementSetting, outcome: Outcome | int) -> Op2:
    """
    K_{+1|m} = cos(mu) Pi_m^+ + sin(mu) Pi_m^-  and  K_{-1|m} = sin(mu) Pi_m^+ + cos(mu) Pi_m^-

    Pi_m^+/- project onto the eigenvectors of sigma_Z (m = 0) or sigma_X (m = 1).
    """
    plus, minus = (projector(vector) for vector in _EIGENBASIS[setting.basis])
    c, s = math.cos(setting.sharpness), math.sin(setting.sharpness)
    if Outcome(outcome) is Outcome.PLUS:
        return c * plus + s * minus
    return s * plus + c * minus


def kraus_pair(setting: MeasurementSetting) -> KrausPair:
    return KrausPair(k_plus=kraus(setting, Outcome.PLUS), k_minus=kraus(setting, Outcome.MINUS))


def effect(setting: MeasurementSetting, outcome: Outcome | int) -> Op2:
    """ POVM element E = K^dagger K, always derived from the Kraus operator. """
    operator = kraus(setting, outcome)
    return np.conj(operator).T @ operator


def observable(setting: MeasurementSetting) -> Op2:
    """ A_m(mu) = E_{+1|m} - E_{-1|m} = cos(2 mu) sigma """
    return effect(setting, Outcome.PLUS) - effect(setting, Outcome.MINUS)


def noisy_axis(basis: Basis | int) -> Axis:
    return _NOISY_AXIS[Basis(basis)]


def on_alice(operator: Op2) -> Op4:
    return tensor(operator, identity())


def on_bob(operator: Op2) -> Op4:
    return tensor(identity(), operator)


def dichotomic_projector(operator: Op2, outcome: Outcome | int) -> Op2:
    """ Projector onto the +/-1 eigenspace of an observable with eigenvalues +/-1: (1 + b * B) / 2 """
    return (identity() + int(Outcome(outcome)) * operator) / 2


def outcome_probability(state: Ket4, setting: MeasurementSetting, outcome: Outcome | int) -> float:
    """
    Probability that Alice's measurement on her half of `state` gives `outcome`.
    """
    probability = expectation(on_alice(effect(setting, outcome)), state)
    return min(1.0, max(0.0, probability))  # rounding can push it a hair outside [0, 1]


def apply_measurement(state: Ket4, setting: MeasurementSetting, outcome: Outcome | int) -> Ket4:
    """
    Post-measurement state (K (x) 1)|psi> / sqrt(p)

    :raises ImpossibleOutcome: if the outcome has probability below 1e-12
    """
    probability = outcome_probability(state, setting, outcome)
    if probability < IMPOSSIBLE_OUTCOME_PROBABILITY:
        raise ImpossibleOutcome(f"Outcome {Outcome(outcome)} of {setting} has probability {probability:.3e}")
    return normalize(on_alice(kraus(setting, outcome)) @ state)


def is_positive_semidefinite(operator: Op2, tolerance: float = TOLERANCE) -> bool:
    return bool(np.linalg.eigvalsh(operator).min() >= -tolerance)


def noisy_pauli(basis: Basis | int) -> Op2:
    """ The Pauli observable that A_m(mu) is a noisy version of. """
    return pauli(noisy_axis(basis))
