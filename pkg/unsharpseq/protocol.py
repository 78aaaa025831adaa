"""
The sequential protocol
~~~~~~~~~~~~~~~~~~~~~~~

At step k the shared state is U_A,k (x) U_B,k [cos(eta_k)|00> + sin(eta_k)|11>] with
U_A,k = R_Y(alpha_k). Alice undoes U_A,k, measures A_0 or A_1 with sharpness mu_k and the
state returns to the same form with new parameters. `update_params` gives those parameters
in closed form; `run_branch` simulates the same branch with explicit 4-vectors so the two
can be checked against each other.

StepParams.beta is the increment applied to Bob's frame at that step
(U_B,k+1 = R_Y(beta_k+1) U_B,k); `cumulative_beta` sums a trace into the angle of U_B,k.
"""

import itertools
import math
import re

from .exceptions import DegenerateState, HistoryTooLong, InvalidSchedule, InvalidSharpness, OutOfRange
from .instrument import MAX_SHARPNESS, MeasurementSetting, apply_measurement, check_sharpness, on_alice, \
    outcome_probability
from .qcore import PSI_1, TOLERANCE, identity, pauli, rotation_y
from .types import Axis, Basis, Ket4, Op2, Outcome


def arccot(x: float) -> float:
    """ Inverse cotangent with range (0, pi), so that arccot(0) = pi/2. """
    return math.atan2(1.0, x)


def theta_for(eta: float) -> float:
    """ Bob's measurement angle theta = arccot(sin 2 eta). """
    return arccot(math.sin(2 * eta))


class HistoryEntry:
    def __init__(self, basis: Basis | int, outcome: Outcome | int):
        """
        :param basis: Alice's measurement choice m at one step
        :param outcome: the outcome she recorded, +1 or -1
        """
        self.basis, self.outcome = Basis(basis), Outcome(outcome)

    def render(self) -> str:
        return f"{self.outcome}|{int(self.basis)}"

    def __eq__(self, other) -> bool:
        return isinstance(other, HistoryEntry) and (self.basis, self.outcome) == (other.basis, other.outcome)

    def __hash__(self) -> int:
        return hash((self.basis, self.outcome))

    def __repr__(self) -> str:
        return f"HistoryEntry({self.render()})"


# Order of the rows in the published tables: +1|0, -1|0, +1|1, -1|1
ENTRIES = tuple(HistoryEntry(basis, outcome) for basis in Basis for outcome in (Outcome.PLUS, Outcome.MINUS))

NOT_APPLICABLE = "not applicable"

_ENTRY_PATTERN = re.compile(r"^([+\-−]?)1\s*\|\s*([01])$")


class History:
    def __init__(self, entries=()):
        """
        Alice's measurement choices and outcomes, oldest first

        :param entries: HistoryEntry objects or (basis, outcome) pairs

        :usage:

            >>> History([(0, +1), (0, -1)]).render()
            '+1|0; -1|0'
        """
        self.entries = tuple(entry if isinstance(entry, HistoryEntry) else HistoryEntry(*entry) for entry in entries)

    @classmethod
    def parse(cls, text: str) -> "History":
        """ Inverse of `render`; accepts "+1|0; -1|1", an empty string or "not applicable". """
        text = text.strip()
        if text in ("", NOT_APPLICABLE):
            return cls()
        entries = []
        for part in text.split(";"):
            match = _ENTRY_PATTERN.match(part.strip())
            if match is None:
                raise ValueError(f"Malformed history entry [{part.strip()}]")
            sign, basis = match.groups()
            entries.append(HistoryEntry(int(basis), -1 if sign in ("-", "−") else 1))
        return cls(entries)

    def render(self) -> str:
        return "; ".join(entry.render() for entry in self.entries) if self.entries else NOT_APPLICABLE

    def extend(self, entry: HistoryEntry) -> "History":
        return History(self.entries + (entry,))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, History) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"History({self.render()!r})"


class StepParams:
    def __init__(self, eta: float, alpha: float, beta: float, theta: float, mu: float | None):
        """
        Everything that is known about the shared state at the start of one step

        :param eta: entanglement angle in [0, pi/4]
        :param alpha: Alice's rotation U_A,k = R_Y(alpha)
        :param beta: increment of Bob's rotation at this step
        :param theta: Bob's CHSH measurement angle, arccot(sin 2 eta)
        :param mu: sharpness Alice uses at this step (None after the last scheduled measurement)
        """
        self.eta, self.alpha, self.beta, self.theta, self.mu = eta, alpha, beta, theta, mu

    def as_dict(self) -> dict:
        return {"eta": self.eta, "alpha": self.alpha, "beta": self.beta, "theta": self.theta, "mu": self.mu}

    def __repr__(self) -> str:
        return "StepParams(" + ", ".join(f"{name}={value:.6g}" if value is not None else f"{name}=None"
                                         for name, value in self.as_dict().items()) + ")"


class ProtocolConfig:
    def __init__(self, sharpness_schedule, steps: int = None):
        """
        :param sharpness_schedule: mu_k for every step, in order
        :param steps: number of steps; defaults to the schedule length and must match it

        A zero sharpness breaks all entanglement, so it is only accepted for the final step.

        :usage:

            >>> ProtocolConfig([0.34, 0.19, 0])  # the three-step experiment
        """
        schedule = tuple(check_sharpness(mu) for mu in sharpness_schedule)
        steps = len(schedule) if steps is None else steps
        if not isinstance(steps, int) or steps < 1:
            raise InvalidSchedule(f"Number of steps must be a positive integer, got {steps!r}")
        if len(schedule) != steps:
            raise InvalidSchedule(f"Schedule has {len(schedule)} entries for {steps} steps")
        if any(mu == 0 for mu in schedule[:-1]):
            raise InvalidSchedule("A sharp measurement (mu = 0) is only allowed at the final step")
        self.sharpness_schedule, self.steps = schedule, steps

    def mu_at(self, step: int) -> float | None:
        """ Sharpness of step `step` (1-based), None past the end of the schedule. """
        return self.sharpness_schedule[step - 1] if step <= self.steps else None

    def __repr__(self) -> str:
        return f"ProtocolConfig(sharpness_schedule={list(self.sharpness_schedule)}, steps={self.steps})"


def initial_params(mu_1: float) -> StepParams:
    """ Step 1: maximally entangled state, no corrections yet. """
    return StepParams(eta=math.pi / 4, alpha=0.0, beta=0.0, theta=theta_for(math.pi / 4), mu=check_sharpness(mu_1))


def update_params(prev: StepParams, entry: HistoryEntry, next_mu: float | None) -> StepParams:
    """
    Canonical form after Alice's measurement at step k, from the canonical form before it.

    ========  =========================================  =====================================  ===================================
    Kraus     alpha                                      beta                                   eta
    ========  =========================================  =====================================  ===================================
    K+1|0     0                                          0                                      arctan(tan mu tan eta)
    K-1|0     pi/2                                       pi/2                                   arctan(tan mu / tan eta)
    K+1|1     1/2 arccot(tan 2mu cos 2eta)               1/2 arctan(tan 2eta cos 2mu)           1/2 arcsin(sin 2mu sin 2eta)
    K-1|1     -1/2 arccot(tan 2mu cos 2eta)              -1/2 arctan(tan 2eta cos 2mu)          1/2 arcsin(sin 2mu sin 2eta)
    ========  =========================================  =====================================  ===================================

    For K-1|0 with tan mu > tan eta the larger Schmidt coefficient stays on |00>, giving
    alpha = beta = 0 and eta = arctan(tan eta / tan mu).

    :raises DegenerateState: if prev.eta is 0 (a product state has nothing left to measure)
    :raises InvalidSharpness: if no sharpness is scheduled for prev or next_mu is out of range
    """
    if prev.eta <= 0:
        raise DegenerateState("Cannot continue the protocol from a product state (eta = 0)")
    if prev.mu is None:
        raise InvalidSharpness("No measurement is scheduled at this step")
    if next_mu is not None:
        next_mu = check_sharpness(next_mu)
    mu, eta = prev.mu, prev.eta

    if entry.basis is Basis.Z:
        if entry.outcome is Outcome.PLUS:
            alpha = beta = 0.0
            new_eta = math.atan(math.tan(mu) * math.tan(eta))
        else:
            ratio = math.tan(mu) / math.tan(eta)
            if ratio <= 1:
                alpha = beta = math.pi / 2
                new_eta = math.atan(ratio)
            else:
                alpha = beta = 0.0
                new_eta = math.atan(1 / ratio)
    else:
        sign = int(entry.outcome)
        # atan2 forms stay finite at eta = pi/4 and mu = pi/4 where the tangents diverge
        alpha = sign * 0.5 * math.atan2(math.cos(2 * mu), math.sin(2 * mu) * math.cos(2 * eta))
        beta = sign * 0.5 * math.atan2(math.sin(2 * eta) * math.cos(2 * mu), math.cos(2 * eta))
        new_eta = 0.5 * math.asin(min(1.0, math.sin(2 * mu) * math.sin(2 * eta)))

    return StepParams(eta=new_eta, alpha=alpha, beta=beta, theta=theta_for(new_eta), mu=next_mu)


def trace_params(config: ProtocolConfig, history: History) -> list[StepParams]:
    """ StepParams of steps 1 .. len(history) + 1, from the update rules alone. """
    if len(history) > config.steps:
        raise HistoryTooLong(f"History of length {len(history)} for a {config.steps}-step protocol")
    trace = [initial_params(config.sharpness_schedule[0])]
    for step, entry in enumerate(history, start=1):
        trace.append(update_params(trace[-1], entry, config.mu_at(step + 1)))
    return trace


def _simulate(config: ProtocolConfig, history: History) -> tuple[Ket4, list[StepParams], float]:
    if len(history) > config.steps:
        raise HistoryTooLong(f"History of length {len(history)} for a {config.steps}-step protocol")
    state, probability = PSI_1.copy(), 1.0
    trace = [initial_params(config.sharpness_schedule[0])]
    for step, entry in enumerate(history, start=1):
        params = trace[-1]
        state = on_alice(rotation_y(-params.alpha)) @ state  # U_A,k^dagger
        setting = MeasurementSetting(entry.basis, params.mu)
        probability *= outcome_probability(state, setting, entry.outcome)
        state = apply_measurement(state, setting, entry.outcome)
        trace.append(update_params(params, entry, config.mu_at(step + 1)))
    return state, trace, probability


def run_branch(config: ProtocolConfig, history: History) -> tuple[Ket4, list[StepParams]]:
    """
    Follow one branch with explicit state vectors, starting from (|00> + |11>)/sqrt(2).

    :return: the final joint state and the analytic StepParams of every step (len(history) + 1 entries)
    :raises HistoryTooLong: if the history has more entries than the protocol has steps
    :raises ImpossibleOutcome: if an outcome of the history cannot occur
    """
    state, trace, _ = _simulate(config, history)
    return state, trace


def branch_probability(config: ProtocolConfig, history: History) -> float:
    """ Probability of the outcomes in `history` given Alice's measurement choices in it. """
    return _simulate(config, history)[2]


def enumerate_tree(config: ProtocolConfig, depth: int) -> list[tuple[History, StepParams]]:
    """
    Every history that leads to step `depth`, with the StepParams governing that step.

    There are 4^(depth - 1) of them, ordered like the published tables (+1|0, -1|0, +1|1, -1|1 at each step,
    earliest step varying slowest).
    """
    if not 1 <= depth <= config.steps:
        raise HistoryTooLong(f"Depth {depth} outside 1 .. {config.steps}")
    tree = []
    for entries in itertools.product(ENTRIES, repeat=depth - 1):
        history = History(entries)
        tree.append((history, trace_params(config, history)[-1]))
    return tree


def cumulative_beta(trace: list[StepParams]) -> float:
    """ Angle of U_B,k for the last step of the trace (Y rotations commute, so the increments add). """
    return float(sum(params.beta for params in trace))


def bob_correction(trace: list[StepParams]) -> Op2:
    """ U_B,k as the ordered product of the incremental rotations. """
    operator = identity()
    for params in trace:
        operator = rotation_y(params.beta) @ operator
    return operator


def _check_entangled(eta: float) -> None:
    if eta <= 0:
        raise DegenerateState("Entanglement angle must be positive")
    if eta > math.pi / 4 + TOLERANCE:
        raise OutOfRange(f"Entanglement angle must not exceed pi/4, got {eta}")


def bob_observable(step: StepParams, choice: int) -> Op2:
    """
    B_0,k = cos(theta) sigma_X + sin(theta) sigma_Z,  B_1,k = -cos(theta) sigma_X + sin(theta) sigma_Z
    """
    if step.eta <= 0:
        raise DegenerateState("Bob's CHSH observables are undefined on a product state")
    if choice not in (0, 1):
        raise ValueError(f"Bob's setting must be 0 or 1, got {choice!r}")
    sign = 1 if choice == 0 else -1
    return sign * math.cos(step.theta) * pauli(Axis.X) + math.sin(step.theta) * pauli(Axis.Z)


def max_sharpness(eta: float) -> float:
    """ Largest sharpness mu that still lets Bob violate CHSH: 1/2 arctan(sin 2 eta). """
    _check_entangled(eta)
    return 0.5 * math.atan(math.sin(2 * eta))


def amplification_condition(eta: float, mu: float) -> bool:
    """
    True when outcome -1 of A_0(mu) would increase eta: arctan(tan^2 eta) < mu < pi/4.

    Both ends are strict. At mu = pi/4 the measurement leaves the state alone, and at eta = pi/4 the
    two bounds meet, so the comparisons carry a TOLERANCE margin against rounding in tan and arctan.
    """
    _check_entangled(eta)
    check_sharpness(mu)
    return math.atan(math.tan(eta) ** 2) + TOLERANCE < mu < MAX_SHARPNESS - TOLERANCE
