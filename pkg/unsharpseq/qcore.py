"""
Exact linear algebra on one and two qubits
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Kets are numpy complex vectors, operators are numpy complex matrices. Two-qubit objects
use the basis ordering |00>, |01>, |10>, |11> with Alice's qubit first, so the amplitude
vector reshaped to (2, 2) is the coefficient matrix with Alice on the rows.

Every protocol state is real (real initial state, real Kraus operators, real Y
rotations), which is why `schmidt_decompose` only accepts real states and answers with
two Y-rotation angles instead of general unitaries.
"""

import math

import numpy as np

from .exceptions import NonHermitian, ComplexStateUnsupported, NotNormalized, ImproperState
from .types import Axis, Ket2, Ket4, Op2, Op4


TOLERANCE = 1e-12  # algebraic identities in double precision
NORM_TOLERANCE = 1e-10  # accepted drift of |psi|^2 on inputs
ROUND_TRIP_TOLERANCE = 1e-9  # decompose / reconstruct


_PAULI = {
    Axis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Axis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Axis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}


def ket(*amplitudes: complex) -> Ket2 | Ket4:
    """ Build a ket from its amplitudes (2 or 4 of them), without normalizing. """
    if len(amplitudes) not in (2, 4):
        raise ValueError(f"A ket needs 2 or 4 amplitudes, got {len(amplitudes)}")
    return np.array(amplitudes, dtype=complex)


def normalize(state: Ket2 | Ket4) -> Ket2 | Ket4:
    norm = np.linalg.norm(state)
    if norm < TOLERANCE:
        raise NotNormalized("Cannot normalize the zero vector")
    return np.asarray(state, dtype=complex) / norm


def check_normalized(state: Ket2 | Ket4) -> None:
    if abs(np.vdot(state, state).real - 1) > NORM_TOLERANCE:
        raise NotNormalized(f"State has squared norm {np.vdot(state, state).real:.3e}")


KET_0 = ket(1, 0)
KET_1 = ket(0, 1)
KET_PLUS = normalize(ket(1, 1))
KET_MINUS = normalize(ket(1, -1))
PSI_1 = normalize(ket(1, 0, 0, 1))  # the shared state at step 1


def identity(dim: int = 2) -> Op2 | Op4:
    return np.eye(dim, dtype=complex)


def pauli(axis: Axis | str) -> Op2:
    """
    :param axis: one of X, Y, Z
    :return: a fresh copy of the Pauli matrix
    """
    return _PAULI[Axis(axis)].copy()


def rotation_y(angle: float) -> Op2:
    """
    exp(-i * angle * sigma_Y), the only kind of local correction the protocol needs.

    :param angle: rotation angle in radians (note: not the Bloch-sphere angle, which is twice this)
    """
    if not math.isfinite(angle):
        raise ValueError(f"Rotation angle must be finite, got {angle}")
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def tensor(a: Op2 | Ket2, b: Op2 | Ket2) -> Op4 | Ket4:
    """ Kronecker product, Alice's factor first. Works for two operators or two kets. """
    return np.kron(a, b)


def projector(vector: Ket2) -> Op2:
    return np.outer(vector, np.conj(vector))


def is_hermitian(operator: Op2 | Op4, tolerance: float = TOLERANCE) -> bool:
    return bool(np.allclose(operator, np.conj(operator).T, atol=tolerance, rtol=0))


def is_unitary(operator: Op2 | Op4, tolerance: float = TOLERANCE) -> bool:
    return bool(np.allclose(np.conj(operator).T @ operator, np.eye(len(operator)), atol=tolerance, rtol=0))


def expectation(observable: Op4, state: Ket4) -> float:
    """
    Born-rule mean value <psi|M|psi>.

    :raises NonHermitian: when M differs from its adjoint beyond tolerance
    :raises NotNormalized: when the state is not a unit vector
    """
    if not is_hermitian(observable):
        raise NonHermitian("Expectation values are only defined here for Hermitian observables")
    check_normalized(state)
    value = np.vdot(state, observable @ state)
    if abs(value.imag) > TOLERANCE * max(1.0, float(np.abs(observable).max())):
        raise NonHermitian(f"Imaginary residue {value.imag:.3e} in expectation value")
    return float(value.real)


def canonical_state(eta: float) -> Ket4:
    """ cos(eta)|00> + sin(eta)|11> """
    return ket(math.cos(eta), 0, 0, math.sin(eta))


def reconstruct(eta: float, alpha: float, beta: float) -> Ket4:
    """ R_Y(alpha) (x) R_Y(beta) applied to the canonical state with parameter eta. """
    return tensor(rotation_y(alpha), rotation_y(beta)) @ canonical_state(eta)


def concurrence(state: Ket4) -> float:
    """ 2|c00 c11 - c01 c10|, equal to sin(2 eta) for the canonical form. """
    return float(2 * abs(state[0] * state[3] - state[1] * state[2]))


def canonical_angle(angle: float) -> float:
    """
    Reduce an angle to (-pi/2, pi/2].

    R_Y(angle + pi) = -R_Y(angle), so this only changes a global sign.
    """
    reduced = angle - math.pi * round(angle / math.pi)
    if reduced <= -math.pi / 2 + TOLERANCE:
        reduced += math.pi
    return reduced + 0.0  # no negative zero


def angle_distance_mod_pi(a: float, b: float) -> float:
    """ Distance between two angles on the circle of period pi. """
    d = (a - b) % math.pi
    return min(d, math.pi - d)


class SchmidtResult:
    def __init__(self, eta: float, alpha: float, beta: float):
        """
        Canonical form of a real two-qubit state, R_Y(alpha) (x) R_Y(beta) (cos eta |00> + sin eta |11>)

        :param eta: entanglement angle in [0, pi/4]
        :param alpha: Alice's rotation angle in (-pi/2, pi/2]
        :param beta: Bob's rotation angle in (-pi/2, pi/2]
        """
        self.eta, self.alpha, self.beta = eta, alpha, beta

    def state(self) -> Ket4:
        return reconstruct(self.eta, self.alpha, self.beta)

    def __iter__(self):
        return iter((self.eta, self.alpha, self.beta))

    def __repr__(self) -> str:
        return f"SchmidtResult(eta={self.eta:.12g}, alpha={self.alpha:.12g}, beta={self.beta:.12g})"


def schmidt_decompose(state: Ket4) -> SchmidtResult:
    """
    Schmidt decomposition of a real, normalized two-qubit state.

    Singular values are ordered decreasingly, so tan(eta) is the ratio of the smaller to the larger one.
    When both singular values coincide the singular vectors are not unique and alpha = 0 is chosen.

    :raises ComplexStateUnsupported: if an amplitude has an imaginary part above 1e-12
    :raises NotNormalized: if the state is not a unit vector
    :raises ImproperState: if the coefficient matrix has negative determinant (no Y-rotation form exists)

    :usage:

        >>> schmidt_decompose(PSI_1)
        SchmidtResult(eta=0.785398163397, alpha=0, beta=0)
    """
    state = np.asarray(state, dtype=complex)
    if np.abs(state.imag).max() > TOLERANCE:
        raise ComplexStateUnsupported("Only real two-qubit states can be decomposed into Y rotations")
    check_normalized(state)

    coefficients = state.real.reshape(2, 2)  # Alice on rows, Bob on columns
    if np.linalg.det(coefficients) < -TOLERANCE:
        raise ImproperState("Coefficient matrix has negative determinant")

    u, singular_values, vt = np.linalg.svd(coefficients)
    eta = math.atan2(singular_values[1], singular_values[0])

    if singular_values[0] - singular_values[1] < TOLERANCE:  # coefficients = s * R_Y(phi)
        phi = math.atan2(coefficients[1, 0] - coefficients[0, 1], coefficients[0, 0] + coefficients[1, 1])
        return SchmidtResult(eta=eta, alpha=0.0, beta=canonical_angle(-phi))

    alice, bob = u[:, 0], vt[0, :]  # larger singular pair; the columns of R_Y(angle) start with (cos, sin)
    alpha = canonical_angle(math.atan2(alice[1], alice[0]))
    beta = canonical_angle(math.atan2(bob[1], bob[0]))
    return SchmidtResult(eta=eta, alpha=alpha, beta=beta)
