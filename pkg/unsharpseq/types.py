from enum import Enum, IntEnum

import numpy as np
import numpy.typing as npt


Ket2 = npt.NDArray[np.complex128]  # shape (2,)
Ket4 = npt.NDArray[np.complex128]  # shape (4,), ordered |00>, |01>, |10>, |11>
Op2 = npt.NDArray[np.complex128]  # shape (2, 2)
Op4 = npt.NDArray[np.complex128]  # shape (4, 4)


class Axis(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


class Basis(IntEnum):
    Z = 0  # A_0, noisy sigma_Z
    X = 1  # A_1, noisy sigma_X


class Outcome(IntEnum):
    PLUS = 1
    MINUS = -1

    def __str__(self) -> str:
        return f"{self.value:+d}"
