#                             _
#    _   _  _ __   ___ | |__    __ _  _ __  _ __   ___   ___   __ _
#   | | | || '_ \ / __|| '_ \  / _` || '__|| '_ \ / __| / _ \ / _` |
#   | |_| || | | |\__ \| | | || (_| || |   | |_) |\__ \|  __/| (_| |
#    \__,_||_| |_||___/|_| |_| \__,_||_|   | .__/ |___/ \___| \__, |
#                                          |_|                   |_|


"""
Sequential Unsharp Measurements
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Simulation of one entangled pair shared by Alice and a sequence of Bob certifications, where
Alice measures with tunable sharpness so that entanglement survives for the next step

Features:
    - Two-qubit state vectors, Pauli algebra and Schmidt decomposition
    - Unsharp measurement instruments (Kraus operators, effects, post-measurement states)
    - Closed form parameter updates along every branch of the protocol tree
    - CHSH and entanglement witness certification, exact and from Poisson coincidence counts
    - Command line tables in CSV / JSON with a coloured run log
"""

__title__ = 'unsharpseq'
__description__ = 'Sequential unsharp measurements on a two-qubit state'
__version__ = '1.0.0'
__author__ = 'CodingYuno'

from . import respond
from .analysis import ChshBreakdown, WitnessReport, chsh_closed_form, chsh_exact, chsh_lab_frame, min_entropy_bound, \
    witness_expectation
from .exceptions import *
from .instrument import MeasurementSetting, apply_measurement, effect, kraus, outcome_probability
from .montecarlo import CountTable, Estimate, ExperimentPlan, estimate_chsh, estimate_correlator, estimate_witness, \
    joint_probability, significance, simulate_counts
from .protocol import History, HistoryEntry, ProtocolConfig, StepParams, amplification_condition, branch_probability, \
    enumerate_tree, max_sharpness, run_branch, trace_params, update_params
from .qcore import SchmidtResult, schmidt_decompose
from .tests import Check
from .types import *
