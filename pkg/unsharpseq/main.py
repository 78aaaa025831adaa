import click

from . import __version__
from .exceptions import ChecksFailed
from .handler import command_handler
from .logging import log_event
from .parameters import ANGLE_PARAMETERS, EXPERIMENT_PARAMETERS, LOGGING_PARAMETERS, OUTPUT_PARAMETERS, \
    PROTOCOL_PARAMETERS, RunSpec, options
from .respond import EXACT_HEADER, SIMULATE_HEADER, TREE_HEADER, emit
from .tables import exact_rows, in_degrees, simulate_rows, tree_rows
from .tests import acceptance_checks, run_checks


EXACT_PARAMETERS = PROTOCOL_PARAMETERS + OUTPUT_PARAMETERS + ANGLE_PARAMETERS + LOGGING_PARAMETERS
SIMULATE_PARAMETERS = PROTOCOL_PARAMETERS + EXPERIMENT_PARAMETERS + OUTPUT_PARAMETERS + LOGGING_PARAMETERS
TREE_PARAMETERS = EXACT_PARAMETERS
VERIFY_PARAMETERS = LOGGING_PARAMETERS


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="unsharpseq")
def cli():
    """
    Sequential unsharp measurements on a shared pair of qubits.

    Alice measures her qubit again and again with tunable sharpness while Bob certifies,
    at every step, that the entanglement survived. Every flag can also be set through an
    UNSHARPSEQ_<FLAG> environment variable, e.g. UNSHARPSEQ_SEED=7.
    """


@cli.command()
@options(EXACT_PARAMETERS)
@command_handler
def exact(**raw):
    """ Theoretical parameters, S_CHSH and <W> of every branch. """
    spec = RunSpec.from_inputs("exact", EXACT_PARAMETERS, raw)
    rows = exact_rows(spec.config())
    emit(in_degrees(rows, spec.degrees), EXACT_HEADER, format=spec.format, out=spec.out)


@cli.command()
@options(SIMULATE_PARAMETERS)
@command_handler
def simulate(**raw):
    """ Finite-count estimates of S_CHSH (or <W> where the violation is too small) of every branch. """
    spec = RunSpec.from_inputs("simulate", SIMULATE_PARAMETERS, raw)
    rows, warnings = simulate_rows(spec.config(), spec.plan(), all_witnesses=spec.all_witnesses)
    for warning in warnings:
        log_event(warning, level="warning", log_file=spec.log_file, print_logs=not spec.quiet)
    emit(rows, SIMULATE_HEADER, format=spec.format, out=spec.out)


@cli.command()
@options(TREE_PARAMETERS)
@command_handler
def tree(**raw):
    """ Every node of the protocol tree with its probability, parameters and amplification flag. """
    spec = RunSpec.from_inputs("tree", TREE_PARAMETERS, raw)
    rows = tree_rows(spec.config())
    emit(in_degrees(rows, spec.degrees), TREE_HEADER, format=spec.format, out=spec.out)


@cli.command()
@options(VERIFY_PARAMETERS)
@command_handler
def verify(**raw):
    """ Run the built-in self-checks concurrently and report them. """
    spec = RunSpec.from_inputs("verify", VERIFY_PARAMETERS, raw)
    success_count, total = run_checks(acceptance_checks(), print_results=not spec.quiet)
    if success_count != total:
        raise ChecksFailed(f"{total - success_count} of {total} checks failed")
