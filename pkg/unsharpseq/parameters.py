import click

from .exceptions import InvalidParameter, InvalidSchedule
from .montecarlo import DEFAULT_PAIRS, ExperimentPlan
from .protocol import ProtocolConfig
from .util import parse_schedule


ENVVAR_PREFIX = "UNSHARPSEQ_"  # e.g. UNSHARPSEQ_SEED=7


class Schedule(list):
    """ Comma separated sharpness values, e.g. `0.34,0.19,0` """

    def __init__(self, text: str = ""):
        super().__init__(parse_schedule(text) if text != "" else [])


class Flag:
    """ Parameter type of on/off switches """


class Parameter:
    def __init__(self, name: str, type: type = str, checks: list = None, options: list = None, required: bool = False,
                 default=None, description: str = ""):
        """
        A Parameter object used for creating command line inputs

        :param name: The name of the flag without leading dashes, e.g. `visibility-z`
        :param type: The data type of the parameter (Flag for on/off switches)
        :param checks: Any checks that should be run on the parsed value to make sure it is acceptable
        :param options: If there is only a select number of options the parameter should accept
        :param required: If the parameter is required for the command
        :param default: A default value for the parameter if none is provided
        :param description: Help text shown by `--help`

        :example usage:

            >>> Parameter(
            >>>     name="pairs",
            >>>     type=int,
            >>>     checks=[lambda pairs: pairs >= 0],
            >>>     default=30000,
            >>>     description="Expected coincidences behind one estimate."
            >>> )

        """
        self.name, self.type, self.checks, self.options, self.required, self.default, self.description = \
            name, type, checks, options, required, default, description

    @property
    def key(self) -> str:
        """ Keyword the value is passed to the command function under """
        return self.name.replace("-", "_")

    @property
    def envvar(self) -> str:
        return ENVVAR_PREFIX + self.key.upper()

    def to_click_option(self):
        """ Build the click option; values arrive as raw strings and are validated by `input_handler` """
        if self.type is Flag:
            return click.option(f"--{self.name}", self.key, is_flag=True, default=False, envvar=self.envvar, help=self.description)
        help_text = self.description
        if self.options:
            help_text += f" [{'|'.join(self.options)}]"
        if self.default is not None:
            help_text += f" (default: {self.default})"
        return click.option(f"--{self.name}", self.key, type=str, default=None, envvar=self.envvar, help=help_text)


def input_handler(parameter: Parameter, input_value):
    """
    Parse and check one raw command line value

    :param parameter: The Parameter object describing the input
    :param input_value: The raw value from click (None when the flag was not given)
    :return: The parsed value, or the parameter default
    :raises InvalidParameter: Malformed value, failed check or value outside the options
    """
    if parameter.type is Flag:
        return bool(input_value)
    if input_value is None:  # Check if the parameter was provided
        if parameter.required:
            raise InvalidParameter(f"Missing one or more fields [{parameter.name}]")
        input_value = parameter.default
        if input_value is None:
            return None
    try:
        parsed = parameter.type(input_value)  # Check the type of the provided value
    except (ValueError, TypeError, InvalidParameter):
        raise InvalidParameter(f"Malformed [{parameter.name}]")
    for check in (parameter.checks or []):  # Run checks on the provided value
        if not check(parsed):
            raise InvalidParameter(f"Malformed [{parameter.name}]")
    if parameter.options is not None and parsed not in parameter.options:
        raise InvalidParameter(f"Malformed [{parameter.name}]: choose one of {', '.join(parameter.options)}")
    return parsed


PROTOCOL_PARAMETERS = (
    Parameter(name="steps", type=int, checks=[lambda steps: steps >= 1],
              description="Number of protocol steps; defaults to the schedule length."),
    Parameter(name="mu", type=Schedule, default="0.34,0.19,0", checks=[lambda schedule: len(schedule) >= 1],
              description="Sharpness schedule mu_1,...,mu_n in radians."),
)

EXPERIMENT_PARAMETERS = (
    Parameter(name="pairs", type=int, default=DEFAULT_PAIRS, checks=[lambda pairs: pairs >= 0],
              description="Expected coincidences behind one estimate."),
    Parameter(name="seed", type=int, default=0, checks=[lambda seed: 0 <= seed < 2 ** 64],
              description="Seed of the Monte Carlo streams."),
    Parameter(name="visibility-z", type=float, default=1.0, checks=[lambda v: 0 <= v <= 1],
              description="Correlation visibility when Alice measures sigma_Z."),
    Parameter(name="visibility-x", type=float, default=1.0, checks=[lambda v: 0 <= v <= 1],
              description="Correlation visibility when Alice measures sigma_X."),
    Parameter(name="all-witnesses", type=Flag,
              description="Also estimate <W> on the branches certified with CHSH."),
)

OUTPUT_PARAMETERS = (
    Parameter(name="format", type=str, default="csv", options=["csv", "json"], description="Output format."),
    Parameter(name="out", type=str, description="Write results to this path instead of standard output."),
)

ANGLE_PARAMETERS = (
    Parameter(name="degrees", type=Flag, description="Print angles in degrees."),
)

LOGGING_PARAMETERS = (
    Parameter(name="log-file", type=str, description="Append run log lines to this file."),
    Parameter(name="quiet", type=Flag, description="Do not print run log lines."),
)


def options(*groups):
    """ Decorator adding the click options of every Parameter in `groups` """
    parameters = [parameter for group in groups for parameter in group]

    def decorator(f):
        for parameter in reversed(parameters):
            f = parameter.to_click_option()(f)
        return f

    return decorator


class RunSpec:
    def __init__(self, subcommand: str, schedule: list = None, steps: int = None, seed: int = 0,
                 pairs: int = DEFAULT_PAIRS, visibility_z: float = 1.0, visibility_x: float = 1.0,
                 format: str = "csv", out: str = None, degrees: bool = False, log_file: str = None, quiet: bool = False,
                 all_witnesses: bool = False):
        """
        Everything one subcommand run needs

        :raises InvalidSchedule: when the schedule length disagrees with `steps`
        """
        schedule = list(schedule if schedule is not None else [0.34, 0.19, 0.0])
        steps = len(schedule) if steps is None else steps
        if len(schedule) != steps:
            raise InvalidSchedule(f"Schedule has {len(schedule)} entries but --steps is {steps}")
        self.subcommand, self.schedule, self.steps = subcommand, schedule, steps
        self.seed, self.pairs, self.visibility_z, self.visibility_x = seed, pairs, visibility_z, visibility_x
        self.format, self.out, self.degrees = format, out, degrees
        self.log_file, self.quiet = log_file, quiet
        self.all_witnesses = all_witnesses

    @classmethod
    def from_inputs(cls, subcommand: str, parameters: list, raw: dict) -> "RunSpec":
        """ Validate the raw click values of `parameters` and build the run """
        parsed = {parameter.key: input_handler(parameter, raw.get(parameter.key)) for parameter in parameters}
        if "mu" in parsed:
            parsed["schedule"] = parsed.pop("mu")
        return cls(subcommand=subcommand, **{key: value for key, value in parsed.items() if value is not None})

    def config(self) -> ProtocolConfig:
        return ProtocolConfig(self.schedule, steps=self.steps)

    def plan(self) -> ExperimentPlan:
        return ExperimentPlan(pairs_per_config=self.pairs, seed=self.seed,
                              visibility_z=self.visibility_z, visibility_x=self.visibility_x)
