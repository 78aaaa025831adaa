import math

from decimal import Decimal, ROUND_HALF_UP

from .exceptions import InvalidParameter


def clean_time(seconds: int | float) -> str:
    """
    :param seconds: time in seconds that is to be converted
    :return: time string e.g. 5m10s
    """
    m, s = divmod(seconds, 60)
    h, m = divmod(m, 60)
    d, h = divmod(h, 24)
    if d:
        return f"{int(d)}d{int(h)}h"
    elif h:
        return f"{int(h)}h{int(m)}m"
    elif m:
        return f"{int(m)}m{round(s)}s"
    else:
        return f"{round(s, 2)}s"


def round_half_away(value: float, decimals: int = 2) -> float:
    """
    Round half away from zero, the way the published tables are printed (0.125 -> 0.13, -0.125 -> -0.13)

    `round` would use banker's rounding and binary representation, so Decimal is used on the repr instead.
    """
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def to_degrees(value: float | None, degrees: bool) -> float | None:
    """ Presentation-only conversion of an angle in radians. """
    if value is None or not degrees:
        return value
    return math.degrees(value)


def parse_schedule(text: str) -> list[float]:
    """
    Converts a sharpness schedule string to floats

    e.g. converts `0.34,0.19,0` to `[0.34, 0.19, 0.0]`

    :param text: comma separated radians, `pi/8` style fractions of pi are accepted as well
    """
    schedule = []
    for item in str(text).split(","):
        item = item.strip().lower().replace(" ", "")
        try:
            if "pi" in item:
                numerator, _, denominator = item.partition("/")
                factor = numerator.replace("*", "").replace("pi", "") or "1"
                schedule.append(float(factor) * math.pi / float(denominator or 1))
            else:
                schedule.append(float(item))
        except ValueError:
            raise InvalidParameter(f"Malformed sharpness [{item}]")
    return schedule
