import math
import yaml

from typing import Sequence, Union

import numpy as np


class YAMLDumper(yaml.Dumper):
    def increase_indent(self, flow=False, indentless=False):
        return super(YAMLDumper, self).increase_indent(flow, False)


def to_bits(nats: Union[float, Sequence[float], np.ndarray]):
    """Converts entropies from nats to bits (reporting only)."""

    if isinstance(nats, (int, float)):
        return nats / math.log(2)

    return np.asarray(nats, dtype=float) / math.log(2)


def format_number(value: float) -> str:
    # repr gives the shortest round-tripping form (up to 17 digits)
    return repr(float(value))
