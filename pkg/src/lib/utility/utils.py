from fractions import Fraction
from json import JSONEncoder

import numpy as np


class AlgebraJSONEncoder(JSONEncoder):
    def default(self, o):
        if isinstance(o, Fraction):
            return str(o) if o.denominator != 1 else o.numerator
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        return o.__dict__


def parse_assignments(values) -> dict:
    """NAME=PATH pairs from repeated flags."""
    assignments = {}
    for value in values or []:
        name, separator, path = value.partition("=")
        if not separator or not name or not path:
            raise ValueError(f"expected NAME=PATH, got {value!r}")
        assignments[name] = path
    return assignments
