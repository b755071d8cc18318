"""Published values: arity 7 per-partition ranks in partitions(7) order (7, 61, ..., 1^7) and the arity 5 lattice."""
from typing import Dict, List

PARTITION_LABELS = ["7", "61", "52", "51^2", "43", "421", "41^3", "3^21", "32^2", "321^2", "31^4", "2^31",
                    "2^21^3", "21^5", "1^7"]

SYM = [6, 35, 77, 81, 71, 172, 95, 95, 92, 145, 57, 50, 44, 14, 0]
SYM_CON = [6, 35, 80, 84, 79, 193, 108, 116, 114, 188, 78, 75, 74, 31, 5]
SYM_CON_NEW = [6, 35, 80, 84, 79, 194, 108, 116, 115, 189, 79, 75, 74, 31, 5]
EXPANSION = [0, 1, 4, 5, 5, 15, 10, 10, 11, 20, 10, 9, 10, 5, 1]
NULLITY = [6, 35, 80, 85, 79, 195, 116, 115, 114, 190, 80, 75, 74, 31, 5]

# printed entries that contradict the global dimension count
KNOWN_MISPRINTS = {("nullity", "41^3"), ("nullity", "3^21"), ("nullity", "32^2")}

TABLES: Dict[str, List[int]] = {
    "sym": SYM,
    "sym_con": SYM_CON,
    "sym_con_new": SYM_CON_NEW,
    "expansion": EXPANSION,
    "nullity": NULLITY,
}

CON_NEW_OVER_CON = {"421": 1, "32^2": 1, "321^2": 1, "31^4": 1}
ALL_OVER_CON = {"51^2": 1, "421": 2, "41^3": 2, "32^2": 1, "321^2": 2, "31^4": 2}

CON_RANKS = [1785, 2730, 3150, 3150, 3150, 4410, 4410, 4794]
REDUNDANT_CONSEQUENCES = [4, 5, 7]
FILTRATION_RANKS = [4900, 4970, 5040]


def printed_row(label: str) -> Dict[str, int]:
    position = PARTITION_LABELS.index(label)
    return {name: values[position] for name, values in TABLES.items()}


# arity 5, printed with conjugate partition labels
ARITY5_PRINTED_DECOMPOSITION = {"5": 1, "41": 2, "32": 2, "31^2": 1, "2^21": 1}
ARITY5_REFERENCE_MEASURE = 40.847
ARITY5_REFERENCE_MEASURE_TOLERANCE = 0.01
ARITY5_REFERENCE_DELTA = "999/1000"
ARITY5_REFERENCE_MULTISET = "14^13, 16^14, 18, 20, 22"
