from typing import Optional

from prometheus_client import Summary, generate_latest

ZNF_EXPANSION_TIME = Summary('znf_expansion_duration_seconds', 'Time spent expanding a ternary association type into Zinbiel normal form')
MODULAR_REDUCTION_TIME = Summary('modular_reduction_duration_seconds', 'Time spent reducing a block of rows against a modular echelon form')
RATIONAL_RCF_TIME = Summary('rational_rcf_duration_seconds', 'Time spent computing a row canonical form over the rationals')
HNF_TIME = Summary('hnf_duration_seconds', 'Time spent computing a Hermite normal form with transform')
LLL_TIME = Summary('lll_duration_seconds', 'Time spent in LLL basis reduction')
STACKED_RANK_TIME = Summary('stacked_rank_duration_seconds', 'Time spent computing one per-partition stacked rank')


def write_metrics(path: Optional[str]):
    if not path:
        return
    with open(path, "wb") as file:
        file.write(generate_latest())
