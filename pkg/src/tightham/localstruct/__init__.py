"""The cubic bound f_{s,p,t}, local configurations on three triples and the
exhaustive verification of the local weight bound."""

from .config import (
    LocalConfig,
    TripleSystem,
    format_config,
    parse_config,
    steadiness_witness,
    validate_config,
    vid,
    vname,
)
from .fact import (
    FACT_TRIPLES,
    SIGMA_MAX,
    SIGMA_MIN,
    TARGET,
    check_fact,
    check_monotonicity,
    f_spt,
    max_on_range,
)
from .weights import (
    WeightAssignment,
    check_pair_weight,
    config_sup,
    config_value,
    frontier,
    max_weight_lp,
)
from .frame import SigmaFrame
from .verify import VerificationReport, verify_local_structure
