"""Bell-nonlocality sudden death of W states under local dephasing."""

from .analytic import (
    BnsdKind,
    BnsdResult,
    b3_expectation_analytic,
    b3_magnitude_analytic,
    cross_term_sum,
    find_crossing_numeric,
    initial_violation,
    tau_bnsd_analytic,
    term_expectations_analytic,
)
from .bell import (
    DEFAULT_SETTINGS,
    BellOperator,
    BellSettings,
    build_b2,
    build_b3,
    exceeds_bound,
    expectation,
    measurement_pair,
    term_expectations,
    violates_mabk,
)
from .noise import (
    DephasingFactors,
    DephasingModel,
    apply_channel,
    evolved_w_analytic,
    factors_at,
    kraus_operators,
)
from .states import (
    DensityMatrix,
    WAmplitudes,
    maximally_mixed,
    pure_state_density,
    validate_density,
    w_state_density,
)

__version__ = "0.1.0"
