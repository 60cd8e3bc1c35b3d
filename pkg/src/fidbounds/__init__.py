"""Fidelity, concurrence and negativity of two-qubit states, with tight bounds."""

from .bounds import (
    BoundReport,
    check_bounds,
    curve_data,
    lower_bound_concurrence,
    lower_bound_negativity,
    upper_bound_negativity,
)
from .decompose import Rank2Decomposition, decompose_to_rank2
from .extremal import bell_state, min_fidelity_state, pure_state_with_concurrence, werner
from .kernels import BACKEND
from .measures import (
    MeasureReport,
    concurrence,
    eof,
    fidelity,
    measure_report,
    negative_pt_eigvec_diagnostic,
    negativity,
)
from .oracle import fidelity_oracle
from .states import (
    CorrelationMatrix,
    DensityMatrix,
    LocalUnitary,
    apply_local_unitary,
    correlation_matrix,
    numerical_rank,
    partial_transpose,
    state_from_correlation,
    validate,
)

__version__ = "0.1.0"
