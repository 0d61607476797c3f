"""Hilbert-Schmidt contractivity of Lindblad dynamics in the Bloch representation."""

from .analysis import (
    ContractivityReport,
    SteadyState,
    Witness,
    analyze,
    check_normal,
    check_unital,
    steady_state,
    symmetric_spectrum,
    witness_state,
)
from .basis import (
    HermitianBasis,
    build_basis,
    expand,
    hs_distance,
    hs_inner,
    reconstruct,
    reduced,
    trace_distance,
)
from .dynamics import Trajectory, distance_series, monotonicity_check, propagate
from .montecarlo import SurveyConfig, SurveyResult, sample_lindblad, survey
from .superop import (
    BlochSystem,
    LindbladSystem,
    apply_lindbladian,
    build_bloch_system,
    dissipator_part,
    hamiltonian_part,
)

__version__ = "0.1.0"
