"""Photon statistics of n-photon squeezed coherent states and their
Jaynes-Cummings collapse and revival."""
from revival_lab.errors import (
    BracketFailure,
    DegenerateState,
    NegativeRadicand,
    NoInteriorMinimum,
    NoRevivalInWindow,
    OptimizerError,
    ParameterError,
    RevivalLabError,
    SingularSqueeze,
    UnderTruncated,
)
from revival_lab.fock import (
    FockVector,
    StateParams,
    apply_annihilation,
    apply_B,
    apply_Bdag,
    apply_creation,
    inner_product,
    number_expectation_numeric,
    overlap_deficit,
)
from revival_lab.jcm import (
    EnvelopeMetrics,
    JcmParams,
    RevivalTrace,
    amplitudes,
    envelope_metrics,
    ground_state_probability,
    ground_state_probability_resonant,
    rabi_frequency,
    revival_trace,
)
from revival_lab.kernels import BACKEND
from revival_lab.moments import (
    MomentElements,
    matrix_elements,
    mean_photon_number,
    photon_variance,
    second_moment,
    variance_quotient,
)
from revival_lab.optimize import (
    OptimalPoint,
    match_integer_mean,
    minimize_quotient_numeric,
    optimal_alpha_sq,
    optimal_point,
)
from revival_lab.presets import PRESETS, FigurePreset, get_preset
from revival_lab.special import hermite_eval, hypergeom_0F2_poly
from revival_lab.states import (
    build_state,
    coherent_state,
    n_photon_coherent,
    n_photon_squeezed_recursive,
    one_photon_squeezed_closed,
    squeezed_coherent_state,
    two_photon_squeezed_closed,
)

__version__ = "0.1.0"
