"""Multi-photon interference with noisy light sources.

Computes N-fold coincidence probabilities and interference visibilities
for linear-optical circuits whose inputs are specified only through their
mean photon number and normalized intensity autocorrelations g^(m).
"""

from multiphoton.circuits import Circuit, beamsplitter, custom, dft, symmetric
from multiphoton.coincidence import (
    CoincidenceResult,
    InputEnsemble,
    OverlapConfig,
    coincidence_dft3,
    coincidence_dist_general,
    coincidence_hom,
    coincidence_id_general,
    coincidence_mismatch_n3,
    coincidence_n3_explicit,
    coincidence_sym_phase,
    enumerate_exponent_tuples,
    uniform_ensemble,
)
from multiphoton.linalg import (
    HAVE_COMPILED_KERNEL,
    check_unitary,
    column_select,
    mod_squared,
    mode_assignment,
    permanent,
    permanent_naive,
)
from multiphoton.sources import (
    SourceStats,
    StatClass,
    classify,
    custom_stats,
    diluted_laser_stats,
    fock_stats,
    laser_stats,
    thermal_stats,
    vac12_mixture_stats,
)
from multiphoton.visibility import (
    VisibilityPoint,
    v2_closed,
    v3_classical_bound,
    v3_dft,
    v3_fock,
    v3_gaussian_bound,
    v3_mixture,
    visibility,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CoincidenceResult",
    "HAVE_COMPILED_KERNEL",
    "InputEnsemble",
    "OverlapConfig",
    "SourceStats",
    "StatClass",
    "VisibilityPoint",
    "beamsplitter",
    "check_unitary",
    "classify",
    "coincidence_dft3",
    "coincidence_dist_general",
    "coincidence_hom",
    "coincidence_id_general",
    "coincidence_mismatch_n3",
    "coincidence_n3_explicit",
    "coincidence_sym_phase",
    "column_select",
    "custom",
    "custom_stats",
    "dft",
    "diluted_laser_stats",
    "enumerate_exponent_tuples",
    "fock_stats",
    "laser_stats",
    "mod_squared",
    "mode_assignment",
    "permanent",
    "permanent_naive",
    "symmetric",
    "thermal_stats",
    "uniform_ensemble",
    "v2_closed",
    "v3_classical_bound",
    "v3_dft",
    "v3_fock",
    "v3_gaussian_bound",
    "v3_mixture",
    "vac12_mixture_stats",
    "visibility",
]
