"""memaccel: tuning, certification and simulation of memory-accelerated
symmetric linear iterations."""

from . import accel, certify, dynamics, polyroots, spectral
from .accel import (
    Gains,
    GuaranteeReport,
    TuningResult,
    char_poly,
    guarantee,
    max_root_moduli,
    mode_roots,
    modal_angle,
    search_gains,
    tune_memoryless,
    tune_theorem3,
)
from .certify import (
    ClaimCoeffs,
    PartitionField,
    Prop8Result,
    WitnessReport,
    claim6_witness,
    gains_to_claim_coeffs,
    large_radius_phase_check,
    p_tilde,
    partition_field,
    prop8_check,
    witness_to_json,
)
from .dynamics import (
    DropSchedule,
    IterationProblem,
    SimTrace,
    consensus_metrics,
    empirical_rate,
    find_divergent_drop_schedule,
    memory_fragility_example,
    simulate,
    simulate_modal,
    trace_to_csv,
)
from .polyroots import ComplexRootSet, RealPolynomial, max_modulus, roots
from .spectral import (
    LaplacianMatrix,
    SpectralInterval,
    SpectralSet,
    WeightedGraph,
    laplacian,
    load_edge_list,
    nonzero_spectral_interval,
    symmetric_eigenvalues,
)

__version__ = "0.1.0"
