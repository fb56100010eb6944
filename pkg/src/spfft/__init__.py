"""Deterministic sublinear sparse inverse FFT for small-support vectors."""

from .dft_core import (
    MAX_LOG2_LEN,
    CountingSpectrumAccessor,
    SupportDescriptor,
    fft_forward,
    fft_inverse,
    log2_length,
    modulation_check,
    naive_dft,
    periodize,
    subsample_spectrum,
)
from .errors import (
    AlgorithmError,
    AmbiguousSupport,
    CannotCalibrate,
    DegenerateQuotient,
    FileFormatError,
    InvalidLength,
    InvalidLevel,
    InvalidOffset,
    InvalidSupportLength,
    NoVectors,
    NoisyQuotient,
    NotInvertible,
    SpfftError,
    ValidationError,
    WrongDomain,
    ZeroSignal,
)
from .experiment import ExperimentConfig, run_bench, run_experiment, run_trial
from .signal_lab import (
    NoiseSpec,
    TrialRecord,
    add_noise,
    error_l2_over_n,
    gen_sparse_signal,
    oracle_inverse,
    philox_rng,
    realized_snr_db,
)
from .sparse_exact import (
    ExactReconstruction,
    ceil_log2,
    find_support_start,
    mod_inverse_pow2,
    reconstruct_exact,
    resolve_shift,
    select_odd_sample,
    window_energies,
    window_spectrum_sample,
)
from .sparse_noisy import (
    NoisyConfig,
    NoisyReconstruction,
    average_support_values,
    estimate_support_start,
    offset_periodization,
    reconstruct_noisy,
    refine_support,
)
from .spf1 import DOMAIN_FREQ, DOMAIN_TIME, read_vector_file, write_vector_file

__version__ = "0.1.0"
