"""Reproducible experiment and benchmark harnesses behind the CLI.

Trials run in a thread pool (capped by the SPFFT_THREADS environment
variable), but every trial owns its own seed, accessor and generator
stream, and rows are aggregated in (snr, trial) order, so the emitted
CSV is byte-identical regardless of scheduling.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dft_core import (
    CountingSpectrumAccessor,
    SupportDescriptor,
    fft_forward,
    fft_inverse,
    log2_length,
)
from .errors import ValidationError
from .signal_lab import (
    NOISE_STREAM_SALT,
    NoiseSpec,
    TrialRecord,
    add_noise,
    error_l2_over_n,
    gen_sparse_signal,
    oracle_inverse,
)
from .sparse_exact import _window_argmax, reconstruct_exact
from .sparse_noisy import reconstruct_noisy

ALGORITHMS = ("exact", "noisy", "ifft-baseline")

CSV_HEADER = (
    "snr_db,trials,mu_correct_pct,mean_err_sparse,mean_err_ifft,"
    "mean_noise_inf,mean_noise_l1_over_N,mean_samples,mean_kappa_vectors"
)

BENCH_HEADER = "N,m,algorithm,mean_ns,samples_used"


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one experiment sweep (trials x SNR levels)."""

    n: int
    m: int
    snr_list: tuple[float, ...]
    trials: int
    seed: int
    algorithm: str = "noisy"
    out: Path | None = None

    def __post_init__(self):
        log2_length(self.n)
        if not 1 <= self.m <= self.n:
            raise ValidationError(f"support length {self.m} outside [1, {self.n}]")
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        if not self.snr_list:
            raise ValidationError("snr_list must not be empty")
        if self.algorithm not in ALGORITHMS:
            raise ValidationError(
                f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}"
            )


def thread_count() -> int:
    """Worker-pool size: SPFFT_THREADS if set, else the CPU count."""
    raw = os.environ.get("SPFFT_THREADS")
    if raw is not None:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValidationError(f"SPFFT_THREADS must be an integer, got {raw!r}") from exc
        if value < 1:
            raise ValidationError(f"SPFFT_THREADS must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def trial_seed(seed: int, index: int) -> int:
    """Per-trial stream: seed XOR the trial's global index."""
    return (seed ^ index) & 0xFFFFFFFFFFFFFFFF


def run_trial(n: int, m: int, snr_db: float, seed: int, algorithm: str) -> TrialRecord:
    """Generate, perturb, reconstruct, and score one instance."""
    truth, support = gen_sparse_signal(n, m, seed)
    spectrum = fft_forward(truth)
    noisy, noise = add_noise(
        spectrum, NoiseSpec(seed=seed ^ NOISE_STREAM_SALT, snr_db=snr_db)
    )
    accessor = CountingSpectrumAccessor(noisy)
    vectors_used = 0
    if algorithm == "exact":
        result = reconstruct_exact(accessor, m)
        recovered, found = result.signal, result.support
        samples = result.samples_used
    elif algorithm == "noisy":
        result = reconstruct_noisy(accessor, m)
        recovered, found = result.signal, result.support
        samples = result.samples_used
        vectors_used = result.vectors_used
    else:
        recovered = oracle_inverse(noisy)
        found = SupportDescriptor(_window_argmax(recovered, m), m)
        samples = n
    baseline = oracle_inverse(noisy)
    return TrialRecord(
        n=n,
        m=m,
        snr_db=snr_db,
        mu_correct=found.first_index == support.first_index,
        err_sparse=error_l2_over_n(truth, recovered),
        err_ifft=error_l2_over_n(truth, baseline),
        samples_used=samples,
        vectors_used=vectors_used,
        noise_inf=float(np.max(np.abs(noise))) if len(noise) else 0.0,
        noise_l1_over_n=float(np.sum(np.abs(noise))) / n,
    )


def _g17(value: float) -> str:
    return format(float(value), ".17g")


def summarize(records: list[TrialRecord], snr_db: float) -> str:
    """One CSV row aggregating the records of a single SNR level."""
    trials = len(records)
    pct = 100.0 * sum(r.mu_correct for r in records) / trials
    cols = [
        _g17(snr_db),
        str(trials),
        _g17(pct),
        _g17(float(np.mean([r.err_sparse for r in records]))),
        _g17(float(np.mean([r.err_ifft for r in records]))),
        _g17(float(np.mean([r.noise_inf for r in records]))),
        _g17(float(np.mean([r.noise_l1_over_n for r in records]))),
        _g17(float(np.mean([r.samples_used for r in records]))),
        _g17(float(np.mean([r.vectors_used for r in records]))),
    ]
    return ",".join(cols)


def run_experiment(config: ExperimentConfig) -> str:
    """Run the sweep and render the CSV (header plus one row per SNR)."""
    tasks = [
        (si, ti)
        for si in range(len(config.snr_list))
        for ti in range(config.trials)
    ]

    def worker(task):
        si, ti = task
        index = si * config.trials + ti
        return run_trial(
            config.n,
            config.m,
            config.snr_list[si],
            trial_seed(config.seed, index),
            config.algorithm,
        )

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(worker, tasks))

    lines = [CSV_HEADER]
    for si, snr_db in enumerate(config.snr_list):
        records = results[si * config.trials : (si + 1) * config.trials]
        lines.append(summarize(records, snr_db))
    return "\n".join(lines) + "\n"


def run_bench(n_list, m_list, trials: int, seed: int) -> str:
    """Time the sparse exact path against the dense inverse FFT.

    Timings run on one thread for clean numbers.  The samples_used
    column reports the worst case over the trials (n for the dense
    rows).
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    lines = [BENCH_HEADER]
    index = 0
    for n in n_list:
        log2_length(n)
        for m in m_list:
            if not 1 <= m <= n:
                raise ValidationError(f"support length {m} outside [1, {n}]")
            sparse_ns = []
            dense_ns = []
            samples = 0
            for t in range(trials):
                truth, _ = gen_sparse_signal(n, m, trial_seed(seed, index))
                index += 1
                spectrum = fft_forward(truth)
                if t == 0:  # warm the twiddle caches before timing
                    reconstruct_exact(CountingSpectrumAccessor(spectrum), m)
                    fft_inverse(spectrum)
                accessor = CountingSpectrumAccessor(spectrum)
                tic = time.perf_counter_ns()
                result = reconstruct_exact(accessor, m)
                sparse_ns.append(time.perf_counter_ns() - tic)
                samples = max(samples, result.samples_used)
                tic = time.perf_counter_ns()
                fft_inverse(spectrum)
                dense_ns.append(time.perf_counter_ns() - tic)
            lines.append(
                f"{n},{m},exact,{round(sum(sparse_ns) / trials)},{samples}"
            )
            lines.append(f"{n},{m},ifft,{round(sum(dense_ns) / trials)},{n}")
    return "\n".join(lines) + "\n"
