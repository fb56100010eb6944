"""Command-line interface: gen, reconstruct, experiment, bench.

Exit codes: 0 success, 2 validation error, 3 I/O or file-format error,
4 algorithm failure on the given data.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .dft_core import CountingSpectrumAccessor, fft_forward, log2_length
from .errors import AlgorithmError, FileFormatError, ValidationError, WrongDomain
from .experiment import (
    ALGORITHMS,
    ExperimentConfig,
    run_bench,
    run_experiment,
)
from .signal_lab import (
    NOISE_STREAM_SALT,
    NoiseSpec,
    add_noise,
    error_l2_over_n,
    gen_sparse_signal,
    oracle_inverse,
)
from .sparse_exact import _window_argmax, ceil_log2, reconstruct_exact
from .sparse_noisy import NoisyConfig, reconstruct_noisy
from .spf1 import DOMAIN_FREQ, DOMAIN_TIME, read_vector_file, write_vector_file

FULL_SCALE_N = 1 << 22
DEFAULT_EXPERIMENT_N = 1 << 16


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from exc


def _cmd_gen(args) -> int:
    signal, support = gen_sparse_signal(args.n, args.m, args.seed)
    spectrum = fft_forward(signal)
    meta = [f"n={args.n}", f"m={args.m}", f"mu={support.first_index}", f"seed={args.seed}"]
    if args.snr is not None:
        spectrum, _ = add_noise(
            spectrum,
            NoiseSpec(seed=args.seed ^ NOISE_STREAM_SALT, snr_db=args.snr, shape=args.noise_shape),
        )
        meta.append(f"snr_db={args.snr}")
    prefix = Path(args.out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    write_vector_file(Path(str(prefix) + ".time.spf1"), signal, DOMAIN_TIME)
    write_vector_file(Path(str(prefix) + ".freq.spf1"), spectrum, DOMAIN_FREQ)
    Path(str(prefix) + ".meta.txt").write_text("\n".join(meta) + "\n")
    print(f"wrote {prefix}.time.spf1, {prefix}.freq.spf1, {prefix}.meta.txt (mu={support.first_index})")
    return 0


def _cmd_reconstruct(args) -> int:
    spectrum, domain = read_vector_file(args.input)
    if domain != DOMAIN_FREQ:
        raise WrongDomain(f"{args.input} holds time-domain data, need frequency-domain")
    n = len(spectrum)
    j = log2_length(n)
    accessor = CountingSpectrumAccessor(spectrum)

    tic = time.perf_counter()
    if args.algorithm == "exact":
        result = reconstruct_exact(accessor, args.m)
        recovered, start, samples = result.signal, result.support.first_index, result.samples_used
        mode = "fallback" if result.fold_level >= j - 1 else "sparse"
    elif args.algorithm == "noisy":
        result = reconstruct_noisy(accessor, args.m, NoisyConfig(max_vectors=args.max_kappa, averaging_count=args.max_kappa))
        recovered, start, samples = result.signal, result.support.first_index, result.samples_used
        mode = "fallback" if ceil_log2(args.m) >= j - 1 else "sparse"
    else:
        if not 1 <= args.m <= n:
            raise ValidationError(f"support length {args.m} outside [1, {n}]")
        recovered = oracle_inverse(spectrum)
        start, samples, mode = _window_argmax(recovered, args.m), n, "baseline"
    wall_ms = 1e3 * (time.perf_counter() - tic)

    report = (
        f"mu={start} m={args.m} algorithm={args.algorithm} mode={mode} "
        f"samples_used={samples} wall_ms={wall_ms:.3f}"
    )
    if args.truth is not None:
        truth, truth_domain = read_vector_file(args.truth)
        if truth_domain != DOMAIN_TIME:
            raise WrongDomain(f"{args.truth} holds frequency-domain data, need time-domain")
        report += f" err_l2_over_n={error_l2_over_n(truth, recovered):.17g}"
    if args.out is not None:
        write_vector_file(args.out, recovered, DOMAIN_TIME)
        report += f" out={args.out}"
    print(report)
    return 0


def _cmd_experiment(args) -> int:
    n = FULL_SCALE_N if args.full else args.n
    config = ExperimentConfig(
        n=n,
        m=args.m,
        snr_list=tuple(_float_list(args.snr)),
        trials=args.trials,
        seed=args.seed,
        algorithm=args.algorithm,
        out=Path(args.out) if args.out else None,
    )
    csv_text = run_experiment(config)
    if config.out is not None:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(csv_text)
        print(f"wrote {config.out}")
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_bench(args) -> int:
    csv_text = run_bench(_int_list(args.n), _int_list(args.m), args.trials, args.seed)
    if args.out is not None:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(csv_text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(csv_text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spfft",
        description="Sublinear sparse inverse FFT for vectors with a short cyclic support window.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance as SPF1 files")
    gen.add_argument("--n", type=int, required=True, help="vector length (power of two)")
    gen.add_argument("--m", type=int, required=True, help="support window length")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--snr", type=float, default=None, help="perturb the spectrum at this SNR (dB)")
    gen.add_argument("--noise-shape", choices=("disc", "box"), default="disc")
    gen.add_argument("--out-prefix", required=True, help="writes PREFIX.{time,freq}.spf1 and PREFIX.meta.txt")
    gen.set_defaults(func=_cmd_gen)

    rec = sub.add_parser("reconstruct", help="recover a vector from a frequency-domain SPF1 file")
    rec.add_argument("input", help="frequency-domain SPF1 file")
    rec.add_argument("--m", type=int, required=True, help="known support length bound")
    rec.add_argument("--algorithm", choices=ALGORITHMS, default="exact")
    rec.add_argument("--max-kappa", type=int, default=8, help="offset-vector budget of the noisy algorithm")
    rec.add_argument("--truth", default=None, help="time-domain SPF1 file to score against")
    rec.add_argument("--out", default=None, help="write the recovered vector here")
    rec.set_defaults(func=_cmd_reconstruct)

    exp = sub.add_parser("experiment", help="SNR sweep; emits one CSV row per level")
    exp.add_argument("--n", type=int, default=DEFAULT_EXPERIMENT_N)
    exp.add_argument("--full", action="store_true", help="run at the full N = 2^22 scale")
    exp.add_argument("--m", type=int, default=50)
    exp.add_argument("--snr", default="0,5,10,15,20,25,30,35,40,45,50", help="comma-separated dB values (inf = noiseless)")
    exp.add_argument("--trials", type=int, default=100)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--algorithm", choices=ALGORITHMS, default="noisy")
    exp.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    exp.set_defaults(func=_cmd_experiment)

    bench = sub.add_parser("bench", help="wall-time of the sparse path vs the dense inverse FFT")
    bench.add_argument("--n", required=True, help="comma-separated lengths (powers of two)")
    bench.add_argument("--m", required=True, help="comma-separated support lengths")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AlgorithmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
