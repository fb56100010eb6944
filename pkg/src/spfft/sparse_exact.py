"""Sparse recovery from exact Fourier data.

A length-N vector that vanishes outside a cyclic window of m entries is
recovered from just under 4m spectrum values: one inverse FFT of length
2**(L+1), where L = ceil(log2 m), gives the folded vector; a sliding
window locates its support; and a single odd-indexed spectrum value pins
down which of the 2**(J-L-1) candidate placements of that window is the
true one, via a root-of-unity quotient and an inverse modulo a power of
two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dft_core import CountingSpectrumAccessor, SupportDescriptor, fft_inverse
from .errors import (
    AmbiguousSupport,
    DegenerateQuotient,
    InvalidLevel,
    InvalidSupportLength,
    NoisyQuotient,
    NotInvertible,
    ZeroSignal,
)


@dataclass(frozen=True)
class ExactReconstruction:
    """Recovered signal plus the run's diagnostics.

    samples_used is the accessor's distinct-read count; on the sparse
    path it is at most 2**(fold_level+1) + 2.  block_shift and
    phase_index are the resolved window placement (number of fold-length
    blocks) and the root-of-unity exponent it was derived from; both are
    0 on the dense fallback path.
    """

    signal: np.ndarray
    support: SupportDescriptor
    samples_used: int
    fold_level: int
    block_shift: int
    phase_index: int


def ceil_log2(m: int) -> int:
    """Smallest L with m <= 2**L."""
    return int(m - 1).bit_length()


def window_energies(values, window_len: int) -> np.ndarray:
    """Energy of every cyclic window of window_len entries.

    ``out[k] = sum_{l=k}^{k+window_len-1} |values[l mod n]|^2``, evaluated
    with prefix sums: the O(n) sliding recursion
    ``e_{k+1} = e_k - |v_k|^2 + |v_{k+window_len}|^2`` in vector form.
    """
    values = np.asarray(values, dtype=np.complex128)
    n = len(values)
    if not 1 <= window_len <= n:
        raise InvalidSupportLength(f"window length {window_len} outside [1, {n}]")
    sq = values.real**2 + values.imag**2
    prefix = np.concatenate([[0.0], np.cumsum(np.concatenate([sq, sq[:window_len]]))])
    return prefix[window_len : window_len + n] - prefix[:n]


def find_support_start(values, window_len: int) -> int:
    """First index of the max-energy cyclic window (smallest index on ties).

    Requires ``window_len <= n/2``: a vector supported on window_len
    entries then has a unique maximizing window.
    """
    values = np.asarray(values, dtype=np.complex128)
    if window_len >= 1 and 2 * window_len > len(values):
        raise AmbiguousSupport(
            f"window length {window_len} exceeds half the vector length {len(values)}"
        )
    return int(np.argmax(window_energies(values, window_len)))


def _window_argmax(values, window_len: int) -> int:
    # Dense-fallback support detection: no uniqueness guard, smallest
    # argmax index wins.
    return int(np.argmax(window_energies(values, window_len)))


def window_spectrum_sample(window, first_index: int, freq_index: int, length: int) -> complex:
    """One DFT sample of a window embedded at first_index in a length-`length` vector.

    ``sum_l window[l] * exp(-2i*pi * freq_index * (first_index + l) / length)``
    with exponents reduced mod length before evaluation.
    """
    window = np.asarray(window, dtype=np.complex128)
    offsets = first_index + np.arange(len(window), dtype=np.int64)
    exponents = (freq_index * offsets) % length
    return complex(window @ np.exp((-2j * np.pi / length) * exponents))


def mod_inverse_pow2(a: int, t: int) -> int:
    """Inverse of an odd integer a modulo 2**t."""
    if t < 1:
        raise InvalidLevel(f"modulus exponent must be >= 1, got {t}")
    if a % 2 == 0:
        raise NotInvertible(f"{a} is even and has no inverse mod 2**{t}")
    return pow(a % (1 << t), -1, 1 << t)


def select_odd_sample(accessor: CountingSpectrumAccessor, fold_level: int) -> tuple[int, complex]:
    """Pick a reliably-nonzero odd-indexed spectrum value, frugally.

    The stride-subsampled values of the sparse path have already been
    read, so their argmax costs nothing; of its two (odd-indexed)
    neighbors, the one with larger modulus is returned, at a price of
    two new reads.  Returns (k, spectrum[2k+1]).

    If both neighbors are exactly zero -- possible for contrived exact
    data -- odd indices 1, 3, 5, ... are scanned until a nonzero value
    appears; a fully zero odd half-spectrum raises ZeroSignal.
    """
    j = accessor.log2_len
    if not 0 <= fold_level < j - 1:
        raise InvalidLevel(f"fold level {fold_level} outside [0, {j - 1})")
    n = len(accessor)
    stride = 1 << (j - fold_level - 1)
    count = 1 << (fold_level + 1)
    subsampled = accessor.read(stride * np.arange(count, dtype=np.int64))
    base = stride * int(np.argmax(np.abs(subsampled)))
    right = accessor.read((base + 1) % n)
    left = accessor.read((base - 1) % n)
    if abs(right) >= abs(left):
        if abs(right) > 0:
            return (base // 2) % (n // 2), complex(right)
    elif abs(left) > 0:
        return (base // 2 - 1) % (n // 2), complex(left)
    for k in range(n // 2):
        value = accessor.read(2 * k + 1)
        if abs(value) > 0:
            return k, complex(value)
    raise ZeroSignal("every odd-indexed spectrum value is zero")


def resolve_shift(quotient: complex, k: int, t: int) -> tuple[int, int]:
    """Invert ``quotient = exp(-2i*pi*(2k+1)*shift / 2**t)`` for the shift.

    Rounds the phase to the nearest 2**t-th root of unity; a phase more
    than a quarter step away means the data cannot have come from an
    exact spectrum, and NoisyQuotient is raised.  Returns
    (block_shift, phase_index).
    """
    if abs(quotient) == 0:
        raise DegenerateQuotient("shift quotient is zero")
    modulus = 1 << t
    steps = -np.angle(quotient) * modulus / (2 * np.pi)
    nearest = round(steps)
    if abs(steps - nearest) > 0.25:
        raise NoisyQuotient(
            f"phase {steps:.6f} steps is {abs(steps - nearest):.3f} from the nearest "
            f"root-of-unity lattice point; data are not an exact spectrum"
        )
    phase_index = int(nearest) % modulus
    shift = (phase_index * mod_inverse_pow2((2 * k + 1) % modulus, t)) % modulus
    return shift, phase_index


def reconstruct_exact(accessor: CountingSpectrumAccessor, support_len: int) -> ExactReconstruction:
    """Recover a vector with support length <= support_len from exact data.

    With L = ceil(log2 support_len) < J-1, the sparse path consumes at
    most 2**(L+1) + 2 < 4*support_len + 2 distinct spectrum values; for
    L >= J-1 a single dense inverse FFT is the cheapest correct option
    and is used as the fallback.
    """
    n = len(accessor)
    j = accessor.log2_len
    if not 1 <= support_len <= n:
        raise InvalidSupportLength(f"support length {support_len} outside [1, {n}]")
    level = ceil_log2(support_len)

    if level >= j - 1:
        signal = fft_inverse(accessor.read_all())
        start = _window_argmax(signal, support_len)
        support = SupportDescriptor(start, support_len)
        keep = np.zeros(n, dtype=bool)
        keep[support.indices(n)] = True
        signal[~keep] = 0
        return ExactReconstruction(signal, support, accessor.read_count, level, 0, 0)

    fold_len = 1 << (level + 1)
    stride = 1 << (j - level - 1)
    folded = fft_inverse(accessor.read(stride * np.arange(fold_len, dtype=np.int64)))
    if not folded.any():
        zero = np.zeros(n, dtype=np.complex128)
        return ExactReconstruction(
            zero, SupportDescriptor(0, support_len), accessor.read_count, level, 0, 0
        )

    start = find_support_start(folded, support_len)
    window = folded[(start + np.arange(support_len, dtype=np.int64)) % fold_len]

    k, odd_value = select_odd_sample(accessor, level)
    reference = window_spectrum_sample(window, start, 2 * k + 1, n)
    if abs(reference) == 0:
        raise DegenerateQuotient("window transform vanished at the chosen odd index")
    shift, phase_index = resolve_shift(odd_value / reference, k, j - level - 1)

    first_index = (start + fold_len * shift) % n
    signal = np.zeros(n, dtype=np.complex128)
    support = SupportDescriptor(first_index, support_len)
    signal[support.indices(n)] = window
    return ExactReconstruction(
        signal, support, accessor.read_count, level, shift, phase_index
    )
