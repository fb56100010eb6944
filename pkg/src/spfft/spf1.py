"""SPF1 vector files: portable complex vectors with a domain tag.

Layout (all little-endian, independent of the host):

  offset 0   magic  "SPF1"        4 bytes
  offset 4   version u16          must be 1
  offset 6   domain  u8           0 = time, 1 = frequency
  offset 7   reserved u8          must be 0
  offset 8   length  u64          N, a power of two
  offset 16  payload               N records of (re f64, im f64)
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .dft_core import log2_length
from .errors import FileFormatError, InvalidLength

MAGIC = b"SPF1"
VERSION = 1
DOMAIN_TIME = 0
DOMAIN_FREQ = 1

_HEADER = struct.Struct("<4sHBBQ")


def write_vector_file(path, values, domain: int) -> None:
    """Write a complex vector; the payload is exactly 16*N bytes."""
    if domain not in (DOMAIN_TIME, DOMAIN_FREQ):
        raise FileFormatError(f"domain flag must be 0 or 1, got {domain}")
    payload = np.ascontiguousarray(values, dtype="<c16")
    log2_length(len(payload))
    header = _HEADER.pack(MAGIC, VERSION, domain, 0, len(payload))
    Path(path).write_bytes(header + payload.tobytes())


def read_vector_file(path) -> tuple[np.ndarray, int]:
    """Read a vector file; returns (values, domain).

    Round-trips bit-exactly with write_vector_file.  Structural problems
    raise FileFormatError naming the offending offset.
    """
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FileFormatError(
            f"truncated header: need {_HEADER.size} bytes, found {len(data)}"
        )
    magic, version, domain, reserved, n = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FileFormatError(f"bad magic {magic!r} at offset 0, expected {MAGIC!r}")
    if version != VERSION:
        raise FileFormatError(f"unsupported version {version} at offset 4")
    if domain not in (DOMAIN_TIME, DOMAIN_FREQ):
        raise FileFormatError(f"bad domain flag {domain} at offset 6")
    if reserved != 0:
        raise FileFormatError(f"reserved byte at offset 7 must be 0, got {reserved}")
    try:
        log2_length(n)
    except InvalidLength as exc:
        raise FileFormatError(f"bad length {n} at offset 8: {exc}") from exc
    expected = 16 * n
    if len(data) - _HEADER.size != expected:
        raise FileFormatError(
            f"payload at offset 16 must be {expected} bytes, found {len(data) - _HEADER.size}"
        )
    values = np.frombuffer(data, dtype="<c16", offset=_HEADER.size).astype(np.complex128)
    return values, domain
