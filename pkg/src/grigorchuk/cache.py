"""On-disk cache of enumerated balls.

File layout (little endian)::

    b"GGB1"  u16 format  u16 radius  u16 key_depth  u32 count  u16 len  version
    count x ( u16 len  key | u16 length | u16 len  witness | u8 certified )

Files are named by (radius, key depth, code version), so a change to the
package version never reads a stale table.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

from . import __version__
from .growth import BallEntry, BallTable

MAGIC = b"GGB1"
FORMAT = 1
_HEADER = struct.Struct("<4sHHHI")


class CacheFormatError(ValueError):
    pass


def cache_path(cache_dir, radius: int, key_depth: int) -> Path:
    return Path(cache_dir) / f"ball_r{radius}_m{key_depth}_v{__version__}.ggb"


def _pack(blob: bytes) -> bytes:
    return struct.pack("<H", len(blob)) + blob


def save_ball(cache_dir, table: BallTable) -> Path:
    path = cache_path(cache_dir, table.radius, table.key_depth)
    path.parent.mkdir(parents=True, exist_ok=True)
    chunks = [
        _HEADER.pack(MAGIC, FORMAT, table.radius, table.key_depth, len(table.entries)),
        _pack(__version__.encode()),
    ]
    for key, entry in table.entries.items():
        chunks.append(_pack(key))
        chunks.append(struct.pack("<H", entry.length))
        chunks.append(_pack(entry.witness.encode("ascii")))
        chunks.append(struct.pack("<B", entry.certified))
    tmp = path.with_suffix(".tmp")
    try:
        tmp.write_bytes(b"".join(chunks))
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"cannot write ball cache {path}: {exc}") from exc
    return path


def read_ball(path) -> BallTable:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read ball cache {path}: {exc}") from exc
    if len(data) < _HEADER.size or data[:4] != MAGIC:
        raise CacheFormatError(f"{path} is not a GGB1 ball cache")
    _, fmt, radius, key_depth, count = _HEADER.unpack_from(data, 0)
    if fmt != FORMAT:
        raise CacheFormatError(f"{path}: unsupported format {fmt}")
    pos = _HEADER.size

    def take(size):
        nonlocal pos
        if pos + size > len(data):
            raise CacheFormatError(f"{path} is truncated")
        chunk = data[pos:pos + size]
        pos += size
        return chunk

    def blob():
        (n,) = struct.unpack("<H", take(2))
        return take(n)

    blob()  # code version, already part of the file name
    table = BallTable(key_depth, radius)
    for _ in range(count):
        key = blob()
        (length,) = struct.unpack("<H", take(2))
        witness = blob().decode("ascii")
        (certified,) = struct.unpack("<B", take(1))
        table.entries[key] = BallEntry(length, witness, bool(certified))
    if pos != len(data):
        raise CacheFormatError(f"{path} has trailing bytes")
    table.source = path
    return table


def load_ball(cache_dir, radius: int, key_depth: int) -> BallTable | None:
    """Cached table for exactly these parameters, or None."""
    path = cache_path(cache_dir, radius, key_depth)
    if not path.exists():
        return None
    return read_ball(path)
