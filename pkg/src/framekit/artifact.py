"""Versioned, checksummed binary containers for persisted models.

Layout: magic (4 bytes) | sha256 of the rest (32) | format version (u32 LE)
| header length (u32 LE) | JSON header (UTF-8) | raw payload. The header
describes every array in the payload as [name, dtype, shape] so artifacts
are self-describing.
"""

from __future__ import annotations

import hashlib
import json
import struct

import numpy as np

MODEL_MAGIC = b"FKMD"   # classifier model
TOPIC_MAGIC = b"FKTM"   # topic model
FORMAT_VERSION = 1


def pack(magic: bytes, header: dict, arrays: dict[str, np.ndarray]) -> bytes:
    specs = []
    payload = bytearray()
    for name, arr in arrays.items():
        arr = np.ascontiguousarray(arr)
        specs.append([name, arr.dtype.str, list(arr.shape)])
        payload.extend(arr.tobytes())
    full_header = dict(header)
    full_header["arrays"] = specs
    header_bytes = json.dumps(full_header, sort_keys=True).encode("utf-8")
    body = struct.pack("<II", FORMAT_VERSION, len(header_bytes)) + header_bytes + bytes(payload)
    return magic + hashlib.sha256(body).digest() + body


def unpack(data: bytes, magic: bytes) -> tuple[dict, dict[str, np.ndarray]]:
    """Parse a container; raises ValueError on any integrity problem."""
    if len(data) < len(magic) + 32 + 8:
        raise ValueError("truncated artifact")
    if data[:len(magic)] != magic:
        raise ValueError(f"bad magic {data[:len(magic)]!r}")
    checksum = data[len(magic):len(magic) + 32]
    body = data[len(magic) + 32:]
    if hashlib.sha256(body).digest() != checksum:
        raise ValueError("checksum mismatch")
    version, header_len = struct.unpack_from("<II", body)
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {version}")
    header_end = 8 + header_len
    header = json.loads(body[8:header_end].decode("utf-8"))
    arrays: dict[str, np.ndarray] = {}
    offset = header_end
    for name, dtype_str, shape in header.pop("arrays"):
        dtype = np.dtype(dtype_str)
        count = int(np.prod(shape)) if shape else 1
        nbytes = dtype.itemsize * count
        chunk = body[offset:offset + nbytes]
        if len(chunk) != nbytes:
            raise ValueError(f"payload truncated at array {name!r}")
        arrays[name] = np.frombuffer(chunk, dtype=dtype).reshape(shape).copy()
        offset += nbytes
    if offset != len(body):
        raise ValueError("trailing bytes after declared arrays")
    return header, arrays
