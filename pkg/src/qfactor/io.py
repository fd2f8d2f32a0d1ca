"""JSON state files: ``{"n": N, "amps": [[re, im], ...]}``.

Array position ``p`` holds the coefficient of basis ket ``p + 1``. Numbers
are written with 17 significant digits so every double round-trips.

Small files go through :mod:`json`. Files above ``FAST_PATH_BYTES`` are
parsed in chunks with numpy, which keeps a 2**24-amplitude file well under
2 GiB of memory; that path expects the layout written by :func:`write_state`.
"""

from __future__ import annotations

import json
import os
import re

import numpy as np

from .state import StateVector

__all__ = ["StateFileError", "write_state", "read_state", "state_to_json", "state_from_json"]

FAST_PATH_BYTES = 32 << 20
_CHUNK_BYTES = 64 << 20
_WRITE_CHUNK = 1 << 17
_HEADER = re.compile(rb'^\s*\{\s*"n"\s*:\s*(\d+)\s*,\s*"amps"\s*:\s*\[')
_BRACKETS = bytes.maketrans(b"[],", b"   ")


class StateFileError(ValueError):
    """Malformed or inconsistent state file."""


def _validated(n, flat: np.ndarray) -> StateVector:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise StateFileError(f'"n" must be an integer >= 1, got {n!r}')
    if flat.size != 2 << n:
        raise StateFileError(
            f"expected {1 << n} amplitudes for n={n}, got {flat.size / 2:g}"
        )
    if not np.all(np.isfinite(flat)):
        raise StateFileError("amplitudes must be finite")
    return StateVector._wrap(np.ascontiguousarray(flat).view(np.complex128))


def state_from_json(obj) -> StateVector:
    """Build a state from an already-decoded JSON object."""
    if not isinstance(obj, dict) or "n" not in obj or "amps" not in obj:
        raise StateFileError('state object needs keys "n" and "amps"')
    amps = obj["amps"]
    if not isinstance(amps, list):
        raise StateFileError('"amps" must be a list of [re, im] pairs')
    for pair in amps:
        if not isinstance(pair, list) or len(pair) != 2:
            raise StateFileError(f"each amplitude must be a [re, im] pair, got {pair!r}")
    try:
        flat = np.array(amps, dtype=np.float64).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"non-numeric amplitude: {exc}") from None
    return _validated(obj["n"], flat)


def state_to_json(state: StateVector) -> dict:
    return {
        "n": state.num_qubits,
        "amps": [[float(z.real), float(z.imag)] for z in state.amps],
    }


def write_state(state: StateVector, path) -> None:
    flat = np.ascontiguousarray(state.amps).view(np.float64)
    dim = state.dim
    with open(path, "w", encoding="ascii") as fh:
        fh.write('{"n": %d, "amps": [\n' % state.num_qubits)
        for start in range(0, dim, _WRITE_CHUNK):
            stop = min(dim, start + _WRITE_CHUNK)
            part = flat[2 * start : 2 * stop].tolist()
            text = ("[%.17g, %.17g],\n" * (stop - start)) % tuple(part)
            if stop == dim:
                text = text[:-2] + "\n"
            fh.write(text)
        fh.write("]}\n")


def _parse_numbers(chunk: bytes) -> np.ndarray:
    text = chunk.translate(_BRACKETS).decode("ascii")
    if not text.strip():
        return np.empty(0)
    # Unlike np.fromstring, this raises on a malformed token.
    return np.array(text.split(), dtype=np.float64)


def _read_fast(path) -> StateVector:
    with open(path, "rb") as fh:
        head = fh.read(256)
        m = _HEADER.match(head)
        if m is None:
            raise StateFileError('large state files must start with {"n": N, "amps": [')
        n = int(m.group(1))
        if n > 40:
            raise StateFileError(f"n={n} is too large")
        expected = 2 << n
        out = np.empty(expected, dtype=np.float64)
        pos = 0
        fh.seek(m.end())
        rest = b""
        tail = b""
        while True:
            buf = fh.read(_CHUNK_BYTES)
            if not buf:
                tail = rest
                break
            buf = rest + buf
            cut = buf.rfind(b",")
            if cut < 0:
                rest = buf
                continue
            values = _parse_numbers(buf[:cut])
            rest = buf[cut + 1 :]
            if pos + values.size > expected:
                raise StateFileError(f"more than {expected // 2} amplitudes for n={n}")
            out[pos : pos + values.size] = values
            pos += values.size
        tail = tail.rstrip()
        if not tail.endswith(b"]}"):
            raise StateFileError("state file is truncated or has trailing content")
        values = _parse_numbers(tail[:-1])
        if pos + values.size != expected:
            raise StateFileError(
                f"expected {expected // 2} amplitudes for n={n}, got {(pos + values.size) / 2:g}"
            )
        out[pos:] = values
    return _validated(n, out)


def read_state(path) -> StateVector:
    """Read a state file; raises :class:`StateFileError` on bad content."""
    if os.path.getsize(path) > FAST_PATH_BYTES:
        try:
            return _read_fast(path)
        except ValueError as exc:
            if isinstance(exc, StateFileError):
                raise
            raise StateFileError(f"cannot parse {path}: {exc}") from None
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON in {path}: {exc}") from None
    return state_from_json(obj)
