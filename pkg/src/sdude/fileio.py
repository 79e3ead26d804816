"""On-disk formats: matrices, symbol sequences, PBM bitmaps, JSON specs.

Matrix files are plain text: a first line "rows cols" followed by row-major
whitespace-separated decimals.  Sequences are stored either raw (one symbol
per byte, alphabets up to 256) or as whitespace-separated integers.  PBM
covers both the ASCII (P1) and packed (P4) variants with 0 = white and
1 = black.  All writes go through a temporary file and an atomic rename.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .contexts import ContextPartition
from .core import (
    ChannelModel,
    LossMatrix,
    SymbolSequence,
    bsc_channel,
    build_channel,
    build_loss,
    hamming_loss,
    identity_channel,
)
from .errors import ValidationError
from .sources import IIDComponent, MarkovComponent, PiecewiseSourceSpec
from .switching import SwitchingSchedule


def atomic_write_bytes(path, data: bytes) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as handle:
        tokens = handle.read().split()
    if len(tokens) < 2:
        raise ValidationError(f"matrix file {path} is missing its 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        values = [float(tok) for tok in tokens[2:]]
    except ValueError as exc:
        raise ValidationError(f"matrix file {path} is not numeric: {exc}") from None
    if rows < 1 or cols < 1 or len(values) != rows * cols:
        raise ValidationError(
            f"matrix file {path} declares {rows}x{cols} but holds {len(values)} values"
        )
    return np.array(values).reshape(rows, cols)


def save_matrix(path, matrix) -> None:
    matrix = np.asarray(matrix, dtype=np.float64)
    lines = [f"{matrix.shape[0]} {matrix.shape[1]}"]
    lines += [" ".join(repr(float(v)) for v in row) for row in matrix]
    atomic_write_text(path, "\n".join(lines) + "\n")


def channel_from_spec(spec: str, size: int | None = None) -> ChannelModel:
    """Build a channel from "bsc:<delta>", "identity[:<size>]", or a matrix file path."""
    if spec.startswith("bsc:"):
        return bsc_channel(float(spec[4:]))
    if spec == "identity" or spec.startswith("identity:"):
        if ":" in spec:
            size = int(spec.split(":", 1)[1])
        if size is None:
            raise ValidationError("identity channel needs a size (identity:<n>)")
        return identity_channel(size)
    return build_channel(load_matrix(spec))


def loss_from_spec(spec: str, clean_size: int | None = None, recon_size: int | None = None) -> LossMatrix:
    """Build a loss from "hamming[:<size>]" or a matrix file path."""
    if spec == "hamming" or spec.startswith("hamming:"):
        if ":" in spec:
            clean_size = int(spec.split(":", 1)[1])
        if clean_size is None:
            raise ValidationError("hamming loss needs a size (hamming:<n>)")
        return hamming_loss(clean_size, recon_size)
    return build_loss(load_matrix(spec))


def read_raw_sequence(path, alphabet_size: int) -> SymbolSequence:
    with open(path, "rb") as handle:
        data = np.frombuffer(handle.read(), dtype=np.uint8)
    return SymbolSequence(data.astype(np.int64), alphabet_size)


def write_raw_sequence(path, seq: SymbolSequence) -> None:
    if seq.alphabet_size > 256:
        raise ValidationError("raw format supports alphabets up to 256 symbols")
    atomic_write_bytes(path, seq.symbols.astype(np.uint8).tobytes())


def read_text_sequence(path, alphabet_size: int) -> SymbolSequence:
    with open(path, "r", encoding="utf-8") as handle:
        tokens = handle.read().split()
    try:
        values = np.array([int(tok) for tok in tokens], dtype=np.int64)
    except ValueError as exc:
        raise ValidationError(f"sequence file {path} is not integer text: {exc}") from None
    return SymbolSequence(values, alphabet_size)


def write_text_sequence(path, seq: SymbolSequence) -> None:
    atomic_write_text(path, " ".join(str(int(v)) for v in seq.symbols) + "\n")


def _pbm_header_tokens(data: bytes):
    """Yield header tokens, skipping '#' comments; return (tokens, body offset)."""
    tokens = []
    i = 0
    while len(tokens) < 3:
        if i >= len(data):
            raise ValidationError("truncated PBM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    return tokens, i


def read_pbm(path) -> np.ndarray:
    """Read a P1 or P4 bitmap as a (height, width) array of 0/1 (1 = black)."""
    with open(path, "rb") as handle:
        data = handle.read()
    tokens, offset = _pbm_header_tokens(data)
    magic = tokens[0]
    try:
        width, height = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ValidationError(f"bad PBM dimensions in {path}") from None
    if width < 1 or height < 1:
        raise ValidationError(f"bad PBM dimensions in {path}")
    if magic == b"P1":
        bits = [c - 48 for c in data[offset:] if c in (48, 49)]
        if len(bits) < width * height:
            raise ValidationError(f"PBM {path} has too few pixels")
        return np.array(bits[: width * height], dtype=np.int64).reshape(height, width)
    if magic == b"P4":
        row_bytes = (width + 7) // 8
        body = data[offset + 1 : offset + 1 + row_bytes * height]
        if len(body) < row_bytes * height:
            raise ValidationError(f"PBM {path} has too few pixel bytes")
        rows = np.frombuffer(body, dtype=np.uint8).reshape(height, row_bytes)
        bits = np.unpackbits(rows, axis=1)[:, :width]
        return bits.astype(np.int64)
    raise ValidationError(f"{path} is not a P1/P4 PBM file")


def write_pbm(path, image: np.ndarray, packed: bool = True) -> None:
    image = np.asarray(image)
    if image.ndim != 2 or image.size == 0:
        raise ValidationError("PBM image must be a nonempty 2-D array")
    if not np.isin(image, (0, 1)).all():
        raise ValidationError("PBM pixels must be 0 or 1")
    height, width = image.shape
    header = f"P4\n{width} {height}\n".encode() if packed else f"P1\n{width} {height}\n".encode()
    if packed:
        body = np.packbits(image.astype(np.uint8), axis=1).tobytes()
        atomic_write_bytes(path, header + body)
    else:
        lines = [" ".join(str(int(v)) for v in row) for row in image]
        atomic_write_bytes(path, header + ("\n".join(lines) + "\n").encode())


def save_source_spec(path, spec: PiecewiseSourceSpec) -> None:
    components = []
    for comp in spec.components:
        if isinstance(comp, IIDComponent):
            components.append({"type": "iid", "probs": comp.probs.tolist()})
        elif isinstance(comp, MarkovComponent):
            components.append({"type": "markov", "transition": comp.transition.tolist()})
        else:
            raise ValidationError(f"unknown component type {type(comp).__name__}")
    payload = {
        "components": components,
        "switch_times": list(spec.switch_times),
        "block_labels": list(spec.block_labels),
        "continuing": spec.continuing,
    }
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_source_spec(path) -> PiecewiseSourceSpec:
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    components = []
    for entry in payload.get("components", []):
        kind = entry.get("type")
        if kind == "iid":
            components.append(IIDComponent(np.asarray(entry["probs"])))
        elif kind == "markov":
            components.append(MarkovComponent(np.asarray(entry["transition"])))
        else:
            raise ValidationError(f"unknown component type {kind!r} in {path}")
    return PiecewiseSourceSpec(
        components=tuple(components),
        switch_times=tuple(payload.get("switch_times", ())),
        block_labels=tuple(payload.get("block_labels", (0,))),
        continuing=bool(payload.get("continuing", False)),
    )


def schedule_to_json(schedule: SwitchingSchedule, partition: ContextPartition) -> dict:
    """Schedule as per-context runs: each run starts at a 1-based position."""
    contexts = []
    for cid, idx in partition._groups():
        assigned = schedule.assignment[idx]
        runs = [{"position": int(idx[0]) + partition.k + 1, "denoiser": int(assigned[0])}]
        for i in range(1, assigned.shape[0]):
            if assigned[i] != assigned[i - 1]:
                runs.append(
                    {"position": int(idx[i]) + partition.k + 1, "denoiser": int(assigned[i])}
                )
        left, right = partition.context_symbols(cid)
        contexts.append(
            {
                "context_id": int(cid),
                "left": list(left),
                "right": list(right),
                "switches": int(schedule.per_context_switches[cid]),
                "runs": runs,
            }
        )
    return {
        "n": schedule.n,
        "k": schedule.k,
        "m": schedule.m,
        "contexts": contexts,
    }
