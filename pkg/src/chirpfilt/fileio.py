"""WAV, CSV and JSON readers/writers.

All numeric text is written with 17 significant digits, which round-trips
binary64 exactly, and nothing time-dependent goes into data files.
"""

from __future__ import annotations

import csv
import json
import wave
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from .errors import IoFailure, ParseFailure, UnsupportedFormat

__all__ = [
    "WavData",
    "read_wav",
    "write_wav",
    "read_signal_csv",
    "write_signal_csv",
    "read_signal",
    "write_transform_csv",
    "write_sweep_csv",
    "write_report_json",
]

_FMT = "{:.17g}"
PCM16_SCALE = 32768.0


class WavData(NamedTuple):
    samples: np.ndarray  # float64, mono, in [-1, 1)
    sample_rate: int


def read_wav(path) -> WavData:
    """Read a 16-bit linear-PCM WAV file, averaging channels to mono.

    Raises:
        UnsupportedFormat: non-PCM encodings or sample widths other than 16 bit.
        IoFailure: the file cannot be opened or read.
    """
    try:
        with wave.open(str(path), "rb") as f:
            width = f.getsampwidth()
            channels = f.getnchannels()
            rate = f.getframerate()
            raw = f.readframes(f.getnframes())
    except wave.Error as exc:
        raise UnsupportedFormat(f"{path}: not a linear-PCM WAV ({exc})") from exc
    except EOFError as exc:
        raise UnsupportedFormat(f"{path}: truncated WAV header") from exc
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    if width != 2:
        raise UnsupportedFormat(f"{path}: {8 * width}-bit samples; only 16-bit PCM is supported")
    data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / PCM16_SCALE
    data = data[: data.size - data.size % channels].reshape(-1, channels)
    return WavData(data.mean(axis=1), rate)


def write_wav(path, samples, sample_rate: int) -> None:
    """Write mono 16-bit PCM; values are clipped to the representable range."""
    x = np.asarray(samples)
    if np.iscomplexobj(x):
        if np.max(np.abs(x.imag), initial=0.0) >= 1e-9:
            raise ValueError("refusing to write a complex signal as WAV (imaginary part >= 1e-9)")
        x = x.real
    pcm = np.clip(np.round(x * PCM16_SCALE), -32768, 32767).astype("<i2")
    try:
        with wave.open(str(path), "wb") as f:
            f.setnchannels(1)
            f.setsampwidth(2)
            f.setframerate(int(sample_rate))
            f.writeframes(pcm.tobytes())
    except (OSError, wave.Error) as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def write_signal_csv(x, path) -> None:
    x = np.asarray(x, dtype=np.complex128)
    try:
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["n", "re", "im"])
            for i, v in enumerate(x):
                w.writerow([i, _FMT.format(v.real), _FMT.format(v.imag)])
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def read_signal_csv(path) -> np.ndarray:
    """Inverse of :func:`write_signal_csv`.

    A header-only file yields an empty array; rejecting it is left to the
    consumer.
    """
    try:
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
    if not rows:
        raise ParseFailure(f"{path}: empty file, expected header 'n,re,im'", row=0)
    if [h.strip() for h in rows[0]] != ["n", "re", "im"]:
        raise ParseFailure(f"{path}: row 1: expected header 'n,re,im', got {rows[0]!r}", row=1)
    out = np.empty(len(rows) - 1, dtype=np.complex128)
    for i, row in enumerate(rows[1:]):
        lineno = i + 2
        if len(row) != 3:
            raise ParseFailure(f"{path}: row {lineno}: expected 3 fields, got {len(row)}", row=lineno)
        try:
            n, re_, im = int(row[0]), float(row[1]), float(row[2])
        except ValueError as exc:
            raise ParseFailure(f"{path}: row {lineno}: {exc}", row=lineno) from exc
        if n != i:
            raise ParseFailure(f"{path}: row {lineno}: sample index {n}, expected {i}", row=lineno)
        out[i] = complex(re_, im)
    return out


def read_signal(path) -> tuple[np.ndarray, Optional[int]]:
    """Load a WAV (real samples) or signal CSV (complex, or real if every
    imaginary part is zero).  Returns the samples and the sample rate if known."""
    if Path(path).suffix.lower() == ".wav":
        data = read_wav(path)
        return data.samples, data.sample_rate
    x = read_signal_csv(path)
    if x.size and not np.any(x.imag):
        x = x.real.copy()
    return x, None


def write_transform_csv(grid_energy: np.ndarray, m_values: np.ndarray, path) -> None:
    """``k,m,energy`` rows, ascending signed ``m`` then ``k``."""
    order = np.argsort(m_values, kind="stable")
    try:
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["k", "m", "energy"])
            for col in order:
                m = int(m_values[col])
                for k, e in enumerate(grid_energy[:, col]):
                    w.writerow([k, m, _FMT.format(e)])
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc


def write_sweep_csv(result, fh) -> None:
    """Write a SweepResult to an open text stream."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["snr_db", "method", "mean_mae", "std_mae", "trials"])
    for r in result.rows:
        w.writerow([_FMT.format(r.snr_db), r.method.value, _FMT.format(r.mean_mae),
                    _FMT.format(r.std_mae), r.trials])


def write_report_json(report: dict, path) -> None:
    try:
        with open(path, "w") as f:
            json.dump(report, f, indent=2, allow_nan=False)
            f.write("\n")
    except OSError as exc:
        raise IoFailure(f"{path}: {exc}") from exc
