"""Discrete linear chirp transform.

The transform maps a length-``N`` sequence onto an ``N x L`` grid indexed by a
frequency bin ``k`` and a signed chirp-rate bin ``m``::

    X(k, m) = sum_n x(n) exp(-j 2pi/N (c m n^2 + k n))

Every chirp-rate column is the DFT of ``x`` demodulated by a quadratic phase,
so the full grid costs ``L`` FFTs of length ``N``.  Columns are stored in the
FFT-like wraparound order ``m = 0, 1, ..., L/2-1, -L/2, ..., -1``; the public
API only ever speaks signed ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, InvalidParams, LengthMismatch

__all__ = [
    "DlctParams",
    "DlctSpectrum",
    "as_signal",
    "chirp_phase",
    "dlct_forward",
    "dlct_inverse",
    "dlct_slice",
    "ongrid_chirp",
]


def as_signal(x, name: str = "signal") -> np.ndarray:
    """Coerce ``x`` to a finite, non-empty, 1-D complex128 array (copy)."""
    arr = np.array(x, dtype=np.complex128, copy=True)
    if arr.ndim != 1:
        raise InvalidParams(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidParams(f"{name} must contain at least one sample")
    if not np.all(np.isfinite(arr)):
        raise InvalidParams(f"{name} contains NaN or Inf samples")
    return arr


@dataclass(frozen=True)
class DlctParams:
    """Grid geometry: chirp resolution ``c``, ``N`` frequency bins, ``L`` chirp bins."""

    c: float
    n_freq: int
    n_chirp: int

    def __post_init__(self):
        if not np.isfinite(self.c) or self.c <= 0:
            raise InvalidParams(f"chirp resolution c must be positive, got {self.c}")
        if int(self.n_freq) != self.n_freq or self.n_freq < 1:
            raise InvalidParams(f"n_freq must be a positive integer, got {self.n_freq}")
        if int(self.n_chirp) != self.n_chirp or self.n_chirp < 2 or self.n_chirp % 2:
            raise InvalidParams(f"n_chirp must be an even integer >= 2, got {self.n_chirp}")

    @classmethod
    def default(cls, n_freq: int, n_chirp: int = 80) -> "DlctParams":
        """Parameters with ``c = 1/L``, so ``m = L/2`` sweeps all ``N`` bins in one frame."""
        return cls(c=1.0 / n_chirp, n_freq=n_freq, n_chirp=n_chirp)

    @property
    def m_values(self) -> np.ndarray:
        """Signed chirp bins in storage order."""
        return np.fft.fftfreq(self.n_chirp, 1.0 / self.n_chirp).astype(np.int64)

    @property
    def m_min(self) -> int:
        return -(self.n_chirp // 2)

    @property
    def m_max(self) -> int:
        return self.n_chirp // 2 - 1

    def column(self, m: int) -> int:
        """Storage column of signed chirp bin ``m``."""
        if int(m) != m or not self.m_min <= m <= self.m_max:
            raise IndexOutOfRange(
                f"chirp bin m={m} outside [{self.m_min}, {self.m_max}]"
            )
        return int(m) % self.n_chirp

    def beta(self, m: int) -> float:
        return self.c * m


def chirp_phase(p: DlctParams, m) -> np.ndarray:
    """Quadratic phase ``2pi c m n^2 / N`` for n in [0, N); broadcasts over ``m``."""
    n = np.arange(p.n_freq, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    return 2.0 * np.pi * p.c * np.multiply.outer(m, n * n) / p.n_freq


def ongrid_chirp(p: DlctParams, k: int, m: int, amplitude: complex = 1.0) -> np.ndarray:
    """The chirp ``a exp(j 2pi/N (c m n^2 + k n))`` whose DLCT is a single coefficient."""
    n = np.arange(p.n_freq, dtype=np.float64)
    phase = chirp_phase(p, m) + 2.0 * np.pi * k * n / p.n_freq
    return amplitude * np.exp(1j * phase)


@dataclass(frozen=True, eq=False)
class DlctSpectrum:
    grid: np.ndarray
    params: DlctParams

    def __post_init__(self):
        g = self.grid
        if not isinstance(g, np.ndarray) or g.ndim != 2:
            raise InvalidParams("spectrum grid must be a 2-D array")
        if g.shape != (self.params.n_freq, self.params.n_chirp):
            raise InvalidParams(
                f"grid shape {g.shape} does not match params "
                f"({self.params.n_freq}, {self.params.n_chirp})"
            )

    def slice(self, m: int) -> np.ndarray:
        return dlct_slice(self, m)

    def energy(self) -> np.ndarray:
        """``|X(k, m)|^2`` in storage order."""
        return self.grid.real**2 + self.grid.imag**2

    def signed(self) -> tuple[np.ndarray, np.ndarray]:
        """Grid with columns reordered to ascending signed ``m``, and those ``m``."""
        order = np.argsort(self.params.m_values, kind="stable")
        return self.grid[:, order], self.params.m_values[order]


def dlct_forward(x, p: DlctParams) -> DlctSpectrum:
    """Forward transform, one FFT per chirp-rate column.

    Raises:
        LengthMismatch: if ``len(x) != p.n_freq``.
    """
    x = as_signal(x)
    if x.size != p.n_freq:
        raise LengthMismatch(f"signal length {x.size} != n_freq {p.n_freq}")
    demod = np.exp(-1j * chirp_phase(p, p.m_values))  # (L, N)
    grid = np.fft.fft(demod * x[None, :], axis=1).T
    return DlctSpectrum(np.ascontiguousarray(grid), p)


def dlct_inverse(S: DlctSpectrum) -> np.ndarray:
    """Inverse transform: per-column inverse DFT, remodulation, average over ``L``."""
    if not isinstance(S, DlctSpectrum):
        raise InvalidParams("expected a DlctSpectrum")
    p = S.params
    if not np.all(np.isfinite(S.grid)):
        raise InvalidParams("spectrum contains NaN or Inf entries")
    # np.fft.ifft already carries the 1/N factor.
    slices = np.fft.ifft(S.grid.T, axis=1)
    remod = np.exp(1j * chirp_phase(p, p.m_values))
    return (remod * slices).sum(axis=0) / p.n_chirp


def dlct_slice(S: DlctSpectrum, m: int) -> np.ndarray:
    """Copy of the column ``X(., m)``."""
    return S.grid[:, S.params.column(m)].copy()
