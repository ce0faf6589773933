"""Chirp-domain denoising: a discrete linear chirp transform, an iterative
per-frame chirp extractor, a fractional-Fourier baseline and a Monte-Carlo
benchmark harness."""

from .dfrft import FrftFilterConfig, dfrft, dfrft_filter
from .dlct import DlctParams, DlctSpectrum, dlct_forward, dlct_inverse, dlct_slice
from .harness import NoiseSpec, SweepConfig, add_awgn, mae, run_sweep, synth_chirp
from .tvfilter import FilterConfig, StopReason, denoise, denoise_frame

__version__ = "0.1.0"

__all__ = [
    "DlctParams",
    "DlctSpectrum",
    "FilterConfig",
    "FrftFilterConfig",
    "NoiseSpec",
    "StopReason",
    "SweepConfig",
    "add_awgn",
    "denoise",
    "denoise_frame",
    "dfrft",
    "dfrft_filter",
    "dlct_forward",
    "dlct_inverse",
    "dlct_slice",
    "mae",
    "run_sweep",
    "synth_chirp",
]
