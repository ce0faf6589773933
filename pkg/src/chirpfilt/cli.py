"""Command-line front end.

    chirpfilt synth     --output chirp.csv
    chirpfilt transform --input chirp.csv --output grid.csv
    chirpfilt denoise   --method dlct --snr 0 --seed 7 --input chirp.csv
    chirpfilt sweep     --snr-range -10:40:5 --trials 50 --output sweep.csv
    chirpfilt compare   --input chirp.csv --snr 0

Exit status: 0 success, 1 invalid arguments or parameters, 2 file errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .dfrft import FrftFilterConfig, dfrft_filter
from .dlct import DlctParams, as_signal, dlct_forward
from .errors import IoFailure
from .fileio import (
    read_signal,
    write_report_json,
    write_signal_csv,
    write_sweep_csv,
    write_transform_csv,
    write_wav,
)
from .harness import (
    Method,
    NoiseSpec,
    SweepConfig,
    add_awgn,
    mae,
    reference_chirp,
    run_method,
    run_sweep,
    synth_chirp,
)
from .tvfilter import FilterConfig, denoise

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

AUDIO_FRAME = 512
DEFAULT_FRAME = 256


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--input", help="signal file (.csv with n,re,im or 16-bit PCM .wav)")
    g.add_argument("--output", help="output file (stdout for sweep if omitted)")
    g.add_argument("--reference", help="clean reference signal for MAE reporting")
    g.add_argument("--report", help="JSON report path (default: <output>.json)")
    g.add_argument("--tag", help="free-form run label copied into reports")
    g.add_argument("--method", default="dlct", help="denoiser: dlct or frft")
    g.add_argument("--methods", default="dlct,frft", help="comma list for sweep")
    g.add_argument("--c-res", type=float, help="chirp-rate resolution c (default 1/L)")
    g.add_argument("--lbins", type=int, default=80, help="chirp bins L (even)")
    g.add_argument("--frame", type=int, help="frame length (256; 512 for WAV input)")
    g.add_argument("--hop", type=int, help="hop (default frame/2)")
    g.add_argument("--pth", type=float, default=0.05, help="residual-energy stop ratio")
    g.add_argument("--qmax", type=int, default=10, help="components per frame")
    g.add_argument("--half-width", type=int, help="mask half-width (dlct 2, frft 4)")
    g.add_argument("--min-dominance", type=float, default=15.0)
    g.add_argument("--frft-grid", default="0.01:1.99:0.01", help="a_min:a_max:a_step")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trials", type=int, default=50)
    g.add_argument("--snr", type=float, help="add AWGN at this SNR (dB) to the input")
    g.add_argument("--snr-range", default="-10:40:5", help="min:max:step in dB")
    g.add_argument("--samples", type=int, default=256, help="synth length")
    g.add_argument("--alpha", type=float, default=0.1, help="synth quadratic coefficient")
    g.add_argument("--f0", type=float, default=10.0, help="synth linear coefficient")
    g.add_argument("--scale", type=float, default=256.0, help="synth phase scale")
    g.add_argument("--rate", type=int, default=8000, help="sample rate for WAV output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="chirpfilt", description="DLCT time-varying chirp filtering")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("synth", parents=[common], help="write a synthetic chirp")
    sub.add_parser("transform", parents=[common], help="write the |X(k,m)|^2 grid")
    sub.add_parser("denoise", parents=[common], help="denoise one signal")
    sub.add_parser("sweep", parents=[common], help="Monte-Carlo MAE-vs-SNR sweep")
    sub.add_parser("compare", parents=[common], help="both methods on one noisy input")
    return parser


def _fix_negative_values(argv):
    # "--snr-range -10:40:5" would otherwise be read as an option.
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--snr-range", "--snr", "--frft-grid"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def _triple(text: str, flag: str) -> tuple[float, float, float]:
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ValueError(f"{flag}: expected min:max:step, got {text!r}") from None
    if not step > 0 or not hi >= lo:
        raise ValueError(f"{flag}: need step > 0 and max >= min, got {text!r}")
    return lo, hi, step


def snr_points(text: str) -> list[float]:
    lo, hi, step = _triple(text, "--snr-range")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [float(np.round(lo + i * step, 12)) for i in range(count)]


def _check(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


def _validate(args):
    _check(args.lbins >= 2 and args.lbins % 2 == 0, f"--lbins must be an even integer >= 2, got {args.lbins}")
    _check(args.c_res is None or args.c_res > 0, f"--c-res must be positive, got {args.c_res}")
    _check(args.frame is None or args.frame >= 1, f"--frame must be positive, got {args.frame}")
    _check(args.hop is None or args.hop >= 1, f"--hop must be positive, got {args.hop}")
    _check(0 < args.pth <= 1, f"--pth must lie in (0, 1], got {args.pth}")
    _check(args.qmax >= 1, f"--qmax must be >= 1, got {args.qmax}")
    _check(args.half_width is None or args.half_width >= 0,
           f"--half-width must be >= 0, got {args.half_width}")
    _check(args.min_dominance > 0, f"--min-dominance must be positive, got {args.min_dominance}")
    _check(args.seed >= 0, f"--seed must be >= 0, got {args.seed}")
    _check(args.trials >= 1, f"--trials must be >= 1, got {args.trials}")
    _check(args.samples >= 1, f"--samples must be >= 1, got {args.samples}")
    _check(args.rate >= 1, f"--rate must be positive, got {args.rate}")
    _check(args.snr is None or np.isfinite(args.snr), f"--snr must be finite, got {args.snr}")
    _check(args.method in ("dlct", "frft"), f"--method must be dlct or frft, got {args.method!r}")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    _check(bool(methods), "--methods must name at least one of dlct, frft")
    for m in methods:
        _check(m in ("dlct", "frft"), f"--methods: unknown method {m!r}")
    _check(len(set(methods)) == len(methods), "--methods: duplicate method")
    args.methods = methods
    _triple(args.frft_grid, "--frft-grid")
    args.snr_points = snr_points(args.snr_range)


def _load(path, flag: str):
    x, rate = read_signal(path)
    if x.size == 0:
        raise ValueError(f"{flag}: {path} holds no samples")
    as_signal(x, flag)
    return x, rate


def filter_config(args, audio: bool = False) -> FilterConfig:
    """DLCT filter settings from flags; ``audio`` selects the longer default frame."""
    frame = args.frame or (AUDIO_FRAME if audio else DEFAULT_FRAME)
    hop = args.hop or frame // 2
    _check(hop <= frame, f"--hop {hop} exceeds frame length {frame}")
    hw = 2 if args.half_width is None else args.half_width
    _check(2 * hw < frame, f"--half-width {hw} too wide for frame {frame}")
    c = args.c_res if args.c_res is not None else 1.0 / args.lbins
    return FilterConfig(dlct=DlctParams(c, frame, args.lbins), q_max=args.qmax, p_th=args.pth,
                        half_width=hw, min_dominance=args.min_dominance,
                        frame_len=frame, hop=hop)


def frft_config(args) -> FrftFilterConfig:
    lo, hi, step = _triple(args.frft_grid, "--frft-grid")
    _check(lo < hi, f"--frft-grid: need a_min < a_max, got {args.frft_grid!r}")
    hw = 4 if args.half_width is None else args.half_width
    return FrftFilterConfig(lo, hi, step, hw)


def _cmd_synth(args, out) -> None:
    x = synth_chirp(args.samples, args.alpha, args.f0, args.scale)
    path = args.output or "chirp.csv"
    if Path(path).suffix.lower() == ".wav":
        write_wav(path, 0.5 * x.real, args.rate)
    else:
        write_signal_csv(x, path)


def _cmd_transform(args, out) -> None:
    x = _load(args.input, "--input")[0] if args.input else reference_chirp()
    c = args.c_res if args.c_res is not None else 1.0 / args.lbins
    spec = dlct_forward(x, DlctParams(c, len(x), args.lbins))
    write_transform_csv(spec.energy(), spec.params.m_values, args.output or "transform.csv")


def _noisy_and_reference(args):
    _check(args.input is not None, "--input is required")
    x, rate = _load(args.input, "--input")
    clean = None
    if args.snr is not None:
        clean = x
        _check(bool(np.any(x)), f"--snr: {args.input} is all zeros, SNR is undefined")
        x = add_awgn(x, NoiseSpec(args.snr, args.seed))
        if np.isrealobj(clean):
            x = x.real
    if args.reference:
        clean, _ = _load(args.reference, "--reference")
        _check(clean.size == x.size, f"--reference length {clean.size} != input length {x.size}")
    return x, clean, rate


def _cmd_denoise(args, out) -> None:
    noisy, clean, rate = _noisy_and_reference(args)
    real = np.isrealobj(noisy)
    cfg = replace(filter_config(args, audio=rate is not None), conjugate_pairs=real)

    report = {"method": args.method}
    if args.method == "dlct":
        est, rep = denoise(noisy, cfg)
        report["params"] = cfg.as_dict()
        report["frames"] = rep.as_dict()["frames"]
    else:
        fcfg = frft_config(args)
        est = dfrft_filter(noisy, fcfg, framing=cfg)
        report["params"] = {**fcfg.as_dict(), "frame_len": cfg.frame_len, "hop": cfg.hop}
        report["frames"] = []
    if real and np.iscomplexobj(est):
        _check(np.max(np.abs(est.imag), initial=0.0) < 1e-9,
               "real input produced a complex estimate")
        est = est.real
    report["mae"] = None if clean is None else mae(clean, est)
    if clean is not None:
        report["noisy_mae"] = mae(clean, noisy)
    if args.snr is not None:
        report["snr_db"] = args.snr
        report["seed"] = args.seed
    if args.tag:
        report["tag"] = args.tag

    src = Path(args.input)
    path = Path(args.output) if args.output else src.with_name(src.stem + ".denoised" + src.suffix)
    if path.suffix.lower() == ".wav":
        write_wav(path, est, rate or args.rate)
    else:
        write_signal_csv(est, path)
    write_report_json(report, args.report or f"{path}.json")
    if report["mae"] is not None:
        print(f"mae {report['mae']:.6g} (noisy {report['noisy_mae']:.6g})", file=out)


def _sweep_config(args, audio: bool) -> SweepConfig:
    return SweepConfig(snr_points=args.snr_points, trials=args.trials,
                       methods=args.methods, base_seed=args.seed,
                       dlct=filter_config(args, audio=audio), frft=frft_config(args))


def _cmd_sweep(args, out) -> None:
    if args.input:
        clean, rate = _load(args.input, "--input")
        audio = rate is not None
    else:
        clean, audio = reference_chirp(), False
    result = run_sweep(clean, _sweep_config(args, audio))
    if args.output:
        try:
            with open(args.output, "w", newline="") as fh:
                write_sweep_csv(result, fh)
        except OSError as exc:
            raise IoFailure(f"{args.output}: {exc}") from exc
    else:
        write_sweep_csv(result, out)


def _cmd_compare(args, out) -> None:
    if args.input:
        clean, rate = _load(args.input, "--input")
        audio = rate is not None
    else:
        clean, audio = reference_chirp(), False
    snr = 0.0 if args.snr is None else args.snr
    cfg = _sweep_config(args, audio)
    noisy = add_awgn(clean, NoiseSpec(snr, args.seed))
    if np.isrealobj(clean):
        noisy = noisy.real
    rows = [("noisy", mae(clean, noisy))]
    for m in cfg.methods:
        rows.append((m.value, mae(clean, run_method(m, noisy, cfg))))
    print(f"snr_db {snr:g}  seed {args.seed}", file=out)
    print(f"{'method':<8} {'mae':>12}", file=out)
    for name, val in rows:
        print(f"{name:<8} {val:>12.6g}", file=out)


COMMANDS = {
    "synth": _cmd_synth,
    "transform": _cmd_transform,
    "denoise": _cmd_denoise,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def cli_main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_fix_negative_values(argv))
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    try:
        _validate(args)
        COMMANDS[args.command](args, out)
    except OSError as exc:
        print(f"chirpfilt {args.command}: {exc}", file=err)
        return EXIT_IO
    except ValueError as exc:
        print(f"chirpfilt {args.command}: {exc}", file=err)
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(cli_main())
