"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 processing error.
Every tabular emitter writes RFC-4180-style CSV with a header row; the
schema of each subcommand is given in its --help text.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional

import numpy as np

from . import metrics, stats
from .audio_io import AudioBuffer, AudioIOError, mix_at_snr, read_wav, write_wav
from .config import EnhanceConfig, load_config
from .enhancer import Enhancer
from .framing import split_frames
from .pwpt import analyze
from .shrink import apply_shrink
from .teager import te_operator
from .threshold import lambda_erlang, lambda_gaussian, lambda_student

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PROCESSING = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this tool reserves 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    """Bad flag combinations detected after parsing."""


def _load_cfg(args) -> EnhanceConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return EnhanceConfig()


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def _cmd_enhance(args) -> int:
    if len(args.infile) != len(args.outfile):
        raise UsageError("each --in needs a matching --out")
    cfg = _load_cfg(args)
    if args.dump_config:
        cfg.dump(args.dump_config)
    oracle = read_wav(args.noise_oracle) if args.noise_oracle else None
    for in_path, out_path in zip(args.infile, args.outfile):
        enh = Enhancer(cfg)
        if oracle is not None:
            enh.use_noise_oracle(oracle)
        noisy = read_wav(in_path)
        write_wav(enh.enhance_stream(noisy), out_path)
    return EXIT_OK


def _cmd_mix(args) -> int:
    clean = read_wav(args.clean)
    noise = read_wav(args.noise)
    write_wav(mix_at_snr(clean, noise, args.snr_db), args.out)
    return EXIT_OK


def _global_snr_db(clean: AudioBuffer, noisy: AudioBuffer) -> float:
    residual = noisy.samples[: len(clean.samples)] - clean.samples
    p_res = float(np.mean(residual**2))
    if p_res == 0.0:
        return float("inf")
    return 10.0 * np.log10(float(np.mean(clean.samples**2)) / p_res)


def _cmd_eval(args) -> int:
    clean = read_wav(args.clean)
    noisy = read_wav(args.noisy)
    enhanced = read_wav(args.enhanced)
    report = metrics.evaluate(clean, noisy, enhanced)
    out = _writer(sys.stdout)
    out.writerow(["file", "snr_db", "snrseg_improvement", "wss"])
    out.writerow([
        args.enhanced,
        f"{_global_snr_db(clean, noisy):.4f}",
        f"{report.snrseg_improvement_db:.4f}",
        f"{report.wss:.4f}",
    ])
    return EXIT_OK


def _cmd_fit(args) -> int:
    cfg = _load_cfg(args)
    buf = read_wav(args.infile)
    enh = Enhancer(cfg)  # reuse its tree/filters construction
    stack = split_frames(buf, cfg.frame_len)
    pooled: List[List[float]] = [[] for _ in range(cfg.n_subbands)]
    for frame in stack.frames:
        te = te_operator(analyze(frame, enh.tree, enh.filters))
        for k, t in enumerate(te.values):
            pooled[k].extend(t.tolist())
    out = _writer(sys.stdout)
    out.writerow(["subband", "aic_erlang2", "aic_gaussian", "aic_studentt"])
    for k, values in enumerate(pooled):
        data = np.asarray(values)
        _, aic_e = stats.aic_index(data, stats.ERLANG2)
        _, aic_g = stats.aic_index(data, stats.GAUSSIAN)
        _, aic_t = stats.aic_index(data, stats.STUDENT_T)
        out.writerow([k, f"{aic_e:.4f}", f"{aic_g:.4f}", f"{aic_t:.4f}"])
    return EXIT_OK


def _cmd_threshold_curve(args) -> int:
    out = _writer(sys.stdout)
    out.writerow(["snr_db", "lambda_erlang", "lambda_student", "lambda_gaussian"])
    for snr_db in np.arange(-15.0, 15.0 + 0.5, 1.0):
        gamma = 10.0 ** (snr_db / 10.0)
        sigma_n2 = 1.0 / gamma  # unit signal power
        out.writerow([
            f"{snr_db:g}",
            f"{lambda_erlang(sigma_n2, gamma):.12g}",
            f"{lambda_student(sigma_n2, gamma, 0.5):.12g}",
            f"{lambda_gaussian(sigma_n2, gamma):.12g}",
        ])
    return EXIT_OK


def _cmd_shrink_curve(args) -> int:
    lam1, lam2, mu = 1.0, 2.0, 0.9
    out = _writer(sys.stdout)
    out.writerow(["y", "semisoft", "mu_law", "custom_alpha_0.5"])
    # %.17g round-trips float64 exactly, so rows can be checked bit-for-bit
    for y in np.linspace(-3.0 * lam1, 3.0 * lam1, 601):
        out.writerow([
            f"{y:.17g}",
            f"{apply_shrink(y, lam1, lam2, 0.0, mu):.17g}",
            f"{apply_shrink(y, lam1, lam2, 1.0, mu):.17g}",
            f"{apply_shrink(y, lam1, lam2, 0.5, mu):.17g}",
        ])
    return EXIT_OK


def _cmd_spectrogram(args) -> int:
    buf = read_wav(args.infile)
    n_fft = 256
    hop = 128
    window = np.hanning(n_fft)
    x = buf.samples
    n_frames = max((x.size - n_fft) // hop + 1, 0)
    if n_frames == 0:
        raise ValueError("input shorter than one 256-sample frame")
    freqs = np.fft.rfftfreq(n_fft, d=1.0 / buf.sample_rate_hz)
    with open(args.out, "w", newline="") as fh:
        out = _writer(fh)
        out.writerow(["time_s"] + [f"hz_{f:g}" for f in freqs])
        for i in range(n_frames):
            start = i * hop
            mag = np.abs(np.fft.rfft(x[start : start + n_fft] * window))
            out.writerow([f"{start / buf.sample_rate_hz:.6f}"] + [f"{v:.8e}" for v in mag])
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="pwpshrink", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser(
        "enhance",
        help="denoise WAV files",
        description="Enhance one or more noisy WAV files (PCM16 mono output).",
    )
    p.add_argument("--in", dest="infile", action="append", required=True, metavar="WAV")
    p.add_argument("--out", dest="outfile", action="append", required=True, metavar="WAV")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--noise-oracle", metavar="WAV", help="noise-only recording pinning the tracker")
    p.add_argument("--dump-config", metavar="PATH", help="write the effective config and continue")
    p.set_defaults(func=_cmd_enhance)

    p = sub.add_parser(
        "mix",
        help="mix clean speech with noise at a target SNR",
        description="Write clean + g*noise with g chosen so the mixture SNR is --snr-db.",
    )
    p.add_argument("--clean", required=True)
    p.add_argument("--noise", required=True)
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mix)

    p = sub.add_parser(
        "eval",
        help="objective quality metrics",
        description="CSV to stdout: file,snr_db,snrseg_improvement,wss",
    )
    p.add_argument("--clean", required=True)
    p.add_argument("--noisy", required=True)
    p.add_argument("--enhanced", required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser(
        "fit",
        help="per-subband model-fit scores",
        description="CSV to stdout: subband,aic_erlang2,aic_gaussian,aic_studentt "
        "(AIC of each candidate density fitted to the pooled Teager-domain values).",
    )
    p.add_argument("--in", dest="infile", required=True, metavar="WAV")
    p.add_argument("--config", help="flat key = value config file")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser(
        "threshold-curve",
        help="threshold-vs-SNR comparison data",
        description="CSV to stdout: snr_db,lambda_erlang,lambda_student,lambda_gaussian "
        "for unit signal power over SNR in [-15, 15] dB. Note that under unit signal "
        "power the Erlang-2 value grows with SNR while the Gaussian value falls.",
    )
    p.set_defaults(func=_cmd_threshold_curve)

    p = sub.add_parser(
        "shrink-curve",
        help="input/output curves of the shrinkage rule",
        description="CSV to stdout: y,semisoft,mu_law,custom_alpha_0.5 over "
        "y in [-3, 3] with lambda1 = 1, lambda2 = 2, mu = 0.9.",
    )
    p.set_defaults(func=_cmd_shrink_curve)

    p = sub.add_parser(
        "spectrogram",
        help="magnitude STFT as CSV",
        description="CSV to --out: time_s,hz_0,... magnitude STFT rows "
        "(256-point FFT, 50% overlap, Hanning window).",
    )
    p.add_argument("--in", dest="infile", required=True, metavar="WAV")
    p.add_argument("--out", required=True, metavar="CSV")
    p.set_defaults(func=_cmd_spectrogram)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pwpshrink: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, PermissionError, IsADirectoryError, AudioIOError) as exc:
        print(f"pwpshrink: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"pwpshrink: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001 - map everything else to one exit class
        print(f"pwpshrink: error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING


if __name__ == "__main__":
    sys.exit(main())
