#!/usr/bin/env python3

import argparse
import sys
from typing import List, NoReturn, Optional, Sequence, Tuple

from pydantic import ValidationError
from rich.console import Console

from arhe_core.errors import ConfigurationError, FormatError
from arhe_core.policy import TIER_NAMES

from .commands import (
    SWEEP_GRIDS,
    cmd_bench,
    cmd_decode,
    cmd_decrypt,
    cmd_encode,
    cmd_encrypt,
    cmd_fixture,
    cmd_keys,
    cmd_metrics,
    cmd_policy,
    cmd_sweep,
    cmd_track,
)
from .config import ArheConfig
from .report import render_quality, render_report, render_sweep
from .sdk import ArhePipeline, parse_box, parse_pair

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class ArheArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; arhe reserves 2 for bad data."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tiles(text: str) -> Tuple[int, int]:
    return parse_pair(text, "x")


def _motion(text: str) -> Tuple[int, int]:
    return parse_pair(text, ",")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _grids(text: str) -> List[Tuple[int, int]]:
    return [parse_pair(item.strip(), "x") for item in text.split(",") if item.strip()]


def _add_verbose(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose output",
        required=False,
        default=False,
    )


def _add_raw_input(
    parser: argparse.ArgumentParser, required: bool, width: int, height: int, frames: int
) -> None:
    parser.add_argument(
        "--input",
        dest="input_path",
        required=required,
        default=None,
        help="Raw planar YUV 4:2:0 (8-bit) input file"
        + ("" if required else "; the synthetic fixture is used when omitted"),
    )
    parser.add_argument(
        "--width", type=int, default=width, help=f"Frame width in pixels, a multiple of 16 (default {width})"
    )
    parser.add_argument(
        "--height", type=int, default=height, help=f"Frame height in pixels, a multiple of 16 (default {height})"
    )
    parser.add_argument(
        "--frames", type=int, default=frames, help=f"Number of frames to read (default {frames})"
    )


def _add_qp(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--qp",
        type=int,
        default=32,
        choices=range(0, 52),
        metavar="QP",
        help="Quantization parameter in [0, 51] (default 32)",
    )


def _add_tiles(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tiles",
        type=_tiles,
        default=None,
        metavar="CxR",
        help="Tile grid as columns x rows; defaults to 16x12 capped to what the frame admits",
    )


def _add_policy(parser: argparse.ArgumentParser, strict: bool) -> None:
    parser.add_argument(
        "--policy",
        dest="policy_path",
        default=None,
        help="Policy JSON file mapping device tiers to encrypted classes; the built-in default when omitted",
    )
    if strict:
        parser.add_argument(
            "--strict",
            action="store_true",
            help="Treat policy nesting violations as errors instead of warnings",
        )


def build_parser() -> ArheArgumentParser:
    parser = ArheArgumentParser(
        prog="arhe",
        description="arhe is a command-line tool for device-oriented hierarchical ROI video encryption: encode raw video into tiles, scramble sensitive regions in the compressed stream per sensitivity class, and hand each AR device only the keys its privacy tier allows.",
    )

    subparsers = parser.add_subparsers(
        dest="command", help="Available commands", required=True
    )

    encode_parser = subparsers.add_parser(
        "encode",
        help="encode compresses a raw YUV clip into a tiled .arhe container, labeling each tile with the most important sensitivity class its ROI boxes touch.",
    )
    _add_raw_input(encode_parser, required=True, width=96, height=64, frames=30)
    _add_qp(encode_parser)
    _add_tiles(encode_parser)
    encode_parser.add_argument(
        "--roi", default=None, help="ROI timeline JSON; tiles stay unlabeled when omitted"
    )
    encode_parser.add_argument(
        "--fps", type=int, default=30, help="Frame rate stored in the header (default 30)"
    )
    encode_parser.add_argument(
        "--salt", type=int, default=0, help="Per-stream nonce salt, an unsigned 32-bit integer (default 0)"
    )
    encode_parser.add_argument("--out", required=True, help="Output .arhe container")
    _add_verbose(encode_parser)

    encrypt_parser = subparsers.add_parser(
        "encrypt",
        help="encrypt scrambles the tiles of selected sensitivity classes: either what the policy encrypts for one device (--device, -i) or an explicit class list (--classes).",
    )
    encrypt_parser.add_argument(
        "--in", dest="input_path", required=True, help="Plaintext .arhe container"
    )
    encrypt_parser.add_argument(
        "--master-key",
        "--master",
        dest="master_key",
        required=True,
        help="Master key as 64 lowercase hex characters",
    )
    target = encrypt_parser.add_mutually_exclusive_group(required=True)
    target.add_argument(
        "--device", choices=TIER_NAMES, default=None, help="Target device tier (per-device transcode)"
    )
    target.add_argument(
        "--classes",
        default=None,
        help="Comma-separated classes to encrypt, by name or id (broadcast mode); an empty string encrypts nothing",
    )
    target.add_argument(
        "-i",
        "--interactive",
        action="store_true",
        help="Pick the target device tier in a terminal dialog",
    )
    _add_policy(encrypt_parser, strict=True)
    encrypt_parser.add_argument("--out", required=True, help="Output .arhe container")
    _add_verbose(encrypt_parser)

    decrypt_parser = subparsers.add_parser(
        "decrypt",
        help="decrypt restores every tile whose class key is in the key file; other tiles stay scrambled.",
    )
    decrypt_parser.add_argument(
        "--in", dest="input_path", required=True, help="Encrypted .arhe container"
    )
    decrypt_parser.add_argument("--keys", required=True, help="Key file produced by `arhe keys`")
    decrypt_parser.add_argument("--out", required=True, help="Output .arhe container")
    _add_verbose(decrypt_parser)

    decode_parser = subparsers.add_parser(
        "decode",
        help="decode reconstructs raw YUV from a container; scrambled tiles decode to noise-like pixels.",
    )
    decode_parser.add_argument("--in", dest="input_path", required=True, help=".arhe container")
    decode_parser.add_argument("--out", required=True, help="Output raw YUV 4:2:0 file")
    _add_verbose(decode_parser)

    keys_parser = subparsers.add_parser(
        "keys",
        help="keys derives the class keys a device tier may hold and prints them in the key file format.",
    )
    keys_parser.add_argument(
        "--master",
        "--master-key",
        dest="master_key",
        required=True,
        help="Master key as 64 lowercase hex characters",
    )
    holder = keys_parser.add_mutually_exclusive_group(required=True)
    holder.add_argument(
        "--device", choices=TIER_NAMES, default=None, help="Device tier receiving the keys"
    )
    holder.add_argument(
        "--all",
        dest="all_classes",
        action="store_true",
        help="Emit the key of every class (full bundle)",
    )
    holder.add_argument(
        "-i",
        "--interactive",
        action="store_true",
        help="Pick the device tier in a terminal dialog",
    )
    _add_policy(keys_parser, strict=False)
    keys_parser.add_argument(
        "--out", default=None, help="Write the key file here instead of stdout"
    )
    _add_verbose(keys_parser)

    track_parser = subparsers.add_parser(
        "track",
        help="track follows one box through a raw clip by SAD block matching and writes an ROI timeline.",
    )
    _add_raw_input(track_parser, required=True, width=96, height=64, frames=30)
    track_parser.add_argument(
        "--box", type=parse_box, required=True, metavar="X,Y,W,H", help="Initial box on the start frame"
    )
    track_parser.add_argument("--start", type=int, default=0, help="Start frame (default 0)")
    track_parser.add_argument(
        "--end", type=int, default=None, help="Last frame, inclusive (default: the last frame)"
    )
    track_parser.add_argument(
        "--class",
        dest="sensitivity",
        default="face",
        help="Sensitivity class of the tracked object, by name or id (default face)",
    )
    track_parser.add_argument(
        "--object-id", default="tracked", help="Track identifier in the timeline (default 'tracked')"
    )
    track_parser.add_argument(
        "--out", default=None, help="Write the timeline here instead of stdout"
    )
    _add_verbose(track_parser)

    metrics_parser = subparsers.add_parser(
        "metrics",
        help="metrics compares a container's keyless decode against the source clip: global luma PSNR and PSNR over labeled tiles.",
    )
    metrics_parser.add_argument("--source", required=True, help="Source raw YUV 4:2:0 file")
    metrics_parser.add_argument("--in", dest="input_path", required=True, help=".arhe container")
    metrics_parser.add_argument(
        "--classes",
        default=None,
        help="Restrict the region PSNR to these comma-separated classes (default: every class)",
    )
    metrics_parser.add_argument(
        "--table", action="store_true", help="Print a table instead of JSON"
    )
    _add_verbose(metrics_parser)

    bench_parser = subparsers.add_parser(
        "bench",
        help="bench runs encode, encrypt and decode on a clip and reports PSNR, compressed size, cipher payload and ms/frame.",
    )
    _add_raw_input(bench_parser, required=False, width=96, height=64, frames=30)
    _add_qp(bench_parser)
    _add_tiles(bench_parser)
    bench_parser.add_argument(
        "--roi", default=None, help="ROI timeline JSON (defaults to the fixture's own timeline)"
    )
    _add_policy(bench_parser, strict=False)
    bench_parser.add_argument(
        "--device",
        choices=TIER_NAMES,
        default=None,
        help="Encrypt what the policy encrypts for this tier; nothing is encrypted when neither --device nor --classes is given",
    )
    bench_parser.add_argument(
        "--classes", default=None, help="Comma-separated classes to encrypt instead of a device tier"
    )
    bench_parser.add_argument(
        "--repetitions", type=_positive, default=3, help="Timing repetitions; medians are reported (default 3)"
    )
    bench_parser.add_argument(
        "--master-key", default=None, help="Master key as 64 hex characters (default: all-zero key)"
    )
    bench_parser.add_argument(
        "--seed", type=int, default=0, help="Fixture seed when no input is given (default 0)"
    )
    bench_parser.add_argument(
        "--table", action="store_true", help="Print a table instead of JSON"
    )
    _add_verbose(bench_parser)

    fixture_parser = subparsers.add_parser(
        "fixture",
        help="fixture writes a deterministic synthetic clip (gradient background, textured moving face, static display and ID card patches) and its ROI timeline.",
    )
    fixture_parser.add_argument("--seed", type=int, default=0, help="Texture seed (default 0)")
    fixture_parser.add_argument(
        "--width", type=int, default=96, help="Frame width, a multiple of 16 (default 96)"
    )
    fixture_parser.add_argument(
        "--height", type=int, default=64, help="Frame height, a multiple of 16 (default 64)"
    )
    fixture_parser.add_argument("--frames", type=int, default=30, help="Frame count (default 30)")
    fixture_parser.add_argument(
        "--motion",
        type=_motion,
        default=(1, 0),
        metavar="DX,DY",
        help="Per-frame displacement of the face (default 1,0)",
    )
    fixture_parser.add_argument("--out", required=True, help="Output raw YUV 4:2:0 file")
    fixture_parser.add_argument(
        "--roi-out", default=None, help="ROI timeline output (default: <out>.roi.json)"
    )
    _add_verbose(fixture_parser)

    sweep_parser = subparsers.add_parser(
        "sweep",
        help="sweep encodes one clip under several tile grids to show how extra tiles cost bits and speed.",
    )
    _add_raw_input(sweep_parser, required=False, width=256, height=192, frames=3)
    _add_qp(sweep_parser)
    sweep_parser.add_argument(
        "--grids",
        type=_grids,
        default=None,
        metavar="CxR,...",
        help="Comma-separated tile grids (default 1x1,2x2,4x4,16x12)",
    )
    sweep_parser.add_argument(
        "--repetitions", type=_positive, default=1, help="Timing repetitions per grid (default 1)"
    )
    _add_verbose(sweep_parser)

    policy_parser = subparsers.add_parser(
        "policy",
        help="policy prints the active device-tier matrix and checks that more exposed devices encrypt at least as much.",
    )
    _add_policy(policy_parser, strict=True)
    _add_verbose(policy_parser)

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as w:
            w.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dispatch(
    args: argparse.Namespace, console: Console, config: ArheConfig
) -> None:
    verbose = bool(args.verbose or config.verbose)
    pipeline = ArhePipeline(threads=config.threads, verbose=verbose)
    stdout = Console()

    if args.command == "encode":
        cmd_encode(
            console,
            pipeline,
            args.input_path,
            args.width,
            args.height,
            args.frames,
            args.out,
            qp=args.qp,
            tiles=args.tiles,
            roi=args.roi,
            fps=args.fps,
            salt=args.salt,
        )
    elif args.command == "encrypt":
        cmd_encrypt(
            console,
            pipeline,
            args.input_path,
            args.master_key,
            args.out,
            device=args.device,
            classes=args.classes,
            interactive=args.interactive,
            policy_path=args.policy_path,
            strict=args.strict,
        )
    elif args.command == "decrypt":
        cmd_decrypt(console, pipeline, args.input_path, args.keys, args.out)
    elif args.command == "decode":
        cmd_decode(console, pipeline, args.input_path, args.out)
    elif args.command == "keys":
        text = cmd_keys(
            console,
            args.master_key,
            device=args.device,
            all_classes=args.all_classes,
            interactive=args.interactive,
            policy_path=args.policy_path,
        )
        _emit(text, args.out)
    elif args.command == "track":
        timeline = cmd_track(
            console,
            args.input_path,
            args.width,
            args.height,
            args.frames,
            args.box,
            start=args.start,
            end=args.end,
            sensitivity=args.sensitivity,
            object_id=args.object_id,
            verbose=verbose,
        )
        _emit(timeline.to_json(), args.out)
    elif args.command == "metrics":
        quality = cmd_metrics(args.source, args.input_path, args.classes)
        if args.table:
            stdout.print(render_quality(quality))
        else:
            _emit(quality.model_dump_json(indent=2), None)
    elif args.command == "bench":
        report = cmd_bench(
            console,
            input_path=args.input_path,
            width=args.width,
            height=args.height,
            frames=args.frames,
            qp=args.qp,
            tiles=args.tiles,
            roi=args.roi,
            policy_path=args.policy_path,
            device=args.device,
            classes=args.classes,
            repetitions=args.repetitions,
            master_key=args.master_key,
            seed=args.seed,
            verbose=verbose,
        )
        if args.table:
            stdout.print(render_report(report))
        else:
            _emit(report.to_json(), None)
    elif args.command == "fixture":
        cmd_fixture(
            console,
            args.out,
            roi_out=args.roi_out,
            width=args.width,
            height=args.height,
            frames=args.frames,
            seed=args.seed,
            motion=args.motion,
        )
    elif args.command == "sweep":
        rows = cmd_sweep(
            console,
            input_path=args.input_path,
            width=args.width,
            height=args.height,
            frames=args.frames,
            qp=args.qp,
            grids=args.grids or SWEEP_GRIDS,
            repetitions=args.repetitions,
            verbose=verbose,
        )
        stdout.print(render_sweep(rows))
    elif args.command == "policy":
        matrix = cmd_policy(console, args.policy_path, args.strict)
        _emit(matrix.to_json(), None)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run one subcommand and return its exit code."""
    console = Console(stderr=True)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = ArheConfig.load()
        _dispatch(args, console, config)
    except ConfigurationError as e:
        console.log(f"[bold red]ERROR[/]\t{e}")
        return EXIT_USAGE
    except (FormatError, OSError, ValidationError) as e:
        console.log(f"[bold red]ERROR[/]\t{e}")
        return EXIT_DATA
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
