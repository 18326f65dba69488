"""Command-line entry point for the bridge."""

from __future__ import annotations

import argparse
import sys

from .config import BridgeConfig
from .errors import BridgeError
from .runner import synthesize


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synthesis-bridge",
        description="Generate in-between frames from a conditioning manifest.",
    )
    parser.add_argument("--manifest", required=True, help="path to manifest.json")
    parser.add_argument("--out", required=True, help="output frame directory")
    parser.add_argument(
        "--model",
        default="crossfade",
        help="sampler id: 'crossfade' or 'diffusers:<repo>' (default: crossfade)",
    )
    parser.add_argument(
        "--strength",
        type=float,
        default=1.0,
        help="conditioning strength in [0, 1]; 0 disables structural guidance",
    )
    parser.add_argument("--device", default="cpu", help="device selector (default cpu)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = BridgeConfig(
            manifest_path=args.manifest,
            out_dir=args.out,
            model=args.model,
            strength=args.strength,
            device=args.device,
        )
        written = synthesize(config)
    except (BridgeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{len(written)} frames -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
