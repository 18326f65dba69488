"""Command-line interface.

Subcommands: run | detect | match | guide | raster | metrics. ``run``
executes the whole pipeline; the other stage commands read and write the
same intermediate file formats, so chaining them reproduces a ``run``
byte-for-byte. Options may also come from a JSON config file (--config);
explicit flags win over config values.

Exit codes: 0 success, 2 input error, 3 empty correspondence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .detect import DetectorParams, detect_lines
from .errors import EmptyCorrespondence, EmptyMask, FormatError, TweenlinesError
from .ingest import load_flow, load_frame, write_lines
from .matching import MatchConfig, build_cost_matrix, match_lines
from .metrics import crossing_count, flow_similarity
from .pipeline import (
    PipelineConfig,
    build_guidance,
    correspondence_csv,
    cost_matrix_csv,
    load_scene,
    parse_correspondence_csv,
    run_pipeline,
    summarize_flow,
)
from .raster import RasterParams, emit_sequence
from .trajectory import (
    MODES,
    TIMING_ENDPOINT,
    TIMINGS,
    read_guidance,
    write_guidance,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_PAIRS = 3


def _add_io_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--frame-a", help="boundary frame of the first clip (PNG)")
    p.add_argument("--frame-b", help="boundary frame of the second clip (PNG)")
    p.add_argument("--lines-a", help="line-JSON for frame A (default: detect)")
    p.add_argument("--lines-b", help="line-JSON for frame B (default: detect)")
    p.add_argument("--mask-a", help="foreground mask for frame A (PNG)")
    p.add_argument("--mask-b", help="foreground mask for frame B (PNG)")
    p.add_argument("--flow-a", help=".flo flow at the A boundary (default: zero)")
    p.add_argument("--flow-b", help=".flo flow at the B boundary (default: zero)")


def _add_tuning_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("-T", "--count", type=int, help="in-between frames (default 13)")
    p.add_argument(
        "--flow-span", type=int, help="frame gap the input flows span (default 3)"
    )
    p.add_argument("--mode", choices=MODES, help="guidance mode (default bspline)")
    p.add_argument("--timing", choices=TIMINGS, help="frame timing (default endpoint)")
    p.add_argument("--stroke-width", type=float, help="raster stroke width (default 2)")
    p.add_argument(
        "--no-antialias", action="store_true", help="disable coverage anti-aliasing"
    )
    p.add_argument("--flow-radius", type=float, help="flow sampling radius (default 5)")
    p.add_argument("--flow-scale", type=float, help="flow multiplier (default 1.0)")
    p.add_argument("--sample-count", type=int, help="mask probes per line (default 32)")
    p.add_argument(
        "--fg-fraction", type=float, help="required in-mask sample fraction (default any)"
    )
    p.add_argument("--cost-cap", type=float, help="maximum admissible pair cost")
    p.add_argument("--w-center", type=float, help="center-distance cost weight")
    p.add_argument("--w-angle", type=float, help="orientation cost weight")
    p.add_argument("--w-length", type=float, help="length cost weight")


def _add_detector_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gradient-threshold", type=float, help="edge threshold (default 40)")
    p.add_argument("--min-length", type=float, help="minimum line length (default 15)")
    p.add_argument("--max-lines", type=int, help="line budget (default 256)")
    p.add_argument("--merge-angle-tol", type=float, help="merge angle tol, deg (default 5)")
    p.add_argument("--merge-gap-tol", type=float, help="merge gap tol, px (default 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tweenlines",
        description="Structural guidance maps for transitions between video clips.",
    )
    parser.add_argument("--config", help="JSON config file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the full pipeline")
    _add_io_options(p_run)
    _add_tuning_options(p_run)
    _add_detector_options(p_run)
    p_run.add_argument("--out", help="output directory (default ./out)")
    p_run.add_argument("--ref-flows", help="reference .flo directory for an eval report")
    p_run.add_argument("--gen-flows", help="generated .flo directory for an eval report")

    p_det = sub.add_parser("detect", help="detect lines in one frame")
    p_det.add_argument("--frame", required=True, help="input PNG")
    p_det.add_argument("--out", required=True, help="output line-JSON path")
    _add_detector_options(p_det)

    p_match = sub.add_parser("match", help="match two line sets")
    _add_io_options(p_match)
    _add_tuning_options(p_match)
    p_match.add_argument("--out", required=True, help="correspondence CSV path")
    p_match.add_argument("--dump-cost", help="also write the cost matrix as CSV")

    p_guide = sub.add_parser("guide", help="interpolate matched lines over time")
    _add_io_options(p_guide)
    _add_tuning_options(p_guide)
    p_guide.add_argument("--pairs", required=True, help="correspondence CSV from match")
    p_guide.add_argument("--out", required=True, help="guidance output directory")

    p_raster = sub.add_parser("raster", help="rasterize a guidance sequence")
    p_raster.add_argument("--guidance", required=True, help="guidance.json from guide")
    p_raster.add_argument("--frame-a", required=True)
    p_raster.add_argument("--frame-b", required=True)
    p_raster.add_argument("--out", required=True, help="output directory")
    p_raster.add_argument("--stroke-width", type=float)
    p_raster.add_argument("--no-antialias", action="store_true")
    p_raster.add_argument("--flow-scale", type=float)

    p_met = sub.add_parser("metrics", help="score flows and/or guidance")
    p_met.add_argument("--ref", help="directory of reference .flo files")
    p_met.add_argument("--gen", help="directory of generated .flo files")
    p_met.add_argument("--guidance", help="guidance.json to count crossings on")
    p_met.add_argument("--out", help="write the report as JSON here")
    return parser


def _config_dict(args: argparse.Namespace) -> dict:
    if not getattr(args, "config", None):
        return {}
    path = Path(args.config)
    try:
        doc = json.loads(path.read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: unreadable config ({exc})") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: config must be a JSON object")
    return doc


def _get(args: argparse.Namespace, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None and value is not False:
        return value
    if key in cfg:
        return cfg[key]
    return default


def _detector_params(args, cfg) -> DetectorParams:
    return DetectorParams(
        gradient_threshold=_get(args, cfg, "gradient_threshold", 40.0),
        min_length=_get(args, cfg, "min_length", 15.0),
        max_lines=_get(args, cfg, "max_lines", 256),
        merge_angle_tol=_get(args, cfg, "merge_angle_tol", 5.0),
        merge_gap_tol=_get(args, cfg, "merge_gap_tol", 3.0),
    )


def _match_config(args, cfg) -> MatchConfig:
    return MatchConfig(
        sample_count=_get(args, cfg, "sample_count", 32),
        fg_fraction=_get(args, cfg, "fg_fraction", 0.0),
        cost_cap=_get(args, cfg, "cost_cap", None),
        w_center=_get(args, cfg, "w_center", 1.0),
        w_angle=_get(args, cfg, "w_angle", 0.0),
        w_length=_get(args, cfg, "w_length", 0.0),
    )


def _pipeline_config(args, cfg) -> PipelineConfig:
    return PipelineConfig(
        count=_get(args, cfg, "count", 13),
        flow_span=_get(args, cfg, "flow_span", 3),
        mode=_get(args, cfg, "mode", "bspline"),
        timing=_get(args, cfg, "timing", TIMING_ENDPOINT),
        stroke_width=_get(args, cfg, "stroke_width", 2.0),
        antialias=not _get(args, cfg, "no_antialias", False),
        flow_radius=_get(args, cfg, "flow_radius", 5.0),
        flow_scale=_get(args, cfg, "flow_scale", 1.0),
        detector=_detector_params(args, cfg),
        match=_match_config(args, cfg),
        frame_a=_get(args, cfg, "frame_a", None),
        frame_b=_get(args, cfg, "frame_b", None),
        lines_a=_get(args, cfg, "lines_a", None),
        lines_b=_get(args, cfg, "lines_b", None),
        mask_a=_get(args, cfg, "mask_a", None),
        mask_b=_get(args, cfg, "mask_b", None),
        flow_a=_get(args, cfg, "flow_a", None),
        flow_b=_get(args, cfg, "flow_b", None),
        out_dir=_get(args, cfg, "out", "out"),
    )


def _load_flow_dir(path: str):
    files = sorted(Path(path).glob("*.flo"))
    if not files:
        raise FileNotFoundError(f"no .flo files in {path}")
    return [load_flow(f) for f in files]


def _cmd_run(args, cfg) -> int:
    pc = _pipeline_config(args, cfg)
    result = run_pipeline(pc)
    print(f"matched pairs: {len(result.pairs)}")
    print(f"crossings: {result.crossings}")
    print(f"manifest: {result.out_dir / 'manifest.json'}")
    ref_dir = _get(args, cfg, "ref_flows", None)
    gen_dir = _get(args, cfg, "gen_flows", None)
    if ref_dir and gen_dir:
        report = flow_similarity(_load_flow_dir(ref_dir), _load_flow_dir(gen_dir))
        out = result.out_dir / "similarity.json"
        out.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        print(f"flow similarity: {report.overall:.4f} ({out})")
    return EXIT_OK


def _cmd_detect(args, cfg) -> int:
    frame = load_frame(args.frame)
    lines = detect_lines(frame, _detector_params(args, cfg))
    write_lines(lines, args.out)
    print(f"{len(lines)} lines -> {args.out}")
    return EXIT_OK


def _scene_from_flags(args, cfg):
    pc = _pipeline_config(args, cfg)
    return load_scene(pc), pc


def _cmd_match(args, cfg) -> int:
    scene, pc = _scene_from_flags(args, cfg)
    canonical = pc.mode != "linear_all"
    pairs, _, _ = match_lines(
        scene.lines_a,
        scene.lines_b,
        scene.mask_a if canonical else None,
        scene.mask_b if canonical else None,
        pc.match,
        canonical=canonical,
    )
    Path(args.out).write_text(correspondence_csv(pairs), "utf-8")
    if getattr(args, "dump_cost", None):
        if canonical:
            from .geometry import normalize_coords
            from .matching import select_foreground, tight_bbox

            fg_a, _ = select_foreground(scene.lines_a, scene.mask_a, pc.match)
            fg_b, _ = select_foreground(scene.lines_b, scene.mask_b, pc.match)
            ca = normalize_coords(fg_a.coords, tight_bbox(scene.mask_a))
            cb = normalize_coords(fg_b.coords, tight_bbox(scene.mask_b))
        else:
            ca, cb = scene.lines_a.coords, scene.lines_b.coords
        cost = build_cost_matrix(ca, cb, pc.match)
        Path(args.dump_cost).write_text(cost_matrix_csv(cost), "utf-8")
    print(f"{len(pairs)} pairs -> {args.out}")
    return EXIT_OK


def _cmd_guide(args, cfg) -> int:
    scene, pc = _scene_from_flags(args, cfg)
    pairs = parse_correspondence_csv(Path(args.pairs).read_text("utf-8"))
    if len(pairs) == 0:
        raise EmptyCorrespondence("correspondence file has no pairs")
    from .matching import tight_bbox

    if pc.mode == "linear_all":
        box_a = box_b = None
    else:
        box_a = tight_bbox(scene.mask_a)
        box_b = tight_bbox(scene.mask_b)
    flows = summarize_flow(scene, pairs, pc)
    guidance = build_guidance(
        pairs,
        scene.lines_a,
        scene.lines_b,
        box_a,
        box_b,
        flows,
        pc.count,
        pc.mode,
        pc.timing,
    )
    index = write_guidance(guidance, args.out)
    print(f"{len(guidance)} frames -> {index}")
    return EXIT_OK


def _cmd_raster(args, cfg) -> int:
    guidance = read_guidance(args.guidance)
    params = RasterParams(
        stroke_width=_get(args, cfg, "stroke_width", 2.0),
        antialias=not _get(args, cfg, "no_antialias", False),
    )
    manifest = emit_sequence(
        guidance,
        params,
        args.out,
        boundary_a=args.frame_a,
        boundary_b=args.frame_b,
        flow_scale=_get(args, cfg, "flow_scale", 1.0),
    )
    print(f"{manifest.count} edge maps -> {args.out}")
    return EXIT_OK


def _cmd_metrics(args, cfg) -> int:
    report_doc: dict = {}
    if args.ref and args.gen:
        report = flow_similarity(_load_flow_dir(args.ref), _load_flow_dir(args.gen))
        report_doc["flow_similarity"] = report.to_dict()
        print("frame   cosine")
        for t, value in enumerate(report.per_frame, start=1):
            print(f"{t:5d}   {value:+.6f}")
        print(f"overall {report.overall:+.6f}")
        print(f"valid pixels: {report.valid_pixel_fraction:.3f}")
    if args.guidance:
        crossings = crossing_count(read_guidance(args.guidance))
        report_doc["crossings"] = crossings
        print(f"crossings: {crossings}")
    if not report_doc:
        raise ValueError("metrics needs --ref/--gen and/or --guidance")
    if args.out:
        Path(args.out).write_text(
            json.dumps(report_doc, indent=2, sort_keys=True) + "\n", "utf-8"
        )
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "detect": _cmd_detect,
    "match": _cmd_match,
    "guide": _cmd_guide,
    "raster": _cmd_raster,
    "metrics": _cmd_metrics,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_dict(args)
        return _COMMANDS[args.command](args, cfg)
    except EmptyCorrespondence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PAIRS
    except (OSError, TweenlinesError, EmptyMask, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
