"""End-to-end orchestration of the guidance pipeline.

Wires ingest -> foreground selection -> matching -> flow aggregation ->
guidance -> edge-map emission. The whole run is a pure function of the
input files and the configuration: repeated runs produce byte-identical
output directories.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .detect import DetectorParams, detect_lines
from .errors import EmptyCorrespondence
from .geometry import BoundingBox, LineSet
from .ingest import (
    FlowField,
    ForegroundMask,
    Frame,
    load_flow,
    load_frame,
    load_lines,
    load_mask,
    zero_flow,
)
from .matching import CorrespondenceSet, MatchConfig, match_lines
from .metrics import crossing_count
from .raster import ConditioningManifest, RasterParams, emit_sequence
from .trajectory import (
    TIMING_ENDPOINT,
    FlowSummary,
    GuidanceSequence,
    average_flow_near_lines,
    build_guidance,
)


@dataclass
class PipelineConfig:
    """Every knob of a full run; defaults match the reference setup."""

    count: int = 13  # in-between frames (T)
    flow_span: int = 3  # frame gap (k) the input flows were computed over
    mode: str = "bspline"
    timing: str = TIMING_ENDPOINT
    stroke_width: float = 2.0
    antialias: bool = True
    flow_radius: float = 5.0
    flow_scale: float = 1.0
    detector: DetectorParams = field(default_factory=DetectorParams)
    match: MatchConfig = field(default_factory=MatchConfig)
    frame_a: str | None = None
    frame_b: str | None = None
    lines_a: str | None = None
    lines_b: str | None = None
    mask_a: str | None = None
    mask_b: str | None = None
    flow_a: str | None = None
    flow_b: str | None = None
    out_dir: str = "out"

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.flow_span < 1:
            raise ValueError("flow_span must be >= 1")


@dataclass(frozen=True)
class RunResult:
    manifest: ConditioningManifest
    guidance: GuidanceSequence
    pairs: CorrespondenceSet
    crossings: int
    out_dir: Path


@dataclass(frozen=True)
class SceneInputs:
    frame_a: Frame
    frame_b: Frame
    lines_a: LineSet
    lines_b: LineSet
    mask_a: ForegroundMask
    mask_b: ForegroundMask
    flow_a: FlowField
    flow_b: FlowField


def load_scene(cfg: PipelineConfig) -> SceneInputs:
    """Resolve all pipeline inputs from the configured paths.

    Lines are detected from the frames when no line files are given; flows
    default to the zero field, which degrades the trajectory gracefully to
    the flow-free path.
    """
    if not cfg.frame_a or not cfg.frame_b:
        raise FileNotFoundError("both boundary frames are required")
    if not cfg.mask_a or not cfg.mask_b:
        raise FileNotFoundError("both foreground masks are required")
    frame_a = load_frame(cfg.frame_a)
    frame_b = load_frame(cfg.frame_b)
    lines_a = (
        load_lines(cfg.lines_a) if cfg.lines_a else detect_lines(frame_a, cfg.detector)
    )
    lines_b = (
        load_lines(cfg.lines_b) if cfg.lines_b else detect_lines(frame_b, cfg.detector)
    )
    mask_a = load_mask(cfg.mask_a)
    mask_b = load_mask(cfg.mask_b)
    flow_a = (
        load_flow(cfg.flow_a)
        if cfg.flow_a
        else zero_flow(frame_a.width, frame_a.height)
    )
    flow_b = (
        load_flow(cfg.flow_b)
        if cfg.flow_b
        else zero_flow(frame_b.width, frame_b.height)
    )
    return SceneInputs(
        frame_a, frame_b, lines_a, lines_b, mask_a, mask_b, flow_a, flow_b
    )


def match_for_mode(
    scene: SceneInputs, cfg: PipelineConfig
) -> tuple[CorrespondenceSet, BoundingBox | None, BoundingBox | None]:
    """Mode-appropriate correspondence: raw full-set matching for
    ``linear_all``, layer-aware canonical matching otherwise."""
    canonical = cfg.mode != "linear_all"
    return match_lines(
        scene.lines_a,
        scene.lines_b,
        scene.mask_a if canonical else None,
        scene.mask_b if canonical else None,
        cfg.match,
        canonical=canonical,
    )


def summarize_flow(
    scene: SceneInputs, pairs: CorrespondenceSet, cfg: PipelineConfig
) -> FlowSummary:
    """Average each boundary's flow over mask pixels near its matched lines."""
    idx_a = [p.index_a for p in pairs]
    idx_b = [p.index_b for p in pairs]
    fa = average_flow_near_lines(
        scene.flow_a, scene.lines_a.subset(idx_a), scene.mask_a, cfg.flow_radius
    )
    fb = average_flow_near_lines(
        scene.flow_b, scene.lines_b.subset(idx_b), scene.mask_b, cfg.flow_radius
    )
    return FlowSummary(
        fa=(float(fa[0]), float(fa[1])),
        fb=(float(fb[0]), float(fb[1])),
        sample_radius=cfg.flow_radius,
        scale=cfg.flow_scale,
    )


def build_guidance_for_scene(
    scene: SceneInputs, cfg: PipelineConfig
) -> tuple[GuidanceSequence, CorrespondenceSet]:
    pairs, box_a, box_b = match_for_mode(scene, cfg)
    if len(pairs) == 0:
        raise EmptyCorrespondence(
            "matching produced no line pairs; check that the masks cover "
            "structural lines in both frames or relax the match settings"
        )
    flows = summarize_flow(scene, pairs, cfg)
    guidance = build_guidance(
        pairs,
        scene.lines_a,
        scene.lines_b,
        box_a,
        box_b,
        flows,
        cfg.count,
        cfg.mode,
        cfg.timing,
    )
    return guidance, pairs


def run_pipeline(cfg: PipelineConfig) -> RunResult:
    """The full transition-guidance run; see module docstring."""
    scene = load_scene(cfg)
    guidance, pairs = build_guidance_for_scene(scene, cfg)
    params = RasterParams(stroke_width=cfg.stroke_width, antialias=cfg.antialias)
    manifest = emit_sequence(
        guidance,
        params,
        cfg.out_dir,
        boundary_a=cfg.frame_a,
        boundary_b=cfg.frame_b,
        flow_scale=cfg.flow_scale,
    )
    crossings = crossing_count(guidance) if cfg.count >= 2 and len(pairs) >= 2 else 0
    return RunResult(
        manifest=manifest,
        guidance=guidance,
        pairs=pairs,
        crossings=crossings,
        out_dir=Path(cfg.out_dir),
    )


def matched_subset_a(scene: SceneInputs, pairs: CorrespondenceSet) -> LineSet:
    """The lines of frame A that survived matching, in pair order."""
    return scene.lines_a.subset([p.index_a for p in pairs])


def correspondence_csv(pairs: CorrespondenceSet) -> str:
    rows = ["index_a,index_b,flip_b"]
    rows += [f"{p.index_a},{p.index_b},{int(p.flip_b)}" for p in pairs]
    return "\n".join(rows) + "\n"


def parse_correspondence_csv(text: str) -> CorrespondenceSet:
    from .matching import Correspondence

    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != "index_a,index_b,flip_b":
        raise ValueError("correspondence CSV must start with its header row")
    pairs = []
    for ln in lines[1:]:
        ia, ib, flip = ln.split(",")
        pairs.append(Correspondence(int(ia), int(ib), bool(int(flip))))
    return CorrespondenceSet(tuple(pairs))


def cost_matrix_csv(cost: np.ndarray) -> str:
    return "\n".join(",".join(repr(v) for v in row) for row in cost.tolist()) + "\n"
