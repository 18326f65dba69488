"""Structural guidance for transitions between video clips.

Given the boundary frames of two clips plus their line sets, foreground
masks, and optical flow, the package matches line structures layer-aware,
interpolates them along a motion-aware box trajectory, and rasterizes the
result into per-frame edge maps ready to condition an external generative
inbetweening sampler.
"""

from .detect import DetectorParams, detect_lines
from .errors import (
    DegenerateBox,
    DimensionMismatch,
    DimensionMissing,
    EmptyCorrespondence,
    EmptyMask,
    FormatError,
    InvalidT,
    LengthMismatch,
    SizeMismatch,
    TweenlinesError,
)
from .geometry import (
    BoundingBox,
    CanonicalLine,
    LineSegment,
    LineSet,
    denormalize_line,
    line_center,
    normalize_line,
)
from .ingest import (
    FlowField,
    ForegroundMask,
    Frame,
    load_flow,
    load_frame,
    load_lines,
    load_mask,
    write_flow,
    write_lines,
    zero_flow,
)
from .matching import (
    Correspondence,
    CorrespondenceSet,
    MatchConfig,
    build_cost_matrix,
    hungarian,
    match_lines,
    orient_pairs,
    select_foreground,
    tight_bbox,
)
from .metrics import SimilarityReport, crossing_count, flow_similarity
from .pipeline import PipelineConfig, RunResult, run_pipeline
from .raster import ConditioningManifest, EdgeMap, RasterParams, emit_sequence, rasterize
from .trajectory import (
    BoxTrajectory,
    FlowSummary,
    GuidanceSequence,
    average_flow_near_lines,
    build_guidance,
    evaluate_box_spline,
    interpolate_pair,
    spline_boxes,
)

__version__ = "0.1.0"
