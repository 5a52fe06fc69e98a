__version__ = "0.1.0"
__all__ = []

# desired API
from rcm_tracker.kinematics.model import (
    JointSeries,
    JointState,
    TipPosition,
    TipTrajectory,
    forward_kinematics,
    joint_angles_from_vector,
    reconstruct_trajectory,
    tool_pose,
)
from rcm_tracker.kinematics.transform import Transform, compose, elementary_transform
from rcm_tracker.acquisition.encoder import (
    Calibration,
    EncoderFrame,
    StreamDecoder,
    ZeroOffsets,
    decode_frame,
    decode_stream,
    encode_state,
    static_zero,
)
from rcm_tracker.reference.alignment import (
    AlignedPair,
    FrameTriad,
    MarkerStream,
    channel_mse,
    derive_reference_joints,
    estimate_frame_transform,
    mse_summary,
    resample_align,
)
from rcm_tracker.metrics.differentiation import differentiate
from rcm_tracker.metrics.metrics import MetricConfig, MetricSet, compute_metric_set
from rcm_tracker.evaluation.report import (
    SessionReport,
    bimanual_report,
    group_by_subcategory,
    session_report,
)
from rcm_tracker.evaluation.workspace import workspace_boundary
from rcm_tracker.simulator.profiles import (
    NoiseParams,
    ScanParams,
    corrupt_and_encode,
    generate_cone_scan,
    generate_peg_transfer_profile,
)
