//! Cross-frame relations: segmentation, tracking, temporal proximities,
//! temporal connectedness and continuity, and persistence intervals.

pub mod connectedness;
pub mod continuity;
pub mod cross_frame;
pub mod persistence;
pub mod proximity;
pub mod segment;
pub mod track;

pub use connectedness::{temporally_video_frame_connected, video_frame_connected};
pub use continuity::{check_temporal_continuity, map_track, TemporalContinuityReport, TrackPairWitness};
pub use cross_frame::{
    cross_frame_adjacent, frame_value_adjacent, location_value_adjacent, point_across_adjacent,
    voxel_value_adjacent, CrossFrameQuery, Voxel,
};
pub use persistence::{persistence_diagram, PersistenceInterval, ValueBin};
pub use proximity::{
    common_lifespan, gap_distance, lifespans_overlap, metric_near_times, temporally_adjacent,
    temporally_metric_near, temporally_near, GapDistance, TemporalNearness,
};
pub use segment::{segment, segment_all, SegmentationMask};
pub use track::{lifespan, track, TrackedRegion};
