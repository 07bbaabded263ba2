//! Instance generators behind the lower bounds, and the geometric tools
//! they need.

mod cube;
mod geometry;
mod lp;
mod ssd;

pub use cube::{
    cube_rank_check, general_position_set, images_independent, independence_threshold,
    random_sign_vectors, RankCheck, RANK_DIMENSION_BUDGET,
};
pub use geometry::{
    balls_in_bins_check, cluster_centers, dist, cluster_instance, hemisphere_frequency,
    min_enclosing_ball, sample_sphere, wendel_probability, Ball, ClusterInstance, Side,
};
pub use lp::{lp_default_support, lp_domain_size, lp_hard_instance, LpInstance};
pub use ssd::{cube_ssd_instance, ssd_instance, CubeSsdInstance, SsdInstance, SsdParams, SsdSampler};
