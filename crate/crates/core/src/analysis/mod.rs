//! Experiment harness: orthogonality error, maximum-size search, 2D moments,
//! reconstruction metrics, restriction error and timing.

mod bench;
mod image;
mod ortho;
mod restriction;
mod rules;
mod search;

pub use bench::{bench, BenchParams, BenchRecord};
pub use image::{moments_2d, nmse, psnr, reconstruct_2d, ImageGrid, MomentMatrix, PsnrLog};
pub use ortho::{gram_deviation, orthogonality_error};
pub use restriction::{restriction_from_matrix, restriction_study, RestrictionStudy};
pub use rules::ParamRule;
pub use search::{
    max_size_search, max_size_search_with, SearchConfig, SearchOutcome, Trial, TrialStatus,
};
