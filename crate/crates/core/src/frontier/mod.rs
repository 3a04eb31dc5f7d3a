//! Exact Pareto front enumeration and front quality metrics.

mod brute;
mod epsilon;
mod front;
mod gavanelli;
mod hypervolume;

pub use brute::{brute_force_front, BRUTE_FORCE_LIMIT};
pub use epsilon::{saugmencon, EpsilonConfig};
pub use front::{FrontFile, FrontPointRecord, FrontStatus, ParetoFront};
pub use gavanelli::pareto_gavanelli;
pub use hypervolume::{hypervolume, hypervolume_points, reference_point, score, worst_case};
