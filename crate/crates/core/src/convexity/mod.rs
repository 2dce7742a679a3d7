//! Convex hulls, the convex expansion procedure and convexity measures.
//!
//! A connected node set is convex when it contains every geodesic between
//! its members. Growing random convex sets one boundary node at a time and
//! watching how fast they swallow the graph yields the convexity `X`: it is 1
//! for trees of cliques and close to 0 for random graphs.

mod ccore;
pub(crate) mod expansion;
mod fenwick;
mod hull;
mod measure;

pub use ccore::{ccore_profile, ccore_profile_largest, CCoreOptions, CCoreProfile};
pub use expansion::{expansion_run, ConvexExpansion, ExpansionTrace};
pub use hull::{convex_hull, is_convex, NodeSet};
pub use measure::{measure_convexity, measure_corrected, pendant_bound, ConvexityReport, Z99};

/// Default number of expansion runs per measurement.
pub const DEFAULT_RUNS: usize = 100;
/// Default step threshold for c-core membership.
pub const DEFAULT_CORE_STEPS: usize = 15;
