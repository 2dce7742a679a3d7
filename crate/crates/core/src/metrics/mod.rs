//! Comparisons between graphs, partitions and node rankings.

mod ged;
mod partition;
mod position;

pub use ged::{ged, ged_matrix, Ged};
pub use partition::{
    compare_partitions, inter_group_fraction, modularity, nmi, nvi, parse_partition, NmiNorm, Partition,
    PartitionComparison,
};
pub use position::{correlation_matrix, pearson, position_vectors, PositionOptions, PositionVectors};
