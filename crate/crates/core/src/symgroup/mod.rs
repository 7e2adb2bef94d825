//! Permutations of `{1..n}`, integer partitions and conjugacy classes of `S_n`.

mod partition;
mod permutation;

pub use partition::{factorial, partitions_of, Partition};
pub(crate) use partition::check_indices;
pub use permutation::{all_permutations, generates_symmetric_group, permutations_of_subset, Permutation};
