//! Moment indices, partitions and strata, and the monomial and mixture
//! parametrizations of the moment varieties.

mod index;
mod partition;
mod variety;

pub use index::{enumerate_moments, MomentIndex};
pub use partition::{
    binomial, enumerate_stratum, moment_count, partitions_fitting, partitions_of,
    reduce_partition, stratum_by_filter, Partition, Reduction,
};
pub use variety::{
    build_a_matrix, eval_all, eval_parametrization, jacobian_columns, jacobian_secant, AMatrix,
    MixtureParams, ParamLabel, Scope, VarietySpec,
};
