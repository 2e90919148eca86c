//! Positive dual pairs and the pseudonorm families they induce.

mod ops;
mod pairing;

pub use ops::{
    absolute_weak_topology, check_positive_dual_pair, dual_pseudonorm, ideal_invariance_check, uaw_topology,
    Interpretation,
};
pub use pairing::{DualPair, Functional, Pairing};
