//! Topologies generated by finite pseudonorm families.

mod compare;
mod construct;
mod spec;

pub use compare::{
    compare_on, family_equal, ideal_equivalence_check, ComparisonVerdict, DominanceRow, FamilyEquality, NetEvidence,
    Relation,
};
pub use construct::{
    hausdorff_witness, product_collection, product_topology, tau_prime, unbounded_topology, HausdorffWitness,
};
pub use spec::{CollectionSpec, Provenance, Sufficiency, TopologySpec};
