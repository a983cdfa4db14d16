//! Structural deciders with replayable certificates, and positive
//! Z3-connectivity proofs.

mod bull;
mod cert;
mod decide;
mod proof;
mod structure;

pub use bull::{
    bull_grow, bull_grow_named, bull_pairs, bull_reduce, bull_reduce_traced, bull_variants,
    BullPair, GrowSite,
};
pub use cert::{replay_steps, verify_certificate, CertBase, Certificate, Step};
pub use decide::{
    crystal_3nzf, crystal_z3, decide_3nzf, decide_z3, few_3vertices_shortcut, trace_3nzf, trace_z3,
    Trace,
};
pub use proof::{
    contract_rule, verify_z3proof, z3_prove, z3_prove_with, ProofBudget, Rule, Z3Proof,
};
pub use structure::{fully_2summed_odd_wheel, triangularly_connected, WheelWitness};
