//! Representations of finite skeletal 2-groups on finite measurable categories.
//!
//! Measures are exact rationals, so support and null-set reasoning never
//! involves floating point; only the complex matrices carried by natural
//! transformations and intertwiners are approximate.

pub mod action;
pub mod fixtures;
pub mod group;
pub mod grouprep;
pub mod laws;
pub mod linalg;
pub mod meas2cat;
pub mod measure;
pub mod rep_theory;
pub mod scalar;
pub mod schema;
pub mod two_group;
