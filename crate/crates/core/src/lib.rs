//! Exact arithmetic for additive p-sequences (each term the sum of the p
//! previous ones), their golden ratios, sum identities, Q-matrices,
//! generating functions and the generalized breeding problem.

pub mod breedsim;
pub mod charpoly;
pub mod error;
pub mod genfunc;
pub mod goldprops;
pub mod qmatrix;
pub mod seqcore;
pub mod sums;
pub mod tables;

pub use error::{Error, Result};

/// Fixed-point rendering of a float that never prints a negative zero.
pub fn format_fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
