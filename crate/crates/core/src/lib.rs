//! Exact Fibonomial calculus and the cobweb poset.
//!
//! * [`fibcalc`]: Fibonacci numbers, F-factorials and Fibonomial coefficients.
//! * [`poset`]: the graded poset whose level `s` has `F_s` elements.
//! * [`zeta`]: its incidence matrix.
//! * [`chains`]: maximal chain counts, by formula and by enumeration.
//! * [`cli`]: the `cobweb` command line.

pub mod chains;
pub mod cli;
pub mod fibcalc;
pub mod poset;
pub mod zeta;

pub use chains::{
    count_from_root_formula, count_layer_chains_formula, enumerate_from_root,
    enumerate_layer_chains, induced_copy_count, obs3_quotient, verify_observation, ChainError,
    CountMode, Enumerator, LayerSpec, Observation, VerificationReport,
};
pub use fibcalc::{
    falling_f_factorial, fib, fib_factorial, fibonomial, fibonomial_factorial_ratio,
    fibonomial_row, BigCount, FIndex,
};
pub use poset::{build_cobweb, CobwebPoset, PosetError, Vertex};
pub use zeta::{staircase_check, zeta_matrix, IncidenceMatrix, ZetaError};
