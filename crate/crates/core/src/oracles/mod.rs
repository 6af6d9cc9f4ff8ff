//! Independent brute-force solvers and identity checks used to certify the reductions.

mod decode;
mod identities;
mod matching;
mod report;
mod verify;

pub use decode::{
    classify_deep_hole, ml_decode_bruteforce, ml_decode_enumerate, Decoded, ENUMERATION_LIMIT_LOG2,
};
pub use identities::{
    det_closed_form, matching_matrix, scalers_by_definition, DEFINITION_MAX_Q_LOG2,
};
pub use matching::{block_solution_exhaustive, solve_3dm, subset_sum_witness, BLOCK_SEARCH_MAX_T};
pub use report::{Check, Report, Status};
pub use verify::{verify_instance, verify_reduction};
