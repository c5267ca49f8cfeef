//! Coded reversible embeddings of multi-output Boolean functions.
//!
//! A non-reversible function `f: B^n -> B^m` has to be embedded into a
//! bijection before it can be realized as a sub-circuit of a quantum oracle.
//! This crate computes three such embeddings and their qubit counts:
//!
//! * Bennett: `(x, g) -> (x, g xor f(x))` on `n + m` lines.
//! * Minimal: `max(n, m + ceil(log2 mu(p1)))` lines, where `p1` is the most
//!   frequent output pattern.
//! * Coded: every output pattern is replaced by a prefix-free codeword taken
//!   from a Pseudo-Huffman tree, which always needs `n` or `n + 1` lines.
//!
//! The pipeline is `pla` (parsing) -> `count` (output-pattern histogram) ->
//! `coder` (tree and codebook) -> `embed` (bijections and widths) ->
//! `report` (batch analysis and CSV).

pub mod bits;
pub mod coder;
pub mod count;
mod error;
pub mod embed;
pub mod function;
pub mod pla;
pub mod report;
pub mod selftest;

pub use bits::BitPattern;
pub use coder::{
    assign_codes, build_ph_tree, ceil_log2, root_weight_bound, verify_theorem_instance, CodeBook,
    Codeword, PhNode, PhTree, RootWeight, TheoremInstance, TheoremReport,
};
pub use count::{count_cofactor, count_enumerate, histogram, BackendKind, CountBackend};
pub use embed::{
    embed_bennett, embed_coded, embed_minimal, verify_embedding, width_bennett, width_encoded,
    width_minimal, EmbeddingSpec, Mapping, Scheme, VerificationReport,
};
pub use error::{Error, Result};
pub use function::{BooleanFunction, Cube, Literal, OutputHistogram, Uncovered};
pub use report::{analyze_file, analyze_function, report_csv, Analysis, RunConfig, WidthReport};
