//! Exact computer algebra for symmetric tensor powers of based commutative
//! algebras: the orbit-sum basis, the partition-indexed syzygies and
//! normal-form rewriting, trace-identity verification, and the full worked
//! S4-on-pairs invariant ring with its graph-isomorphism fingerprints.

pub mod algebra;
pub mod error;
pub mod matrix;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod s4;
pub mod syzygy;
pub mod trace;
pub mod var;

pub use algebra::{AlgElement, BasedAlgebra, BasisWord, StructureTable, TensorPoly, WordMultiset};
pub use error::{Error, Result};
pub use matrix::RatMatrix;
pub use mono::Mono;
pub use parse::{parse_poly, VarContext};
pub use poly::Poly;
pub use syzygy::{
    kernel_member, min_generator_report, phi, psi, reduce_long_word, rewrite_product,
    set_partitions, DegreeReport, FPoly, SetPartition,
};
pub use trace::{
    diagonal_embedding, fundamental_identity, fundamental_identity_rat, gamma_evaluation_check,
    generic_matrices,
    random_rat_matrix, trace_word, verify_psi_by_substitution, MatrixPoly, Perm,
};
pub use rat::{rat, rint, Rat};
pub use var::Var;
