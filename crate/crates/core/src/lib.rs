//! Exact certification of hard Lefschetz and Hodge-Riemann properties for
//! complete intersections of semi-positive (1,1)-forms on `C^n`, together
//! with the mixed discriminants, numerical-dimension rank functions and
//! discrete polymatroids that go with them.
//!
//! All arithmetic is over the Gaussian rationals; nothing here touches
//! floating point.

pub mod certify;
pub mod discriminant;
pub mod error;
pub mod exterior;
pub mod generator;
pub mod hermitian;
pub mod matrix;
pub mod polymatroid;
pub mod scalar;
pub mod serde_util;
pub mod subsets;

pub use certify::{criterion_hl, direct_hl, hr_certify, Certificate, HlInstance, Verdict};
pub use discriminant::{intersection_number, mixed_discriminant, MatrixTuple};
pub use error::{Error, Result};
pub use exterior::{form_from_matrix, multiplication_matrix, wedge_many, MultiIndex, PQForm};
pub use generator::{generate_psd, GeneratorSpec, PsdGenerator};
pub use hermitian::{Definiteness, HermitianForm, HermitianMatrix, Signature};
pub use matrix::Matrix;
pub use polymatroid::{check_axioms, enumerate_points, hl_support, rank_from_matrices, RankFunction};
pub use scalar::{GaussianRational, Rational};
