//! Exact integer invariants of torus bundles and of the Cuntz-Krieger
//! algebras attached to their monodromy matrices.
//!
//! Everything here works over arbitrary-precision integers:
//!
//! * [`intmat`]: dense integer matrices, Smith normal form, determinants,
//!   characteristic polynomials and integer kernels.
//! * [`abelian`]: finitely generated abelian groups in invariant-factor form.
//! * [`ck`]: K-theory of `O_A`, Bowen-Franks groups, irreducibility and
//!   primitivity, edge dilation of nonnegative matrices.
//! * [`bundle`]: mapping tori of `GL_n(Z)` monodromies, their first homology,
//!   Alexander polynomial, and comparison verdicts.
//! * [`sft`]: shift equivalence witnesses, elementary strong shift
//!   equivalences and bounded `GL_n(Z)` conjugacy search.
//! * [`gln`]: elementary generators of `GL_n(Z)` and random words in them.

pub mod abelian;
pub mod bundle;
pub mod ck;
mod error;
pub mod gln;
pub mod intmat;
pub mod sft;

pub use abelian::FgAbelianGroup;
pub use bundle::{ComparisonVerdict, FunctorImage, NormalizedMonodromy, Outcome, TorusBundle};
pub use ck::CkDescriptor;
pub use error::{Error, Line, Result};
pub use intmat::{IntMatrix, IntPolynomial, SmithDecomposition};
pub use sft::{Conjugacy, Invariant, Obstruction, SeWitness};

pub use num_bigint::BigInt;
