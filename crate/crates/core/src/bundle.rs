//! Torus bundles `M_A = T^n x [0, 1] / (x, 0) ~ (A x, 1)` for monodromy
//! `A` in `GL_n(Z)`, and the invariants that tell them apart.
//!
//! The Cuntz-Krieger functor sends `M_A` to `O_A`. Its image is recorded
//! through `K_0(O_A)` and `K_1(O_A)`, and `H_1(M_A) = Z + coker(A - I)`
//! is isomorphic to `Z + K_0(O_A)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::abelian::{cokernel, FgAbelianGroup};
use crate::ck::{k0, k1};
use crate::error::{Error, Result};
use crate::gln::OrbitWalk;
use crate::intmat::{IntMatrix, IntPolynomial};
use crate::sft::{conjugacy_search, Conjugacy, Invariant, Obstruction};

/// A torus bundle over the circle, given by its monodromy in `GL_n(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusBundle {
    monodromy: IntMatrix,
}

impl TorusBundle {
    pub fn new(monodromy: IntMatrix) -> Result<Self> {
        monodromy.require_square("torus bundle")?;
        let det = monodromy.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det });
        }
        Ok(TorusBundle { monodromy })
    }

    pub fn monodromy(&self) -> &IntMatrix {
        &self.monodromy
    }

    /// Dimension of the fiber torus; the bundle itself has dimension `n + 1`.
    pub fn fiber_dimension(&self) -> usize {
        self.monodromy.rows()
    }

    /// Flips the sign of the monodromy when its trace is negative. Trace
    /// zero keeps the given sign.
    pub fn normalize(&self) -> NormalizedMonodromy {
        let trace = self.monodromy.trace().expect("square");
        if trace.is_negative() {
            NormalizedMonodromy {
                matrix: -&self.monodromy,
                flipped: true,
            }
        } else {
            NormalizedMonodromy {
                matrix: self.monodromy.clone(),
                flipped: false,
            }
        }
    }

    /// Looks for a conjugate of the normalized monodromy with only
    /// nonnegative entries, trying conjugators of up to `depth` elementary
    /// generators. Returns `(B, B N B^-1)`. `None` proves nothing.
    pub fn nonnegative_representative(&self, depth: usize) -> Option<(IntMatrix, IntMatrix)> {
        let start = self.normalize().matrix;
        if start.is_nonnegative() {
            let n = start.rows();
            return Some((IntMatrix::identity(n), start));
        }
        let mut walk = OrbitWalk::new(&start);
        while walk.depth < depth && !walk.exhausted() {
            if let Some(state) = walk.step().into_iter().find(IntMatrix::is_nonnegative) {
                let b = walk.seen[&state].conjugator.clone();
                return Some((b, state));
            }
        }
        None
    }

    /// `H_1(M_A; Z) = Z + coker(A - I)`.
    pub fn h1(&self) -> FgAbelianGroup {
        let shifted = -&self.monodromy.identity_minus().expect("square");
        FgAbelianGroup::free(1).direct_sum(&cokernel(&shifted))
    }

    /// `det(tI - A)`.
    pub fn alexander_polynomial(&self) -> IntPolynomial {
        self.monodromy.charpoly().expect("square")
    }

    /// The object map of the Cuntz-Krieger functor.
    pub fn ck_functor(&self) -> FunctorImage {
        let normalized = self.normalize();
        FunctorImage {
            k0: k0(&self.monodromy).expect("square"),
            k1: k1(&self.monodromy).expect("square"),
            normalized_k0: k0(&normalized.matrix).expect("square"),
            normalized_k1: k1(&normalized.matrix).expect("square"),
            normalized,
        }
    }

    /// Whether `H_1(M_A)` and `Z + K_0(O_A)` agree.
    pub fn homology_matches_k0(&self) -> bool {
        let image = self.ck_functor();
        self.h1()
            .is_isomorphic(&FgAbelianGroup::free(1).direct_sum(&image.k0))
    }
}

pub fn make_bundle(a: &IntMatrix) -> Result<TorusBundle> {
    TorusBundle::new(a.clone())
}

/// A monodromy with nonnegative trace, `matrix = -original` iff `flipped`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMonodromy {
    pub matrix: IntMatrix,
    pub flipped: bool,
}

/// `K_0` and `K_1` of `O_A` for the monodromy `A`, together with the values
/// on the sign-normalized monodromy. The two differ only when the trace is
/// negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorImage {
    pub normalized: NormalizedMonodromy,
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    pub normalized_k0: FgAbelianGroup,
    pub normalized_k1: FgAbelianGroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Distinct,
    Homeomorphic,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Distinct => "Distinct",
            Outcome::Homeomorphic => "Homeomorphic",
            Outcome::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    /// A homeomorphism invariant takes different values.
    Distinct(Obstruction),
    /// `conjugator * A * conjugator^-1 = A'`.
    Homeomorphic { conjugator: IntMatrix },
    /// No certificate either way. `obstruction` is set when the monodromies
    /// are provably not conjugate, which alone does not separate bundles.
    Inconclusive {
        depth: usize,
        obstruction: Option<Obstruction>,
    },
}

impl ComparisonVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            ComparisonVerdict::Distinct(_) => Outcome::Distinct,
            ComparisonVerdict::Homeomorphic { .. } => Outcome::Homeomorphic,
            ComparisonVerdict::Inconclusive { .. } => Outcome::Inconclusive,
        }
    }

    pub fn witness(&self) -> String {
        match self {
            ComparisonVerdict::Distinct(o) => o.to_string(),
            ComparisonVerdict::Homeomorphic { conjugator } => {
                let rows: Vec<String> = conjugator
                    .to_rows()
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(BigInt::to_string).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                format!("conjugator [{}]", rows.join(", "))
            }
            ComparisonVerdict::Inconclusive { depth, obstruction } => match obstruction {
                Some(o) => {
                    format!("monodromies not conjugate ({o}); no homeomorphism invariant differs")
                }
                None => format!("no conjugator within depth {depth}; no invariant differs"),
            },
        }
    }
}

/// K-theory of the functor images is compared first, then first homology;
/// a differing value means distinct bundles. Otherwise a bounded conjugacy
/// search between the monodromies may certify a homeomorphism.
pub fn compare_bundles(
    b1: &TorusBundle,
    b2: &TorusBundle,
    depth: usize,
) -> Result<ComparisonVerdict> {
    if b1.fiber_dimension() != b2.fiber_dimension() {
        return Err(Error::DimensionMismatch {
            op: "compare_bundles",
            left: b1.monodromy.shape(),
            right: b2.monodromy.shape(),
        });
    }
    let (f1, f2) = (b1.ck_functor(), b2.ck_functor());
    let candidates = [
        (Invariant::K0, f1.k0, f2.k0),
        (Invariant::K1, f1.k1, f2.k1),
        (Invariant::H1, b1.h1(), b2.h1()),
    ];
    for (invariant, left, right) in candidates {
        if left != right {
            return Ok(ComparisonVerdict::Distinct(Obstruction {
                invariant,
                left: left.to_string(),
                right: right.to_string(),
            }));
        }
    }
    Ok(
        match conjugacy_search(&b1.monodromy, &b2.monodromy, depth)? {
            Conjugacy::Conjugate(conjugator) => ComparisonVerdict::Homeomorphic { conjugator },
            Conjugacy::NotConjugate(o) => ComparisonVerdict::Inconclusive {
                depth,
                obstruction: Some(o),
            },
            Conjugacy::Unknown { depth } => ComparisonVerdict::Inconclusive {
                depth,
                obstruction: None,
            },
        },
    )
}
