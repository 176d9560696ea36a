//! Cuntz-Krieger algebras `O_A`, described by their defining matrix, and the
//! integer invariants attached to them.
//!
//! `K_0(O_A) = Z^n / (I - A^t) Z^n` and `K_1(O_A) = ker(I - A^t)`. The
//! Bowen-Franks group `Z^n / (I - A) Z^n` is isomorphic to `K_0` and is the
//! form usually quoted for the underlying subshift.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{cokernel, FgAbelianGroup};
use crate::error::{Error, Line, Result};
use crate::intmat::IntMatrix;

/// A validated defining matrix for `O_A`: square, nonnegative, no zero row
/// and no zero column. `generators` counts the partial isometries `s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkDescriptor {
    matrix: IntMatrix,
    generators: usize,
}

impl CkDescriptor {
    pub fn new(a: &IntMatrix) -> Result<Self> {
        let n = a.require_square("CK descriptor")?;
        require_nonnegative(a)?;
        if let Some(i) = (0..n).find(|&i| a.row(i).iter().all(Zero::is_zero)) {
            return Err(Error::DegenerateRelations {
                line: Line::Row,
                index: i,
            });
        }
        if let Some(j) = (0..n).find(|&j| (0..n).all(|i| a.get(i, j).is_zero())) {
            return Err(Error::DegenerateRelations {
                line: Line::Column,
                index: j,
            });
        }
        Ok(CkDescriptor {
            matrix: a.clone(),
            generators: n,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn k0(&self) -> FgAbelianGroup {
        k0(&self.matrix).expect("descriptor is square")
    }

    pub fn k1(&self) -> FgAbelianGroup {
        k1(&self.matrix).expect("descriptor is square")
    }
}

pub fn make_descriptor(a: &IntMatrix) -> Result<CkDescriptor> {
    CkDescriptor::new(a)
}

fn require_nonnegative(a: &IntMatrix) -> Result<()> {
    match a.first_negative() {
        Some((row, col)) => Err(Error::NotNonnegative { row, col }),
        None => Ok(()),
    }
}

/// `coker(I - A^t)`. Defined for every square integer matrix.
pub fn k0(a: &IntMatrix) -> Result<FgAbelianGroup> {
    Ok(cokernel(&a.transpose().identity_minus()?))
}

/// `ker(I - A^t)`, a free group of rank equal to the nullity.
pub fn k1(a: &IntMatrix) -> Result<FgAbelianGroup> {
    let m = a.transpose().identity_minus()?;
    Ok(FgAbelianGroup::free(m.cols() - m.rank()))
}

/// `coker(I - A)`.
pub fn bowen_franks(a: &IntMatrix) -> Result<FgAbelianGroup> {
    Ok(cokernel(&a.identity_minus()?))
}

/// Strong connectivity of the graph with an arc `i -> j` whenever `a_ij > 0`.
pub fn is_irreducible(a: &IntMatrix) -> Result<bool> {
    let n = a.require_square("is_irreducible")?;
    require_nonnegative(a)?;
    let pattern = support(a);
    let transposed: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| pattern[j][i]).collect())
        .collect();
    Ok(reaches_all(&pattern) && reaches_all(&transposed))
}

fn support(a: &IntMatrix) -> Vec<Vec<bool>> {
    let n = a.rows();
    (0..n)
        .map(|i| (0..n).map(|j| !a.get(i, j).is_zero()).collect())
        .collect()
}

fn reaches_all(adj: &[Vec<bool>]) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (w, &arc) in adj[v].iter().enumerate() {
            if arc && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether some power of `a` is strictly positive. Powers are checked up to
/// the Wielandt bound `(n-1)^2 + 1`, past which a primitive matrix stays
/// positive. Only the zero pattern is tracked.
pub fn is_primitive(a: &IntMatrix) -> Result<bool> {
    let n = a.require_square("is_primitive")?;
    require_nonnegative(a)?;
    let base = support(a);
    let mut power = base.clone();
    let bound = (n - 1) * (n - 1) + 1;
    for _ in 0..bound {
        if power.iter().flatten().all(|&x| x) {
            return Ok(true);
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|l| power[i][l] && base[l][j]))
                    .collect()
            })
            .collect();
    }
    Ok(false)
}

/// Replaces a nonnegative integer matrix by the 0/1 adjacency matrix of its
/// arc graph. Arc `e` is followed by arc `f` when `head(e) = tail(f)`; arcs
/// are ordered by (tail, head, copy). 0/1 input is returned unchanged.
pub fn edge_dilation(a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.require_square("edge_dilation")?;
    require_nonnegative(a)?;
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    if a.is_zero_one() {
        return Ok(a.clone());
    }
    let total = a.entry_sum();
    let arcs_count = total
        .to_usize()
        .filter(|&c| c <= 1 << 14)
        .ok_or_else(|| Error::TooLarge(total.clone()))?;
    let mut arcs = Vec::with_capacity(arcs_count);
    for tail in 0..n {
        for head in 0..n {
            let copies = a.get(tail, head).to_usize().expect("bounded by total");
            arcs.extend(std::iter::repeat_n((tail, head), copies));
        }
    }
    Ok(IntMatrix::from_fn(arcs_count, arcs_count, |e, f| {
        BigInt::from(u8::from(arcs[e].1 == arcs[f].0))
    }))
}
