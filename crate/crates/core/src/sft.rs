//! Matrix-level machinery for subshifts of finite type.
//!
//! A subshift is represented only by its defining matrix. This module checks
//! and searches for the matrix relations behind strong shift equivalence,
//! shift equivalence and `GL_n(Z)` conjugacy, and reports the integer
//! invariants that rule those relations out.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ck::{bowen_franks, k0, k1};
use crate::error::{Error, Result};
use crate::gln::OrbitWalk;
use crate::intmat::IntMatrix;

/// Lag-`lag` shift equivalence data: `AR = RB`, `BS = SA`, `A^lag = RS`,
/// `SR = B^lag`, with `R`, `S` nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeWitness {
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub lag: u64,
}

impl SeWitness {
    pub fn new(r: IntMatrix, s: IntMatrix, lag: u64) -> Self {
        SeWitness { r, s, lag }
    }
}

/// An integer invariant that can separate two matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    /// `tr(A^power)`.
    Trace {
        power: u32,
    },
    K0,
    K1,
    BowenFranks,
    /// `coker(I + A)`, the Bowen-Franks group of `-A`.
    BowenFranksOfNegation,
    H1,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Trace { power } => write!(f, "tr(A^{power})"),
            Invariant::K0 => f.write_str("K0"),
            Invariant::K1 => f.write_str("K1"),
            Invariant::BowenFranks => f.write_str("BF"),
            Invariant::BowenFranksOfNegation => f.write_str("BF(-A)"),
            Invariant::H1 => f.write_str("H1"),
        }
    }
}

/// Two differing values of one invariant, rendered canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub invariant: Invariant,
    pub left: String,
    pub right: String,
}

impl Obstruction {
    fn compare<T: PartialEq + fmt::Display>(
        invariant: Invariant,
        left: T,
        right: T,
    ) -> Option<Self> {
        (left != right).then(|| Obstruction {
            invariant,
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.invariant, self.left, self.right)
    }
}

fn check_lag_shapes(
    op: &'static str,
    a: &IntMatrix,
    b: &IntMatrix,
    r: &IntMatrix,
    s: &IntMatrix,
) -> Result<()> {
    let m = a.require_square(op)?;
    let n = b.require_square(op)?;
    if r.shape() != (m, n) {
        return Err(Error::DimensionMismatch {
            op,
            left: a.shape(),
            right: r.shape(),
        });
    }
    if s.shape() != (n, m) {
        return Err(Error::DimensionMismatch {
            op,
            left: b.shape(),
            right: s.shape(),
        });
    }
    Ok(())
}

pub fn verify_se_witness(a: &IntMatrix, b: &IntMatrix, w: &SeWitness) -> Result<bool> {
    check_lag_shapes("verify_se_witness", a, b, &w.r, &w.s)?;
    if w.lag == 0 || !w.r.is_nonnegative() || !w.s.is_nonnegative() {
        return Ok(false);
    }
    let (r, s) = (&w.r, &w.s);
    Ok(a * r == r * b && b * s == s * a && a.pow(w.lag)? == r * s && s * r == b.pow(w.lag)?)
}

/// `a = rs` and `b = sr` with `r`, `s` nonnegative.
pub fn verify_elementary_sse(
    a: &IntMatrix,
    b: &IntMatrix,
    r: &IntMatrix,
    s: &IntMatrix,
) -> Result<bool> {
    check_lag_shapes("verify_elementary_sse", a, b, r, s)?;
    if !r.is_nonnegative() || !s.is_nonnegative() {
        return Ok(false);
    }
    Ok(*a == r * s && *b == s * r)
}

/// `[tr(a), tr(a^2), ..., tr(a^m)]`.
pub fn trace_sequence(a: &IntMatrix, m: usize) -> Result<Vec<BigInt>> {
    let n = a.require_square("trace_sequence")?;
    let mut power = IntMatrix::identity(n);
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        power = &power * a;
        out.push(power.trace()?);
    }
    Ok(out)
}

fn first_trace_difference(a: &IntMatrix, b: &IntMatrix, m: usize) -> Result<Option<Obstruction>> {
    let ta = trace_sequence(a, m)?;
    let tb = trace_sequence(b, m)?;
    Ok(ta
        .iter()
        .zip(&tb)
        .enumerate()
        .find(|(_, (x, y))| x != y)
        .map(|(k, (x, y))| Obstruction {
            invariant: Invariant::Trace {
                power: k as u32 + 1,
            },
            left: x.to_string(),
            right: y.to_string(),
        }))
}

/// An invariant of shift equivalence separating `a` and `b`, if one is
/// found. Shift equivalent matrices share their nonzero spectrum, hence all
/// traces of powers, and their `K_0` groups.
pub fn se_obstruction(a: &IntMatrix, b: &IntMatrix) -> Result<Option<Obstruction>> {
    let m = a
        .require_square("se_obstruction")?
        .max(b.require_square("se_obstruction")?);
    if let Some(o) = first_trace_difference(a, b, m)? {
        return Ok(Some(o));
    }
    Ok(Obstruction::compare(Invariant::K0, k0(a)?, k0(b)?))
}

/// An invariant of `GL_n(Z)` conjugacy separating `a` and `b`, if one is
/// found. Traces of powers up to `n` are tried first, then `K_0`, `K_1` and
/// `coker(I + A)`.
pub fn conjugacy_obstruction(a: &IntMatrix, b: &IntMatrix) -> Result<Option<Obstruction>> {
    let n = a.require_square("conjugacy_obstruction")?;
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "conjugacy_obstruction",
            left: a.shape(),
            right: b.shape(),
        });
    }
    if let Some(o) = first_trace_difference(a, b, n)? {
        return Ok(Some(o));
    }
    if let Some(o) = Obstruction::compare(Invariant::K0, k0(a)?, k0(b)?) {
        return Ok(Some(o));
    }
    if let Some(o) = Obstruction::compare(Invariant::K1, k1(a)?, k1(b)?) {
        return Ok(Some(o));
    }
    Ok(Obstruction::compare(
        Invariant::BowenFranksOfNegation,
        bowen_franks(&-a)?,
        bowen_franks(&-b)?,
    ))
}

/// Outcome of a bounded conjugacy search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `U` with `U a U^-1 = b`, verified.
    Conjugate(IntMatrix),
    /// An invariant proves that no conjugator exists.
    NotConjugate(Obstruction),
    /// Nothing found within `depth` generators; not a proof either way.
    Unknown { depth: usize },
}

/// Searches for `U` in `GL_n(Z)` with `U a U^-1 = b`, as a word of at most
/// `depth` elementary generators. The two conjugation orbits are grown
/// alternately from `a` and from `b` until they meet.
pub fn conjugacy_search(a: &IntMatrix, b: &IntMatrix, depth: usize) -> Result<Conjugacy> {
    for m in [a, b] {
        m.require_square("conjugacy_search")?;
        let det = m.det()?;
        if det.abs() != BigInt::from(1) {
            return Err(Error::NotUnimodular { det });
        }
    }
    if let Some(o) = conjugacy_obstruction(a, b)? {
        return Ok(Conjugacy::NotConjugate(o));
    }
    Ok(match meet_in_the_middle(a, b, depth) {
        Some(u) => Conjugacy::Conjugate(u),
        None => Conjugacy::Unknown { depth },
    })
}

fn meet_in_the_middle(a: &IntMatrix, b: &IntMatrix, depth: usize) -> Option<IntMatrix> {
    let mut forward = OrbitWalk::new(a);
    let mut backward = OrbitWalk::new(b);
    if let Some(u) = joined(&forward, &backward, b) {
        return Some(u);
    }
    while forward.depth + backward.depth < depth {
        let grow_forward = match (forward.exhausted(), backward.exhausted()) {
            (true, true) => return None,
            (true, false) => false,
            (false, true) => true,
            (false, false) => forward.depth <= backward.depth,
        };
        let (grown, other) = if grow_forward {
            (&mut forward, &backward)
        } else {
            (&mut backward, &forward)
        };
        for state in grown.step() {
            if other.seen.contains_key(&state) {
                let (f, bw) = (&forward.seen[&state], &backward.seen[&state]);
                let u = &bw.conjugator_inv * &f.conjugator;
                if &u * a == b * &u {
                    return Some(u);
                }
            }
        }
    }
    None
}

fn joined(forward: &OrbitWalk, backward: &OrbitWalk, b: &IntMatrix) -> Option<IntMatrix> {
    let f = forward.seen.get(b)?;
    let bw = &backward.seen[b];
    Some(&bw.conjugator_inv * &f.conjugator)
}

/// Cap on the number of bounded intertwiners collected per side; beyond it
/// the search gives up on completeness.
const CANDIDATE_LIMIT: usize = 200_000;

/// Searches for a shift equivalence witness with lag `1..=max_lag` and
/// entries in `0..=entry_bound`. Candidates are taken lag first, then `R`,
/// then `S`, each ordered by entry sum and then row-major lexicographically;
/// the first verified one is returned. `None` proves nothing.
pub fn search_se_witness(
    a: &IntMatrix,
    b: &IntMatrix,
    max_lag: u64,
    entry_bound: u64,
) -> Result<Option<SeWitness>> {
    a.require_square("search_se_witness")?;
    b.require_square("search_se_witness")?;
    for m in [a, b] {
        if let Some((row, col)) = m.first_negative() {
            return Err(Error::NotNonnegative { row, col });
        }
    }
    let bound = BigInt::from(entry_bound);
    let rs = bounded_intertwiners(a, b, &bound);
    if rs.is_empty() {
        return Ok(None);
    }
    let ss = bounded_intertwiners(b, a, &bound);
    for lag in 1..=max_lag {
        let ak = a.pow(lag)?;
        let bk = b.pow(lag)?;
        for r in &rs {
            for s in &ss {
                if r * s == ak && s * r == bk {
                    return Ok(Some(SeWitness::new(r.clone(), s.clone(), lag)));
                }
            }
        }
    }
    Ok(None)
}

/// All `X` with `left X = X right` and entries in `0..=bound`, sorted by
/// entry sum then row-major.
pub(crate) fn bounded_intertwiners(
    left: &IntMatrix,
    right: &IntMatrix,
    bound: &BigInt,
) -> Vec<IntMatrix> {
    let (rows, cols) = (left.rows(), right.rows());
    let width = rows * cols;
    // vec(X) is row-major; row (i, j) of the operator encodes (left X - X right)_ij
    let op = IntMatrix::from_fn(width, width, |row, col| {
        let (i, j) = (row / cols, row % cols);
        let (p, q) = (col / cols, col % cols);
        let mut v = BigInt::zero();
        if q == j {
            v += left.get(i, p);
        }
        if p == i {
            v -= right.get(q, j);
        }
        v
    });
    let basis = echelon(op.kernel_basis());
    let mut found = Vec::new();
    enumerate_box(&basis, 0, vec![BigInt::zero(); width], bound, &mut found);
    let mut mats: Vec<IntMatrix> = found
        .into_iter()
        .map(|v| IntMatrix::new(rows, cols, v).expect("shape"))
        .collect();
    mats.sort_by(|x, y| {
        x.entry_sum()
            .cmp(&y.entry_sum())
            .then_with(|| x.entries().cmp(y.entries()))
    });
    mats
}

/// Integer row echelon form of a lattice basis: each returned row has a
/// positive leading entry at its pivot column, pivots strictly increase, and
/// the rows span the same lattice.
fn echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<(usize, Vec<BigInt>)> {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..width {
        while let Some(p) = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(_, r)| r[col].abs())
            .map(|(i, _)| i)
        {
            let pivot_row = rows[p].clone();
            let mut reduced = true;
            for (i, row) in rows.iter_mut().enumerate() {
                if i == p || row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&pivot_row[col]);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                reduced &= row[col].is_zero();
            }
            if reduced {
                let mut row = rows.swap_remove(p);
                if row[col].is_negative() {
                    row.iter_mut().for_each(|x| *x = -&*x);
                }
                out.push((col, row));
                break;
            }
        }
    }
    out
}

fn enumerate_box(
    basis: &[(usize, Vec<BigInt>)],
    level: usize,
    partial: Vec<BigInt>,
    bound: &BigInt,
    out: &mut Vec<Vec<BigInt>>,
) {
    if out.len() >= CANDIDATE_LIMIT {
        return;
    }
    let Some((pivot, row)) = basis.get(level) else {
        out.push(partial);
        return;
    };
    let lead = &row[*pivot];
    let t = &partial[*pivot];
    let lo = (-t).div_ceil(lead);
    let hi = (bound - t).div_floor(lead);
    let end = basis.get(level + 1).map_or(partial.len(), |(q, _)| *q);
    let mut c = lo;
    while c <= hi {
        let x: Vec<BigInt> = partial.iter().zip(row).map(|(p, r)| p + &c * r).collect();
        // coordinates before the next pivot are final from here on
        if x[*pivot..end]
            .iter()
            .all(|v| !v.is_negative() && v <= bound)
        {
            enumerate_box(basis, level + 1, x, bound, out);
        }
        c += 1;
    }
}
