use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// each nonzero entry dividing the next, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    u: IntMatrix,
    d: IntMatrix,
    v: IntMatrix,
}

impl SmithDecomposition {
    pub fn u(&self) -> &IntMatrix {
        &self.u
    }

    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    pub fn v(&self) -> &IntMatrix {
        &self.v
    }

    pub fn into_parts(self) -> (IntMatrix, IntMatrix, IntMatrix) {
        (self.u, self.d, self.v)
    }

    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut().chain(self.v.iter_mut()) {
                row.swap(i, j);
            }
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[source].clone();
            for (x, s) in m[target].iter_mut().zip(&src) {
                *x += factor * s;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let s = row[source].clone();
                row[target] += factor * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    /// First entry of minimal nonzero absolute value in the trailing block
    /// starting at `(k, k)`, scanning row-major.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (i, row) in self.a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                let mag = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                    best = Some((i, j, mag));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub(super) fn smith_normal_form(matrix: &IntMatrix) -> SmithDecomposition {
    let (m, n) = matrix.shape();
    let mut w = Work {
        a: matrix.to_rows(),
        u: IntMatrix::identity(m).to_rows(),
        v: IntMatrix::identity(n).to_rows(),
    };

    'diag: for k in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = w.pivot(k) else {
                break 'diag;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);

            let mut remainder = false;
            for i in k + 1..m {
                if w.a[i][k].is_zero() {
                    continue;
                }
                let q = w.a[i][k].div_floor(&w.a[k][k]);
                w.add_row(i, k, &-q);
                remainder |= !w.a[i][k].is_zero();
            }
            for j in k + 1..n {
                if w.a[k][j].is_zero() {
                    continue;
                }
                let q = w.a[k][j].div_floor(&w.a[k][k]);
                w.add_col(j, k, &-q);
                remainder |= !w.a[k][j].is_zero();
            }
            if remainder {
                continue;
            }

            // row k and column k are clear; enforce divisibility of the rest
            let pivot = w.a[k][k].clone();
            let offender =
                (k + 1..m).find(|&i| w.a[i][k + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(k, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[k][k].is_negative() {
            w.negate_row(k);
        }
    }

    SmithDecomposition {
        u: IntMatrix::from_nested(w.u),
        d: IntMatrix::from_nested(w.a),
        v: IntMatrix::from_nested(w.v),
    }
}
