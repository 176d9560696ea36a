use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPolynomial};

/// Bareiss elimination. Every division is exact, so no rationals appear.
pub(super) fn bareiss(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    let mut m = a.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Faddeev-LeVerrier recurrence. The division by `k` is exact for integer
/// input because every coefficient of the characteristic polynomial is an
/// integer.
pub(super) fn charpoly(a: &IntMatrix) -> IntPolynomial {
    let n = a.rows();
    // coeffs[i] is the coefficient of t^i
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let shifted = IntMatrix::identity(n).scale(&coeffs[n - k + 1]);
        m = &(a * &m) + &shifted;
        let am = a * &m;
        let tr = am.trace().expect("square");
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    IntPolynomial::new(coeffs)
}
