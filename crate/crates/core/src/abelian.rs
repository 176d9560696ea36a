//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is stored as `Z^r + Z_{d1} + ... + Z_{dk}` with every `d_i >= 2`
//! and `d_i | d_{i+1}`. This form is canonical, so isomorphism is equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intmat::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z_m`, with `Z_0 = Z` and `Z_1 = 0`.
    pub fn cyclic(m: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [m.into()])
    }

    /// `Z^free_rank` plus one cyclic summand `Z_m` per listed order, in any
    /// order. Signs are ignored, zero orders add free rank and unit orders
    /// vanish.
    pub fn from_cyclic_orders(free_rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = free_rank;
        let mut torsion = Vec::new();
        for m in orders {
            let m = m.abs();
            if m.is_zero() {
                rank += 1;
            } else if !m.is_one() {
                torsion.push(m);
            }
        }
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: divisor_chain(torsion),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.invariant_factors
                .iter()
                .chain(&other.invariant_factors)
                .cloned(),
        )
    }

    pub fn is_isomorphic(&self, other: &FgAbelianGroup) -> bool {
        self == other
    }
}

/// Turns a list of cyclic orders (each >= 2) into an invariant-factor chain
/// by repeatedly replacing pairs with their gcd and lcm.
fn divisor_chain(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    orders.sort();
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            let (g, l) = {
                let (a, b) = (&orders[i], &orders[j]);
                let g = a.gcd(b);
                let l = a / &g * b;
                (g, l)
            };
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

/// Quotient of `Z^rows` by the column span of `a`.
pub fn cokernel(a: &IntMatrix) -> FgAbelianGroup {
    let snf = a.smith();
    let diagonal = snf.diagonal();
    let rank = snf.rank();
    FgAbelianGroup::from_cyclic_orders(a.rows() - rank, diagonal.into_iter().take(rank))
}

pub fn is_isomorphic(g: &FgAbelianGroup, h: &FgAbelianGroup) -> bool {
    g.is_isomorphic(h)
}

pub fn direct_sum(g: &FgAbelianGroup, h: &FgAbelianGroup) -> FgAbelianGroup {
    g.direct_sum(h)
}

pub fn format_group(g: &FgAbelianGroup) -> String {
    g.to_string()
}

/// `Z^2 + Z_2 + Z_4`; the trivial group is `0`.
impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse group summand {0:?}")]
pub struct ParseGroupError(pub String);

/// Accepts the [`Display`](fmt::Display) rendering; summands may come in any
/// order and need not form a divisor chain.
impl FromStr for FgAbelianGroup {
    type Err = ParseGroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            let err = || ParseGroupError(part.to_string());
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| err())?;
            } else if let Some(m) = part.strip_prefix("Z_") {
                let m: BigInt = m.parse().map_err(|_| err())?;
                if m.is_negative() {
                    return Err(err());
                }
                orders.push(m);
            } else {
                return Err(err());
            }
        }
        Ok(Self::from_cyclic_orders(rank, orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn group(rank: usize, orders: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic_orders(rank, orders.iter().map(|&x| BigInt::from(x)))
    }

    /// Number of solutions of `d * x = 0`; for every `d` these counts pin
    /// down a finite abelian group up to isomorphism.
    fn torsion_counts(orders: &[i64], up_to: i64) -> Vec<i64> {
        (1..=up_to)
            .map(|d| orders.iter().map(|&m| d.gcd(&m)).product())
            .collect()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&IntMatrix::zeros(2, 2)), FgAbelianGroup::free(2));
        assert_eq!(cokernel(&m(&[&[-4, -2], &[-2, 0]])), group(0, &[2, 2]));
        assert_eq!(cokernel(&m(&[&[-4, -4], &[-1, 0]])), group(0, &[4]));
        // non-square: Z^3 modulo one column
        assert_eq!(cokernel(&m(&[&[2], &[4], &[0]])), group(2, &[2]));
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!is_isomorphic(&group(0, &[2, 2]), &group(0, &[4])));
        assert!(is_isomorphic(
            &FgAbelianGroup::free(1),
            &FgAbelianGroup::free(1)
        ));
        assert!(is_isomorphic(&group(0, &[2, 6]), &group(0, &[6, 2])));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(
            direct_sum(&FgAbelianGroup::free(1), &group(1, &[3])),
            group(2, &[3])
        );
        assert_eq!(direct_sum(&group(0, &[2]), &group(0, &[3])), group(0, &[6]));
        assert_eq!(group(0, &[6]).invariant_factors(), &[BigInt::from(6)]);
        let g = group(1, &[2, 4]);
        assert_eq!(direct_sum(&FgAbelianGroup::trivial(), &g), g);
    }

    #[test]
    fn degenerate_cyclic_orders() {
        assert_eq!(FgAbelianGroup::cyclic(0), FgAbelianGroup::free(1));
        assert_eq!(FgAbelianGroup::cyclic(1), FgAbelianGroup::trivial());
        assert_eq!(FgAbelianGroup::cyclic(-4), FgAbelianGroup::cyclic(4));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_group(&group(2, &[3])), "Z^2 + Z_3");
        assert_eq!(format_group(&FgAbelianGroup::trivial()), "0");
        assert_eq!(format_group(&group(0, &[4])), "Z_4");
        assert_eq!(format_group(&group(1, &[2, 2])), "Z + Z_2 + Z_2");
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "Z^2 + Z_3".parse::<FgAbelianGroup>().unwrap(),
            group(2, &[3])
        );
        assert_eq!("Z_3+Z_2".parse::<FgAbelianGroup>().unwrap(), group(0, &[6]));
        assert_eq!(
            "0".parse::<FgAbelianGroup>().unwrap(),
            FgAbelianGroup::trivial()
        );
        assert!("Q".parse::<FgAbelianGroup>().is_err());
        assert!("Z_-2".parse::<FgAbelianGroup>().is_err());
    }

    fn square(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        (1..=max).prop_flat_map(move |n| {
            prop::collection::vec(-bound..=bound, n * n).prop_map(move |v| {
                IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    fn small_group() -> impl Strategy<Value = FgAbelianGroup> {
        (0usize..3, prop::collection::vec(0i64..13, 0..4)).prop_map(|(r, o)| group(r, &o))
    }

    proptest! {
        #[test]
        fn direct_sum_matches_torsion_count_oracle(orders in prop::collection::vec(2i64..30, 0..5)) {
            let g = group(0, &orders);
            let stored: Vec<i64> = g.invariant_factors().iter().map(|d| i64::try_from(d).unwrap()).collect();
            for w in stored.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(stored.iter().all(|&d| d >= 2));
            prop_assert_eq!(torsion_counts(&stored, 60), torsion_counts(&orders, 60));
        }

        #[test]
        fn direct_sum_is_commutative_and_associative(a in small_group(), b in small_group(), c in small_group()) {
            prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
            prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        }

        #[test]
        fn cokernel_is_transpose_invariant(a in square(5, 12)) {
            prop_assert_eq!(cokernel(&a), cokernel(&a.transpose()));
        }

        #[test]
        fn nonsingular_cokernel_is_finite_of_det_order(a in square(5, 12)) {
            let det = a.det().unwrap();
            prop_assume!(!det.is_zero());
            let g = cokernel(&a);
            prop_assert!(g.is_finite());
            prop_assert_eq!(g.order().unwrap(), det.abs());
        }

        #[test]
        fn display_round_trips(g in small_group()) {
            prop_assert_eq!(g.to_string().parse::<FgAbelianGroup>().unwrap(), g);
        }
    }
}
