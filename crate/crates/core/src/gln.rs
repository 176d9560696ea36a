//! Elementary generators of `GL_n(Z)`, words in them, and the breadth-first
//! conjugation orbit walks used by the bounded searches.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::intmat::IntMatrix;

/// An elementary matrix together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub matrix: IntMatrix,
    pub inverse: IntMatrix,
}

/// Transvections `I + E_ij` and `I - E_ij` for `i != j`, sign changes of one
/// coordinate, and transpositions of two coordinates, in that order.
pub fn elementary_generators(n: usize) -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let plus = transvection(n, i, j, 1);
            let minus = transvection(n, i, j, -1);
            gens.push(Generator {
                matrix: plus.clone(),
                inverse: minus.clone(),
            });
            gens.push(Generator {
                matrix: minus,
                inverse: plus,
            });
        }
    }
    for i in 0..n {
        let mut d = IntMatrix::identity(n).to_rows();
        d[i][i] = -BigInt::one();
        let d = IntMatrix::from_rows(d).expect("square");
        gens.push(Generator {
            matrix: d.clone(),
            inverse: d,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = IntMatrix::from_fn(n, n, |r, c| {
                let src = if r == i {
                    j
                } else if r == j {
                    i
                } else {
                    r
                };
                if c == src {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            });
            gens.push(Generator {
                matrix: p.clone(),
                inverse: p,
            });
        }
    }
    gens
}

fn transvection(n: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    let mut t = IntMatrix::identity(n).to_rows();
    t[i][j] = BigInt::from(c);
    IntMatrix::from_rows(t).expect("square")
}

/// Product of the generators at `indices` (left to right) and its inverse.
pub fn word(n: usize, indices: &[usize]) -> (IntMatrix, IntMatrix) {
    let gens = elementary_generators(n);
    let mut m = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    for &k in indices {
        let g = &gens[k % gens.len()];
        m = &m * &g.matrix;
        inv = &g.inverse * &inv;
    }
    (m, inv)
}

/// A random word of exactly `len` elementary generators, with its inverse.
pub fn random_word<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let count = elementary_generators(n).len();
    let indices: Vec<usize> = (0..len).map(|_| rng.gen_range(0..count)).collect();
    word(n, &indices)
}

/// Random nonnegative matrix with entries in `0..=max_entry`.
pub fn random_nonnegative<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    max_entry: u32,
    rng: &mut R,
) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.gen_range(0..=max_entry))
    })
}

/// `g * m * g^-1`.
pub fn conjugate(m: &IntMatrix, g: &IntMatrix, g_inv: &IntMatrix) -> IntMatrix {
    &(g * m) * g_inv
}

/// A point of a conjugation orbit together with the conjugator reaching it:
/// `state = conjugator * start * conjugator_inv`.
#[derive(Clone, Debug)]
pub(crate) struct OrbitPoint {
    pub conjugator: IntMatrix,
    pub conjugator_inv: IntMatrix,
}

/// Breadth-first layers of the conjugation orbit of one matrix. States are
/// deduplicated; the frontier keeps discovery order so the walk is
/// deterministic.
pub(crate) struct OrbitWalk {
    gens: Vec<Generator>,
    pub seen: HashMap<IntMatrix, OrbitPoint>,
    frontier: Vec<IntMatrix>,
    pub depth: usize,
}

impl OrbitWalk {
    pub fn new(start: &IntMatrix) -> Self {
        let n = start.rows();
        let mut seen = HashMap::new();
        seen.insert(
            start.clone(),
            OrbitPoint {
                conjugator: IntMatrix::identity(n),
                conjugator_inv: IntMatrix::identity(n),
            },
        );
        OrbitWalk {
            gens: elementary_generators(n),
            seen,
            frontier: vec![start.clone()],
            depth: 0,
        }
    }

    pub fn exhausted(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Expands one layer, returning the newly discovered states in order.
    pub fn step(&mut self) -> Vec<IntMatrix> {
        let mut next = Vec::new();
        for state in std::mem::take(&mut self.frontier) {
            let point = self.seen[&state].clone();
            for g in &self.gens {
                let image = conjugate(&state, &g.matrix, &g.inverse);
                if self.seen.contains_key(&image) {
                    continue;
                }
                self.seen.insert(
                    image.clone(),
                    OrbitPoint {
                        conjugator: &g.matrix * &point.conjugator,
                        conjugator_inv: &point.conjugator_inv * &g.inverse,
                    },
                );
                next.push(image);
            }
        }
        self.depth += 1;
        self.frontier = next.clone();
        next
    }
}
