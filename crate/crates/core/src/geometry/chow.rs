//! The cohomology ring `Z[h1, h2]/(h1⁴, h2⁴)` of `P³ × P³`.

use std::ops::{Add, Mul};

/// `Σ c[a][b]·h1^a·h2^b` with `0 ≤ a, b ≤ 3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChowClassP3xP3 {
    coeffs: [[i64; 4]; 4],
}

impl ChowClassP3xP3 {
    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn h1() -> Self {
        Self::monomial(1, 0)
    }

    pub fn h2() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(a: usize, b: usize) -> Self {
        let mut c = Self::default();
        if a < 4 && b < 4 {
            c.coeffs[a][b] = 1;
        }
        c
    }

    pub fn coeff(&self, a: usize, b: usize) -> i64 {
        self.coeffs[a][b]
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self)
    }

    /// Degree of the zero-cycle part: the coefficient of `h1³h2³`.
    pub fn degree(&self) -> i64 {
        self.coeffs[3][3]
    }
}

impl Add for ChowClassP3xP3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for a in 0..4 {
            for b in 0..4 {
                out.coeffs[a][b] += rhs.coeffs[a][b];
            }
        }
        out
    }
}

impl Mul for ChowClassP3xP3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::default();
        for a in 0..4 {
            for b in 0..4 {
                if self.coeffs[a][b] == 0 {
                    continue;
                }
                for c in 0..4 - a {
                    for d in 0..4 - b {
                        out.coeffs[a + c][b + d] += self.coeffs[a][b] * rhs.coeffs[c][d];
                    }
                }
            }
        }
        out
    }
}

/// Pairings `(h_i · h_j · s)` where `s = (h1 + h2)⁴` is the class of the
/// complete intersection of four divisors of bidegree (1,1).
pub fn intersection_matrix() -> [[i64; 2]; 2] {
    let s = (ChowClassP3xP3::h1() + ChowClassP3xP3::h2()).pow(4);
    let h = [ChowClassP3xP3::h1(), ChowClassP3xP3::h2()];
    std::array::from_fn(|i| std::array::from_fn(|j| (h[i] * h[j] * s).degree()))
}
