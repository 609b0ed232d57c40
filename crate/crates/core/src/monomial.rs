use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Total degree cap for every polynomial in the toolkit.
pub const MAX_DEGREE: u32 = 16;

pub const NVARS: usize = 4;

/// Which set of homogeneous coordinates a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Namespace {
    X,
    Y,
}

impl Namespace {
    pub fn letter(self) -> char {
        match self {
            Namespace::X => 'x',
            Namespace::Y => 'y',
        }
    }

    pub fn other(self) -> Namespace {
        match self {
            Namespace::X => Namespace::Y,
            Namespace::Y => Namespace::X,
        }
    }
}

/// Exponent vector of a monomial in four variables, ordered graded
/// lexicographically with `x1 > x2 > x3 > x4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn new(exponents: [u8; NVARS]) -> Result<Self> {
        let m = Monomial(exponents);
        if m.degree() > MAX_DEGREE {
            return Err(Error::DegreeOverflow(m.degree()));
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u8; NVARS] {
        self.0
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let deg = self.degree() + other.degree();
        if deg > MAX_DEGREE {
            return Err(Error::DegreeOverflow(deg));
        }
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    /// All monomials of total degree `d`, in increasing order.
    pub fn all_of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    let e = d - a - b - c;
                    out.push(Monomial([a as u8, b as u8, c as u8, e as u8]));
                }
            }
        }
        out.sort();
        out
    }

    pub fn render(&self, ns: Namespace) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("{}{}", ns.letter(), i + 1)
                } else {
                    format!("{}{}^{}", ns.letter(), i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Namespace::X))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        let x4sq = Monomial::new([0, 0, 0, 2]).unwrap();
        assert!(x1 > x2);
        assert!(x4sq > x1);
        let x1x3 = Monomial::new([1, 0, 1, 0]).unwrap();
        let x2sq = Monomial::new([0, 2, 0, 0]).unwrap();
        assert!(x1x3 > x2sq);
    }

    #[test]
    fn degree_cap() {
        assert_eq!(Monomial::new([17, 0, 0, 0]), Err(Error::DegreeOverflow(17)));
        let m = Monomial::new([8, 0, 0, 0]).unwrap();
        let n = Monomial::new([0, 9, 0, 0]).unwrap();
        assert_eq!(m.mul(&n), Err(Error::DegreeOverflow(17)));
    }

    #[test]
    fn counts_of_degree() {
        for d in 0..8u32 {
            let n = (d + 1) * (d + 2) * (d + 3) / 6;
            assert_eq!(Monomial::all_of_degree(d).len() as u32, n);
        }
    }

    #[test]
    fn rendering() {
        let m = Monomial::new([2, 1, 0, 0]).unwrap();
        assert_eq!(m.render(Namespace::X), "x1^2*x2");
        assert_eq!(Monomial::ONE.render(Namespace::Y), "1");
        assert_eq!(Monomial::var(3).render(Namespace::Y), "y4");
    }
}
