//! Sparse polynomials in four variables with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], so the representation
//! is canonical: no zero coefficients are stored and equality is
//! structural. Rendering lists terms from the leading monomial down.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::{Monomial, Namespace, NVARS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    ns: Namespace,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: Field, ns: Namespace) -> Self {
        MultiPoly {
            field,
            ns,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem, ns: Namespace) -> Self {
        let mut p = Self::zero(c.field(), ns);
        if !c.is_zero() {
            p.terms.insert(Monomial::ONE, c);
        }
        p
    }

    pub fn one(field: Field, ns: Namespace) -> Self {
        Self::constant(field.one(), ns)
    }

    /// The coordinate function `x_{i+1}` (or `y_{i+1}`).
    pub fn var(field: Field, ns: Namespace, i: usize) -> Self {
        Self::monomial(Monomial::var(i), field.one(), ns)
    }

    pub fn monomial(m: Monomial, c: FieldElem, ns: Namespace) -> Self {
        let mut p = Self::zero(c.field(), ns);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i]·v_i`.
    pub fn linear(coeffs: &[FieldElem; NVARS], ns: Namespace) -> Result<Self> {
        let field = coeffs[0].field();
        let mut p = Self::zero(field, ns);
        for (i, c) in coeffs.iter().enumerate() {
            field.check(c.field())?;
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c.clone());
            }
        }
        Ok(p)
    }

    pub fn from_terms<I>(field: Field, ns: Namespace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut p = Self::zero(field, ns);
        for (m, c) in terms {
            field.check(c.field())?;
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn namespace(&self) -> Namespace {
        self.ns
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Common degree of all terms, if the polynomial is homogeneous.
    /// The zero polynomial is homogeneous of every degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Retags the polynomial into another namespace without changing terms.
    pub fn rename(&self, ns: Namespace) -> MultiPoly {
        MultiPoly {
            field: self.field,
            ns,
            terms: self.terms.clone(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        self.field.check(other.field)?;
        if self.ns != other.ns {
            return Err(Error::NamespaceMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(self.field, self.ns);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2)?, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Result<MultiPoly> {
        self.field.check(c.field())?;
        if c.is_zero() {
            return Ok(MultiPoly::zero(self.field, self.ns));
        }
        Ok(MultiPoly {
            field: self.field,
            ns: self.ns,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        })
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            ns: self.ns,
            terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(self.field, self.ns);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[FieldElem; NVARS]) -> Result<FieldElem> {
        for x in point {
            self.field.check(x.field())?;
        }
        let max_exp = self
            .terms
            .keys()
            .flat_map(|m| m.exponents())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<FieldElem>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(max_exp + 1);
                v.push(self.field.one());
                for k in 1..=max_exp {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `images[i]`. The nonzero images must be
    /// homogeneous of one common degree; the result lives in their namespace.
    pub fn substitute(&self, images: &[MultiPoly; NVARS]) -> Result<MultiPoly> {
        let target_ns = images[0].ns;
        let mut degree = None;
        for img in images {
            self.field.check(img.field)?;
            if img.ns != target_ns {
                return Err(Error::NamespaceMismatch);
            }
            if img.is_zero() {
                continue;
            }
            let d = img.homogeneous_degree().ok_or(Error::NonHomogeneousImages)?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(Error::NonHomogeneousImages),
                _ => {}
            }
        }
        // powers[i][e] = images[i]^e, filled on demand
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(self.field, target_ns)])
            .collect();
        let mut out = MultiPoly::zero(self.field, target_ns);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone(), target_ns);
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e])?;
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, &c2);
            }
        }
        Ok(out)
    }

    /// Quotient `q` with `self = q · den`, or `NotDivisible`.
    ///
    /// Single-divisor reduction against the leading term of `den`; when an
    /// exact quotient exists every leading term of the running remainder is
    /// a multiple of `LT(den)`, so a failure to divide is conclusive.
    pub fn exact_divide(&self, den: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(den)?;
        let (lm, lc) = match den.leading_term() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::DivisorZero),
        };
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.field, self.ns);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            let qm = lm.quotient_of(&m).ok_or(Error::NotDivisible)?;
            let qc = &c * &lc_inv;
            for (dm, dc) in &den.terms {
                rem.add_term(qm.mul(dm)?, &(&qc * dc).neg());
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.ns);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents();
            exps[i] -= 1;
            let coeff = c * &self.field.from_i64(e as i64);
            out.add_term(Monomial::new(exps).expect("degree decreases"), &coeff);
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if *m == Monomial::ONE {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.render(self.ns));
            } else {
                s.push_str(&format!("{}*{}", abs, m.render(self.ns)));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on field or namespace mismatch; use the `try_`
// methods where inputs are not already known to be compatible.

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("incompatible polynomials in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}
