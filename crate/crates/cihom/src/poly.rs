//! Multivariate polynomials over F_p, with the ring as explicit context.
//!
//! A polynomial is a list of (monomial, coefficient) pairs kept sorted in
//! descending term order with no zero coefficients, so structural equality
//! is semantic equality. All arithmetic goes through `PolyRing`, which
//! owns the modulus, the variable names, and the active term order.

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: Fp,
    vars: Vec<String>,
    order: MonomialOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u64)>,
}

/// Total degree with the usual convention that the zero polynomial has
/// degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalDegree {
    NegInfinity,
    Finite(i64),
}

/// Outcome of a homogeneity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeCheck {
    Homogeneous(TotalDegree),
    NotHomogeneous,
}

impl PolyRing {
    pub fn new(field: Fp, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::DimensionMismatch("need at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DimensionMismatch(format!("duplicate variable {v}")));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(&self, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return self.zero();
        }
        Polynomial { terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(i, self.nvars()), 1)] }
    }

    pub fn monomial(&self, m: Monomial, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return self.zero();
        }
        debug_assert_eq!(m.nvars(), self.nvars());
        Polynomial { terms: vec![(m, c)] }
    }

    /// Build a polynomial from arbitrary terms: sorts, merges, drops zeros.
    pub fn from_terms(&self, terms: Vec<(Monomial, u64)>) -> Polynomial {
        let mut terms: Vec<(Monomial, u64)> = terms
            .into_iter()
            .map(|(m, c)| (m, self.field.reduce_u64(c)))
            .filter(|(_, c)| *c != 0)
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = self.field.add(*lc, c);
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let f = self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.order.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.terms[i].1, b.terms[j].1);
                    if c != 0 {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        Polynomial {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Polynomial, c: u64) -> Polynomial {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: a.terms.iter().map(|(m, k)| (m.clone(), self.field.mul(*k, c))).collect(),
        }
    }

    /// Multiply by a single term. Order-preserving, so no re-sort.
    pub fn mul_term(&self, a: &Polynomial, m: &Monomial, c: u64) -> Result<Polynomial> {
        let c = self.field.reduce_u64(c);
        if c == 0 {
            return Ok(self.zero());
        }
        let mut terms = Vec::with_capacity(a.terms.len());
        for (am, ac) in &a.terms {
            terms.push((am.mul(m)?, self.field.mul(*ac, c)));
        }
        Ok(Polynomial { terms })
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        let mut acc = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (am, ac) in &a.terms {
            for (bm, bc) in &b.terms {
                acc.push((am.mul(bm)?, self.field.mul(*ac, *bc)));
            }
        }
        Ok(self.from_terms(acc))
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Result<Polynomial> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn leading<'a>(&self, a: &'a Polynomial) -> Option<(&'a Monomial, u64)> {
        a.terms.first().map(|(m, c)| (m, *c))
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, a: &Polynomial) -> Result<Polynomial> {
        match a.terms.first() {
            None => Ok(self.zero()),
            Some((_, c)) => Ok(self.scale(a, self.field.inv(*c)?)),
        }
    }

    pub fn degree_check(&self, a: &Polynomial) -> DegreeCheck {
        let mut degs = a.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => DegreeCheck::Homogeneous(TotalDegree::NegInfinity),
            Some(d0) => {
                if degs.all(|d| d == d0) {
                    DegreeCheck::Homogeneous(TotalDegree::Finite(d0 as i64))
                } else {
                    DegreeCheck::NotHomogeneous
                }
            }
        }
    }

    /// Degree of a homogeneous polynomial; `None` for zero, error otherwise.
    pub fn homogeneous_degree(&self, a: &Polynomial) -> Result<Option<i64>> {
        match self.degree_check(a) {
            DegreeCheck::Homogeneous(TotalDegree::NegInfinity) => Ok(None),
            DegreeCheck::Homogeneous(TotalDegree::Finite(d)) => Ok(Some(d)),
            DegreeCheck::NotHomogeneous => {
                Err(Error::InhomogeneousInput(self.format(a)))
            }
        }
    }

    pub fn format(&self, a: &Polynomial) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in a.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// A polynomial that is a nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_unit_constant() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }
}
