//! Monomials with bounded exponents and the two term orders we use.

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// A monomial in a fixed number of variables. Exponents are 16-bit on
/// purpose: overflow is a loud error rather than silent wraparound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            let s = (*a as u32) + (*b as u32);
            if s > u16::MAX as u32 {
                return Err(Error::ExponentOverflow(format!(
                    "exponent {s} exceeds 16-bit bound"
                )));
            }
            exps.push(s as u16);
        }
        Ok(Monomial { exps, degree: self.degree + other.degree })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Vec<u16> =
            other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders on monomials.
///
/// `Grevlex` is the default everywhere; `Lex` stays available as an
/// elimination-friendly fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    /// Total order. Grevlex: higher total degree wins; on a tie, the
    /// monomial with the smaller exponent in the last differing variable
    /// (scanning from the end) is the larger one.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Grevlex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for i in (0..a.exps.len()).rev() {
                        match a.exps[i].cmp(&b.exps[i]) {
                            Ordering::Equal => continue,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                d => d,
            },
            MonomialOrder::Lex => {
                for i in 0..a.exps.len() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        d => return d,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checked comparison for inputs of possibly different arity.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "monomials in {} vs {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// All monomials of the given total degree, in descending `order`.
pub fn monomials_of_degree(nvars: usize, degree: u32, order: MonomialOrder) -> Vec<Monomial> {
    fn rec(nvars: usize, degree: u32, idx: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if idx + 1 == nvars {
            if degree <= u16::MAX as u32 {
                let mut exps = cur.clone();
                exps.push(degree as u16);
                out.push(Monomial::from_exps(exps));
            }
            return;
        }
        for e in (0..=degree.min(u16::MAX as u32)).rev() {
            cur.push(e as u16);
            rec(nvars, degree - e, idx + 1, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, degree, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}
