//! Terms and vectors in finite free modules over the polynomial ring.
//!
//! A `FreeVector` lives in Q^s for some component count s, stored as a
//! term list sorted descending under a module order. The workhorse order
//! is position-over-term: components compare by index ascending, so an
//! earlier component is the larger one, and ties fall back to the ring
//! order on monomials. A Schreyer order induced by the leading terms of
//! a set of module elements is also available.

use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<FreeTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position over term: component index ascending dominates, earlier
    /// components larger; ties compare monomials in the given ring order.
    Pot(MonomialOrder),
    /// Order induced by a map into another free module: a term (c, m)
    /// compares as m * leads[c] in `Pot(base)` on the target, with the
    /// smaller source component winning ties.
    Schreyer {
        base: MonomialOrder,
        /// Leading term (component, monomial) of the image of each source
        /// basis vector.
        leads: Vec<(usize, Monomial)>,
    },
}

impl ModuleOrder {
    pub fn cmp_terms(&self, a: &FreeTerm, b: &FreeTerm) -> Ordering {
        match self {
            ModuleOrder::Pot(base) => match a.comp.cmp(&b.comp) {
                Ordering::Less => Ordering::Greater,
                Ordering::Greater => Ordering::Less,
                Ordering::Equal => base.cmp(&a.mono, &b.mono),
            },
            ModuleOrder::Schreyer { base, leads } => {
                let (ca, ma) = &leads[a.comp];
                let (cb, mb) = &leads[b.comp];
                let ta = a.mono.mul(ma).expect("schreyer overflow");
                let tb = b.mono.mul(mb).expect("schreyer overflow");
                match ca.cmp(cb) {
                    Ordering::Less => Ordering::Greater,
                    Ordering::Greater => Ordering::Less,
                    Ordering::Equal => match base.cmp(&ta, &tb) {
                        Ordering::Equal => match a.comp.cmp(&b.comp) {
                            Ordering::Less => Ordering::Greater,
                            Ordering::Greater => Ordering::Less,
                            Ordering::Equal => Ordering::Equal,
                        },
                        d => d,
                    },
                }
            }
        }
    }
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[FreeTerm] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&FreeTerm> {
        self.terms.first()
    }

    /// Everything below the leading term.
    pub(crate) fn tail(&self) -> FreeVector {
        FreeVector { terms: self.terms.get(1..).map(<[FreeTerm]>::to_vec).unwrap_or_default() }
    }

    /// Caller guarantees the terms are sorted descending, merged and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<FreeTerm>) -> FreeVector {
        FreeVector { terms }
    }

    /// Basis vector e_comp.
    pub fn basis(comp: usize, nvars: usize) -> Self {
        FreeVector {
            terms: vec![FreeTerm { comp, mono: Monomial::one(nvars), coeff: 1 }],
        }
    }

    /// Sorts, merges and drops zeros; the only entry point for unsorted data.
    pub fn from_terms(ring: &PolyRing, order: &ModuleOrder, terms: Vec<FreeTerm>) -> Self {
        let f = ring.field();
        let mut terms: Vec<FreeTerm> = terms
            .into_iter()
            .map(|mut t| {
                t.coeff = f.reduce_u64(t.coeff);
                t
            })
            .filter(|t| t.coeff != 0)
            .collect();
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        let mut out: Vec<FreeTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff = f.add(last.coeff, t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        FreeVector { terms: out }
    }

    /// Assemble from one polynomial per component.
    pub fn from_polys(ring: &PolyRing, order: &ModuleOrder, polys: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (comp, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(FreeTerm { comp, mono: m.clone(), coeff: *c });
            }
        }
        FreeVector::from_terms(ring, order, terms)
    }

    /// Split into one polynomial per component.
    pub fn to_polys(&self, ring: &PolyRing, ncomps: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); ncomps];
        for t in &self.terms {
            buckets[t.comp].push((t.mono.clone(), t.coeff));
        }
        buckets.into_iter().map(|ts| ring.from_terms(ts)).collect()
    }

    pub fn add(&self, ring: &PolyRing, order: &ModuleOrder, other: &FreeVector) -> FreeVector {
        let f = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.cmp_terms(a, b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.coeff, b.coeff);
                    if c != 0 {
                        out.push(FreeTerm { comp: a.comp, mono: a.mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        FreeVector { terms: out }
    }

    pub fn neg(&self, ring: &PolyRing) -> FreeVector {
        let f = ring.field();
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| FreeTerm { comp: t.comp, mono: t.mono.clone(), coeff: f.neg(t.coeff) })
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, order: &ModuleOrder, other: &FreeVector) -> FreeVector {
        self.add(ring, order, &other.neg(ring))
    }

    pub fn scale(&self, ring: &PolyRing, c: u64) -> FreeVector {
        let f = ring.field();
        let c = f.reduce_u64(c);
        if c == 0 {
            return FreeVector::zero();
        }
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| FreeTerm { comp: t.comp, mono: t.mono.clone(), coeff: f.mul(t.coeff, c) })
                .collect(),
        }
    }

    /// Multiply by c * m. Both orders we use are multiplicative, so the
    /// term list stays sorted.
    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: u64) -> Result<FreeVector> {
        let f = ring.field();
        let c = f.reduce_u64(c);
        if c == 0 {
            return Ok(FreeVector::zero());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(FreeTerm {
                comp: t.comp,
                mono: t.mono.mul(m)?,
                coeff: f.mul(t.coeff, c),
            });
        }
        Ok(FreeVector { terms })
    }

    /// Multiply by a polynomial.
    pub fn mul_poly(
        &self,
        ring: &PolyRing,
        order: &ModuleOrder,
        p: &Polynomial,
    ) -> Result<FreeVector> {
        let mut acc = FreeVector::zero();
        for (m, c) in p.terms() {
            acc = acc.add(ring, order, &self.mul_term(ring, m, *c)?);
        }
        Ok(acc)
    }

    /// Keep components in `[0, keep)`, dropping the rest.
    pub fn project(&self, keep: usize) -> FreeVector {
        FreeVector { terms: self.terms.iter().filter(|t| t.comp < keep).cloned().collect() }
    }

    /// Shift all component indices by `offset`.
    pub fn shift_comps(&self, offset: usize) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| FreeTerm { comp: t.comp + offset, mono: t.mono.clone(), coeff: t.coeff })
                .collect(),
        }
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    /// Common degree of all terms with respect to component twists;
    /// `Ok(None)` for the zero vector, error if not homogeneous.
    pub fn homogeneous_degree(&self, twists: &[i64]) -> std::result::Result<Option<i64>, ()> {
        let mut deg: Option<i64> = None;
        for t in &self.terms {
            let d = t.mono.degree() as i64 + twists[t.comp];
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return Err(()),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn format(&self, ring: &PolyRing, ncomps: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let polys = self.to_polys(ring, ncomps);
        let parts: Vec<String> = polys
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})*e{}", ring.format(p), i))
            .collect();
        parts.join(" + ")
    }
}

/// Embed a polynomial into component `comp`.
pub fn poly_to_vec(ring: &PolyRing, order: &ModuleOrder, p: &Polynomial, comp: usize) -> FreeVector {
    FreeVector::from_terms(
        ring,
        order,
        p.terms()
            .iter()
            .map(|(m, c)| FreeTerm { comp, mono: m.clone(), coeff: *c })
            .collect(),
    )
}

/// Extract the rank-1 component polynomial (for ideal-case vectors).
pub fn vec_to_poly(ring: &PolyRing, v: &FreeVector) -> Polynomial {
    ring.from_terms(v.terms().iter().map(|t| (t.mono.clone(), t.coeff)).collect())
}
