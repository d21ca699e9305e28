//! The ambient graded ring `A = Q/(f_1..f_c)`: a polynomial ring over a
//! prime field modulo a homogeneous regular sequence. All module-level
//! computation happens in terms of normal forms against the Groebner basis
//! of the defining ideal.

use crate::error::{Error, Result};
use crate::freemod::FreeVector;
use crate::groebner::{divide, ideal_gb, ideal_quotient, poly_nf};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{PolyRing, Polynomial};

/// Outcome of checking that `f_1..f_c` is a regular sequence, with a
/// witness element when it is not.
#[derive(Debug, Clone)]
pub enum RegSeqCheck {
    Regular,
    /// `f[index]` is a zerodivisor modulo its predecessors; `witness` is an
    /// element outside `(f_1..f_{index})` that `f[index+1]` multiplies in.
    Fails { index: usize, witness: String },
}

#[derive(Debug)]
pub struct RingSpec {
    poly: PolyRing,
    f: Vec<Polynomial>,
    f_degrees: Vec<i64>,
    gb: Vec<Polynomial>,
    /// `gb[t] = sum_j gb_transform[t][j] * f[j]`.
    gb_transform: Vec<Vec<Polynomial>>,
}

impl RingSpec {
    /// Validates that the `f` are nonzero homogeneous non-units forming a
    /// regular sequence generating a proper ideal, and precomputes the
    /// basis data every later computation leans on.
    pub fn new(poly: PolyRing, f: Vec<Polynomial>) -> Result<RingSpec> {
        let mut f_degrees = Vec::with_capacity(f.len());
        for (j, fj) in f.iter().enumerate() {
            match poly.homogeneous_degree(fj)? {
                Some(d) if d >= 1 => f_degrees.push(d),
                _ => {
                    return Err(Error::NotRegularSequence {
                        index: j,
                        witness: "each relation must be homogeneous of positive degree".into(),
                    })
                }
            }
        }
        let order = crate::freemod::ModuleOrder::Pot(poly.order());
        let inputs: Vec<FreeVector> = f
            .iter()
            .map(|p| crate::freemod::poly_to_vec(&poly, &order, p, 0))
            .collect();
        let basis = crate::groebner::buchberger(&poly, &order, &inputs, true)?;
        let gb: Vec<Polynomial> =
            basis.gens.iter().map(|v| crate::freemod::vec_to_poly(&poly, v)).collect();
        if gb.iter().any(|p| p.is_unit_constant()) {
            return Err(Error::ImproperIdeal);
        }
        let spec = RingSpec {
            poly,
            f,
            f_degrees,
            gb,
            gb_transform: basis.transform.unwrap(),
        };
        match spec.verify_regular_sequence()? {
            RegSeqCheck::Regular => Ok(spec),
            RegSeqCheck::Fails { index, witness } => {
                Err(Error::NotRegularSequence { index, witness })
            }
        }
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn f_degrees(&self) -> &[i64] {
        &self.f_degrees
    }

    pub fn codim(&self) -> usize {
        self.f.len()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// Reduced Groebner basis of the defining ideal.
    pub fn gb(&self) -> &[Polynomial] {
        &self.gb
    }

    /// `f_j` is a nonzerodivisor mod `(f_1..f_{j-1})` iff the ideal
    /// quotient `((f_1..f_{j-1}) : f_j)` collapses into `(f_1..f_{j-1})`.
    pub fn verify_regular_sequence(&self) -> Result<RegSeqCheck> {
        for j in 0..self.f.len() {
            if self.f[j].is_zero() {
                return Ok(RegSeqCheck::Fails { index: j, witness: "1".into() });
            }
            let prefix = &self.f[..j];
            let prefix_gb = ideal_gb(&self.poly, prefix)?;
            let quot = ideal_quotient(&self.poly, prefix, &self.f[j])?;
            for q in &quot {
                if !poly_nf(&self.poly, q, &prefix_gb)?.is_zero() {
                    return Ok(RegSeqCheck::Fails {
                        index: j,
                        witness: self.poly.format(q),
                    });
                }
            }
        }
        Ok(RegSeqCheck::Regular)
    }

    /// Canonical representative of `p` in the quotient ring.
    pub fn nf(&self, p: &Polynomial) -> Result<Polynomial> {
        poly_nf(&self.poly, p, &self.gb)
    }

    /// Componentwise canonical representative of a vector over the
    /// quotient ring.
    pub fn nf_vec(&self, v: &FreeVector, ncomps: usize) -> Result<FreeVector> {
        let order = crate::freemod::ModuleOrder::Pot(self.poly.order());
        let polys = v.to_polys(&self.poly, ncomps);
        let reduced: Result<Vec<Polynomial>> = polys.iter().map(|p| self.nf(p)).collect();
        Ok(FreeVector::from_polys(&self.poly, &order, &reduced?))
    }

    /// Monomials of the given degree that avoid every leading term of the
    /// defining ideal: a basis of the degree-`d` piece of the quotient.
    pub fn std_monomials(&self, degree: u32) -> Vec<Monomial> {
        let leads: Vec<&Monomial> =
            self.gb.iter().filter_map(|p| self.poly.leading(p)).map(|(m, _)| m).collect();
        monomials_of_degree(self.poly.nvars(), degree, self.poly.order())
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// Dimension over the base field of the degree-`d` piece of the ring.
    pub fn hilbert(&self, degree: u32) -> usize {
        self.std_monomials(degree).len()
    }

    /// Krull dimension, computed combinatorially from the leading-term
    /// ideal: the largest set of variables not containing the support of
    /// any leading term.
    pub fn krull_dim(&self) -> usize {
        let n = self.poly.nvars();
        let supports: Vec<u64> = self
            .gb
            .iter()
            .filter_map(|p| self.poly.leading(p))
            .map(|(m, _)| {
                m.exps().iter().enumerate().fold(0u64, |acc, (i, e)| {
                    if *e > 0 {
                        acc | (1 << i)
                    } else {
                        acc
                    }
                })
            })
            .collect();
        let mut best = 0;
        for subset in 0..(1u64 << n) {
            if supports.iter().all(|s| s & !subset != 0 || *s == 0) {
                best = best.max(subset.count_ones() as usize);
            }
        }
        if supports.iter().any(|s| *s == 0) {
            // A constant leading term means the zero ring.
            return 0;
        }
        best
    }

    /// True when the quotient is finite dimensional over the field: every
    /// variable has a pure power among the leading terms.
    pub fn is_artinian(&self) -> bool {
        let n = self.poly.nvars();
        (0..n).all(|i| {
            self.gb.iter().filter_map(|p| self.poly.leading(p)).any(|(m, _)| {
                m.exps().iter().enumerate().all(|(k, e)| (*e > 0) == (k == i))
            })
        })
    }

    /// Writes `p = sum_j out[j] * f[j]`; fails unless `p` lies in the
    /// defining ideal.
    pub fn express_in_f(&self, p: &Polynomial) -> Result<Vec<Polynomial>> {
        let order = crate::freemod::ModuleOrder::Pot(self.poly.order());
        let v = crate::freemod::poly_to_vec(&self.poly, &order, p, 0);
        let divisors: Vec<FreeVector> = self
            .gb
            .iter()
            .map(|g| crate::freemod::poly_to_vec(&self.poly, &order, g, 0))
            .collect();
        let div = divide(&self.poly, &order, &v, &divisors)?;
        if !div.remainder.is_zero() {
            return Err(Error::LiftFailure(
                "element does not lie in the defining ideal".into(),
            ));
        }
        let mut out = vec![self.poly.zero(); self.f.len()];
        for (t, q) in div.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (j, entry) in out.iter_mut().enumerate() {
                let tj = &self.gb_transform[t][j];
                if !tj.is_zero() {
                    *entry = self.poly.add(entry, &self.poly.mul(q, tj)?);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::monomial::MonomialOrder;
    use crate::parse::{parse_poly_list, parse_polynomial};

    fn poly_ring(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            Fp::new(101).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn ci(vars: &[&str], rels: &str) -> RingSpec {
        let p = poly_ring(vars);
        let f = parse_poly_list(&p, rels, 1).unwrap();
        RingSpec::new(p, f).unwrap()
    }

    #[test]
    fn accepts_diagonal_squares() {
        let a = ci(&["x", "y", "z"], "x^2, y^2, z^2");
        assert_eq!(a.codim(), 3);
        assert_eq!(a.krull_dim(), 0);
        assert!(a.is_artinian());
        assert_eq!(a.f_degrees(), &[2, 2, 2]);
    }

    #[test]
    fn rejects_zerodivisor_pair() {
        let p = poly_ring(&["x", "y"]);
        let f = parse_poly_list(&p, "x*y, x^2", 1).unwrap();
        match RingSpec::new(p, f) {
            Err(Error::NotRegularSequence { index: 1, witness }) => {
                assert!(!witness.is_empty());
            }
            other => panic!("expected regular sequence failure, got {:?}", other),
        }
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let p = poly_ring(&["x"]);
        let f = parse_poly_list(&p, "x^2 - x", 1).unwrap();
        match RingSpec::new(p, f) {
            Err(Error::InhomogeneousInput(_)) => {}
            other => panic!("expected homogeneity rejection, got {:?}", other),
        }
    }

    #[test]
    fn hilbert_series_of_one_relation() {
        // F_p[x, y]/(x^2): dimensions 1, 2, 2, 2, ...
        let a = ci(&["x", "y"], "x^2");
        assert_eq!(a.hilbert(0), 1);
        assert_eq!(a.hilbert(1), 2);
        assert_eq!(a.hilbert(5), 2);
        assert_eq!(a.krull_dim(), 1);
        assert!(!a.is_artinian());
    }

    #[test]
    fn nf_is_idempotent_ring_hom() {
        let a = ci(&["x", "y"], "x^2 + y^2");
        let p = parse_polynomial(a.poly(), "(x + y)^3", 1).unwrap();
        let n1 = a.nf(&p).unwrap();
        let n2 = a.nf(&n1).unwrap();
        assert_eq!(n1, n2);
        // nf respects the ideal: x^2 + y^2 reduces to zero.
        let rel = parse_polynomial(a.poly(), "x^2 + y^2", 1).unwrap();
        assert!(a.nf(&rel).unwrap().is_zero());
    }

    #[test]
    fn express_in_f_certificate() {
        let a = ci(&["x", "y", "z"], "x^2 - y*z, y^3");
        let p = parse_polynomial(a.poly(), "(x^2 - y*z)*x + y^3*z^2", 1).unwrap();
        let coeffs = a.express_in_f(&p).unwrap();
        let mut acc = a.poly().zero();
        for (c, f) in coeffs.iter().zip(a.f()) {
            acc = a.poly().add(&acc, &a.poly().mul(c, f).unwrap());
        }
        assert_eq!(acc, p);
        let outside = parse_polynomial(a.poly(), "x", 1).unwrap();
        assert!(matches!(a.express_in_f(&outside), Err(Error::LiftFailure(_))));
    }

    #[test]
    fn krull_dim_drops_by_codim() {
        assert_eq!(ci(&["x", "y", "z"], "x^2").krull_dim(), 2);
        assert_eq!(ci(&["x", "y", "z"], "x^2, y^2").krull_dim(), 1);
        let p = poly_ring(&["x", "y", "z"]);
        let a = RingSpec::new(p, vec![]).unwrap();
        assert_eq!(a.krull_dim(), 3);
        assert_eq!(a.codim(), 0);
    }

    #[test]
    fn std_monomials_avoid_leading_terms() {
        let a = ci(&["x", "y"], "x^2 - y^2");
        // Leading term x^2: standard monomials in degree 3 are x*y^2, y^3.
        let ms = a.std_monomials(3);
        assert_eq!(ms.len(), 2);
        for m in &ms {
            assert!(m.exps()[0] < 2);
        }
    }
}
