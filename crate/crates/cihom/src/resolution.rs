//! Minimal free resolutions over the quotient ring, extended step by step,
//! and the degree `-2` cohomology operators obtained by lifting the
//! differentials to the ambient polynomial ring and factoring the square of
//! the lift through the defining regular sequence.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::freemod::{FreeTerm, FreeVector};
use crate::module::{mingens, pot, syz_a, PresentedModule};
use crate::monomial::Monomial;
use crate::ring::RingSpec;

/// A minimal free resolution `... -> F_2 -> F_1 -> F_0 -> M -> 0`.
///
/// The module is minimalized up front, so `F_0` has one basis element per
/// minimal generator and `d_1` is the minimal relation matrix. `F_i` is
/// described by `twists(i)`; the columns of `d_i : F_i -> F_{i-1}` are
/// vectors over the basis of `F_{i-1}` with entries in normal form. Each
/// step picks a minimal generating set of the kernel of the previous
/// differential, so every entry of every differential lies in the maximal
/// ideal; this is asserted, not assumed. Extending appends steps without
/// recomputing earlier ones.
pub struct FreeResolution {
    module: Arc<PresentedModule>,
    twists: Vec<Vec<i64>>,
    diffs: Vec<Vec<FreeVector>>,
    ops: Mutex<HashMap<usize, Arc<OperatorBlock>>>,
}

/// Operator matrices at one homological step: for each defining equation
/// `f_j` a matrix `F_{i+2} -> F_i`, kept both as the exact witness over the
/// polynomial ring (`lifted`, satisfying `d_i d_{i+1} = sum_j f_j * lifted[j]`
/// as an identity of matrices over the polynomial ring) and with entries in
/// normal form (`reduced`).
pub struct OperatorBlock {
    pub lifted: Vec<Vec<FreeVector>>,
    pub reduced: Vec<Vec<FreeVector>>,
}

impl FreeResolution {
    pub fn new(module: &PresentedModule) -> Result<FreeResolution> {
        let min = module.minimalize()?.module;
        let twists = vec![min.gen_twists().to_vec()];
        Ok(FreeResolution {
            module: Arc::new(min),
            twists,
            diffs: Vec::new(),
            ops: Mutex::new(HashMap::new()),
        })
    }

    /// The resolved module, in minimal presentation.
    pub fn module(&self) -> &Arc<PresentedModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.module.ring()
    }

    /// Number of computed differentials; `F_i` is known for `i <= steps()`.
    pub fn steps(&self) -> usize {
        self.diffs.len()
    }

    /// Generator degrees of `F_i`. Panics if `F_i` has not been computed.
    pub fn twists(&self, i: usize) -> &[i64] {
        &self.twists[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.twists[i].len()
    }

    /// Betti numbers `rank F_0, ..., rank F_s` for the computed steps.
    pub fn betti(&self) -> Vec<usize> {
        self.twists.iter().map(|t| t.len()).collect()
    }

    /// Columns of `d_i : F_i -> F_{i-1}` for `1 <= i <= steps()`.
    pub fn diff(&self, i: usize) -> &[FreeVector] {
        assert!(i >= 1 && i <= self.diffs.len(), "differential {} not computed", i);
        &self.diffs[i - 1]
    }

    /// Applies `d_i` to a vector over the basis of `F_i` by plain
    /// polynomial arithmetic, with no reduction to the quotient. On
    /// normal-form inputs this is the lifted differential.
    pub fn apply_lift(&self, i: usize, v: &FreeVector) -> Result<FreeVector> {
        let ring = self.ring();
        let poly = ring.poly();
        let order = pot(ring);
        let cols = self.diff(i);
        let mut out = FreeVector::zero();
        for t in v.terms() {
            out = out.add(poly, &order, &cols[t.comp].mul_term(poly, &t.mono, t.coeff)?);
        }
        Ok(out)
    }

    /// Extends the resolution until `steps() >= upto`.
    pub fn extend_to(&mut self, upto: usize) -> Result<()> {
        while self.diffs.len() < upto {
            let s = self.diffs.len();
            let cols: Vec<FreeVector> = if s == 0 {
                self.module.relations().to_vec()
            } else if self.rank(s) == 0 {
                Vec::new()
            } else {
                let ring = self.module.ring().clone();
                let poly = ring.poly();
                let kernel = syz_a(&ring, &self.diffs[s - 1], self.rank(s - 1))?;
                let kept = mingens(&ring, &self.twists[s], &kernel)?;
                let mut cols = Vec::with_capacity(kept.len());
                for k in kept {
                    // Scale to leading coefficient one; a column is only
                    // determined up to a unit anyway.
                    let lead = kernel[k].leading().expect("kernel generators are nonzero");
                    let inv = poly.field().inv(lead.coeff)?;
                    cols.push(kernel[k].scale(poly, inv));
                }
                cols
            };
            let mut twists = Vec::with_capacity(cols.len());
            for col in &cols {
                if col.terms().iter().any(|t| t.mono.is_one()) {
                    return Err(Error::ConsistencyFailure(
                        "resolution differential has a unit entry".into(),
                    ));
                }
                let d = col
                    .homogeneous_degree(&self.twists[s])
                    .map_err(|()| {
                        Error::ConsistencyFailure("inhomogeneous syzygy".into())
                    })?
                    .expect("kernel generators are nonzero");
                twists.push(d);
            }
            self.diffs.push(cols);
            self.twists.push(twists);
        }
        Ok(())
    }

    /// The operator matrices `F_{i+2} -> F_i`, one per defining equation.
    /// Requires `steps() >= i + 2`; results are cached per step.
    pub fn operators(&self, i: usize) -> Result<Arc<OperatorBlock>> {
        if self.diffs.len() < i + 2 {
            return Err(Error::ResolutionTooShort {
                need: i + 2,
                have: self.diffs.len(),
            });
        }
        if let Some(block) = self.ops.lock().unwrap().get(&i) {
            return Ok(block.clone());
        }
        let block = Arc::new(self.compute_operators(i)?);
        self.ops
            .lock()
            .unwrap()
            .entry(i)
            .or_insert_with(|| block.clone());
        Ok(block)
    }

    fn compute_operators(&self, i: usize) -> Result<OperatorBlock> {
        let ring = self.ring().clone();
        let poly = ring.poly();
        let order = pot(&ring);
        let c = ring.codim();
        let top = self.diff(i + 2);
        let mut lifted: Vec<Vec<FreeVector>> = vec![Vec::with_capacity(top.len()); c];
        let mut reduced: Vec<Vec<FreeVector>> = vec![Vec::with_capacity(top.len()); c];
        for col in top {
            // d~_{i+1} d~_{i+2} applied to this basis column, over Q.
            let square = self.apply_lift(i + 1, col)?;
            let mut per_comp: HashMap<usize, Vec<(Monomial, u64)>> = HashMap::new();
            for t in square.terms() {
                per_comp
                    .entry(t.comp)
                    .or_default()
                    .push((t.mono.clone(), t.coeff));
            }
            let mut comps: Vec<usize> = per_comp.keys().copied().collect();
            comps.sort_unstable();
            let mut cols_j: Vec<Vec<FreeTerm>> = vec![Vec::new(); c];
            for comp in comps {
                let entry = poly.from_terms(per_comp.remove(&comp).unwrap());
                let qs = ring.express_in_f(&entry)?;
                for (j, q) in qs.iter().enumerate() {
                    for (m, coeff) in q.terms() {
                        cols_j[j].push(FreeTerm {
                            comp,
                            mono: m.clone(),
                            coeff: *coeff,
                        });
                    }
                }
            }
            for (j, terms) in cols_j.into_iter().enumerate() {
                let lift = FreeVector::from_terms(poly, &order, terms);
                let red = ring.nf_vec(&lift, self.rank(i))?;
                lifted[j].push(lift);
                reduced[j].push(red);
            }
        }
        Ok(OperatorBlock { lifted, reduced })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::monomial::MonomialOrder;
    use crate::parse::{parse_poly_list, parse_polynomial};
    use crate::poly::PolyRing;

    fn ring_of(vars: &[&str], f: &[&str]) -> Arc<RingSpec> {
        let poly = PolyRing::new(
            Fp::new(101).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let fs = parse_poly_list(&poly, &f.join(", "), 1).unwrap();
        Arc::new(RingSpec::new(poly, fs).unwrap())
    }

    fn residue_field(ring: &Arc<RingSpec>) -> PresentedModule {
        PresentedModule::residue_field(ring.clone())
    }

    #[test]
    fn periodic_resolution_over_one_quadric() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(6).unwrap();
        assert_eq!(res.betti(), vec![1; 7]);
        for i in 1..=6 {
            assert_eq!(res.diff(i).len(), 1);
            assert_eq!(res.diff(i)[0].format(ring.poly(), 1), "(x)*e0");
        }
        assert_eq!(res.twists(3), &[3]);
    }

    #[test]
    fn betti_numbers_match_the_tensor_oracle() {
        // Over F_p[x,y]/(x^2, y^2) the resolution of k is the tensor product
        // of two rank-one periodic resolutions, so beta_i is the convolution
        // of (1,1,1,...) with itself.
        let upto = 8usize;
        let oracle: Vec<usize> = (0..=upto)
            .map(|i| (0..=i).map(|_| 1usize).sum())
            .collect();
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(upto).unwrap();
        assert_eq!(res.betti(), oracle);
        assert_eq!(res.twists(2), &[2, 2, 2]);
    }

    #[test]
    fn free_module_resolves_in_length_zero() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let a = PresentedModule::ring_module(ring);
        let mut res = FreeResolution::new(&a).unwrap();
        res.extend_to(4).unwrap();
        assert_eq!(res.betti(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn extension_is_resumable_without_recomputation() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(3).unwrap();
        let before: Vec<Vec<String>> = (1..=3)
            .map(|i| {
                res.diff(i)
                    .iter()
                    .map(|c| c.format(ring.poly(), res.rank(i - 1)))
                    .collect()
            })
            .collect();
        res.extend_to(6).unwrap();
        for i in 1..=3 {
            let after: Vec<String> = res
                .diff(i)
                .iter()
                .map(|c| c.format(ring.poly(), res.rank(i - 1)))
                .collect();
            assert_eq!(after, before[i - 1]);
        }
        assert_eq!(res.steps(), 6);
    }

    #[test]
    fn squares_vanish_after_reduction() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(5).unwrap();
        for i in 1..=4 {
            for col in res.diff(i + 1) {
                let sq = res.apply_lift(i, col).unwrap();
                let red = ring.nf_vec(&sq, res.rank(i - 1)).unwrap();
                assert!(red.is_zero(), "d_{} d_{} != 0 over A", i, i + 1);
            }
        }
    }

    #[test]
    fn operators_over_one_quadric_are_identity_matrices() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(6).unwrap();
        for i in 0..=3 {
            let block = res.operators(i).unwrap();
            assert_eq!(block.reduced.len(), 1);
            assert_eq!(block.reduced[0].len(), 1);
            assert_eq!(block.reduced[0][0].format(ring.poly(), 1), "(1)*e0");
            assert_eq!(block.lifted[0][0].format(ring.poly(), 1), "(1)*e0");
        }
    }

    #[test]
    fn lifted_operators_factor_the_squared_differential_exactly() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let poly = ring.poly();
        let order = pot(&ring);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(6).unwrap();
        for i in 1..=4 {
            let block = res.operators(i - 1).unwrap();
            for (g, col) in res.diff(i + 1).iter().enumerate() {
                let square = res.apply_lift(i, col).unwrap();
                let mut recombined = FreeVector::zero();
                for (j, fj) in ring.f().iter().enumerate() {
                    recombined = recombined.add(
                        poly,
                        &order,
                        &block.lifted[j][g].mul_poly(poly, &order, fj).unwrap(),
                    );
                }
                assert_eq!(square, recombined, "step {} column {}", i, g);
            }
        }
    }

    #[test]
    fn operators_demand_enough_steps() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = residue_field(&ring);
        let mut res = FreeResolution::new(&k).unwrap();
        res.extend_to(2).unwrap();
        assert!(matches!(
            res.operators(1),
            Err(Error::ResolutionTooShort { need: 3, have: 2 })
        ));
    }

    #[test]
    fn trivial_module_resolves_trivially() {
        let ring = ring_of(&["x"], &["x^2"]);
        let poly = ring.poly().clone();
        let one = parse_polynomial(&poly, "1", 1).unwrap();
        let order = pot(&ring);
        let rel = crate::freemod::poly_to_vec(&poly, &order, &one, 0);
        let zero = PresentedModule::new(ring, vec![0], vec![rel]).unwrap();
        let mut res = FreeResolution::new(&zero).unwrap();
        res.extend_to(3).unwrap();
        assert_eq!(res.betti(), vec![0, 0, 0, 0]);
    }
}
