//! Ext modules over the quotient ring: cohomology of the dualized minimal
//! free resolution, the induced degree `-2` operator actions, and the
//! derived invariants (Bass numbers, depth, grade).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::freemod::{FreeTerm, FreeVector, ModuleOrder};
use crate::module::{homology, pot, Homology, ModuleMap, PresentedModule};
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::FreeResolution;
use crate::ring::RingSpec;

/// One cohomology group `Ext^i(M, D)` in minimal presentation, with enough
/// context to express further cocycles over its generators.
pub struct ExtModule {
    pub i: usize,
    /// Minimal presentation; zero exactly when it has no generators.
    pub value: Arc<PresentedModule>,
    /// A representative cocycle in `Hom(F_i, D)` coordinates per generator.
    /// Component `r * ngens(D) + t` is the coefficient of the map sending
    /// the `r`-th basis element of `F_i` to the `t`-th generator of `D`.
    pub reps: Vec<FreeVector>,
    hom: Homology,
    old_to_new: Vec<FreeVector>,
}

impl ExtModule {
    pub fn is_zero(&self) -> bool {
        self.value.ngens() == 0
    }

    /// Class of a cocycle, in `Hom(F_i, D)` coordinates, over the minimal
    /// generators. Fails if the argument is not a cocycle.
    pub fn express(&self, ring: &RingSpec, cocycle: &FreeVector) -> Result<FreeVector> {
        let poly = ring.poly();
        let order = pot(ring);
        let coeffs = self.hom.express(ring, cocycle)?;
        let mut out = FreeVector::zero();
        for (g, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(poly, &order, &self.old_to_new[g].mul_poly(poly, &order, c)?);
            }
        }
        self.value.reduce(&out)
    }
}

fn hom_columns(
    poly: &PolyRing,
    order: &ModuleOrder,
    diff_cols: &[FreeVector],
    rank_lo: usize,
    nd: usize,
) -> Vec<FreeVector> {
    // Dualizing d : F_hi -> F_lo sends the functional at (r, t) to the sum
    // over columns g of the (r, g) entry placed at (g, t).
    let mut out = Vec::with_capacity(rank_lo * nd);
    for r in 0..rank_lo {
        for t in 0..nd {
            let mut terms = Vec::new();
            for (g, col) in diff_cols.iter().enumerate() {
                for term in col.terms().iter().filter(|x| x.comp == r) {
                    terms.push(FreeTerm {
                        comp: g * nd + t,
                        mono: term.mono.clone(),
                        coeff: term.coeff,
                    });
                }
            }
            out.push(FreeVector::from_terms(poly, order, terms));
        }
    }
    out
}

/// Ext computations against one fixed module `M`, reusing a single cached
/// resolution. Extend the resolution first (`ensure`), then compute freely;
/// computed groups are cached by the presentation of `D`. All methods that
/// only read the frozen resolution prefix take `&self` and may be called
/// from several threads at once.
pub struct ExtCalc {
    res: FreeResolution,
    cache: Mutex<HashMap<(String, usize), Arc<ExtModule>>>,
}

impl ExtCalc {
    pub fn new(m: &PresentedModule) -> Result<ExtCalc> {
        Ok(ExtCalc {
            res: FreeResolution::new(m)?,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The resolved module, in minimal presentation.
    pub fn module(&self) -> &Arc<PresentedModule> {
        self.res.module()
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.res.ring()
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.res
    }

    /// Steps required before `ext(_, i)` can run.
    pub fn steps_for(i: usize) -> usize {
        i + 1
    }

    pub fn ensure(&mut self, steps: usize) -> Result<()> {
        self.res.extend_to(steps)
    }

    /// `Ext^i(M, D)` in minimal presentation. Requires the resolution to be
    /// extended through step `i + 1`.
    pub fn ext(&self, d: &PresentedModule, i: usize) -> Result<Arc<ExtModule>> {
        if self.res.steps() < i + 1 {
            return Err(Error::ResolutionTooShort {
                need: i + 1,
                have: self.res.steps(),
            });
        }
        let key = (d.canonical_key(), i);
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.compute_ext(d, i)?);
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| e.clone());
        Ok(e)
    }

    fn hom_module(&self, d: &PresentedModule, step: usize) -> Arc<PresentedModule> {
        let offsets: Vec<i64> = self.res.twists(step).iter().map(|a| -a).collect();
        Arc::new(d.block_sum(&offsets))
    }

    fn compute_ext(&self, d: &PresentedModule, i: usize) -> Result<ExtModule> {
        let ring = self.ring().clone();
        let poly = ring.poly();
        let order = pot(&ring);
        let nd = d.ngens();

        let middle = self.hom_module(d, i);
        let above = self.hom_module(d, i + 1);
        let psi_cols = hom_columns(poly, &order, self.res.diff(i + 1), self.res.rank(i), nd);
        let psi = ModuleMap::new(middle.clone(), above, 0, psi_cols)?;
        let phi = if i == 0 {
            let zero = Arc::new(PresentedModule::free(ring.clone(), Vec::new()));
            ModuleMap::zero(zero, middle, 0)
        } else {
            let below = self.hom_module(d, i - 1);
            let cols = hom_columns(poly, &order, self.res.diff(i), self.res.rank(i - 1), nd);
            ModuleMap::new(below, middle, 0, cols)?
        };

        let hom = homology(&psi, &phi)?;
        let min = hom.module.minimalize()?;
        let reps = min.kept.iter().map(|&g| hom.reps[g].clone()).collect();
        Ok(ExtModule {
            i,
            value: Arc::new(min.module),
            reps,
            hom,
            old_to_new: min.old_to_new,
        })
    }

    /// The action of the `j`-th operator on cohomology, as a map
    /// `Ext^i(M, D) -> Ext^{i+2}(M, D)` of internal degree `-deg f_j`.
    /// Requires the resolution through step `i + 3`.
    pub fn t_action(&self, d: &PresentedModule, j: usize, i: usize) -> Result<ModuleMap> {
        let ring = self.ring().clone();
        let poly = ring.poly();
        let lo = self.ext(d, i)?;
        let hi = self.ext(d, i + 2)?;
        let ops = self.res.operators(i)?;
        let tmat = &ops.reduced[j];
        let nd = d.ngens();

        let field = poly.field();
        let order = pot(&ring);
        let mut cols = Vec::with_capacity(lo.reps.len());
        for z in &lo.reps {
            // Precompose the representative with the operator: the
            // functional value at basis element g of F_{i+2} is the sum over
            // entries (r, q) of the operator column against z at (r, t).
            let mut terms: Vec<FreeTerm> = Vec::new();
            for (g, tcol) in tmat.iter().enumerate() {
                for tt in tcol.terms() {
                    for zt in z.terms() {
                        if zt.comp / nd != tt.comp {
                            continue;
                        }
                        terms.push(FreeTerm {
                            comp: g * nd + zt.comp % nd,
                            mono: tt.mono.mul(&zt.mono)?,
                            coeff: field.mul(tt.coeff, zt.coeff),
                        });
                    }
                }
            }
            let w = FreeVector::from_terms(poly, &order, terms);
            cols.push(hi.express(&ring, &w)?);
        }
        ModuleMap::new(
            lo.value.clone(),
            hi.value.clone(),
            -ring.f_degrees()[j],
            cols,
        )
    }
}

/// A fixed test module with a pre-extended resolution, answering
/// "smallest `l` with `Ext^l(T, E)` nonzero" questions with caching. With
/// `T = k` this computes depth and Bass numbers; with `T = A/J` it computes
/// grade. The search is capped at the number of variables: a nonzero module
/// must answer below the cap, so exhausting it reports an engine bug.
pub struct VanishingProbe {
    calc: ExtCalc,
    cap: usize,
    min_cache: Mutex<HashMap<String, Option<usize>>>,
    len_cache: Mutex<HashMap<(usize, String), u64>>,
}

impl VanishingProbe {
    pub fn new(t: &PresentedModule) -> Result<VanishingProbe> {
        let cap = t.ring().nvars();
        let mut calc = ExtCalc::new(t)?;
        calc.ensure(cap + 1)?;
        Ok(VanishingProbe {
            calc,
            cap,
            min_cache: Mutex::new(HashMap::new()),
            len_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Probe against the residue field: `min_index` is depth.
    pub fn for_depth(ring: &Arc<RingSpec>) -> Result<VanishingProbe> {
        VanishingProbe::new(&PresentedModule::residue_field(ring.clone()))
    }

    /// Probe against `A/J`: `min_index` is `grade(J, -)`. Rejects improper `J`.
    pub fn for_grade(ring: &Arc<RingSpec>, jgens: &[Polynomial]) -> Result<VanishingProbe> {
        let quot = PresentedModule::quot_by_ideal(ring.clone(), jgens)?;
        if quot.is_zero_module()? {
            return Err(Error::ImproperIdeal);
        }
        VanishingProbe::new(&quot)
    }

    pub fn calc(&self) -> &ExtCalc {
        &self.calc
    }

    /// `min { l : Ext^l(T, E) != 0 }`; `None` encodes the `E = 0`
    /// convention, reported upstream as the infinite sentinel.
    pub fn min_index(&self, e: &PresentedModule) -> Result<Option<usize>> {
        if e.is_zero_module()? {
            return Ok(None);
        }
        let key = e.canonical_key();
        if let Some(v) = self.min_cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        for l in 0..=self.cap {
            if !self.calc.ext(e, l)?.is_zero() {
                self.min_cache.lock().unwrap().insert(key, Some(l));
                return Ok(Some(l));
            }
        }
        Err(Error::ConsistencyFailure(format!(
            "nonzero module with no nonvanishing cohomology through degree {}",
            self.cap
        )))
    }

    /// Length of `Ext^j(T, E)`; with `T = k` this is the `j`-th Bass number.
    pub fn ext_length(&self, j: usize, e: &PresentedModule) -> Result<u64> {
        if e.is_zero_module()? {
            return Ok(0);
        }
        let key = (j, e.canonical_key());
        if let Some(v) = self.len_cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let ext = self.calc.ext(e, j)?;
        let len = ext.value.length()?.ok_or_else(|| {
            Error::ConsistencyFailure("length query on cohomology of infinite length".into())
        })?;
        self.len_cache.lock().unwrap().insert(key, len);
        Ok(len)
    }

    /// Extends the underlying resolution (exclusive access required).
    pub fn ensure(&mut self, steps: usize) -> Result<()> {
        self.calc.ensure(steps)
    }
}

/// Depth of `E` at the graded maximal ideal via the smallest nonvanishing
/// `Ext(k, E)`; `None` means the zero module (depth infinity by convention).
/// One-shot convenience; grids share a [`VanishingProbe`] instead.
pub fn depth_of(e: &PresentedModule) -> Result<Option<usize>> {
    VanishingProbe::for_depth(e.ring())?.min_index(e)
}

/// Grade of `J` on `E` via the smallest nonvanishing `Ext(A/J, E)`;
/// `None` means the zero module.
pub fn grade_of(jgens: &[Polynomial], e: &PresentedModule) -> Result<Option<usize>> {
    VanishingProbe::for_grade(e.ring(), jgens)?.min_index(e)
}

/// The `j`-th Bass number of `E` at the graded maximal ideal.
pub fn bass_number(j: usize, e: &PresentedModule) -> Result<u64> {
    let mut probe = VanishingProbe::for_depth(e.ring())?;
    probe.ensure(j + 1)?;
    probe.ext_length(j, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::koszul::koszul_depth;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_poly_list;
    use crate::poly::PolyRing;

    fn ring_of(vars: &[&str], f: &[&str]) -> Arc<RingSpec> {
        let poly = PolyRing::new(
            Fp::new(101).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let fs = if f.is_empty() {
            Vec::new()
        } else {
            parse_poly_list(&poly, &f.join(", "), 1).unwrap()
        };
        Arc::new(RingSpec::new(poly, fs).unwrap())
    }

    fn vars_of(ring: &Arc<RingSpec>) -> Vec<Polynomial> {
        (0..ring.nvars()).map(|i| ring.poly().var(i)).collect()
    }

    #[test]
    fn ext_of_a_free_module_is_the_target_in_degree_zero_only() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let a = PresentedModule::ring_module(ring.clone());
        let k = PresentedModule::residue_field(ring.clone());
        let mut calc = ExtCalc::new(&a).unwrap();
        calc.ensure(4).unwrap();
        let e0 = calc.ext(&k, 0).unwrap();
        assert_eq!(e0.value.ngens(), 1);
        assert_eq!(e0.value.length().unwrap(), Some(1));
        for i in 1..=3 {
            assert!(calc.ext(&k, i).unwrap().is_zero());
        }
    }

    #[test]
    fn self_ext_of_the_residue_field_over_one_quadric() {
        // Periodic resolution, vanishing dualized differentials: every
        // Ext^i(k, k) is a single copy of k, generated in degree -i.
        let ring = ring_of(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let mut calc = ExtCalc::new(&k).unwrap();
        calc.ensure(6).unwrap();
        for i in 0..=5 {
            let e = calc.ext(&k, i).unwrap();
            assert_eq!(e.value.ngens(), 1, "at {}", i);
            assert_eq!(e.value.gen_twists(), &[-(i as i64)]);
            assert_eq!(e.value.length().unwrap(), Some(1));
        }
    }

    #[test]
    fn ext_of_k_into_the_ring_sees_only_the_socle() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let a = PresentedModule::ring_module(ring.clone());
        let mut calc = ExtCalc::new(&k).unwrap();
        calc.ensure(5).unwrap();
        let e0 = calc.ext(&a, 0).unwrap();
        assert_eq!(e0.value.length().unwrap(), Some(1));
        assert_eq!(e0.value.gen_twists(), &[1]);
        for i in 1..=4 {
            assert!(calc.ext(&a, i).unwrap().is_zero(), "at {}", i);
        }
    }

    #[test]
    fn bass_numbers_of_k_match_the_tensor_resolution_oracle() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let mut probe = VanishingProbe::for_depth(&ring).unwrap();
        probe.ensure(5).unwrap();
        for j in 0..=4u64 {
            // Convolution of two constant-one Betti sequences.
            let oracle: u64 = (0..=j).map(|_| 1u64).sum();
            assert_eq!(probe.ext_length(j as usize, &k).unwrap(), oracle);
        }
    }

    #[test]
    fn depth_examples_and_koszul_agreement() {
        let hyper = ring_of(&["x", "y"], &["x^2"]);
        let a = Arc::new(PresentedModule::ring_module(hyper.clone()));
        assert_eq!(depth_of(&a).unwrap(), Some(1));
        assert_eq!(koszul_depth(&a, &vars_of(&hyper)).unwrap(), 1);

        let art = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = Arc::new(PresentedModule::residue_field(art.clone()));
        assert_eq!(depth_of(&k).unwrap(), Some(0));
        assert_eq!(koszul_depth(&k, &vars_of(&art)).unwrap(), 0);

        let one = parse_poly_list(art.poly(), "1", 1).unwrap().remove(0);
        let order = pot(&art);
        let rel = crate::freemod::poly_to_vec(art.poly(), &order, &one, 0);
        let zero = PresentedModule::new(art.clone(), vec![0], vec![rel]).unwrap();
        assert_eq!(depth_of(&zero).unwrap(), None);
    }

    #[test]
    fn grade_examples() {
        let ring = ring_of(&["x", "y"], &["x^2"]);
        let a = PresentedModule::ring_module(ring.clone());
        let k = PresentedModule::residue_field(ring.clone());
        let x = parse_poly_list(ring.poly(), "x", 1).unwrap();
        let y = parse_poly_list(ring.poly(), "y", 1).unwrap();
        let m = parse_poly_list(ring.poly(), "x, y", 1).unwrap();
        assert_eq!(grade_of(&y, &a).unwrap(), Some(1));
        assert_eq!(grade_of(&x, &a).unwrap(), Some(0));
        assert_eq!(grade_of(&m, &k).unwrap(), Some(0));
        let unit = parse_poly_list(ring.poly(), "x, 1", 1).unwrap();
        assert!(matches!(
            VanishingProbe::for_grade(&ring, &unit),
            Err(Error::ImproperIdeal)
        ));
    }

    #[test]
    fn operator_action_is_an_isomorphism_for_the_periodic_resolution() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let mut calc = ExtCalc::new(&k).unwrap();
        calc.ensure(8).unwrap();
        for i in 0..=2 {
            let map = calc.t_action(&k, 0, i).unwrap();
            assert_eq!(map.cols().len(), 1);
            let col = &map.cols()[0];
            assert_eq!(col.terms().len(), 1);
            assert!(col.terms()[0].mono.is_one());
            assert_ne!(col.terms()[0].coeff, 0);
            assert_eq!(map.shift(), -2);
        }
    }

    #[test]
    fn operator_actions_commute() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let mut calc = ExtCalc::new(&k).unwrap();
        calc.ensure(8).unwrap();
        for i in 0..=1 {
            let t1_lo = calc.t_action(&k, 0, i).unwrap();
            let t2_lo = calc.t_action(&k, 1, i).unwrap();
            let t1_hi = calc.t_action(&k, 0, i + 2).unwrap();
            let t2_hi = calc.t_action(&k, 1, i + 2).unwrap();
            let a = t2_hi.compose(&t1_lo).unwrap();
            let b = t1_hi.compose(&t2_lo).unwrap();
            assert_eq!(a.cols(), b.cols(), "at {}", i);
        }
    }

    #[test]
    fn ext_lengths_of_k_grow_linearly_over_two_quadrics() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = PresentedModule::residue_field(ring.clone());
        let mut calc = ExtCalc::new(&k).unwrap();
        calc.ensure(7).unwrap();
        for i in 0..=6u64 {
            let e = calc.ext(&k, i as usize).unwrap();
            assert_eq!(e.value.length().unwrap(), Some(i + 1));
        }
    }
}
