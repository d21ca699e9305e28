//! Finitely presented graded modules over the quotient ring, their maps,
//! kernels and subquotients. A module is a cokernel presentation: a free
//! module with one twist per generator, modulo relation columns given over
//! the ambient polynomial ring. Working over the quotient means every
//! submodule computation silently carries the defining relations along.

use crate::error::{Error, Result};
use crate::freemod::{FreeTerm, FreeVector, ModuleOrder};
use crate::groebner::{buchberger, divide, syzygy_basis};
use crate::linalg::SpanTracker;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingSpec;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub(crate) fn pot(ring: &RingSpec) -> ModuleOrder {
    ModuleOrder::Pot(ring.poly().order())
}

/// The defining relations replicated into every component of a rank-`n`
/// free module.
pub fn pads(ring: &RingSpec, ncomps: usize) -> Vec<FreeVector> {
    let order = pot(ring);
    let mut out = Vec::with_capacity(ring.gb().len() * ncomps);
    for comp in 0..ncomps {
        for g in ring.gb() {
            out.push(crate::freemod::poly_to_vec(ring.poly(), &order, g, comp));
        }
    }
    out
}

/// Generators of the syzygy module over the quotient ring of the given
/// vectors in a rank-`ncomps` free module: coefficient vectors `a` with
/// `sum a_f vecs[f] = 0` after reduction by the defining ideal.
pub fn syz_a(ring: &RingSpec, vecs: &[FreeVector], ncomps: usize) -> Result<Vec<FreeVector>> {
    Ok(syz_a_with_solver(ring, vecs, ncomps)?.0)
}

/// Same as [`syz_a`], but also returns the solver built from the single
/// internal basis computation, for expressing later elements over `vecs`.
pub fn syz_a_with_solver(
    ring: &RingSpec,
    vecs: &[FreeVector],
    ncomps: usize,
) -> Result<(Vec<FreeVector>, LinearSolverA)> {
    let poly = ring.poly();
    let order = pot(ring);
    let mut padded: Vec<FreeVector> = vecs.to_vec();
    padded.extend(pads(ring, ncomps));
    let gb = buchberger(poly, &order, &padded, true)?;
    let transform = gb.transform.as_ref().unwrap();

    let mut raw = Vec::new();
    for z in syzygy_basis(poly, &order, &gb.gens)? {
        let parts = z.to_polys(poly, gb.gens.len());
        let mut row = vec![poly.zero(); padded.len()];
        for (t, zt) in parts.iter().enumerate() {
            if zt.is_zero() {
                continue;
            }
            for (f, entry) in row.iter_mut().enumerate() {
                if !transform[t][f].is_zero() {
                    *entry = poly.add(entry, &poly.mul(zt, &transform[t][f])?);
                }
            }
        }
        raw.push(FreeVector::from_polys(poly, &order, &row));
    }
    for (f, input) in padded.iter().enumerate() {
        let div = divide(poly, &order, input, &gb.gens)?;
        if !div.remainder.is_zero() {
            return Err(Error::ConsistencyFailure(
                "generator failed to reduce against its own basis".into(),
            ));
        }
        let mut row = vec![poly.zero(); padded.len()];
        row[f] = poly.one();
        for (t, q) in div.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (g, entry) in row.iter_mut().enumerate() {
                if !transform[t][g].is_zero() {
                    *entry = poly.sub(entry, &poly.mul(q, &transform[t][g])?);
                }
            }
        }
        raw.push(FreeVector::from_polys(poly, &order, &row));
    }

    let mut syz = Vec::new();
    for z in raw {
        let projected = ring.nf_vec(&z.project(vecs.len()), vecs.len())?;
        if !projected.is_zero() {
            syz.push(projected);
        }
    }
    let solver = LinearSolverA {
        ncols: vecs.len(),
        gens: gb.gens,
        transform: gb.transform.unwrap(),
    };
    Ok((syz, solver))
}

/// Expresses vectors over a fixed column list modulo the defining ideal.
#[derive(Debug, Clone)]
pub struct LinearSolverA {
    ncols: usize,
    gens: Vec<FreeVector>,
    transform: Vec<Vec<Polynomial>>,
}

impl LinearSolverA {
    pub fn new(ring: &RingSpec, cols: &[FreeVector], ncomps: usize) -> Result<LinearSolverA> {
        Ok(syz_a_with_solver(ring, cols, ncomps)?.1)
    }

    /// Coefficients `a` with `v = sum a_f cols[f]` over the quotient ring,
    /// or `None` when `v` is not in the span.
    pub fn solve(&self, ring: &RingSpec, v: &FreeVector) -> Result<Option<Vec<Polynomial>>> {
        let poly = ring.poly();
        let order = pot(ring);
        let div = divide(poly, &order, v, &self.gens)?;
        if !div.remainder.is_zero() {
            return Ok(None);
        }
        let mut out = vec![poly.zero(); self.ncols];
        for (t, q) in div.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (f, entry) in out.iter_mut().enumerate() {
                if !self.transform[t][f].is_zero() {
                    *entry = poly.add(entry, &poly.mul(q, &self.transform[t][f])?);
                }
            }
        }
        for entry in out.iter_mut() {
            *entry = ring.nf(entry)?;
        }
        Ok(Some(out))
    }
}

/// A finitely presented graded module: generators with internal-degree
/// twists, and homogeneous relation columns over the polynomial ring.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    ring: Arc<RingSpec>,
    gen_twists: Vec<i64>,
    relations: Vec<FreeVector>,
    full_gb: OnceLock<Arc<Vec<FreeVector>>>,
}

impl PresentedModule {
    pub fn new(
        ring: Arc<RingSpec>,
        gen_twists: Vec<i64>,
        relations: Vec<FreeVector>,
    ) -> Result<PresentedModule> {
        let ngens = gen_twists.len();
        let mut kept = Vec::with_capacity(relations.len());
        for rel in &relations {
            if let Some(c) = rel.max_comp() {
                if c >= ngens {
                    return Err(Error::DimensionMismatch(format!(
                        "relation touches component {} of a rank-{} module",
                        c, ngens
                    )));
                }
            }
            let rel = ring.nf_vec(rel, ngens)?;
            if rel.is_zero() {
                continue;
            }
            if rel.homogeneous_degree(&gen_twists).is_err() {
                return Err(Error::InhomogeneousInput(
                    rel.format(ring.poly(), ngens),
                ));
            }
            kept.push(rel);
        }
        Ok(PresentedModule {
            ring,
            gen_twists,
            relations: kept,
            full_gb: OnceLock::new(),
        })
    }

    pub fn free(ring: Arc<RingSpec>, twists: Vec<i64>) -> PresentedModule {
        PresentedModule {
            ring,
            gen_twists: twists,
            relations: Vec::new(),
            full_gb: OnceLock::new(),
        }
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: Arc<RingSpec>) -> PresentedModule {
        PresentedModule::free(ring, vec![0])
    }

    /// The residue field `A/m`.
    pub fn residue_field(ring: Arc<RingSpec>) -> PresentedModule {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.poly().var(i)).collect();
        PresentedModule::quot_by_ideal(ring, &vars).expect("variables are homogeneous")
    }

    /// The cyclic module `A/(gens)`.
    pub fn quot_by_ideal(ring: Arc<RingSpec>, gens: &[Polynomial]) -> Result<PresentedModule> {
        let order = pot(&ring);
        let rels: Vec<FreeVector> = gens
            .iter()
            .map(|g| crate::freemod::poly_to_vec(ring.poly(), &order, g, 0))
            .collect();
        PresentedModule::new(ring, vec![0], rels)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.gen_twists.len()
    }

    pub fn gen_twists(&self) -> &[i64] {
        &self.gen_twists
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.relations
    }

    /// Groebner basis of the full relation submodule, defining ideal
    /// included; cached after the first computation.
    pub fn full_gb(&self) -> Result<Arc<Vec<FreeVector>>> {
        if let Some(g) = self.full_gb.get() {
            return Ok(g.clone());
        }
        let order = pot(&self.ring);
        let mut inputs = self.relations.clone();
        inputs.extend(pads(&self.ring, self.ngens()));
        let gb = buchberger(self.ring.poly(), &order, &inputs, false)?;
        let arc = Arc::new(gb.gens);
        let _ = self.full_gb.set(arc);
        Ok(self.full_gb.get().unwrap().clone())
    }

    /// Canonical representative of an element.
    pub fn reduce(&self, v: &FreeVector) -> Result<FreeVector> {
        let order = pot(&self.ring);
        crate::groebner::nf(self.ring.poly(), &order, v, &self.full_gb()?)
    }

    pub fn is_zero_element(&self, v: &FreeVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        for i in 0..self.ngens() {
            if !self.is_zero_element(&FreeVector::basis(i, self.ring.nvars()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension over the base field of the degree-`d` graded piece,
    /// counted by standard monomials of the relation basis.
    pub fn hilbert(&self, d: i64) -> Result<usize> {
        let gb = self.full_gb()?;
        let leads: Vec<&FreeTerm> = gb.iter().filter_map(|v| v.leading()).collect();
        let mut count = 0;
        for (i, twist) in self.gen_twists.iter().enumerate() {
            let md = d - twist;
            if md < 0 {
                continue;
            }
            for m in crate::monomial::monomials_of_degree(
                self.ring.nvars(),
                md as u32,
                self.ring.poly().order(),
            ) {
                let blocked = leads.iter().any(|l| l.comp == i && l.mono.divides(&m));
                if !blocked {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Total dimension over the base field; `None` when infinite.
    pub fn length(&self) -> Result<Option<u64>> {
        if self.ngens() == 0 {
            return Ok(Some(0));
        }
        let gb = self.full_gb()?;
        let nvars = self.ring.nvars();
        let mut max_d = i64::MIN;
        for (i, twist) in self.gen_twists.iter().enumerate() {
            let mut comp_span: i64 = 0;
            for k in 0..nvars {
                let pure = gb
                    .iter()
                    .filter_map(|v| v.leading())
                    .filter(|l| {
                        l.comp == i
                            && l.mono
                                .exps()
                                .iter()
                                .enumerate()
                                .all(|(j, e)| *e == 0 || j == k)
                    })
                    .map(|l| l.mono.exps()[k] as i64)
                    .min();
                match pure {
                    Some(a) => comp_span += (a - 1).max(0),
                    None => return Ok(None),
                }
            }
            max_d = max_d.max(twist + comp_span);
        }
        let min_d = *self.gen_twists.iter().min().unwrap();
        let mut total: u64 = 0;
        for d in min_d..=max_d {
            total += self.hilbert(d)? as u64;
        }
        Ok(Some(total))
    }

    /// Shift every generator degree by `delta`.
    pub fn twist(&self, delta: i64) -> PresentedModule {
        PresentedModule {
            ring: self.ring.clone(),
            gen_twists: self.gen_twists.iter().map(|t| t + delta).collect(),
            relations: self.relations.clone(),
            full_gb: self.full_gb.clone(),
        }
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        let mut twists = self.gen_twists.clone();
        twists.extend_from_slice(&other.gen_twists);
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|r| r.shift_comps(self.ngens())));
        PresentedModule {
            ring: self.ring.clone(),
            gen_twists: twists,
            relations,
            full_gb: OnceLock::new(),
        }
    }

    /// Direct sum of `offsets.len()` copies of this module, block `b`
    /// twisted by `offsets[b]`; generator `(b, t)` gets index
    /// `b * ngens() + t`.
    pub fn block_sum(&self, offsets: &[i64]) -> PresentedModule {
        let n = self.ngens();
        let mut twists = Vec::with_capacity(offsets.len() * n);
        let mut relations = Vec::with_capacity(offsets.len() * self.relations.len());
        for (b, off) in offsets.iter().enumerate() {
            twists.extend(self.gen_twists.iter().map(|t| t + off));
            relations.extend(self.relations.iter().map(|r| r.shift_comps(b * n)));
        }
        PresentedModule {
            ring: self.ring.clone(),
            gen_twists: twists,
            relations,
            full_gb: OnceLock::new(),
        }
    }

    /// Stable textual fingerprint of the presentation, for caching.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        s.push_str("t:");
        for t in &self.gen_twists {
            s.push_str(&format!("{},", t));
        }
        s.push_str(";r:");
        for r in &self.relations {
            s.push_str(&r.format(self.ring.poly(), self.ngens()));
            s.push('|');
        }
        s
    }

    pub fn same_presentation(&self, other: &PresentedModule) -> bool {
        self.gen_twists == other.gen_twists && self.relations == other.relations
    }
}

/// Indices of a minimal generating subset of homogeneous vectors inside
/// the free module with the given twists, greedily by degree: a vector is
/// kept exactly when it is not an algebra combination of earlier kept ones.
pub fn mingens(ring: &RingSpec, twists: &[i64], vecs: &[FreeVector]) -> Result<Vec<usize>> {
    let mut degs: Vec<(i64, usize)> = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        let v = ring.nf_vec(v, twists.len())?;
        match v.homogeneous_degree(twists) {
            Ok(Some(d)) => degs.push((d, i)),
            Ok(None) => {}
            Err(()) => {
                return Err(Error::InhomogeneousInput(v.format(ring.poly(), twists.len())))
            }
        }
    }
    degs.sort();
    let mut kept: Vec<usize> = Vec::new();
    let mut pos = 0;
    while pos < degs.len() {
        let d = degs[pos].0;
        let mut end = pos;
        while end < degs.len() && degs[end].0 == d {
            end += 1;
        }
        // Coordinates of the degree-d slice of the ambient free module.
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        for (i, twist) in twists.iter().enumerate() {
            let md = d - twist;
            if md < 0 {
                continue;
            }
            for m in ring.std_monomials(md as u32) {
                let next = index.len();
                index.insert((i, m), next);
            }
        }
        let dim = index.len();
        let coords = |v: &FreeVector| -> Result<Vec<u64>> {
            let mut out = vec![0u64; dim];
            for t in v.terms() {
                match index.get(&(t.comp, t.mono.clone())) {
                    Some(&k) => out[k] = t.coeff,
                    None => {
                        return Err(Error::ConsistencyFailure(
                            "vector has a coordinate outside its degree slice".into(),
                        ))
                    }
                }
            }
            Ok(out)
        };
        let mut tracker = SpanTracker::new(ring.poly().field(), dim);
        for &k in &kept {
            let v = ring.nf_vec(&vecs[k], twists.len())?;
            let e = match v.homogeneous_degree(twists) {
                Ok(Some(e)) => e,
                _ => continue,
            };
            if e > d || (d - e) < 0 {
                continue;
            }
            for m in ring.std_monomials((d - e) as u32) {
                let w = ring.nf_vec(&v.mul_term(ring.poly(), &m, 1)?, twists.len())?;
                if !w.is_zero() {
                    tracker.insert(coords(&w)?);
                }
            }
        }
        for &(_, i) in &degs[pos..end] {
            let v = ring.nf_vec(&vecs[i], twists.len())?;
            if v.is_zero() {
                continue;
            }
            if !tracker.insert(coords(&v)?) {
                kept.push(i);
            }
        }
        kept.sort();
        pos = end;
    }
    kept.sort();
    Ok(kept)
}

/// Minimal generators of an ideal in the quotient ring.
pub fn minimal_ideal_gens(ring: &RingSpec, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = pot(ring);
    let vecs: Vec<FreeVector> = gens
        .iter()
        .map(|g| crate::freemod::poly_to_vec(ring.poly(), &order, g, 0))
        .collect();
    let kept = mingens(ring, &[0], &vecs)?;
    kept.iter().map(|&i| ring.nf(&gens[i])).collect()
}

/// A module together with the elimination data of its minimal presentation.
#[derive(Debug, Clone)]
pub struct Minimalized {
    pub module: PresentedModule,
    /// Expression of each original generator over the kept generators.
    pub old_to_new: Vec<FreeVector>,
    /// Original indices of the surviving generators, in order.
    pub kept: Vec<usize>,
}

impl PresentedModule {
    /// Minimal presentation: cancel unit entries of the relation matrix,
    /// then thin the surviving relations to a minimal generating set.
    pub fn minimalize(&self) -> Result<Minimalized> {
        let poly = self.ring.poly();
        let order = pot(&self.ring);
        let n = self.ngens();
        let mut alive: Vec<bool> = vec![true; n];
        let mut rels: Vec<FreeVector> = self.relations.clone();
        let mut exprs: Vec<FreeVector> = (0..n)
            .map(|g| FreeVector::basis(g, self.ring.nvars()))
            .collect();

        loop {
            let mut pivot: Option<(usize, usize, u64)> = None;
            'scan: for (ri, r) in rels.iter().enumerate() {
                for t in r.terms() {
                    if t.mono.is_one() {
                        pivot = Some((ri, t.comp, t.coeff));
                        break 'scan;
                    }
                }
            }
            let Some((ri, comp, coeff)) = pivot else { break };
            let r = rels.remove(ri);
            let field = poly.field();
            let inv = field.inv(coeff)?;
            // r = coeff * e_comp + rest, so e_comp = -inv * rest.
            let rest = FreeVector::from_terms(
                poly,
                &order,
                r.terms().iter().filter(|t| t.comp != comp).cloned().collect(),
            );
            let sub = rest.scale(poly, field.neg(inv));
            let substitute = |v: &FreeVector| -> Result<FreeVector> {
                let mut coeff_terms = Vec::new();
                let mut others = Vec::new();
                for t in v.terms() {
                    if t.comp == comp {
                        coeff_terms.push((t.mono.clone(), t.coeff));
                    } else {
                        others.push(t.clone());
                    }
                }
                if coeff_terms.is_empty() {
                    return Ok(v.clone());
                }
                let q = poly.from_terms(coeff_terms);
                let replaced = sub.mul_poly(poly, &order, &q)?;
                let base = FreeVector::from_terms(poly, &order, others);
                self.ring.nf_vec(&base.add(poly, &order, &replaced), n)
            };
            for rel in rels.iter_mut() {
                *rel = substitute(rel)?;
            }
            rels.retain(|r| !r.is_zero());
            for e in exprs.iter_mut() {
                *e = substitute(e)?;
            }
            alive[comp] = false;
        }

        let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let remap: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let compact = |v: &FreeVector| -> FreeVector {
            FreeVector::from_terms(
                poly,
                &order,
                v.terms()
                    .iter()
                    .map(|t| FreeTerm {
                        comp: *remap.get(&t.comp).expect("dead component must not appear"),
                        mono: t.mono.clone(),
                        coeff: t.coeff,
                    })
                    .collect(),
            )
        };
        let twists: Vec<i64> = keep.iter().map(|&i| self.gen_twists[i]).collect();
        let rels: Vec<FreeVector> = rels.iter().map(&compact).collect();
        let kept_rel_idx = mingens(&self.ring, &twists, &rels)?;
        let min_rels: Vec<FreeVector> =
            kept_rel_idx.iter().map(|&i| rels[i].clone()).collect();
        debug_assert!(min_rels
            .iter()
            .all(|r| r.terms().iter().all(|t| !t.mono.is_one())));
        let module = PresentedModule::new(self.ring.clone(), twists, min_rels)?;
        let old_to_new = exprs.iter().map(&compact).collect();
        Ok(Minimalized { module, old_to_new, kept: keep })
    }
}

/// A graded map between presented modules: one image column per source
/// generator, each homogeneous of degree `source twist + shift`.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: Arc<PresentedModule>,
    target: Arc<PresentedModule>,
    shift: i64,
    cols: Vec<FreeVector>,
}

impl ModuleMap {
    pub fn new(
        source: Arc<PresentedModule>,
        target: Arc<PresentedModule>,
        shift: i64,
        cols: Vec<FreeVector>,
    ) -> Result<ModuleMap> {
        if cols.len() != source.ngens() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for {} generators",
                cols.len(),
                source.ngens()
            )));
        }
        let mut reduced = Vec::with_capacity(cols.len());
        for (j, col) in cols.iter().enumerate() {
            if let Some(c) = col.max_comp() {
                if c >= target.ngens() {
                    return Err(Error::DimensionMismatch(format!(
                        "column {} touches component {} of a rank-{} target",
                        j,
                        c,
                        target.ngens()
                    )));
                }
            }
            let col = target.reduce(col)?;
            match col.homogeneous_degree(target.gen_twists()) {
                Ok(None) => {}
                Ok(Some(d)) if d == source.gen_twists()[j] + shift => {}
                Ok(Some(d)) => {
                    return Err(Error::IllFormedMap(format!(
                        "column {} has degree {}, expected {}",
                        j,
                        d,
                        source.gen_twists()[j] + shift
                    )))
                }
                Err(()) => {
                    return Err(Error::IllFormedMap(format!(
                        "column {} is not homogeneous",
                        j
                    )))
                }
            }
            reduced.push(col);
        }
        let map = ModuleMap { source, target, shift, cols: reduced };
        for rel in map.source.relations() {
            let image = map.apply_raw(rel)?;
            if !map.target.is_zero_element(&image)? {
                return Err(Error::IllFormedMap(format!(
                    "image of relation {} is nonzero",
                    rel.format(map.source.ring().poly(), map.source.ngens())
                )));
            }
        }
        Ok(map)
    }

    pub fn zero(source: Arc<PresentedModule>, target: Arc<PresentedModule>, shift: i64) -> ModuleMap {
        let cols = vec![FreeVector::zero(); source.ngens()];
        ModuleMap { source, target, shift, cols }
    }

    pub fn identity(module: Arc<PresentedModule>) -> ModuleMap {
        let nvars = module.ring().nvars();
        let cols = (0..module.ngens()).map(|i| FreeVector::basis(i, nvars)).collect();
        ModuleMap { source: module.clone(), target: module, shift: 0, cols }
    }

    pub fn source(&self) -> &Arc<PresentedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedModule> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn cols(&self) -> &[FreeVector] {
        &self.cols
    }

    /// Image of a raw coordinate vector, before canonical reduction.
    fn apply_raw(&self, v: &FreeVector) -> Result<FreeVector> {
        let poly = self.source.ring().poly();
        let order = pot(self.source.ring());
        let coords = v.to_polys(poly, self.source.ngens());
        let mut acc = FreeVector::zero();
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() || self.cols[j].is_zero() {
                continue;
            }
            acc = acc.add(poly, &order, &self.cols[j].mul_poly(poly, &order, c)?);
        }
        Ok(acc)
    }

    /// Image of an element, canonically reduced in the target.
    pub fn apply(&self, v: &FreeVector) -> Result<FreeVector> {
        self.target.reduce(&self.apply_raw(v)?)
    }

    /// `self` after `inner`: the composite `self . inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if !inner.target.same_presentation(&self.source) {
            return Err(Error::DimensionMismatch(
                "composition through mismatched modules".into(),
            ));
        }
        let cols: Result<Vec<FreeVector>> =
            inner.cols.iter().map(|c| self.apply(c)).collect();
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            shift: self.shift + inner.shift,
            cols: cols?,
        })
    }

    pub fn is_zero_map(&self) -> Result<bool> {
        for c in &self.cols {
            if !self.target.is_zero_element(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The kernel of a map, as a presented module plus a representative in the
/// source for each kernel generator.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub module: PresentedModule,
    pub reps: Vec<FreeVector>,
}

pub fn kernel(map: &ModuleMap) -> Result<Kernel> {
    let ring = map.source().ring().clone();
    let m = map.source();
    let tgt = map.target();
    let mut in_target: Vec<FreeVector> = map.cols().to_vec();
    in_target.extend_from_slice(tgt.relations());
    let raw = syz_a(&ring, &in_target, tgt.ngens())?;
    let mut reps: Vec<FreeVector> = Vec::new();
    for z in &raw {
        let a = ring.nf_vec(&z.project(map.cols().len()), m.ngens())?;
        if !a.is_zero() && !m.is_zero_element(&a)? {
            reps.push(m.reduce(&a)?);
        }
    }
    let twists: Vec<i64> = reps
        .iter()
        .map(|v| {
            v.homogeneous_degree(m.gen_twists())
                .expect("syzygies of homogeneous data are homogeneous")
                .expect("nonzero")
        })
        .collect();
    let mut in_source: Vec<FreeVector> = reps.clone();
    in_source.extend_from_slice(m.relations());
    let raw_rel = syz_a(&ring, &in_source, m.ngens())?;
    let mut relations = Vec::new();
    for z in &raw_rel {
        let c = z.project(reps.len());
        if !c.is_zero() {
            relations.push(c);
        }
    }
    let module = PresentedModule::new(ring, twists, relations)?;
    Ok(Kernel { module, reps })
}

/// The homology `ker(psi) / im(phi)` at the middle of `A --phi--> B --psi--> C`,
/// with representatives in `B` for each homology generator and a solver to
/// express further cycles over those generators.
#[derive(Debug)]
pub struct Homology {
    pub module: PresentedModule,
    pub reps: Vec<FreeVector>,
    solver: LinearSolverA,
}

impl Homology {
    /// Class of a cycle in terms of the homology generators.
    pub fn express(&self, ring: &RingSpec, cycle: &FreeVector) -> Result<Vec<Polynomial>> {
        match self.solver.solve(ring, cycle)? {
            Some(mut coeffs) => {
                coeffs.truncate(self.module.ngens());
                Ok(coeffs)
            }
            None => Err(Error::ConsistencyFailure(
                "claimed cycle is not a cycle".into(),
            )),
        }
    }
}

pub fn homology(psi: &ModuleMap, phi: &ModuleMap) -> Result<Homology> {
    if !phi.target().same_presentation(psi.source()) {
        return Err(Error::DimensionMismatch(
            "homology maps do not share the middle module".into(),
        ));
    }
    let ring = psi.source().ring().clone();
    let b = psi.source();
    let c = psi.target();
    let composite = psi.compose(phi)?;
    if !composite.is_zero_map()? {
        return Err(Error::ComposeNotZero(
            "differentials fail to square to zero".into(),
        ));
    }

    let mut in_c: Vec<FreeVector> = psi.cols().to_vec();
    in_c.extend_from_slice(c.relations());
    let raw = syz_a(&ring, &in_c, c.ngens())?;
    let mut reps: Vec<FreeVector> = Vec::new();
    for z in &raw {
        let a = ring.nf_vec(&z.project(psi.cols().len()), b.ngens())?;
        if !a.is_zero() && !b.is_zero_element(&a)? {
            reps.push(b.reduce(&a)?);
        }
    }
    let twists: Vec<i64> = reps
        .iter()
        .map(|v| {
            v.homogeneous_degree(b.gen_twists())
                .expect("syzygies of homogeneous data are homogeneous")
                .expect("nonzero")
        })
        .collect();

    let mut in_b: Vec<FreeVector> = reps.clone();
    in_b.extend_from_slice(phi.cols());
    in_b.extend_from_slice(b.relations());
    let (raw_rel, solver) = syz_a_with_solver(&ring, &in_b, b.ngens())?;
    let mut relations = Vec::new();
    for z in &raw_rel {
        let cvec = z.project(reps.len());
        if !cvec.is_zero() {
            relations.push(cvec);
        }
    }
    let module = PresentedModule::new(ring, twists, relations)?;
    Ok(Homology { module, reps, solver })
}

/// The submodule of `m` generated by the given elements, presented on those
/// elements as generators.
pub fn submodule_of(
    m: &PresentedModule,
    gens: &[FreeVector],
) -> Result<(PresentedModule, Vec<FreeVector>)> {
    let ring = m.ring().clone();
    let mut reps = Vec::new();
    for g in gens {
        let g = m.reduce(g)?;
        if !g.is_zero() {
            reps.push(g);
        }
    }
    let twists: Vec<i64> = reps
        .iter()
        .map(|v| {
            v.homogeneous_degree(m.gen_twists())
                .expect("homogeneous input")
                .expect("nonzero")
        })
        .collect();
    let mut inputs: Vec<FreeVector> = reps.clone();
    inputs.extend_from_slice(m.relations());
    let raw = syz_a(&ring, &inputs, m.ngens())?;
    let mut relations = Vec::new();
    for z in &raw {
        let c = z.project(reps.len());
        if !c.is_zero() {
            relations.push(c);
        }
    }
    let module = PresentedModule::new(ring, twists, relations)?;
    Ok((module, reps))
}

/// `m` modulo the submodule generated by the given elements.
pub fn quotient_by_submodule(
    m: &PresentedModule,
    gens: &[FreeVector],
) -> Result<PresentedModule> {
    let mut relations = m.relations().to_vec();
    relations.extend_from_slice(gens);
    PresentedModule::new(m.ring().clone(), m.gen_twists().to_vec(), relations)
}

/// All products of `n` ideal generators, reduced; `n = 0` gives `[1]`.
pub fn ideal_power_products(
    ring: &RingSpec,
    gens: &[Polynomial],
    n: usize,
) -> Result<Vec<Polynomial>> {
    let poly = ring.poly();
    let mut acc: Vec<Polynomial> = vec![poly.one()];
    for _ in 0..n {
        let mut next: Vec<Polynomial> = Vec::new();
        for p in &acc {
            for g in gens {
                let q = ring.nf(&poly.mul(p, g)?)?;
                if !q.is_zero() && !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// Generators of `I^n * m` inside `m`: every power product against every
/// module generator.
pub fn ideal_power_times_module(
    ring: &RingSpec,
    ideal: &[Polynomial],
    m: &PresentedModule,
    n: usize,
) -> Result<Vec<FreeVector>> {
    let poly = ring.poly();
    let order = pot(ring);
    let prods = ideal_power_products(ring, ideal, n)?;
    let mut out = Vec::new();
    for g in 0..m.ngens() {
        for p in &prods {
            let v = crate::freemod::poly_to_vec(poly, &order, p, g);
            let v = m.reduce(&v)?;
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// `N / I^n N`.
pub fn rees_quotient(
    ring: &RingSpec,
    ideal: &[Polynomial],
    n_mod: &PresentedModule,
    n: usize,
) -> Result<PresentedModule> {
    let gens = ideal_power_times_module(ring, ideal, n_mod, n)?;
    quotient_by_submodule(n_mod, &gens)
}

/// `I^n N` as a module in its own right.
pub fn rees_power(
    ring: &RingSpec,
    ideal: &[Polynomial],
    n_mod: &PresentedModule,
    n: usize,
) -> Result<PresentedModule> {
    let gens = ideal_power_times_module(ring, ideal, n_mod, n)?;
    Ok(submodule_of(n_mod, &gens)?.0)
}

/// `I^n N / I^{n+1} N`.
pub fn rees_graded_piece(
    ring: &RingSpec,
    ideal: &[Polynomial],
    n_mod: &PresentedModule,
    n: usize,
) -> Result<PresentedModule> {
    let gens = ideal_power_times_module(ring, ideal, n_mod, n)?;
    let (sub, reps) = submodule_of(n_mod, &gens)?;
    // I * (the submodule), expressed directly on the submodule generators.
    let poly = ring.poly();
    let order = pot(ring);
    let mut higher = Vec::new();
    for s in 0..reps.len() {
        for h in ideal {
            let v = crate::freemod::poly_to_vec(poly, &order, &ring.nf(h)?, s);
            if !v.is_zero() {
                higher.push(v);
            }
        }
    }
    quotient_by_submodule(&sub, &higher)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::monomial::MonomialOrder;
    use crate::parse::{parse_poly_list, parse_polynomial};
    use crate::poly::PolyRing;

    fn ci(vars: &[&str], rels: &str) -> Arc<RingSpec> {
        let p = PolyRing::new(
            Fp::new(101).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let f = if rels.trim().is_empty() {
            vec![]
        } else {
            parse_poly_list(&p, rels, 1).unwrap()
        };
        Arc::new(RingSpec::new(p, f).unwrap())
    }

    #[test]
    fn residue_field_has_length_one() {
        let a = ci(&["x", "y"], "x^2");
        let k = PresentedModule::residue_field(a);
        assert_eq!(k.hilbert(0).unwrap(), 1);
        assert_eq!(k.hilbert(1).unwrap(), 0);
        assert_eq!(k.length().unwrap(), Some(1));
        assert!(!k.is_zero_module().unwrap());
    }

    #[test]
    fn ring_module_lengths() {
        let a = ci(&["x", "y"], "x^2, y^2");
        let m = PresentedModule::ring_module(a.clone());
        // Basis 1, x, y, xy.
        assert_eq!(m.length().unwrap(), Some(4));
        let half = ci(&["x", "y"], "x^2");
        let inf = PresentedModule::ring_module(half);
        assert_eq!(inf.length().unwrap(), None);
        assert_eq!(inf.hilbert(0).unwrap(), 1);
        assert_eq!(inf.hilbert(3).unwrap(), 2);
    }

    #[test]
    fn syzygies_over_quotient_see_the_relations() {
        // Over A = F_p[x]/(x^2), the annihilator of x is (x), so the
        // syzygy module of the single vector (x) is generated by x*e0.
        let a = ci(&["x"], "x^2");
        let order = pot(&a);
        let x = crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0);
        let syz = syz_a(&a, &[x.clone()], 1).unwrap();
        assert_eq!(syz.len(), 1);
        let gb = buchberger(a.poly(), &order, &syz, false).unwrap();
        assert!(crate::groebner::is_member(a.poly(), &order, &x, &gb.gens).unwrap());
        // And nothing smaller: 1*e0 is not a syzygy.
        assert!(!crate::groebner::is_member(
            a.poly(),
            &order,
            &FreeVector::basis(0, 1),
            &gb.gens
        )
        .unwrap());
    }

    #[test]
    fn solver_expresses_membership() {
        let a = ci(&["x", "y"], "x^2 + y^2");
        let order = pot(&a);
        let cols = [
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0),
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(1), 0),
        ];
        let solver = LinearSolverA::new(&a, &cols, 1).unwrap();
        // x^2 = x*x is in the span of (x, y); 1 is not.
        let sq = crate::freemod::poly_to_vec(
            a.poly(),
            &order,
            &a.poly().pow(&a.poly().var(0), 2).unwrap(),
            0,
        );
        let coeffs = solver.solve(&a, &sq).unwrap().unwrap();
        let mut acc = a.poly().zero();
        for (c, col) in coeffs.iter().zip(&[a.poly().var(0), a.poly().var(1)]) {
            acc = a.poly().add(&acc, &a.poly().mul(c, col).unwrap());
        }
        assert!(a.nf(&a.poly().sub(&acc, &a.poly().pow(&a.poly().var(0), 2).unwrap()))
            .unwrap()
            .is_zero());
        let one = crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().one(), 0);
        assert!(solver.solve(&a, &one).unwrap().is_none());
    }

    #[test]
    fn mingens_drops_dependent_generator() {
        let a = ci(&["x", "y"], "");
        let order = pot(&a);
        let p = |s: &str| {
            crate::freemod::poly_to_vec(
                a.poly(),
                &order,
                &parse_polynomial(a.poly(), s, 1).unwrap(),
                0,
            )
        };
        let vecs = vec![p("x^2"), p("y^2"), p("x^2 + y^2"), p("x^3")];
        let kept = mingens(&a, &[0], &vecs).unwrap();
        assert_eq!(kept, vec![0, 1]);
    }

    #[test]
    fn minimal_ideal_gens_counts_mu() {
        // In A = F_p[x, y]/(x^2, y^2), the maximal ideal needs two
        // generators and x*y is redundant given x and y? No: x*y is not in
        // (x)*m + ... it IS x * y with x a generator times y in A. mu(m) = 2.
        let a = ci(&["x", "y"], "x^2, y^2");
        let gens = parse_poly_list(a.poly(), "x, y, x*y", 1).unwrap();
        let min = minimal_ideal_gens(&a, &gens).unwrap();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn minimalize_cancels_redundant_generator() {
        // <e0, e1> / (e1 - x e0, x^2 e0, y e1) presents A/(x^2, xy) on one
        // generator after cancelling e1.
        let a = ci(&["x", "y"], "");
        let order = pot(&a);
        let poly = a.poly().clone();
        let e1_minus_xe0 = FreeVector::from_terms(
            &poly,
            &order,
            vec![
                FreeTerm { comp: 1, mono: Monomial::one(2), coeff: 1 },
                FreeTerm { comp: 0, mono: Monomial::var(0, 2), coeff: 100 },
            ],
        );
        let x2e0 = crate::freemod::poly_to_vec(
            &poly,
            &order,
            &poly.pow(&poly.var(0), 2).unwrap(),
            0,
        );
        let ye1 = FreeVector::from_terms(
            &poly,
            &order,
            vec![FreeTerm { comp: 1, mono: Monomial::var(1, 2), coeff: 1 }],
        );
        let m = PresentedModule::new(a.clone(), vec![0, 1], vec![e1_minus_xe0, x2e0, ye1])
            .unwrap();
        let min = m.minimalize().unwrap();
        assert_eq!(min.module.ngens(), 1);
        assert_eq!(min.module.gen_twists(), &[0]);
        // e1 = x e0 in the minimal presentation.
        assert_eq!(min.old_to_new[1].format(&poly, 1), "(x)*e0");
        // Relations x^2, x y on the survivor.
        assert_eq!(min.module.relations().len(), 2);
        for (d, rel) in min.module.relations().iter().enumerate() {
            assert!(rel.homogeneous_degree(&[0]).unwrap().is_some(), "rel {}", d);
        }
        let lengths: Vec<usize> =
            (0..4).map(|d| min.module.hilbert(d).unwrap()).collect();
        // A/(x^2, xy): 1, 2, 1, 1 in degrees 0..3 (basis 1; x, y; y^2; y^3).
        assert_eq!(lengths, vec![1, 2, 1, 1]);
    }

    #[test]
    fn kernel_of_multiplication_by_x() {
        // On A = F_p[x, y]/(x^2), multiplication by x has kernel (x).
        let a = ci(&["x", "y"], "x^2");
        let m = Arc::new(PresentedModule::ring_module(a.clone()));
        let order = pot(&a);
        let x_col =
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0);
        let by_x = ModuleMap::new(m.clone(), m.clone(), 1, vec![x_col]).unwrap();
        let ker = kernel(&by_x).unwrap();
        assert!(!ker.module.is_zero_module().unwrap());
        // (x) has one standard monomial in each positive degree: x*y^(d-1).
        assert_eq!(ker.module.hilbert(0).unwrap(), 0);
        assert_eq!(ker.module.hilbert(1).unwrap(), 1);
        assert_eq!(ker.module.hilbert(4).unwrap(), 1);
        for rep in &ker.reps {
            assert!(m.is_zero_element(&by_x.apply(rep).unwrap()).unwrap());
        }
    }

    #[test]
    fn homology_of_exact_stretch_vanishes() {
        // A --x--> A --x--> A over F_p[x, y]/(x^2) is exact in the middle.
        let a = ci(&["x", "y"], "x^2");
        let m = Arc::new(PresentedModule::ring_module(a.clone()));
        let order = pot(&a);
        let x_col =
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0);
        let by_x = ModuleMap::new(m.clone(), m.clone(), 1, vec![x_col]).unwrap();
        let h = homology(&by_x, &by_x).unwrap();
        assert!(h.module.is_zero_module().unwrap());
    }

    #[test]
    fn homology_with_zero_incoming_map() {
        // ker(x) / im(0) = (x) = A/(x) up to shift over F_p[x, y]/(x^2).
        let a = ci(&["x", "y"], "x^2");
        let m = Arc::new(PresentedModule::ring_module(a.clone()));
        let order = pot(&a);
        let x_col =
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0);
        let by_x = ModuleMap::new(m.clone(), m.clone(), 1, vec![x_col]).unwrap();
        let zero = ModuleMap::zero(m.clone(), m.clone(), 0);
        let h = homology(&by_x, &zero).unwrap();
        assert!(!h.module.is_zero_module().unwrap());
        assert_eq!(h.module.hilbert(1).unwrap(), 1);
        assert_eq!(h.module.hilbert(3).unwrap(), 1);
        // Express x itself over the homology generators.
        let x_vec =
            crate::freemod::poly_to_vec(a.poly(), &order, &a.poly().var(0), 0);
        let coeffs = h.express(&a, &x_vec).unwrap();
        assert_eq!(coeffs.len(), h.module.ngens());
        assert!(coeffs.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn rees_pieces_of_the_maximal_ideal() {
        // A = F_p[x, y]/(x^2, y^2): lengths of m^n A / m^(n+1) A are
        // 1, 2, 1, 0 for n = 0..3.
        let a = ci(&["x", "y"], "x^2, y^2");
        let m_ideal = parse_poly_list(a.poly(), "x, y", 1).unwrap();
        let module = PresentedModule::ring_module(a.clone());
        let lens: Vec<Option<u64>> = (0..4)
            .map(|n| {
                rees_graded_piece(&a, &m_ideal, &module, n)
                    .unwrap()
                    .length()
                    .unwrap()
            })
            .collect();
        assert_eq!(lens, vec![Some(1), Some(2), Some(1), Some(0)]);
        // N / m^n N grows to the full length 4 and stabilizes.
        let quots: Vec<Option<u64>> = (0..4)
            .map(|n| {
                rees_quotient(&a, &m_ideal, &module, n)
                    .unwrap()
                    .length()
                    .unwrap()
            })
            .collect();
        assert_eq!(quots, vec![Some(0), Some(1), Some(3), Some(4)]);
        // Stabilized keys agree from n = 3 onward: m^3 = 0.
        let k3 = rees_quotient(&a, &m_ideal, &module, 3).unwrap().canonical_key();
        let k4 = rees_quotient(&a, &m_ideal, &module, 4).unwrap().canonical_key();
        assert_eq!(k3, k4);
    }

    #[test]
    fn direct_sum_and_twist_bookkeeping() {
        let a = ci(&["x", "y"], "x^2");
        let k = PresentedModule::residue_field(a.clone());
        let shifted = k.twist(2);
        let sum = k.direct_sum(&shifted);
        assert_eq!(sum.ngens(), 2);
        assert_eq!(sum.hilbert(0).unwrap(), 1);
        assert_eq!(sum.hilbert(1).unwrap(), 0);
        assert_eq!(sum.hilbert(2).unwrap(), 1);
        assert_eq!(sum.length().unwrap(), Some(2));
    }

    #[test]
    fn ill_formed_map_is_rejected() {
        // Sending the generator of A/(x) to 1 in A = F_p[x, y]/(x^3) is
        // not well defined: the relation x maps to x, nonzero in A.
        let a = ci(&["x", "y"], "x^3");
        let x = parse_polynomial(a.poly(), "x", 1).unwrap();
        let source =
            Arc::new(PresentedModule::quot_by_ideal(a.clone(), &[x]).unwrap());
        let target = Arc::new(PresentedModule::ring_module(a.clone()));
        let one_col = FreeVector::basis(0, 2);
        match ModuleMap::new(source, target, 0, vec![one_col]) {
            Err(Error::IllFormedMap(_)) => {}
            other => panic!("expected ill-formed map, got {:?}", other.map(|_| ())),
        }
    }
}
