//! Koszul complexes of homogeneous ring elements with coefficients in a
//! presented module, and the classical depth reading of their homology:
//! for `s` elements, the length of a maximal regular sequence among them is
//! `s` minus the top nonvanishing homological degree.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freemod::{FreeTerm, FreeVector};
use crate::module::{homology, ModuleMap, PresentedModule};
use crate::poly::Polynomial;

fn subsets_of_size(s: usize, q: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << s) {
        if mask.count_ones() as usize == q {
            out.push(mask);
        }
    }
    out
}

/// The differentials `K_s -> K_{s-1} -> ... -> K_0` of the Koszul complex
/// on the given elements with coefficients in `e`, returned as
/// `[d_1, ..., d_s]` (`d_q` maps `K_q` to `K_{q-1}`). `K_q` is the direct
/// sum of one copy of `e` per size-`q` subset, twisted by the total degree
/// of the subset; subsets are ordered by their bitmask.
pub fn koszul_complex(
    e: &Arc<PresentedModule>,
    gens: &[Polynomial],
) -> Result<Vec<ModuleMap>> {
    let ring = e.ring().clone();
    let poly = ring.poly();
    let s = gens.len();
    let mut reduced = Vec::with_capacity(s);
    let mut degs = Vec::with_capacity(s);
    for g in gens {
        let g = ring.nf(g)?;
        let d = match poly.homogeneous_degree(&g)? {
            Some(d) => d,
            None => 0,
        };
        reduced.push(g);
        degs.push(d);
    }

    let layer = |q: usize| -> (Vec<u32>, Arc<PresentedModule>) {
        let masks = subsets_of_size(s, q);
        let offsets: Vec<i64> = masks
            .iter()
            .map(|&m| (0..s).filter(|l| m >> l & 1 == 1).map(|l| degs[l]).sum())
            .collect();
        (masks, Arc::new(e.block_sum(&offsets)))
    };

    let ne = e.ngens();
    let mut maps = Vec::with_capacity(s);
    let (mut lo_masks, mut lo) = layer(0);
    for q in 1..=s {
        let (hi_masks, hi) = layer(q);
        let mut cols = Vec::with_capacity(hi_masks.len() * ne);
        for &mask in &hi_masks {
            for t in 0..ne {
                let mut terms: Vec<FreeTerm> = Vec::new();
                let mut sign_flip = false;
                for l in 0..s {
                    if mask >> l & 1 == 0 {
                        continue;
                    }
                    let sub = mask & !(1u32 << l);
                    let idx = lo_masks.binary_search(&sub).expect("subset present");
                    for (m, c) in reduced[l].terms() {
                        let coeff = if sign_flip { poly.field().neg(*c) } else { *c };
                        terms.push(FreeTerm {
                            comp: idx * ne + t,
                            mono: m.clone(),
                            coeff,
                        });
                    }
                    sign_flip = !sign_flip;
                }
                cols.push(FreeVector::from_terms(poly, &crate::module::pot(&ring), terms));
            }
        }
        maps.push(ModuleMap::new(hi.clone(), lo.clone(), 0, cols)?);
        lo_masks = hi_masks;
        lo = hi;
    }
    Ok(maps)
}

/// Homology `H_q` of the Koszul complex on `gens` with coefficients in `e`.
pub fn koszul_homology(
    e: &Arc<PresentedModule>,
    gens: &[Polynomial],
    q: usize,
) -> Result<PresentedModule> {
    let s = gens.len();
    if q > s {
        return Err(Error::DimensionMismatch(format!(
            "homological degree {} exceeds {} elements",
            q, s
        )));
    }
    let maps = koszul_complex(e, gens)?;
    let zero = Arc::new(PresentedModule::free(e.ring().clone(), Vec::new()));
    let middle = if q == 0 {
        e.clone()
    } else {
        maps[q - 1].source().clone()
    };
    let psi = if q == 0 {
        ModuleMap::zero(middle.clone(), zero.clone(), 0)
    } else {
        maps[q - 1].clone()
    };
    let phi = if q == s {
        ModuleMap::zero(zero, middle, 0)
    } else {
        maps[q].clone()
    };
    Ok(homology(&psi, &phi)?.module)
}

/// `|gens|` minus the top nonvanishing Koszul homology degree; equals
/// `|gens|` when every homology vanishes, which happens exactly for the
/// zero module. This is the classical depth-sensitivity of the complex and
/// serves as an oracle independent of any Ext computation.
pub fn koszul_depth(e: &Arc<PresentedModule>, gens: &[Polynomial]) -> Result<usize> {
    let s = gens.len();
    for q in (0..=s).rev() {
        let h = koszul_homology(e, gens, q)?;
        if !h.is_zero_module()? {
            return Ok(s - q);
        }
    }
    Ok(s)
}
