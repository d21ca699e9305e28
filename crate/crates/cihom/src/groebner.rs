//! Groebner bases for submodules of free modules over the polynomial ring,
//! with optional expression of the basis over the original generators, plus
//! the syzygy computations built on top of them.

use crate::error::{Error, Result};
use crate::freemod::{poly_to_vec, FreeTerm, FreeVector, ModuleOrder};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use std::collections::{BTreeSet, HashSet};

/// Outcome of dividing a vector by a list of divisors:
/// `v = sum_k quotients[k] * divisors[k] + remainder`, and no term of the
/// remainder is divisible by any divisor's leading term.
#[derive(Debug, Clone)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: FreeVector,
}

/// Multivariate division. Ties between usable divisors go to the first one
/// in list order, which keeps results deterministic.
pub fn divide(
    ring: &PolyRing,
    order: &ModuleOrder,
    v: &FreeVector,
    divisors: &[FreeVector],
) -> Result<DivisionResult> {
    let field = ring.field();
    let leads: Vec<Option<&FreeTerm>> = divisors.iter().map(|d| d.leading()).collect();
    let mut work = v.clone();
    let mut rem: Vec<FreeTerm> = Vec::new();
    let mut quotients: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); divisors.len()];
    'outer: while let Some(lead) = work.leading().cloned() {
        for (k, dl) in leads.iter().enumerate() {
            if let Some(dl) = dl {
                if dl.comp == lead.comp && dl.mono.divides(&lead.mono) {
                    let m = dl.mono.div_into(&lead.mono);
                    let c = field.div(lead.coeff, dl.coeff)?;
                    let step = divisors[k].mul_term(ring, &m, c)?;
                    work = work.sub(ring, order, &step);
                    quotients[k].push((m, c));
                    continue 'outer;
                }
            }
        }
        rem.push(lead);
        work = work.tail();
    }
    Ok(DivisionResult {
        quotients: quotients.into_iter().map(|q| ring.from_terms(q)).collect(),
        remainder: FreeVector::from_sorted_unchecked(rem),
    })
}

/// Normal form of `v` modulo the divisors.
pub fn nf(
    ring: &PolyRing,
    order: &ModuleOrder,
    v: &FreeVector,
    divisors: &[FreeVector],
) -> Result<FreeVector> {
    Ok(divide(ring, order, v, divisors)?.remainder)
}

pub fn is_member(
    ring: &PolyRing,
    order: &ModuleOrder,
    v: &FreeVector,
    gb: &[FreeVector],
) -> Result<bool> {
    Ok(nf(ring, order, v, gb)?.is_zero())
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    /// The reduced basis: monic, no term divisible by another element's
    /// leading term, sorted descending by leading term.
    pub gens: Vec<FreeVector>,
    /// When requested, `gens[i] = sum_f transform[i][f] * inputs[f]`.
    pub transform: Option<Vec<Vec<Polynomial>>>,
}

fn unit_row(ring: &PolyRing, width: usize, at: usize) -> Vec<Polynomial> {
    let mut row = vec![ring.zero(); width];
    row[at] = ring.one();
    row
}

fn row_combine(
    ring: &PolyRing,
    target: &mut [Polynomial],
    coeff: &Polynomial,
    source: &[Polynomial],
) -> Result<()> {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() && !coeff.is_zero() {
            *t = ring.sub(t, &ring.mul(coeff, s)?);
        }
    }
    Ok(())
}

/// The two cofactors of an s-pair: `s = u_i * g_i - u_j * g_j` with
/// `u = (coeff, monomial)`.
fn spair_cofactors(
    field: crate::fp::Fp,
    li: &FreeTerm,
    lj: &FreeTerm,
) -> Result<((u64, Monomial), (u64, Monomial))> {
    let l = li.mono.lcm(&lj.mono);
    let ci = field.inv(li.coeff)?;
    let cj = field.inv(lj.coeff)?;
    Ok(((ci, li.mono.div_into(&l)), (cj, lj.mono.div_into(&l))))
}

/// Buchberger's algorithm, returning the reduced Groebner basis. With
/// `track` set, each basis element is also expressed over the inputs.
///
/// Pair pruning: the coprimality shortcut is applied only when every input
/// lives in component 0 (it is unsound for honest module elements), and the
/// chain criterion consults the set of still-pending pairs so that no
/// triangle loses more than one edge.
pub fn buchberger(
    ring: &PolyRing,
    order: &ModuleOrder,
    inputs: &[FreeVector],
    track: bool,
) -> Result<GroebnerBasis> {
    let field = ring.field();
    let rank1 = inputs.iter().all(|v| v.terms().iter().all(|t| t.comp == 0));
    let mut gens: Vec<FreeVector> = Vec::new();
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    for (f, v) in inputs.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let lc = v.leading().unwrap().coeff;
        gens.push(v.scale(ring, field.inv(lc)?));
        if track {
            let mut row = unit_row(ring, inputs.len(), f);
            row[f] = ring.constant(field.inv(lc)?);
            rows.push(row);
        }
    }

    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut alive: HashSet<(usize, usize)> = HashSet::new();
    let enqueue = |queue: &mut BTreeSet<(u32, usize, usize)>,
                   alive: &mut HashSet<(usize, usize)>,
                   gens: &[FreeVector],
                   n: usize| {
        let ln = gens[n].leading().unwrap();
        for i in 0..n {
            let li = gens[i].leading().unwrap();
            if li.comp == ln.comp {
                let deg = li.mono.lcm(&ln.mono).degree();
                queue.insert((deg, i, n));
                alive.insert((i, n));
            }
        }
    };
    for n in 0..gens.len() {
        enqueue(&mut queue, &mut alive, &gens, n);
    }

    while let Some(&key) = queue.iter().next() {
        queue.remove(&key);
        let (_, i, j) = key;
        alive.remove(&(i, j));
        let li = gens[i].leading().unwrap().clone();
        let lj = gens[j].leading().unwrap().clone();
        if rank1 && li.mono.coprime(&lj.mono) {
            continue;
        }
        let l = li.mono.lcm(&lj.mono);
        let chained = (0..gens.len()).any(|k| {
            k != i
                && k != j
                && gens[k].leading().map_or(false, |lk| {
                    lk.comp == li.comp && lk.mono.divides(&l)
                })
                && !alive.contains(&(k.min(i), k.max(i)))
                && !alive.contains(&(k.min(j), k.max(j)))
        });
        if chained {
            continue;
        }
        let ((ci, mi), (cj, mj)) = spair_cofactors(field, &li, &lj)?;
        let s = gens[i]
            .mul_term(ring, &mi, ci)?
            .sub(ring, order, &gens[j].mul_term(ring, &mj, cj)?);
        let div = divide(ring, order, &s, &gens)?;
        if div.remainder.is_zero() {
            continue;
        }
        let lc = div.remainder.leading().unwrap().coeff;
        let scale = field.inv(lc)?;
        if track {
            let mut row = vec![ring.zero(); inputs.len()];
            row_combine(ring, &mut row, &ring.monomial(mi, field.neg(ci)), &rows[i].clone())?;
            row_combine(ring, &mut row, &ring.monomial(mj, cj), &rows[j].clone())?;
            for (k, q) in div.quotients.iter().enumerate() {
                row_combine(ring, &mut row, q, &rows[k].clone())?;
            }
            for entry in row.iter_mut() {
                *entry = ring.scale(entry, scale);
            }
            rows.push(row);
        }
        gens.push(div.remainder.scale(ring, scale));
        enqueue(&mut queue, &mut alive, &gens, gens.len() - 1);
    }

    // Drop elements whose lead another element's lead divides, then fully
    // reduce the survivors against each other.
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by(|&a, &b| {
        order.cmp_terms(gens[a].leading().unwrap(), gens[b].leading().unwrap())
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idx {
        let li = gens[i].leading().unwrap();
        let redundant = kept.iter().any(|&k| {
            let lk = gens[k].leading().unwrap();
            lk.comp == li.comp && lk.mono.divides(&li.mono)
        });
        if !redundant {
            kept.push(i);
        }
    }
    let mut reduced: Vec<FreeVector> = kept.iter().map(|&i| gens[i].clone()).collect();
    let mut reduced_rows: Vec<Vec<Polynomial>> =
        if track { kept.iter().map(|&i| rows[i].clone()).collect() } else { Vec::new() };
    for i in 0..reduced.len() {
        let others: Vec<FreeVector> = reduced
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let div = divide(ring, order, &reduced[i], &others)?;
        debug_assert_eq!(
            div.remainder.leading(),
            reduced[i].leading(),
            "leads are irreducible after pruning"
        );
        if track {
            let mut row = reduced_rows[i].clone();
            for (pos, q) in div.quotients.iter().enumerate() {
                let k = if pos < i { pos } else { pos + 1 };
                row_combine(ring, &mut row, q, &reduced_rows[k].clone())?;
            }
            reduced_rows[i] = row;
        }
        reduced[i] = div.remainder;
    }

    let mut final_idx: Vec<usize> = (0..reduced.len()).collect();
    final_idx.sort_by(|&a, &b| {
        order.cmp_terms(reduced[b].leading().unwrap(), reduced[a].leading().unwrap())
    });
    let gens: Vec<FreeVector> = final_idx.iter().map(|&i| reduced[i].clone()).collect();
    let transform = if track {
        Some(final_idx.iter().map(|&i| reduced_rows[i].clone()).collect())
    } else {
        None
    };
    Ok(GroebnerBasis { gens, transform })
}

/// Syzygies of a Groebner basis, one per same-component pair, built from
/// the division certificates of the s-pairs. They generate the full syzygy
/// module of `gb`.
pub fn syzygy_basis(
    ring: &PolyRing,
    order: &ModuleOrder,
    gb: &[FreeVector],
) -> Result<Vec<FreeVector>> {
    let field = ring.field();
    let mut out = Vec::new();
    for j in 0..gb.len() {
        for i in 0..j {
            let li = match gb[i].leading() {
                Some(t) => t.clone(),
                None => continue,
            };
            let lj = match gb[j].leading() {
                Some(t) => t.clone(),
                None => continue,
            };
            if li.comp != lj.comp {
                continue;
            }
            let ((ci, mi), (cj, mj)) = spair_cofactors(field, &li, &lj)?;
            let s = gb[i]
                .mul_term(ring, &mi, ci)?
                .sub(ring, order, &gb[j].mul_term(ring, &mj, cj)?);
            let div = divide(ring, order, &s, gb)?;
            if !div.remainder.is_zero() {
                return Err(Error::ConsistencyFailure(
                    "s-pair of a Groebner basis failed to reduce to zero".into(),
                ));
            }
            let mut terms = vec![
                FreeTerm { comp: i, mono: mi, coeff: ci },
                FreeTerm { comp: j, mono: mj, coeff: field.neg(cj) },
            ];
            for (k, q) in div.quotients.iter().enumerate() {
                for (m, c) in q.terms() {
                    terms.push(FreeTerm { comp: k, mono: m.clone(), coeff: field.neg(*c) });
                }
            }
            out.push(FreeVector::from_terms(ring, order, terms));
        }
    }
    Ok(out)
}

/// Generators of the syzygy module of an arbitrary list of vectors: both
/// the Groebner-basis syzygies pushed back through the transform, and the
/// discrepancy rows `e_f - sum_t U[f][t] * T[t]` recording how each input
/// re-expresses over the basis.
pub fn syzygies_of(
    ring: &PolyRing,
    order: &ModuleOrder,
    inputs: &[FreeVector],
) -> Result<Vec<FreeVector>> {
    let gb = buchberger(ring, order, inputs, true)?;
    let transform = gb.transform.as_ref().unwrap();
    let mut out = Vec::new();
    for z in syzygy_basis(ring, order, &gb.gens)? {
        let parts = z.to_polys(ring, gb.gens.len());
        let mut row = vec![ring.zero(); inputs.len()];
        for (t, zt) in parts.iter().enumerate() {
            if zt.is_zero() {
                continue;
            }
            for (f, entry) in row.iter_mut().enumerate() {
                if !transform[t][f].is_zero() {
                    *entry = ring.add(entry, &ring.mul(zt, &transform[t][f])?);
                }
            }
        }
        let v = FreeVector::from_polys(ring, order, &row);
        if !v.is_zero() {
            out.push(v);
        }
    }
    for (f, input) in inputs.iter().enumerate() {
        let div = divide(ring, order, input, &gb.gens)?;
        if !div.remainder.is_zero() {
            return Err(Error::ConsistencyFailure(
                "generator failed to reduce against its own basis".into(),
            ));
        }
        let mut row = vec![ring.zero(); inputs.len()];
        row[f] = ring.one();
        for (t, q) in div.quotients.iter().enumerate() {
            row_combine(ring, &mut row, q, &transform[t])?;
        }
        let v = FreeVector::from_polys(ring, order, &row);
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

/// Reduced Groebner basis of an ideal given by polynomial generators.
pub fn ideal_gb(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = ModuleOrder::Pot(ring.order());
    let vecs: Vec<FreeVector> =
        gens.iter().map(|p| poly_to_vec(ring, &order, p, 0)).collect();
    let gb = buchberger(ring, &order, &vecs, false)?;
    Ok(gb.gens.iter().map(|v| crate::freemod::vec_to_poly(ring, v)).collect())
}

/// Normal form of a polynomial against a polynomial basis.
pub fn poly_nf(ring: &PolyRing, p: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let order = ModuleOrder::Pot(ring.order());
    let v = poly_to_vec(ring, &order, p, 0);
    let divisors: Vec<FreeVector> =
        basis.iter().map(|b| poly_to_vec(ring, &order, b, 0)).collect();
    Ok(crate::freemod::vec_to_poly(ring, &nf(ring, &order, &v, &divisors)?))
}

/// The ideal quotient `(J : g)`, from the first coordinates of the
/// syzygies of `[g, J]`.
pub fn ideal_quotient(
    ring: &PolyRing,
    j_gens: &[Polynomial],
    g: &Polynomial,
) -> Result<Vec<Polynomial>> {
    if g.is_zero() {
        return Ok(vec![ring.one()]);
    }
    let order = ModuleOrder::Pot(ring.order());
    let mut inputs = vec![poly_to_vec(ring, &order, g, 0)];
    for j in j_gens {
        inputs.push(poly_to_vec(ring, &order, j, 0));
    }
    let syz = syzygies_of(ring, &order, &inputs)?;
    let mut coords: Vec<Polynomial> = Vec::new();
    for z in &syz {
        let p = z.to_polys(ring, inputs.len()).swap_remove(0);
        if !p.is_zero() {
            coords.push(p);
        }
    }
    ideal_gb(ring, &coords)
}
