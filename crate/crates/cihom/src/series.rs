//! Exact interpolation of grid tails by bivariate polynomials with
//! rational coefficients, and the linear recurrences a rational
//! generating-function denominator `(1-u)^c (1-w)^r` imposes on its
//! coefficient grid.

use std::collections::BTreeMap;

use num::rational::Ratio;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::grid::{CellValue, GridResult};

pub type Rat = Ratio<i128>;

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0i128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] += row[j - 1];
        }
    }
    row[k]
}

/// Inclusive rectangle of grid cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub n: (i64, i64),
    pub i: (i64, i64),
}

impl Region {
    pub fn new(n: (i64, i64), i: (i64, i64)) -> Result<Region> {
        if n.0 > n.1 || i.0 > i.1 {
            return Err(Error::ConsistencyFailure("empty region".into()));
        }
        Ok(Region { n, i })
    }

    pub fn height(&self) -> usize {
        (self.n.1 - self.n.0 + 1) as usize
    }

    pub fn width(&self) -> usize {
        (self.i.1 - self.i.0 + 1) as usize
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let i_range = self.i;
        (self.n.0..=self.n.1).flat_map(move |n| (i_range.0..=i_range.1).map(move |i| (n, i)))
    }

    fn within(&self, g: &GridResult) -> bool {
        g.contains(self.n.0, self.i.0) && g.contains(self.n.1, self.i.1)
    }
}

/// An exact polynomial reproduction of a grid on a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFit {
    /// Coefficient of `n^a * i^b` keyed by `(a, b)`; zeros omitted, so an
    /// empty table is the zero polynomial.
    pub coefficients: BTreeMap<(u32, u32), Rat>,
    /// Degree in `n` and in `i`.
    pub degree: (u32, u32),
    pub fit_region: Region,
    pub validation_region: Region,
}

impl PolyFit {
    pub fn eval(&self, n: i64, i: i64) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.coefficients {
            let term = Rat::from_integer((n as i128).pow(a) * (i as i128).pow(b));
            acc += *c * term;
        }
        acc
    }
}

fn finite(g: &GridResult, n: i64, i: i64) -> Result<i128> {
    match g.get(n, i) {
        CellValue::Finite(v) => Ok(v as i128),
        CellValue::Infinity => Err(Error::NonFiniteGrid(n, i)),
    }
}

/// Coefficients, in powers of `n`, of `binomial(n - shift, a)`.
fn binom_poly(shift: i64, a: u32) -> Vec<Rat> {
    let mut coeffs = vec![Rat::one()];
    for k in 0..a {
        let root = Rat::from_integer(shift as i128 + k as i128);
        let mut next = vec![Rat::zero(); coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p] -= *c * root;
            next[p + 1] += *c;
        }
        coeffs = next;
    }
    let fact: i128 = (1..=a as i128).product::<i128>().max(1);
    let inv = Rat::new(1, fact);
    coeffs.into_iter().map(|c| c * inv).collect()
}

/// Interpolates the grid on `fit` by iterated finite differences, taking
/// the smallest degrees whose higher differences vanish on the region, and
/// checks the result against every cell of `fit` and `validation`. Fails
/// with `NoFit` when the maximal computable difference order still does not
/// vanish (no certificate of polynomiality inside the window) or when a
/// validation cell disagrees.
pub fn fit_bivariate_polynomial(
    g: &GridResult,
    fit: Region,
    validation: Region,
) -> Result<PolyFit> {
    if !fit.within(g) || !validation.within(g) {
        return Err(Error::TailOutsideGrid);
    }
    let h = fit.height();
    let w = fit.width();
    let mut table = vec![vec![Rat::zero(); w]; h];
    for (p, n) in (fit.n.0..=fit.n.1).enumerate() {
        for (q, i) in (fit.i.0..=fit.i.1).enumerate() {
            table[p][q] = Rat::from_integer(finite(g, n, i)?);
        }
    }

    // Anchor mixed differences: diffs[a][b] = (Δ_n^a Δ_i^b table)[0][0].
    let mut diffs = vec![vec![Rat::zero(); w]; h];
    let mut layer = table;
    for a in 0..h {
        let mut row: Vec<Rat> = layer[0].clone();
        for b in 0..w {
            diffs[a][b] = row[0];
            for q in 0..w - b - 1 {
                row[q] = row[q + 1] - row[q];
            }
        }
        for p in 0..h - a - 1 {
            for q in 0..w {
                layer[p][q] = layer[p + 1][q] - layer[p][q];
            }
        }
    }

    let mut dn = 0usize;
    let mut di = 0usize;
    for a in 0..h {
        for b in 0..w {
            if !diffs[a][b].is_zero() {
                dn = dn.max(a);
                di = di.max(b);
            }
        }
    }
    if dn + 2 > h || di + 2 > w {
        return Err(Error::NoFit {
            max_order: dn.max(di),
            failed_cell: None,
        });
    }

    let mut coefficients: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
    for a in 0..=dn {
        let npoly = binom_poly(fit.n.0, a as u32);
        for b in 0..=di {
            if diffs[a][b].is_zero() {
                continue;
            }
            let ipoly = binom_poly(fit.i.0, b as u32);
            for (p, cn) in npoly.iter().enumerate() {
                for (q, ci) in ipoly.iter().enumerate() {
                    let entry = coefficients.entry((p as u32, q as u32)).or_insert_with(Rat::zero);
                    *entry += diffs[a][b] * *cn * *ci;
                }
            }
        }
    }
    coefficients.retain(|_, c| !c.is_zero());

    let fitted = PolyFit {
        coefficients,
        degree: (dn as u32, di as u32),
        fit_region: fit,
        validation_region: validation,
    };
    for (n, i) in fit.cells().chain(validation.cells()) {
        if fitted.eval(n, i) != Rat::from_integer(finite(g, n, i)?) {
            return Err(Error::NoFit {
                max_order: dn.max(di),
                failed_cell: Some((n, i)),
            });
        }
    }
    Ok(fitted)
}

/// Denominator exponents for the generating function of a fixed-parity
/// grid: `c` steps in the grid's `i`-coordinate (the reindexed `z^2`) and
/// `r` steps in `n`. Any upper bound on the true exponents also passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub c: usize,
    pub r: usize,
}

/// Result of testing the annihilation stencil on a grid tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub holds: bool,
    pub counterexample: Option<(i64, i64)>,
    /// First cell actually tested (tail clamped so the stencil stays
    /// inside the grid).
    pub start: (i64, i64),
}

/// Verifies `sum_{a<=c, b<=r} (-1)^{a+b} C(c,a) C(r,b) G(n-b, i-a) = 0`
/// for every `(n, i)` past `tail` whose stencil lies inside the grid.
pub fn check_recurrence(
    g: &GridResult,
    spec: RecurrenceSpec,
    tail: (i64, i64),
) -> Result<RecurrenceCheck> {
    let start_n = tail.0.max(g.n_range.0 + spec.r as i64);
    let start_i = tail.1.max(g.i_range.0 + spec.c as i64);
    if start_n > g.n_range.1 || start_i > g.i_range.1 {
        return Err(Error::TailOutsideGrid);
    }
    for n in start_n..=g.n_range.1 {
        for i in start_i..=g.i_range.1 {
            let mut acc: i128 = 0;
            for a in 0..=spec.c {
                for b in 0..=spec.r {
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    let coeff = sign * binom(spec.c, a) * binom(spec.r, b);
                    acc += coeff * finite(g, n - b as i64, i - a as i64)?;
                }
            }
            if acc != 0 {
                return Ok(RecurrenceCheck {
                    holds: false,
                    counterexample: Some((n, i)),
                    start: (start_n, start_i),
                });
            }
        }
    }
    Ok(RecurrenceCheck {
        holds: true,
        counterexample: None,
        start: (start_n, start_i),
    })
}

/// Smallest onset `o` such that `sum_a (-1)^a C(c,a) s(i - 2a) = 0` for
/// every `i` in `[o, len)`, the recurrence a denominator `(1-z^2)^c`
/// imposes on a single cohomological-length sequence. `None` when the tail
/// identity fails even at the last index (or the sequence is too short to
/// test at all).
pub fn univariate_recurrence_onset(seq: &[i64], c: usize) -> Option<usize> {
    let floor = 2 * c;
    if seq.len() <= floor {
        return None;
    }
    let mut onset = floor;
    for i in floor..seq.len() {
        let mut acc: i128 = 0;
        for a in 0..=c {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            acc += sign * binom(c, a) * seq[i - 2 * a] as i128;
        }
        if acc != 0 {
            onset = i + 1;
        }
    }
    if onset < seq.len() {
        Some(onset)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FamilyKind, Quantity};

    fn grid_from(
        n_range: (i64, i64),
        i_range: (i64, i64),
        f: impl Fn(i64, i64) -> i64,
    ) -> GridResult {
        let mut values = Vec::new();
        for n in n_range.0..=n_range.1 {
            for i in i_range.0..=i_range.1 {
                values.push(CellValue::Finite(f(n, i)));
            }
        }
        GridResult::new(0, Quantity::Length, FamilyKind::Quot, n_range, i_range, values).unwrap()
    }

    #[test]
    fn linear_bass_values_fit_with_degree_one_in_i() {
        let g = grid_from((1, 6), (1, 6), |_, i| 2 * (2 * i + 1));
        let fit = Region::new((1, 4), (1, 4)).unwrap();
        let val = Region::new((5, 6), (5, 6)).unwrap();
        let p = fit_bivariate_polynomial(&g, fit, val).unwrap();
        assert_eq!(p.degree, (0, 1));
        assert_eq!(p.coefficients.len(), 2);
        assert_eq!(p.coefficients[&(0, 0)], Rat::from_integer(2));
        assert_eq!(p.coefficients[&(0, 1)], Rat::from_integer(4));
    }

    #[test]
    fn constant_grids_fit_with_degree_zero() {
        let g = grid_from((1, 5), (1, 5), |_, _| 9);
        let r = Region::new((1, 3), (1, 3)).unwrap();
        let v = Region::new((4, 5), (4, 5)).unwrap();
        let p = fit_bivariate_polynomial(&g, r, v).unwrap();
        assert_eq!(p.degree, (0, 0));
        assert_eq!(p.coefficients[&(0, 0)], Rat::from_integer(9));
    }

    #[test]
    fn the_zero_grid_fits_as_the_zero_polynomial() {
        let g = grid_from((1, 5), (1, 5), |_, _| 0);
        let r = Region::new((1, 3), (1, 3)).unwrap();
        let v = Region::new((4, 5), (4, 5)).unwrap();
        let p = fit_bivariate_polynomial(&g, r, v).unwrap();
        assert!(p.coefficients.is_empty());
        assert_eq!(p.eval(100, 100), Rat::zero());
    }

    #[test]
    fn integer_valued_rational_coefficients_are_recovered_exactly() {
        // n(n+1)/2 + i(i-1)(i-2)/6 has coefficients with denominators 2, 6.
        let f = |n: i64, i: i64| n * (n + 1) / 2 + i * (i - 1) * (i - 2) / 6;
        let g = grid_from((0, 8), (0, 8), f);
        let r = Region::new((0, 5), (0, 5)).unwrap();
        let v = Region::new((6, 8), (6, 8)).unwrap();
        let p = fit_bivariate_polynomial(&g, r, v).unwrap();
        assert_eq!(p.degree, (2, 3));
        assert_eq!(p.coefficients[&(2, 0)], Rat::new(1, 2));
        assert_eq!(p.coefficients[&(1, 0)], Rat::new(1, 2));
        assert_eq!(p.coefficients[&(0, 3)], Rat::new(1, 6));
        for n in 0..=8 {
            for i in 0..=8 {
                assert_eq!(p.eval(n, i), Rat::from_integer(f(n, i) as i128));
            }
        }
    }

    #[test]
    fn exponential_growth_has_no_polynomial_certificate() {
        let g = grid_from((1, 6), (1, 6), |n, _| 1 << n);
        let r = Region::new((1, 5), (1, 4)).unwrap();
        let v = Region::new((6, 6), (5, 6)).unwrap();
        match fit_bivariate_polynomial(&g, r, v) {
            Err(Error::NoFit {
                max_order,
                failed_cell: None,
            }) => assert_eq!(max_order, 4),
            other => panic!("expected NoFit, got {:?}", other.map(|p| p.degree)),
        }
    }

    #[test]
    fn validation_mismatches_are_reported_with_the_cell() {
        let g = grid_from((1, 6), (1, 6), |n, i| if n <= 4 && i <= 4 { 5 } else { 6 });
        let r = Region::new((1, 4), (1, 4)).unwrap();
        let v = Region::new((5, 6), (5, 6)).unwrap();
        match fit_bivariate_polynomial(&g, r, v) {
            Err(Error::NoFit {
                failed_cell: Some(cell),
                ..
            }) => assert_eq!(cell, (5, 5)),
            other => panic!("expected NoFit with cell, got {:?}", other.map(|p| p.degree)),
        }
    }

    #[test]
    fn regions_must_sit_inside_the_grid() {
        let g = grid_from((1, 4), (1, 4), |_, _| 1);
        let r = Region::new((1, 5), (1, 4)).unwrap();
        let v = Region::new((1, 4), (1, 4)).unwrap();
        assert!(matches!(
            fit_bivariate_polynomial(&g, r, v),
            Err(Error::TailOutsideGrid)
        ));
    }

    #[test]
    fn infinite_cells_cannot_be_fitted() {
        let mut g = grid_from((1, 4), (1, 4), |_, _| 1);
        g.values[0] = CellValue::Infinity;
        let r = Region::new((1, 3), (1, 3)).unwrap();
        let v = Region::new((4, 4), (4, 4)).unwrap();
        assert!(matches!(
            fit_bivariate_polynomial(&g, r, v),
            Err(Error::NonFiniteGrid(1, 1))
        ));
    }

    #[test]
    fn the_product_grid_satisfies_its_recurrence() {
        let g = grid_from((1, 8), (1, 8), |_, i| 2 * (2 * i + 1));
        let r = check_recurrence(&g, RecurrenceSpec { c: 2, r: 2 }, (3, 3)).unwrap();
        assert!(r.holds);
        assert_eq!(r.counterexample, None);
        assert_eq!(r.start, (3, 3));
    }

    #[test]
    fn zero_grids_satisfy_every_recurrence() {
        let g = grid_from((1, 6), (1, 6), |_, _| 0);
        let r = check_recurrence(&g, RecurrenceSpec { c: 3, r: 3 }, (1, 1)).unwrap();
        assert!(r.holds);
        assert_eq!(r.start, (4, 4));
    }

    #[test]
    fn exponential_grids_fail_with_a_witness() {
        let g = grid_from((1, 6), (1, 6), |n, _| 1 << n);
        let r = check_recurrence(&g, RecurrenceSpec { c: 0, r: 2 }, (1, 1)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some((3, 1)));

        let gi = grid_from((1, 6), (1, 6), |_, i| 1 << i);
        let ri = check_recurrence(&gi, RecurrenceSpec { c: 2, r: 0 }, (1, 1)).unwrap();
        assert!(!ri.holds);
        assert_eq!(ri.counterexample, Some((1, 3)));
    }

    #[test]
    fn tails_past_the_grid_are_rejected() {
        let g = grid_from((1, 4), (1, 4), |_, _| 0);
        assert!(matches!(
            check_recurrence(&g, RecurrenceSpec { c: 1, r: 1 }, (5, 1)),
            Err(Error::TailOutsideGrid)
        ));
        assert!(matches!(
            check_recurrence(&g, RecurrenceSpec { c: 5, r: 0 }, (1, 1)),
            Err(Error::TailOutsideGrid)
        ));
    }

    #[test]
    fn untouched_infinite_cells_do_not_disturb_the_tail() {
        let mut g = grid_from((1, 6), (1, 6), |_, _| 4);
        g.values[0] = CellValue::Infinity;
        let r = check_recurrence(&g, RecurrenceSpec { c: 1, r: 1 }, (3, 3)).unwrap();
        assert!(r.holds);
        let touched = check_recurrence(&g, RecurrenceSpec { c: 1, r: 1 }, (1, 1));
        assert!(matches!(touched, Err(Error::NonFiniteGrid(1, 1))));
    }

    #[test]
    fn linear_length_sequences_recur_from_the_stencil_floor() {
        let seq: Vec<i64> = (0..=20).map(|i| i + 1).collect();
        assert_eq!(univariate_recurrence_onset(&seq, 2), Some(4));
    }

    #[test]
    fn a_perturbed_entry_pushes_the_onset_past_its_last_use() {
        let mut seq: Vec<i64> = (0..=20).map(|i| i + 1).collect();
        seq[5] += 1;
        assert_eq!(univariate_recurrence_onset(&seq, 2), Some(10));
    }

    #[test]
    fn sequences_that_never_settle_report_none() {
        let seq: Vec<i64> = (0..=12).map(|i| 1 << i).collect();
        assert_eq!(univariate_recurrence_onset(&seq, 2), None);
        assert_eq!(univariate_recurrence_onset(&[1, 2], 2), None);
    }

    proptest::proptest! {
        /// Any integer polynomial of bidegree at most (2, 2) sampled on a
        /// grid is recovered with its exact coefficients, and a stencil of
        /// strictly higher order annihilates it everywhere.
        #[test]
        fn polynomial_grids_are_recovered_exactly(
            coeffs in proptest::collection::vec(-9i64..=9, 9),
        ) {
            let poly = |n: i64, i: i64| -> i64 {
                let mut acc = 0;
                for a in 0..3usize {
                    for b in 0..3usize {
                        acc += coeffs[3 * a + b] * n.pow(a as u32) * i.pow(b as u32);
                    }
                }
                acc
            };
            let g = grid_from((0, 7), (0, 7), poly);
            let fit = fit_bivariate_polynomial(
                &g,
                Region::new((0, 5), (0, 5)).unwrap(),
                Region::new((6, 7), (6, 7)).unwrap(),
            )
            .unwrap();
            for a in 0..3u32 {
                for b in 0..3u32 {
                    let c = coeffs[(3 * a + b) as usize];
                    let stored = fit.coefficients.get(&(a, b)).copied();
                    if c == 0 {
                        proptest::prop_assert_eq!(stored, None);
                    } else {
                        proptest::prop_assert_eq!(stored, Some(Rat::from_integer(c as i128)));
                    }
                }
            }
            let check = check_recurrence(&g, RecurrenceSpec { c: 3, r: 3 }, (0, 0)).unwrap();
            proptest::prop_assert!(check.holds);
        }
    }
}
