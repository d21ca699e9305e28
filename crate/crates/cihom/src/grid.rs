//! Rectangular grids of homological invariants over filtration families
//! `N/I^nN`, `I^nN`, `I^nN/I^{n+1}N`, sampled at cohomological indices
//! `2i + t` of fixed parity, and stabilization detection on the rectangle.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext::{ExtCalc, VanishingProbe};
use crate::module::{rees_graded_piece, rees_power, rees_quotient, PresentedModule};
use crate::poly::Polynomial;

/// One computed cell. `Infinity` is the zero-module convention for depth
/// and grade; length grids use it for modules of infinite length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellValue {
    Finite(i64),
    Infinity,
}

impl CellValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, CellValue::Infinity)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            CellValue::Finite(v) => Some(*v),
            CellValue::Infinity => None,
        }
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Finite(v) => write!(f, "{}", v),
            CellValue::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for CellValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<CellValue> {
        if s == "inf" {
            return Ok(CellValue::Infinity);
        }
        s.parse::<i64>()
            .map(CellValue::Finite)
            .map_err(|_| Error::SyntaxError {
                line: 0,
                col: 0,
                msg: format!("expected an integer or `inf`, got `{}`", s),
            })
    }
}

/// Which member of the filtration is sampled at index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `N / I^n N`
    Quot,
    /// `I^n N`
    Power,
    /// `I^n N / I^{n+1} N`
    GradedPiece,
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::Quot => "quot",
            FamilyKind::Power => "power",
            FamilyKind::GradedPiece => "graded_piece",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s {
            "quot" => Some(FamilyKind::Quot),
            "power" => Some(FamilyKind::Power),
            "graded_piece" => Some(FamilyKind::GradedPiece),
            _ => None,
        }
    }
}

/// The invariant measured on each `Ext^{2i+t}(M, N_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    Depth,
    /// Grade of a fixed proper ideal `J` (generators carried by the job).
    Grade,
    /// The `j`-th Bass number.
    Bass(usize),
    Length,
}

impl Quantity {
    pub fn label(&self) -> &'static str {
        match self {
            Quantity::Depth => "depth",
            Quantity::Grade => "grade",
            Quantity::Bass(_) => "bass",
            Quantity::Length => "length",
        }
    }
}

/// A fully specified grid computation.
pub struct GridJob {
    pub m: Arc<PresentedModule>,
    /// The module `N` filtered by powers of the ideal.
    pub family: Arc<PresentedModule>,
    /// Generators of `I`.
    pub ideal: Vec<Polynomial>,
    pub kind: FamilyKind,
    pub quantity: Quantity,
    /// Generators of `J` when the quantity is `Grade`.
    pub grade_ideal: Option<Vec<Polynomial>>,
    /// Parity: cohomological index is `2i + t`.
    pub t: u8,
    pub n_range: (i64, i64),
    pub i_range: (i64, i64),
}

/// A populated rectangle of values, row-major by `n` then `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridResult {
    pub t: u8,
    pub quantity: Quantity,
    pub kind: FamilyKind,
    pub n_range: (i64, i64),
    pub i_range: (i64, i64),
    pub values: Vec<CellValue>,
}

impl GridResult {
    pub fn new(
        t: u8,
        quantity: Quantity,
        kind: FamilyKind,
        n_range: (i64, i64),
        i_range: (i64, i64),
        values: Vec<CellValue>,
    ) -> Result<GridResult> {
        let g = GridResult {
            t,
            quantity,
            kind,
            n_range,
            i_range,
            values,
        };
        if g.n_range.0 > g.n_range.1 || g.i_range.0 > g.i_range.1 {
            return Err(Error::ConsistencyFailure("empty grid range".into()));
        }
        if g.values.len() != g.n_count() * g.i_count() {
            return Err(Error::ConsistencyFailure(format!(
                "grid expects {} cells, got {}",
                g.n_count() * g.i_count(),
                g.values.len()
            )));
        }
        Ok(g)
    }

    pub fn n_count(&self) -> usize {
        (self.n_range.1 - self.n_range.0 + 1) as usize
    }

    pub fn i_count(&self) -> usize {
        (self.i_range.1 - self.i_range.0 + 1) as usize
    }

    pub fn contains(&self, n: i64, i: i64) -> bool {
        n >= self.n_range.0 && n <= self.n_range.1 && i >= self.i_range.0 && i <= self.i_range.1
    }

    pub fn get(&self, n: i64, i: i64) -> CellValue {
        assert!(self.contains(n, i), "cell ({}, {}) outside grid", n, i);
        let ni = (n - self.n_range.0) as usize;
        let ii = (i - self.i_range.0) as usize;
        self.values[ni * self.i_count() + ii]
    }
}

/// Builds the family member at filtration index `n`, minimally presented.
pub fn family_member(
    kind: FamilyKind,
    ideal: &[Polynomial],
    n_mod: &PresentedModule,
    n: usize,
) -> Result<PresentedModule> {
    let ring = n_mod.ring().as_ref();
    let raw = match kind {
        FamilyKind::Quot => rees_quotient(ring, ideal, n_mod, n)?,
        FamilyKind::Power => rees_power(ring, ideal, n_mod, n)?,
        FamilyKind::GradedPiece => rees_graded_piece(ring, ideal, n_mod, n)?,
    };
    Ok(raw.minimalize()?.module)
}

fn cell_of(
    job: &GridJob,
    calc: &ExtCalc,
    probe: Option<&VanishingProbe>,
    member: &PresentedModule,
    i: i64,
) -> Result<CellValue> {
    let l = 2 * i as usize + job.t as usize;
    let e = calc.ext(member, l)?;
    match &job.quantity {
        Quantity::Depth | Quantity::Grade => {
            let probe = probe.ok_or_else(|| {
                Error::ConsistencyFailure("depth/grade grid needs a vanishing probe".into())
            })?;
            Ok(match probe.min_index(&e.value)? {
                Some(v) => CellValue::Finite(v as i64),
                None => CellValue::Infinity,
            })
        }
        Quantity::Bass(j) => {
            let probe = probe.ok_or_else(|| {
                Error::ConsistencyFailure("bass grid needs a vanishing probe".into())
            })?;
            Ok(CellValue::Finite(probe.ext_length(*j, &e.value)? as i64))
        }
        Quantity::Length => Ok(match e.value.length()? {
            Some(v) => CellValue::Finite(v as i64),
            None => CellValue::Infinity,
        }),
    }
}

/// Runs a grid against a caller-managed resolution and probe; the
/// resolution must already be extended through `2*i_max + t + 1` and the
/// probe (when the quantity needs one) through any Bass index queried.
/// Cells are evaluated in parallel on `threads > 1`, then assembled in a
/// fixed row-major order, so results do not depend on the thread count.
pub fn compute_grid_with(
    job: &GridJob,
    threads: usize,
    calc: &ExtCalc,
    probe: Option<&VanishingProbe>,
) -> Result<GridResult> {
    if job.n_range.0 < 0 || job.i_range.0 < 0 {
        return Err(Error::ConsistencyFailure(
            "grid ranges must be nonnegative".into(),
        ));
    }
    if job.n_range.0 > job.n_range.1 || job.i_range.0 > job.i_range.1 {
        return Err(Error::ConsistencyFailure("empty grid range".into()));
    }
    if job.t > 1 {
        return Err(Error::ConsistencyFailure("parity must be 0 or 1".into()));
    }

    let mut members = Vec::new();
    for n in job.n_range.0..=job.n_range.1 {
        members.push(family_member(
            job.kind,
            &job.ideal,
            &job.family,
            n as usize,
        )?);
    }

    let i_count = (job.i_range.1 - job.i_range.0 + 1) as usize;
    let total = members.len() * i_count;
    let values: Vec<CellValue> = if threads <= 1 {
        let mut out = Vec::with_capacity(total);
        for member in &members {
            for ii in 0..i_count {
                out.push(cell_of(job, calc, probe, member, job.i_range.0 + ii as i64)?);
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::ConsistencyFailure(format!("thread pool: {}", e)))?;
        pool.install(|| {
            (0..total)
                .into_par_iter()
                .map(|k| {
                    let member = &members[k / i_count];
                    cell_of(job, calc, probe, member, job.i_range.0 + (k % i_count) as i64)
                })
                .collect::<Result<Vec<_>>>()
        })?
    };

    GridResult::new(
        job.t,
        job.quantity.clone(),
        job.kind,
        job.n_range,
        job.i_range,
        values,
    )
}

/// Steps the resolution of `M` must reach for a grid over `i_range`.
pub fn steps_needed(i_max: i64, t: u8) -> usize {
    2 * i_max as usize + t as usize + 2
}

/// Builds the probe a job's quantity requires, pre-extended far enough.
pub fn build_probe(job: &GridJob) -> Result<Option<VanishingProbe>> {
    let ring = job.m.ring();
    match &job.quantity {
        Quantity::Depth => Ok(Some(VanishingProbe::for_depth(ring)?)),
        Quantity::Grade => {
            let jgens = job.grade_ideal.as_ref().ok_or_else(|| {
                Error::ConsistencyFailure("grade grid without an ideal J".into())
            })?;
            Ok(Some(VanishingProbe::for_grade(ring, jgens)?))
        }
        Quantity::Bass(j) => {
            let mut probe = VanishingProbe::for_depth(ring)?;
            probe.ensure(j + 1)?;
            Ok(Some(probe))
        }
        Quantity::Length => Ok(None),
    }
}

/// Self-contained variant: resolves `M`, builds the probe, runs the grid.
pub fn compute_grid(job: &GridJob, threads: usize) -> Result<GridResult> {
    let mut calc = ExtCalc::new(&job.m)?;
    calc.ensure(steps_needed(job.i_range.1, job.t))?;
    let probe = build_probe(job)?;
    compute_grid_with(job, threads, &calc, probe.as_ref())
}

/// Outcome of scanning a grid for a constant upper-right rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub stable_value: Option<CellValue>,
    /// Smallest corner (lexicographic in `n`, then `i`) whose rectangle up
    /// to the grid corner is constant with both sides at least the margin.
    pub onset: Option<(i64, i64)>,
    /// Verified reach: the smaller side length of the constant rectangle.
    pub margin: usize,
    /// Set when the stable value is the infinite sentinel.
    pub infinite: bool,
}

/// Finds the minimal onset whose upper-right rectangle is constant with
/// both side lengths at least `margin`. Never interprets failure as a
/// refutation: values may stabilize beyond the window.
pub fn detect_stabilization(g: &GridResult, margin: usize) -> Result<StabilityReport> {
    let nc = g.n_count();
    let ic = g.i_count();
    if margin == 0 {
        return Err(Error::WindowTooSmall("margin must be at least 1".into()));
    }
    if nc < margin + 1 || ic < margin + 1 {
        return Err(Error::WindowTooSmall(format!(
            "margin {} needs a grid of at least {}x{}, got {}x{}",
            margin,
            margin + 1,
            margin + 1,
            nc,
            ic
        )));
    }
    let corner = g.values[nc * ic - 1];
    // const_rect[(ni, ii)]: the rectangle from this cell to the grid corner
    // holds the corner value everywhere.
    let mut const_rect = vec![false; nc * ic];
    for ni in (0..nc).rev() {
        for ii in (0..ic).rev() {
            let here = g.values[ni * ic + ii] == corner;
            let right = ii + 1 >= ic || const_rect[ni * ic + ii + 1];
            let above = ni + 1 >= nc || const_rect[(ni + 1) * ic + ii];
            const_rect[ni * ic + ii] = here && right && above;
        }
    }
    for ni in 0..=(nc - margin) {
        for ii in 0..=(ic - margin) {
            if const_rect[ni * ic + ii] {
                return Ok(StabilityReport {
                    stable: true,
                    stable_value: Some(corner),
                    onset: Some((g.n_range.0 + ni as i64, g.i_range.0 + ii as i64)),
                    margin: (nc - ni).min(ic - ii),
                    infinite: corner.is_infinite(),
                });
            }
        }
    }
    Ok(StabilityReport {
        stable: false,
        stable_value: None,
        onset: None,
        margin: 0,
        infinite: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_poly_list;
    use crate::poly::PolyRing;
    use crate::ring::RingSpec;

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

    fn plain_grid(n_range: (i64, i64), i_range: (i64, i64), values: Vec<i64>) -> GridResult {
        GridResult::new(
            0,
            Quantity::Length,
            FamilyKind::Quot,
            n_range,
            i_range,
            values.into_iter().map(CellValue::Finite).collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_grid_stabilizes_at_the_lower_left_corner() {
        let g = plain_grid((1, 4), (1, 5), vec![7; 20]);
        let r = detect_stabilization(&g, 3).unwrap();
        assert!(r.stable);
        assert_eq!(r.onset, Some((1, 1)));
        assert_eq!(r.stable_value, Some(CellValue::Finite(7)));
        assert_eq!(r.margin, 4);
        assert!(!r.infinite);
    }

    #[test]
    fn one_bad_row_moves_the_onset_past_it() {
        let mut values = vec![7; 20];
        for ii in 0..5 {
            values[ii] = 9;
        }
        let g = plain_grid((1, 4), (1, 5), values);
        let r = detect_stabilization(&g, 3).unwrap();
        assert!(r.stable);
        assert_eq!(r.onset, Some((2, 1)));
        assert_eq!(r.margin, 3);
    }

    #[test]
    fn strictly_growing_grid_is_not_stable_within_the_window() {
        let values: Vec<i64> = (0..5)
            .flat_map(|n| (0..5).map(move |i| n + i))
            .collect();
        let g = plain_grid((1, 5), (1, 5), values);
        let r = detect_stabilization(&g, 3).unwrap();
        assert!(!r.stable);
        assert_eq!(r.onset, None);
    }

    #[test]
    fn undersized_windows_are_rejected() {
        let g = plain_grid((1, 3), (1, 3), vec![0; 9]);
        assert!(matches!(
            detect_stabilization(&g, 3),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn margin_requirement_can_push_past_a_late_join() {
        // Constant only on the last two rows: margin 2 sees it, margin 3
        // does not.
        let mut values = vec![1; 20];
        for k in 10..20 {
            values[k] = 5;
        }
        let g = plain_grid((1, 4), (1, 5), values);
        assert!(!detect_stabilization(&g, 3).unwrap().stable);
        let r = detect_stabilization(&g, 2).unwrap();
        assert!(r.stable);
        assert_eq!(r.onset, Some((3, 1)));
    }

    #[test]
    fn depth_grid_of_an_eventually_zero_family_gets_an_infinite_tail() {
        // The quotient family over one quadric: at n = 1 the member is k,
        // afterwards the ideal power dies and the member is the whole ring,
        // whose positive self-extensions against k vanish.
        let ring = ring_of(&["x"], &["x^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let a = Arc::new(PresentedModule::ring_module(ring.clone()));
        let x = parse_poly_list(ring.poly(), "x", 1).unwrap();
        let job = GridJob {
            m: k,
            family: a,
            ideal: x,
            kind: FamilyKind::Quot,
            quantity: Quantity::Depth,
            grade_ideal: None,
            t: 0,
            n_range: (1, 5),
            i_range: (1, 4),
        };
        let g = compute_grid(&job, 1).unwrap();
        for i in 1..=4 {
            assert_eq!(g.get(1, i), CellValue::Finite(0));
            for n in 2..=5 {
                assert_eq!(g.get(n, i), CellValue::Infinity);
            }
        }
        let r = detect_stabilization(&g, 3).unwrap();
        assert!(r.stable && r.infinite);
        assert_eq!(r.onset, Some((2, 1)));
    }

    #[test]
    fn depth_grid_of_the_constant_residue_field_family_is_zero() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let x = parse_poly_list(ring.poly(), "x", 1).unwrap();
        let job = GridJob {
            m: k.clone(),
            family: k,
            ideal: x,
            kind: FamilyKind::Quot,
            quantity: Quantity::Depth,
            grade_ideal: None,
            t: 0,
            n_range: (1, 4),
            i_range: (1, 4),
        };
        let g = compute_grid(&job, 1).unwrap();
        assert!(g.values.iter().all(|v| *v == CellValue::Finite(0)));
    }

    #[test]
    fn zero_module_gives_an_all_infinite_grid() {
        let ring = ring_of(&["x"], &["x^2"]);
        let one = parse_poly_list(ring.poly(), "1", 1).unwrap();
        let zero = Arc::new(PresentedModule::quot_by_ideal(ring.clone(), &one).unwrap());
        let a = Arc::new(PresentedModule::ring_module(ring.clone()));
        let x = parse_poly_list(ring.poly(), "x", 1).unwrap();
        let job = GridJob {
            m: zero,
            family: a,
            ideal: x,
            kind: FamilyKind::Quot,
            quantity: Quantity::Depth,
            grade_ideal: None,
            t: 0,
            n_range: (1, 4),
            i_range: (1, 4),
        };
        let g = compute_grid(&job, 1).unwrap();
        assert!(g.values.iter().all(|v| v.is_infinite()));
    }

    #[test]
    fn graded_piece_family_collapses_when_the_ideal_square_vanishes() {
        let ring = ring_of(&["x"], &["x^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let a = Arc::new(PresentedModule::ring_module(ring.clone()));
        let x = parse_poly_list(ring.poly(), "x", 1).unwrap();
        let job = GridJob {
            m: k,
            family: a,
            ideal: x.clone(),
            kind: FamilyKind::GradedPiece,
            quantity: Quantity::Grade,
            grade_ideal: Some(x),
            t: 0,
            n_range: (1, 5),
            i_range: (1, 4),
        };
        let g = compute_grid(&job, 1).unwrap();
        for i in 1..=4 {
            assert_eq!(g.get(1, i), CellValue::Finite(0));
            for n in 2..=5 {
                assert_eq!(g.get(n, i), CellValue::Infinity);
            }
        }
        let r = detect_stabilization(&g, 3).unwrap();
        assert!(r.stable && r.infinite);
        assert_eq!(r.onset, Some((2, 1)));
    }

    #[test]
    fn grade_at_the_maximal_ideal_matches_depth() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let a = Arc::new(PresentedModule::ring_module(ring.clone()));
        let m_gens = parse_poly_list(ring.poly(), "x, y", 1).unwrap();
        let base = GridJob {
            m: k.clone(),
            family: a,
            ideal: m_gens.clone(),
            kind: FamilyKind::Quot,
            quantity: Quantity::Depth,
            grade_ideal: None,
            t: 0,
            n_range: (1, 3),
            i_range: (0, 2),
        };
        let depth = compute_grid(&base, 1).unwrap();
        let job = GridJob {
            quantity: Quantity::Grade,
            grade_ideal: Some(m_gens),
            m: base.m.clone(),
            family: base.family.clone(),
            ideal: base.ideal.clone(),
            kind: base.kind,
            t: base.t,
            n_range: base.n_range,
            i_range: base.i_range,
        };
        let grade = compute_grid(&job, 1).unwrap();
        assert_eq!(depth.values, grade.values);
    }

    #[test]
    fn bass_grid_follows_the_product_formula_and_parallelism_is_invisible() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let m_gens = parse_poly_list(ring.poly(), "x, y", 1).unwrap();
        for j in 0..=1i64 {
            let job = GridJob {
                m: k.clone(),
                family: k.clone(),
                ideal: m_gens.clone(),
                kind: FamilyKind::Quot,
                quantity: Quantity::Bass(j as usize),
                grade_ideal: None,
                t: 0,
                n_range: (1, 3),
                i_range: (1, 3),
            };
            let g = compute_grid(&job, 1).unwrap();
            for n in 1..=3 {
                for i in 1..=3 {
                    assert_eq!(g.get(n, i), CellValue::Finite((j + 1) * (2 * i + 1)));
                }
            }
            let g4 = compute_grid(&job, 4).unwrap();
            assert_eq!(g, g4);
        }
    }

    #[test]
    fn length_grid_counts_the_self_extensions() {
        let ring = ring_of(&["x", "y"], &["x^2", "y^2"]);
        let k = Arc::new(PresentedModule::residue_field(ring.clone()));
        let m_gens = parse_poly_list(ring.poly(), "x, y", 1).unwrap();
        let job = GridJob {
            m: k.clone(),
            family: k.clone(),
            ideal: m_gens,
            kind: FamilyKind::Quot,
            quantity: Quantity::Length,
            grade_ideal: None,
            t: 1,
            n_range: (1, 2),
            i_range: (0, 3),
        };
        let g = compute_grid(&job, 1).unwrap();
        for n in 1..=2 {
            for i in 0..=3 {
                assert_eq!(g.get(n, i), CellValue::Finite(2 * i + 2));
            }
        }
    }

    #[test]
    fn cell_parsing_round_trips() {
        assert_eq!("inf".parse::<CellValue>().unwrap(), CellValue::Infinity);
        assert_eq!("-3".parse::<CellValue>().unwrap(), CellValue::Finite(-3));
        assert_eq!(CellValue::Finite(12).to_string(), "12");
        assert_eq!(CellValue::Infinity.to_string(), "inf");
        assert!("3.5".parse::<CellValue>().is_err());
    }

    #[test]
    fn bass_numbers_below_the_stable_depth_stabilize_at_zero() {
        // y^n * (A/x) over A = F_101[x,y]/(x^2) is a free module on the
        // hyperplane, of depth one; at i = 0 the depth grid reads 1 and
        // every Bass index below it reads 0.
        let ring = ring_of(&["x", "y"], &["x^2"]);
        let a = Arc::new(PresentedModule::ring_module(ring.clone()));
        let ax = Arc::new(
            PresentedModule::quot_by_ideal(
                ring.clone(),
                &parse_poly_list(ring.poly(), "x", 1).unwrap(),
            )
            .unwrap(),
        );
        let base = GridJob {
            m: a,
            family: ax,
            ideal: parse_poly_list(ring.poly(), "y", 1).unwrap(),
            kind: FamilyKind::Power,
            quantity: Quantity::Depth,
            grade_ideal: None,
            t: 0,
            n_range: (1, 5),
            i_range: (0, 0),
        };
        let depth = compute_grid(&base, 1).unwrap();
        for n in 1..=5 {
            assert_eq!(depth.get(n, 0), CellValue::Finite(1));
        }
        let job = GridJob {
            quantity: Quantity::Bass(0),
            m: base.m.clone(),
            family: base.family.clone(),
            ideal: base.ideal.clone(),
            kind: base.kind,
            grade_ideal: None,
            t: base.t,
            n_range: base.n_range,
            i_range: base.i_range,
        };
        let bass = compute_grid(&job, 1).unwrap();
        for n in 1..=5 {
            assert_eq!(bass.get(n, 0), CellValue::Finite(0));
        }
    }
}
