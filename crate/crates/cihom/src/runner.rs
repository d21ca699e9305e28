//! Executes the command blocks of an experiment file: builds grids with a
//! shared resolution cache, detects stabilization (retrying once with a
//! doubled window), fits polynomials, checks recurrences, writes the
//! declared CSV/JSON artifacts, and accumulates a process-style verdict.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiment::{Command, ExperimentSpec, GridParams};
use crate::ext::{ExtCalc, VanishingProbe};
use crate::freemod::poly_to_vec;
use crate::grid::{
    compute_grid_with, detect_stabilization, steps_needed, FamilyKind, GridJob, GridResult,
    Quantity,
};
use crate::groebner::buchberger;
use crate::module::{minimal_ideal_gens, pot};
use crate::report::{
    grid_to_csv, write_json, write_text, FitReport, GridReport, SeriesReport,
};
use crate::series::{check_recurrence, fit_bivariate_polynomial, RecurrenceSpec};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub threads: usize,
    /// Restrict execution to blocks of one subcommand kind.
    pub only: Option<String>,
    /// Directory the declared artifact paths are resolved against.
    pub out_dir: PathBuf,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: 1,
            only: None,
            out_dir: PathBuf::from("."),
        }
    }
}

/// What a run produced: one stdout line per executed command plus the
/// count of soft verdicts (windows that did not stabilize, fit or
/// recurrence checks that came back negative).
#[derive(Debug, Default)]
pub struct RunOutcome {
    pub lines: Vec<String>,
    pub executed: usize,
    pub soft_failures: usize,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.soft_failures > 0 {
            2
        } else {
            0
        }
    }
}

/// Per-file engine state: resolutions keyed by module name, vanishing
/// probes keyed by their test module (empty key = residue field).
struct Engines {
    calcs: HashMap<String, ExtCalc>,
    probes: HashMap<String, VanishingProbe>,
}

impl Engines {
    fn new() -> Engines {
        Engines {
            calcs: HashMap::new(),
            probes: HashMap::new(),
        }
    }

    fn prepare_calc(&mut self, spec: &ExperimentSpec, name: &str, steps: usize) -> Result<()> {
        if !self.calcs.contains_key(name) {
            self.calcs
                .insert(name.to_string(), ExtCalc::new(spec.module(name)?)?);
        }
        self.calcs.get_mut(name).unwrap().ensure(steps)
    }

    fn calc(&self, name: &str) -> &ExtCalc {
        &self.calcs[name]
    }

    fn prepare_probe(
        &mut self,
        spec: &ExperimentSpec,
        key: Option<&str>,
        bass_steps: Option<usize>,
    ) -> Result<()> {
        let map_key = key.unwrap_or("").to_string();
        if !self.probes.contains_key(&map_key) {
            let probe = match key {
                None => VanishingProbe::for_depth(&spec.ring)?,
                Some(j) => VanishingProbe::for_grade(&spec.ring, spec.ideal(j)?)?,
            };
            self.probes.insert(map_key.clone(), probe);
        }
        if let Some(steps) = bass_steps {
            self.probes.get_mut(&map_key).unwrap().ensure(steps)?;
        }
        Ok(())
    }

    fn probe(&self, key: Option<&str>) -> &VanishingProbe {
        &self.probes[key.unwrap_or("")]
    }
}

fn artifact_path(opts: &RunOptions, declared: &str) -> PathBuf {
    let p = Path::new(declared);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        opts.out_dir.join(p)
    }
}

fn write_artifact(opts: &RunOptions, declared: &str, text: &str) -> Result<()> {
    let path = artifact_path(opts, declared);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    write_text(&path, text)
}

struct GridSetup<'a> {
    quantity: Quantity,
    kind: FamilyKind,
    probe_key: Option<&'a str>,
    bass_steps: Option<usize>,
}

fn run_one_grid(
    engines: &mut Engines,
    spec: &ExperimentSpec,
    opts: &RunOptions,
    base: &GridParams,
    setup: &GridSetup<'_>,
    n_range: (i64, i64),
    i_range: (i64, i64),
) -> Result<GridResult> {
    engines.prepare_calc(spec, &base.m, steps_needed(i_range.1, base.t))?;
    match setup.quantity {
        Quantity::Length => {}
        _ => engines.prepare_probe(spec, setup.probe_key, setup.bass_steps)?,
    }
    let job = GridJob {
        m: spec.module(&base.m)?.clone(),
        family: spec.module(&base.n)?.clone(),
        ideal: spec.ideal(&base.ideal)?.clone(),
        kind: setup.kind,
        quantity: setup.quantity.clone(),
        grade_ideal: match (&setup.quantity, setup.probe_key) {
            (Quantity::Grade, Some(j)) => Some(spec.ideal(j)?.clone()),
            _ => None,
        },
        t: base.t,
        n_range,
        i_range,
    };
    let probe = match setup.quantity {
        Quantity::Length => None,
        _ => Some(engines.probe(setup.probe_key)),
    };
    compute_grid_with(&job, opts.threads, engines.calc(&base.m), probe)
}

/// Stability-checked grid command: runs the declared window, retries once
/// with doubled upper bounds when unstable, writes the final artifacts.
/// Returns `false` on a soft (not-stable-within-window) verdict.
fn run_stability_grid(
    engines: &mut Engines,
    spec: &ExperimentSpec,
    opts: &RunOptions,
    command: &str,
    base: &GridParams,
    setup: &GridSetup<'_>,
    lines: &mut Vec<String>,
) -> Result<bool> {
    let mut n_range = base.n_range;
    let mut i_range = base.i_range;
    let mut retried = false;
    loop {
        let g = run_one_grid(engines, spec, opts, base, setup, n_range, i_range)?;
        let stab = detect_stabilization(&g, base.margin)?;
        if stab.stable || retried {
            if let Some(out) = &base.out {
                write_artifact(opts, out, &grid_to_csv(&g))?;
            }
            if let Some(report) = &base.report {
                let rep = GridReport::new(
                    command,
                    &g,
                    &stab,
                    base.margin,
                    retried,
                    base.out.as_deref().unwrap_or(""),
                );
                let path = artifact_path(opts, report);
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        fs::create_dir_all(parent)?;
                    }
                }
                write_json(&path, &rep)?;
            }
            let suffix = if retried { " retried=true" } else { "" };
            if stab.stable {
                let (on, oi) = stab.onset.unwrap();
                lines.push(format!(
                    "{} M={}: stable=true value={} onset=({},{}) margin={}{}",
                    command,
                    base.m,
                    stab.stable_value.unwrap(),
                    on,
                    oi,
                    stab.margin,
                    suffix
                ));
            } else {
                lines.push(format!(
                    "{} M={}: stable=false within n={}..{} i={}..{}{}",
                    command, base.m, n_range.0, n_range.1, i_range.0, i_range.1, suffix
                ));
            }
            return Ok(stab.stable);
        }
        retried = true;
        n_range.1 *= 2;
        i_range.1 *= 2;
    }
}

fn mu(spec: &ExperimentSpec, ideal_name: &str) -> Result<usize> {
    Ok(minimal_ideal_gens(&spec.ring, spec.ideal(ideal_name)?)?.len())
}

pub fn run_spec(spec: &ExperimentSpec, opts: &RunOptions) -> Result<RunOutcome> {
    let mut engines = Engines::new();
    let mut outcome = RunOutcome::default();
    for command in &spec.commands {
        if let Some(only) = &opts.only {
            if command.kind_name() != only {
                continue;
            }
        }
        outcome.executed += 1;
        match command {
            Command::DepthGrid(base) => {
                let setup = GridSetup {
                    quantity: Quantity::Depth,
                    kind: FamilyKind::Quot,
                    probe_key: None,
                    bass_steps: None,
                };
                if !run_stability_grid(
                    &mut engines,
                    spec,
                    opts,
                    "depth-grid",
                    base,
                    &setup,
                    &mut outcome.lines,
                )? {
                    outcome.soft_failures += 1;
                }
            }
            Command::GradeGrid { base, j, kind } => {
                let setup = GridSetup {
                    quantity: Quantity::Grade,
                    kind: *kind,
                    probe_key: Some(j),
                    bass_steps: None,
                };
                if !run_stability_grid(
                    &mut engines,
                    spec,
                    opts,
                    "grade-grid",
                    base,
                    &setup,
                    &mut outcome.lines,
                )? {
                    outcome.soft_failures += 1;
                }
            }
            Command::BassGrid { base, j } => {
                let setup = GridSetup {
                    quantity: Quantity::Bass(*j),
                    kind: FamilyKind::Quot,
                    probe_key: None,
                    bass_steps: Some(j + 1),
                };
                if !run_stability_grid(
                    &mut engines,
                    spec,
                    opts,
                    "bass-grid",
                    base,
                    &setup,
                    &mut outcome.lines,
                )? {
                    outcome.soft_failures += 1;
                }
            }
            Command::SeriesCheck {
                base,
                j,
                tail,
                c,
                r,
            } => {
                let setup = GridSetup {
                    quantity: Quantity::Bass(*j),
                    kind: FamilyKind::Quot,
                    probe_key: None,
                    bass_steps: Some(j + 1),
                };
                let g = run_one_grid(
                    &mut engines,
                    spec,
                    opts,
                    base,
                    &setup,
                    base.n_range,
                    base.i_range,
                )?;
                let rec = RecurrenceSpec {
                    c: match c {
                        Some(v) => *v,
                        None => spec.ring.f().len(),
                    },
                    r: match r {
                        Some(v) => *v,
                        None => mu(spec, &base.ideal)?,
                    },
                };
                let check = check_recurrence(&g, rec, *tail)?;
                if let Some(out) = &base.out {
                    write_artifact(opts, out, &grid_to_csv(&g))?;
                }
                if let Some(report) = &base.report {
                    let rep = SeriesReport::new(
                        &g,
                        rec,
                        *tail,
                        &check,
                        base.out.as_deref().unwrap_or(""),
                    );
                    write_json(&artifact_path(opts, report), &rep)?;
                }
                match check.counterexample {
                    None => outcome.lines.push(format!(
                        "series-check M={}: holds=true c={} r={} start=({},{})",
                        base.m, rec.c, rec.r, check.start.0, check.start.1
                    )),
                    Some((n, i)) => {
                        outcome.lines.push(format!(
                            "series-check M={}: holds=false c={} r={} counterexample=({},{})",
                            base.m, rec.c, rec.r, n, i
                        ));
                        outcome.soft_failures += 1;
                    }
                }
            }
            Command::Fit {
                base,
                j,
                fit,
                validate,
            } => {
                let setup = GridSetup {
                    quantity: match j {
                        Some(j) => Quantity::Bass(*j),
                        None => Quantity::Length,
                    },
                    kind: FamilyKind::Quot,
                    probe_key: None,
                    bass_steps: j.map(|j| j + 1),
                };
                let g = run_one_grid(
                    &mut engines,
                    spec,
                    opts,
                    base,
                    &setup,
                    base.n_range,
                    base.i_range,
                )?;
                if let Some(out) = &base.out {
                    write_artifact(opts, out, &grid_to_csv(&g))?;
                }
                match fit_bivariate_polynomial(&g, *fit, *validate) {
                    Ok(p) => {
                        if let Some(report) = &base.report {
                            let rep = FitReport::new(&g, &p, base.out.as_deref().unwrap_or(""));
                            write_json(&artifact_path(opts, report), &rep)?;
                        }
                        outcome.lines.push(format!(
                            "fit M={}: degree=({},{}) terms={} validated=true",
                            base.m,
                            p.degree.0,
                            p.degree.1,
                            p.coefficients.len()
                        ));
                    }
                    Err(Error::NoFit {
                        max_order,
                        failed_cell,
                    }) => {
                        let detail = match failed_cell {
                            Some((n, i)) => format!(" failed_cell=({},{})", n, i),
                            None => String::new(),
                        };
                        outcome.lines.push(format!(
                            "fit M={}: no fit, max difference order {}{}",
                            base.m, max_order, detail
                        ));
                        outcome.soft_failures += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
            Command::Ext { m, n, i } => {
                engines.prepare_calc(spec, m, i + 1)?;
                let e = engines.calc(m).ext(spec.module(n)?, *i)?;
                let length = match e.value.length()? {
                    Some(l) => l.to_string(),
                    None => "inf".to_string(),
                };
                outcome.lines.push(format!(
                    "ext^{}({},{}): gens={} twists={:?} length={}",
                    i,
                    m,
                    n,
                    e.value.ngens(),
                    e.value.gen_twists(),
                    length
                ));
            }
            Command::Resolve { m, upto } => {
                engines.prepare_calc(spec, m, *upto)?;
                let betti = engines.calc(m).resolution().betti();
                let ranks: Vec<String> = betti[..=*upto].iter().map(|b| b.to_string()).collect();
                outcome.lines.push(format!("ranks {}", ranks.join(",")));
            }
            Command::Gb { ideal } => {
                let ring = &spec.ring;
                let order = pot(ring);
                let inputs: Vec<_> = spec
                    .ideal(ideal)?
                    .iter()
                    .map(|p| poly_to_vec(ring.poly(), &order, p, 0))
                    .collect();
                let basis = buchberger(ring.poly(), &order, &inputs, false)?;
                let polys: Vec<String> = basis
                    .gens
                    .iter()
                    .map(|v| ring.poly().format(&crate::freemod::vec_to_poly(ring.poly(), v)))
                    .collect();
                outcome.lines.push(format!("{{{}}}", polys.join(", ")));
            }
        }
    }
    Ok(outcome)
}
