//! Artifact serialization: CSV grids and JSON reports. Infinite cells are
//! the literal `inf`, rationals are exact `p/q` strings, and nothing is
//! ever rendered through floating point, so emitted files round-trip
//! losslessly and are byte-stable across runs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{CellValue, FamilyKind, GridResult, Quantity, StabilityReport};
use crate::series::{PolyFit, Rat, RecurrenceCheck, RecurrenceSpec};

pub fn grid_to_csv(g: &GridResult) -> String {
    let mut out = String::from("n,i,value\n");
    for n in g.n_range.0..=g.n_range.1 {
        for i in g.i_range.0..=g.i_range.1 {
            let _ = writeln!(out, "{},{},{}", n, i, g.get(n, i));
        }
    }
    out
}

/// Parses a grid artifact back into memory. Expects exactly the emitted
/// shape: a `n,i,value` header and full row-major enumeration of a
/// rectangle. Metadata the CSV does not carry is supplied by the caller.
pub fn grid_from_csv(
    text: &str,
    t: u8,
    quantity: Quantity,
    kind: FamilyKind,
) -> Result<GridResult> {
    let bad = |line: usize, msg: String| Error::SyntaxError { line, col: 1, msg };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "n,i,value")) => {}
        _ => return Err(bad(1, "expected header `n,i,value`".into())),
    }
    let mut cells: Vec<(i64, i64, CellValue)> = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let n = parts.next().and_then(|s| s.parse::<i64>().ok());
        let i = parts.next().and_then(|s| s.parse::<i64>().ok());
        let v = parts.next().and_then(|s| s.parse::<CellValue>().ok());
        match (n, i, v, parts.next()) {
            (Some(n), Some(i), Some(v), None) => cells.push((n, i, v)),
            _ => return Err(bad(idx + 1, format!("malformed row `{}`", line))),
        }
    }
    if cells.is_empty() {
        return Err(bad(2, "empty grid".into()));
    }
    let n_range = (
        cells.iter().map(|c| c.0).min().unwrap(),
        cells.iter().map(|c| c.0).max().unwrap(),
    );
    let i_range = (
        cells.iter().map(|c| c.1).min().unwrap(),
        cells.iter().map(|c| c.1).max().unwrap(),
    );
    let mut expected = (n_range.0..=n_range.1)
        .flat_map(|n| (i_range.0..=i_range.1).map(move |i| (n, i)));
    let mut values = Vec::with_capacity(cells.len());
    for (row, (n, i, v)) in cells.iter().enumerate() {
        if expected.next() != Some((*n, *i)) {
            return Err(bad(
                row + 2,
                format!("cell ({}, {}) breaks row-major rectangle order", n, i),
            ));
        }
        values.push(*v);
    }
    if expected.next().is_some() {
        return Err(bad(cells.len() + 1, "incomplete rectangle".into()));
    }
    GridResult::new(t, quantity, kind, n_range, i_range, values)
}

/// Always the explicit `p/q` form, e.g. `3/2`, `-1/6`, `4/1`.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let err = || Error::SyntaxError {
        line: 0,
        col: 1,
        msg: format!("expected an exact rational `p/q`, got `{}`", s),
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = p.parse::<i128>().map_err(|_| err())?;
            let q = q.parse::<i128>().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse::<i128>().map_err(|_| err())?)),
    }
}

fn cell_string(v: &CellValue) -> String {
    v.to_string()
}

/// JSON report for the grid subcommands.
#[derive(Serialize, Debug, Clone)]
pub struct GridReport {
    pub command: String,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bass_index: Option<usize>,
    pub kind: String,
    pub t: u8,
    pub n_range: [i64; 2],
    pub i_range: [i64; 2],
    pub margin: usize,
    pub retried: bool,
    pub stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub onset: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_value: Option<String>,
    pub stable_is_infinite: bool,
    pub verified_margin: usize,
    pub csv: String,
}

impl GridReport {
    pub fn new(
        command: &str,
        g: &GridResult,
        stab: &StabilityReport,
        margin: usize,
        retried: bool,
        csv: &str,
    ) -> GridReport {
        GridReport {
            command: command.to_string(),
            quantity: g.quantity.label().to_string(),
            bass_index: match g.quantity {
                Quantity::Bass(j) => Some(j),
                _ => None,
            },
            kind: g.kind.label().to_string(),
            t: g.t,
            n_range: [g.n_range.0, g.n_range.1],
            i_range: [g.i_range.0, g.i_range.1],
            margin,
            retried,
            stable: stab.stable,
            onset: stab.onset.map(|(n, i)| [n, i]),
            stable_value: stab.stable_value.as_ref().map(cell_string),
            stable_is_infinite: stab.infinite,
            verified_margin: stab.margin,
            csv: csv.to_string(),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct CoeffEntry {
    pub monomial: String,
    pub value: String,
}

/// Human-stable label for `n^a * i^b`.
pub fn monomial_label(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("n".to_string()),
        _ => parts.push(format!("n^{}", a)),
    }
    match b {
        0 => {}
        1 => parts.push("i".to_string()),
        _ => parts.push(format!("i^{}", b)),
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// JSON report for the `fit` subcommand.
#[derive(Serialize, Debug, Clone)]
pub struct FitReport {
    pub command: String,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bass_index: Option<usize>,
    pub t: u8,
    pub degree: [u32; 2],
    pub coefficients: Vec<CoeffEntry>,
    pub fit_region: [[i64; 2]; 2],
    pub validation_region: [[i64; 2]; 2],
    pub validated: bool,
    pub csv: String,
}

impl FitReport {
    pub fn new(g: &GridResult, fit: &PolyFit, csv: &str) -> FitReport {
        FitReport {
            command: "fit".to_string(),
            quantity: g.quantity.label().to_string(),
            bass_index: match g.quantity {
                Quantity::Bass(j) => Some(j),
                _ => None,
            },
            t: g.t,
            degree: [fit.degree.0, fit.degree.1],
            coefficients: fit
                .coefficients
                .iter()
                .map(|(&(a, b), c)| CoeffEntry {
                    monomial: monomial_label(a, b),
                    value: rat_to_string(c),
                })
                .collect(),
            fit_region: [
                [fit.fit_region.n.0, fit.fit_region.n.1],
                [fit.fit_region.i.0, fit.fit_region.i.1],
            ],
            validation_region: [
                [fit.validation_region.n.0, fit.validation_region.n.1],
                [fit.validation_region.i.0, fit.validation_region.i.1],
            ],
            validated: true,
            csv: csv.to_string(),
        }
    }
}

/// JSON report for the `series-check` subcommand.
#[derive(Serialize, Debug, Clone)]
pub struct SeriesReport {
    pub command: String,
    pub quantity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bass_index: Option<usize>,
    pub t: u8,
    pub c: usize,
    pub r: usize,
    pub tail: [i64; 2],
    pub start: [i64; 2],
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<[i64; 2]>,
    pub csv: String,
}

impl SeriesReport {
    pub fn new(
        g: &GridResult,
        spec: RecurrenceSpec,
        tail: (i64, i64),
        check: &RecurrenceCheck,
        csv: &str,
    ) -> SeriesReport {
        SeriesReport {
            command: "series-check".to_string(),
            quantity: g.quantity.label().to_string(),
            bass_index: match g.quantity {
                Quantity::Bass(j) => Some(j),
                _ => None,
            },
            t: g.t,
            c: spec.c,
            r: spec.r,
            tail: [tail.0, tail.1],
            start: [check.start.0, check.start.1],
            holds: check.holds,
            counterexample: check.counterexample.map(|(n, i)| [n, i]),
            csv: csv.to_string(),
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::ConsistencyFailure(format!("json: {}", e)))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::detect_stabilization;

    fn sample_grid() -> GridResult {
        let values = vec![
            CellValue::Finite(0),
            CellValue::Finite(1),
            CellValue::Infinity,
            CellValue::Finite(-2),
            CellValue::Finite(3),
            CellValue::Finite(4),
        ];
        GridResult::new(1, Quantity::Depth, FamilyKind::Power, (2, 3), (1, 3), values).unwrap()
    }

    #[test]
    fn csv_round_trips_exactly() {
        let g = sample_grid();
        let csv = grid_to_csv(&g);
        assert!(csv.starts_with("n,i,value\n2,1,0\n2,2,1\n2,3,inf\n"));
        let back = grid_from_csv(&csv, 1, Quantity::Depth, FamilyKind::Power).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn csv_rejects_holes_and_disorder() {
        let missing = "n,i,value\n1,1,0\n1,2,0\n2,1,0\n";
        assert!(grid_from_csv(missing, 0, Quantity::Depth, FamilyKind::Quot).is_err());
        let disorder = "n,i,value\n1,2,0\n1,1,0\n";
        assert!(grid_from_csv(disorder, 0, Quantity::Depth, FamilyKind::Quot).is_err());
        let garbage = "n,i,value\n1,1,maybe\n";
        assert!(grid_from_csv(garbage, 0, Quantity::Depth, FamilyKind::Quot).is_err());
    }

    #[test]
    fn rationals_serialize_with_explicit_denominators() {
        assert_eq!(rat_to_string(&Rat::new(3, 2)), "3/2");
        assert_eq!(rat_to_string(&Rat::new(-1, 6)), "-1/6");
        assert_eq!(rat_to_string(&Rat::new(4, 1)), "4/1");
        assert_eq!(rat_to_string(&Rat::new(2, -4)), "-1/2");
        assert_eq!(rat_from_string("3/2").unwrap(), Rat::new(3, 2));
        assert_eq!(rat_from_string("7").unwrap(), Rat::from_integer(7));
        assert!(rat_from_string("1/0").is_err());
        assert!(rat_from_string("0.5").is_err());
    }

    #[test]
    fn monomial_labels_cover_the_corner_cases() {
        assert_eq!(monomial_label(0, 0), "1");
        assert_eq!(monomial_label(1, 0), "n");
        assert_eq!(monomial_label(0, 2), "i^2");
        assert_eq!(monomial_label(3, 1), "n^3*i");
    }

    #[test]
    fn grid_reports_carry_the_stability_verdict() {
        let g = GridResult::new(
            0,
            Quantity::Bass(1),
            FamilyKind::Quot,
            (1, 4),
            (1, 4),
            vec![CellValue::Finite(5); 16],
        )
        .unwrap();
        let stab = detect_stabilization(&g, 3).unwrap();
        let rep = GridReport::new("bass-grid", &g, &stab, 3, false, "out.csv");
        let json = serde_json::to_string_pretty(&rep).unwrap();
        assert!(json.contains("\"stable\": true"));
        assert!(json.contains("\"bass_index\": 1"));
        assert!(json.contains("\"stable_value\": \"5\""));
        assert!(json.contains("\"onset\""));
        let infinite = GridResult::new(
            0,
            Quantity::Depth,
            FamilyKind::Quot,
            (1, 4),
            (1, 4),
            vec![CellValue::Infinity; 16],
        )
        .unwrap();
        let stab = detect_stabilization(&infinite, 3).unwrap();
        let rep = GridReport::new("depth-grid", &infinite, &stab, 3, true, "out.csv");
        let json = serde_json::to_string_pretty(&rep).unwrap();
        assert!(json.contains("\"stable_value\": \"inf\""));
        assert!(json.contains("\"stable_is_infinite\": true"));
        assert!(json.contains("\"retried\": true"));
        assert!(!json.contains("bass_index"));
    }
}
