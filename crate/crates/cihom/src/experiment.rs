//! Line-oriented experiment files: one ring per file, named ideals and
//! modules, then command blocks executed in order. `#` starts a comment;
//! values with internal spaces stay inside brackets.
//!
//! ```text
//! ring p=101 vars=[x,y] order=grevlex
//! ci f=[x^2, y^2]
//! ideal I=[x, y]
//! module M gens=[0] rels=[[x],[y]]
//! cmd depth-grid M=M N=N I=I t=0 n=1..8 i=1..8 margin=3 out=d.csv report=d.json
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freemod::{poly_to_vec, FreeVector};
use crate::grid::FamilyKind;
use crate::module::{pot, PresentedModule};
use crate::monomial::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingSpec;
use crate::series::Region;

/// Common parameters of the grid-shaped commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridParams {
    pub m: String,
    pub n: String,
    pub ideal: String,
    pub t: u8,
    pub n_range: (i64, i64),
    pub i_range: (i64, i64),
    pub margin: usize,
    pub out: Option<String>,
    pub report: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    DepthGrid(GridParams),
    GradeGrid {
        base: GridParams,
        j: String,
        kind: FamilyKind,
    },
    BassGrid {
        base: GridParams,
        j: usize,
    },
    SeriesCheck {
        base: GridParams,
        j: usize,
        tail: (i64, i64),
        c: Option<usize>,
        r: Option<usize>,
    },
    Fit {
        base: GridParams,
        j: Option<usize>,
        fit: Region,
        validate: Region,
    },
    Ext {
        m: String,
        n: String,
        i: usize,
    },
    Resolve {
        m: String,
        upto: usize,
    },
    Gb {
        ideal: String,
    },
}

impl Command {
    /// The subcommand name this block belongs to.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Command::DepthGrid(_) => "depth-grid",
            Command::GradeGrid { .. } => "grade-grid",
            Command::BassGrid { .. } => "bass-grid",
            Command::SeriesCheck { .. } => "series-check",
            Command::Fit { .. } => "fit",
            Command::Ext { .. } => "ext",
            Command::Resolve { .. } => "resolve",
            Command::Gb { .. } => "gb",
        }
    }
}

#[derive(Debug)]
pub struct ExperimentSpec {
    pub ring: Arc<RingSpec>,
    pub ideals: BTreeMap<String, Vec<Polynomial>>,
    pub modules: BTreeMap<String, Arc<PresentedModule>>,
    pub commands: Vec<Command>,
}

impl ExperimentSpec {
    pub fn module(&self, name: &str) -> Result<&Arc<PresentedModule>> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("module {}", name)))
    }

    pub fn ideal(&self, name: &str) -> Result<&Vec<Polynomial>> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::UnknownReference(format!("ideal {}", name)))
    }
}

fn bad(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into whitespace-separated tokens, keeping bracketed
/// groups intact; returns each token with its 1-based starting column.
fn tokens(line: &str, lineno: usize) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0usize;
    let mut depth = 0i32;
    for (idx, ch) in line.char_indices() {
        if ch == '#' && depth == 0 {
            break;
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push((start + 1, std::mem::take(&mut cur)));
            }
            continue;
        }
        if cur.is_empty() {
            start = idx;
        }
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad(lineno, idx + 1, "unbalanced `]`"));
                }
            }
            _ => {}
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(bad(lineno, line.len(), "unbalanced `[`"));
    }
    if !cur.is_empty() {
        out.push((start + 1, cur));
    }
    Ok(out)
}

/// Splits `[a, b, c]` into top-level items; nested brackets stay whole.
fn bracket_items(value: &str, lineno: usize, col: usize) -> Result<Vec<String>> {
    let inner = value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| bad(lineno, col, format!("expected a bracketed list, got `{}`", value)))?;
    let mut items = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => items.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !items.is_empty() {
        items.push(cur);
    }
    Ok(items
        .into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect())
}

struct KeyValues {
    lineno: usize,
    entries: Vec<(usize, String, String)>,
    used: Vec<bool>,
}

impl KeyValues {
    fn new(lineno: usize, toks: &[(usize, String)]) -> Result<KeyValues> {
        let mut entries = Vec::new();
        for (col, tok) in toks {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| bad(lineno, *col, format!("expected key=value, got `{}`", tok)))?;
            if k.is_empty() || v.is_empty() {
                return Err(bad(lineno, *col, format!("expected key=value, got `{}`", tok)));
            }
            entries.push((*col, k.to_string(), v.to_string()));
        }
        let used = vec![false; entries.len()];
        Ok(KeyValues {
            lineno,
            entries,
            used,
        })
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        for (idx, (col, k, v)) in self.entries.iter().enumerate() {
            if k == key && !self.used[idx] {
                self.used[idx] = true;
                return Some((*col, v.clone()));
            }
        }
        None
    }

    fn require(&mut self, key: &str) -> Result<(usize, String)> {
        self.take(key)
            .ok_or_else(|| bad(self.lineno, 1, format!("missing required key `{}`", key)))
    }

    fn finish(self) -> Result<()> {
        for (idx, (col, k, _)) in self.entries.iter().enumerate() {
            if !self.used[idx] {
                return Err(bad(self.lineno, *col, format!("unknown key `{}`", k)));
            }
        }
        Ok(())
    }
}

fn parse_u64(v: &str, lineno: usize, col: usize) -> Result<u64> {
    v.parse::<u64>()
        .map_err(|_| bad(lineno, col, format!("expected a nonnegative integer, got `{}`", v)))
}

fn parse_usize(v: &str, lineno: usize, col: usize) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| bad(lineno, col, format!("expected a nonnegative integer, got `{}`", v)))
}

fn parse_range(v: &str, lineno: usize, col: usize) -> Result<(i64, i64)> {
    let parse_end = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| bad(lineno, col, format!("expected an integer, got `{}`", s)))
    };
    let (lo, hi) = match v.split_once("..") {
        Some((a, b)) => (parse_end(a)?, parse_end(b)?),
        None => {
            let x = parse_end(v)?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(bad(lineno, col, format!("empty range `{}`", v)));
    }
    Ok((lo, hi))
}

fn parse_pair(v: &str, lineno: usize, col: usize) -> Result<(i64, i64)> {
    let (a, b) = v
        .split_once(',')
        .ok_or_else(|| bad(lineno, col, format!("expected `a,b`, got `{}`", v)))?;
    let p = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| bad(lineno, col, format!("expected an integer, got `{}`", s)))
    };
    Ok((p(a)?, p(b)?))
}

fn parse_region(v: &str, lineno: usize, col: usize) -> Result<Region> {
    let (n, i) = v
        .split_once(',')
        .ok_or_else(|| bad(lineno, col, format!("expected `n_lo..n_hi,i_lo..i_hi`, got `{}`", v)))?;
    Region::new(parse_range(n, lineno, col)?, parse_range(i, lineno, col)?)
        .map_err(|_| bad(lineno, col, format!("empty region `{}`", v)))
}

fn parse_parity(v: &str, lineno: usize, col: usize) -> Result<u8> {
    match v {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(bad(lineno, col, format!("parity must be 0 or 1, got `{}`", v))),
    }
}

fn poly_items(
    ring: &PolyRing,
    value: &str,
    lineno: usize,
    col: usize,
) -> Result<Vec<Polynomial>> {
    bracket_items(value, lineno, col)?
        .iter()
        .map(|item| parse_polynomial(ring, item, lineno))
        .collect()
}

struct Parser {
    ring: Option<Arc<RingSpec>>,
    pending_ring: Option<(u64, Vec<String>, MonomialOrder)>,
    saw_ci: bool,
    ideals: BTreeMap<String, Vec<Polynomial>>,
    modules: BTreeMap<String, Arc<PresentedModule>>,
    commands: Vec<Command>,
}

impl Parser {
    /// The ring block is frozen into a RingSpec the first time something
    /// needs it; a later `ci` line would come too late by then.
    fn ring(&mut self, lineno: usize) -> Result<Arc<RingSpec>> {
        if let Some(r) = &self.ring {
            return Ok(r.clone());
        }
        let (p, vars, order) = self
            .pending_ring
            .take()
            .ok_or_else(|| bad(lineno, 1, "no `ring` block declared yet"))?;
        let poly = PolyRing::new(crate::fp::Fp::new(p)?, vars, order)?;
        let ring = Arc::new(RingSpec::new(poly, Vec::new())?);
        self.ring = Some(ring.clone());
        Ok(ring)
    }

    fn ring_line(&mut self, kv: &mut KeyValues, lineno: usize) -> Result<()> {
        if self.ring.is_some() || self.pending_ring.is_some() {
            return Err(bad(lineno, 1, "duplicate `ring` block (one ring per file)"));
        }
        let (pc, pv) = kv.require("p")?;
        let p = parse_u64(&pv, lineno, pc)?;
        let (vc, vv) = kv.require("vars")?;
        let vars = bracket_items(&vv, lineno, vc)?;
        if vars.is_empty() {
            return Err(bad(lineno, vc, "vars must be nonempty"));
        }
        let order = match kv.take("order") {
            None => MonomialOrder::Grevlex,
            Some((_, s)) if s == "grevlex" => MonomialOrder::Grevlex,
            Some((_, s)) if s == "lex" => MonomialOrder::Lex,
            Some((c, s)) => return Err(bad(lineno, c, format!("unknown order `{}`", s))),
        };
        self.pending_ring = Some((p, vars, order));
        Ok(())
    }

    fn ci_line(&mut self, kv: &mut KeyValues, lineno: usize) -> Result<()> {
        if self.saw_ci {
            return Err(bad(lineno, 1, "duplicate `ci` block"));
        }
        if self.ring.is_some() {
            return Err(bad(lineno, 1, "`ci` must come before ideals, modules, and commands"));
        }
        let (p, vars, order) = self
            .pending_ring
            .take()
            .ok_or_else(|| bad(lineno, 1, "`ci` requires a preceding `ring` block"))?;
        let poly = PolyRing::new(crate::fp::Fp::new(p)?, vars, order)?;
        let (fc, fv) = kv.require("f")?;
        let f = poly_items(&poly, &fv, lineno, fc)?;
        self.ring = Some(Arc::new(RingSpec::new(poly, f)?));
        self.saw_ci = true;
        Ok(())
    }

    fn ideal_line(&mut self, toks: &[(usize, String)], lineno: usize) -> Result<()> {
        if toks.len() != 1 {
            return Err(bad(lineno, 1, "expected `ideal NAME=[gens]`"));
        }
        let ring = self.ring(lineno)?;
        let (col, tok) = &toks[0];
        let (name, value) = tok
            .split_once('=')
            .ok_or_else(|| bad(lineno, *col, "expected `ideal NAME=[gens]`"))?;
        if self.ideals.contains_key(name) {
            return Err(bad(lineno, *col, format!("duplicate ideal `{}`", name)));
        }
        let gens = poly_items(ring.poly(), value, lineno, *col)?;
        for g in &gens {
            ring.poly().homogeneous_degree(g)?;
        }
        self.ideals.insert(name.to_string(), gens);
        Ok(())
    }

    fn module_line(&mut self, toks: &[(usize, String)], lineno: usize) -> Result<()> {
        if toks.is_empty() {
            return Err(bad(lineno, 1, "expected `module NAME gens=[..] rels=[..]`"));
        }
        let ring = self.ring(lineno)?;
        let (ncol, name) = &toks[0];
        if name.contains('=') {
            return Err(bad(lineno, *ncol, "expected a module name before the keys"));
        }
        if self.modules.contains_key(name) {
            return Err(bad(lineno, *ncol, format!("duplicate module `{}`", name)));
        }
        let mut kv = KeyValues::new(lineno, &toks[1..])?;
        let (gc, gv) = kv.require("gens")?;
        let twists: Vec<i64> = bracket_items(&gv, lineno, gc)?
            .iter()
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| bad(lineno, gc, format!("expected an integer twist, got `{}`", s)))
            })
            .collect::<Result<_>>()?;
        let (rc, rv) = kv.require("rels")?;
        kv.finish()?;
        let order = pot(&ring);
        let mut relations = Vec::new();
        for item in bracket_items(&rv, lineno, rc)? {
            let entries = poly_items(ring.poly(), &item, lineno, rc)?;
            if entries.len() != twists.len() {
                return Err(bad(
                    lineno,
                    rc,
                    format!(
                        "relation `{}` has {} entries for {} generators",
                        item,
                        entries.len(),
                        twists.len()
                    ),
                ));
            }
            let mut v = FreeVector::zero();
            for (k, p) in entries.iter().enumerate() {
                v = v.add(ring.poly(), &order, &poly_to_vec(ring.poly(), &order, p, k));
            }
            relations.push(v);
        }
        let module = PresentedModule::new(ring.clone(), twists, relations)?;
        self.modules.insert(name.to_string(), Arc::new(module));
        Ok(())
    }

    fn known_module(&self, name: &str, lineno: usize, col: usize) -> Result<String> {
        if self.modules.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(Error::UnknownReference(format!(
                "module `{}` at line {} column {}",
                name, lineno, col
            )))
        }
    }

    fn known_ideal(&self, name: &str, lineno: usize, col: usize) -> Result<String> {
        if self.ideals.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(Error::UnknownReference(format!(
                "ideal `{}` at line {} column {}",
                name, lineno, col
            )))
        }
    }

    fn grid_params(&self, kv: &mut KeyValues, lineno: usize) -> Result<GridParams> {
        let (mc, mv) = kv.require("M")?;
        let (nc, nv) = kv.require("N")?;
        let (ic, iv) = kv.require("I")?;
        let t = match kv.take("t") {
            Some((c, v)) => parse_parity(&v, lineno, c)?,
            None => 0,
        };
        let (nrc, nrv) = kv.require("n")?;
        let n_range = parse_range(&nrv, lineno, nrc)?;
        let (irc, irv) = kv.require("i")?;
        let i_range = parse_range(&irv, lineno, irc)?;
        if n_range.0 < 0 || i_range.0 < 0 {
            return Err(bad(lineno, nrc, "grid ranges must be nonnegative"));
        }
        let margin = match kv.take("margin") {
            Some((c, v)) => parse_usize(&v, lineno, c)?,
            None => 3,
        };
        Ok(GridParams {
            m: self.known_module(&mv, lineno, mc)?,
            n: self.known_module(&nv, lineno, nc)?,
            ideal: self.known_ideal(&iv, lineno, ic)?,
            t,
            n_range,
            i_range,
            margin,
            out: kv.take("out").map(|(_, v)| v),
            report: kv.take("report").map(|(_, v)| v),
        })
    }

    fn cmd_line(&mut self, toks: &[(usize, String)], lineno: usize) -> Result<()> {
        let (_c, sub) = toks
            .first()
            .ok_or_else(|| bad(lineno, 1, "expected a subcommand after `cmd`"))?;
        self.ring(lineno)?;
        let mut kv = KeyValues::new(lineno, &toks[1..])?;
        let command = match sub.as_str() {
            "depth-grid" => Command::DepthGrid(self.grid_params(&mut kv, lineno)?),
            "grade-grid" => {
                let kind = match kv.take("kind") {
                    None => FamilyKind::Quot,
                    Some((c, v)) => FamilyKind::parse(&v).ok_or_else(|| {
                        bad(lineno, c, format!("unknown family kind `{}`", v))
                    })?,
                };
                let (jc, jv) = kv.require("J")?;
                let base = self.grid_params(&mut kv, lineno)?;
                Command::GradeGrid {
                    base,
                    j: self.known_ideal(&jv, lineno, jc)?,
                    kind,
                }
            }
            "bass-grid" => {
                let (jc, jv) = kv.require("j")?;
                let j = parse_usize(&jv, lineno, jc)?;
                let base = self.grid_params(&mut kv, lineno)?;
                Command::BassGrid { base, j }
            }
            "series-check" => {
                let (jc, jv) = kv.require("j")?;
                let j = parse_usize(&jv, lineno, jc)?;
                let tail = match kv.take("tail") {
                    Some((c, v)) => parse_pair(&v, lineno, c)?,
                    None => (0, 0),
                };
                let c = match kv.take("c") {
                    Some((cc, v)) => Some(parse_usize(&v, lineno, cc)?),
                    None => None,
                };
                let r = match kv.take("r") {
                    Some((rc, v)) => Some(parse_usize(&v, lineno, rc)?),
                    None => None,
                };
                let base = self.grid_params(&mut kv, lineno)?;
                Command::SeriesCheck {
                    base,
                    j,
                    tail,
                    c,
                    r,
                }
            }
            "fit" => {
                let j = match kv.take("j") {
                    Some((jc, v)) => Some(parse_usize(&v, lineno, jc)?),
                    None => None,
                };
                let (fc, fv) = kv.require("fit")?;
                let fit = parse_region(&fv, lineno, fc)?;
                let (vc, vv) = kv.require("validate")?;
                let validate = parse_region(&vv, lineno, vc)?;
                let base = self.grid_params(&mut kv, lineno)?;
                Command::Fit {
                    base,
                    j,
                    fit,
                    validate,
                }
            }
            "ext" => {
                let (mc, mv) = kv.require("M")?;
                let (nc, nv) = kv.require("N")?;
                let (ic, iv) = kv.require("i")?;
                Command::Ext {
                    m: self.known_module(&mv, lineno, mc)?,
                    n: self.known_module(&nv, lineno, nc)?,
                    i: parse_usize(&iv, lineno, ic)?,
                }
            }
            "resolve" => {
                let (mc, mv) = kv.require("M")?;
                let (uc, uv) = kv.require("upto")?;
                Command::Resolve {
                    m: self.known_module(&mv, lineno, mc)?,
                    upto: parse_usize(&uv, lineno, uc)?,
                }
            }
            "gb" => {
                let (ic, iv) = kv.require("I")?;
                Command::Gb {
                    ideal: self.known_ideal(&iv, lineno, ic)?,
                }
            }
            other => {
                return Err(bad(lineno, 1, format!("unknown subcommand `{}`", other)));
            }
        };
        kv.finish()?;
        self.commands.push(command);
        Ok(())
    }
}

pub fn parse_spec(text: &str) -> Result<ExperimentSpec> {
    let mut p = Parser {
        ring: None,
        pending_ring: None,
        saw_ci: false,
        ideals: BTreeMap::new(),
        modules: BTreeMap::new(),
        commands: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let toks = tokens(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let head = toks[0].1.as_str();
        let rest = &toks[1..];
        match head {
            "ring" => {
                let mut kv = KeyValues::new(lineno, rest)?;
                p.ring_line(&mut kv, lineno)?;
                kv.finish()?;
            }
            "ci" => {
                let mut kv = KeyValues::new(lineno, rest)?;
                p.ci_line(&mut kv, lineno)?;
                kv.finish()?;
            }
            "ideal" => p.ideal_line(rest, lineno)?,
            "module" => p.module_line(rest, lineno)?,
            "cmd" => p.cmd_line(rest, lineno)?,
            other => {
                return Err(bad(
                    lineno,
                    toks[0].0,
                    format!("unknown block `{}` (expected ring, ci, ideal, module, cmd)", other),
                ));
            }
        }
    }
    let ring = p.ring(text.lines().count().max(1))?;
    Ok(ExperimentSpec {
        ring,
        ideals: p.ideals,
        modules: p.modules,
        commands: p.commands,
    })
}
