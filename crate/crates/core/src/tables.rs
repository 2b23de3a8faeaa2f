//! Reproducible numeric tables and figure datasets.
//!
//! Every cell is rendered from an exact rational (certified interval
//! midpoints, or the exact value of a float) with half-away-from-zero
//! rounding, so output is byte-stable.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::ArithmeticFunctionSpec;
use crate::classical::{szego_gamma, SzegoConfig};
use crate::error::{Error, Result};
use crate::exact::{from_f64, round_decimal, Rational};
use crate::families::{compute_family, eval_family_at, FamilyCache, PolyFamily};
use crate::rootloc::{analyze, default_width, extremal_zeros, max_complex_magnitude, ratio_row, strip_trivial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    #[serde(rename = "alphabeta")]
    AlphaBeta,
    #[serde(rename = "szego")]
    Szego,
    #[serde(rename = "observation")]
    Observation,
    #[serde(rename = "betraege")]
    Betraege,
    #[serde(rename = "lehmerQ")]
    LehmerQ,
    #[serde(rename = "fig2")]
    Fig2,
    #[serde(rename = "figQP")]
    FigQP,
    #[serde(rename = "figAA")]
    FigAA,
}

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

impl TableId {
    pub const ALL: [TableId; 8] = [
        TableId::AlphaBeta,
        TableId::Szego,
        TableId::Observation,
        TableId::Betraege,
        TableId::LehmerQ,
        TableId::Fig2,
        TableId::FigQP,
        TableId::FigAA,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableId::AlphaBeta => "alphabeta",
            TableId::Szego => "szego",
            TableId::Observation => "observation",
            TableId::Betraege => "betraege",
            TableId::LehmerQ => "lehmerQ",
            TableId::Fig2 => "fig2",
            TableId::FigQP => "figQP",
            TableId::FigAA => "figAA",
        }
    }

    /// Printed decimal places; `0` for the integer table.
    pub fn default_decimals(self) -> u32 {
        match self {
            TableId::AlphaBeta => 4,
            TableId::Betraege => 9,
            TableId::LehmerQ => 0,
            _ => 6,
        }
    }

    pub fn is_figure(self) -> bool {
        matches!(self, TableId::Fig2 | TableId::FigQP | TableId::FigAA)
    }

    /// Rows produced without `--extended`.
    pub fn default_ns(self) -> Vec<usize> {
        match self {
            TableId::AlphaBeta => (2..=10).chain([20, 100, 120]).collect(),
            TableId::Szego => (2..=10).chain([20]).collect(),
            TableId::Observation => vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 47],
            TableId::Betraege => (2..=10).chain((20..=100).step_by(10)).collect(),
            TableId::LehmerQ => (1..=20).collect(),
            TableId::Fig2 => (1..=100).collect(),
            TableId::FigQP => primes_up_to(100),
            TableId::FigAA => (1..=10).collect(),
        }
    }

    /// Rows added by `--extended`.
    pub fn extended_ns(self) -> Vec<usize> {
        match self {
            TableId::AlphaBeta => vec![200],
            TableId::Szego => (30..=100).step_by(10).collect(),
            TableId::Observation => vec![149, 257],
            TableId::Betraege => Vec::new(),
            TableId::LehmerQ => (21..=60).collect(),
            TableId::Fig2 => (101..=200).collect(),
            TableId::FigQP => primes_up_to(150).into_iter().filter(|&p| p > 100).collect(),
            TableId::FigAA => (11..=20).collect(),
        }
    }

    /// Largest `n` computed without `--extended`.
    pub fn default_limit(self) -> usize {
        match self {
            TableId::AlphaBeta => 120,
            TableId::Szego => 20,
            TableId::Observation => 47,
            TableId::Betraege => 100,
            TableId::LehmerQ => 20,
            TableId::Fig2 | TableId::FigQP => 100,
            TableId::FigAA => 10,
        }
    }

    fn smallest_n(self) -> usize {
        match self {
            TableId::AlphaBeta | TableId::Szego | TableId::Observation | TableId::Betraege => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<&str> = TableId::ALL.iter().map(|t| t.as_str()).collect();
                Error::Parse(format!("unknown table {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub id: TableId,
    pub ns: Vec<usize>,
    pub decimals: u32,
    pub extended: bool,
}

impl TableSpec {
    pub fn new(id: TableId, extended: bool) -> Self {
        let mut ns = id.default_ns();
        if extended {
            ns.extend(id.extended_ns());
        }
        TableSpec {
            id,
            ns,
            decimals: id.default_decimals(),
            extended,
        }
    }

    pub fn with_ns(mut self, ns: Vec<usize>) -> Self {
        self.ns = ns;
        self
    }

    pub fn with_decimals(mut self, decimals: u32) -> Self {
        self.decimals = decimals;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::Parse("no rows requested".into()));
        }
        let low = self.id.smallest_n();
        if let Some(&n) = self.ns.iter().find(|&&n| n < low) {
            return Err(Error::OutOfRange {
                requested: n,
                available: low,
            });
        }
        if !self.extended {
            let limit = self.id.default_limit();
            let big: Vec<String> = self.ns.iter().filter(|&&n| n > limit).map(|n| n.to_string()).collect();
            if !big.is_empty() {
                return Err(Error::ExtendedRequired(format!(
                    "{} rows beyond n = {limit} ({}) are long-running; rerun with --extended",
                    self.id,
                    big.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// Numeric settings shared by all tables.
#[derive(Clone, Debug)]
pub struct TableConfig {
    pub width: Rational,
    pub szego: SzegoConfig,
    /// Worker threads for independent rows; `0` picks the default.
    pub workers: usize,
}

impl Default for TableConfig {
    fn default() -> Self {
        TableConfig {
            width: default_width(),
            szego: SzegoConfig::default(),
            workers: 0,
        }
    }
}

/// Family provider with an optional on-disk coefficient cache.
#[derive(Debug, Default)]
pub struct FamilyStore {
    dir: Option<PathBuf>,
    warnings: Mutex<Vec<String>>,
}

impl FamilyStore {
    pub fn new(dir: Option<PathBuf>) -> Self {
        FamilyStore {
            dir,
            warnings: Mutex::new(Vec::new()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn cache_path(&self, g: &ArithmeticFunctionSpec, h: &ArithmeticFunctionSpec) -> Option<PathBuf> {
        let clean = |s: String| -> String {
            s.chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
                .collect()
        };
        let name = format!("{}__{}.json", clean(g.to_string()), clean(h.to_string()));
        self.dir.as_ref().map(|d| d.join(name))
    }

    /// Warnings about unreadable cache files, drained.
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().unwrap())
    }

    fn warn(&self, msg: String) {
        self.warnings.lock().unwrap().push(msg);
    }

    fn load(&self, path: &Path, g: &ArithmeticFunctionSpec, h: &ArithmeticFunctionSpec) -> Option<PolyFamily> {
        let text = fs::read_to_string(path).ok()?;
        let parsed = serde_json::from_str::<FamilyCache>(&text)
            .map_err(|e| Error::Cache(e.to_string()))
            .and_then(|c| PolyFamily::from_cache(&c));
        match parsed {
            Ok(fam) if fam.g() == g && fam.h() == h => Some(fam),
            Ok(_) => {
                self.warn(format!("{}: cache belongs to another family; recomputing", path.display()));
                None
            }
            Err(e) => {
                self.warn(format!("{}: corrupt cache ({e}); recomputing", path.display()));
                None
            }
        }
    }

    /// `P_0^{g,h}, ..., P_{n_max}^{g,h}`, read from the cache when it covers
    /// `n_max` and written back otherwise.
    pub fn family(&self, g: &ArithmeticFunctionSpec, h: &ArithmeticFunctionSpec, n_max: usize) -> Result<PolyFamily> {
        let Some(path) = self.cache_path(g, h) else {
            return compute_family(g, h, n_max);
        };
        let fam = match self.load(&path, g, h) {
            Some(f) if f.n_max() >= n_max => return Ok(f),
            Some(mut f) => {
                f.extend_to(n_max)?;
                f
            }
            None => compute_family(g, h, n_max)?,
        };
        self.store(&path, &fam)?;
        Ok(fam)
    }

    fn store(&self, path: &Path, fam: &PolyFamily) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io)?;
        }
        let text = serde_json::to_string(&fam.to_cache()).map_err(|e| Error::Cache(e.to_string()))?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }

    pub fn q(&self, g: &ArithmeticFunctionSpec, n_max: usize) -> Result<PolyFamily> {
        self.family(g, &ArithmeticFunctionSpec::one(), n_max)
    }

    pub fn p(&self, g: &ArithmeticFunctionSpec, n_max: usize) -> Result<PolyFamily> {
        self.family(g, &ArithmeticFunctionSpec::id(), n_max)
    }
}

/// A rendered table: every cell is already a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub id: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Comma separated, LF line endings, header first.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("strings serialize");
        s.push('\n');
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }
}

fn map_rows<T, F>(ns: &[usize], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers != 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Parse(e.to_string()))?;
            return pool.install(|| ns.par_iter().map(|&n| f(n)).collect());
        }
    }
    let _ = workers;
    ns.iter().map(|&n| f(n)).collect()
}

fn float_cell(x: f64, decimals: u32) -> Result<String> {
    from_f64(x)
        .map(|q| round_decimal(&q, decimals))
        .ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}

fn scale(q: &Rational, n: usize) -> Rational {
    q * Rational::from_integer(BigInt::from(n))
}

/// Builds a table, fetching families through `store`.
pub fn build_table(spec: &TableSpec, cfg: &TableConfig, store: &FamilyStore) -> Result<Table> {
    spec.validate()?;
    let n_max = spec.ns.iter().copied().max().unwrap_or(1);
    let d = spec.decimals;
    let w = &cfg.width;
    let cols = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (columns, rows): (Vec<String>, Vec<Vec<String>>) = match spec.id {
        TableId::AlphaBeta | TableId::Observation => {
            let g = if spec.id == TableId::AlphaBeta {
                ArithmeticFunctionSpec::id()
            } else {
                ArithmeticFunctionSpec::sigma()
            };
            let q = store.q(&g, n_max)?;
            let p = store.p(&g, n_max)?;
            let rows = map_rows(&spec.ns, cfg.workers, |n| {
                let r = ratio_row(&q, &p, n, w)?;
                Ok(vec![
                    n.to_string(),
                    round_decimal(&r.alpha_q, d),
                    round_decimal(&r.beta_q, d),
                    round_decimal(&r.ratio_alpha, d),
                    round_decimal(&r.ratio_beta, d),
                ])
            })?;
            (cols(&["n", "alpha", "beta", "ratio_alpha", "ratio_beta"]), rows)
        }
        TableId::Szego => {
            let id = ArithmeticFunctionSpec::id();
            let q = store.q(&id, n_max)?;
            let p = store.p(&id, n_max)?;
            let rows = map_rows(&spec.ns, cfg.workers, |n| {
                let smallest = |fam: &PolyFamily| -> Result<Rational> {
                    extremal_zeros(fam, n, w)?
                        .alpha
                        .map(|iv| iv.midpoint())
                        .ok_or(Error::ZeroDivisor("no real zero"))
                };
                let gamma = szego_gamma(n, &cfg.szego)?.gamma_n;
                Ok(vec![
                    n.to_string(),
                    round_decimal(&smallest(&p)?, d),
                    round_decimal(&scale(&smallest(&q)?, n - 1), d),
                    float_cell(gamma, d)?,
                ])
            })?;
            (cols(&["n", "alpha_tilde", "scaled_alpha", "gamma"]), rows)
        }
        TableId::Betraege => {
            let q = store.q(&ArithmeticFunctionSpec::Parity, n_max)?;
            let rows = map_rows(&spec.ns, cfg.workers, |n| {
                let (stripped, _) = strip_trivial(q.member(n)?);
                let m = max_complex_magnitude(&stripped, 1e-14)?;
                Ok(vec![n.to_string(), float_cell(m, d)?])
            })?;
            (cols(&["n", "max_abs_root"]), rows)
        }
        TableId::LehmerQ => {
            let values = eval_family_at(
                &ArithmeticFunctionSpec::sigma(),
                &ArithmeticFunctionSpec::one(),
                &Rational::from_integer((-1).into()),
                n_max,
            )?;
            let rows = spec
                .ns
                .iter()
                .map(|&n| vec![n.to_string(), round_decimal(&values[n], d)])
                .collect();
            (cols(&["n", "q_sigma_at_minus_one"]), rows)
        }
        TableId::Fig2 => {
            let sigma = ArithmeticFunctionSpec::sigma();
            let q = store.q(&sigma, n_max)?;
            let p = store.p(&sigma, n_max)?;
            let per_n = map_rows(&spec.ns, cfg.workers, |n| {
                let mut rows = Vec::new();
                let aq = extremal_zeros(&q, n, w)?.alpha;
                let ap = extremal_zeros(&p, n, w)?.alpha;
                if let Some(a) = aq {
                    rows.push(figure_row(n, "Q", 0, Complex64::new(0.0, 0.0), Some(a.midpoint()), d)?);
                }
                if let (Some(a), true) = (ap, n > 1) {
                    let x = a.midpoint() / Rational::from_integer(BigInt::from(n - 1));
                    rows.push(figure_row(n, "P_scaled", 0, Complex64::new(0.0, 0.0), Some(x), d)?);
                }
                Ok(rows)
            })?;
            (figure_columns(), per_n.into_iter().flatten().collect())
        }
        TableId::FigQP | TableId::FigAA => {
            let g = if spec.id == TableId::FigQP {
                ArithmeticFunctionSpec::sigma()
            } else {
                ArithmeticFunctionSpec::Parity
            };
            let q = store.q(&g, n_max)?;
            let p = store.p(&g, n_max)?;
            let per_n = map_rows(&spec.ns, cfg.workers, |n| {
                let mut rows = all_zero_rows(&q, n, "Q", w, d)?;
                rows.extend(all_zero_rows(&p, n, "P", w, d)?);
                Ok(rows)
            })?;
            (figure_columns(), per_n.into_iter().flatten().collect())
        }
    };
    Ok(Table {
        id: spec.id.as_str().to_string(),
        columns,
        rows,
    })
}

fn figure_columns() -> Vec<String> {
    ["n", "series", "root_index", "re", "im", "is_real"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// A real root passes its certified midpoint as `exact_re`.
fn figure_row(
    n: usize,
    series: &str,
    index: usize,
    z: Complex64,
    exact_re: Option<Rational>,
    decimals: u32,
) -> Result<Vec<String>> {
    let is_real = exact_re.is_some();
    let re = match exact_re {
        Some(q) => round_decimal(&q, decimals),
        None => float_cell(z.re, decimals)?,
    };
    let im = if is_real {
        round_decimal(&Rational::zero(), decimals)
    } else {
        float_cell(z.im, decimals)?
    };
    Ok(vec![
        n.to_string(),
        series.to_string(),
        index.to_string(),
        re,
        im,
        is_real.to_string(),
    ])
}

/// Every zero of `P_n / z`, ordered by real then imaginary part.
fn all_zero_rows(fam: &PolyFamily, n: usize, series: &str, width: &Rational, decimals: u32) -> Result<Vec<Vec<String>>> {
    let (stripped, _) = strip_trivial(fam.member(n)?);
    let analysis = analyze(&stripped, width)?;
    let mut exact = analysis.real.iter().flat_map(|iv| std::iter::repeat_n(iv.midpoint(), iv.multiplicity));
    let mut roots: Vec<(Complex64, Option<Rational>)> = analysis
        .all_roots
        .iter()
        .zip(&analysis.is_real)
        .map(|(z, &real)| (*z, if real { exact.next() } else { None }))
        .collect();
    roots.sort_by(|a, b| {
        a.0.re
            .partial_cmp(&b.0.re)
            .unwrap()
            .then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    roots
        .into_iter()
        .enumerate()
        .map(|(k, (z, q))| figure_row(n, series, k, z, q, decimals))
        .collect()
}
