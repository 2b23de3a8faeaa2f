use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Deserialize;

use darcais::arith::ArithmeticFunctionSpec;
use darcais::classical::{self, IdentityName, SzegoConfig};
use darcais::exact::{format_ratio, parse_ratio, Rational};
use darcais::families::parse_family;
use darcais::rootloc::{extremal_zeros, family_tag, kostant_sign_check, magnitude_bound_check};
use darcais::tables::{build_table, FamilyStore, TableConfig, TableId, TableSpec};
use darcais::transfer;
use darcais::Error;

const CACHE_ENV: &str = "DARCAIS_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "darcais", version, about = "Polynomial families P_n^{g,h}, Q_n^g: tables, zeros and exact checks")]
struct Cli {
    #[command(flatten)]
    opts: Opts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
struct Opts {
    /// Write output here instead of stdout (`.json` selects JSON).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; defaults to the `--out` extension, else CSV.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Decimal places of rendered numbers.
    #[arg(long, global = true)]
    decimals: Option<u32>,

    /// Allow the long-running rows and ranges.
    #[arg(long, global = true)]
    #[serde(default)]
    extended: bool,

    /// Seed of the random instances and probes in `verify`
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Isolating interval width, as `a/b` or a decimal.
    #[arg(long, global = true)]
    width: Option<String>,

    /// Airy zero constant of the Szego approximation.
    #[arg(long, global = true)]
    i1: Option<f64>,

    /// Exponent `e` in the factor `6^e` of the Szego approximation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    szego_exponent: Option<f64>,

    /// Worker threads for independent rows (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Comma-separated row list overriding the table default.
    #[arg(long, global = true, value_delimiter = ',')]
    n: Option<Vec<usize>>,

    /// Coefficient cache directory (default: $DARCAIS_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// JSON file with any of the above options; flags given on the
    /// command line take precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce a table or figure dataset.
    Table {
        /// alphabeta, szego, observation, betraege, lehmerQ, fig2, figQP or figAA
        id: String,
    },
    /// Run exact verifications; exit status 1 on any failure.
    Verify {
        #[arg(value_enum)]
        what: Check,
    },
    /// Certified zeros of one family member, as JSON.
    Zeros {
        /// `P:<g>` (h = id), `Q:<g>` (h = 1), `P:<g>/<h>`, or a bare `<g>` for `P`
        family: String,
        n: usize,
    },
    /// Write the coefficient cache of P^{g,id} and Q^g up to n.
    Cache {
        /// arithmetic function g, e.g. `sigma`, `id`, `parity`
        family: String,
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Lemma,
    Identities,
    Links,
    Rechts,
    Bounds,
    Lehmer,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidSpec(_)
            | Error::ExtendedRequired(_)
            | Error::OutOfRange { .. }
            | Error::NonPositiveWidth
            | Error::ZeroArgument
            | Error::ZeroPoint(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

impl Opts {
    /// Command-line values first, then the config file.
    fn merge(self, file: Opts) -> Opts {
        Opts {
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            decimals: self.decimals.or(file.decimals),
            extended: self.extended || file.extended,
            seed: self.seed.or(file.seed),
            width: self.width.or(file.width),
            i1: self.i1.or(file.i1),
            szego_exponent: self.szego_exponent.or(file.szego_exponent),
            workers: self.workers.or(file.workers),
            n: self.n.or(file.n),
            cache_dir: self.cache_dir.or(file.cache_dir),
            config: self.config,
        }
    }

    fn load(self) -> Outcome<Opts> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let file: Opts = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?;
        Ok(self.merge(file))
    }

    fn width(&self) -> Outcome<Rational> {
        match &self.width {
            Some(w) => Ok(parse_ratio(w)?),
            None => Ok(darcais::rootloc::default_width()),
        }
    }

    fn table_config(&self) -> Outcome<TableConfig> {
        let defaults = SzegoConfig::default();
        Ok(TableConfig {
            width: self.width()?,
            szego: SzegoConfig {
                i1: self.i1.unwrap_or(defaults.i1),
                exponent: self.szego_exponent.unwrap_or(defaults.exponent),
            },
            workers: self.workers.unwrap_or(0),
        })
    }

    fn store(&self) -> FamilyStore {
        let dir = self
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        FamilyStore::new(dir)
    }

    fn format(&self) -> Format {
        self.format.unwrap_or_else(|| match &self.out {
            Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => Format::Json,
            _ => Format::Csv,
        })
    }

    fn emit(&self, text: &str) -> Outcome<()> {
        match &self.out {
            Some(path) => write_file(path, text),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Runtime(e.to_string()))
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure::Runtime(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn flush_warnings(store: &FamilyStore) {
    for w in store.take_warnings() {
        eprintln!("warning: {w}");
    }
}

fn run_table(opts: &Opts, id: &str) -> Outcome<()> {
    let id: TableId = id.parse()?;
    let mut spec = TableSpec::new(id, opts.extended);
    if let Some(ns) = &opts.n {
        spec = spec.with_ns(ns.clone());
    }
    if let Some(d) = opts.decimals {
        spec = spec.with_decimals(d);
    }
    let store = opts.store();
    let table = build_table(&spec, &opts.table_config()?, &store);
    flush_warnings(&store);
    let table = table?;
    let text = match opts.format() {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    opts.emit(&text)
}

fn run_zeros(opts: &Opts, family: &str, n: usize) -> Outcome<()> {
    let (g, h) = parse_family(family)?;
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let store = opts.store();
    let fam = store.family(&g, &h, n);
    flush_warnings(&store);
    let report = extremal_zeros(&fam?, n, &opts.width()?)?;
    let json = report.to_json(opts.decimals.unwrap_or(12));
    let mut text = serde_json::to_string_pretty(&json).map_err(|e| Failure::Runtime(e.to_string()))?;
    text.push('\n');
    opts.emit(&text)
}

fn run_cache(opts: &Opts, family: &str, n: usize) -> Outcome<()> {
    let g: ArithmeticFunctionSpec = family.parse()?;
    let store = opts.store();
    if store.dir().is_none() {
        return Err(Failure::Usage(format!("no cache directory; set {CACHE_ENV} or pass --cache-dir")));
    }
    let p = store.p(&g, n);
    let q = store.q(&g, n);
    flush_warnings(&store);
    for (fam, h) in [(p?, ArithmeticFunctionSpec::id()), (q?, ArithmeticFunctionSpec::one())] {
        let path = store.cache_path(&g, &h).expect("cache dir set");
        eprintln!("{} n_max={} -> {}", family_tag(&fam), fam.n_max(), path.display());
    }
    Ok(())
}

/// Collects report lines and remembers whether anything failed.
#[derive(Default)]
struct Report {
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    fn check(&mut self, ok: bool, line: String) {
        if !ok {
            self.failures += 1;
        }
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.lines.push(format!("note {line}"));
    }

    fn finish(self, opts: &Opts, what: &str) -> Outcome<()> {
        let mut text = self.lines.join("\n");
        text.push('\n');
        opts.emit(&text)?;
        if self.failures == 0 {
            eprintln!("verify {what}: all checks passed");
            Ok(())
        } else {
            Err(Failure::Verification(format!("verify {what}: {} check(s) failed", self.failures)))
        }
    }
}

fn n_or(opts: &Opts, default: usize) -> Outcome<usize> {
    match opts.n.as_deref() {
        None => Ok(default),
        Some([n]) => Ok(*n),
        Some(_) => Err(Failure::Usage("verify takes a single --n".into())),
    }
}

fn sign_catalog() -> Vec<ArithmeticFunctionSpec> {
    vec![
        ArithmeticFunctionSpec::sigma(),
        ArithmeticFunctionSpec::id(),
        ArithmeticFunctionSpec::Parity,
        ArithmeticFunctionSpec::Hermite,
    ]
}

fn run_verify(opts: &Opts, what: Check) -> Outcome<()> {
    let seed = opts.seed.unwrap_or(0);
    let mut report = Report::default();
    let name = format!("{what:?}").to_lowercase();
    match what {
        Check::Lemma => {
            let n_max = n_or(opts, 30)?;
            let suite = transfer::lemma_suite(200, n_max, seed)?;
            let mut text = String::new();
            for t in &suite {
                let rec = t.record(seed);
                if !rec.ok {
                    report.failures += 1;
                }
                text.push_str(&serde_json::to_string(&rec).map_err(|e| Failure::Runtime(e.to_string()))?);
                text.push('\n');
            }
            opts.emit(&text)?;
            return if report.failures == 0 {
                eprintln!("verify lemma: {} instances, all residuals zero", suite.len());
                Ok(())
            } else {
                Err(Failure::Verification(format!("verify lemma: {} nonzero residual(s)", report.failures)))
            };
        }
        Check::Identities => {
            let n_max = n_or(opts, 60)?;
            let ctx = classical::IdentityContext::new(n_max)?;
            for id in IdentityName::ALL {
                let bad: Vec<usize> = (1..=n_max)
                    .map(|n| ctx.check(id, n).map(|c| (n, c.holds)))
                    .collect::<darcais::Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(n, _)| n)
                    .collect();
                report.check(bad.is_empty(), format!("{id} n<={n_max} failing={bad:?}"));
            }
        }
        Check::Links => {
            let n_max = n_or(opts, 20)?;
            let h = ArithmeticFunctionSpec::id();
            for g in sign_catalog() {
                for n in 1..=n_max {
                    let res = transfer::check_links(&g, &h, n, 3, seed.wrapping_add(n as u64))?;
                    let bad = res.probes.iter().filter(|p| !p.satisfied).count();
                    report.check(
                        bad == 0,
                        format!(
                            "links g={g} n={n} kappa={:.6} probes={} violations={bad}",
                            transfer::approx(&res.kappa_or_mu),
                            res.probes.len()
                        ),
                    );
                }
            }
        }
        Check::Rechts => {
            let n_max = n_or(opts, 20)?;
            let h = ArithmeticFunctionSpec::id();
            for g in sign_catalog() {
                for n in 1..=n_max {
                    match transfer::check_rechts(&g, &h, n, 3, seed.wrapping_add(n as u64)) {
                        Ok(res) => {
                            let bad = res.probes.iter().filter(|p| !p.satisfied).count();
                            report.check(
                                bad == 0,
                                format!(
                                    "rechts g={g} n={n} mu={:.6} probes={} violations={bad}",
                                    transfer::approx(&res.kappa_or_mu),
                                    res.probes.len()
                                ),
                            );
                        }
                        Err(Error::HypothesisUnsatisfiable(why)) => {
                            report.note(format!("rechts g={g}: hypothesis not met ({why})"));
                            break;
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        Check::Bounds => {
            let n_max = n_or(opts, if opts.extended { 60 } else { 30 })?;
            for n in 2..=n_max.max(2) {
                let c = transfer::zero_containment(n)?;
                report.check(
                    c.contained,
                    format!(
                        "containment n={n} [{:.6}, {:.6}] zeros [{:.6}, {:.6}]{}",
                        c.lower,
                        c.upper,
                        c.smallest_root,
                        c.largest_root,
                        if c.touches_boundary { " (boundary)" } else { "" }
                    ),
                );
            }
            for m in 2..=n_max.clamp(2, 30) {
                let b = transfer::laguerre_zero_bounds(m)?;
                report.check(
                    b.contained,
                    format!(
                        "laguerre m={m} [{:.6}, {:.6}] zeros [{:.6}, {:.6}]",
                        b.lower, b.upper, b.smallest_root, b.largest_root
                    ),
                );
            }
            for n in 2..=n_max.clamp(2, 30) {
                let b = transfer::hermite_bound_check(n)?;
                let expected = if n == 2 {
                    std::cmp::Ordering::Equal
                } else {
                    std::cmp::Ordering::Less
                };
                report.check(
                    b.ordering == expected,
                    format!(
                        "hermite n={n} max_zero={:.9} bound={:.9} relation={:?} expansion={:.6}",
                        b.max_root, b.bound, b.ordering, b.expansion
                    ),
                );
            }
            let mag_n = n_max.clamp(2, 30);
            for (g, kappa) in [(ArithmeticFunctionSpec::sigma(), 10.8182), (ArithmeticFunctionSpec::Parity, 5.71)] {
                let store = opts.store();
                let fam = store.p(&g, mag_n);
                flush_warnings(&store);
                for m in magnitude_bound_check(&fam?, mag_n, kappa)? {
                    report.check(
                        m.ok,
                        format!("magnitude g={g} n={} max|z|={:.6} bound={:.6}", m.n, m.magnitude, m.bound),
                    );
                }
            }
            for k in kostant_sign_check(mag_n)? {
                report.check(
                    k.at_square && k.at_shifted_square,
                    format!("kostant n={} at -n^2+1: {} at -n^2: {}", k.n, k.at_shifted_square, k.at_square),
                );
            }
        }
        Check::Lehmer => {
            let n_max = n_or(opts, 50)?;
            let minus_one = Rational::from_integer((-1).into());
            let scan = transfer::lehmer_scan(n_max, &[minus_one])?;
            for (n, z, v) in &scan.values {
                report.check(!v.is_zero(), format!("lehmer n={n} z={} sum={}", format_ratio(z), format_ratio(v)));
            }
            report.check(scan.reference_ok, "Q_n^sigma(-1) reference values n<=20".into());
            let tau_max = if opts.extended { 10_000 } else { 2000 };
            let taus = classical::tau_values(tau_max);
            let zero = taus.iter().position(|t| t.is_zero());
            report.check(zero.is_none(), format!("tau(n) != 0 for n<={tau_max}"));
            let eta = classical::eta_power_coeffs(24, 20);
            let agree = (0..=20).all(|n| eta[n] == Rational::from_integer(taus[n].clone()));
            report.check(agree, "a_n(24) = tau(n+1) for n<=20".into());
        }
    }
    report.finish(opts, &name)
}

fn run(cli: Cli) -> Outcome<()> {
    let opts = cli.opts.load()?;
    match cli.command {
        Command::Table { id } => run_table(&opts, &id),
        Command::Verify { what } => run_verify(&opts, what),
        Command::Zeros { family, n } => run_zeros(&opts, &family, n),
        Command::Cache { family, n } => run_cache(&opts, &family, n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
