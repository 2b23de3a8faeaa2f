//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Long-running rows run only with `cargo test --test acceptance -- --extended`
//! (or `DARCAIS_EXTENDED=1`).

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use darcais::arith::ArithmeticFunctionSpec as A;
use darcais::classical::{self, szego_gamma, IdentityContext, IdentityName, SzegoConfig};
use darcais::exact::{int, rat, to_f64, Rational};
use darcais::families::{binomial_closed_form, compute_family, eval_family_at};
use darcais::rootloc::{
    analyze, default_width, extremal_zeros, magnitude_bound_check, ratio_table, strip_trivial,
};
use darcais::tables::{build_table, FamilyStore, TableConfig, TableId, TableSpec};
use darcais::transfer;
use darcais::{compute_p, compute_q, Error};

const LEHMER_Q: [i64; 20] = [-1, -2, 1, 2, 4, -6, -5, 4, 1, 18, -13, -26, 4, 22, 66, -76, -78, 66, 37, 122];

// n, alpha, beta, ratio alpha, ratio beta
const ALPHABETA: [(usize, f64, f64, f64, f64); 13] = [
    (2, -2.0000, -2.0000, 1.0000, 1.0000),
    (3, -3.0000, -1.0000, 0.7887, 0.6340),
    (4, -3.4142, -0.5858, 0.7575, 0.5325),
    (5, -3.6180, -0.3820, 0.7569, 0.4865),
    (6, -3.7321, -0.2679, 0.7642, 0.4606),
    (7, -3.8019, -0.1981, 0.7736, 0.4440),
    (8, -3.8478, -0.1522, 0.7831, 0.4326),
    (9, -3.8794, -0.1206, 0.7922, 0.4243),
    (10, -3.9021, -0.0979, 0.8007, 0.4179),
    (20, -3.9754, -0.0246, 0.8559, 0.3926),
    (100, -3.9990, -0.0010, 0.9422, 0.3757),
    (120, -3.9993, -0.0007, 0.9483, 0.3751),
    (200, -3.9998, -0.0002, 0.9622, 0.3738),
];

// n, alpha tilde, (n - 1) alpha, gamma
const SZEGO: [(usize, f64, f64, f64); 18] = [
    (2, -2.000000, -2.000000, -5.007008),
    (3, -4.732051, -6.000000, -8.014282),
    (4, -7.758770, -10.242641, -11.194149),
    (5, -10.953894, -14.472136, -14.488083),
    (6, -14.260103, -18.660254, -17.863804),
    (7, -17.645964, -22.811626, -21.301454),
    (8, -21.092177, -26.934313, -24.787866),
    (9, -24.585955, -31.035082, -28.313824),
    (10, -28.118343, -35.119017, -31.872599),
    (20, -64.649712, -75.532157, -68.531759),
    (30, -102.253573, -115.682270, -106.182727),
    (40, -140.359594, -155.759552, -144.313504),
    (50, -178.767074, -195.806619, -182.736279),
    (60, -217.379108, -235.838285, -221.358695),
    (70, -256.140634, -275.861043, -260.127718),
    (80, -295.017025, -315.878188, -299.009766),
    (90, -333.984925, -355.891567, -337.982076),
    (100, -373.027751, -395.902299, -377.028430),
];

const OBSERVATION: [(usize, f64, f64, f64, f64); 12] = [
    (2, -3.000000, -3.000000, 1.000000, 1.000000),
    (3, -5.236068, -0.763932, 0.763932, 0.654508),
    (5, -7.418833, -0.194397, 0.694579, 0.499140),
    (7, -8.352996, -0.087008, 0.697784, 0.444219),
    (11, -9.087471, -0.031512, 0.728503, 0.410896),
    (13, -9.251318, -0.021917, 0.743585, 0.392685),
    (17, -9.434121, -0.012353, 0.769357, 0.383976),
    (19, -9.488052, -0.009767, 0.780202, 0.381648),
    (23, -9.558851, -0.006544, 0.798626, 0.378863),
    (47, -9.681142, -0.001500, 0.860549, 0.363084),
    (149, -9.718238, -0.000145, 0.928608, 0.352456),
    (257, -9.721056, -0.000049, 0.948860, 0.350195),
];

const BETRAEGE: [(usize, f64); 18] = [
    (2, 1.000000000),
    (3, 1.732050808),
    (4, 2.475342535),
    (5, 2.910743051),
    (6, 3.189361602),
    (7, 3.374909553),
    (8, 3.504161170),
    (9, 3.597512290),
    (10, 3.667001052),
    (20, 3.908878746),
    (30, 3.958353612),
    (40, 3.976255443),
    (50, 3.984682343),
    (60, 3.989307029),
    (70, 3.992114849),
    (80, 3.993946290),
    (90, 3.995206626),
    (100, 3.996110777),
];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Largest deviation and where it happened.
#[derive(Default)]
struct Worst {
    err: f64,
    at: String,
}

impl Worst {
    fn see(&mut self, got: f64, want: f64, at: impl FnOnce() -> String) {
        let e = (got - want).abs();
        if !(e <= self.err) {
            self.err = e;
            self.at = at();
        }
    }
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let values = eval_family_at(&A::sigma(), &A::one(), &int(-1), 20).unwrap();
    let table = build_table(
        &TableSpec::new(TableId::LehmerQ, false),
        &TableConfig::default(),
        &FamilyStore::default(),
    )
    .unwrap();
    let elapsed = t.elapsed();
    let exact = (1..=20).all(|n| values[n] == int(LEHMER_Q[n - 1]));
    let rendered = table.column("q_sigma_at_minus_one").unwrap();
    let printed: Vec<String> = LEHMER_Q.iter().map(|v| v.to_string()).collect();
    let ok = exact && rendered == printed && elapsed < Duration::from_secs(1);
    verdict(ok, format!("Q_n^sigma(-1), n <= 20, exact match {exact}, table cells match {}, {}", rendered == printed, secs(elapsed)))
}

fn criterion_2(extended: bool) -> Verdict {
    let t = Instant::now();
    let rows: Vec<_> = ALPHABETA.iter().filter(|r| r.0 < 200 || extended).collect();
    let ns: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let computed = ratio_table(&A::id(), &ns, &default_width()).unwrap();
    let (mut closed, mut printed, mut ratio) = (Worst::default(), Worst::default(), Worst::default());
    for (row, r) in rows.iter().zip(&computed) {
        let n = row.0;
        let c = (PI / n as f64).cos();
        let (a, b) = (to_f64(&r.alpha_q), to_f64(&r.beta_q));
        closed.see(a, -2.0 - 2.0 * c, || format!("alpha_{n}"));
        closed.see(b, -2.0 + 2.0 * c, || format!("beta_{n}"));
        printed.see(a, row.1, || format!("alpha_{n}"));
        printed.see(b, row.2, || format!("beta_{n}"));
        ratio.see(to_f64(&r.ratio_alpha), row.3, || format!("ratio_alpha_{n}"));
        ratio.see(to_f64(&r.ratio_beta), row.4, || format!("ratio_beta_{n}"));
    }
    let ok = closed.err <= 1e-10 && printed.err <= 5e-5 && ratio.err <= 1e-4;
    verdict(
        ok,
        format!(
            "g = id, n in {:?}: closed form {:.1e} ({}), printed {:.1e} ({}), ratios {:.1e} ({}), {}{}",
            ns,
            closed.err,
            closed.at,
            printed.err,
            printed.at,
            ratio.err,
            ratio.at,
            secs(t.elapsed()),
            if extended { "" } else { "; n = 200 needs --extended" }
        ),
    )
}

fn criterion_3(extended: bool) -> Verdict {
    let t = Instant::now();
    let limit = if extended { 100 } else { 20 };
    let w = default_width();
    let p = compute_p(&A::id(), limit).unwrap();
    let q = compute_q(&A::id(), limit).unwrap();
    let (mut alpha, mut scaled, mut gamma) = (Worst::default(), Worst::default(), Worst::default());
    let cfg = SzegoConfig::default();
    for &(n, at, sa, g) in &SZEGO {
        gamma.see(szego_gamma(n, &cfg).unwrap().gamma_n, g, || format!("gamma_{n}"));
        if n > limit {
            continue;
        }
        let a_p = to_f64(&extremal_zeros(&p, n, &w).unwrap().alpha.unwrap().midpoint());
        let a_q = to_f64(&extremal_zeros(&q, n, &w).unwrap().alpha.unwrap().midpoint());
        alpha.see(a_p, at, || format!("n = {n}"));
        scaled.see(a_q * (n - 1) as f64, sa, || format!("n = {n}"));
    }
    let ok = alpha.err <= 1e-5 && scaled.err <= 1e-5 && gamma.err <= 1e-2;
    verdict(
        ok,
        format!(
            "P^id smallest zeros n <= {limit}: {:.1e} ({}), (n-1) alpha_n {:.1e}, gamma_n (all rows) {:.1e} ({}), {}",
            alpha.err,
            alpha.at,
            scaled.err,
            gamma.err,
            gamma.at,
            secs(t.elapsed())
        ),
    )
}

fn criterion_4(extended: bool) -> Verdict {
    let t = Instant::now();
    let limit = if extended { 257 } else { 47 };
    let rows: Vec<_> = OBSERVATION.iter().filter(|r| r.0 <= limit).collect();
    let mut ns: Vec<usize> = rows.iter().map(|r| r.0).collect();
    ns.push(18);
    let computed = ratio_table(&A::sigma(), &ns, &default_width()).unwrap();
    let mut worst = Worst::default();
    for (row, r) in rows.iter().zip(&computed) {
        let n = row.0;
        worst.see(to_f64(&r.alpha_q), row.1, || format!("alpha_{n}"));
        worst.see(to_f64(&r.beta_q), row.2, || format!("beta_{n}"));
        worst.see(to_f64(&r.ratio_alpha), row.3, || format!("ratio_alpha_{n}"));
        worst.see(to_f64(&r.ratio_beta), row.4, || format!("ratio_beta_{n}"));
    }
    let anomaly = to_f64(&computed.last().unwrap().ratio_beta);
    let ok = worst.err <= 1e-5 && (anomaly - 1.878282).abs() <= 1e-3;
    verdict(
        ok,
        format!(
            "g = sigma, n <= {limit}: max deviation {:.1e} ({}), n = 18 beta ratio {anomaly:.6}, {}{}",
            worst.err,
            worst.at,
            secs(t.elapsed()),
            if extended { "" } else { "; n = 149, 257 need --extended" }
        ),
    )
}

fn criterion_5() -> Verdict {
    let t = Instant::now();
    let q = compute_q(&A::Parity, 100).unwrap();
    let mut worst = Worst::default();
    for &(n, m) in &BETRAEGE {
        let (s, _) = strip_trivial(q.member(n).unwrap());
        let got = analyze(&s, &default_width()).unwrap().max_magnitude().unwrap();
        worst.see(got, m, || format!("n = {n}"));
    }
    verdict(
        worst.err <= 1e-8,
        format!("parity Q_n/z max |zero|, listed n <= 100: max deviation {:.1e} ({}), {}", worst.err, worst.at, secs(t.elapsed())),
    )
}

fn criterion_6() -> Verdict {
    let t = Instant::now();
    let ctx = IdentityContext::new(60).unwrap();
    let mut failing = Vec::new();
    for id in IdentityName::ALL {
        for n in 1..=60 {
            if !ctx.check(id, n).unwrap().holds {
                failing.push(format!("{id}@{n}"));
            }
        }
    }
    let elapsed = t.elapsed();
    verdict(
        failing.is_empty() && elapsed < Duration::from_secs(30),
        format!("5 identities x n <= 60 exact, failing {failing:?}, {}", secs(elapsed)),
    )
}

fn criterion_7() -> Verdict {
    let t = Instant::now();
    let suite = transfer::lemma_suite(200, 30, 2024).unwrap();
    let elapsed = t.elapsed();
    let bad = suite.iter().filter(|s| !s.holds()).count();
    let gs: std::collections::BTreeSet<String> = suite.iter().map(|s| s.g.to_string()).collect();
    let hs: std::collections::BTreeSet<String> = suite.iter().map(|s| s.h.to_string()).collect();
    let max_n = suite.iter().map(|s| s.n).max().unwrap();
    verdict(
        suite.len() == 200 && bad == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{} instances, {} g, {} h, n <= {max_n}, nonzero residuals {bad}, {}",
            suite.len(),
            gs.len(),
            hs.len(),
            secs(elapsed)
        ),
    )
}

fn criterion_8() -> Verdict {
    let t = Instant::now();
    let mut probes = 0;
    let mut violations = Vec::new();
    let mut unsatisfiable = Vec::new();
    for g in [A::sigma(), A::id(), A::Parity, A::Hermite] {
        for n in 1..=20 {
            let res = transfer::check_links(&g, &A::id(), n, 4, 100 + n as u64).unwrap();
            probes += res.probes.len();
            if !res.passed() {
                violations.push(format!("links {g} n={n}"));
            }
            match transfer::check_rechts(&g, &A::id(), n, 4, 200 + n as u64) {
                Ok(res) => {
                    probes += res.probes.len();
                    if !res.passed() {
                        violations.push(format!("rechts {g} n={n}"));
                    }
                }
                Err(Error::HypothesisUnsatisfiable(_)) => {
                    if !unsatisfiable.contains(&g.to_string()) {
                        unsatisfiable.push(g.to_string());
                    }
                }
                Err(e) => violations.push(format!("rechts {g} n={n}: {e}")),
            }
        }
    }
    // the right theorem needs g > 0, which only the Hermite weight violates
    let ok = violations.is_empty() && unsatisfiable == ["hermite"];
    verdict(
        ok,
        format!(
            "g in sigma, id, parity, hermite, h = id, n <= 20: {probes} probes, violations {violations:?}, right-hand hypothesis unmet for {unsatisfiable:?}, {}",
            secs(t.elapsed())
        ),
    )
}

fn criterion_9() -> Verdict {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut boundary = Vec::new();
    for n in 2..=60 {
        let c = transfer::zero_containment(n).unwrap();
        if !c.contained {
            failures.push(format!("containment {n}"));
        }
        if c.touches_boundary {
            boundary.push(n);
        }
    }
    for m in 2..=30 {
        if !transfer::laguerre_zero_bounds(m).unwrap().contained {
            failures.push(format!("laguerre {m}"));
        }
    }
    for n in 2..=30 {
        let want = if n == 2 { Ordering::Equal } else { Ordering::Less };
        if transfer::hermite_bound_check(n).unwrap().ordering != want {
            failures.push(format!("hermite {n}"));
        }
    }
    let mut margins = Vec::new();
    for (g, kappa) in [(A::sigma(), 10.8182), (A::Parity, 5.71)] {
        let fam = compute_p(&g, 30).unwrap();
        let checks = magnitude_bound_check(&fam, 30, kappa).unwrap();
        if let Some(bad) = checks.iter().find(|c| !c.ok) {
            failures.push(format!("magnitude {g} n={}", bad.n));
        }
        let worst = checks.iter().map(|c| c.magnitude / (c.n - 1) as f64).fold(0.0, f64::max);
        margins.push(format!("{g}: max |z|/(n-1) = {worst:.4} vs {kappa}"));
    }
    verdict(
        failures.is_empty(),
        format!(
            "containment n <= 60 (on the boundary at n = {boundary:?}), Laguerre m <= 30, Hermite n <= 30, {}; failures {failures:?}, {}",
            margins.join(", "),
            secs(t.elapsed())
        ),
    )
}

fn criterion_10() -> Verdict {
    let t = Instant::now();
    let sums = transfer::lehmer_sums(50, &int(-1)).unwrap();
    let zero_sums: Vec<usize> = (1..=50).filter(|&n| sums[n - 1] == int(0)).collect();
    let tau = classical::tau_values(2000);
    let zero_tau = tau.iter().position(|v| v == &0.into()).map(|i| i + 1);
    let eta = classical::eta_power_coeffs(24, 20);
    let shifted = (0..=20).all(|n| eta[n] == Rational::from_integer(tau[n].clone()));
    let anchors = tau[1] == (-24).into() && tau[2] == 252.into();
    let ok = zero_sums.is_empty() && zero_tau.is_none() && shifted && anchors;
    verdict(
        ok,
        format!(
            "sum(n, -1) = 0 at {zero_sums:?} for n <= 50; first zero tau(n), n <= 2000: {zero_tau:?}; a_n(24) = tau(n+1) n <= 20: {shifted}; tau(2), tau(3) = {}, {}; {}",
            tau[1],
            tau[2],
            secs(t.elapsed())
        ),
    )
}

fn criterion_11() -> Verdict {
    let t = Instant::now();
    let alpha = rat(3, 2);
    let g = A::binomial(alpha.clone()).unwrap();
    let w = Rational::new(1.into(), 10_000_000_000i64.into());
    let q = compute_family(&g, &A::one(), 3).unwrap();
    let q_real = analyze(&q.stripped(3).unwrap(), &w).unwrap().real.len();
    let p = compute_family(&g, &A::id(), 10).unwrap();
    let p_real = analyze(&p.stripped(3).unwrap(), &w).unwrap().real;
    let targets = [rat(-7, 2), rat(-5, 2)];
    let located = p_real.len() == 2
        && p_real
            .iter()
            .zip(&targets)
            .all(|(iv, x)| iv.contains(x) && iv.width() <= w);
    let closed = (0..=10).all(|n| binomial_closed_form(&alpha, n) == p.members()[n]);
    verdict(
        q_real == 0 && located && closed,
        format!(
            "alpha = 3/2: real zeros of Q_3/z {q_real}, of P_3/z {} at -7/2, -5/2 {located}, closed form = recursion n <= 10 {closed}, {}",
            p_real.len(),
            secs(t.elapsed())
        ),
    )
}

fn criterion_12() -> Verdict {
    let t = Instant::now();
    let mut differing = Vec::new();
    for id in TableId::ALL {
        let spec = TableSpec::new(id, false);
        let run = || {
            let table = build_table(&spec, &TableConfig::default(), &FamilyStore::default()).unwrap();
            (table.to_csv(), table.to_json())
        };
        if run() != run() {
            differing.push(id.as_str());
        }
    }
    verdict(
        differing.is_empty(),
        format!("8 tables, default rows, built twice (CSV and JSON), differing {differing:?}, {}", secs(t.elapsed())),
    )
}

fn main() -> ExitCode {
    let extended = std::env::args().any(|a| a == "--extended")
        || std::env::var("DARCAIS_EXTENDED").is_ok_and(|v| v == "1");
    // `cargo test -- --list` and filtered runs must not trigger the full suite
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let checks: Vec<(u32, Box<dyn Fn() -> Verdict>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(move || criterion_2(extended))),
        (3, Box::new(move || criterion_3(extended))),
        (4, Box::new(move || criterion_4(extended))),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
        (11, Box::new(criterion_11)),
        (12, Box::new(criterion_12)),
    ];
    println!("acceptance ({})", if extended { "extended" } else { "default rows" });
    let mut failed = 0;
    for (k, check) in checks {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("{} criterion {k:>2}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
