//! One line per acceptance criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use affine_hecke::involutions::check_reduced_words;
use affine_hecke::koszul::{check_diagonal, random_complex};
use affine_hecke::report::Report;
use affine_hecke::root_data::RootDatum;
use affine_hecke::suite::{run_suite, Suite, SuiteOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"];
const SEED: u64 = 20;

fn datum(t: &str) -> Arc<RootDatum> {
    Arc::new(RootDatum::from_type(t).expect("listed type"))
}

fn selected(names: Option<&[&str]>, name: &str) -> bool {
    names.is_none_or(|n| n.contains(&name))
}

/// First failing check, as `label: name: witness`.
fn first_failure<L: AsRef<str>>(reports: &[(L, Report)], names: Option<&[&str]>) -> Option<String> {
    reports.iter().find_map(|(label, r)| {
        r.checks
            .iter()
            .find(|c| selected(names, &c.name) && !c.pass)
            .map(|c| format!("{}: {}: {}", label.as_ref(), c.name, c.witness.clone().unwrap_or_default()))
    })
}

fn count<L>(reports: &[(L, Report)], names: Option<&[&str]>) -> usize {
    reports
        .iter()
        .flat_map(|(_, r)| r.checks.iter())
        .filter(|c| selected(names, &c.name))
        .map(|c| c.count)
        .sum()
}

fn suite_reports(suite: Suite, samples: usize) -> (Vec<(&'static str, Report)>, Duration) {
    let start = Instant::now();
    let opts = SuiteOptions { samples: Some(samples), seed: SEED, ..Default::default() };
    let reports = TYPES
        .iter()
        .map(|t| (*t, run_suite(suite, Some(&datum(t)), &opts).expect("suite runs")))
        .collect();
    (reports, start.elapsed())
}

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn line(&mut self, n: u32, title: &str, failure: Option<String>, detail: String) {
        match failure {
            None => println!("criterion {n} [{title}]: PASS ({detail})"),
            Some(w) => {
                self.failures += 1;
                println!("criterion {n} [{title}]: FAIL ({detail}) {w}");
            }
        }
    }
}

fn main() {
    let mut out = Outcome { failures: 0 };

    let (rel, took) = suite_reports(Suite::Relations, 50);
    let mut fail = first_failure(&rel, None);
    if took >= Duration::from_secs(120) {
        fail.get_or_insert(format!("took {took:?}"));
    }
    out.line(1, "relations", fail, format!("{} identities over 8 types in {took:.2?}", count(&rel, None)));

    let (thm, _) = suite_reports(Suite::Theorem, 50);
    out.line(2, "theorem", first_failure(&thm, None), format!("{} identities", count(&thm, None)));

    let (inv, _) = suite_reports(Suite::Involution, 100);
    let hom = ["kim: f(ab) = f(a) f(b)", "kim: f(f(a)) = a"];
    out.line(3, "homomorphy and involutivity", first_failure(&inv, Some(&hom)), format!("{} identities", count(&inv, Some(&hom))));
    let semi = ["kim: f(p a) = p' f(a)"];
    out.line(4, "semilinearity", first_failure(&inv, Some(&semi)), format!("{} identities", count(&inv, Some(&semi))));

    let (kc, _) = suite_reports(Suite::Kclass, 50);
    out.line(5, "dictionary replay", first_failure(&kc, None), format!("{} identities", count(&kc, None)));

    let start = Instant::now();
    let mut diag = Vec::new();
    for dim_v in 1..=3 {
        for dim_f in 0..=dim_v {
            let o = check_diagonal(dim_v, dim_f, 6, 0).expect("valid configuration");
            diag.push((format!("dimV={dim_v} dimF={dim_f}"), o.report));
        }
    }
    let took = start.elapsed();
    let mut fail = first_failure(&diag, None);
    if took >= Duration::from_secs(60) {
        fail.get_or_insert(format!("took {took:?}"));
    }
    out.line(6, "Koszul desk-scale", fail, format!("{} configurations, {} checks in {took:.2?}", diag.len(), count(&diag, None)));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fail = None;
    for k in 0..100 {
        let m = random_complex(&mut rng, 3);
        let (a, b) = (m.euler_class(), m.cohomology().module.euler_class());
        if a != b && fail.is_none() {
            fail = Some(format!("sample {k}: {a} vs {b}"));
        }
    }
    out.line(7, "Euler characteristic", fail, "100 random complexes".into());

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let rw: Vec<(&str, Report)> = ["A2", "B2"].iter().map(|t| (*t, check_reduced_words(&datum(t), &mut rng))).collect();
    let mut fail = first_failure(&rw, None);
    let sizes: Vec<usize> = rw.iter().map(|(_, r)| r.checks[0].count).collect();
    if sizes != [6, 8] {
        fail.get_or_insert(format!("enumerated {sizes:?} elements"));
    }
    out.line(8, "reduced-word independence", fail, format!("|W(A2)| = {}, |W(B2)| = {}", sizes[0], sizes[1]));

    if out.failures > 0 {
        println!("{} criteria failed", out.failures);
        std::process::exit(1);
    }
}
