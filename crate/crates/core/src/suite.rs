//! Named verification suites with seeded, reproducible sampling.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hecke::verify_relations;
use crate::involutions::{self, InvolutionKind};
use crate::koszul::{self, check_diagonal};
use crate::ktheory::replay;
use crate::report::{Report, Tally};
use crate::root_data::{RootDatum, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Involution,
    Theorem,
    Kclass,
    Koszul,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Relations, Suite::Involution, Suite::Theorem, Suite::Kclass, Suite::Koszul];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Involution => "involution",
            Suite::Theorem => "theorem",
            Suite::Kclass => "kclass",
            Suite::Koszul => "koszul",
        }
    }

    /// Whether the suite runs against a root datum.
    pub fn needs_type(self) -> bool {
        self != Suite::Koszul
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Involution | Suite::Koszul => 100,
            _ => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub samples: Option<usize>,
    pub seed: u64,
    /// Internal-degree cutoff for the Koszul suite.
    pub cutoff: i32,
    /// Largest `dim V` exercised by the Koszul suite.
    pub max_dim_v: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { samples: None, seed: 0, cutoff: 6, max_dim_v: 3 }
    }
}

/// `n` weights with coordinates in `[-3, 3]`.
pub fn random_weights<R: Rng>(rank: usize, n: usize, rng: &mut R) -> Vec<Weight> {
    (0..n).map(|_| Weight((0..rank).map(|_| rng.gen_range(-3..=3)).collect())).collect()
}

/// Runs `suite`; `datum` is required unless the suite is `koszul`.
pub fn run_suite(suite: Suite, datum: Option<&Arc<RootDatum>>, opts: &SuiteOptions) -> Result<Report> {
    let samples = opts.samples.unwrap_or(suite.default_samples());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let need = || datum.ok_or_else(|| Error::InvalidOption(format!("suite `{suite}` needs --type")));
    Ok(match suite {
        Suite::Relations => {
            let d = need()?;
            verify_relations(d, &random_weights(d.rank(), samples, &mut rng))
        }
        Suite::Theorem => {
            let d = need()?;
            involutions::check_theorem(d, &random_weights(d.rank(), samples, &mut rng))
        }
        Suite::Kclass => {
            let d = need()?;
            replay(d, &random_weights(d.rank(), samples, &mut rng))
        }
        Suite::Involution => {
            let d = need()?;
            involution_suite(d, samples, &mut rng)
        }
        Suite::Koszul => koszul_suite(opts, samples, &mut rng)?,
    })
}

fn involution_suite(d: &Arc<RootDatum>, samples: usize, rng: &mut ChaCha8Rng) -> Report {
    let pairs: Vec<_> = (0..samples)
        .map(|_| (involutions::random_element(d, rng), involutions::random_element(d, rng)))
        .collect();
    let scalars: Vec<_> = (0..samples).map(|_| involutions::random_scalar(rng)).collect();
    let mut report = Report::new("involution");
    for kind in InvolutionKind::ALL {
        report.extend_prefixed("", involutions::check_homomorphism(kind, &pairs, &scalars));
    }
    let elements: Vec<_> = pairs.iter().map(|p| p.0.clone()).collect();
    report.extend_prefixed("", involutions::check_involutive(&elements));
    report.extend_prefixed("", involutions::check_reduced_words(d, rng));
    report
}

fn koszul_suite(opts: &SuiteOptions, samples: usize, rng: &mut ChaCha8Rng) -> Result<Report> {
    let mut report = Report::new("koszul");
    for dim_v in 1..=opts.max_dim_v {
        for dim_f in 0..=dim_v {
            let out = check_diagonal(dim_v, dim_f, opts.cutoff, 0)?;
            report.extend_prefixed(&format!("dimV={dim_v} dimF={dim_f}: "), out.report);
        }
    }
    let mut t = Tally::new("Euler class is invariant under cohomology");
    for k in 0..samples {
        let m = koszul::random_complex(rng, 3);
        let (a, b) = (m.euler_class(), m.cohomology().module.euler_class());
        t.record(a == b, || format!("sample {k}: {a} vs {b}"));
    }
    report.push(t.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err(), Error::UnknownSuite("nope".into()));
    }

    #[test]
    fn deterministic_under_seed() {
        let d = Arc::new(RootDatum::from_type("A2").unwrap());
        let opts = SuiteOptions { samples: Some(10), seed: 7, ..Default::default() };
        let a = run_suite(Suite::Involution, Some(&d), &opts).unwrap();
        let b = run_suite(Suite::Involution, Some(&d), &opts).unwrap();
        assert!(a.all_pass());
        assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
    }

    #[test]
    fn koszul_needs_no_type() {
        let opts = SuiteOptions { samples: Some(5), max_dim_v: 1, cutoff: 4, ..Default::default() };
        assert!(run_suite(Suite::Koszul, None, &opts).unwrap().all_pass());
        assert!(run_suite(Suite::Theorem, None, &opts).is_err());
    }
}
