//! Seeded property suites: the structure axioms, the slope inequalities, functoriality of HN
//! filtrations, and oracle cross-checks.
//!
//! Trial `t` of a run with seed `s` draws everything from a generator seeded with `s + t`, so a
//! counterexample replays from its recorded seed alone.

pub mod axioms;
pub mod functoriality;
pub mod gen;
pub mod oracle;
pub mod slopes;

use crate::engine::checks::CheckReport;
use crate::fp::MultiFiltSpace;
use crate::lattice::EuclideanLattice;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Display;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, trials: 100 }
    }
}

/// The object a failing check was run on, enough to replay it.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Fp(MultiFiltSpace),
    Lattice(EuclideanLattice),
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub check: &'static str,
    pub trial: usize,
    /// Seed of the trial's own generator.
    pub seed: u64,
    pub message: String,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub assertions: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> SuiteReport {
        SuiteReport { suite: suite.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.trials = self.trials.max(other.trials);
        self.assertions += other.assertions;
        self.counterexamples.extend(other.counterexamples);
    }
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add(trial as u64)
}

pub fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Records the checks of one trial into a report.
pub struct Trial<'a> {
    report: &'a mut SuiteReport,
    trial: usize,
    seed: u64,
}

impl Trial<'_> {
    pub fn check(&mut self, check: &'static str, cond: bool, message: impl FnOnce() -> String, witness: impl FnOnce() -> Option<Witness>) {
        self.report.assertions += 1;
        if !cond {
            self.fail(check, message(), witness());
        }
    }

    pub fn absorb(&mut self, check: &'static str, rep: CheckReport, witness: impl Fn() -> Option<Witness>) {
        self.report.assertions += rep.assertions;
        for v in rep.violations {
            self.fail(check, v, witness());
        }
    }

    /// An unexpected error while running a check counts as a counterexample.
    pub fn error(&mut self, check: &'static str, e: impl Display, witness: Option<Witness>) {
        self.report.assertions += 1;
        self.fail(check, format!("error: {e}"), witness);
    }

    fn fail(&mut self, check: &'static str, message: String, witness: Option<Witness>) {
        self.report.counterexamples.push(Counterexample { check, trial: self.trial, seed: self.seed, message, witness });
    }
}

/// Runs `body` once per trial with that trial's generator.
pub fn run_trials(name: &str, cfg: &SuiteConfig, mut body: impl FnMut(&mut ChaCha8Rng, &mut Trial)) -> SuiteReport {
    let mut report = SuiteReport::new(name);
    report.trials = cfg.trials;
    for trial in 0..cfg.trials {
        let seed = trial_seed(cfg.seed, trial);
        let mut rng = trial_rng(seed);
        let mut t = Trial { report: &mut report, trial, seed };
        body(&mut rng, &mut t);
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Slopes,
    Functoriality,
    Oracle,
    /// Axioms, slopes and functoriality.
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "slopes" => Ok(Suite::Slopes),
            "functoriality" => Ok(Suite::Functoriality),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

impl Suite {
    pub fn run(&self, cfg: &SuiteConfig) -> Vec<SuiteReport> {
        match self {
            Suite::Axioms => vec![axioms::run(cfg)],
            Suite::Slopes => vec![slopes::run(cfg)],
            Suite::Functoriality => vec![functoriality::run(cfg)],
            Suite::Oracle => vec![oracle::run(cfg, &oracle::OracleConfig::default())],
            Suite::All => vec![axioms::run(cfg), slopes::run(cfg), functoriality::run(cfg)],
        }
    }
}
