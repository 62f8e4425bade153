//! `--random "<kind>:<key>=<value>,..."` instance generators for the oracle command.

use crate::doc::Object;
use crate::CliError;
use hn_core::fp::random::random_multifilt;
use hn_core::fp::FpSpace;
use hn_core::lattice::random::{random_lattice, random_scale};
use hn_core::lattice::EuclideanLattice;
use hn_core::suites::{trial_rng, trial_seed};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomKind {
    MultifiltFp { p: u64, dim: usize, n: usize },
    Lattice { rank: usize },
    /// `diag(q, 1/q)` with a random positive rational `q`.
    LatticeDiag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub kind: RandomKind,
    pub count: usize,
    pub seed: u64,
}

fn bad(msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("random spec: {msg}"))
}

impl RandomSpec {
    pub fn parse(s: &str) -> Result<RandomSpec, CliError> {
        let (kind, params) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = BTreeMap::new();
        for part in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let v: u64 = v.trim().parse().map_err(|_| bad(format!("{k} must be a non-negative integer")))?;
            if kv.insert(k.trim().to_string(), v).is_some() {
                return Err(bad(format!("{k} given twice")));
            }
        }
        let mut take = |k: &str, default: u64| kv.remove(k).unwrap_or(default);
        let count = take("count", 100) as usize;
        let seed = take("seed", 0);
        let kind = match kind.trim() {
            "multifilt_fp" => {
                let p = take("p", 2);
                FpSpace::new(p, 0).map_err(bad)?;
                RandomKind::MultifiltFp { p, dim: take("dim", 3) as usize, n: take("n", 2) as usize }
            }
            "lattice" => RandomKind::Lattice { rank: take("rank", 2) as usize },
            "lattice_diag" => RandomKind::LatticeDiag,
            other => return Err(bad(format!("unknown kind {other:?}"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(bad(format!("unknown parameter {k:?}")));
        }
        Ok(RandomSpec { kind, count, seed })
    }

    /// Instance `i` is drawn from the generator seeded with `seed + i`.
    pub fn instances(&self) -> impl Iterator<Item = Object> + '_ {
        (0..self.count).map(move |i| {
            let mut rng = trial_rng(trial_seed(self.seed, i));
            match self.kind {
                RandomKind::MultifiltFp { p, dim, n } => Object::Fp(random_multifilt(&mut rng, p, dim, n)),
                RandomKind::Lattice { rank } => Object::Lattice(random_lattice(&mut rng, rank)),
                RandomKind::LatticeDiag => {
                    let q = random_scale(&mut rng);
                    Object::Lattice(EuclideanLattice::diagonal(&[q.clone(), q.recip()]).expect("positive entries"))
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let s = RandomSpec::parse("multifilt_fp:p=3,dim=2,n=3,count=7,seed=9").unwrap();
        assert_eq!(s, RandomSpec { kind: RandomKind::MultifiltFp { p: 3, dim: 2, n: 3 }, count: 7, seed: 9 });
        assert_eq!(s.instances().count(), 7);
        assert_eq!(RandomSpec::parse("lattice_diag").unwrap().count, 100);
        for bad in ["nope:count=1", "lattice:rank=x", "lattice:size=2", "multifilt_fp:p=4", "lattice:rank"] {
            assert!(RandomSpec::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn deterministic() {
        let s = RandomSpec::parse("lattice:rank=3,count=5,seed=2").unwrap();
        assert_eq!(s.instances().collect::<Vec<_>>(), s.instances().collect::<Vec<_>>());
    }
}
