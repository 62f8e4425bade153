//! Destabilizing subspaces of multi-filtered spaces: exhaustive enumeration, and a search over
//! the sublattice generated by the filtration steps under sum and intersection.

use super::{MultiFiltSpace, SubspaceFp};
pub use crate::engine::Certification;
use crate::engine::HostError;
use crate::rational::Q;
use crate::subobject::SubobjectLattice;
use std::cmp::Ordering;
use std::collections::BTreeSet;

pub const DEFAULT_BUDGET: u128 = 1_000_000;
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DestabilizerMethod {
    BruteForce,
    /// Closure search, checked against brute force when the enumeration fits the budget.
    #[default]
    Closure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DestabilizerConfig {
    pub method: DestabilizerMethod,
    /// Ceiling on the number of subspaces brute force may enumerate.
    pub budget: u128,
    pub closure_cap: usize,
}

impl Default for DestabilizerConfig {
    fn default() -> Self {
        DestabilizerConfig { method: DestabilizerMethod::default(), budget: DEFAULT_BUDGET, closure_cap: DEFAULT_CLOSURE_CAP }
    }
}

struct Best {
    sub: SubspaceFp,
    degree: Q,
    rank: usize,
    tied: bool,
}

/// Keeps the maximum slope, then maximum rank; remembers whether a distinct candidate ties.
fn select_best<'a>(x: &MultiFiltSpace, candidates: impl IntoIterator<Item = &'a SubspaceFp>) -> Result<Option<SubspaceFp>, HostError> {
    let mut best: Option<Best> = None;
    for u in candidates {
        let rank = u.dim();
        if rank == 0 {
            continue;
        }
        let degree = x.degree_of(u);
        let better = match &best {
            None => Ordering::Greater,
            Some(b) => {
                // degree / rank vs b.degree / b.rank
                let lhs = &degree * Q::from_integer(b.rank.into());
                let rhs = &b.degree * Q::from_integer(rank.into());
                lhs.cmp(&rhs).then(rank.cmp(&b.rank))
            }
        };
        match better {
            Ordering::Greater => best = Some(Best { sub: u.clone(), degree, rank, tied: false }),
            Ordering::Equal => {
                if let Some(b) = best.as_mut() {
                    if b.sub != *u {
                        b.tied = true;
                    }
                }
            }
            Ordering::Less => {}
        }
    }
    match best {
        None => Ok(None),
        Some(b) if b.tied => Err(HostError::Tie {
            slope: (b.degree / Q::from_integer(b.rank.into())).to_string(),
            rank: b.rank,
        }),
        Some(b) => Ok(Some(b.sub)),
    }
}

/// Enumerates every subspace and returns the maximal-slope, maximal-rank one.
pub fn destabilizer_bruteforce(x: &MultiFiltSpace, budget: u128) -> Result<SubspaceFp, HostError> {
    let sp = x.space();
    let needed = sp.subspace_count();
    if needed > budget {
        return Err(HostError::BudgetExceeded { needed, budget });
    }
    if sp.dim() == 0 {
        return Ok(sp.zero());
    }
    let all = sp.all_subspaces();
    Ok(select_best(x, &all)?.expect("a non-zero space has a non-zero subspace"))
}

/// The set of subspaces generated by `0`, the full space and every filtration step under sum
/// and intersection.
pub fn closure_lattice(x: &MultiFiltSpace, cap: usize) -> Result<Vec<SubspaceFp>, HostError> {
    let sp = x.space();
    let mut set: BTreeSet<SubspaceFp> = BTreeSet::new();
    set.insert(sp.zero());
    set.insert(sp.full());
    for f in x.filtrations() {
        for s in f.steps() {
            set.insert(s.value.clone());
        }
    }
    if set.len() > cap {
        return Err(HostError::GuardExceeded { what: "closure size", value: set.len(), limit: cap });
    }
    let mut frontier: Vec<SubspaceFp> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<SubspaceFp> = set.iter().cloned().collect();
        let mut fresh = Vec::new();
        for a in &frontier {
            for b in &current {
                for c in [sp.sum(a, b), sp.intersect(a, b)] {
                    if !set.contains(&c) {
                        set.insert(c.clone());
                        fresh.push(c);
                        if set.len() > cap {
                            return Err(HostError::GuardExceeded { what: "closure size", value: set.len(), limit: cap });
                        }
                    }
                }
            }
        }
        frontier = fresh;
    }
    Ok(set.into_iter().collect())
}

/// Best subspace within the closure lattice, without verification.
pub fn closure_candidate(x: &MultiFiltSpace, cap: usize) -> Result<SubspaceFp, HostError> {
    if x.dim() == 0 {
        return Ok(x.space().zero());
    }
    let lattice = closure_lattice(x, cap)?;
    Ok(select_best(x, &lattice)?.expect("closure contains the full space"))
}

/// Closure search with verification against exhaustive enumeration when affordable.
pub fn destabilizer_closure(x: &MultiFiltSpace, config: &DestabilizerConfig) -> Result<(SubspaceFp, Certification), HostError> {
    let feasible = x.space().subspace_count() <= config.budget;
    let candidate = match closure_candidate(x, config.closure_cap) {
        Ok(c) => c,
        Err(HostError::GuardExceeded { .. }) if feasible => {
            return Ok((destabilizer_bruteforce(x, config.budget)?, Certification::Exhaustive));
        }
        Err(e) => return Err(e),
    };
    if x.filtrations().len() <= 1 {
        // a single filtration is its own HN filtration: the first step destabilizes
        return Ok((candidate, Certification::Proved));
    }
    if !feasible {
        return Ok((candidate, Certification::Heuristic));
    }
    let exact = destabilizer_bruteforce(x, config.budget)?;
    if exact == candidate {
        Ok((candidate, Certification::Verified))
    } else {
        Ok((exact, Certification::Exhaustive))
    }
}

pub fn destabilize(x: &MultiFiltSpace, config: &DestabilizerConfig) -> Result<(SubspaceFp, Certification), HostError> {
    match config.method {
        DestabilizerMethod::BruteForce => Ok((destabilizer_bruteforce(x, config.budget)?, Certification::Exhaustive)),
        DestabilizerMethod::Closure => destabilizer_closure(x, config),
    }
}
