//! Search for a variable ordering under which a term set is complete.
//!
//! The Bar Code is drawn from the maximal variable down. After each placed
//! variable the candidate involutive divisors of every non-multiplicative
//! pair are recorded, and pairs whose candidates all die abort the branch.
//! The search backtracks one level at a time and tries candidates in
//! ascending variable index, so results are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::janet::{is_complete_definition, JanetError};
use crate::term::{degree_profile, Term, TermError, TermSet, Var, VarSet, VariableOrdering};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("term set is empty")]
    Empty,
    #[error("{n} variables exceed the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Janet(#[from] JanetError),
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Debug, Clone)]
struct Level {
    var: Var,
    /// Bars left to right, each a list of term indices in column order.
    bars: Vec<Vec<usize>>,
    starred: Vec<bool>,
    /// `bar_of[term index]` = bar holding that term.
    bar_of: Vec<usize>,
}

/// A Bar Code drawn for the placed variables only, maximal variable first.
#[derive(Debug, Clone)]
pub struct PartialBarCode {
    terms: Vec<Term>,
    levels: Vec<Level>,
    root: Vec<Vec<usize>>,
}

impl PartialBarCode {
    /// Nothing placed yet: one group holding every term, in lex order under
    /// the identity ordering (so a divisor always precedes its multiples).
    pub fn new(set: &TermSet) -> Self {
        let terms = set.sorted(&VariableOrdering::identity(set.n()));
        let root = vec![(0..terms.len()).collect()];
        PartialBarCode {
            terms,
            levels: Vec::new(),
            root,
        }
    }

    pub fn n(&self) -> usize {
        self.terms.first().map_or(0, Term::n)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Placed variables, maximal first.
    pub fn chosen(&self) -> Vec<Var> {
        self.levels.iter().map(|l| l.var).collect()
    }

    pub fn remaining(&self) -> VarSet {
        let chosen: VarSet = self.chosen().into_iter().collect();
        (0..self.n())
            .map(Var)
            .filter(|v| !chosen.contains(v))
            .collect()
    }

    fn current(&self) -> &[Vec<usize>] {
        self.levels.last().map_or(&self.root, |l| &l.bars)
    }

    /// Bars of the last placed variable as term groups, left to right.
    pub fn groups(&self) -> Vec<Vec<Term>> {
        self.current()
            .iter()
            .map(|g| g.iter().map(|&i| self.terms[i].clone()).collect())
            .collect()
    }

    /// Whether every bar of the last placed variable holds a single term.
    pub fn is_unitary(&self) -> bool {
        self.current().iter().all(|g| g.len() == 1)
    }

    /// Draws the next row: each current bar is split by `var`-degree,
    /// stably, so ties keep their column order.
    pub fn place(&self, var: Var) -> PartialBarCode {
        let mut bars = Vec::new();
        let mut starred = Vec::new();
        for group in self.current() {
            let mut sorted = group.clone();
            sorted.sort_by_key(|&i| self.terms[i].exponent(var));
            let runs: Vec<Vec<usize>> = sorted
                .chunk_by(|&a, &b| self.terms[a].exponent(var) == self.terms[b].exponent(var))
                .map(<[usize]>::to_vec)
                .collect();
            let k = runs.len();
            for (j, run) in runs.into_iter().enumerate() {
                bars.push(run);
                starred.push(j + 1 == k);
            }
        }
        let mut bar_of = vec![0; self.terms.len()];
        for (b, bar) in bars.iter().enumerate() {
            for &i in bar {
                bar_of[i] = b;
            }
        }
        let mut next = self.clone();
        next.levels.push(Level {
            var,
            bars,
            starred,
            bar_of,
        });
        next
    }

    fn index_of(&self, t: &Term) -> Option<usize> {
        self.terms.iter().position(|s| s == t)
    }

    /// Whether `var` is placed and `t`'s bar in its row is starred.
    pub fn is_starred(&self, t: &Term, var: Var) -> Option<bool> {
        let i = self.index_of(t)?;
        let level = self.levels.iter().find(|l| l.var == var)?;
        Some(level.starred[level.bar_of[i]])
    }
}

/// A candidate involutive divisor `divisor` of `t * x`, with `alpha` the
/// support of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate {
    pub divisor: Term,
    pub alpha: VarSet,
}

/// Candidate divisors for each non-multiplicative pair `(t, x)` seen so far.
pub type CandidateMap = BTreeMap<(Term, Var), Vec<Candidate>>;

/// Why a freshly placed variable was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FriendsFailure {
    /// `var * term` has no candidate divisor over the next bar.
    NoCandidates { term: Term, var: Var },
    /// Every candidate recorded for `(term, var)` needs `placed` to be
    /// multiplicative where it is not.
    Pruned { term: Term, var: Var, placed: Var },
}

impl fmt::Display for FriendsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FriendsFailure::NoCandidates { term, var } => {
                write!(f, "U({term}, {var}) is empty")
            }
            FriendsFailure::Pruned { term, var, placed } => {
                write!(f, "U({term}, {var}) emptied after placing {placed}")
            }
        }
    }
}

/// Drops from `vars` every variable whose degrees over `group` skip a value
/// below their maximum; such a variable cannot be the next one placed.
pub fn candidate_var<'a, I>(group: I, vars: &VarSet) -> VarSet
where
    I: IntoIterator<Item = &'a Term>,
    I::IntoIter: Clone,
{
    let group = group.into_iter();
    vars.iter()
        .copied()
        .filter(|&v| {
            let d = degree_profile(group.clone(), v);
            d.iter().zip(d.iter().skip(1)).all(|(a, b)| b - a == 1)
        })
        .collect()
}

/// Variables that survive [`candidate_var`] in every group.
pub fn candidates(groups: &[Vec<Term>], vars: &VarSet) -> VarSet {
    groups
        .iter()
        .fold(vars.clone(), |acc, g| candidate_var(g, &acc))
}

/// Records candidates for the variable `pcb` placed last and prunes the
/// candidates of earlier levels. `prior` is the map from the level above.
pub fn friends(pcb: &PartialBarCode, prior: &CandidateMap) -> Result<CandidateMap, FriendsFailure> {
    let level = pcb.levels.last().expect("a variable has been placed");
    let x = level.var;
    let mut map = CandidateMap::new();
    for (b, bar) in level.bars.iter().enumerate() {
        if level.starred[b] {
            continue;
        }
        let next = &level.bars[b + 1];
        for &i in bar {
            let t = &pcb.terms[i];
            let w = t.mul_var(x);
            let found: Vec<Candidate> = next
                .iter()
                .filter_map(|&k| {
                    let u = &pcb.terms[k];
                    w.checked_div(u).map(|q| Candidate {
                        divisor: u.clone(),
                        alpha: q.support(),
                    })
                })
                .collect();
            if found.is_empty() {
                return Err(FriendsFailure::NoCandidates {
                    term: t.clone(),
                    var: x,
                });
            }
            map.insert((t.clone(), x), found);
        }
    }
    for ((t, y), cands) in prior {
        let kept: Vec<Candidate> = cands
            .iter()
            .filter(|c| !c.alpha.contains(&x) || pcb.is_starred(&c.divisor, x).unwrap_or(false))
            .cloned()
            .collect();
        if kept.is_empty() {
            return Err(FriendsFailure::Pruned {
                term: t.clone(),
                var: *y,
                placed: x,
            });
        }
        map.insert((t.clone(), *y), kept);
    }
    Ok(map)
}

/// One step of the search, in the order it happened.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum SearchEvent {
    /// Candidates for the next variable below the placed `prefix`.
    Candidates {
        prefix: Vec<Var>,
        vars: Vec<Var>,
    },
    Place {
        var: Var,
    },
    Reject {
        var: Var,
        reason: FriendsFailure,
    },
    /// Every bar is a single term after placing `prefix` (maximal first).
    Unitary {
        prefix: Vec<Var>,
    },
    Revoke {
        var: Var,
    },
    Found {
        ordering: VariableOrdering,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub ordering: Option<VariableOrdering>,
    pub trace: Vec<SearchEvent>,
}

/// Extends `pcb` to a full ordering. Returns the variables still to place,
/// maximal first, or `None` when no extension works.
pub fn common(
    pcb: &PartialBarCode,
    map: &CandidateMap,
    trace: &mut Vec<SearchEvent>,
) -> Option<Vec<Var>> {
    let remaining = pcb.remaining();
    if remaining.is_empty() {
        return Some(Vec::new());
    }
    if pcb.is_unitary() {
        trace.push(SearchEvent::Unitary {
            prefix: pcb.chosen(),
        });
        return Some(remaining.into_iter().rev().collect());
    }
    let ys = candidates(&pcb.groups(), &remaining);
    trace.push(SearchEvent::Candidates {
        prefix: pcb.chosen(),
        vars: ys.iter().copied().collect(),
    });
    for x in ys {
        let next = pcb.place(x);
        match friends(&next, map) {
            Err(reason) => trace.push(SearchEvent::Reject { var: x, reason }),
            Ok(next_map) => {
                trace.push(SearchEvent::Place { var: x });
                if let Some(mut rest) = common(&next, &next_map, trace) {
                    rest.insert(0, x);
                    return Some(rest);
                }
                trace.push(SearchEvent::Revoke { var: x });
            }
        }
    }
    None
}

/// Searches for an ordering making `set` complete. A returned ordering has
/// been re-checked against the definition.
pub fn find_ordering(set: &TermSet) -> Result<SearchResult, SearchError> {
    if set.is_empty() {
        return Err(SearchError::Empty);
    }
    let mut trace = Vec::new();
    let pcb = PartialBarCode::new(set);
    let Some(max_first) = common(&pcb, &CandidateMap::new(), &mut trace) else {
        return Ok(SearchResult {
            ordering: None,
            trace,
        });
    };
    let ordering = VariableOrdering::from_max_to_min(max_first)?;
    if !is_complete_definition(set, &ordering)?.complete {
        return Err(SearchError::Internal(format!(
            "search returned {ordering}, under which the set is not complete"
        )));
    }
    trace.push(SearchEvent::Found {
        ordering: ordering.clone(),
    });
    Ok(SearchResult {
        ordering: Some(ordering),
        trace,
    })
}

/// Every ordering under which `set` is complete, by checking all `n!`.
pub fn brute_force_orderings(
    set: &TermSet,
    cap: usize,
) -> Result<BTreeSet<VariableOrdering>, SearchError> {
    if set.is_empty() {
        return Err(SearchError::Empty);
    }
    let n = set.n();
    if n > cap {
        return Err(SearchError::CapExceeded { n, cap });
    }
    let all: Vec<VariableOrdering> = VariableOrdering::all(n).collect();
    let complete: Result<Vec<Option<VariableOrdering>>, JanetError> = all
        .into_par_iter()
        .map(|ord| Ok(is_complete_definition(set, &ord)?.complete.then_some(ord)))
        .collect();
    Ok(complete?.into_iter().flatten().collect())
}
