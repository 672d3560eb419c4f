//! Janet multiplicative variables, cones and completeness.
//!
//! Three independent completeness tests live here: a direct scan following
//! the definition, the Bar Code criterion (divisors are looked up only over
//! the next bar), and the recursion on the maximal variable. They must agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barcode::{build_barcode, star_marking, BarCodeError};
use crate::term::{Term, TermError, TermSet, Var, VarSet, VariableOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JanetError {
    #[error("term set is empty")]
    Empty,
    #[error("{0} is not in the term set")]
    NotInSet(Term),
    #[error("Janet cones overlap: {w} lies in the cones of both {first} and {second}")]
    ConeOverlap { w: Term, first: Term, second: Term },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    BarCode(#[from] BarCodeError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// Multiplicative and non-multiplicative variables of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicative {
    pub term: Term,
    pub mult: VarSet,
    pub nonmult: VarSet,
}

/// Janet decomposition of a term set; entries are in increasing lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JanetDecomposition {
    pub ordering: VariableOrdering,
    pub entries: Vec<Multiplicative>,
}

impl JanetDecomposition {
    pub fn get(&self, t: &Term) -> Option<&Multiplicative> {
        self.entries.iter().find(|e| &e.term == t)
    }

    pub fn mult(&self, t: &Term) -> Option<&VarSet> {
        self.get(t).map(|e| &e.mult)
    }
}

fn check_input(u: &TermSet, ord: &VariableOrdering) -> Result<(), JanetError> {
    if u.is_empty() {
        return Err(JanetError::Empty);
    }
    if u.n() != ord.n() {
        return Err(TermError::DimensionMismatch {
            expected: ord.n(),
            found: u.n(),
        }
        .into());
    }
    Ok(())
}

/// `x` is multiplicative for `t` unless some `u` agrees with `t` on every
/// variable above `x` and has a larger `x`-exponent. Direct scan of `u`.
pub fn mult_vars_definition(
    t: &Term,
    u: &TermSet,
    ord: &VariableOrdering,
) -> Result<(VarSet, VarSet), JanetError> {
    check_input(u, ord)?;
    if !u.contains(t) {
        return Err(JanetError::NotInSet(t.clone()));
    }
    let mut mult = VarSet::new();
    let mut nonmult = VarSet::new();
    for rank in 0..ord.n() {
        let x = ord.var_at(rank);
        let blocked = u.iter().any(|s| {
            s.exponent(x) > t.exponent(x) && (rank + 1 == ord.n() || ord.agree_from(s, t, rank + 1))
        });
        if blocked {
            nonmult.insert(x);
        } else {
            mult.insert(x);
        }
    }
    Ok((mult, nonmult))
}

/// The decomposition of every term, computed with [`mult_vars_definition`].
pub fn decomposition_by_definition(
    u: &TermSet,
    ord: &VariableOrdering,
) -> Result<JanetDecomposition, JanetError> {
    check_input(u, ord)?;
    let entries = u
        .sorted(ord)
        .into_iter()
        .map(|t| {
            let (mult, nonmult) = mult_vars_definition(&t, u, ord)?;
            Ok(Multiplicative {
                term: t,
                mult,
                nonmult,
            })
        })
        .collect::<Result<_, JanetError>>()?;
    Ok(JanetDecomposition {
        ordering: ord.clone(),
        entries,
    })
}

/// Reads the decomposition off the Bar Code: `x` is multiplicative for `t`
/// iff the bar of `x`'s row under `t` is followed by a star.
pub fn mult_vars_barcode(
    u: &TermSet,
    ord: &VariableOrdering,
) -> Result<JanetDecomposition, JanetError> {
    check_input(u, ord)?;
    let b = build_barcode(u, ord)?;
    let marks = star_marking(&b);
    let columns = b.column_terms().expect("built from terms");
    let entries = columns
        .iter()
        .enumerate()
        .map(|(c, t)| {
            let mut mult = VarSet::new();
            let mut nonmult = VarSet::new();
            for r in 0..b.n() {
                let x = ord.var_at(r);
                if marks.is_starred(r, b.bar_under(r, c).index) {
                    mult.insert(x);
                } else {
                    nonmult.insert(x);
                }
            }
            Multiplicative {
                term: t.clone(),
                mult,
                nonmult,
            }
        })
        .collect();
    Ok(JanetDecomposition {
        ordering: ord.clone(),
        entries,
    })
}

/// Whether `w` is in the cone of `t` spanned by the variables `mult`.
pub fn cone_contains(w: &Term, t: &Term, mult: &VarSet) -> Result<bool, TermError> {
    if w.n() != t.n() {
        return Err(TermError::DimensionMismatch {
            expected: t.n(),
            found: w.n(),
        });
    }
    Ok(match w.checked_div(t) {
        Some(q) => q.support().is_subset(mult),
        None => false,
    })
}

/// The unique term of `u` whose Janet cone contains `w`, if any.
pub fn involutive_divisor(
    w: &Term,
    u: &TermSet,
    dec: &JanetDecomposition,
) -> Result<Option<Term>, JanetError> {
    let mut found: Option<&Term> = None;
    for t in u {
        let mult = dec
            .mult(t)
            .ok_or_else(|| JanetError::Invariant(format!("{t} missing from decomposition")))?;
        if cone_contains(w, t, mult)? {
            if let Some(first) = found {
                return Err(JanetError::ConeOverlap {
                    w: w.clone(),
                    first: first.clone(),
                    second: t.clone(),
                });
            }
            found = Some(t);
        }
    }
    Ok(found.cloned())
}

/// Involutive divisor (or its absence) of `var * term` for one
/// non-multiplicative pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub term: Term,
    pub var: Var,
    pub divisor: Option<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub ordering: VariableOrdering,
    pub complete: bool,
    /// One entry per non-multiplicative pair, terms in lex order, variables
    /// by increasing rank.
    pub witnesses: Vec<Witness>,
    pub first_failure: Option<(Term, Var)>,
}

impl CompletenessReport {
    fn from_witnesses(ordering: VariableOrdering, witnesses: Vec<Witness>) -> Self {
        let first_failure = witnesses
            .iter()
            .find(|w| w.divisor.is_none())
            .map(|w| (w.term.clone(), w.var));
        CompletenessReport {
            ordering,
            complete: first_failure.is_none(),
            witnesses,
            first_failure,
        }
    }
}

/// Completeness straight from the definition: every `x * t` with `x`
/// non-multiplicative for `t` needs a cone of `u` containing it.
pub fn is_complete_definition(
    u: &TermSet,
    ord: &VariableOrdering,
) -> Result<CompletenessReport, JanetError> {
    let dec = decomposition_by_definition(u, ord)?;
    let mut witnesses = Vec::new();
    for e in &dec.entries {
        for x in ord.min_to_max().iter().filter(|x| e.nonmult.contains(x)) {
            let w = e.term.mul_var(*x);
            witnesses.push(Witness {
                term: e.term.clone(),
                var: *x,
                divisor: involutive_divisor(&w, u, &dec)?,
            });
        }
    }
    Ok(CompletenessReport::from_witnesses(ord.clone(), witnesses))
}

/// Completeness by the Bar Code criterion. For `t` over bar `j` of row `r`
/// with `x_r` non-multiplicative, the only possible involutive divisors of
/// `x_r * t` lie over bar `j + 1`; a term `s` there qualifies when it
/// divides `x_r * t` and every variable of the quotient is starred for `s`.
pub fn is_complete_barcode(
    u: &TermSet,
    ord: &VariableOrdering,
) -> Result<CompletenessReport, JanetError> {
    check_input(u, ord)?;
    let b = build_barcode(u, ord)?;
    let marks = star_marking(&b);
    let columns = b.column_terms().expect("built from terms");
    let starred_for = |col: usize, x: Var| {
        let r = ord.rank_of(x);
        marks.is_starred(r, b.bar_under(r, col).index)
    };
    let mut witnesses = Vec::new();
    for (c, t) in columns.iter().enumerate() {
        for r in 0..b.n() {
            let bar = b.bar_under(r, c);
            if marks.is_starred(r, bar.index) {
                continue;
            }
            // an unstarred bar is never last and shares its parent with the next
            let next = b.row(r).get(bar.index + 1).ok_or_else(|| {
                JanetError::Invariant(format!("unstarred bar ({r}, {}) is last", bar.index))
            })?;
            if b.parent_index(r, bar.index) != b.parent_index(r, next.index) {
                return Err(JanetError::Invariant(format!(
                    "unstarred bar ({r}, {}) ends its block",
                    bar.index
                )));
            }
            let x = ord.var_at(r);
            let w = t.mul_var(x);
            let mut divisor: Option<&Term> = None;
            for col in next.span.clone() {
                let s = &columns[col];
                let Some(q) = w.checked_div(s) else { continue };
                if q.support().into_iter().all(|y| starred_for(col, y)) {
                    if let Some(first) = divisor {
                        return Err(JanetError::ConeOverlap {
                            w: w.clone(),
                            first: first.clone(),
                            second: s.clone(),
                        });
                    }
                    divisor = Some(s);
                }
            }
            witnesses.push(Witness {
                term: t.clone(),
                var: x,
                divisor: divisor.cloned(),
            });
        }
    }
    Ok(CompletenessReport::from_witnesses(ord.clone(), witnesses))
}

/// Completeness by recursion on the maximal variable: slice by its degree,
/// require each slice complete in one variable fewer, and require every
/// term of a non-top slice to lie in a Janet cone (taken inside the next
/// slice) of a term of the next slice.
pub fn is_complete_recursive(u: &TermSet, ord: &VariableOrdering) -> Result<bool, JanetError> {
    check_input(u, ord)?;
    let ranked: Vec<Vec<u32>> = u.iter().map(|t| ord.ranked_exponents(t)).collect();
    Ok(complete_ranked(&ranked))
}

/// `terms` are distinct rank-ordered exponent vectors (minimal variable
/// first), all of the same non-zero length.
fn complete_ranked(terms: &[Vec<u32>]) -> bool {
    let k = terms[0].len();
    let top = k - 1;
    let mut slices: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
    for t in terms {
        slices.entry(t[top]).or_default().push(t[..top].to_vec());
    }
    let max = *slices.keys().next_back().expect("non-empty");
    if k == 1 {
        return slices
            .keys()
            .all(|&l| l == max || slices.contains_key(&(l + 1)));
    }
    if !slices.values().all(|s| complete_ranked(s)) {
        return false;
    }
    slices.iter().filter(|(&l, _)| l < max).all(|(l, slice)| {
        let Some(next) = slices.get(&(l + 1)) else {
            return false;
        };
        slice
            .iter()
            .all(|t| next.iter().any(|s| in_cone_ranked(t, s, next)))
    })
}

fn in_cone_ranked(w: &[u32], t: &[u32], set: &[Vec<u32>]) -> bool {
    if w.iter().zip(t).any(|(a, b)| a < b) {
        return false;
    }
    (0..w.len())
        .filter(|&r| w[r] > t[r])
        .all(|r| multiplicative_ranked(t, set, r))
}

fn multiplicative_ranked(t: &[u32], set: &[Vec<u32>], r: usize) -> bool {
    !set.iter().any(|s| s[r] > t[r] && s[r + 1..] == t[r + 1..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[&[u32]]) -> TermSet {
        TermSet::from_exponents(n, v.iter().map(|e| e.to_vec())).unwrap()
    }

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    fn vars(v: &[usize]) -> VarSet {
        v.iter().map(|&i| Var(i)).collect()
    }

    /// {x1^3, x2^3, x1^4x2x3, x3^2}
    fn incomplete_set() -> TermSet {
        set(3, &[&[3, 0, 0], &[0, 3, 0], &[4, 1, 1], &[0, 0, 2]])
    }

    /// {x^2, xy}
    fn complete_pair() -> TermSet {
        set(2, &[&[2, 0], &[1, 1]])
    }

    #[test]
    fn definition_examples() {
        let id = VariableOrdering::identity(3);
        let (m, nm) = mult_vars_definition(&t(&[3, 0, 0]), &incomplete_set(), &id).unwrap();
        assert_eq!(m, vars(&[0]));
        assert_eq!(nm, vars(&[1, 2]));

        let single = set(3, &[&[1, 2, 3]]);
        let (m, nm) = mult_vars_definition(&t(&[1, 2, 3]), &single, &id).unwrap();
        assert_eq!(m, vars(&[0, 1, 2]));
        assert!(nm.is_empty());

        assert_eq!(
            mult_vars_definition(&t(&[9, 9, 9]), &single, &id),
            Err(JanetError::NotInSet(t(&[9, 9, 9])))
        );
    }

    #[test]
    fn decomposition_depends_on_ordering() {
        let u = set(2, &[&[1, 0], &[0, 1]]);
        let id = VariableOrdering::identity(2);
        let d = decomposition_by_definition(&u, &id).unwrap();
        assert_eq!(d.mult(&t(&[1, 0])).unwrap(), &vars(&[0]));
        assert_eq!(d.mult(&t(&[0, 1])).unwrap(), &vars(&[0, 1]));
        let rev = VariableOrdering::from_min_to_max(vec![Var(1), Var(0)]).unwrap();
        let d = decomposition_by_definition(&u, &rev).unwrap();
        assert_eq!(d.mult(&t(&[1, 0])).unwrap(), &vars(&[0, 1]));
        assert_eq!(d.mult(&t(&[0, 1])).unwrap(), &vars(&[1]));
        assert_eq!(mult_vars_barcode(&u, &rev).unwrap(), d);
    }

    #[test]
    fn barcode_decomposition_table() {
        let id = VariableOrdering::identity(3);
        let d = mult_vars_barcode(&incomplete_set(), &id).unwrap();
        assert_eq!(d.mult(&t(&[3, 0, 0])).unwrap(), &vars(&[0]));
        assert_eq!(d.mult(&t(&[0, 3, 0])).unwrap(), &vars(&[0, 1]));
        assert_eq!(d.mult(&t(&[4, 1, 1])).unwrap(), &vars(&[0, 1]));
        assert_eq!(d.mult(&t(&[0, 0, 2])).unwrap(), &vars(&[0, 1, 2]));
        assert_eq!(
            d,
            decomposition_by_definition(&incomplete_set(), &id).unwrap()
        );

        let pair = mult_vars_barcode(&complete_pair(), &VariableOrdering::identity(2)).unwrap();
        assert_eq!(pair.mult(&t(&[2, 0])).unwrap(), &vars(&[0]));
        assert_eq!(pair.mult(&t(&[1, 1])).unwrap(), &vars(&[0, 1]));
    }

    #[test]
    fn cone_examples() {
        let m = vars(&[0]);
        assert_eq!(cone_contains(&t(&[5, 0, 0]), &t(&[3, 0, 0]), &m), Ok(true));
        assert_eq!(cone_contains(&t(&[3, 0, 1]), &t(&[3, 0, 0]), &m), Ok(false));
        assert_eq!(
            cone_contains(&t(&[3, 0, 0]), &t(&[3, 0, 0]), &VarSet::new()),
            Ok(true)
        );
        assert_eq!(
            cone_contains(&t(&[3, 2]), &t(&[1, 3]), &vars(&[0, 1])),
            Ok(false)
        );
        assert!(cone_contains(&t(&[3, 2]), &t(&[1, 3, 0]), &m).is_err());
    }

    #[test]
    fn involutive_divisor_examples() {
        let u = complete_pair();
        let id = VariableOrdering::identity(2);
        let dec = decomposition_by_definition(&u, &id).unwrap();
        assert_eq!(
            involutive_divisor(&t(&[2, 1]), &u, &dec),
            Ok(Some(t(&[1, 1])))
        );
        assert_eq!(
            involutive_divisor(&t(&[2, 0]), &u, &dec),
            Ok(Some(t(&[2, 0])))
        );

        let u = incomplete_set();
        let dec = decomposition_by_definition(&u, &VariableOrdering::identity(3)).unwrap();
        assert_eq!(involutive_divisor(&t(&[3, 1, 0]), &u, &dec), Ok(None));
    }

    #[test]
    fn completeness_examples() {
        let id2 = VariableOrdering::identity(2);
        let id3 = VariableOrdering::identity(3);

        let r = is_complete_definition(&complete_pair(), &id2).unwrap();
        assert!(r.complete);
        assert_eq!(
            r.witnesses,
            vec![Witness {
                term: t(&[2, 0]),
                var: Var(1),
                divisor: Some(t(&[1, 1]))
            }]
        );
        assert_eq!(is_complete_barcode(&complete_pair(), &id2).unwrap(), r);
        assert!(is_complete_recursive(&complete_pair(), &id2).unwrap());

        let single = set(3, &[&[0, 4, 1]]);
        assert!(is_complete_definition(&single, &id3).unwrap().complete);
        assert!(is_complete_barcode(&single, &id3).unwrap().complete);
        assert!(is_complete_recursive(&single, &id3).unwrap());

        let r = is_complete_definition(&incomplete_set(), &id3).unwrap();
        assert!(!r.complete);
        assert_eq!(r.first_failure, Some((t(&[3, 0, 0]), Var(1))));
        let rb = is_complete_barcode(&incomplete_set(), &id3).unwrap();
        assert_eq!(rb.first_failure, r.first_failure);
        assert!(!is_complete_recursive(&incomplete_set(), &id3).unwrap());
    }

    #[test]
    fn gapped_pair_incomplete_both_ways() {
        let u = set(2, &[&[1, 3], &[3, 1]]);
        for ord in VariableOrdering::all(2) {
            assert!(!is_complete_recursive(&u, &ord).unwrap());
            assert!(!is_complete_definition(&u, &ord).unwrap().complete);
        }
    }

    #[test]
    fn recursion_uses_next_slice_cones() {
        // {x1^2, x2}: complete under x1<x2, although x1 is not multiplicative
        // for 1 once the two slices are merged
        let u = set(2, &[&[2, 0], &[0, 1]]);
        let id = VariableOrdering::identity(2);
        assert!(is_complete_definition(&u, &id).unwrap().complete);
        assert!(is_complete_recursive(&u, &id).unwrap());
    }

    #[test]
    fn empty_rejected() {
        let id = VariableOrdering::identity(2);
        assert_eq!(
            is_complete_definition(&TermSet::empty(2), &id),
            Err(JanetError::Empty)
        );
        assert_eq!(
            is_complete_barcode(&TermSet::empty(2), &id),
            Err(JanetError::Empty)
        );
        assert_eq!(
            is_complete_recursive(&TermSet::empty(2), &id),
            Err(JanetError::Empty)
        );
    }
}
