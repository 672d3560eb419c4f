//! Terms, variable orderings and term sets.
//!
//! A [`Term`] is a dense exponent vector indexed by the *original* variable
//! index. Everything that depends on which variable is "larger" goes through a
//! [`VariableOrdering`], which maps ranks (0 = minimal variable) to variables.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A variable, identified by its 0-based original index. Displays as `x1`,
/// `x2`, ... and serializes as the same 1-based number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "VarRepr", into = "VarRepr")]
pub struct Var(pub usize);

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct VarRepr(usize);

impl TryFrom<VarRepr> for Var {
    type Error = String;

    fn try_from(r: VarRepr) -> Result<Self, Self::Error> {
        r.0.checked_sub(1)
            .map(Var)
            .ok_or_else(|| "variables are numbered from 1".to_string())
    }
}

impl From<Var> for VarRepr {
    fn from(v: Var) -> Self {
        VarRepr(v.0 + 1)
    }
}

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0 + 1)
    }
}

pub type VarSet = BTreeSet<Var>;

/// Formats a variable set as `{x1, x3}`.
pub fn fmt_var_set(set: &VarSet) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a term needs at least one variable")]
    NoVariables,
    #[error("rank {rank} out of range for {n} variables")]
    RankOutOfRange { rank: usize, n: usize },
    #[error("variable {var} out of range for {n} variables")]
    VariableOutOfRange { var: Var, n: usize },
    #[error("duplicate term {0}")]
    Duplicate(Term),
    #[error("not a permutation of the {n} variables: {detail}")]
    NotAPermutation { n: usize, detail: String },
}

/// A monomial `x1^g1 * ... * xn^gn`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Term {
    exponents: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Term {
    type Error = TermError;

    fn try_from(exponents: Vec<u32>) -> Result<Self, Self::Error> {
        Term::new(exponents)
    }
}

impl From<Term> for Vec<u32> {
    fn from(t: Term) -> Self {
        t.exponents
    }
}

impl Term {
    pub fn new(exponents: Vec<u32>) -> Result<Self, TermError> {
        if exponents.is_empty() {
            return Err(TermError::NoVariables);
        }
        Ok(Term { exponents })
    }

    /// The constant term `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        assert!(n > 0, "a term needs at least one variable");
        Term {
            exponents: vec![0; n],
        }
    }

    pub fn var(v: Var, n: usize) -> Self {
        let mut t = Term::one(n);
        t.exponents[v.0] = 1;
        t
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exponents[v.0]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `self * v`.
    pub fn mul_var(&self, v: Var) -> Term {
        let mut t = self.clone();
        t.exponents[v.0] += 1;
        t
    }

    pub fn mul(&self, other: &Term) -> Term {
        assert_eq!(self.n(), other.n());
        Term {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        Some(Term {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Whether `self` divides `other`. Both terms must live in the same ring.
    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    /// Variables occurring with non-zero exponent.
    pub fn support(&self) -> VarSet {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| Var(i))
            .collect()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.n()).map(Var)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", Var(i))?;
            } else {
                write!(f, "{}^{}", Var(i), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `a | b`, checking dimensions.
pub fn divides(a: &Term, b: &Term) -> Result<bool, TermError> {
    check_dims(a.n(), b.n())?;
    Ok(a.divides(b))
}

fn check_dims(expected: usize, found: usize) -> Result<(), TermError> {
    if expected != found {
        return Err(TermError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A permutation of the variables. Rank 0 is the minimal variable, rank `n-1`
/// the maximal one; the identity ordering is `x1 < x2 < ... < xn`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrderingRepr", into = "OrderingRepr")]
pub struct VariableOrdering {
    rank_to_var: Vec<Var>,
    var_to_rank: Vec<usize>,
}

/// Wire form: 1-based variable indices listed from minimal to maximal.
#[derive(Serialize, Deserialize)]
struct OrderingRepr {
    min_to_max: Vec<usize>,
}

impl TryFrom<OrderingRepr> for VariableOrdering {
    type Error = TermError;

    fn try_from(r: OrderingRepr) -> Result<Self, Self::Error> {
        let vars = r
            .min_to_max
            .iter()
            .map(|&i| {
                i.checked_sub(1).map(Var).ok_or(TermError::NotAPermutation {
                    n: r.min_to_max.len(),
                    detail: "variable indices are 1-based".into(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        VariableOrdering::from_min_to_max(vars)
    }
}

impl From<VariableOrdering> for OrderingRepr {
    fn from(o: VariableOrdering) -> Self {
        OrderingRepr {
            min_to_max: o.rank_to_var.iter().map(|v| v.0 + 1).collect(),
        }
    }
}

impl VariableOrdering {
    pub fn identity(n: usize) -> Self {
        VariableOrdering {
            rank_to_var: (0..n).map(Var).collect(),
            var_to_rank: (0..n).collect(),
        }
    }

    /// Builds an ordering from variables listed minimal first.
    pub fn from_min_to_max(rank_to_var: Vec<Var>) -> Result<Self, TermError> {
        let n = rank_to_var.len();
        if n == 0 {
            return Err(TermError::NoVariables);
        }
        let mut var_to_rank = vec![usize::MAX; n];
        for (rank, v) in rank_to_var.iter().enumerate() {
            if v.0 >= n {
                return Err(TermError::NotAPermutation {
                    n,
                    detail: format!("{v} does not exist"),
                });
            }
            if var_to_rank[v.0] != usize::MAX {
                return Err(TermError::NotAPermutation {
                    n,
                    detail: format!("{v} appears twice"),
                });
            }
            var_to_rank[v.0] = rank;
        }
        Ok(VariableOrdering {
            rank_to_var,
            var_to_rank,
        })
    }

    /// Builds an ordering from variables listed maximal first.
    pub fn from_max_to_min(mut vars: Vec<Var>) -> Result<Self, TermError> {
        vars.reverse();
        Self::from_min_to_max(vars)
    }

    pub fn n(&self) -> usize {
        self.rank_to_var.len()
    }

    pub fn var_at(&self, rank: usize) -> Var {
        self.rank_to_var[rank]
    }

    pub fn rank_of(&self, v: Var) -> usize {
        self.var_to_rank[v.0]
    }

    pub fn min_to_max(&self) -> &[Var] {
        &self.rank_to_var
    }

    pub fn max_var(&self) -> Var {
        *self.rank_to_var.last().expect("non-empty ordering")
    }

    pub fn is_identity(&self) -> bool {
        self.rank_to_var.iter().enumerate().all(|(r, v)| v.0 == r)
    }

    /// Exponents of `t` listed by rank, minimal variable first.
    pub fn ranked_exponents(&self, t: &Term) -> Vec<u32> {
        self.rank_to_var.iter().map(|&v| t.exponent(v)).collect()
    }

    /// Inverse of [`ranked_exponents`](Self::ranked_exponents).
    pub fn term_from_ranked(&self, ranked: &[u32]) -> Term {
        let mut exps = vec![0; self.n()];
        for (rank, &e) in ranked.iter().enumerate() {
            exps[self.rank_to_var[rank].0] = e;
        }
        Term { exponents: exps }
    }

    /// Renames variables so that the variable of rank `r` becomes `x_{r+1}`.
    pub fn relabel(&self, t: &Term) -> Term {
        Term {
            exponents: self.ranked_exponents(t),
        }
    }

    /// Lex comparison: the first difference, scanning from the maximal
    /// variable down, decides.
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        debug_assert_eq!(a.n(), self.n());
        debug_assert_eq!(b.n(), self.n());
        for &v in self.rank_to_var.iter().rev() {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// The minimal variable dividing `t`, if `t != 1`.
    pub fn min_var_of(&self, t: &Term) -> Option<Var> {
        self.rank_to_var
            .iter()
            .copied()
            .find(|&v| t.exponent(v) > 0)
    }

    /// Whether `a` and `b` agree on every variable of rank `>= rank`.
    pub fn agree_from(&self, a: &Term, b: &Term, rank: usize) -> bool {
        self.rank_to_var[rank..]
            .iter()
            .all(|&v| a.exponent(v) == b.exponent(v))
    }

    /// Every permutation of `n` variables, in lexicographic order of the
    /// min-to-max listing.
    pub fn all(n: usize) -> impl Iterator<Item = VariableOrdering> {
        use itertools::Itertools;
        (0..n)
            .map(Var)
            .permutations(n)
            .map(|p| VariableOrdering::from_min_to_max(p).expect("permutation"))
    }
}

impl fmt::Display for VariableOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rank_to_var.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("<"))
    }
}

impl fmt::Debug for VariableOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Lex comparison of `a` and `b` under `ord`.
pub fn lex_compare(a: &Term, b: &Term, ord: &VariableOrdering) -> Result<Ordering, TermError> {
    check_dims(ord.n(), a.n())?;
    check_dims(ord.n(), b.n())?;
    Ok(ord.cmp_terms(a, b))
}

/// Zeroes the exponents of every variable of rank `< rank` (0-based), keeping
/// the suffix `x_rank^.. * ... * x_max^..`. Rank 0 is the identity.
pub fn pi_projection(t: &Term, rank: usize, ord: &VariableOrdering) -> Result<Term, TermError> {
    check_dims(ord.n(), t.n())?;
    if rank >= ord.n() {
        return Err(TermError::RankOutOfRange { rank, n: ord.n() });
    }
    let mut out = t.clone();
    for &v in &ord.min_to_max()[..rank] {
        out.exponents[v.0] = 0;
    }
    Ok(out)
}

/// A finite set of distinct terms sharing the same number of variables.
///
/// Insertion order is kept for display; equality is set equality.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "TermSetRepr", into = "TermSetRepr")]
pub struct TermSet {
    n: usize,
    terms: Vec<Term>,
    lookup: HashSet<Term>,
}

#[derive(Serialize, Deserialize)]
struct TermSetRepr {
    n: usize,
    terms: Vec<Term>,
}

impl TryFrom<TermSetRepr> for TermSet {
    type Error = TermError;

    fn try_from(r: TermSetRepr) -> Result<Self, Self::Error> {
        TermSet::new(r.n, r.terms)
    }
}

impl From<TermSet> for TermSetRepr {
    fn from(s: TermSet) -> Self {
        TermSetRepr {
            n: s.n,
            terms: s.terms,
        }
    }
}

impl TermSet {
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self, TermError> {
        if n == 0 {
            return Err(TermError::NoVariables);
        }
        let mut lookup = HashSet::with_capacity(terms.len());
        for t in &terms {
            check_dims(n, t.n())?;
            if !lookup.insert(t.clone()) {
                return Err(TermError::Duplicate(t.clone()));
            }
        }
        Ok(TermSet { n, terms, lookup })
    }

    /// Convenience constructor from raw exponent vectors.
    pub fn from_exponents<I, V>(n: usize, vectors: I) -> Result<Self, TermError>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<u32>>,
    {
        let terms = vectors
            .into_iter()
            .map(|v| Term::new(v.into()))
            .collect::<Result<Vec<_>, _>>()?;
        TermSet::new(n, terms)
    }

    pub fn empty(n: usize) -> Self {
        TermSet {
            n,
            terms: Vec::new(),
            lookup: HashSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.terms.iter()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.lookup.contains(t)
    }

    /// Terms sorted increasingly by lex under `ord`.
    pub fn sorted(&self, ord: &VariableOrdering) -> Vec<Term> {
        let mut v = self.terms.clone();
        v.sort_by(|a, b| ord.cmp_terms(a, b));
        v
    }
}

impl PartialEq for TermSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.lookup == other.lookup
    }
}

impl Eq for TermSet {}

impl fmt::Debug for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.terms).finish()
    }
}

impl<'a> IntoIterator for &'a TermSet {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// The set of `v`-degrees attained by the given terms.
pub fn degree_profile<'a, I>(terms: I, v: Var) -> BTreeSet<u32>
where
    I: IntoIterator<Item = &'a Term>,
{
    terms.into_iter().map(|t| t.exponent(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::new(e.to_vec()).unwrap()
    }

    #[test]
    fn lex_examples() {
        let id = VariableOrdering::identity(3);
        assert_eq!(
            lex_compare(&t(&[1, 0, 0]), &t(&[2, 0, 0]), &id),
            Ok(Ordering::Less)
        );
        let id2 = VariableOrdering::identity(2);
        assert_eq!(
            lex_compare(&t(&[3, 1]), &t(&[3, 1]), &id2),
            Ok(Ordering::Equal)
        );

        // x1^3x2 vs x1x2^3: GT with x2 minimal, LT under x1<x2
        let a = t(&[3, 1]);
        let b = t(&[1, 3]);
        let swapped = VariableOrdering::from_min_to_max(vec![Var(1), Var(0)]).unwrap();
        assert_eq!(lex_compare(&a, &b, &swapped), Ok(Ordering::Greater));
        assert_eq!(lex_compare(&a, &b, &id2), Ok(Ordering::Less));
    }

    #[test]
    fn lex_dimension_mismatch() {
        let id = VariableOrdering::identity(2);
        assert!(matches!(
            lex_compare(&t(&[1, 0, 0]), &t(&[1, 0]), &id),
            Err(TermError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let id = VariableOrdering::identity(3);
        let x = t(&[1, 2, 1]);
        assert_eq!(pi_projection(&x, 1, &id).unwrap(), t(&[0, 2, 1]));
        assert_eq!(pi_projection(&x, 0, &id).unwrap(), x);
        assert_eq!(pi_projection(&x, 2, &id).unwrap(), t(&[0, 0, 1]));
        assert_eq!(
            pi_projection(&x, 3, &id),
            Err(TermError::RankOutOfRange { rank: 3, n: 3 })
        );
    }

    #[test]
    fn divides_examples() {
        assert_eq!(divides(&t(&[1, 1]), &t(&[2, 1])), Ok(true));
        assert_eq!(divides(&t(&[2, 1]), &t(&[2, 1])), Ok(true));
        assert_eq!(divides(&t(&[0, 3, 0]), &t(&[3, 1, 0])), Ok(false));
        assert!(divides(&t(&[0, 3, 0]), &t(&[3, 1])).is_err());
    }

    #[test]
    fn degree_profile_examples() {
        let m = TermSet::from_exponents(2, [vec![1, 3], vec![3, 1]]).unwrap();
        assert_eq!(degree_profile(&m, Var(0)), BTreeSet::from([1, 3]));
        assert_eq!(degree_profile(&m, Var(1)), BTreeSet::from([1, 3]));
        let one = TermSet::new(3, vec![Term::one(3)]).unwrap();
        assert_eq!(degree_profile(&one, Var(2)), BTreeSet::from([0]));
        assert!(degree_profile(&TermSet::empty(2), Var(0)).is_empty());
    }

    #[test]
    fn duplicate_terms_rejected() {
        let err = TermSet::from_exponents(2, [vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, TermError::Duplicate(t(&[1, 0])));
    }

    #[test]
    fn ordering_rejects_non_permutations() {
        assert!(VariableOrdering::from_min_to_max(vec![Var(0), Var(0)]).is_err());
        assert!(VariableOrdering::from_min_to_max(vec![Var(0), Var(2)]).is_err());
        let o = VariableOrdering::from_min_to_max(vec![Var(0), Var(1), Var(3), Var(2)]).unwrap();
        assert_eq!(o.to_string(), "x1<x2<x4<x3");
        assert_eq!(o.max_var(), Var(2));
        assert_eq!(o.rank_of(Var(3)), 2);
    }

    #[test]
    fn display() {
        assert_eq!(t(&[4, 1, 1]).to_string(), "x1^4*x2*x3");
        assert_eq!(Term::one(2).to_string(), "1");
    }

    #[test]
    fn all_orderings_count() {
        assert_eq!(VariableOrdering::all(4).count(), 24);
    }
}
