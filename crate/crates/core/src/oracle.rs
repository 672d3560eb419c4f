//! Definition-level checks that do not go through Bar Codes. These are the
//! reference answers the Bar Code routes are tested against.

use crate::term::{Term, TermSet, VariableOrdering};

/// Returns a term of `set` together with one of its divisors missing from
/// `set`, or `None` when `set` is an order ideal.
pub fn order_ideal_violation(set: &TermSet) -> Option<(Term, Term)> {
    for t in set {
        for v in t.support() {
            let mut d = t.clone();
            d = d.checked_div(&Term::var(v, t.n())).expect("v divides t");
            if !set.contains(&d) {
                return Some((t.clone(), d));
            }
        }
    }
    None
}

pub fn is_order_ideal(set: &TermSet) -> bool {
    order_ideal_violation(set).is_none()
}

/// `{ w not in N : w / min(w) in N }`, where `min(w)` is the smallest variable
/// dividing `w` under `ord`. Every such `w` is `min(w) * u` for some `u` in
/// `N`, so scanning `x * u` over all variables `x` and `u` in `N` is
/// exhaustive. Output sorted increasingly by lex.
pub fn star_set_by_formula(order_ideal: &TermSet, ord: &VariableOrdering) -> Vec<Term> {
    let n = order_ideal.n();
    let mut out: Vec<Term> = Vec::new();
    for u in order_ideal {
        for v in (0..n).map(crate::term::Var) {
            let w = u.mul_var(v);
            if order_ideal.contains(&w) || out.contains(&w) {
                continue;
            }
            let min = ord.min_var_of(&w).expect("w is not constant");
            let q = w
                .checked_div(&Term::var(min, n))
                .expect("min variable divides w");
            if order_ideal.contains(&q) {
                out.push(w);
            }
        }
    }
    out.sort_by(|a, b| ord.cmp_terms(a, b));
    out
}
