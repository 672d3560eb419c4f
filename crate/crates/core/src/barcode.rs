//! Bar Codes of finite term sets.
//!
//! Row `r` of a Bar Code (0-based, top row first) belongs to the variable of
//! rank `r`: row 0 is the minimal variable, the bottom row the maximal one.
//! The bars of row `r` are the maximal runs of lex-sorted columns whose terms
//! agree on every variable of rank `>= r`.

use std::collections::{BTreeSet, HashSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle;
use crate::term::{pi_projection, Term, TermError, TermSet, Var, VariableOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarCodeError {
    #[error("cannot build a Bar Code for an empty term set")]
    Empty,
    #[error("malformed Bar Code: {0}")]
    Malformed(String),
    #[error("column {column} out of range for {m} columns")]
    ColumnOutOfRange { column: usize, m: usize },
    #[error("Bar Code is not admissible: {term} is decoded but its divisor {missing} is not")]
    NotAdmissible { term: Term, missing: Term },
    #[error(transparent)]
    Term(#[from] TermError),
}

/// The `index`-th bar (0-based, left to right) of row `row`, covering the
/// half-open column interval `span`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bar {
    pub row: usize,
    pub index: usize,
    pub span: Range<usize>,
}

impl Bar {
    /// The 1-length: number of columns spanned.
    pub fn len(&self) -> usize {
        self.span.end - self.span.start
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_empty()
    }

    /// Whether `self` lies over `other`, i.e. its span is inside `other`'s.
    pub fn lies_over(&self, other: &Bar) -> bool {
        other.span.start <= self.span.start && self.span.end <= other.span.end
    }
}

/// A Bar Code together with the variable ordering its rows refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarCode {
    ordering: VariableOrdering,
    m: usize,
    rows: Vec<Vec<Bar>>,
    /// `bar_of[row][column]` = index of the bar of `row` under `column`.
    bar_of: Vec<Vec<usize>>,
    column_terms: Option<Vec<Term>>,
}

impl BarCode {
    /// Builds a Bar Code from its shape alone: `row_lengths[r]` lists the
    /// 1-lengths of the bars of row `r`, left to right.
    pub fn from_row_lengths(
        ordering: VariableOrdering,
        row_lengths: &[Vec<usize>],
    ) -> Result<Self, BarCodeError> {
        if row_lengths.len() != ordering.n() {
            return Err(BarCodeError::Malformed(format!(
                "{} rows given for {} variables",
                row_lengths.len(),
                ordering.n()
            )));
        }
        let rows = row_lengths
            .iter()
            .enumerate()
            .map(|(row, lengths)| {
                let mut start = 0;
                lengths
                    .iter()
                    .enumerate()
                    .map(|(index, &len)| {
                        let bar = Bar {
                            row,
                            index,
                            span: start..start + len,
                        };
                        start += len;
                        bar
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(ordering, rows, None)
    }

    fn from_rows(
        ordering: VariableOrdering,
        rows: Vec<Vec<Bar>>,
        column_terms: Option<Vec<Term>>,
    ) -> Result<Self, BarCodeError> {
        let m = rows.first().map(|r| r.len()).unwrap_or(0);
        if m == 0 {
            return Err(BarCodeError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            let mut expected_start = 0;
            for (j, bar) in row.iter().enumerate() {
                if bar.row != r || bar.index != j {
                    return Err(BarCodeError::Malformed(format!(
                        "bar ({}, {}) stored at ({r}, {j})",
                        bar.row, bar.index
                    )));
                }
                if bar.is_empty() {
                    return Err(BarCodeError::Malformed(format!("bar ({r}, {j}) is empty")));
                }
                if bar.span.start != expected_start {
                    return Err(BarCodeError::Malformed(format!(
                        "bar ({r}, {j}) starts at column {} instead of {expected_start}",
                        bar.span.start
                    )));
                }
                expected_start = bar.span.end;
            }
            // all rows have the same length
            if expected_start != m {
                return Err(BarCodeError::Malformed(format!(
                    "row {r} has length {expected_start}, row 0 has length {m}"
                )));
            }
        }
        if rows[0].iter().any(|b| b.len() != 1) {
            return Err(BarCodeError::Malformed("1-bars must have length 1".into()));
        }
        let bar_of: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| {
                let mut v = vec![0; m];
                for bar in row {
                    for c in bar.span.clone() {
                        v[c] = bar.index;
                    }
                }
                v
            })
            .collect();
        // every bar lies over exactly one bar of the next row
        for r in 0..rows.len().saturating_sub(1) {
            for bar in &rows[r] {
                let below = &rows[r + 1][bar_of[r + 1][bar.span.start]];
                if !bar.lies_over(below) {
                    return Err(BarCodeError::Malformed(format!(
                        "bar ({r}, {}) straddles two bars of row {}",
                        bar.index,
                        r + 1
                    )));
                }
            }
        }
        Ok(BarCode {
            ordering,
            m,
            rows,
            bar_of,
            column_terms,
        })
    }

    pub fn ordering(&self) -> &VariableOrdering {
        &self.ordering
    }

    /// Number of rows (= number of variables).
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<Bar>] {
        &self.rows
    }

    pub fn row(&self, row: usize) -> &[Bar] {
        &self.rows[row]
    }

    /// The lex-sorted terms labelling the columns, when the Bar Code was built
    /// from a term set.
    pub fn column_terms(&self) -> Option<&[Term]> {
        self.column_terms.as_deref()
    }

    /// The bar of `row` lying under `column`.
    pub fn bar_under(&self, row: usize, column: usize) -> &Bar {
        &self.rows[row][self.bar_of[row][column]]
    }

    /// Index of the bar of `row + 1` that `rows[row][index]` lies over, or
    /// `None` for the bottom row.
    pub fn parent_index(&self, row: usize, index: usize) -> Option<usize> {
        if row + 1 >= self.n() {
            return None;
        }
        let bar = &self.rows[row][index];
        Some(self.bar_of[row + 1][bar.span.start])
    }

    /// The `i`-length of a bar: how many bars of row `i` lie over it.
    pub fn i_length(&self, bar: &Bar, i: usize) -> usize {
        self.rows[i].iter().filter(|b| b.lies_over(bar)).count()
    }

    /// 1-lengths of every bar of `row`.
    pub fn row_lengths(&self, row: usize) -> Vec<usize> {
        self.rows[row].iter().map(Bar::len).collect()
    }
}

/// Builds the Bar Code of `set` under `ord`.
pub fn build_barcode(set: &TermSet, ord: &VariableOrdering) -> Result<BarCode, BarCodeError> {
    if set.is_empty() {
        return Err(BarCodeError::Empty);
    }
    if set.n() != ord.n() {
        return Err(TermError::DimensionMismatch {
            expected: ord.n(),
            found: set.n(),
        }
        .into());
    }
    let columns = set.sorted(ord);
    let n = ord.n();
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut bars: Vec<Bar> = Vec::new();
        let mut start = 0;
        // lex-sorted columns: equal projections are adjacent
        for c in 1..=columns.len() {
            if c == columns.len() || !ord.agree_from(&columns[c - 1], &columns[c], r) {
                bars.push(Bar {
                    row: r,
                    index: bars.len(),
                    span: start..c,
                });
                start = c;
            }
        }
        rows.push(bars);
    }
    BarCode::from_rows(ord.clone(), rows, Some(columns))
}

/// Decodes a Bar Code into the unique term list it encodes: the bottom row's
/// `j`-th bar gets `x_max^j`, and the `k`-th bar sitting over a labelled bar
/// of the next row multiplies that label by `x_row^k`. Labels are returned in
/// column order.
///
/// Different term sets can share a Bar Code, so this recovers the input of
/// [`build_barcode`] only when that input was an order ideal.
pub fn decode(b: &BarCode) -> Vec<Term> {
    let n = b.n();
    let mut labels = vec![vec![0u32; n]; b.m()];
    for (j, bar) in b.rows[n - 1].iter().enumerate() {
        for c in bar.span.clone() {
            labels[c][n - 1] = j as u32;
        }
    }
    for r in (0..n - 1).rev() {
        let mut k = 0u32;
        let mut current_parent = usize::MAX;
        for bar in &b.rows[r] {
            let parent = b.bar_of[r + 1][bar.span.start];
            if parent != current_parent {
                current_parent = parent;
                k = 0;
            } else {
                k += 1;
            }
            for c in bar.span.clone() {
                labels[c][r] = k;
            }
        }
    }
    labels
        .iter()
        .map(|ranked| b.ordering.term_from_ranked(ranked))
        .collect()
}

/// Decoded labels as a [`TermSet`]; fails only if decoding produced a
/// repeated label, which a well-formed Bar Code never does.
pub fn decode_set(b: &BarCode) -> Result<TermSet, BarCodeError> {
    TermSet::new(b.n(), decode(b)).map_err(|e| BarCodeError::Malformed(e.to_string()))
}

/// Block-relative bar offsets for one column, listed from the maximal
/// variable down to the minimal one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EList {
    pub values: Vec<u32>,
}

/// The e-list of `column`: how many bars sit to the left of the column's bar
/// inside the block of the bar below it.
pub fn elist(b: &BarCode, column: usize) -> Result<EList, BarCodeError> {
    if column >= b.m() {
        return Err(BarCodeError::ColumnOutOfRange { column, m: b.m() });
    }
    let n = b.n();
    let mut values = Vec::with_capacity(n);
    for r in (0..n).rev() {
        let own = b.bar_under(r, column);
        let count = if r == n - 1 {
            b.rows[r]
                .iter()
                .filter(|x| x.span.end <= own.span.start)
                .count()
        } else {
            let block = b.bar_under(r + 1, column);
            b.rows[r]
                .iter()
                .filter(|x| x.lies_over(block) && x.span.end <= own.span.start)
                .count()
        };
        values.push(count as u32);
    }
    Ok(EList { values })
}

/// Admissibility by e-lists: every column whose e-list has a positive entry
/// must see the e-list with that entry decremented somewhere else.
pub fn is_admissible(b: &BarCode) -> bool {
    let lists: Vec<Vec<u32>> = (0..b.m())
        .map(|c| elist(b, c).expect("column in range").values)
        .collect();
    let present: HashSet<&Vec<u32>> = lists.iter().collect();
    lists.iter().all(|l| {
        (0..l.len()).filter(|&k| l[k] > 0).all(|k| {
            let mut d = l.clone();
            d[k] -= 1;
            present.contains(&d)
        })
    })
}

/// Bars followed by a star, as `(row, bar index)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarMarking {
    pub starred: BTreeSet<(usize, usize)>,
}

impl StarMarking {
    pub fn is_starred(&self, row: usize, index: usize) -> bool {
        self.starred.contains(&(row, index))
    }
}

/// Marks the last bar of every row, and every bar whose right neighbour sits
/// over a different bar of the next row.
pub fn star_marking(b: &BarCode) -> StarMarking {
    let mut starred = BTreeSet::new();
    for (r, row) in b.rows.iter().enumerate() {
        for j in 0..row.len() {
            let last = j + 1 == row.len();
            if last || b.parent_index(r, j) != b.parent_index(r, j + 1) {
                starred.insert((r, j));
            }
        }
    }
    StarMarking { starred }
}

/// Star set of an admissible Bar Code: for each starred bar of row `r`,
/// `x_r * pi^r(t)` with `t` any label over that bar. Terms come out in the
/// order the stars are read off the diagram: left to right, and top to
/// bottom among stars at the same position.
pub fn star_set(b: &BarCode) -> Result<TermSet, BarCodeError> {
    let labels = decode(b);
    let decoded =
        TermSet::new(b.n(), labels.clone()).map_err(|e| BarCodeError::Malformed(e.to_string()))?;
    if !is_admissible(b) {
        let (term, missing) = oracle::order_ideal_violation(&decoded)
            .expect("a non-admissible Bar Code decodes to a non-order-ideal");
        return Err(BarCodeError::NotAdmissible { term, missing });
    }
    let marks = star_marking(b);
    let ord = &b.ordering;
    // each star sits right of its bar; read by position, then top to bottom
    let mut placed: Vec<(usize, usize, Term)> = Vec::with_capacity(marks.starred.len());
    for &(r, j) in &marks.starred {
        let bar = &b.rows[r][j];
        let t = &labels[bar.span.start];
        placed.push((
            bar.span.end,
            r,
            pi_projection(t, r, ord)?.mul_var(ord.var_at(r)),
        ));
    }
    placed.sort_by_key(|(end, r, _)| (*end, *r));
    let out = placed.into_iter().map(|(_, _, t)| t).collect();
    TermSet::new(b.n(), out).map_err(|e| BarCodeError::Malformed(e.to_string()))
}

/// Plain-data rendering model: rows with bar spans and star flags, plus the
/// column labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub ordering: VariableOrdering,
    pub labels: Vec<Term>,
    pub rows: Vec<DiagramRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub var: Var,
    pub bars: Vec<DiagramBar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramBar {
    pub start: usize,
    pub end: usize,
    pub starred: bool,
}

impl BarCode {
    pub fn diagram(&self) -> Diagram {
        let marks = star_marking(self);
        let labels = self.column_terms.clone().unwrap_or_else(|| decode(self));
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| DiagramRow {
                var: self.ordering.var_at(r),
                bars: row
                    .iter()
                    .map(|bar| DiagramBar {
                        start: bar.span.start,
                        end: bar.span.end,
                        starred: marks.is_starred(r, bar.index),
                    })
                    .collect(),
            })
            .collect();
        Diagram {
            ordering: self.ordering.clone(),
            labels,
            rows,
        }
    }
}
