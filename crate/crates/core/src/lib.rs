//! Bar Codes of finite term sets, Janet decompositions and completeness,
//! and the search for a variable ordering that makes a set complete.

pub mod barcode;
pub mod gen;
pub mod janet;
pub mod oracle;
pub mod search;
pub mod term;

pub use barcode::{
    build_barcode, decode, decode_set, elist, is_admissible, star_marking, star_set, Bar, BarCode,
    BarCodeError, Diagram, EList, StarMarking,
};
pub use janet::{
    cone_contains, decomposition_by_definition, involutive_divisor, is_complete_barcode,
    is_complete_definition, is_complete_recursive, mult_vars_barcode, mult_vars_definition,
    CompletenessReport, JanetDecomposition, JanetError, Multiplicative, Witness,
};
pub use search::{
    brute_force_orderings, find_ordering, SearchError, SearchEvent, SearchResult,
    DEFAULT_BRUTE_FORCE_CAP,
};
pub use term::{
    degree_profile, divides, fmt_var_set, lex_compare, pi_projection, Term, TermError, TermSet,
    Var, VarSet, VariableOrdering,
};
