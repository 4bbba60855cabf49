//! Counting polynomial functions, permutations and stabilizer elements.

pub mod canonical;
pub mod enumerate;
pub mod formula;
pub mod report;
pub mod stabilizer;
pub mod table;

pub use canonical::{canonical_dual, canonical_field, canonical_zm, CanonicalRep};
pub use enumerate::{
    enumerate_polyfuncs, enumerate_polyperms, enumerate_tables, enumerate_tables_shard, summarize,
    Enumeration, SearchSpace, TableSet, DEFAULT_MAX_SPACE,
};
pub use report::{
    census, census_with, formula_suite, identity_checks, CensusMode, CensusReport, Entry, IdentityCheck,
    Quantities, Quantity,
};
pub use stabilizer::{enumerate_stabilizer, pair_count_b, Stabilizer};
pub use table::{func_table, func_table_dual, FuncTable};
