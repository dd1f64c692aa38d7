//! Finite models of Galois connections and their constructive variants.
//!
//! Concrete carriers are finite sets (bounded integer ranges or named
//! atoms), subsets are bitsets, and abstract domains are finite posets or
//! lattices. Every connection class has a checker that returns a concrete
//! counterexample on failure, and the transforms between classes are
//! checked against their round-trip laws.

pub mod analyzer;
pub mod catalog;
pub mod format;
pub mod functions;
pub mod galois;
pub mod laws;
pub mod order;
pub mod setops;
pub mod transforms;

pub use analyzer::{analyze, analyze_source, parse_program, AnalysisResult, AnalyzeError, ParseError, Program, Transfer};
pub use catalog::{builtin, Builtin, CatalogError, Sizes};
pub use format::FormatError;
pub use functions::{bca_gc, bca_pcgc, AbstractFn, ConcreteFn, FunctionError, OpTable, Universe, Variant};
pub use galois::{
    check_cco, check_cgc, check_cgp, check_gc, check_pcgc, classify_partitioning, Alpha, Class, ClosureOp, Connection, Constructive,
    GaloisError, Kind, Outcome, Precision, SetGc, Witness,
};
pub use order::{Lattice, OrderError, Poset};
pub use setops::{Arith, Carrier, CarrierError, Subset};
