//! Gromov–Witten invariants of `OG(n)_0`, the quantum product, and the
//! trace formula used to cross-check them.

mod element;
mod engine;
mod index;
mod table;
mod trace;

pub use element::QuantumElement;
pub use engine::{
    exact_engine, float_engine, float_to_integer, gw_invariant, gw_invariant_float, relative_error,
    three_point, to_natural, CachedScalar, Engine, GWQuery, PointData,
};
pub use index::{eval_points, index_range, index_tuples, EvalPoint, IndexTuple};
pub use table::{quantum_product, structure_table, StructureTable, TableEntry, TABLE_SCHEMA};
pub use trace::{
    euler_class, genus_recursion_check, mat_mul, quantum_ring, trace, trace_invariant, Matrix,
    QuantumRing,
};
