//! Exact evaluation of genus-g Gromov–Witten invariants of the maximal
//! orthogonal Grassmannian `OG(n)_0`, and the maximal isotropic subbundle
//! counts built on them.
//!
//! ```
//! use ogq_core::{count, gw_invariant, GWQuery, StrictPartition};
//!
//! let line = StrictPartition::parse("1").unwrap();
//! let q = GWQuery::new(2, 0, 1, vec![line.clone(), line.clone(), line]);
//! assert_eq!(gw_invariant(&q).unwrap(), 1u32.into());
//! assert_eq!(count(3, 4, 0).unwrap().value.unwrap(), 16u32.into());
//! ```

pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod partitions;
pub mod quantum;
pub mod scalar;
pub mod symfunc;
pub mod verify;

pub use counting::{
    count, count_even, count_odd, n_tilde, trivial_bundle_number, CountReport, NQuery,
};
pub use cyclotomic::CycloNum;
pub use error::{Error, Result};
pub use partitions::StrictPartition;
pub use quantum::{
    gw_invariant, quantum_product, trace_invariant, GWQuery, QuantumElement, StructureTable,
};
pub use scalar::{FieldScalar, Scalar};
pub use symfunc::{AlphaPolynomial, PointTuple};
