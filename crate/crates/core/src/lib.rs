//! Arithmetic matroids, their independence posets, and Stanley–Reisner
//! rings, computed with exact integer arithmetic.

pub mod abelian;
pub mod arith;
pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod gstruct;
pub mod matroid;
pub mod poly;
pub mod poset;
pub mod sr_ring;
pub mod subset;

pub use abelian::{FinAbGroup, GroupElem, GroupHom};
pub use arith::{arithmetic_tutte, check_axioms, AmbientGroup, AxiomReport, Multiplicity, Representation};
pub use error::{Error, Result};
pub use exact_linalg::IntMatrix;
pub use gstruct::{cyclic_structure, layer_structure, torsion_free_reduction, validate_structure, GroupStructure};
pub use matroid::{Matroid, SimplicialComplex};
pub use poly::{IntPolynomial, IntPolynomial2};
pub use poset::{build_poset, IndPoset};
pub use sr_ring::{hilbert_closed, hilbert_oracle, sr_ideal, verify_hilbert, HilbertSeries, SRIdeal};
pub use subset::ElemSet;
