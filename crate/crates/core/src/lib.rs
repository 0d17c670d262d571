pub mod cyclotomic;
pub mod fields;
pub mod gl2;
pub mod harmonic;
pub mod oracle;
pub mod render;
pub mod report;
pub mod sl3;
pub mod suites;
pub mod tensor;

pub use cyclotomic::{Cyclotomic, CyclotomicError, RootSum};
pub use fields::{FieldError, FieldTower, GaloisField};
pub use harmonic::{GroupFunction, HarmonicError, ProductGroup};
pub use gl2::{char_terms, char_value, CharTable, Family, Gl2Class, Gl2Error, Gl2Irrep, GroupParams};
pub use oracle::{ExplicitCharTable, Gl2Oracle, OracleError};
pub use report::Report;
pub use suites::{run_suite, Suite, SuiteError};
pub use sl3::{Sl3Class, Sl3Error, Sl3Irrep, Witness};
pub use tensor::{decompose, mult_closed, mult_sum, Decomposition, MultTable, PairKind, TensorError};
