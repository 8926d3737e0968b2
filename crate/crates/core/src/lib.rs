//! Partial scaling transforms of multi-qudit density matrices and their use
//! as entanglement witnesses.
//!
//! The scaling map `T_lambda = (1+lambda)/2 * id + (1-lambda)/2 * transpose`
//! interpolates between the identity (`lambda = 1`) and transposition
//! (`lambda = -1`). Applied factor-wise to a multipartite state it can
//! produce negative eigenvalues only for entangled states; the sum of the
//! negative parts of the spectrum gives a negativity-style measure.

pub mod error;
pub mod exec;
pub mod formats;
pub mod linalg;
pub mod maps;
pub mod scan;
pub mod states;
pub mod tomography;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{ComplexMatrix, DensityMatrix, Solver};
pub use maps::{PartialScalingSpec, QubitAnisotropy};
pub use scan::{PhaseDiagram, ScanConfig};
pub use states::{StateFamily, StateFamilyParams};
pub use witness::{MeasureResult, WitnessReport};
