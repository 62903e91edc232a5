//! Littlewood-Richardson coefficients, the Horn cone of eigenvalue triples of
//! Hermitian matrices, and computational checks of Fulton's conjecture.
//!
//! Geometry is generic over [`scalar::Scalar`]; exact computations use
//! [`Rational`] and sampled spectra use `f64`.

pub mod face;
pub mod fulton;
pub mod horn;
pub mod linalg;
pub mod lr;
pub mod partition;
pub mod scalar;
pub mod schur;
pub mod simplex;
pub mod spectra;

pub use face::{assemble_block_spectrum, face_dimension, on_face, rho, FaceSystems};
pub use fulton::{geometric_trace, verify_fulton, verify_saturation, LrTriple};
pub use horn::{is_member, HornInequality, HornSystem, SpectrumPoint, Verdict};
pub use lr::{lr_coefficient, schubert_constant, triple_intersection};
pub use partition::{Partition, SubsetIndex, SubsetTriple};
pub use scalar::{Scalar, Tolerance};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals; overflow panics.
pub type SmallRational = num_rational::Rational64;

pub type ExactPoint = SpectrumPoint<Rational>;
pub type FloatPoint = SpectrumPoint<f64>;
pub type Float32Point = SpectrumPoint<f32>;
