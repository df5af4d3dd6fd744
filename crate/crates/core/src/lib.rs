//! Arithmetic of `GL(2, F_p)`: characters, matrix Gauss sums, Fourier
//! analysis of integer boxes and lattice counts in residue classes.

pub mod arith;
pub mod chars;
pub mod counting;
pub mod error;
pub mod fourier;
pub mod gauss;
pub mod group;
pub mod verify;

pub use arith::{ComplexValue, FieldElement, MulCharacter, PrimeField, QuadExtElement};
pub use chars::{CharacterTable, IrrepLabel};
pub use error::{Error, Result};
pub use group::{ClassInfo, ClassLabel, Gl2, IntMat2, Mat2, SetKind};
