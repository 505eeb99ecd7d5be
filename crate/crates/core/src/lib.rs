//! Polynomial entanglement invariants of four-qubit pure states.
//!
//! The building blocks are the negativity-font determinants in [`fonts`].
//! From them [`invariants`] assembles the five three-qubit invariants of
//! `A1 A2 A3` (indexed by the spectator `A4`), the degree-8 invariant
//! `I_(4,8)`, the degree-12 invariant `J`, the discriminant and the four
//! tangle `4 sqrt(12 |I_(4,8)|)`. [`verify`] checks the transformation law
//! of the three-qubit invariant under a unitary on `A4` and the local
//! unitary invariance of the four-qubit quantities.
//!
//! ```
//! use four_tangle::{invariants, state::Builtin};
//!
//! let ghz = Builtin::Ghz4.state();
//! assert!((invariants::tau4(&ghz).unwrap() - 1.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod fonts;
pub mod invariants;
pub mod report;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use fonts::{Bit, FontIndex, FontTable};
pub use invariants::{QuarticCoefficients, ThreeQubitInvariants};
pub use report::{full_report, InvariantReport};
pub use state::{LocalOperator, Qubit, QubitPermutation, StateVector};
