//! CSS codes as chain complexes over F2, distance balancing, and exact
//! brute-force oracles for code parameters and local-testability soundness.

pub mod balance;
pub mod complex;
pub mod constructions;
pub mod gf2;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod search;
pub mod tables;

pub use balance::{distance_balance, double_balance, BalancedCode};
pub use complex::{ChainComplex, ClassicalCode, ComplexError, CssCode};
pub use constructions::CodeSpec;
pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use io::CodeFile;
pub use oracle::{CapExceeded, Distance, Soundness, DEFAULT_CAP};
pub use rational::Rational;
