//! Fuzzy stable models of propositional formulas over exact rational truth
//! values.
//!
//! The crate is `no_std` (it needs `alloc`). It covers the whole semantic
//! pipeline: operators and lattices ([`truth`], [`operator`]), formulas and
//! normal programs ([`formula`], [`fasp`]), evaluation and reducts
//! ([`semantics`]), stability checking and enumeration ([`stable`]),
//! syntactic transforms ([`transforms`]) and an independent fuzzy
//! equilibrium logic checker ([`equilibrium`]).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod equilibrium;
pub mod error;
pub mod fasp;
pub mod formula;
pub mod interp;
pub mod operator;
pub mod semantics;
pub mod stable;
pub mod transforms;
pub mod truth;

pub use error::{Error, Result};
pub use formula::{parse_formula, Atom, Formula, Signature};
pub use interp::{BoolInterpretation, Interpretation};
pub use operator::{op_apply, Family, OperatorKind};
pub use truth::{Lattice, Truth};
