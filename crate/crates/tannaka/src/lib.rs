//! Exact-arithmetic Tannaka reconstruction: from a finite strict monoidal
//! category and a matrix-valued functor, compute the end E_F, equip it with
//! its candidate (weak) bialgebra/Hopf structure, and mechanically check the
//! axiom suites.

pub mod axioms;
pub mod diagterm;
pub mod exactlin;
pub mod fincat;
pub mod model;
pub mod reconstruct;
pub mod repfun;
pub mod report;

#[cfg(test)]
pub(crate) mod testfix;
