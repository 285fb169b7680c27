//! Exact computations with finite-dimensional pointed Hopf algebras.

pub mod hopf;
pub mod ncalg;
pub mod scalars;
pub mod action;
pub mod twist;
pub mod classify;
pub mod cli;
