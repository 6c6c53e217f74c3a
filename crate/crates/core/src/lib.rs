//! Exact-arithmetic engine for deformed smash product algebras over
//! finite-dimensional cocommutative algebras.
//!
//! The crate builds finitely presented algebras `H` from a triple
//! `(A, V, deformation)` — an algebra `A` with coproduct, an `A`-module `V`,
//! and lower-order deformation terms — and decides whether `H` has a
//! Poincaré–Birkhoff–Witt basis by four independent methods: symbolic
//! deformation conditions, structure-constant identities, diamond-lemma
//! ambiguity resolution, and a truncated dimension count by exact linear
//! algebra.  A family of theorem-level checkers covers nil-Coxeter type
//! algebras, grouplike classification, simple modules, centers, and Hopf
//! structure inheritance.

pub mod action;
pub mod coalgebra;
pub mod deformation;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod theorems;
pub mod word;
