//! Finite-precision computer algebra for modules over the Iwasawa algebra
//! `Λ = Z_p[[X]]`, truncated to the working ideal `(p^N, X^M)`.
//!
//! The crate is split into four layers:
//!
//! * [`ring`] — arithmetic in the truncated algebra `Λ_{N,M}`, Weierstrass
//!   preparation and division, `ω_n`, twist substitutions and determinants;
//! * [`fp`] — dense exact linear algebra over `F_p`, the kernel behind
//!   coinvariant counts;
//! * [`module`] — finitely presented `Λ`-modules, their `μ`/`λ` invariants by
//!   two independent routes, growth traces and twists;
//! * [`harness`] — seeded verification and defect-measurement suites, plus
//!   the `λ`-transfer bookkeeping on synthetic Selmer skeletons.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `iwacli` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fp;
pub mod harness;
pub mod module;
pub mod ring;

pub use error::Error;
