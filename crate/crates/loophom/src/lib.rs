//! Exact GF(2) computational algebra for loop-space homology.
//!
//! The crate is organized in three layers:
//!
//! 1. **Linear algebra and combinatorics** — bit-packed GF(2) matrices
//!    ([`gf2`]), graded dimension series ([`grading`]), and 2-adic
//!    arithmetic ([`arith`]).
//! 2. **Structured algebra engines** — presented noncommutative algebras
//!    with straightening and confluence checking ([`algebra`]), commutative
//!    quotient rings with degree-truncated Gröbner bases ([`groebner`]),
//!    coproducts, bialgebra verification and dual coalgebras ([`hopf`]),
//!    Steenrod module actions ([`steenrod`]), differentials and spectral
//!    sequence schedules ([`spectra`]), the cobar complex ([`cobar`]), and
//!    one explicit twisted resolution ([`resolution`]).
//! 3. **Fixtures and reporting** — the text format for presented algebras
//!    ([`parse`]), the built-in fixture registry ([`fixtures`]), and the
//!    named verification suites behind the CLI ([`suite`]).
//!
//! Everything is exact: no floats, no randomness in any verdict, and every
//! suite failure carries a witness that can be checked by hand.

pub mod algebra;
pub mod arith;
pub mod cobar;
pub mod fixtures;
pub mod gf2;
pub mod groebner;
pub mod hopf;
pub mod parse;
pub mod resolution;
pub mod spectra;
pub mod steenrod;
pub mod suite;
pub mod grading;
