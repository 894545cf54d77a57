//! Exact-arithmetic engine for decomposing Kirillov-Reshetikhin-type modules
//! into irreducible Lie-algebra characters.
//!
//! The pieces:
//! - [`lie`]: Cartan data, weight/root coordinates, dominance, Weyl dimensions,
//!   Freudenthal weight multiplicities.
//! - [`kr`]: the raw fermionic multiplicity sum over partition configurations
//!   (the brute-force oracle, all simple types).
//! - [`tree`]: the Weyl-chamber tree algorithm for simply-laced algebras; the
//!   fast path that replaces the intractable enumeration.
//! - [`rect`]: the Young-diagram specialization for sl_n, decomposing tensor
//!   products of rectangles; Kostka numbers as a special case.
//! - [`ring`]: the representation ring -- virtual characters, tensor products
//!   via the dominant-chamber reflection scheme, exact division, and the C_n
//!   column crystal rule as an independent tensoring route.
//! - [`qsystem`]: the Q-system character recurrences, KR initial data, and
//!   negative-multiplicity witnesses for perturbed initial data.
//! - [`growth`]: path-type analysis and the asymptotic degree of dim W_m(l).
//! - [`render`]: deterministic text/JSON/DOT output.

pub mod growth;
pub mod kr;
pub mod lie;
pub mod qsystem;
pub mod rect;
pub mod render;
pub mod ring;
pub mod tree;
pub mod util;
