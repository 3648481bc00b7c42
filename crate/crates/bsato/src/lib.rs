//! Exact symbolic toolkit for desk-checking b-function root certificates of
//! hyperplane arrangements and, more generally, homogeneous polynomials.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals, all
//! linear algebra is fraction-free-ish Gaussian elimination over `Q`, and no
//! floating point appears anywhere.  The pieces:
//!
//! * [`poly`] / [`spoly`]: sparse multivariate polynomials over `Q`, and
//!   polynomials with an extra central variable `s`.
//! * [`forms`]: polynomial differential forms with exterior derivative,
//!   wedge, and the Euler contraction used in the Koszul-style homotopy.
//! * [`weyl`]: the rational Weyl algebra `D[s]` in `x`-left normal form,
//!   anti-normal ordering, and the combinatorial membership test for the
//!   left ideal generated by the coordinates.
//! * [`fs`]: the `D[s]`-module generated by the symbol `f^s`, with operator
//!   application, the `s -> s+1` shift, annihilator and b-function pair
//!   checks, and the Euler root witness for homogeneous `f`.
//! * [`arrangement`]: central arrangements with multiplicities, dense edges,
//!   the nonresonance condition, epsilon weights and their perturbation,
//!   and the full analysis pipeline.
//! * [`lattice`]: intersection-lattice invariants (Mobius function,
//!   characteristic polynomial, projective Euler characteristic), nbc bases
//!   of the Orlik-Solomon algebra, and Aomoto complex Betti numbers.
//! * [`homog`]: Euler-type relations for homogeneous polynomials, bidegree
//!   splits, separability of a split, and the fixed-coordinate screen.
//!
//! Each capability ships with a runnable demonstration under `examples/`:
//!
//! ```text
//! cargo run --example forms_calculus        exterior calculus and the homotopy h
//! cargo run --example weyl_normal_form      normal and anti-normal ordering
//! cargo run --example ideal_membership      ideal membership and the sigma invariant
//! cargo run --example fs_action             operators acting on f^s, t-shift
//! cargo run --example bs_pair               verifying b-function pairs
//! cargo run --example euler_identity        the Euler root witness -n/d
//! cargo run --example arrangement_analysis  dense edges, condition (R), epsilon, residues
//! cargo run --example lattice_invariants    Mobius, characteristic polynomial, nbc, Aomoto
//! cargo run --example homogeneous_screen    Euler relations, splits, separability
//! ```
//!
//! A thin `bsato` binary exposes the same operations as subcommands
//! (`analyze-arrangement`, `weyl-normalize`, `ideal-check`,
//! `annihilator-check`, `bs-check`, `fs-apply`, `euler-witness`,
//! `homog-screen`, `lattice`, `selftest`); see the README for the formats.

pub mod arrangement;
pub mod error;
pub mod forms;
pub mod fs;
pub mod homog;
pub mod lattice;
pub mod linalg;
pub mod multiindex;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod report;
pub mod selftest;
pub mod spoly;
pub mod weyl;

pub use error::Error;
pub use rat::Rat;
