//! Exact symbolic trigonometry built on unit-hypotenuse right triangles.
//!
//! The engine models the six trigonometric functions as side lengths of
//! similar right triangles with hypotenuse 1, works in a free polynomial
//! ring over those side lengths (no identity between sin and cos is ever
//! assumed), and certifies the Pythagorean identity by explicit ideal-
//! membership witnesses extracted from straightedge constructions.
//!
//! Module map:
//! - [`exactnum`] — exact arithmetic over rationals extended by square roots
//! - [`trigexpr`] — free commutative ring in sin/cos indeterminates
//! - [`construction`] — triangles, figures, gluings, planar layout
//! - [`figures`] — named figure registry for rendering and validation
//! - [`derive`] — derivations of the standard formulas with traces
//! - [`proofs`] — membership certificates for the identity proofs
//! - [`solver`] — exact worked-problem solving on top of the above

pub mod construction;
pub mod derive;
pub mod exactnum;
pub mod figures;
pub mod proofs;
pub mod solver;
pub mod trigexpr;
