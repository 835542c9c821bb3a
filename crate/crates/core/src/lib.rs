//! Adams E2 charts over the mod 2 Steenrod algebra and its subalgebras A(n),
//! computed from minimal free resolutions, together with the
//! Adams-filtration criterion that bounds where the space-level Hurewicz map
//! of an infinite loop space can be nonzero.
//!
//! The pieces, bottom up:
//!
//! - [`f2core`]: dense linear algebra over F2.
//! - [`steenrod`]: admissible-basis arithmetic in A and A(n).
//! - [`fpmodule`]: finitely presented modules and free-module maps.
//! - [`resolve`]: minimal resolutions and Ext dimensions.
//! - [`chart`]: Adams charts, the ko cover transform, text/ASCII/SVG output.
//! - [`hurewicz`]: the vanishing criterion and the ko<c> workflow.
//! - [`cli`]: the `adams-hurewicz` command.

pub mod chart;
pub mod cli;
pub mod f2core;
pub mod fpmodule;
pub mod hurewicz;
pub mod resolve;
pub mod steenrod;
