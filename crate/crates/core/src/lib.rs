//! Exact invariants of twist-roll-spun 2-knots.
//!
//! The pipeline runs from combinatorial input (braid words, group
//! presentations, Seifert parameters) through free differential calculus to
//! Alexander ideals, and from lattice-counting tau sequences through graded
//! roots to the absolute degree of the natural involution on the summand of
//! a spun knot. Everything is computed over exact integer and rational
//! arithmetic; no floating point appears anywhere.

mod error;

pub mod alexander;
pub mod degree;
pub mod floer;
pub mod fox;
pub mod knots;
pub mod laurent;

pub use error::{Error, ParseError, Result};
