//! Combinatorial and algebraic toolkit for books of I-bundles.
//!
//! The crate models pared 3-manifolds of book type through their JSJ data
//! ([`jsj`]), does exact arithmetic in the fundamental group of a book and its
//! Dehn-twist automorphisms ([`amalgam`]), evaluates relation-exact
//! representations into `SL(2, C)` ([`repvar`]), handles finite metric trees
//! dual to arc systems in a disc ([`rtree`]), classifies Fenchel–Nielsen data
//! over a pants decomposition ([`teich`]), and ties these together in the
//! convergence/rectification pipeline ([`verifier`]).

pub mod amalgam;
pub mod cli;
pub mod error;
pub mod jsj;
pub mod repvar;
pub mod rtree;
pub mod teich;
pub mod verifier;

pub use error::{Error, Result};
