//! Exact counting algorithms from enumerative and algebraic combinatorics.
//!
//! Every fast counting path in this crate has a brute-force counterpart that
//! shares none of its machinery, so results can be cross-checked on small
//! instances:
//!
//! | fast path | oracle |
//! |-----------|--------|
//! | [`debruijn::count_pn_cycles`] | [`debruijn::enumerate_pn_cycles`] |
//! | [`eulertours::count_euler_tours`] (BEST) | [`eulertours::enumerate_euler_tours`] |
//! | [`eulertours::count_arborescences`] (matrix-tree) | [`eulertours::enumerate_arborescences`] |
//! | [`dimers::count_matchings_fkt`] | [`dimers::count_matchings_bruteforce`] |
//! | [`polya::pattern_inventory`] | [`polya::orbit_inventory_oracle`] |
//! | [`permshapes::psi`] | [`permshapes::psi_bruteforce`] |
//! | [`planetrees::count_plane_trees`] | [`planetrees::enumerate_plane_trees`] |
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classics;
pub mod debruijn;
pub mod dimers;
mod error;
pub mod eulertours;
pub mod exactalg;
pub mod permshapes;
pub mod planetrees;
pub mod polya;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
