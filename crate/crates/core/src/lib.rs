//! Exact invariants, entropy bounds and Einstein obstructions for formal
//! connected sums of closed oriented 4-manifolds.
#![no_std]

extern crate alloc;

pub mod blocks;
pub mod entropy;
pub mod exactnum;
pub mod exprlang;
pub mod facts;
pub mod families;
pub mod forms;
pub mod obstructions;
pub mod sums;
