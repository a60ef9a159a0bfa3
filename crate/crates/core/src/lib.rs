//! Finite-groupoid TQFT workbench: cobordism terms, span-valued evaluation,
//! Frobenius relation checks and exact coadjoint-orbit computations.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod cob2;
pub mod frobenius;
pub mod groupoid;
pub mod lie;
