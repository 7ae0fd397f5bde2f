#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod algebra;
pub mod groupoid;
pub mod moore;
pub mod nerve;
pub mod sequences;
pub mod sft;
