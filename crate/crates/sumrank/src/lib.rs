pub mod csc;
pub mod decoder;
pub mod error;
mod fp;
pub mod gf_tower;
pub mod linalg;
pub mod lrs;
pub mod quotient_rings;
pub mod skew_poly;
pub mod srbch;
pub mod sum_rank;
pub mod upoly;

pub use error::{Error, Result};
pub use gf_tower::{Elem, Tower, TowerParams};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/towers.md")]
    mod towers {}
    #[doc = include_str!("../../../book/src/skew_polynomials.md")]
    mod skew_polynomials {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/sum_rank.md")]
    mod sum_rank {}
    #[doc = include_str!("../../../book/src/csc_codes.md")]
    mod csc_codes {}
    #[doc = include_str!("../../../book/src/lrs.md")]
    mod lrs {}
    #[doc = include_str!("../../../book/src/srbch.md")]
    mod srbch {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
