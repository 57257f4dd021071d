//! Bent functions from partial spreads built out of the kernels of linear
//! recurring sequence maps over GF(2^l).
//!
//! The pipeline runs field arithmetic ([`gf2e`]) → polynomials ([`poly`]) →
//! kernels and partial spreads ([`lrs_spread`]) → truth tables and spectra
//! ([`boolfun`]) → 2-ranks ([`rank2`]). Pools and family enumeration live in
//! [`families`], batch sweeps and the CSV format in [`analysis`].

pub mod analysis;
pub mod boolfun;
pub mod error;
pub mod families;
pub mod gf2e;
pub mod lrs_spread;
pub mod poly;
pub mod rank2;

pub use boolfun::TruthTable;
pub use error::{Error, Result};
pub use families::{CandidatePool, FamilyRule, FamilySpec, SpreadType};
pub use gf2e::{FieldElement, FieldSpec};
pub use lrs_spread::Subspace;
pub use poly::Poly;
pub use rank2::{Classification, RankReport};
