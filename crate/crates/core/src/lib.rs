//! Spectral radii, weighted-incidence certificates and structural
//! classification of uniform hypergraphs near the spectral threshold
//! `(r−1)!·(2+√5)^{1/r}`.

pub mod acceptance;
pub mod beta;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod labeling;
pub mod random;
pub mod roots;
pub mod scalar;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use hypergraph::{validate, Hypergraph, PartialHypergraph};
pub use scalar::Scalar;

pub type BetaParams64 = beta::BetaParams<f64>;
pub type WeightedIncidence64 = labeling::WeightedIncidence<f64>;
pub type Certificate64 = labeling::Certificate<f64>;
pub type Verdict64 = labeling::Verdict<f64>;
pub type SpectralResult64 = spectral::SpectralResult<f64>;

pub type BetaParams32 = beta::BetaParams<f32>;
pub type WeightedIncidence32 = labeling::WeightedIncidence<f32>;
pub type Certificate32 = labeling::Certificate<f32>;
pub type SpectralResult32 = spectral::SpectralResult<f32>;
