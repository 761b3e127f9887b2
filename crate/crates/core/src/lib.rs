pub mod discrimination;
pub mod error;
pub mod experiments;
mod linalg;
pub mod measures;
pub mod prob;
pub mod rate;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

pub type ProbVector64 = prob::ProbVector<f64>;
pub type ProbVector32 = prob::ProbVector<f32>;
pub type MembershipMatrix64 = prob::MembershipMatrix<f64>;
pub type MembershipMatrix32 = prob::MembershipMatrix<f32>;
pub type Channel64 = prob::Channel<f64>;
pub type Channel32 = prob::Channel<f32>;
pub type InfoMatrix64 = measures::InfoMatrix<f64>;
pub type InfoMatrix32 = measures::InfoMatrix<f32>;
pub type FidelityProblem64 = rate::FidelityProblem<f64>;
pub type FidelityProblem32 = rate::FidelityProblem<f32>;
pub type RatePoint64 = rate::RatePoint<f64>;
pub type RatePoint32 = rate::RatePoint<f32>;
pub type RateCurve64 = rate::RateCurve<f64>;
pub type RateCurve32 = rate::RateCurve<f32>;
