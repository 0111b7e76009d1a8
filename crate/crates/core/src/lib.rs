pub mod approximations;
pub mod coefficients;
pub mod error;
pub mod exact;
pub mod precision;
pub mod verification;
