//! Partial sums of Legendre symbols `L(alpha, p)`, the random multiplicative
//! function model of their sign, and the tail bounds that turn the model into
//! density statements.

pub mod alpha;
pub mod charsum;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod output;
pub mod primes;
pub mod randmodel;
pub mod tails;

pub use alpha::{Alpha, Rational};
pub use error::{Error, Result};
