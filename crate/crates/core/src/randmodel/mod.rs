//! The random multiplicative model `L(a) = sum_n a_n X_n / n` with
//! independent Rademacher `X_p`.

pub mod coeffs;
pub mod constants;
pub mod decompose;
pub mod estimate;
pub mod euler;
pub mod moments;
pub mod sample;

pub use coeffs::{series_eval, CoefficientSpec, Parity, SeriesEvaluator};
pub use constants::{conditional_mean_1_8, xi_statistics, XiStatistics};
pub use decompose::{decompose_rational, Character, RationalDecomposition, Term};
pub use estimate::{estimate_combined, estimate_positivity, Evaluator, PositivityEstimate, SimulationConfig};
pub use euler::{euler_eval, euler_product, EulerEvaluator};
pub use moments::{moment_by_divisors, moment_direct, moment_monte_carlo, MomentEstimate};
pub use sample::{lambda_twist, sample_multiplicative, MultiplicativeSample, SignTable};
