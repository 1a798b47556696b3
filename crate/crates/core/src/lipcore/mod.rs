//! LIP-consistency of finite samples, circuits, Newton series, closure
//! checks, and the catalog of explicit function families.

mod catalog;
mod growth;
mod newton;
mod verdict;

pub use catalog::{catalog_eval, catalog_eval_capped, CatalogEntry, FunctionSpec, SigmaSpec, DEFAULT_CAP_TERMS};
pub use growth::{example1_bound, factorial_threshold, growth_floor_check, tau_sequence, GrowthFloor};
pub use newton::{
    newton_decompose, newton_eval, standard_position, standard_sigma, Decomposition, Enumeration, NewtonSeries,
};
pub use verdict::{
    exchange_identity_check, find_circuit, lip_check, pairwise_divisibility_check, validate_circuit, Circuit,
    LipVerdict,
};

pub(crate) use verdict::lip_check_points;

use crate::error::Result;
use crate::exactpoly::{discrete_derivative_sample, IntPolynomial, Sample};
use crate::numeric::Integer;

/// Samples `x -> p(q(x))` and `x -> (δp)(x)` on `window` and checks both for
/// LIP-consistency. Returns `(composition consistent, derivative consistent)`.
pub fn closure_check(p: &IntPolynomial, q: &IntPolynomial, window: &[Integer]) -> Result<(bool, bool)> {
    let composed = Sample::from_fn(window, |x| p.eval(&q.eval(x)))?;
    let values = Sample::from_fn(window, |x| p.eval(x))?;
    let delta = discrete_derivative_sample(&values)?;
    Ok((lip_check(&composed).is_consistent(), lip_check(&delta).is_consistent()))
}
