//! Recovery scoring and the achievability threshold.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::CliqueSet;
use crate::model::{ModelParams, VertexSet};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub true_count: usize,
    pub est_count: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub sym_diff: usize,
    /// `sym_diff / max(1, true_count)`.
    pub ratio: f64,
    /// Set when the truth was empty; the ratio is then not a relative error.
    pub empty_truth: bool,
}

/// Compare the true degree-`degree` hyperedges with an estimate.
pub fn recovery_report(
    degree: usize,
    truth: &BTreeSet<VertexSet>,
    estimate: &CliqueSet,
) -> Result<RecoveryReport> {
    if estimate.size != degree {
        return Err(Error::DegreeMismatch {
            truth: degree,
            estimate: estimate.size,
        });
    }
    if let Some(bad) = truth.iter().find(|e| e.len() != degree) {
        return Err(Error::DegreeMismatch {
            truth: bad.len(),
            estimate: estimate.size,
        });
    }
    let common = truth.intersection(&estimate.cliques).count();
    let false_positives = estimate.len() - common;
    let false_negatives = truth.len() - common;
    let sym_diff = false_positives + false_negatives;
    Ok(RecoveryReport {
        true_count: truth.len(),
        est_count: estimate.len(),
        false_positives,
        false_negatives,
        sym_diff,
        ratio: sym_diff as f64 / truth.len().max(1) as f64,
        empty_truth: truth.is_empty(),
    })
}

/// `(d - 2)/d + 2 δ_j / (d (d - 1)) - δ*`; positive exactly when recovery is achievable.
pub fn threshold_margin<T: Scalar>(d: usize, delta_j: T, delta_star: T) -> T {
    let dd = T::from_count(d);
    let two = T::from_count(2);
    let rhs = (dd.clone() - two.clone()) / dd.clone()
        + two * delta_j / (dd.clone() * (dd - T::one()));
    rhs - delta_star
}

/// Strict threshold inequality in its margin form.
pub fn threshold_holds<T: Scalar>(d: usize, delta_j: T, delta_star: T) -> bool {
    threshold_margin(d, delta_j, delta_star) > T::zero()
}

/// Density form: the all-edges noise exponent `C(d,2)(δ* - 1)` sits strictly
/// below the true-hyperedge exponent `1 - d + δ_j`.
pub fn density_condition_holds<T: Scalar>(d: usize, delta_j: T, delta_star: T) -> bool {
    let pairs = T::from_count(d * (d - 1) / 2);
    let noise = pairs.clone() * delta_star - pairs;
    let truth = T::one() - T::from_count(d) + delta_j;
    noise < truth
}

/// `(d - 1)/(d + 1)`, the single-class threshold on δ.
pub fn uniform_threshold<T: Scalar>(d: usize) -> T {
    T::from_count(d - 1) / T::from_count(d + 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Achievability {
    pub achievable: bool,
    pub margin: f64,
}

/// Evaluate the threshold for class `target_class` of `params`.
///
/// The boolean is decided in exact rational arithmetic on the binary values of
/// the exponents, so it always agrees with the density form. A margin of
/// exactly zero reports `false`.
pub fn achievability_predicate(params: &ModelParams, target_class: usize) -> Result<Achievability> {
    let class = params.classes.get(target_class).ok_or_else(|| {
        Error::InvalidArgument(format!("no class with index {target_class}"))
    })?;
    let d = class.degree;
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let exact = |x: f64| Ratio::<BigInt>::from_f64(x).expect("finite exponent");
    let delta_j = exact(class.exponent);
    let delta_star = exact(params.delta_star());
    let margin = threshold_margin(d, delta_j.clone(), delta_star.clone());
    let achievable = margin > Ratio::from_integer(BigInt::from(0));
    debug_assert_eq!(achievable, density_condition_holds(d, delta_j, delta_star));
    Ok(Achievability {
        achievable,
        margin: margin.to_f64().unwrap_or(f64::NAN),
    })
}
