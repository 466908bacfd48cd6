//! Length lower bounds for self-intersecting geodesics and the resulting
//! bound on orbits that contain a short curve.

use num_bigint::BigUint;
use thiserror::Error;

use crate::census::{CensusError, CensusStore};
use crate::counting::{count_orbits_all_genera, CountMode};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("length bound must be positive and finite, got {0}")]
    BadLength(f64),
    #[error("c_X must be non-negative and finite, got {0}")]
    BadConstant(f64),
    #[error("bound needs censuses up to rank {required}, above the maximum rank {max}")]
    BudgetExceedsCensus { required: u64, max: usize },
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// Length bound, systole-type constant and signature of a hyperbolic
/// surface. `c_x` is 0 for cusped surfaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicParams {
    pub length: f64,
    pub c_x: f64,
    pub genus: u64,
    pub punctures: u64,
}

impl HyperbolicParams {
    pub fn new(length: f64, c_x: f64, genus: u64, punctures: u64) -> Result<Self, GeometryError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(GeometryError::BadLength(length));
        }
        if !(c_x.is_finite() && c_x >= 0.0) {
            return Err(GeometryError::BadConstant(c_x));
        }
        Ok(HyperbolicParams {
            length,
            c_x,
            genus,
            punctures,
        })
    }
}

/// Least possible length of a geodesic with `k >= 1` self-intersections:
/// `max(c_X sqrt(k), ln(2k) / 4)`.
pub fn basmajian_min_length(k: u64, c_x: f64) -> f64 {
    assert!(k >= 1, "bound is stated for k >= 1");
    let k = k as f64;
    (c_x * k.sqrt()).max((2.0 * k).ln() / 4.0)
}

/// `floor(min((L / c_X)^2, e^(4L) / 2)) + 1`, the first self-intersection
/// count that cannot occur on a geodesic of length at most `L`. With
/// `c_X = 0` the first term is infinite. Saturates at `u64::MAX`.
pub fn intersection_budget(length: f64, c_x: f64) -> u64 {
    let log_branch = (4.0 * length).exp() / 2.0;
    let bound = if c_x > 0.0 {
        let ratio = length / c_x;
        (ratio * ratio).min(log_branch)
    } else {
        log_branch
    };
    let floor = bound.floor();
    if floor >= u64::MAX as f64 {
        u64::MAX
    } else {
        floor as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortOrbitBound {
    pub budget: u64,
    /// Iso-mode orbit count for each `k < budget`, summed over genus.
    pub per_k: Vec<BigUint>,
    pub bound: BigUint,
}

/// Upper bound for the number of orbits containing a curve of length at
/// most `L`: the sum of iso-mode orbit counts for `k < a_X(L)`.
pub fn short_orbit_bound(
    params: &HyperbolicParams,
    store: &mut CensusStore,
) -> Result<ShortOrbitBound, GeometryError> {
    let budget = intersection_budget(params.length, params.c_x);
    let max = store.config().max_rank;
    if budget - 1 > max as u64 {
        return Err(GeometryError::BudgetExceedsCensus {
            required: budget - 1,
            max,
        });
    }
    let mut per_k = Vec::with_capacity(budget as usize);
    for k in 0..budget as usize {
        let census = store.get(k)?;
        per_k.push(count_orbits_all_genera(
            &census,
            params.genus,
            params.punctures,
            CountMode::Iso,
        ));
    }
    let bound = per_k.iter().sum();
    Ok(ShortOrbitBound {
        budget,
        per_k,
        bound,
    })
}
