//! Parameter recipe turning a diameter budget `D'` and size budget `n'` into
//! a concrete subdivided grid graph with a long indistinguishable prefix.

use serde::{Deserialize, Serialize};

use super::family::{build_g, GridIndex, WitnessPair};
use super::subdivision::subdivide;
use super::ConstructionError;
use crate::graph::PortLabeledGraph;

/// Smallest admissible `n'` is `D' * 2^12 / 3`.
const SIZE_FACTOR: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremParameters {
    pub d_prime: u64,
    pub n_prime: u64,
    pub l: u32,
    /// Subdivision length: the largest odd `D` with `3D <= D'`.
    pub d: usize,
    /// `D (l - 1)`.
    pub guaranteed_equal_depth: usize,
    /// `(D' - 5)/6 * log2(n'/D') - 0.41 D'`.
    pub bound: f64,
}

impl TheoremParameters {
    pub fn derive(d_prime: u64, n_prime: u64) -> Result<Self, ConstructionError> {
        if d_prime < 3 || 3 * (n_prime as u128) < (d_prime as u128) * (SIZE_FACTOR as u128) {
            return Err(ConstructionError::Hypothesis { d_prime, n_prime });
        }
        let mut d = d_prime / 3;
        if d.is_multiple_of(2) {
            d -= 1;
        }
        // l = floor(log2(3n'/D') / 2): the largest l with D' * 4^l <= 3n'.
        let budget = 3 * n_prime as u128;
        let mut l = 0u32;
        while (d_prime as u128) << (2 * (l + 1)) <= budget {
            l += 1;
        }
        let bound = (d_prime as f64 - 5.0) / 6.0 * (n_prime as f64 / d_prime as f64).log2()
            - 0.41 * d_prime as f64;
        Ok(TheoremParameters {
            d_prime,
            n_prime,
            l,
            d: d as usize,
            guaranteed_equal_depth: d as usize * (l as usize - 1),
            bound,
        })
    }
}

#[derive(Debug, Clone)]
pub struct TheoremInstance {
    pub parameters: TheoremParameters,
    pub grid: GridIndex,
    pub graph: PortLabeledGraph,
    pub witnesses: WitnessPair,
    pub diameter: usize,
}

/// Builds `ξ_D(G_l)` for the derived parameters and checks size, diameter and
/// the depth inequality.
pub fn theorem_instance(d_prime: u64, n_prime: u64) -> Result<TheoremInstance, ConstructionError> {
    let parameters = TheoremParameters::derive(d_prime, n_prime)?;
    let (base, grid) = build_g(parameters.l)?;
    let (graph, _) = subdivide(&base, parameters.d)?;
    if graph.node_count() as u64 > n_prime {
        return Err(ConstructionError::CheckFailed(format!(
            "node count {} exceeds n' = {n_prime}",
            graph.node_count()
        )));
    }
    let diameter = graph.diameter()?;
    if diameter as u64 > d_prime {
        return Err(ConstructionError::CheckFailed(format!(
            "diameter {diameter} exceeds D' = {d_prime}"
        )));
    }
    if (parameters.guaranteed_equal_depth as f64) < parameters.bound {
        return Err(ConstructionError::CheckFailed(format!(
            "guaranteed depth {} below bound {}",
            parameters.guaranteed_equal_depth, parameters.bound
        )));
    }
    Ok(TheoremInstance { parameters, grid, witnesses: grid.witnesses(), graph, diameter })
}
