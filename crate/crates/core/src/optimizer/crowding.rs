//! Neighbour-gap density estimates on a bi-objective front.
//!
//! All functions take objective pairs already sorted ascending by the first
//! objective (and therefore descending by the second on a Pareto set).

use serde::{Deserialize, Serialize};

/// How each sub-crowding-distance is scaled before summation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "ranges")]
pub enum Normalization {
    /// Divide by the spread of that objective over the archive.
    #[default]
    ArchiveRange,
    /// Divide by a fixed value range per objective.
    NominalRange([f64; 2]),
}

/// Absolute crowding distance of every entry.
///
/// Interior entries sum the gaps between their two neighbours; both
/// boundary entries take the largest interior value. Fronts with fewer than
/// three entries have no interior and get zeros.
pub fn crowding_absolute(objectives: &[[f64; 2]]) -> Vec<f64> {
    let len = objectives.len();
    if len < 3 {
        return vec![0.0; len];
    }
    let mut out = vec![0.0; len];
    for i in 1..len - 1 {
        out[i] = (0..2)
            .map(|k| (objectives[i + 1][k] - objectives[i - 1][k]).abs())
            .sum();
    }
    let boundary = out[1..len - 1].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    out[0] = boundary;
    out[len - 1] = boundary;
    out
}

/// Crowding distance vector and relative crowding distance of every entry.
///
/// Boundary components are twice the gap to the single neighbour. A zero
/// range contributes nothing to the relative distance.
pub fn crowding_vectors(objectives: &[[f64; 2]], normalization: Normalization) -> Vec<([f64; 2], f64)> {
    let len = objectives.len();
    if len < 3 {
        return vec![([0.0; 2], 0.0); len];
    }
    let ranges = match normalization {
        Normalization::NominalRange(r) => r,
        Normalization::ArchiveRange => {
            let mut r = [0.0; 2];
            for (k, rk) in r.iter_mut().enumerate() {
                let (lo, hi) = objectives.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| {
                    (lo.min(o[k]), hi.max(o[k]))
                });
                *rk = hi - lo;
            }
            r
        }
    };
    (0..len)
        .map(|i| {
            let mut cdv = [0.0; 2];
            for (k, eta) in cdv.iter_mut().enumerate() {
                *eta = if i == 0 {
                    2.0 * (objectives[1][k] - objectives[0][k]).abs()
                } else if i == len - 1 {
                    2.0 * (objectives[len - 1][k] - objectives[len - 2][k]).abs()
                } else {
                    (objectives[i + 1][k] - objectives[i - 1][k]).abs()
                };
            }
            let rcd = cdv
                .iter()
                .zip(ranges)
                .map(|(eta, range)| if range > 0.0 { eta / range } else { 0.0 })
                .sum();
            (cdv, rcd)
        })
        .collect()
}
