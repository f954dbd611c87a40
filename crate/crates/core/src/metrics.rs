//! Comparison of solution sets in (coverage ratio, lowest RTSN in dB) space.

use serde::{Deserialize, Serialize};

use crate::scenario::ObjectiveVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub coverage_ratio: f64,
    pub lowest_rtsn_db: f64,
}

impl FrontPoint {
    pub const fn new(coverage_ratio: f64, lowest_rtsn_db: f64) -> Self {
        Self {
            coverage_ratio,
            lowest_rtsn_db,
        }
    }

    pub fn get(&self, objective: Objective) -> f64 {
        match objective {
            Objective::CoverageRatio => self.coverage_ratio,
            Objective::LowestRtsn => self.lowest_rtsn_db,
        }
    }
}

impl From<&ObjectiveVector> for FrontPoint {
    fn from(o: &ObjectiveVector) -> Self {
        Self::new(o.coverage_ratio, o.lowest_rtsn_db())
    }
}

pub type ReferencePoint = FrontPoint;

/// Reference point used for the dominated-space indicator: 0.15 coverage
/// and -15 dB.
pub const DEFAULT_REFERENCE: ReferencePoint = FrontPoint::new(0.15, -15.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    CoverageRatio,
    LowestRtsn,
}

/// Maximization dominance.
pub fn dominates(a: &FrontPoint, b: &FrontPoint) -> bool {
    a.coverage_ratio >= b.coverage_ratio
        && a.lowest_rtsn_db >= b.lowest_rtsn_db
        && (a.coverage_ratio > b.coverage_ratio || a.lowest_rtsn_db > b.lowest_rtsn_db)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AverageImprovement {
    /// `None` when no control point is dominated by any improved point.
    pub value: Option<f64>,
    /// Control points with at least one dominating improved point.
    pub considered: usize,
    /// Control points nothing dominates; left out of the average.
    pub skipped: usize,
}

/// Mean over control points of the mean gain in `objective` of the improved
/// points that dominate them. Lowest-RTSN gains are in dB.
pub fn average_improvement(
    improved: &[FrontPoint],
    control: &[FrontPoint],
    objective: Objective,
) -> AverageImprovement {
    let mut total = 0.0;
    let mut considered = 0;
    let mut skipped = 0;
    for z in control {
        let gains: Vec<f64> = improved
            .iter()
            .filter(|i| dominates(i, z))
            .map(|i| i.get(objective) - z.get(objective))
            .collect();
        if gains.is_empty() {
            skipped += 1;
        } else {
            total += gains.iter().sum::<f64>() / gains.len() as f64;
            considered += 1;
        }
    }
    AverageImprovement {
        value: (considered > 0).then(|| total / considered as f64),
        considered,
        skipped,
    }
}

/// Exact area weakly dominated by `front` and bounded below by `reference`.
pub fn dominated_space(front: &[FrontPoint], reference: &ReferencePoint) -> f64 {
    let mut pts: Vec<FrontPoint> = front
        .iter()
        .copied()
        .filter(|p| p.coverage_ratio > reference.coverage_ratio && p.lowest_rtsn_db > reference.lowest_rtsn_db)
        .collect();
    pts.sort_by(|a, b| {
        b.coverage_ratio
            .total_cmp(&a.coverage_ratio)
            .then(b.lowest_rtsn_db.total_cmp(&a.lowest_rtsn_db))
    });
    let mut area = 0.0;
    let mut floor = reference.lowest_rtsn_db;
    for p in pts {
        if p.lowest_rtsn_db > floor {
            area += (p.coverage_ratio - reference.coverage_ratio) * (p.lowest_rtsn_db - floor);
            floor = p.lowest_rtsn_db;
        }
    }
    area
}

/// Fraction of `targets` dominated by at least one point of `by`.
pub fn dominated_fraction(targets: &[FrontPoint], by: &[FrontPoint]) -> f64 {
    if targets.is_empty() {
        return 0.0;
    }
    let n = targets
        .iter()
        .filter(|t| by.iter().any(|b| dominates(b, t)))
        .count();
    n as f64 / targets.len() as f64
}

/// Non-dominated, de-duplicated subset, in input order.
pub fn non_dominated(points: &[FrontPoint]) -> Vec<FrontPoint> {
    points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            !points
                .iter()
                .enumerate()
                .any(|(j, q)| dominates(q, p) || (j < *i && q == *p))
        })
        .map(|(_, p)| *p)
        .collect()
}
