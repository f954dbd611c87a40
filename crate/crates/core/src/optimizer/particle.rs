//! Particle state, velocity/position update and feasibility repair.

use rand::Rng;

use crate::scenario::{DeploymentVector, ObjectiveVector, Region};

/// Feasible set of flattened deployments `(x_1..x_J, y_1..y_J, rho_1..rho_J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    pub placement: Region,
    pub num_nodes: usize,
    /// Per-dimension velocity limit, length 3J.
    pub velocity_limits: Vec<f64>,
}

impl SearchSpace {
    /// One limit for every dimension.
    pub fn new(placement: Region, num_nodes: usize, v_max: f64) -> Self {
        Self::with_limits(placement, num_nodes, v_max, v_max)
    }

    /// Separate limits for the position and power-ratio dimensions.
    pub fn with_limits(placement: Region, num_nodes: usize, v_position: f64, v_power: f64) -> Self {
        let mut velocity_limits = vec![v_position; 2 * num_nodes];
        velocity_limits.extend(std::iter::repeat_n(v_power, num_nodes));
        Self {
            placement,
            num_nodes,
            velocity_limits,
        }
    }

    pub fn dims(&self) -> usize {
        3 * self.num_nodes
    }

    /// Positions uniform over the placement region, power ratios uniform on
    /// the budget simplex direction (normalized uniform draws).
    pub fn sample_position<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let j = self.num_nodes;
        let p = &self.placement;
        let mut x = Vec::with_capacity(3 * j);
        x.extend((0..j).map(|_| p.origin.x + rng.gen::<f64>() * p.width));
        x.extend((0..j).map(|_| p.origin.y + rng.gen::<f64>() * p.height));
        let raw: Vec<f64> = (0..j).map(|_| 1.0 - rng.gen::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        x.extend(raw.iter().map(|r| j as f64 * r / total));
        x
    }

    pub fn sample_velocity<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.velocity_limits
            .iter()
            .map(|v| rng.gen_range(-1.0..=1.0) * v)
            .collect()
    }

    /// Clamps positions into the placement region (zeroing the velocity of
    /// clamped dimensions) and projects power ratios onto `sum rho = J`.
    pub fn repair(&self, position: &mut [f64], velocity: &mut [f64]) {
        let j = self.num_nodes;
        let p = &self.placement;
        let bounds = [(p.origin.x, p.x_max()), (p.origin.y, p.y_max())];
        for (axis, &(lo, hi)) in bounds.iter().enumerate() {
            for i in axis * j..(axis + 1) * j {
                if position[i] < lo {
                    position[i] = lo;
                    velocity[i] = 0.0;
                } else if position[i] > hi {
                    position[i] = hi;
                    velocity[i] = 0.0;
                }
            }
        }
        repair_power(&mut position[2 * j..]);
    }
}

/// Clamps ratios to be nonnegative and rescales them to sum to their count;
/// an all-zero vector becomes uniform.
pub fn repair_power(ratios: &mut [f64]) {
    let j = ratios.len() as f64;
    for r in ratios.iter_mut() {
        if !(*r > 0.0) {
            *r = 0.0;
        }
    }
    let total: f64 = ratios.iter().sum();
    if total > 0.0 && total.is_finite() {
        ratios.iter_mut().for_each(|r| *r *= j / total);
    } else {
        ratios.iter_mut().for_each(|r| *r = 1.0);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoCoefficients {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub objectives: ObjectiveVector,
    pub pbest_position: Vec<f64>,
    pub pbest_objectives: ObjectiveVector,
}

impl Particle {
    /// A particle whose personal best is its starting point.
    pub fn new(position: Vec<f64>, velocity: Vec<f64>, objectives: ObjectiveVector) -> Self {
        Self {
            pbest_position: position.clone(),
            pbest_objectives: objectives,
            position,
            velocity,
            objectives,
        }
    }

    pub fn deployment(&self) -> DeploymentVector {
        DeploymentVector::from_flat(&self.position)
    }
}

/// Inertia-weighted velocity step towards the personal and global bests,
/// followed by velocity clamping and feasibility repair.
pub fn update_particle<R: Rng>(
    particle: &mut Particle,
    gbest: &[f64],
    inertia: f64,
    coeffs: PsoCoefficients,
    space: &SearchSpace,
    rng: &mut R,
) {
    let dims = particle.position.len();
    debug_assert_eq!(dims, space.dims());
    debug_assert_eq!(gbest.len(), dims);
    for d in 0..dims {
        let r1: f64 = rng.gen();
        let r2: f64 = rng.gen();
        let x = particle.position[d];
        let v = inertia * particle.velocity[d]
            + coeffs.c1 * r1 * (particle.pbest_position[d] - x)
            + coeffs.c2 * r2 * (gbest[d] - x);
        let limit = space.velocity_limits[d];
        particle.velocity[d] = v.clamp(-limit, limit);
        particle.position[d] = x + particle.velocity[d];
    }
    space.repair(&mut particle.position, &mut particle.velocity);
}

/// Replaces the personal best only when the new objectives dominate it.
pub fn update_pbest(particle: &mut Particle, objectives: ObjectiveVector) {
    particle.objectives = objectives;
    if objectives.dominates(&particle.pbest_objectives) {
        particle.pbest_objectives = objectives;
        particle.pbest_position.clone_from(&particle.position);
    }
}

/// Replaces the personal best when objective `k` improves, ties broken by
/// the other objective.
pub fn update_pbest_scalar(particle: &mut Particle, objectives: ObjectiveVector, k: usize) {
    particle.objectives = objectives;
    if scalar_better(&objectives, &particle.pbest_objectives, k) {
        particle.pbest_objectives = objectives;
        particle.pbest_position.clone_from(&particle.position);
    }
}

/// Lexicographic comparison with objective `k` first.
pub fn scalar_better(a: &ObjectiveVector, b: &ObjectiveVector, k: usize) -> bool {
    let key = |o: &ObjectiveVector| {
        if k == 0 {
            (o.coverage_ratio, o.lowest_rtsn)
        } else {
            (o.lowest_rtsn, o.coverage_ratio)
        }
    };
    let (a0, a1) = key(a);
    let (b0, b1) = key(b);
    a0 > b0 || (a0 == b0 && a1 > b1)
}
