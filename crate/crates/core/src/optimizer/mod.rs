//! Multi-objective particle swarm engine.
//!
//! Three algorithms share one entry point, [`run`]:
//!
//! * `MopsoNrcd` - a main swarm partitioned every iteration among up to
//!   `y_u` leaders picked by non-dominated crowding distance vectors, plus
//!   one single-objective sub-swarm per objective pushing the front's ends.
//! * `MopsoCd` - one swarm; every particle follows a leader drawn from the
//!   least crowded tenth of the archive by absolute crowding distance.
//! * `Random` - uniform feasible deployments, no search.

pub mod archive;
pub mod crowding;
pub mod particle;
pub mod selection;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use archive::{dominates, non_dominated_indices, Archive, ArchiveEntry, DUPLICATE_TOL};
pub use crowding::{crowding_absolute, crowding_vectors, Normalization};
pub use particle::{
    repair_power, update_particle, update_pbest, update_pbest_scalar, Particle, PsoCoefficients,
    SearchSpace,
};
pub use selection::{allocate_groups, cd_candidates, select_leader_cd, select_leaders_nrcd, SelectionResult};

use crate::error::{Error, Result};
use crate::rng::{stream, Stream};
use crate::scenario::{DeploymentVector, Evaluator, ObjectiveVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    #[serde(alias = "cd")]
    MopsoCd,
    #[serde(alias = "nrcd")]
    MopsoNrcd,
    Random,
}

impl Algorithm {
    pub fn short_name(self) -> &'static str {
        match self {
            Algorithm::MopsoCd => "cd",
            Algorithm::MopsoNrcd => "nrcd",
            Algorithm::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerConfig {
    pub algorithm: Algorithm,
    /// Swarm size of MOPSO-CD.
    pub swarm_size: usize,
    /// Main swarm of MOPSO-NRCD.
    pub main_swarm_size: usize,
    /// Each of the two MOPSO-NRCD sub-swarms.
    pub sub_swarm_size: usize,
    pub max_iterations: usize,
    pub c1: f64,
    pub c2: f64,
    pub v_max: f64,
    /// Overrides `v_max` for the coordinate dimensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_max_position: Option<f64>,
    /// Overrides `v_max` for the power-ratio dimensions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_max_power: Option<f64>,
    pub w_start: f64,
    pub w_delta: f64,
    pub y_u: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub archive_capacity: Option<usize>,
    /// Deployments drawn by the random baseline.
    pub random_count: usize,
    pub normalization: Normalization,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::MopsoNrcd,
            swarm_size: 200,
            main_swarm_size: 100,
            sub_swarm_size: 50,
            max_iterations: 2000,
            c1: 2.0,
            c2: 2.0,
            v_max: 4.0,
            v_max_position: None,
            v_max_power: None,
            w_start: 0.9,
            w_delta: 0.5,
            y_u: 3,
            archive_capacity: None,
            random_count: 50,
            normalization: Normalization::ArchiveRange,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let count = |field: &str, v: usize| {
            if v >= 1 {
                Ok(())
            } else {
                Err(Error::config(format!("optimizer.{field}"), "must be at least 1"))
            }
        };
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(format!("optimizer.{field}"), format!("must be positive, got {v}")))
            }
        };
        match self.algorithm {
            Algorithm::MopsoCd => count("swarm_size", self.swarm_size)?,
            Algorithm::MopsoNrcd => {
                count("main_swarm_size", self.main_swarm_size)?;
                count("sub_swarm_size", self.sub_swarm_size)?;
                count("y_u", self.y_u)?;
            }
            Algorithm::Random => count("random_count", self.random_count)?,
        }
        positive("c1", self.c1)?;
        positive("c2", self.c2)?;
        positive("v_max", self.v_max)?;
        if let Some(v) = self.v_max_position {
            positive("v_max_position", v)?;
        }
        if let Some(v) = self.v_max_power {
            positive("v_max_power", v)?;
        }
        if !(self.w_delta >= 0.0 && self.w_start > self.w_delta && self.w_start.is_finite()) {
            return Err(Error::config(
                "optimizer.w_start",
                "inertia schedule needs w_start > w_delta >= 0",
            ));
        }
        if let Some(cap) = self.archive_capacity {
            count("archive_capacity", cap)?;
        }
        if let Normalization::NominalRange(r) = self.normalization {
            if !r.iter().all(|v| *v > 0.0 && v.is_finite()) {
                return Err(Error::config("optimizer.normalization", "nominal ranges must be positive"));
            }
        }
        Ok(())
    }

    /// Inertia weight at iteration `t` of `max_iterations`.
    pub fn inertia(&self, t: usize) -> f64 {
        self.w_start - self.w_delta * (t as f64 / self.max_iterations.max(1) as f64)
    }

    pub fn coefficients(&self) -> PsoCoefficients {
        PsoCoefficients {
            c1: self.c1,
            c2: self.c2,
        }
    }

    pub fn search_space(&self, evaluator: &Evaluator) -> SearchSpace {
        let s = evaluator.scenario();
        SearchSpace::with_limits(
            s.placement,
            s.num_nodes,
            self.v_max_position.unwrap_or(self.v_max),
            self.v_max_power.unwrap_or(self.v_max),
        )
    }
}

/// An evaluated deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub dv: DeploymentVector,
    pub objectives: ObjectiveVector,
}

/// Objective coordinates used for archive ordering and crowding: coverage
/// ratio and lowest RTSN in dB.
pub fn crowding_space(o: &ObjectiveVector) -> [f64; 2] {
    [o.coverage_ratio, o.lowest_rtsn_db()]
}

/// Archive contents after one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub iteration: usize,
    pub entries: Vec<ObjectiveVector>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub archive: Archive<Solution>,
    pub snapshots: Vec<Snapshot>,
    /// Every deployment drawn by the random baseline, in draw order.
    pub samples: Vec<Solution>,
    /// Leader selections made on every iteration (NRCD only).
    pub selections: Vec<SelectionResult>,
    pub evaluations: usize,
}

impl RunOutput {
    pub fn front(&self) -> Vec<Solution> {
        self.archive.entries().iter().map(|e| e.item.clone()).collect()
    }
}

fn evaluate_all(evaluator: &Evaluator, positions: &[&[f64]]) -> Vec<ObjectiveVector> {
    positions
        .par_iter()
        .map(|x| evaluator.evaluate(&DeploymentVector::from_flat(x)))
        .collect()
}

struct Swarm {
    particles: Vec<Particle>,
    rngs: Vec<rand_chacha::ChaCha8Rng>,
}

impl Swarm {
    /// `first_index` numbers particles globally so each owns a distinct
    /// random stream.
    fn init(
        size: usize,
        first_index: usize,
        space: &SearchSpace,
        evaluator: &Evaluator,
        init_rng: &mut rand_chacha::ChaCha8Rng,
        seed: u64,
    ) -> Self {
        let mut starts = Vec::with_capacity(size);
        for _ in 0..size {
            let x = space.sample_position(init_rng);
            let v = space.sample_velocity(init_rng);
            starts.push((x, v));
        }
        let xs: Vec<&[f64]> = starts.iter().map(|(x, _)| x.as_slice()).collect();
        let objs = evaluate_all(evaluator, &xs);
        let particles = starts
            .into_iter()
            .zip(objs)
            .map(|((x, v), o)| Particle::new(x, v, o))
            .collect();
        let rngs = (0..size)
            .map(|i| stream(seed, Stream::Particle((first_index + i) as u32)))
            .collect();
        Self { particles, rngs }
    }

    fn evaluate(&self, evaluator: &Evaluator) -> Vec<ObjectiveVector> {
        let xs: Vec<&[f64]> = self.particles.iter().map(|p| p.position.as_slice()).collect();
        evaluate_all(evaluator, &xs)
    }

    fn candidates(&self) -> impl Iterator<Item = (Solution, [f64; 2])> + '_ {
        self.particles.iter().map(|p| {
            (
                Solution {
                    dv: p.deployment(),
                    objectives: p.objectives,
                },
                crowding_space(&p.objectives),
            )
        })
    }

    fn len(&self) -> usize {
        self.particles.len()
    }
}

/// Best personal best of a sub-swarm for objective `k`, lowest index on ties.
fn scalar_gbest(swarm: &Swarm, k: usize) -> Vec<f64> {
    let mut best = 0;
    for (i, p) in swarm.particles.iter().enumerate().skip(1) {
        if particle::scalar_better(&p.pbest_objectives, &swarm.particles[best].pbest_objectives, k) {
            best = i;
        }
    }
    swarm.particles[best].pbest_position.clone()
}

/// Runs one optimization with all randomness derived from `seed`.
///
/// With `snapshot_every > 0` the archive is recorded after initialization
/// (iteration 0) and after every `snapshot_every`-th iteration.
pub fn run(
    config: &OptimizerConfig,
    evaluator: &Evaluator,
    seed: u64,
    snapshot_every: usize,
) -> Result<RunOutput> {
    config.validate()?;
    let space = config.search_space(evaluator);
    let mut archive: Archive<Solution> = Archive::new(config.archive_capacity, config.normalization);
    let mut snapshots = Vec::new();
    let mut selections = Vec::new();
    let mut evaluations = 0usize;

    let snap = |archive: &Archive<Solution>, iteration: usize, snapshots: &mut Vec<Snapshot>| {
        if snapshot_every > 0 && iteration.is_multiple_of(snapshot_every) {
            snapshots.push(Snapshot {
                iteration,
                entries: archive.entries().iter().map(|e| e.item.objectives).collect(),
            });
        }
    };

    match config.algorithm {
        Algorithm::Random => {
            let mut rng = stream(seed, Stream::Random);
            let xs: Vec<Vec<f64>> = (0..config.random_count)
                .map(|_| space.sample_position(&mut rng))
                .collect();
            let refs: Vec<&[f64]> = xs.iter().map(Vec::as_slice).collect();
            let objs = evaluate_all(evaluator, &refs);
            evaluations += objs.len();
            let samples: Vec<Solution> = xs
                .iter()
                .zip(objs)
                .map(|(x, o)| Solution {
                    dv: DeploymentVector::from_flat(x),
                    objectives: o,
                })
                .collect();
            archive.update(samples.iter().map(|s| (s.clone(), crowding_space(&s.objectives))));
            snap(&archive, 0, &mut snapshots);
            Ok(RunOutput {
                archive,
                snapshots,
                samples,
                selections,
                evaluations,
            })
        }
        Algorithm::MopsoCd => {
            let mut init_rng = stream(seed, Stream::Init);
            let mut leader_rng = stream(seed, Stream::Leader);
            let mut swarm = Swarm::init(config.swarm_size, 0, &space, evaluator, &mut init_rng, seed);
            evaluations += swarm.len();
            archive.update(swarm.candidates());
            snap(&archive, 0, &mut snapshots);
            for t in 1..=config.max_iterations {
                let inertia = config.inertia(t);
                let eligible = cd_candidates(archive.entries());
                let leaders: Vec<usize> = (0..swarm.len())
                    .map(|_| eligible[rand::Rng::gen_range(&mut leader_rng, 0..eligible.len())])
                    .collect();
                let gbests: Vec<Vec<f64>> = leaders
                    .iter()
                    .map(|&l| archive.entries()[l].item.dv.to_flat())
                    .collect();
                swarm
                    .particles
                    .par_iter_mut()
                    .zip(swarm.rngs.par_iter_mut())
                    .zip(gbests.par_iter())
                    .for_each(|((p, rng), g)| {
                        update_particle(p, g, inertia, config.coefficients(), &space, rng)
                    });
                let objs = swarm.evaluate(evaluator);
                evaluations += objs.len();
                for (p, o) in swarm.particles.iter_mut().zip(objs) {
                    update_pbest(p, o);
                }
                archive.update(swarm.candidates());
                snap(&archive, t, &mut snapshots);
            }
            Ok(RunOutput {
                archive,
                snapshots,
                samples: Vec::new(),
                selections,
                evaluations,
            })
        }
        Algorithm::MopsoNrcd => {
            let mut init_rng = stream(seed, Stream::Init);
            let s_m = config.main_swarm_size;
            let s_k = config.sub_swarm_size;
            let mut main = Swarm::init(s_m, 0, &space, evaluator, &mut init_rng, seed);
            let mut subs: Vec<Swarm> = (0..2)
                .map(|k| Swarm::init(s_k, s_m + k * s_k, &space, evaluator, &mut init_rng, seed))
                .collect();
            let mut sub_gbest: Vec<Vec<f64>> = subs.iter().enumerate().map(|(k, s)| scalar_gbest(s, k)).collect();
            evaluations += s_m + 2 * s_k;
            archive.update(
                main.candidates()
                    .chain(subs.iter().flat_map(|s| s.candidates()))
                    .collect::<Vec<_>>(),
            );
            snap(&archive, 0, &mut snapshots);

            for t in 1..=config.max_iterations {
                let inertia = config.inertia(t);
                let selection = select_leaders_nrcd(archive.entries(), s_m, config.y_u)?;
                let mut gbests = Vec::with_capacity(s_m);
                for (&leader, &size) in selection.leaders.iter().zip(&selection.group_sizes) {
                    let g = archive.entries()[leader].item.dv.to_flat();
                    gbests.extend(std::iter::repeat_n(g, size));
                }
                debug_assert_eq!(gbests.len(), s_m);
                selections.push(selection);

                main.particles
                    .par_iter_mut()
                    .zip(main.rngs.par_iter_mut())
                    .zip(gbests.par_iter())
                    .for_each(|((p, rng), g)| {
                        update_particle(p, g, inertia, config.coefficients(), &space, rng)
                    });
                let objs = main.evaluate(evaluator);
                evaluations += objs.len();
                for (p, o) in main.particles.iter_mut().zip(objs) {
                    update_pbest(p, o);
                }

                for (k, sub) in subs.iter_mut().enumerate() {
                    let g = &sub_gbest[k];
                    sub.particles
                        .par_iter_mut()
                        .zip(sub.rngs.par_iter_mut())
                        .for_each(|(p, rng)| {
                            update_particle(p, g, inertia, config.coefficients(), &space, rng)
                        });
                    let objs = sub.evaluate(evaluator);
                    evaluations += objs.len();
                    for (p, o) in sub.particles.iter_mut().zip(objs) {
                        update_pbest_scalar(p, o, k);
                    }
                    sub_gbest[k] = scalar_gbest(sub, k);
                }

                archive.update(
                    main.candidates()
                        .chain(subs.iter().flat_map(|s| s.candidates()))
                        .collect::<Vec<_>>(),
                );
                snap(&archive, t, &mut snapshots);
            }
            Ok(RunOutput {
                archive,
                snapshots,
                samples: Vec::new(),
                selections,
                evaluations,
            })
        }
    }
}
