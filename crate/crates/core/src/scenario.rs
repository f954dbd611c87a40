//! Surveillance world, deployment vectors and the two objectives.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detection::{detection_probability, DetectorConfig, WorkingMode};
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};

/// Tolerance on the power-ratio budget `sum rho = J`.
pub const POWER_SUM_TOL: f64 = 1e-9;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// A point in the plane, kilometres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle anchored at its lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub width: f64,
    pub height: f64,
    pub origin: Point,
}

impl Region {
    pub fn new(width: f64, height: f64, origin: Point) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::config("region.width_km", "must be positive"));
        }
        if !(height > 0.0 && height.is_finite()) {
            return Err(Error::config("region.height_km", "must be positive"));
        }
        Ok(Self {
            width,
            height,
            origin,
        })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(side, side, Point::new(0.0, 0.0))
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    pub fn x_max(&self) -> f64 {
        self.origin.x + self.width
    }

    pub fn y_max(&self) -> f64 {
        self.origin.y + self.height
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.origin.x && p.x <= self.x_max() && p.y >= self.origin.y && p.y <= self.y_max()
    }

    /// Same as [`Region::contains`] with a slack of `tol` on every edge.
    pub fn contains_within(&self, p: &Point, tol: f64) -> bool {
        p.x >= self.origin.x - tol
            && p.x <= self.x_max() + tol
            && p.y >= self.origin.y - tol
            && p.y <= self.y_max() + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RcsModel {
    /// Every bistatic cross section equals the reference `sigma`.
    #[default]
    Deterministic,
    /// `|alpha|^2` with `alpha` a unit-variance complex Gaussian, drawn once.
    Rayleigh,
}

/// The fixed world an experiment is run in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub surveillance: Region,
    pub placement: Region,
    /// Area of one square resolution cell, km^2.
    pub cell_area: f64,
    pub num_nodes: usize,
    pub mode: WorkingMode,
    /// Detectability factor, linear.
    pub d0: f64,
    pub r_max: f64,
    pub sigma: f64,
    pub p_dt: f64,
    pub p_fa: f64,
    pub rcs_model: RcsModel,
    pub rcs_seed: u64,
    pub min_range: f64,
}

impl Scenario {
    /// The published parameter set on a 50 km x 50 km region.
    pub fn reference(num_nodes: usize, mode: WorkingMode) -> Self {
        let region = Region::square(50.0).expect("positive side");
        Self {
            surveillance: region,
            placement: region,
            cell_area: 2.5,
            num_nodes,
            mode,
            d0: db_to_linear(12.5),
            r_max: 6.0,
            sigma: 1.0,
            p_dt: 0.8,
            p_fa: 1e-6,
            rcs_model: RcsModel::Deterministic,
            rcs_seed: 0,
            min_range: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive, got {v}")))
            }
        };
        let probability = |field: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::config(field, format!("must lie in (0, 1), got {v}")))
            }
        };
        Region::new(
            self.surveillance.width,
            self.surveillance.height,
            self.surveillance.origin,
        )
        .map_err(|_| Error::config("scenario.surveillance", "width and height must be positive"))?;
        Region::new(
            self.placement.width,
            self.placement.height,
            self.placement.origin,
        )
        .map_err(|_| Error::config("scenario.placement", "width and height must be positive"))?;
        if self.num_nodes == 0 {
            return Err(Error::config("scenario.num_nodes", "must be at least 1"));
        }
        positive("scenario.cell_area_km2", self.cell_area)?;
        positive("scenario.d0_db", self.d0)?;
        positive("scenario.r_max_km", self.r_max)?;
        positive("scenario.sigma", self.sigma)?;
        positive("scenario.min_range_km", self.min_range)?;
        probability("scenario.p_dt", self.p_dt)?;
        probability("scenario.p_fa", self.p_fa)?;
        if self.cell_area > self.surveillance.area() {
            return Err(Error::config(
                "scenario.cell_area_km2",
                format!(
                    "cell area {} exceeds the surveillance area {}",
                    self.cell_area,
                    self.surveillance.area()
                ),
            ));
        }
        Ok(())
    }

    pub fn cell_side(&self) -> f64 {
        self.cell_area.sqrt()
    }

    pub fn cell_count(&self) -> usize {
        grid_shape(self).map(|(count, _)| count).unwrap_or(0)
    }
}

/// Lattice layout: `(cells, columns)`. The cell count is the region area over
/// the cell area; cells fill the lattice row by row, so the last row may be
/// partial when the side does not divide the region.
fn grid_shape(scenario: &Scenario) -> Result<(usize, usize)> {
    let region = &scenario.surveillance;
    if !(scenario.cell_area > 0.0) || scenario.cell_area > region.area() * (1.0 + 1e-12) {
        return Err(Error::config(
            "scenario.cell_area_km2",
            "cell area must be positive and no larger than the surveillance region",
        ));
    }
    // Tolerate ratios such as 2500 / 2.5 landing a hair below an integer.
    let count = ((region.area() / scenario.cell_area) * (1.0 + 1e-12)).floor() as usize;
    // Columns whose centre lies inside the region.
    let cols = ((region.width / scenario.cell_side()) * (1.0 + 1e-12) + 0.5).floor() as usize;
    Ok((count.max(1), cols.max(1)))
}

/// Cell centres of the surveillance region in row-major order (x fastest).
pub fn grid_cells(scenario: &Scenario) -> Result<Vec<Point>> {
    let (count, cols) = grid_shape(scenario)?;
    let side = scenario.cell_side();
    let o = scenario.surveillance.origin;
    Ok((0..count)
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            Point::new(o.x + (c as f64 + 0.5) * side, o.y + (r as f64 + 0.5) * side)
        })
        .collect())
}

/// A candidate deployment: one antenna position and one power ratio per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeploymentVector {
    pub positions: Vec<Point>,
    pub power_ratios: Vec<f64>,
}

impl DeploymentVector {
    /// Builds a deployment and checks it against the scenario's placement
    /// region and power budget.
    pub fn new(positions: Vec<Point>, power_ratios: Vec<f64>, scenario: &Scenario) -> Result<Self> {
        let dv = Self {
            positions,
            power_ratios,
        };
        dv.validate(scenario, 0.0)?;
        Ok(dv)
    }

    /// Every node at full standard power.
    pub fn uniform_power(positions: Vec<Point>) -> Self {
        let n = positions.len();
        Self {
            positions,
            power_ratios: vec![1.0; n],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.positions.len()
    }

    /// `position_tol` loosens the placement check, for values read back
    /// from rounded text.
    pub fn validate(&self, scenario: &Scenario, position_tol: f64) -> Result<()> {
        let j = scenario.num_nodes;
        if self.positions.len() != j || self.power_ratios.len() != j {
            return Err(Error::Domain(format!(
                "deployment has {} positions and {} power ratios, scenario expects {j}",
                self.positions.len(),
                self.power_ratios.len()
            )));
        }
        for (i, p) in self.positions.iter().enumerate() {
            if !scenario.placement.contains_within(p, position_tol) {
                return Err(Error::Domain(format!(
                    "node {} at ({}, {}) lies outside the placement region",
                    i + 1,
                    p.x,
                    p.y
                )));
            }
        }
        if self.power_ratios.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
            return Err(Error::Domain("power ratios must be finite and nonnegative".into()));
        }
        let total: f64 = self.power_ratios.iter().sum();
        if (total - j as f64).abs() > POWER_SUM_TOL {
            return Err(Error::Domain(format!(
                "power ratios sum to {total}, expected {j}"
            )));
        }
        Ok(())
    }

    /// Flattened `(x_1..x_J, y_1..y_J, rho_1..rho_J)`.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(3 * self.num_nodes());
        out.extend(self.positions.iter().map(|p| p.x));
        out.extend(self.positions.iter().map(|p| p.y));
        out.extend_from_slice(&self.power_ratios);
        out
    }

    pub fn from_flat(flat: &[f64]) -> Self {
        assert!(flat.len().is_multiple_of(3), "flat deployment length must be 3J");
        let j = flat.len() / 3;
        let positions = (0..j).map(|i| Point::new(flat[i], flat[j + i])).collect();
        Self {
            positions,
            power_ratios: flat[2 * j..].to_vec(),
        }
    }
}

/// Coverage ratio and lowest RTSN of one deployment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub coverage_ratio: f64,
    /// Linear; see [`ObjectiveVector::lowest_rtsn_db`].
    pub lowest_rtsn: f64,
}

impl ObjectiveVector {
    pub fn lowest_rtsn_db(&self) -> f64 {
        linear_to_db(self.lowest_rtsn)
    }

    /// Both objectives maximized; `self` at least as good everywhere and
    /// strictly better somewhere.
    pub fn dominates(&self, other: &Self) -> bool {
        self.coverage_ratio >= other.coverage_ratio
            && self.lowest_rtsn >= other.lowest_rtsn
            && (self.coverage_ratio > other.coverage_ratio || self.lowest_rtsn > other.lowest_rtsn)
    }
}

/// Bistatic cross sections `sigma_{m,n}` for every transmitter/receiver pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RcsTable {
    n: usize,
    values: Vec<f64>,
}

impl RcsTable {
    pub fn constant(num_nodes: usize, sigma: f64) -> Self {
        Self {
            n: num_nodes,
            values: vec![sigma; num_nodes * num_nodes],
        }
    }

    pub fn from_values(num_nodes: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != num_nodes * num_nodes {
            return Err(Error::Domain("RCS table must be J x J".into()));
        }
        if values.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::Domain("RCS entries must be positive".into()));
        }
        Ok(Self {
            n: num_nodes,
            values,
        })
    }

    /// Table for the scenario's RCS model. Rayleigh draws come from the
    /// scenario's own seed so every run in an experiment sees the same table.
    pub fn for_scenario(scenario: &Scenario) -> Self {
        match scenario.rcs_model {
            RcsModel::Deterministic => Self::constant(scenario.num_nodes, scenario.sigma),
            RcsModel::Rayleigh => {
                let mut rng: ChaCha8Rng = stream(scenario.rcs_seed, Stream::Rcs);
                let values = (0..scenario.num_nodes * scenario.num_nodes)
                    .map(|_| loop {
                        // Real and imaginary parts each carry half the power.
                        let re = standard_normal(&mut rng) * std::f64::consts::FRAC_1_SQRT_2;
                        let im = standard_normal(&mut rng) * std::f64::consts::FRAC_1_SQRT_2;
                        let power = re * re + im * im;
                        if power > 0.0 {
                            break power;
                        }
                    })
                    .collect();
                Self {
                    n: scenario.num_nodes,
                    values,
                }
            }
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.values[m * self.n + n]
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; one variate per call keeps the stream layout simple.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// RTSN of the pair transmitting from node `m` and receiving at node `n`
/// for a target at `cell`.
pub fn pair_rtsn(
    dv: &DeploymentVector,
    m: usize,
    n: usize,
    cell: &Point,
    scenario: &Scenario,
    rcs: &RcsTable,
) -> f64 {
    let r_t = dv.positions[m].distance(cell).max(scenario.min_range);
    let r_r = dv.positions[n].distance(cell).max(scenario.min_range);
    let r_max2 = scenario.r_max * scenario.r_max;
    let range_term = (r_max2 / (r_t * r_r)).powi(2);
    scenario.d0 * dv.power_ratios[m] * (rcs.get(m, n) / scenario.sigma) * range_term
}

/// Mode-combined RTSN of one cell: the sum over all pairs when cooperative,
/// the best monostatic pair otherwise.
pub fn cell_rtsn(dv: &DeploymentVector, cell: &Point, scenario: &Scenario, rcs: &RcsTable) -> f64 {
    let j = dv.num_nodes();
    match scenario.mode {
        WorkingMode::Cooperative => {
            let mut sum = 0.0;
            for m in 0..j {
                for n in 0..j {
                    sum += pair_rtsn(dv, m, n, cell, scenario, rcs);
                }
            }
            sum
        }
        WorkingMode::NonCooperative => (0..j)
            .map(|m| pair_rtsn(dv, m, m, cell, scenario, rcs))
            .fold(0.0, f64::max),
    }
}

/// Coverage ratio and lowest RTSN, evaluating the detection probability of
/// every cell directly.
pub fn evaluate(
    dv: &DeploymentVector,
    scenario: &Scenario,
    rcs: &RcsTable,
    detector: &DetectorConfig,
) -> Result<ObjectiveVector> {
    let cells = grid_cells(scenario)?;
    let mut covered = 0usize;
    let mut lowest = f64::INFINITY;
    for cell in &cells {
        let chi = cell_rtsn(dv, cell, scenario, rcs);
        if detection_probability(chi, detector)? >= scenario.p_dt {
            covered += 1;
        }
        lowest = lowest.min(chi);
    }
    Ok(ObjectiveVector {
        coverage_ratio: covered as f64 / cells.len() as f64,
        lowest_rtsn: lowest,
    })
}

/// Objective evaluation with the grid, RCS table and detector prepared once.
///
/// Detection probability is strictly increasing in RTSN, so a cell is
/// covered exactly when its RTSN reaches the solved minimum. Cells within a
/// relative `1e-9` of that boundary are re-checked with the Marcum function.
#[derive(Debug, Clone)]
pub struct Evaluator {
    scenario: Scenario,
    cells: Vec<Point>,
    rcs: RcsTable,
    detector: DetectorConfig,
    min_covered_rtsn: f64,
}

impl Evaluator {
    pub fn new(scenario: Scenario, rcs: RcsTable, detector: DetectorConfig) -> Result<Self> {
        scenario.validate()?;
        if rcs.num_nodes() != scenario.num_nodes {
            return Err(Error::Domain("RCS table size does not match node count".into()));
        }
        if detector.mode() != scenario.mode {
            return Err(Error::Domain("detector mode does not match scenario".into()));
        }
        let cells = grid_cells(&scenario)?;
        let min_covered_rtsn = detector.min_rtsn_for(scenario.p_dt)?;
        Ok(Self {
            scenario,
            cells,
            rcs,
            detector,
            min_covered_rtsn,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn rcs(&self) -> &RcsTable {
        &self.rcs
    }

    pub fn detector(&self) -> &DetectorConfig {
        &self.detector
    }

    /// RTSN a cell needs to count as covered.
    pub fn min_covered_rtsn(&self) -> f64 {
        self.min_covered_rtsn
    }

    fn is_covered(&self, chi: f64) -> bool {
        let t = self.min_covered_rtsn;
        if (chi - t).abs() <= 1e-9 * t {
            detection_probability(chi, &self.detector)
                .map(|pd| pd >= self.scenario.p_dt)
                .unwrap_or(false)
        } else {
            chi >= t
        }
    }

    pub fn evaluate(&self, dv: &DeploymentVector) -> ObjectiveVector {
        let mut covered = 0usize;
        let mut lowest = f64::INFINITY;
        let mut ranges = vec![0.0; dv.num_nodes()];
        for cell in &self.cells {
            let chi = self.cell_rtsn_with(dv, cell, &mut ranges);
            if self.is_covered(chi) {
                covered += 1;
            }
            lowest = lowest.min(chi);
        }
        ObjectiveVector {
            coverage_ratio: covered as f64 / self.cells.len() as f64,
            lowest_rtsn: lowest,
        }
    }

    /// Per-cell RTSN map in grid order.
    pub fn rtsn_map(&self, dv: &DeploymentVector) -> Vec<f64> {
        let mut ranges = vec![0.0; dv.num_nodes()];
        self.cells
            .iter()
            .map(|c| self.cell_rtsn_with(dv, c, &mut ranges))
            .collect()
    }

    /// Same arithmetic as [`cell_rtsn`], with each node range computed once.
    fn cell_rtsn_with(&self, dv: &DeploymentVector, cell: &Point, ranges: &mut [f64]) -> f64 {
        let s = &self.scenario;
        for (r, p) in ranges.iter_mut().zip(&dv.positions) {
            *r = p.distance(cell).max(s.min_range);
        }
        let r_max2 = s.r_max * s.r_max;
        let term = |m: usize, n: usize| {
            let range_term = (r_max2 / (ranges[m] * ranges[n])).powi(2);
            s.d0 * dv.power_ratios[m] * (self.rcs.get(m, n) / s.sigma) * range_term
        };
        let j = ranges.len();
        match s.mode {
            WorkingMode::Cooperative => {
                let mut sum = 0.0;
                for m in 0..j {
                    for n in 0..j {
                        sum += term(m, n);
                    }
                }
                sum
            }
            WorkingMode::NonCooperative => (0..j).map(|m| term(m, m)).fold(0.0, f64::max),
        }
    }
}
