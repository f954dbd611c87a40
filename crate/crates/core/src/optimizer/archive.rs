//! External archive of non-dominated solutions.

use super::crowding::{crowding_absolute, crowding_vectors, Normalization};

/// Objective pairs closer than this in both components are the same point.
pub const DUPLICATE_TOL: f64 = 1e-12;

/// Maximization dominance on two objectives.
pub fn dominates(a: &[f64; 2], b: &[f64; 2]) -> bool {
    a[0] >= b[0] && a[1] >= b[1] && (a[0] > b[0] || a[1] > b[1])
}

fn is_duplicate(a: &[f64; 2], b: &[f64; 2]) -> bool {
    (a[0] - b[0]).abs() <= DUPLICATE_TOL && (a[1] - b[1]).abs() <= DUPLICATE_TOL
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry<T> {
    pub item: T,
    /// Objective values in the space crowding is measured in.
    pub objectives: [f64; 2],
    pub xi_cd: f64,
    /// Crowding distance vector, one component per objective.
    pub cdv: [f64; 2],
    pub xi_rcd: f64,
}

/// Non-dominated, duplicate-free set kept sorted ascending by the first
/// objective, with crowding annotations refreshed after every update.
#[derive(Debug, Clone)]
pub struct Archive<T> {
    entries: Vec<ArchiveEntry<T>>,
    capacity: Option<usize>,
    normalization: Normalization,
}

impl<T> Default for Archive<T> {
    fn default() -> Self {
        Self::new(None, Normalization::ArchiveRange)
    }
}

impl<T> Archive<T> {
    pub fn new(capacity: Option<usize>, normalization: Normalization) -> Self {
        Self {
            entries: Vec::new(),
            capacity,
            normalization,
        }
    }

    pub fn entries(&self) -> &[ArchiveEntry<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn objectives(&self) -> Vec<[f64; 2]> {
        self.entries.iter().map(|e| e.objectives).collect()
    }

    /// Offers one candidate without refreshing crowding. Returns whether it
    /// entered the archive.
    fn offer(&mut self, item: T, objectives: [f64; 2]) -> bool {
        if self
            .entries
            .iter()
            .any(|e| dominates(&e.objectives, &objectives) || is_duplicate(&e.objectives, &objectives))
        {
            return false;
        }
        self.entries.retain(|e| !dominates(&objectives, &e.objectives));
        let at = self
            .entries
            .partition_point(|e| e.objectives[0] < objectives[0]);
        self.entries.insert(
            at,
            ArchiveEntry {
                item,
                objectives,
                xi_cd: 0.0,
                cdv: [0.0; 2],
                xi_rcd: 0.0,
            },
        );
        true
    }

    /// Merges `candidates` into the archive, then recomputes crowding and
    /// enforces the capacity. Returns the number of candidates accepted.
    pub fn update<I>(&mut self, candidates: I) -> usize
    where
        I: IntoIterator<Item = (T, [f64; 2])>,
    {
        let accepted = candidates
            .into_iter()
            .filter(|c| c.1.iter().all(|v| !v.is_nan()))
            .fold(0, |n, (item, obj)| n + usize::from(self.offer(item, obj)));
        self.refresh_crowding();
        self.prune();
        accepted
    }

    pub fn refresh_crowding(&mut self) {
        let objs = self.objectives();
        let cd = crowding_absolute(&objs);
        let vectors = crowding_vectors(&objs, self.normalization);
        for ((e, xi_cd), (cdv, xi_rcd)) in self.entries.iter_mut().zip(cd).zip(vectors) {
            e.xi_cd = xi_cd;
            e.cdv = cdv;
            e.xi_rcd = xi_rcd;
        }
    }

    /// Drops the most crowded interior entry until the capacity holds.
    fn prune(&mut self) {
        let Some(cap) = self.capacity else { return };
        while self.entries.len() > cap && self.entries.len() > 2 {
            let last = self.entries.len() - 1;
            let victim = (1..last)
                .min_by(|&a, &b| {
                    self.entries[a]
                        .xi_rcd
                        .total_cmp(&self.entries[b].xi_rcd)
                        .then(a.cmp(&b))
                })
                .expect("interior exists");
            self.entries.remove(victim);
            self.refresh_crowding();
        }
    }
}

/// Indices of the non-dominated, de-duplicated subset of `points`, by the
/// O(n^2) definition. Of equal points the first is kept.
pub fn non_dominated_indices(points: &[[f64; 2]]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points.iter().enumerate().any(|(j, q)| {
                dominates(q, &points[i]) || (j < i && is_duplicate(q, &points[i]))
            })
        })
        .collect()
}
