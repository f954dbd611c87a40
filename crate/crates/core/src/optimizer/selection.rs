//! Global-best selection: NRCD multi-leader selection with swarm
//! partitioning, and the MOPSO-CD baseline policy.

use rand::Rng;

use super::archive::{dominates, ArchiveEntry};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    /// Archive indices of the chosen leaders, ascending.
    pub leaders: Vec<usize>,
    /// Particles assigned to each leader, same order as `leaders`.
    pub group_sizes: Vec<usize>,
}

/// Splits `total` seats proportionally to `weights` by largest remainder,
/// guaranteeing every group at least one seat when `total >= weights.len()`.
pub fn allocate_groups(weights: &[f64], total: usize) -> Vec<usize> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let sum: f64 = weights.iter().sum();
    let quotas: Vec<f64> = if sum > 0.0 {
        weights.iter().map(|w| total as f64 * w / sum).collect()
    } else {
        vec![total as f64 / n as f64; n]
    };
    let mut seats: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = seats.iter().sum();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        seats[i] += 1;
    }
    while let Some(empty) = seats.iter().position(|&s| s == 0) {
        let donor = (0..n)
            .max_by(|&a, &b| seats[a].cmp(&seats[b]).then(b.cmp(&a)))
            .expect("nonempty");
        if seats[donor] < 2 {
            break;
        }
        seats[donor] -= 1;
        seats[empty] += 1;
    }
    seats
}

/// Picks up to `y_u` leaders among the entries whose crowding distance
/// vectors are mutually non-dominated, preferring larger relative crowding
/// distance, and sizes one main-swarm group per leader.
pub fn select_leaders_nrcd<T>(
    entries: &[ArchiveEntry<T>],
    swarm_size: usize,
    y_u: usize,
) -> Result<SelectionResult> {
    if entries.is_empty() {
        return Err(Error::OptimizerState("cannot select leaders from an empty archive".into()));
    }
    if swarm_size == 0 || y_u == 0 {
        return Err(Error::OptimizerState("swarm size and leader count must be positive".into()));
    }
    let mut candidates: Vec<usize> = (0..entries.len())
        .filter(|&i| !entries.iter().any(|e| dominates(&e.cdv, &entries[i].cdv)))
        .collect();
    let limit = y_u.min(swarm_size);
    if candidates.len() > limit {
        candidates.sort_by(|&a, &b| entries[b].xi_rcd.total_cmp(&entries[a].xi_rcd).then(a.cmp(&b)));
        candidates.truncate(limit);
        candidates.sort_unstable();
    }
    let weights: Vec<f64> = candidates.iter().map(|&i| entries[i].xi_rcd).collect();
    Ok(SelectionResult {
        group_sizes: allocate_groups(&weights, swarm_size),
        leaders: candidates,
    })
}

/// Entries eligible under the MOPSO-CD policy: the top tenth (at least one)
/// by absolute crowding distance, ties going to the lower index.
pub fn cd_candidates<T>(entries: &[ArchiveEntry<T>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| entries[b].xi_cd.total_cmp(&entries[a].xi_cd).then(a.cmp(&b)));
    let keep = entries.len().div_ceil(10).max(1).min(entries.len());
    order.truncate(keep);
    order
}

/// Uniform pick among [`cd_candidates`].
pub fn select_leader_cd<T, R: Rng>(entries: &[ArchiveEntry<T>], rng: &mut R) -> Result<usize> {
    if entries.is_empty() {
        return Err(Error::OptimizerState("cannot select a leader from an empty archive".into()));
    }
    let candidates = cd_candidates(entries);
    Ok(candidates[rng.gen_range(0..candidates.len())])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_reproduces_largest_remainder() {
        assert_eq!(allocate_groups(&[0.61, 0.91, 1.1], 100), vec![23, 35, 42]);
        assert_eq!(allocate_groups(&[0.91, 1.1], 100), vec![45, 55]);
        assert_eq!(allocate_groups(&[1.1], 100), vec![100]);
    }

    #[test]
    fn allocation_gives_everyone_a_seat() {
        let seats = allocate_groups(&[0.0, 0.0, 5.0], 10);
        assert_eq!(seats.iter().sum::<usize>(), 10);
        assert!(seats.iter().all(|&s| s >= 1));
        assert_eq!(allocate_groups(&[0.0, 0.0], 4), vec![2, 2]);
    }

    #[test]
    fn empty_archive_is_an_error() {
        let empty: Vec<ArchiveEntry<()>> = Vec::new();
        assert!(select_leaders_nrcd(&empty, 10, 3).is_err());
        let mut rng = rand::thread_rng();
        assert!(select_leader_cd(&empty, &mut rng).is_err());
    }

    #[test]
    fn single_entry_is_always_the_cd_leader() {
        let one = vec![ArchiveEntry {
            item: (),
            objectives: [0.5, 3.0],
            xi_cd: 0.0,
            cdv: [0.0; 2],
            xi_rcd: 0.0,
        }];
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            assert_eq!(select_leader_cd(&one, &mut rng).unwrap(), 0);
        }
        let sel = select_leaders_nrcd(&one, 7, 3).unwrap();
        assert_eq!(sel.leaders, vec![0]);
        assert_eq!(sel.group_sizes, vec![7]);
    }
}
