//! Crowding annotations and leader selection on a six-entry front.
//!
//! cargo run --example crowding_table

use msrs_deploy::optimizer::{cd_candidates, select_leaders_nrcd, Archive, Normalization};

fn main() -> msrs_deploy::Result<()> {
    let front = [[0.0, 100.0], [0.09, 80.0], [0.2, 59.0], [0.6, 40.0], [0.91, 20.0], [1.0, 0.0]];
    let mut archive = Archive::new(None, Normalization::NominalRange([1.0, 100.0]));
    archive.update(front.iter().enumerate().map(|(i, g)| (i + 1, *g)));

    println!("{:>3} {:>6} {:>6} {:>8} {:>14} {:>7}", "i", "g1", "g2", "xi_cd", "H", "xi_rcd");
    for e in archive.entries() {
        println!(
            "{:>3} {:>6} {:>6} {:>8.2} {:>14} {:>7.3}",
            e.item,
            e.objectives[0],
            e.objectives[1],
            e.xi_cd,
            format!("({:.2}, {:.0})", e.cdv[0], e.cdv[1]),
            e.xi_rcd
        );
    }

    for y_u in (1..=3).rev() {
        let sel = select_leaders_nrcd(archive.entries(), 100, y_u)?;
        let ids: Vec<usize> = sel.leaders.iter().map(|&i| archive.entries()[i].item).collect();
        println!("NRCD Y_u={y_u}: leaders {ids:?}, groups {:?}", sel.group_sizes);
    }
    let cd: Vec<usize> = cd_candidates(archive.entries())
        .iter()
        .map(|&i| archive.entries()[i].item)
        .collect();
    println!("CD candidate set: {cd:?}");
    Ok(())
}
