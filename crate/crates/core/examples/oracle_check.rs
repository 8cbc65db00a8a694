//! Compares the solver with exhaustive game search on random layered
//! networks, under each resolution rule and under exact observations.

use ugs_pursuit::oracle::{oracle_max_delay, ObservationModel};
use ugs_pursuit::random::{layered_instance, LayeredConfig};
use ugs_pursuit::solver::{solve, Resolution, SolveOptions};

fn main() {
    let cfg = LayeredConfig::oracle_sized();
    let mut mismatches = 0;
    println!("seed paths nodes      eager     strict      exact");
    for seed in 0..20 {
        let inst = layered_instance(seed, &cfg);
        let mut row = Vec::new();
        for res in [Resolution::Eager, Resolution::Strict] {
            let d = solve(&inst, None, SolveOptions::pruned(res)).unwrap().root_latest();
            let o = oracle_max_delay(&inst, ObservationModel::Partition(res)).unwrap();
            if (d - o).abs() > 1e-6 {
                mismatches += 1;
            }
            row.push(d);
        }
        let exact = oracle_max_delay(&inst, ObservationModel::Exact).unwrap();
        println!(
            "{seed:>4} {:>5} {:>5} {:>10.4} {:>10.4} {:>10.4}",
            inst.path_count(),
            inst.node_count(),
            row[0],
            row[1],
            exact
        );
    }
    println!("\nsolver/oracle mismatches: {mismatches}");
}
