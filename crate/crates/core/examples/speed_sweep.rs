//! How the tolerable delay depends on pursuer speed: a CSV sweep, the points
//! where the policy changes shape, and the slowest useful speed.

use ugs_pursuit::analysis::{critical_speed, linear_grid, sweep, DEFAULT_SPEED_TOL};
use ugs_pursuit::network::{speed_floor, PursuerMetric};
use ugs_pursuit::solver::SolveOptions;
use ugs_pursuit::{fixture, Instance};

fn main() {
    let network = fixture::example_network();
    let floor = speed_floor(&network).unwrap();
    // The sweep swaps in a Euclidean metric per speed.
    let inst = Instance::new(network.clone(), PursuerMetric::zero(network.node_count())).unwrap();
    let opts = SolveOptions::default();

    let grid = linear_grid(0.9, 3.0, 22);
    let s = sweep(&inst, &grid, opts).expect("sweep");
    print!("{}", s.to_csv());

    println!("\nspeed floor: {floor:.4}");
    for i in s.structure_changes() {
        let row = &s.rows[i];
        let to = row.first_move.map_or("-".into(), |n| n.to_string());
        println!("first move switches to node {to} at V = {:.3}", row.speed);
    }
    match critical_speed(&inst, floor, 3.0, DEFAULT_SPEED_TOL, opts) {
        Ok(v) => println!("capture needs V above {v:.4}"),
        Err(e) => println!("no threshold in range: {e}"),
    }
}
