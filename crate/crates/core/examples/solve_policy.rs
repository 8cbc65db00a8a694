//! Solves the example network at a few pursuer speeds and prints the
//! tolerable delay and first move, then the table rows for the root set.

use ugs_pursuit::network::euclidean_metric;
use ugs_pursuit::solver::{solve, Resolution, SolveOptions};
use ugs_pursuit::{fixture, Instance, NodeId};

fn main() {
    let network = fixture::example_network();
    for speed in [1.61, 1.62, 2.5] {
        let metric = euclidean_metric(&network, speed).expect("speed exceeds the floor");
        let inst = Instance::new(network.clone(), metric).expect("instance");
        for resolution in [Resolution::Eager, Resolution::Strict] {
            let r = solve(&inst, None, SolveOptions::pruned(resolution)).expect("solve");
            println!(
                "V = {speed:<4} {resolution:?}: tolerable delay {:.4}, first move to {}",
                r.tolerable_delay(),
                r.root_move().map_or("-".into(), |n| n.to_string())
            );
        }
    }

    let metric = euclidean_metric(&network, 1.62).unwrap();
    let inst = Instance::new(network.clone(), metric).unwrap();
    let r = solve(&inst, None, SolveOptions::default()).unwrap();
    let root = inst.initial_set();
    println!("\nD(j | {root}) at V = 1.62:");
    for j in network.nodes() {
        let cell = r.cell(j, root).unwrap();
        let next = cell.next.map_or("-".into(), |n: NodeId| n.to_string());
        println!("  j = {j}: D = {:>8.4}  next = {next}", cell.latest);
    }
}
