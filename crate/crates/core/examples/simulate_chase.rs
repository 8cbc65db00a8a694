//! Plays the solved policy against every evader route, at the tolerable
//! delay and a little past it, and prints one transcript.

use ugs_pursuit::network::euclidean_metric;
use ugs_pursuit::simulator::{simulate, verify_guarantee, Outcome};
use ugs_pursuit::solver::{solve, Resolution, SolveOptions};
use ugs_pursuit::{fixture, Instance};

fn main() {
    let network = fixture::example_network();
    let metric = euclidean_metric(&network, 1.62).unwrap();
    let inst = Instance::new(network, metric).unwrap();
    let result = solve(&inst, None, SolveOptions::full_lattice(Resolution::Strict)).unwrap();
    let d = result.root_latest();

    for t0 in [d, d + 0.5] {
        let report = verify_guarantee(&inst, &result, t0).unwrap();
        println!("t0 = {t0:.4}:");
        for o in &report.outcomes {
            let (what, time, node) = match o.outcome {
                Outcome::Captured { time, node } => ("captured", time, node),
                Outcome::Escaped { time, node } => ("escaped", time, node),
            };
            println!("  path {}: {what} at node {node}, t = {time:.2}", o.path);
        }
    }

    println!("\ntranscript for path 2 at t0 = {d:.4}:");
    let run = simulate(&inst, &result, 2, d).unwrap();
    for row in &run.transcript {
        println!("  t = {:>7.3}  node {}  {:?}  {}", row.t, row.node, row.obs, row.set);
    }
    println!("  -> {:?}", run.outcome);
}
