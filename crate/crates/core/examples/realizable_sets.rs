//! Enumerates the evader's routes through the seven-node example and the
//! uncertainty sets a pursuer can actually meet, event by event.

use ugs_pursuit::information::realizable_sets;
use ugs_pursuit::network::PursuerMetric;
use ugs_pursuit::{fixture, Instance};

fn main() {
    let network = fixture::example_network();
    let metric = PursuerMetric::zero(network.node_count());
    let inst = Instance::new(network, metric).expect("example is valid");

    for p in &inst.paths {
        let route: Vec<String> = p.nodes.iter().map(|n| n.to_string()).collect();
        println!("path {}: {}  (exit at {:.2})", p.index, route.join(" -> "), p.length());
    }

    let family = realizable_sets(&inst.schedule);
    println!("\n{:>4} {:>7}  sets", "node", "time");
    for row in &family.log {
        let sets: Vec<String> = row.sets.iter().map(|s| s.to_string()).collect();
        println!("{:>4} {:>7.2}  {}", row.node, row.time, sets.join(" "));
    }

    let n = inst.path_count();
    println!(
        "\n{} realizable sets out of {} non-empty subsets",
        family.len(),
        (1usize << n) - 1
    );
}
