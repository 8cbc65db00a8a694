//! Prints the pursuer's decision tree as Graphviz DOT, e.g.
//!
//!     cargo run --example decision_tree -- 1.61 | dot -Tsvg > tree.svg

use ugs_pursuit::network::euclidean_metric;
use ugs_pursuit::solver::{solve, SolveOptions};
use ugs_pursuit::tree::build_tree;
use ugs_pursuit::{fixture, Instance};

fn main() {
    let speed: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("speed must be a number"))
        .unwrap_or(1.62);
    let network = fixture::example_network();
    let metric = euclidean_metric(&network, speed).expect("speed exceeds the floor");
    let inst = Instance::new(network, metric).expect("instance");
    let result = solve(&inst, None, SolveOptions::default()).expect("solve");
    let tree = build_tree(&result, &inst).expect("policy covers the tree");

    eprintln!("depth {}, {} leaves", tree.depth(), tree.leaves().len());
    for k in 1..=inst.path_count() {
        let leaf = tree.follow(k).unwrap();
        eprintln!("path {k} ends at node {} (t = {:.2})", leaf.ugs, leaf.latest);
    }
    print!("{}", tree.to_dot());
}
