//! Ready-made networks: the seven-node example network and small helpers.

use crate::network::{NetworkSpec, RoadNetwork};

/// Edge travel times of the seven-node example, rounded to two decimals.
///
/// They are the differences of consecutive visit times along each path:
/// paths `1-3-5`, `1-3-4-6`, `1-3-4-7`, `1-2-7` reach their exits at 11.83,
/// 16.30, 17.54 and 14.66. Edges are declared so that the default path order
/// numbers the paths exactly that way.
pub const EXAMPLE_EDGES: [(usize, usize, f64); 7] = [
    (1, 3, 6.83),
    (1, 2, 4.83),
    (3, 5, 5.00),
    (3, 4, 5.23),
    (4, 6, 4.24),
    (4, 7, 5.48),
    (2, 7, 9.83),
];

/// Grid coordinates for the seven nodes.
///
/// Only `|6 - 7| = 2` is pinned by the example itself; the rest is a
/// reconstruction chosen so that every road is at least as long as the
/// straight line between its ends, `|1 - 3| = sqrt(40)` and `|3 - 5| = 5`.
pub const EXAMPLE_COORDS: [(f64, f64); 7] = [
    (0.0, 0.0),
    (2.0, 4.0),
    (-2.0, 6.0),
    (0.0, 10.0),
    (-2.0, 11.0),
    (1.0, 13.0),
    (3.0, 13.0),
];

/// The seven-node example with reconstructed coordinates.
pub fn example_network() -> RoadNetwork {
    RoadNetwork::new(7, &EXAMPLE_EDGES, Some(&EXAMPLE_COORDS)).expect("fixture is valid")
}

/// Two nodes, one road of the given length.
pub fn single_edge(length: f64, distance: f64) -> RoadNetwork {
    RoadNetwork::new(2, &[(1, 2, length)], Some(&[(0.0, 0.0), (distance, 0.0)]))
        .expect("single edge is valid")
}

/// The example network as a JSON network file.
pub fn example_network_json() -> String {
    let spec: NetworkSpec = example_network().to_spec();
    serde_json::to_string_pretty(&spec).expect("spec serializes")
}
