//! Random layered networks that satisfy every standing assumption by
//! construction: acyclic, every node on an entry-to-exit path, exits exactly
//! the last layer, and a Euclidean pursuer faster than the evader.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;
use crate::network::{count_paths, euclidean_metric, speed_floor, RoadNetwork};

#[derive(Clone, Debug)]
pub struct LayeredConfig {
    /// Layer count including the entry layer.
    pub layers: RangeInclusive<usize>,
    /// Nodes per non-entry layer.
    pub width: RangeInclusive<usize>,
    /// Probability of each extra edge between consecutive layers.
    pub extra_edge_prob: f64,
    /// Edge time = straight-line distance times a factor from this range.
    pub time_factor: (f64, f64),
    /// Pursuer speed as a multiple of the speed-advantage floor.
    pub speed_margin: f64,
    /// Accepted path counts.
    pub paths: RangeInclusive<usize>,
    /// Accepted node counts.
    pub nodes: RangeInclusive<usize>,
}

impl Default for LayeredConfig {
    fn default() -> Self {
        LayeredConfig {
            layers: 3..=6,
            width: 1..=3,
            extra_edge_prob: 0.3,
            time_factor: (1.1, 2.0),
            speed_margin: 1.1,
            paths: 1..=4,
            nodes: 2..=8,
        }
    }
}

impl LayeredConfig {
    /// Small instances the exhaustive oracle can handle.
    pub fn oracle_sized() -> Self {
        LayeredConfig {
            paths: 2..=4,
            ..Self::default()
        }
    }
}

/// Draws a network from `cfg`, retrying until its size is in range.
pub fn layered_network(seed: u64, cfg: &LayeredConfig) -> RoadNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100_000 {
        let g = draw(&mut rng, cfg);
        if cfg.nodes.contains(&g.node_count()) && cfg.paths.contains(&count_paths(&g)) {
            return g;
        }
    }
    panic!("no layered network matches {cfg:?}");
}

/// Network plus Euclidean metric at `speed_margin` times the speed floor.
pub fn layered_instance(seed: u64, cfg: &LayeredConfig) -> Instance {
    let g = layered_network(seed, cfg);
    let speed = cfg.speed_margin * speed_floor(&g).expect("generated nodes carry coordinates");
    let metric = euclidean_metric(&g, speed).expect("margin keeps the speed advantage");
    Instance::new(g, metric).expect("generated instance is valid")
}

/// Speed used by [`layered_instance`] for the same seed and config.
pub fn layered_speed(g: &RoadNetwork, cfg: &LayeredConfig) -> f64 {
    cfg.speed_margin * speed_floor(g).expect("generated nodes carry coordinates")
}

fn draw(rng: &mut ChaCha8Rng, cfg: &LayeredConfig) -> RoadNetwork {
    let layers = rng.gen_range(cfg.layers.clone());
    let mut layer_nodes: Vec<Vec<usize>> = vec![vec![1]];
    let mut coords: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    for l in 1..layers {
        let w = rng.gen_range(cfg.width.clone());
        let mut ids = Vec::with_capacity(w);
        for _ in 0..w {
            coords.push((rng.gen_range(-4.0..4.0), l as f64 * 4.0 + rng.gen_range(-1.0..1.0)));
            ids.push(coords.len());
        }
        layer_nodes.push(ids);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for l in 0..layers - 1 {
        let (upper, lower) = (&layer_nodes[l], &layer_nodes[l + 1]);
        for &a in upper {
            let &b = lower.choose(rng).unwrap();
            pairs.push((a, b));
        }
        for &b in lower {
            if !pairs.iter().any(|&(_, c)| c == b) {
                let &a = upper.choose(rng).unwrap();
                pairs.push((a, b));
            }
        }
        for &a in upper {
            for &b in lower {
                if !pairs.contains(&(a, b)) && rng.gen_bool(cfg.extra_edge_prob) {
                    pairs.push((a, b));
                }
            }
        }
    }

    let edges: Vec<(usize, usize, f64)> = pairs
        .into_iter()
        .map(|(a, b)| {
            let (p, q) = (coords[a - 1], coords[b - 1]);
            let factor = rng.gen_range(cfg.time_factor.0..=cfg.time_factor.1);
            (a, b, (p.0 - q.0).hypot(p.1 - q.1) * factor)
        })
        .collect();
    RoadNetwork::new(coords.len(), &edges, Some(&coords)).expect("layered networks are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let cfg = LayeredConfig::default();
        for seed in 0..20 {
            let a = layered_instance(seed, &cfg);
            let b = layered_instance(seed, &cfg);
            assert_eq!(a.network, b.network);
            assert!(cfg.paths.contains(&a.path_count()));
            assert!(cfg.nodes.contains(&a.node_count()));
        }
    }
}
