//! Guaranteed-capture pursuit on a directed acyclic road network watched by
//! unattended ground sensors.
//!
//! An evader enters at node 1 at time 0 and drives, at unit speed, along one
//! of finitely many routes to an exit. A faster pursuer reaches node 1 some
//! time later. It sees nothing on its own: it learns only by visiting sensor
//! nodes, each of which reports whether the evader has passed and, if so, how
//! long ago. Capture means being at a sensor node when the evader gets there.
//!
//! The crate computes the largest initial delay for which capture is still
//! guaranteed and the policy that achieves it ([`solver`]), replays policies
//! against every evader route ([`simulator`]), checks the solver against an
//! exhaustive game search ([`oracle`]), studies the dependence on pursuer
//! speed ([`analysis`]) and renders the induced decision tree ([`tree`]).
//!
//! ```
//! use ugs_pursuit::{fixture, network::PursuerMetric, solver, Instance};
//!
//! let network = fixture::example_network();
//! let metric = PursuerMetric::zero(network.node_count());
//! let inst = Instance::new(network, metric).unwrap();
//! let result = solver::solve(&inst, None, solver::SolveOptions::default()).unwrap();
//! // An infinitely fast pursuer can wait until the earliest exit time.
//! assert!((result.tolerable_delay() - 11.83).abs() < 1e-9);
//! ```

// `!(x > 0.0)` is how NaN inputs get rejected alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod fixture;
pub mod information;
mod instance;
pub mod network;
pub mod oracle;
pub mod pathset;
pub mod random;
pub mod simulator;
pub mod solver;
pub mod time;
pub mod tree;

pub use instance::Instance;
pub use network::NodeId;
pub use pathset::PathSet;
