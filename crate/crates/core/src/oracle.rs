//! Exhaustive game search, independent of the latest-time recursion.
//!
//! For a fixed initial delay `t0` the search plays the pursuer forward from
//! `(node 1, t0, {1..n})` and asks whether some strategy captures the evader
//! on every path: an AND/OR tree where the pursuer picks the next node and
//! the evader's path picks the observation. The largest winning delay is
//! then found by bisection, since winning at `t0` implies winning at any
//! smaller delay.
//!
//! Two observation models are available:
//!
//! * [`ObservationModel::Partition`] mirrors the solver's move model: a visit
//!   to `u` either captures (every remaining path passes `u` and the pursuer
//!   arrives in time) or sorts the paths into red and green, with green known
//!   only after the chosen [`Resolution`] instant.
//! * [`ObservationModel::Exact`] replays the raw sensor semantics: on arrival
//!   every path that already passed `u` is distinguished by its delay, a path
//!   arriving now is captured, and the rest stay green; if nothing can be
//!   learned on arrival the pursuer waits for the next scheduled visit.
//!
//! Moves that cannot shrink the uncertainty set are pruned: they return the
//! pursuer to a known situation with less time in hand.

use std::collections::HashMap;

use thiserror::Error;

use crate::information::{delay_classes, partition};
use crate::instance::Instance;
use crate::network::NodeId;
use crate::pathset::PathSet;
use crate::solver::Resolution;
use crate::time;

pub const MAX_ORACLE_PATHS: usize = 6;
pub const MAX_ORACLE_NODES: usize = 10;

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_WIDTH: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance with {paths} paths and {nodes} nodes exceeds the oracle caps ({MAX_ORACLE_PATHS} paths, {MAX_ORACLE_NODES} nodes)")]
    CapExceeded { paths: usize, nodes: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObservationModel {
    Partition(Resolution),
    Exact,
}

/// Does some pursuer strategy starting at node 1 at time `t0` capture the
/// evader on every path?
pub fn wins(inst: &Instance, model: ObservationModel, t0: f64) -> Result<bool, OracleError> {
    check_caps(inst)?;
    let mut search = Search {
        inst,
        model,
        memo: HashMap::new(),
    };
    Ok(search.win(NodeId::ENTRY, t0, inst.initial_set()))
}

/// Largest initial delay in `[0, longest path]` with a guaranteed capture.
pub fn oracle_max_delay(inst: &Instance, model: ObservationModel) -> Result<f64, OracleError> {
    check_caps(inst)?;
    let mut lo = 0.0;
    let mut hi = inst.schedule.longest();
    if !wins(inst, model, lo)? {
        return Ok(f64::NEG_INFINITY);
    }
    if wins(inst, model, hi)? {
        return Ok(hi);
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if wins(inst, model, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn check_caps(inst: &Instance) -> Result<(), OracleError> {
    if inst.path_count() > MAX_ORACLE_PATHS || inst.node_count() > MAX_ORACLE_NODES {
        return Err(OracleError::CapExceeded {
            paths: inst.path_count(),
            nodes: inst.node_count(),
        });
    }
    Ok(())
}

struct Search<'a> {
    inst: &'a Instance,
    model: ObservationModel,
    memo: HashMap<(NodeId, PathSet, u64), bool>,
}

impl Search<'_> {
    fn win(&mut self, p: NodeId, t: f64, set: PathSet) -> bool {
        if set.is_empty() {
            return true;
        }
        let key = (p, set, t.to_bits());
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let nodes: Vec<NodeId> = self.inst.network.nodes().collect();
        let w = nodes.into_iter().any(|u| {
            let arrive = t + self.inst.metric.get(p, u);
            match self.model {
                ObservationModel::Partition(res) => self.partition_move(u, arrive, set, res),
                ObservationModel::Exact => self.exact_move(u, arrive, set),
            }
        });
        self.memo.insert(key, w);
        w
    }

    fn partition_move(&mut self, u: NodeId, arrive: f64, set: PathSet, res: Resolution) -> bool {
        let sched = &self.inst.schedule;
        let (red, green) = partition(set, u, sched);
        if red.is_empty() {
            return false;
        }
        if green.is_empty() {
            return time::le(arrive, sched.earliest(u, set));
        }
        match res {
            Resolution::Eager => {
                let settle = arrive.max(sched.earliest(u, red));
                self.win(u, arrive, red) && self.win(u, settle, green)
            }
            Resolution::Strict => {
                let settle = arrive.max(sched.latest(u, red));
                delay_classes(red, u, sched)
                    .into_iter()
                    .all(|(_, c)| self.win(u, arrive, c))
                    && self.win(u, settle, green)
            }
        }
    }

    fn exact_move(&mut self, u: NodeId, arrive: f64, set: PathSet) -> bool {
        let classes = delay_classes(set, u, &self.inst.schedule);
        if classes.is_empty() {
            return false;
        }
        let mut passed = Vec::new();
        let mut settled = PathSet::EMPTY;
        for &(tau, c) in &classes {
            if time::lt(tau, arrive) {
                passed.push(c);
                settled = settled.union(c);
            } else if time::eq(tau, arrive) {
                // Evader on these paths meets the pursuer right now.
                settled = settled.union(c);
            }
        }
        if settled.is_empty() {
            // Nothing to learn on arrival; wait for the first scheduled visit.
            let (first, caught) = classes[0];
            return self.win(u, first, set.difference(caught));
        }
        let green = set.difference(settled);
        passed.into_iter().all(|c| c != set && self.win(u, arrive, c)) && self.win(u, arrive, green)
    }
}
