//! Closed-loop playback of a solved policy against one evader path.
//!
//! Decisions happen only at epochs: the instant the pursuer reaches a node,
//! or the next scheduled evader visit while it waits. The evader's path is
//! known to the environment and never to the policy, which sees only the
//! sensor readings folded into its uncertainty set.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::information::{update_green, update_red, InfoError, Observation};
use crate::instance::Instance;
use crate::network::NodeId;
use crate::pathset::PathSet;
use crate::solver::SolveResult;
use crate::time;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("policy has no entry for node {node} with paths {set}")]
    PolicyHole { node: NodeId, set: PathSet },
    #[error("no capture or escape after {epochs} epochs")]
    NonTermination { epochs: usize },
    #[error("evader path {k} does not exist (instance has {n} paths)")]
    UnknownPath { k: usize, n: usize },
    #[error("initial delay {0} must be finite and nonnegative")]
    InvalidDelay(f64),
    #[error("policy solved for {policy} paths on {policy_nodes} nodes, instance has {paths} on {nodes}")]
    ShapeMismatch {
        policy: usize,
        policy_nodes: usize,
        paths: usize,
        nodes: usize,
    },
    #[error(transparent)]
    Info(#[from] InfoError),
}

/// Everything the environment tracks between epochs.
#[derive(Clone, Debug, PartialEq)]
pub struct GameState {
    pub node: NodeId,
    pub clock: f64,
    pub info: PathSet,
    /// The evader's path; hidden from the policy.
    pub path: usize,
    /// When the pursuer reached `node`.
    pub arrived: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptRow {
    pub t: f64,
    pub node: NodeId,
    pub obs: Observation,
    pub set: PathSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Outcome {
    Captured { time: f64, node: NodeId },
    Escaped { time: f64, node: NodeId },
}

impl Outcome {
    pub fn is_captured(&self) -> bool {
        matches!(self, Outcome::Captured { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimOutcome {
    pub path: usize,
    pub t0: f64,
    pub outcome: Outcome,
    pub transcript: Vec<TranscriptRow>,
}

impl SimOutcome {
    /// One JSON object per observation.
    pub fn transcript_json_lines(&self) -> String {
        self.transcript
            .iter()
            .map(|r| serde_json::to_string(r).expect("row serializes") + "\n")
            .collect()
    }
}

/// Plays `result`'s policy against path `k` with initial delay `t0`.
pub fn simulate(inst: &Instance, result: &SolveResult, k: usize, t0: f64) -> Result<SimOutcome, SimError> {
    let n = inst.path_count();
    let m = inst.node_count();
    if result.paths != n || result.nodes != m {
        return Err(SimError::ShapeMismatch {
            policy: result.paths,
            policy_nodes: result.nodes,
            paths: n,
            nodes: m,
        });
    }
    if k == 0 || k > n {
        return Err(SimError::UnknownPath { k, n });
    }
    if !(t0 >= 0.0) || !t0.is_finite() {
        return Err(SimError::InvalidDelay(t0));
    }
    let sched = &inst.schedule;
    let exit = sched.exit(k);
    let escape = sched.length(k);
    let done = |outcome| SimOutcome {
        path: k,
        t0,
        outcome,
        transcript: Vec::new(),
    };
    let escaped = Outcome::Escaped {
        time: escape,
        node: exit,
    };

    if time::eq(t0, 0.0) {
        return Ok(done(Outcome::Captured {
            time: 0.0,
            node: NodeId::ENTRY,
        }));
    }
    let mut state = GameState {
        node: NodeId::ENTRY,
        clock: t0,
        info: update_red(inst.initial_set(), NodeId::ENTRY, t0, t0, sched)?,
        path: k,
        arrived: t0,
    };
    let mut transcript = vec![TranscriptRow {
        t: t0,
        node: NodeId::ENTRY,
        obs: Observation::Red(t0),
        set: state.info,
    }];
    let finish = |outcome, transcript| {
        Ok(SimOutcome {
            path: k,
            t0,
            outcome,
            transcript,
        })
    };

    let guard = n + m;
    for _ in 0..guard {
        let cell = result.cell(state.node, state.info).ok_or(SimError::PolicyHole {
            node: state.node,
            set: state.info,
        })?;
        let Some(u) = cell.next else {
            return finish(escaped, transcript);
        };
        let visit = sched.visit(u, k);

        if u == state.node {
            // Wait for the next scheduled visit of any path still in play.
            // If every such visit is already past, waiting teaches nothing.
            let next = state
                .info
                .iter()
                .map(|k2| sched.visit(u, k2))
                .filter(|&t| time::le(state.clock, t))
                .fold(f64::INFINITY, f64::min);
            if !next.is_finite() {
                return finish(escaped, transcript);
            }
            if time::eq(visit, next) {
                return finish(Outcome::Captured { time: visit, node: u }, transcript);
            }
            if time::gt(next, escape) {
                return finish(escaped, transcript);
            }
            state.clock = next;
            state.info = update_green(state.info, u, next, sched)?;
            transcript.push(TranscriptRow {
                t: next,
                node: u,
                obs: Observation::Green,
                set: state.info,
            });
            continue;
        }

        let arrive = state.clock + inst.metric.get(state.node, u);
        if time::eq(visit, arrive) {
            return finish(Outcome::Captured { time: visit, node: u }, transcript);
        }
        if time::gt(arrive, escape) {
            return finish(escaped, transcript);
        }
        let obs = if time::lt(visit, arrive) {
            let delay = arrive - visit;
            state.info = update_red(state.info, u, arrive, delay, sched)?;
            Observation::Red(delay)
        } else {
            state.info = update_green(state.info, u, arrive, sched)?;
            Observation::Green
        };
        state.node = u;
        state.clock = arrive;
        state.arrived = arrive;
        transcript.push(TranscriptRow {
            t: arrive,
            node: u,
            obs,
            set: state.info,
        });
    }
    Err(SimError::NonTermination { epochs: guard })
}

/// Per-path outcomes at a common initial delay.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub t0: f64,
    pub outcomes: Vec<SimOutcome>,
    pub all_captured: bool,
}

impl VerifyReport {
    pub fn escaped_paths(&self) -> Vec<usize> {
        self.outcomes
            .iter()
            .filter(|o| !o.outcome.is_captured())
            .map(|o| o.path)
            .collect()
    }
}

pub fn verify_guarantee(inst: &Instance, result: &SolveResult, t0: f64) -> Result<VerifyReport, SimError> {
    let outcomes = (1..=inst.path_count())
        .map(|k| simulate(inst, result, k, t0))
        .collect::<Result<Vec<_>, _>>()?;
    let all_captured = outcomes.iter().all(|o| o.outcome.is_captured());
    Ok(VerifyReport {
        t0,
        outcomes,
        all_captured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;
    use crate::network::euclidean_metric;
    use crate::solver::{solve, Resolution, SolveOptions};

    fn example(speed: f64) -> (Instance, SolveResult) {
        let g = fixture::example_network();
        let d = euclidean_metric(&g, speed).unwrap();
        let inst = Instance::new(g, d).unwrap();
        let r = solve(&inst, None, SolveOptions::default()).unwrap();
        (inst, r)
    }

    #[test]
    fn path_two_is_caught_at_node_six() {
        let (inst, r) = example(1.62);
        let out = simulate(&inst, &r, 2, r.root_latest()).unwrap();
        match out.outcome {
            Outcome::Captured { time, node } => {
                assert_eq!(node, NodeId(6));
                assert!((time - 16.30).abs() < 1e-9);
            }
            o => panic!("{o:?}"),
        }
        let sets: Vec<PathSet> = out.transcript.iter().map(|r| r.set).collect();
        assert!(sets.windows(2).all(|w| w[1].is_subset(w[0])));
    }

    #[test]
    fn single_path_capture_at_exit() {
        let g = fixture::single_edge(5.0, 3.0);
        let d = euclidean_metric(&g, 1.0).unwrap();
        let inst = Instance::new(g, d).unwrap();
        let r = solve(&inst, None, SolveOptions::default()).unwrap();
        let out = simulate(&inst, &r, 1, r.root_latest()).unwrap();
        assert_eq!(out.outcome, Outcome::Captured { time: 5.0, node: NodeId(2) });
    }

    #[test]
    fn guarantee_holds_at_and_below_the_bound() {
        let (inst, r) = example(1.62);
        let d = r.root_latest();
        assert!(verify_guarantee(&inst, &r, d).unwrap().all_captured);
        assert!(verify_guarantee(&inst, &r, 0.5 * d).unwrap().all_captured);
        let late = verify_guarantee(&inst, &r, d + 10.0 * inst.schedule.longest()).unwrap();
        assert!(!late.all_captured);
    }

    #[test]
    fn deterministic_transcripts() {
        let (inst, r) = example(1.7);
        for k in 1..=4 {
            let a = simulate(&inst, &r, k, 3.0).unwrap();
            let b = simulate(&inst, &r, k, 3.0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn holes_are_reported() {
        let (inst, _) = example(1.62);
        let json = serde_json::json!({
            "meta": {"paths": 4, "nodes": 7, "resolution": "eager", "prune": true},
            "entries": [{"node": 1, "set": [1, 2, 3, 4], "D": 4.0, "mu": 3, "capture": false}]
        });
        let r = SolveResult::from_json(&json).unwrap();
        assert!(matches!(
            simulate(&inst, &r, 1, 7.0),
            Err(SimError::PolicyHole { node: NodeId(3), .. })
        ));
        let strict = solve(&inst, None, SolveOptions::full_lattice(Resolution::Strict)).unwrap();
        assert!(simulate(&inst, &strict, 5, 1.0).is_err());
    }

    #[test]
    fn transcript_lines() {
        let (inst, r) = example(1.62);
        let out = simulate(&inst, &r, 4, 1.0).unwrap();
        let text = out.transcript_json_lines();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["node"], 1);
        assert_eq!(first["obs"]["red"], 1.0);
        assert_eq!(first["set"], serde_json::json!([1, 2, 3, 4]));
    }
}
