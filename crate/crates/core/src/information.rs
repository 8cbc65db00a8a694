//! Uncertainty-set algebra: observation updates, red/green partitions, delay
//! classes and the realizable-set sweep.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{NodeId, VisitSchedule};
use crate::pathset::PathSet;
use crate::time;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InfoError {
    #[error("observation at node {node}, time {time} is inconsistent with the current path set")]
    InconsistentObservation { node: usize, time: f64 },
    #[error("red delay {delay} must be finite, nonnegative and at most the observation time {time}")]
    InvalidDelay { delay: f64, time: f64 },
}

/// What a sensor reports when the pursuer interrogates it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observation {
    /// The evader has not passed yet.
    Green,
    /// The evader passed this long ago.
    Red(f64),
}

/// Paths of `set` that visited `u` exactly at `t_plus - delay`.
pub fn update_red(
    set: PathSet,
    u: NodeId,
    t_plus: f64,
    delay: f64,
    schedule: &VisitSchedule,
) -> Result<PathSet, InfoError> {
    if !(delay >= 0.0) || !delay.is_finite() || time::gt(delay, t_plus) {
        return Err(InfoError::InvalidDelay {
            delay,
            time: t_plus,
        });
    }
    let passed = t_plus - delay;
    let out: PathSet = set
        .iter()
        .filter(|&k| time::eq(schedule.visit(u, k), passed))
        .collect();
    nonempty(out, u, t_plus)
}

/// Paths of `set` that have not visited `u` by `t_plus`.
pub fn update_green(
    set: PathSet,
    u: NodeId,
    t_plus: f64,
    schedule: &VisitSchedule,
) -> Result<PathSet, InfoError> {
    let out: PathSet = set
        .iter()
        .filter(|&k| time::gt(schedule.visit(u, k), t_plus))
        .collect();
    nonempty(out, u, t_plus)
}

fn nonempty(set: PathSet, u: NodeId, t: f64) -> Result<PathSet, InfoError> {
    if set.is_empty() {
        Err(InfoError::InconsistentObservation { node: u.0, time: t })
    } else {
        Ok(set)
    }
}

/// `(set ∩ P_u, set ∖ P_u)`: the information after a red or a green at `u`
/// once the sensor has had its say.
pub fn partition(set: PathSet, u: NodeId, schedule: &VisitSchedule) -> (PathSet, PathSet) {
    let red = set.intersection(schedule.through(u));
    (red, set.difference(red))
}

/// Splits `set ∩ P_u` by visit time at `u`; ascending, equal times grouped.
pub fn delay_classes(set: PathSet, u: NodeId, schedule: &VisitSchedule) -> Vec<(f64, PathSet)> {
    let mut timed: Vec<(f64, usize)> = set
        .intersection(schedule.through(u))
        .iter()
        .map(|k| (schedule.visit(u, k), k))
        .collect();
    timed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<(f64, PathSet)> = Vec::new();
    for (t, k) in timed {
        match out.last_mut() {
            Some((t0, s)) if time::eq(*t0, t) => s.insert(k),
            _ => out.push((t, PathSet::singleton(k))),
        }
    }
    out
}

/// One row of the chronological sweep: the sets in play at a sensor event.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRow {
    pub node: NodeId,
    pub time: f64,
    pub sets: Vec<PathSet>,
}

/// Every uncertainty set a guaranteed-capture pursuer can meet, with the
/// event log that produced them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizableFamily {
    pub sets: Vec<PathSet>,
    pub log: Vec<EventRow>,
}

impl RealizableFamily {
    pub fn contains(&self, set: PathSet) -> bool {
        self.sets.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members ordered by cardinality, then bitmask.
    pub fn sorted(&self) -> Vec<PathSet> {
        let mut v = self.sets.clone();
        v.sort_by_key(|s| s.order_key());
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("family serializes")
    }
}

/// Tie order for events that happen at the same instant at different nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieOrder {
    #[default]
    NodeAscending,
    NodeDescending,
}

/// Chronological sweep over sensor events.
///
/// Each node contributes one event per distinct finite visit time. At an
/// event `(j, t)` every alive set `S` whose paths disagree about visiting `j`
/// at `t` splits into `E = {k ∈ S : L_j(k) = t}` and `S ∖ E`. Once the
/// clock reaches `|P_k|`, sets still containing `k` are retired: holding
/// one past that instant means path `k` escaped.
pub fn realizable_sets(schedule: &VisitSchedule) -> RealizableFamily {
    realizable_sets_with(schedule, TieOrder::default())
}

pub fn realizable_sets_with(schedule: &VisitSchedule, ties: TieOrder) -> RealizableFamily {
    let n = schedule.path_count();
    let m = schedule.node_count();

    let mut events: Vec<(f64, NodeId)> = Vec::new();
    for j in (1..=m).map(NodeId) {
        let mut times: Vec<f64> = schedule
            .row(j)
            .iter()
            .copied()
            .filter(|t| t.is_finite())
            .collect();
        times.sort_by(f64::total_cmp);
        times.dedup_by(|a, b| time::eq(*a, *b));
        events.extend(times.into_iter().map(|t| (t, j)));
    }
    events.sort_by(|a, b| {
        let by_node = match ties {
            TieOrder::NodeAscending => a.1.cmp(&b.1),
            TieOrder::NodeDescending => b.1.cmp(&a.1),
        };
        if time::eq(a.0, b.0) {
            by_node
        } else {
            a.0.total_cmp(&b.0)
        }
    });

    let root = schedule.all_paths();
    let mut alive: Vec<PathSet> = vec![root];
    let mut family: Vec<PathSet> = vec![root];
    let mut seen: HashSet<PathSet> = HashSet::from([root]);
    let mut log = Vec::with_capacity(events.len());

    let mut i = 0;
    while i < events.len() {
        let now = events[i].0;
        while i < events.len() && time::eq(events[i].0, now) {
            let (t, j) = events[i];
            let mut row = alive.clone();
            let before = alive.len();
            for s in 0..before {
                let set = alive[s];
                let hit: PathSet = set
                    .iter()
                    .filter(|&k| time::eq(schedule.visit(j, k), t))
                    .collect();
                if !hit.is_strict_nonempty_subset(set) {
                    continue;
                }
                for child in [hit, set.difference(hit)] {
                    if !row.contains(&child) {
                        row.push(child);
                    }
                    if !alive.contains(&child) {
                        alive.push(child);
                    }
                    if seen.insert(child) {
                        family.push(child);
                    }
                }
            }
            log.push(EventRow {
                node: j,
                time: t,
                sets: row,
            });
            i += 1;
        }
        let escaped: PathSet = (1..=n)
            .filter(|&k| time::eq(schedule.length(k), now))
            .collect();
        if !escaped.is_empty() {
            alive.retain(|s| s.intersection(escaped).is_empty());
        }
    }

    RealizableFamily { sets: family, log }
}
