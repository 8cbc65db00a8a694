//! Road network, evader paths, visit schedules and the pursuer travel metric.
//!
//! Nodes are the sensor (UGS) locations, numbered `1..=m`; node 1 is the
//! entry. Edges carry the evader's travel time, which equals the road length
//! because the evader moves at unit speed. Exits are exactly the childless
//! nodes.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pathset::{PathSet, MAX_PATHS};
use crate::time;

/// Default cap on the number of evader paths.
pub const DEFAULT_PATH_CAP: usize = 63;

/// A sensor node, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const ENTRY: NodeId = NodeId(1);

    /// Zero-based index for table lookups.
    #[inline]
    pub fn idx(self) -> usize {
        self.0 - 1
    }

    #[inline]
    pub fn from_idx(i: usize) -> Self {
        NodeId(i + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("network has no nodes")]
    Empty,
    #[error("node ids must be exactly 1..={expected}; found {found}")]
    NonContiguousIds { expected: usize, found: usize },
    #[error("entry must be node 1, got {0}")]
    EntryNotNodeOne(usize),
    #[error("edge {from}->{to} references an unknown node")]
    UnknownNode { from: usize, to: usize },
    #[error("edge {from}->{to} is declared twice")]
    DuplicateEdge { from: usize, to: usize },
    #[error("edge {from}->{to} has non-positive travel time {time}")]
    NonPositiveEdgeTime { from: usize, to: usize, time: f64 },
    #[error("edge relation has a cycle through node {node}")]
    CycleDetected { node: usize },
    #[error("entry node is an exit (it has no children)")]
    EntryIsGoal,
    #[error("node {node} lies on no entry-to-exit path")]
    UnreachableNode { node: usize },
    #[error("declared goals {declared:?} differ from childless nodes {derived:?}")]
    GoalMismatch { declared: Vec<usize>, derived: Vec<usize> },
    #[error("{count} evader paths exceed the cap of {cap}")]
    PathExplosion { count: usize, cap: usize },
    #[error("node {node} appears on no evader path")]
    OrphanUgs { node: usize },
    #[error("no evader paths given")]
    NoPaths,
    #[error("node {node} has no coordinates")]
    MissingCoordinates { node: usize },
    #[error("pursuer speed must be positive, got {0}")]
    NonPositiveSpeed(f64),
    #[error("metric table must be {m}x{m}")]
    MetricShape { m: usize },
    #[error("invalid pursuer metric: {0}")]
    InvalidMetric(MetricReport),
}

/// One node as written in a network file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub from: usize,
    pub to: usize,
    pub time: f64,
}

/// Unvalidated network description, the shape of the JSON network file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub nodes: Vec<NodeSpec>,
    pub edges: Vec<EdgeSpec>,
    pub entry: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goals: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub time: f64,
}

/// A validated directed acyclic sensor graph.
#[derive(Clone, Debug, PartialEq)]
pub struct RoadNetwork {
    coords: Vec<Option<(f64, f64)>>,
    edges: Vec<Edge>,
    /// Children per node in declaration order, with edge times.
    children: Vec<Vec<(NodeId, f64)>>,
    goals: Vec<NodeId>,
}

impl RoadNetwork {
    /// Convenience constructor for code-built networks: `m` nodes, entry 1,
    /// edges as `(from, to, time)`.
    pub fn new(
        m: usize,
        edges: &[(usize, usize, f64)],
        coords: Option<&[(f64, f64)]>,
    ) -> Result<Self, NetworkError> {
        let nodes = (1..=m)
            .map(|id| {
                let c = coords.and_then(|c| c.get(id - 1).copied());
                NodeSpec {
                    id,
                    x: c.map(|c| c.0),
                    y: c.map(|c| c.1),
                }
            })
            .collect();
        let edges = edges
            .iter()
            .map(|&(from, to, time)| EdgeSpec { from, to, time })
            .collect();
        validate_network(&NetworkSpec {
            nodes,
            edges,
            entry: 1,
            goals: None,
        })
    }

    pub fn node_count(&self) -> usize {
        self.coords.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (1..=self.node_count()).map(NodeId)
    }

    pub fn entry(&self) -> NodeId {
        NodeId::ENTRY
    }

    pub fn goals(&self) -> &[NodeId] {
        &self.goals
    }

    pub fn is_goal(&self, j: NodeId) -> bool {
        self.children[j.idx()].is_empty()
    }

    pub fn children(&self, j: NodeId) -> &[(NodeId, f64)] {
        &self.children[j.idx()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_time(&self, from: NodeId, to: NodeId) -> Option<f64> {
        self.children[from.idx()]
            .iter()
            .find(|(c, _)| *c == to)
            .map(|&(_, t)| t)
    }

    pub fn coords(&self, j: NodeId) -> Option<(f64, f64)> {
        self.coords[j.idx()]
    }

    pub fn has_coords(&self) -> bool {
        self.coords.iter().all(Option::is_some)
    }

    /// Back to the file representation (goals always written out).
    pub fn to_spec(&self) -> NetworkSpec {
        NetworkSpec {
            nodes: self
                .nodes()
                .map(|j| NodeSpec {
                    id: j.0,
                    x: self.coords(j).map(|c| c.0),
                    y: self.coords(j).map(|c| c.1),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    from: e.from.0,
                    to: e.to.0,
                    time: e.time,
                })
                .collect(),
            entry: 1,
            goals: Some(self.goals.iter().map(|g| g.0).collect()),
        }
    }
}

/// Checks a raw description against the standing assumptions and builds the
/// network. Exits are derived as the childless nodes and cross-checked against
/// any declared goal list.
pub fn validate_network(spec: &NetworkSpec) -> Result<RoadNetwork, NetworkError> {
    let m = spec.nodes.len();
    if m == 0 {
        return Err(NetworkError::Empty);
    }
    let mut coords = vec![None; m];
    let mut seen = vec![false; m];
    for n in &spec.nodes {
        if n.id == 0 || n.id > m || seen[n.id - 1] {
            return Err(NetworkError::NonContiguousIds {
                expected: m,
                found: n.id,
            });
        }
        seen[n.id - 1] = true;
        coords[n.id - 1] = match (n.x, n.y) {
            (Some(x), Some(y)) => Some((x, y)),
            _ => None,
        };
    }
    if spec.entry != 1 {
        return Err(NetworkError::EntryNotNodeOne(spec.entry));
    }

    let mut children: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); m];
    let mut edges = Vec::with_capacity(spec.edges.len());
    let mut declared = HashSet::new();
    for e in &spec.edges {
        if e.from == 0 || e.from > m || e.to == 0 || e.to > m {
            return Err(NetworkError::UnknownNode {
                from: e.from,
                to: e.to,
            });
        }
        if e.from == e.to {
            return Err(NetworkError::CycleDetected { node: e.from });
        }
        if !declared.insert((e.from, e.to)) {
            return Err(NetworkError::DuplicateEdge {
                from: e.from,
                to: e.to,
            });
        }
        if !(e.time > 0.0) || !e.time.is_finite() {
            return Err(NetworkError::NonPositiveEdgeTime {
                from: e.from,
                to: e.to,
                time: e.time,
            });
        }
        children[e.from - 1].push((NodeId(e.to), e.time));
        edges.push(Edge {
            from: NodeId(e.from),
            to: NodeId(e.to),
            time: e.time,
        });
    }

    // Kahn's algorithm; leftovers sit on a cycle.
    let mut indeg = vec![0usize; m];
    for e in &edges {
        indeg[e.to.idx()] += 1;
    }
    let mut queue: VecDeque<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = queue.pop_front() {
        removed += 1;
        for (c, _) in &children[i] {
            indeg[c.idx()] -= 1;
            if indeg[c.idx()] == 0 {
                queue.push_back(c.idx());
            }
        }
    }
    if removed < m {
        let node = (0..m).find(|&i| indeg[i] > 0).unwrap() + 1;
        return Err(NetworkError::CycleDetected { node });
    }

    if children[0].is_empty() {
        return Err(NetworkError::EntryIsGoal);
    }

    // In a DAG every node reaches some childless node, so lying on an
    // entry-to-exit path is the same as being reachable from the entry.
    let mut reached = vec![false; m];
    reached[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for (c, _) in &children[i] {
            if !reached[c.idx()] {
                reached[c.idx()] = true;
                stack.push(c.idx());
            }
        }
    }
    if let Some(i) = reached.iter().position(|r| !r) {
        return Err(NetworkError::UnreachableNode { node: i + 1 });
    }

    let goals: Vec<NodeId> = (0..m)
        .filter(|&i| children[i].is_empty())
        .map(NodeId::from_idx)
        .collect();
    if let Some(declared) = &spec.goals {
        let mut d = declared.clone();
        d.sort_unstable();
        d.dedup();
        let derived: Vec<usize> = goals.iter().map(|g| g.0).collect();
        if d != derived {
            return Err(NetworkError::GoalMismatch {
                declared: d,
                derived,
            });
        }
    }

    Ok(RoadNetwork {
        coords,
        edges,
        children,
        goals,
    })
}

/// One entry-to-exit route with the evader's arrival time at each node.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaderPath {
    /// 1-based path index.
    pub index: usize,
    pub nodes: Vec<NodeId>,
    /// `arrival[i]` is the evader's arrival time at `nodes[i]`; `arrival[0] = 0`.
    pub arrival: Vec<f64>,
}

impl EvaderPath {
    pub fn exit(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    /// Total travel time from entry to exit.
    pub fn length(&self) -> f64 {
        *self.arrival.last().unwrap()
    }

    pub fn position(&self, j: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&n| n == j)
    }

    pub fn visit_time(&self, j: NodeId) -> Option<f64> {
        self.position(j).map(|i| self.arrival[i])
    }
}

/// How path indices are assigned.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathOrder {
    /// Depth-first, children in the order their edges were declared.
    #[default]
    Declared,
    /// Lexicographic by node-id sequence.
    Lexicographic,
}

/// All entry-to-exit paths, indexed `1..=n` in the requested order.
pub fn enumerate_paths(
    network: &RoadNetwork,
    order: PathOrder,
    cap: usize,
) -> Result<Vec<EvaderPath>, NetworkError> {
    let cap = cap.min(MAX_PATHS);
    let mut out = Vec::new();
    let mut nodes = vec![network.entry()];
    let mut arrival = vec![0.0];
    walk(network, order, cap, &mut nodes, &mut arrival, &mut out)?;
    Ok(out)
}

fn walk(
    network: &RoadNetwork,
    order: PathOrder,
    cap: usize,
    nodes: &mut Vec<NodeId>,
    arrival: &mut Vec<f64>,
    out: &mut Vec<EvaderPath>,
) -> Result<(), NetworkError> {
    let here = *nodes.last().unwrap();
    if network.is_goal(here) {
        if out.len() == cap {
            // Count the rest before giving up so the error is informative.
            let total = count_paths(network);
            return Err(NetworkError::PathExplosion { count: total, cap });
        }
        out.push(EvaderPath {
            index: out.len() + 1,
            nodes: nodes.clone(),
            arrival: arrival.clone(),
        });
        return Ok(());
    }
    let mut kids: Vec<(NodeId, f64)> = network.children(here).to_vec();
    if order == PathOrder::Lexicographic {
        kids.sort_by_key(|&(c, _)| c);
    }
    let now = *arrival.last().unwrap();
    for (c, t) in kids {
        nodes.push(c);
        arrival.push(now + t);
        walk(network, order, cap, nodes, arrival, out)?;
        nodes.pop();
        arrival.pop();
    }
    Ok(())
}

/// Number of entry-to-exit paths, counted without enumerating them.
pub fn count_paths(network: &RoadNetwork) -> usize {
    fn go(network: &RoadNetwork, j: NodeId, memo: &mut HashMap<NodeId, usize>) -> usize {
        if network.is_goal(j) {
            return 1;
        }
        if let Some(&c) = memo.get(&j) {
            return c;
        }
        let c = network
            .children(j)
            .iter()
            .map(|&(c, _)| go(network, c, memo))
            .fold(0usize, |a, b| a.saturating_add(b));
        memo.insert(j, c);
        c
    }
    go(network, network.entry(), &mut HashMap::new())
}

/// Evader visit-time table and per-node path membership.
#[derive(Clone, Debug, PartialEq)]
pub struct VisitSchedule {
    /// `visits[j][k]`: time path `k + 1` visits node `j + 1`, or `+∞`.
    visits: Vec<Vec<f64>>,
    through: Vec<PathSet>,
    lengths: Vec<f64>,
    exits: Vec<NodeId>,
}

impl VisitSchedule {
    pub fn node_count(&self) -> usize {
        self.visits.len()
    }

    pub fn path_count(&self) -> usize {
        self.lengths.len()
    }

    /// All paths, `{1..n}`.
    pub fn all_paths(&self) -> PathSet {
        PathSet::full(self.path_count())
    }

    /// Time path `k` visits node `j`; `+∞` when it does not.
    #[inline]
    pub fn visit(&self, j: NodeId, k: usize) -> f64 {
        self.visits[j.idx()][k - 1]
    }

    /// Row `L_j` of the table.
    pub fn row(&self, j: NodeId) -> &[f64] {
        &self.visits[j.idx()]
    }

    /// Paths through `j`.
    #[inline]
    pub fn through(&self, j: NodeId) -> PathSet {
        self.through[j.idx()]
    }

    pub fn length(&self, k: usize) -> f64 {
        self.lengths[k - 1]
    }

    pub fn exit(&self, k: usize) -> NodeId {
        self.exits[k - 1]
    }

    pub fn longest(&self) -> f64 {
        self.lengths.iter().copied().fold(0.0, f64::max)
    }

    /// Earliest visit of `j` over the paths in `set` (`+∞` if none pass).
    pub fn earliest(&self, j: NodeId, set: PathSet) -> f64 {
        set.iter()
            .map(|k| self.visit(j, k))
            .fold(f64::INFINITY, f64::min)
    }

    /// Latest finite visit of `j` over the paths in `set` (`−∞` if none pass).
    pub fn latest(&self, j: NodeId, set: PathSet) -> f64 {
        set.iter()
            .map(|k| self.visit(j, k))
            .filter(|t| t.is_finite())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Builds `L` and `P` from the enumerated paths.
pub fn build_schedule(paths: &[EvaderPath], m: usize) -> Result<VisitSchedule, NetworkError> {
    if paths.is_empty() {
        return Err(NetworkError::NoPaths);
    }
    let n = paths.len();
    let mut visits = vec![vec![f64::INFINITY; n]; m];
    let mut through = vec![PathSet::EMPTY; m];
    for p in paths {
        for (j, &t) in p.nodes.iter().zip(&p.arrival) {
            visits[j.idx()][p.index - 1] = t;
            through[j.idx()].insert(p.index);
        }
    }
    if let Some(j) = through.iter().position(|s| s.is_empty()) {
        return Err(NetworkError::OrphanUgs { node: j + 1 });
    }
    Ok(VisitSchedule {
        visits,
        through,
        lengths: paths.iter().map(EvaderPath::length).collect(),
        exits: paths.iter().map(EvaderPath::exit).collect(),
    })
}

/// A single failed check of the pursuer metric.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    NonZeroDiagonal { node: usize, value: f64 },
    Negative { from: usize, to: usize, value: f64 },
    /// `d(i, j) > d(i, s) + d(s, j)`.
    Triangle { i: usize, s: usize, j: usize },
    /// `d(from, to) >= T(from, to)` on an edge.
    SpeedAdvantage { from: usize, to: usize, pursuer: f64, evader: f64 },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonZeroDiagonal { node, value } => write!(f, "d({node},{node}) = {value} != 0"),
            Self::Negative { from, to, value } => write!(f, "d({from},{to}) = {value} < 0"),
            Self::Triangle { i, s, j } => {
                write!(f, "triangle inequality fails: d({i},{j}) > d({i},{s}) + d({s},{j})")
            }
            Self::SpeedAdvantage {
                from,
                to,
                pursuer,
                evader,
            } => write!(
                f,
                "no speed advantage on edge {from}->{to}: pursuer {pursuer:.6} >= evader {evader:.6}"
            ),
        }
    }
}

/// Violations found by [`validate_metric`], truncated to the first few.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
    pub total: usize,
}

impl MetricReport {
    const SHOWN: usize = 8;
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.total > self.violations.len() {
            write!(f, "; ... {} more", self.total - self.violations.len())?;
        }
        Ok(())
    }
}

/// Pursuer travel times between every pair of nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct PursuerMetric {
    d: Vec<Vec<f64>>,
}

impl PursuerMetric {
    /// Wraps a table without checking it; see [`validate_metric`].
    pub fn from_table(d: Vec<Vec<f64>>) -> Result<Self, NetworkError> {
        let m = d.len();
        if d.iter().any(|row| row.len() != m) {
            return Err(NetworkError::MetricShape { m });
        }
        Ok(PursuerMetric { d })
    }

    /// The all-zero metric: an infinitely fast pursuer.
    pub fn zero(m: usize) -> Self {
        PursuerMetric {
            d: vec![vec![0.0; m]; m],
        }
    }

    #[inline]
    pub fn get(&self, i: NodeId, j: NodeId) -> f64 {
        self.d[i.idx()][j.idx()]
    }

    pub fn node_count(&self) -> usize {
        self.d.len()
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.d
    }
}

/// Straight-line distance divided by the pursuer speed, validated.
pub fn euclidean_metric(network: &RoadNetwork, speed: f64) -> Result<PursuerMetric, NetworkError> {
    if !(speed > 0.0) || !speed.is_finite() {
        return Err(NetworkError::NonPositiveSpeed(speed));
    }
    let m = network.node_count();
    let mut pts = Vec::with_capacity(m);
    for j in network.nodes() {
        pts.push(
            network
                .coords(j)
                .ok_or(NetworkError::MissingCoordinates { node: j.0 })?,
        );
    }
    let d = pts
        .iter()
        .map(|a| {
            pts.iter()
                .map(|b| (a.0 - b.0).hypot(a.1 - b.1) / speed)
                .collect()
        })
        .collect();
    let metric = PursuerMetric { d };
    validate_metric(&metric, network).map_err(NetworkError::InvalidMetric)?;
    Ok(metric)
}

/// Smallest speed strictly above which the Euclidean metric keeps the pursuer
/// faster than the evader on every edge: `max over edges of dist / T`.
pub fn speed_floor(network: &RoadNetwork) -> Result<f64, NetworkError> {
    let mut floor: f64 = 0.0;
    for e in network.edges() {
        let a = network
            .coords(e.from)
            .ok_or(NetworkError::MissingCoordinates { node: e.from.0 })?;
        let b = network
            .coords(e.to)
            .ok_or(NetworkError::MissingCoordinates { node: e.to.0 })?;
        floor = floor.max((a.0 - b.0).hypot(a.1 - b.1) / e.time);
    }
    Ok(floor)
}

/// Checks zero diagonal, nonnegativity, all `m³` triangle triples and the
/// speed advantage on every edge.
pub fn validate_metric(metric: &PursuerMetric, network: &RoadNetwork) -> Result<(), MetricReport> {
    let m = network.node_count();
    let mut found = Vec::new();
    let mut total = 0usize;
    let mut push = |v: MetricViolation| {
        total += 1;
        if found.len() < MetricReport::SHOWN {
            found.push(v);
        }
    };
    if metric.node_count() != m {
        push(MetricViolation::NonZeroDiagonal {
            node: 0,
            value: f64::NAN,
        });
    } else {
        let d = &metric.d;
        for (i, row) in d.iter().enumerate() {
            if row[i] != 0.0 {
                push(MetricViolation::NonZeroDiagonal {
                    node: i + 1,
                    value: row[i],
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if value < 0.0 || value.is_nan() {
                    push(MetricViolation::Negative {
                        from: i + 1,
                        to: j + 1,
                        value,
                    });
                }
            }
        }
        for i in 0..m {
            for s in 0..m {
                for j in 0..m {
                    if !time::le(d[i][j], d[i][s] + d[s][j]) {
                        push(MetricViolation::Triangle {
                            i: i + 1,
                            s: s + 1,
                            j: j + 1,
                        });
                    }
                }
            }
        }
        for e in network.edges() {
            let p = metric.get(e.from, e.to);
            if !(p < e.time) {
                push(MetricViolation::SpeedAdvantage {
                    from: e.from.0,
                    to: e.to.0,
                    pursuer: p,
                    evader: e.time,
                });
            }
        }
    }
    if total == 0 {
        Ok(())
    } else {
        Err(MetricReport {
            violations: found,
            total,
        })
    }
}

/// Metric description as written in a metric file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MetricSpec {
    Euclidean { speed: f64 },
    Table { d: Vec<Vec<f64>> },
}

impl MetricSpec {
    /// Builds and validates the metric for `network`.
    pub fn build(&self, network: &RoadNetwork) -> Result<PursuerMetric, NetworkError> {
        match self {
            MetricSpec::Euclidean { speed } => euclidean_metric(network, *speed),
            MetricSpec::Table { d } => {
                if d.len() != network.node_count() {
                    return Err(NetworkError::MetricShape {
                        m: network.node_count(),
                    });
                }
                let metric = PursuerMetric::from_table(d.clone())?;
                validate_metric(&metric, network).map_err(NetworkError::InvalidMetric)?;
                Ok(metric)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seven() -> RoadNetwork {
        RoadNetwork::new(
            7,
            &[
                (1, 3, 6.83),
                (1, 2, 4.83),
                (3, 5, 5.00),
                (3, 4, 5.23),
                (4, 6, 4.24),
                (4, 7, 5.48),
                (2, 7, 9.83),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn seven_node_network_goals() {
        let g = seven();
        assert_eq!(g.goals(), &[NodeId(5), NodeId(6), NodeId(7)]);
    }

    #[test]
    fn single_edge_is_smallest_network() {
        let g = RoadNetwork::new(2, &[(1, 2, 5.0)], None).unwrap();
        assert_eq!(g.goals(), &[NodeId(2)]);
        let paths = enumerate_paths(&g, PathOrder::Declared, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].length(), 5.0);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            RoadNetwork::new(3, &[(1, 2, 1.0), (2, 3, 1.0), (3, 2, 1.0)], None),
            Err(NetworkError::CycleDetected { .. })
        ));
        assert_eq!(RoadNetwork::new(1, &[], None), Err(NetworkError::EntryIsGoal));
        assert_eq!(
            RoadNetwork::new(3, &[(1, 2, 1.0), (3, 2, 1.0)], None),
            Err(NetworkError::UnreachableNode { node: 3 })
        );
        assert!(matches!(
            RoadNetwork::new(2, &[(1, 2, 0.0)], None),
            Err(NetworkError::NonPositiveEdgeTime { .. })
        ));
        assert!(matches!(
            RoadNetwork::new(2, &[(1, 2, -1.0)], None),
            Err(NetworkError::NonPositiveEdgeTime { .. })
        ));
    }

    #[test]
    fn two_cycle_is_detected() {
        let r = RoadNetwork::new(2, &[(1, 2, 1.0), (2, 1, 1.0)], None);
        assert!(matches!(r, Err(NetworkError::CycleDetected { .. })));
    }

    #[test]
    fn declared_goals_are_cross_checked() {
        let mut spec = seven().to_spec();
        spec.goals = Some(vec![5, 6]);
        assert!(matches!(
            validate_network(&spec),
            Err(NetworkError::GoalMismatch { .. })
        ));
        spec.goals = Some(vec![7, 6, 5]);
        assert!(validate_network(&spec).is_ok());
    }

    #[test]
    fn path_orders() {
        let g = seven();
        let seqs = |o| -> Vec<Vec<usize>> {
            enumerate_paths(&g, o, DEFAULT_PATH_CAP)
                .unwrap()
                .iter()
                .map(|p| p.nodes.iter().map(|n| n.0).collect())
                .collect()
        };
        assert_eq!(
            seqs(PathOrder::Declared),
            vec![vec![1, 3, 5], vec![1, 3, 4, 6], vec![1, 3, 4, 7], vec![1, 2, 7]]
        );
        assert_eq!(
            seqs(PathOrder::Lexicographic),
            vec![vec![1, 2, 7], vec![1, 3, 4, 6], vec![1, 3, 4, 7], vec![1, 3, 5]]
        );
    }

    #[test]
    fn path_cap() {
        let g = seven();
        assert_eq!(
            enumerate_paths(&g, PathOrder::Declared, 3),
            Err(NetworkError::PathExplosion { count: 4, cap: 3 })
        );
        assert_eq!(count_paths(&g), 4);
    }

    #[test]
    fn schedule_rows() {
        let g = seven();
        let paths = enumerate_paths(&g, PathOrder::Declared, DEFAULT_PATH_CAP).unwrap();
        let s = build_schedule(&paths, 7).unwrap();
        assert!(s.row(NodeId(1)).iter().all(|&t| t == 0.0));
        assert_eq!(s.through(NodeId(7)).to_vec(), vec![3, 4]);
        assert_eq!(s.through(NodeId(3)).to_vec(), vec![1, 2, 3]);
        assert_eq!(s.visit(NodeId(2), 1), f64::INFINITY);
        assert!(time::eq(s.visit(NodeId(2), 4), 4.83));
        assert_eq!(
            build_schedule(&paths[..1], 7),
            Err(NetworkError::OrphanUgs { node: 2 })
        );
        assert_eq!(build_schedule(&[], 7), Err(NetworkError::NoPaths));
    }

    #[test]
    fn triangle_violation_is_reported() {
        let g = RoadNetwork::new(3, &[(1, 2, 5.0), (2, 3, 5.0)], None).unwrap();
        let d = vec![
            vec![0.0, 1.0, 10.0],
            vec![1.0, 0.0, 1.0],
            vec![10.0, 1.0, 0.0],
        ];
        let report = validate_metric(&PursuerMetric::from_table(d).unwrap(), &g).unwrap_err();
        assert_eq!(
            report.violations[0],
            MetricViolation::Triangle { i: 1, s: 2, j: 3 }
        );
    }

    #[test]
    fn zero_metric_is_valid() {
        let g = seven();
        assert!(validate_metric(&PursuerMetric::zero(7), &g).is_ok());
    }

    #[test]
    fn euclidean_checks() {
        let g = RoadNetwork::new(
            3,
            &[(1, 2, 3.0), (1, 3, 3.0)],
            Some(&[(0.0, 0.0), (4.0, 0.0), (0.0, 2.0)]),
        )
        .unwrap();
        // Edge 1->2 is 4 long but only 3 time units: needs V > 4/3.
        assert!(time::eq(speed_floor(&g).unwrap(), 4.0 / 3.0));
        match euclidean_metric(&g, 1.3) {
            Err(NetworkError::InvalidMetric(r)) => assert!(matches!(
                r.violations[0],
                MetricViolation::SpeedAdvantage { from: 1, to: 2, .. }
            )),
            other => panic!("expected violation, got {other:?}"),
        }
        let d = euclidean_metric(&g, 2.0).unwrap();
        assert_eq!(d.get(NodeId(2), NodeId(2)), 0.0);
        assert!(time::eq(d.get(NodeId(2), NodeId(3)), 20f64.sqrt() / 2.0));
        assert_eq!(euclidean_metric(&g, 0.0), Err(NetworkError::NonPositiveSpeed(0.0)));
        let bare = RoadNetwork::new(2, &[(1, 2, 1.0)], None).unwrap();
        assert_eq!(
            euclidean_metric(&bare, 1.0),
            Err(NetworkError::MissingCoordinates { node: 1 })
        );
    }

    #[test]
    fn metric_spec_json() {
        let e: MetricSpec = serde_json::from_str(r#"{"kind":"euclidean","speed":1.62}"#).unwrap();
        assert_eq!(e, MetricSpec::Euclidean { speed: 1.62 });
        let t: MetricSpec = serde_json::from_str(r#"{"kind":"table","d":[[0,1],[1,0]]}"#).unwrap();
        assert!(matches!(t, MetricSpec::Table { .. }));
    }
}
