//! Ordered recursive solution of the latest-exit-time equation.
//!
//! `D(j | I)` is the latest time the pursuer can leave node `j`, knowing the
//! evader is on one of the paths in `I`, and still be sure of a capture.
//! Singletons have a closed form; larger sets are evaluated in increasing
//! cardinality from a restricted set of moves:
//!
//! * **capture**: every path in `I` passes `u`; arrive by the earliest visit
//!   and wait.
//! * **split**: some but not all paths pass `u`; the red and green outcomes
//!   are strictly smaller sets whose values are already known. The move is
//!   admissible only if the pursuer can afford to sit at `u` until a green
//!   reading means something.
//!
//! Nodes no path in `I` passes are never worth visiting.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::information::{delay_classes, partition, RealizableFamily};
use crate::instance::Instance;
use crate::network::{EvaderPath, NodeId, PursuerMetric, VisitSchedule};
use crate::pathset::PathSet;
use crate::time;

/// `D` value meaning "no admissible move": capture cannot be guaranteed.
pub const NO_GUARANTEE: f64 = f64::NEG_INFINITY;

/// How a split move accounts for paths of `I ∩ P_u` visiting `u` at
/// different times.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    /// Red leads to `I ∩ P_u`; the green outcome is trusted once the earliest
    /// red visit time has passed.
    #[default]
    Eager,
    /// Red is resolved per distinct visit time; the green outcome is trusted
    /// only after the latest red visit time.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Capture,
    Split,
}

/// An admissible move out of a set: go to `node`, where the best guaranteed
/// exit time is `value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub node: NodeId,
    pub value: f64,
    pub kind: MoveKind,
}

/// Solved entry for one `(node, set)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub latest: f64,
    pub next: Option<NodeId>,
    pub kind: Option<MoveKind>,
}

impl Cell {
    const NONE: Cell = Cell {
        latest: NO_GUARANTEE,
        next: None,
        kind: None,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub resolution: Resolution,
    /// Restrict the table to the realizable family (plus whatever the
    /// recursion touches).
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            resolution: Resolution::Eager,
            prune: true,
        }
    }
}

impl SolveOptions {
    pub fn full_lattice(resolution: Resolution) -> Self {
        SolveOptions {
            resolution,
            prune: false,
        }
    }

    pub fn pruned(resolution: Resolution) -> Self {
        SolveOptions {
            resolution,
            prune: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("full lattice over {0} paths is too large; enable pruning")]
    LatticeTooLarge(usize),
    #[error("malformed solve result: {0}")]
    Malformed(String),
}

/// `|P_k| - d(j, exit_k)`: head for the exit of path `k` and wait there.
pub fn base_case(j: NodeId, k: usize, schedule: &VisitSchedule, metric: &PursuerMetric) -> f64 {
    schedule.length(k) - metric.get(j, schedule.exit(k))
}

/// `max_i [T_k(i) - d(j, s_k^i)]`: the best node along path `k` to intercept
/// at. Equal to [`base_case`] whenever the metric obeys the triangle
/// inequality and the speed advantage.
pub fn base_case_max_form(j: NodeId, path: &EvaderPath, metric: &PursuerMetric) -> f64 {
    path.nodes
        .iter()
        .zip(&path.arrival)
        .map(|(&s, &t)| t - metric.get(j, s))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Incremental solver: a memo of solved sets that fills itself on demand.
pub struct Solver<'a> {
    inst: &'a Instance,
    options: SolveOptions,
    memo: HashMap<PathSet, Vec<Cell>>,
    order: Vec<PathSet>,
    on_demand: Vec<PathSet>,
    planned: std::collections::HashSet<PathSet>,
}

impl<'a> Solver<'a> {
    pub fn new(inst: &'a Instance, options: SolveOptions) -> Self {
        Solver {
            inst,
            options,
            memo: HashMap::new(),
            order: Vec::new(),
            on_demand: Vec::new(),
            planned: Default::default(),
        }
    }

    /// `D(j | set)`, solving `set` first if needed.
    pub fn latest(&mut self, j: NodeId, set: PathSet) -> f64 {
        self.ensure(set);
        self.memo[&set][j.idx()].latest
    }

    pub fn cell(&mut self, j: NodeId, set: PathSet) -> Cell {
        self.ensure(set);
        self.memo[&set][j.idx()]
    }

    fn ensure(&mut self, set: PathSet) {
        if set.is_empty() || self.memo.contains_key(&set) {
            return;
        }
        if !self.planned.is_empty() && !self.planned.contains(&set) {
            log::debug!("solving {set} on demand (outside the planned family)");
            self.on_demand.push(set);
        }
        let cells = self.solve_set(set);
        self.memo.insert(set, cells);
        self.order.push(set);
    }

    fn solve_set(&mut self, set: PathSet) -> Vec<Cell> {
        let sched = &self.inst.schedule;
        let metric = &self.inst.metric;
        let nodes = self.inst.node_count();
        if let Some(k) = set.only() {
            let exit = sched.exit(k);
            return (0..nodes)
                .map(NodeId::from_idx)
                .map(|j| Cell {
                    latest: base_case(j, k, sched, metric),
                    next: Some(exit),
                    kind: Some(MoveKind::Capture),
                })
                .collect();
        }
        let cands = self.candidate_moves(set);
        (0..nodes)
            .map(NodeId::from_idx)
            .map(|j| best_move(j, &cands, metric))
            .collect()
    }

    /// Admissible moves out of `set` with the exit time each guarantees at
    /// its target node. The list does not depend on the pursuer's current
    /// node; subtract the travel time to rank them from a given node.
    pub fn candidate_moves(&mut self, set: PathSet) -> Vec<Candidate> {
        let inst = self.inst;
        let sched = &inst.schedule;
        let mut out = Vec::new();
        for u in inst.network.nodes() {
            let (red, green) = partition(set, u, sched);
            if red.is_empty() {
                continue;
            }
            if green.is_empty() {
                out.push(Candidate {
                    node: u,
                    value: sched.earliest(u, set),
                    kind: MoveKind::Capture,
                });
                continue;
            }
            let green_exit = self.latest(u, green);
            let (wait_until, red_exit) = match self.options.resolution {
                Resolution::Eager => (sched.earliest(u, red), self.latest(u, red)),
                Resolution::Strict => {
                    let classes = delay_classes(red, u, sched);
                    let worst = classes
                        .iter()
                        .map(|&(_, c)| self.latest(u, c))
                        .fold(f64::INFINITY, f64::min);
                    (sched.latest(u, red), worst)
                }
            };
            if !time::le(wait_until, green_exit) {
                continue;
            }
            out.push(Candidate {
                node: u,
                value: red_exit.min(green_exit),
                kind: MoveKind::Split,
            });
        }
        out
    }

    pub fn finish(self) -> SolveResult {
        let mut order = self.order;
        order.sort_by_key(|s| s.order_key());
        SolveResult {
            paths: self.inst.path_count(),
            nodes: self.inst.node_count(),
            options: self.options,
            cells: self.memo,
            order,
            on_demand: self.on_demand,
        }
    }
}

/// Argmax over candidates from node `j`. Ties (within tolerance) go to
/// capture moves, then to the smaller node id.
fn best_move(j: NodeId, cands: &[Candidate], metric: &PursuerMetric) -> Cell {
    let mut best = Cell::NONE;
    for c in cands {
        let v = c.value - metric.get(j, c.node);
        let better = match (best.next, best.kind) {
            (None, _) => v > NO_GUARANTEE,
            (Some(b), Some(bk)) => {
                if time::eq(v, best.latest) {
                    (c.kind == MoveKind::Capture && bk == MoveKind::Split)
                        || (c.kind == bk && c.node < b)
                } else {
                    v > best.latest
                }
            }
            _ => unreachable!(),
        };
        if better {
            best = Cell {
                latest: v,
                next: Some(c.node),
                kind: Some(c.kind),
            };
        }
    }
    best
}

/// Solves every set of the chosen family in increasing cardinality.
///
/// With `options.prune` the family is the realizable one (computed here if
/// not supplied); sets the recursion needs outside it are solved on demand
/// and listed in [`SolveResult::on_demand`]. Without pruning every nonempty
/// subset of paths is solved.
pub fn solve(
    inst: &Instance,
    family: Option<&RealizableFamily>,
    options: SolveOptions,
) -> Result<SolveResult, SolveError> {
    let n = inst.path_count();
    let mut plan: Vec<PathSet> = if options.prune {
        let owned;
        let fam = match family {
            Some(f) => f,
            None => {
                owned = crate::information::realizable_sets(&inst.schedule);
                &owned
            }
        };
        let mut v = fam.sets.clone();
        v.extend((1..=n).map(PathSet::singleton));
        v.push(inst.initial_set());
        v
    } else {
        if n > 30 {
            return Err(SolveError::LatticeTooLarge(n));
        }
        PathSet::lattice(n)
    };
    plan.sort_by_key(|s| s.order_key());
    plan.dedup();

    let mut solver = Solver::new(inst, options);
    solver.planned = plan.iter().copied().collect();
    for set in plan {
        solver.ensure(set);
    }
    Ok(solver.finish())
}

/// Tables `D(j | I)` and `μ(j | I)` over every solved set.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub paths: usize,
    pub nodes: usize,
    pub options: SolveOptions,
    cells: HashMap<PathSet, Vec<Cell>>,
    /// Solved sets, by cardinality.
    pub order: Vec<PathSet>,
    /// Sets solved because the recursion needed them, outside the plan.
    pub on_demand: Vec<PathSet>,
}

impl SolveResult {
    pub fn initial_set(&self) -> PathSet {
        PathSet::full(self.paths)
    }

    pub fn cell(&self, j: NodeId, set: PathSet) -> Option<Cell> {
        self.cells.get(&set).and_then(|c| c.get(j.idx())).copied()
    }

    pub fn latest(&self, j: NodeId, set: PathSet) -> Option<f64> {
        self.cell(j, set).map(|c| c.latest)
    }

    pub fn next(&self, j: NodeId, set: PathSet) -> Option<NodeId> {
        self.cell(j, set).and_then(|c| c.next)
    }

    pub fn contains(&self, set: PathSet) -> bool {
        self.cells.contains_key(&set)
    }

    /// `D(1 | {1..n})`.
    pub fn root_latest(&self) -> f64 {
        self.latest(NodeId::ENTRY, self.initial_set())
            .expect("root set is always solved")
    }

    /// `μ(1 | {1..n})`.
    pub fn root_move(&self) -> Option<NodeId> {
        self.next(NodeId::ENTRY, self.initial_set())
    }

    /// The reported tolerable delay: `max(0, D(1 | {1..n}))`.
    pub fn tolerable_delay(&self) -> f64 {
        self.root_latest().max(0.0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for set in &self.order {
            for (i, c) in self.cells[set].iter().enumerate() {
                entries.push(json!({
                    "node": i + 1,
                    "set": set,
                    "D": c.latest.is_finite().then_some(c.latest),
                    "mu": c.next.map(|n| n.0),
                    "capture": c.kind == Some(MoveKind::Capture),
                }));
            }
        }
        json!({
            "meta": {
                "paths": self.paths,
                "nodes": self.nodes,
                "resolution": self.options.resolution,
                "prune": self.options.prune,
                "on_demand": self.on_demand,
                "tolerable_delay": self.tolerable_delay(),
            },
            "entries": entries,
        })
    }

    /// Reads back what [`SolveResult::to_json`] wrote.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, SolveError> {
        #[derive(Deserialize)]
        struct Meta {
            paths: usize,
            nodes: usize,
            resolution: Resolution,
            prune: bool,
            #[serde(default)]
            on_demand: Vec<PathSet>,
        }
        #[derive(Deserialize)]
        struct Entry {
            node: usize,
            set: PathSet,
            #[serde(rename = "D")]
            latest: Option<f64>,
            mu: Option<usize>,
            capture: bool,
        }
        let bad = |e: serde_json::Error| SolveError::Malformed(e.to_string());
        let meta: Meta = serde_json::from_value(value["meta"].clone()).map_err(bad)?;
        let entries: Vec<Entry> = serde_json::from_value(value["entries"].clone()).map_err(bad)?;
        let mut cells: HashMap<PathSet, Vec<Cell>> = HashMap::new();
        for e in entries {
            if e.node == 0 || e.node > meta.nodes {
                return Err(SolveError::Malformed(format!("node {} out of range", e.node)));
            }
            let row = cells
                .entry(e.set)
                .or_insert_with(|| vec![Cell::NONE; meta.nodes]);
            row[e.node - 1] = Cell {
                latest: e.latest.unwrap_or(NO_GUARANTEE),
                next: e.mu.map(NodeId),
                kind: e.mu.map(|_| {
                    if e.capture {
                        MoveKind::Capture
                    } else {
                        MoveKind::Split
                    }
                }),
            };
        }
        let mut order: Vec<PathSet> = cells.keys().copied().collect();
        order.sort_by_key(|s| s.order_key());
        let result = SolveResult {
            paths: meta.paths,
            nodes: meta.nodes,
            options: SolveOptions {
                resolution: meta.resolution,
                prune: meta.prune,
            },
            cells,
            order,
            on_demand: meta.on_demand,
        };
        if !result.contains(result.initial_set()) {
            return Err(SolveError::Malformed("root set missing".into()));
        }
        Ok(result)
    }
}
