//! The pursuer's decision tree under a solved policy, with DOT and JSON
//! renderings.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::information::{delay_classes, partition};
use crate::instance::Instance;
use crate::network::NodeId;
use crate::pathset::PathSet;
use crate::simulator::SimError;
use crate::solver::{MoveKind, Resolution, SolveResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    /// The pursuer at `ugs` moves on and splits the set at the next node.
    Decision,
    /// The evader is caught at `ugs`; `latest` holds the capture time.
    Capture,
}

impl TreeKind {
    fn as_str(self) -> &'static str {
        match self {
            TreeKind::Decision => "decision",
            TreeKind::Capture => "capture",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeNode {
    pub ugs: NodeId,
    pub set: PathSet,
    pub latest: f64,
    pub kind: TreeKind,
    /// Where the move out of this node leads.
    pub branch: Option<Branch>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Branch {
    /// Every path in the set passes the target; arrive and wait.
    Capture(Box<TreeNode>),
    /// One red child per outcome the policy distinguishes, each tagged with
    /// the visit time its reading reveals, and the green child with the time
    /// after which a green reading is trusted.
    Split {
        red: Vec<(f64, TreeNode)>,
        green: (f64, Box<TreeNode>),
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionTree {
    pub root: TreeNode,
    pub resolution: Resolution,
}

pub fn build_tree(result: &SolveResult, inst: &Instance) -> Result<DecisionTree, SimError> {
    let root = expand(result, inst, NodeId::ENTRY, inst.initial_set())?;
    Ok(DecisionTree {
        root,
        resolution: result.options.resolution,
    })
}

fn expand(result: &SolveResult, inst: &Instance, j: NodeId, set: PathSet) -> Result<TreeNode, SimError> {
    let hole = SimError::PolicyHole { node: j, set };
    let cell = result.cell(j, set).ok_or(hole.clone())?;
    let (Some(u), Some(kind)) = (cell.next, cell.kind) else {
        return Err(hole);
    };
    let sched = &inst.schedule;
    let branch = match kind {
        MoveKind::Capture => Branch::Capture(Box::new(TreeNode {
            ugs: u,
            set,
            latest: sched.earliest(u, set),
            kind: TreeKind::Capture,
            branch: None,
        })),
        MoveKind::Split => {
            let (red, green) = partition(set, u, sched);
            let (reds, settle) = match result.options.resolution {
                Resolution::Eager => (vec![(sched.earliest(u, red), red)], sched.earliest(u, red)),
                Resolution::Strict => (delay_classes(red, u, sched), sched.latest(u, red)),
            };
            let red = reds
                .into_iter()
                .map(|(t, c)| Ok((t, expand(result, inst, u, c)?)))
                .collect::<Result<Vec<_>, SimError>>()?;
            Branch::Split {
                red,
                green: (settle, Box::new(expand(result, inst, u, green)?)),
            }
        }
    };
    Ok(TreeNode {
        ugs: j,
        set,
        latest: cell.latest,
        kind: TreeKind::Decision,
        branch: Some(branch),
    })
}

impl TreeNode {
    pub fn children(&self) -> Vec<&TreeNode> {
        match &self.branch {
            None => Vec::new(),
            Some(Branch::Capture(leaf)) => vec![leaf],
            Some(Branch::Split { red, green }) => red
                .iter()
                .map(|(_, c)| c)
                .chain(std::iter::once(&*green.1))
                .collect(),
        }
    }

    /// Edges on the longest root-to-leaf chain.
    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        let kids = self.children();
        if kids.is_empty() {
            vec![self]
        } else {
            kids.into_iter().flat_map(|c| c.leaves()).collect()
        }
    }

    pub fn to_json(&self) -> Value {
        let children = match &self.branch {
            None => json!({}),
            Some(Branch::Capture(leaf)) => json!({ "capture": leaf.to_json() }),
            Some(Branch::Split { red, green }) => json!({
                "red": red.iter().map(|(_, c)| c.to_json()).collect::<Vec<_>>(),
                "green": green.1.to_json(),
            }),
        };
        json!({
            "ugs": self.ugs.0,
            "set": self.set,
            "D": self.latest.is_finite().then_some(self.latest),
            "kind": self.kind.as_str(),
            "children": children,
        })
    }
}

impl DecisionTree {
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        self.root.leaves()
    }

    /// The leaf reached by the evader on path `k`.
    pub fn follow(&self, k: usize) -> Option<&TreeNode> {
        self.branch(k).and_then(|b| b.last().copied())
    }

    /// Tree nodes from the root to the leaf the evader on path `k` reaches.
    pub fn branch(&self, k: usize) -> Option<Vec<&TreeNode>> {
        let mut node = &self.root;
        if !node.set.contains(k) {
            return None;
        }
        let mut out = vec![node];
        loop {
            node = match &node.branch {
                None => return Some(out),
                Some(Branch::Capture(leaf)) => leaf,
                Some(Branch::Split { red, green }) => red
                    .iter()
                    .map(|(_, c)| c)
                    .find(|c| c.set.contains(k))
                    .unwrap_or(&green.1),
            };
            out.push(node);
        }
    }

    /// Preorder `(ugs, set, kind)` triples: the policy's shape without its
    /// timing, for spotting structural changes between parameter values.
    pub fn signature(&self) -> Vec<(NodeId, PathSet, TreeKind)> {
        fn walk(n: &TreeNode, out: &mut Vec<(NodeId, PathSet, TreeKind)>) {
            out.push((n.ugs, n.set, n.kind));
            for c in n.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn to_json(&self) -> Value {
        self.root.to_json()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decision_tree {\n  node [shape=record, fontname=\"Helvetica\"];\n");
        let mut next_id = 0;
        dot_node(&self.root, &mut next_id, &mut out);
        out.push_str("}\n");
        out
    }
}

fn dot_node(node: &TreeNode, next_id: &mut usize, out: &mut String) -> usize {
    let id = *next_id;
    *next_id += 1;
    let set = node.set.to_string().replace('{', "\\{").replace('}', "\\}");
    let (shape, value) = match node.kind {
        TreeKind::Decision => ("", format!("D={:.2}", node.latest)),
        TreeKind::Capture => (", style=bold", format!("capture t={:.2}", node.latest)),
    };
    let _ = writeln!(out, "  n{id} [label=\"UGS {} | {set} | {value}\"{shape}];", node.ugs);
    match &node.branch {
        None => {}
        Some(Branch::Capture(leaf)) => {
            let c = dot_node(leaf, next_id, out);
            let _ = writeln!(out, "  n{id} -> n{c} [label=\"wait\"];");
        }
        Some(Branch::Split { red, green }) => {
            for (t, child) in red {
                let c = dot_node(child, next_id, out);
                let _ = writeln!(out, "  n{id} -> n{c} [label=\"red @ {t:.2}\", color=red];");
            }
            let c = dot_node(&green.1, next_id, out);
            let _ = writeln!(out, "  n{id} -> n{c} [label=\"green @ {:.2}\", color=green];", green.0);
        }
    }
    id
}
