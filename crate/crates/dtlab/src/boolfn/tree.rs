use super::terms::{DisjointTermSum, Term};
use super::truth_table::TruthTable;
use super::{Assignment, BoolFn, F2Polynomial};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(bool),
    /// `lo` is followed when the tested variable is 0, `hi` when it is 1.
    Split {
        var: u32,
        lo: u32,
        hi: u32,
    },
}

/// A binary decision tree stored as a node arena. Size is the number of
/// leaves, depth the maximum number of edges on a root-leaf path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTree {
    n: usize,
    nodes: Vec<Node>,
    root: u32,
}

impl DecisionTree {
    pub fn leaf(n: usize, value: bool) -> Self {
        DecisionTree {
            n,
            nodes: vec![Node::Leaf(value)],
            root: 0,
        }
    }

    /// Join two subtrees under a fresh root testing `var`.
    pub fn split(var: u32, lo: DecisionTree, hi: DecisionTree) -> Self {
        assert_eq!(lo.n, hi.n);
        assert!((var as usize) < lo.n);
        let mut nodes = lo.nodes;
        let offset = nodes.len() as u32;
        nodes.extend(hi.nodes.into_iter().map(|node| match node {
            Node::Leaf(b) => Node::Leaf(b),
            Node::Split { var, lo, hi } => Node::Split {
                var,
                lo: lo + offset,
                hi: hi + offset,
            },
        }));
        let lo_root = lo.root;
        let hi_root = hi.root + offset;
        nodes.push(Node::Split {
            var,
            lo: lo_root,
            hi: hi_root,
        });
        let root = nodes.len() as u32 - 1;
        DecisionTree {
            n: lo.n,
            nodes,
            root,
        }
    }

    pub fn from_parts(n: usize, nodes: Vec<Node>, root: u32) -> Result<Self> {
        let t = DecisionTree { n, nodes, root };
        t.validate()?;
        Ok(t)
    }

    /// Structural sanity: indices in range, n covers all tested variables,
    /// and the node graph reachable from the root is acyclic.
    pub fn validate(&self) -> Result<()> {
        if self.root as usize >= self.nodes.len() {
            return Err(Error::Malformed("tree root out of range".into()));
        }
        // Colors: 0 unvisited, 1 on stack, 2 done.
        let mut color = vec![0u8; self.nodes.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((i, exiting)) = stack.pop() {
            if exiting {
                color[i as usize] = 2;
                continue;
            }
            match color[i as usize] {
                1 => return Err(Error::Malformed("tree contains a cycle".into())),
                2 => continue,
                _ => {}
            }
            color[i as usize] = 1;
            stack.push((i, true));
            if let Node::Split { var, lo, hi } = self.nodes[i as usize] {
                if var as usize >= self.n {
                    return Err(Error::Malformed(format!(
                        "tree tests x{} but n = {}",
                        var + 1,
                        self.n
                    )));
                }
                for child in [lo, hi] {
                    if child as usize >= self.nodes.len() {
                        return Err(Error::Malformed("tree child index out of range".into()));
                    }
                    stack.push((child, false));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Leaf count. Shared subtrees (a DAG arena) count once per path, which
    /// is the tree-size semantics.
    pub fn size(&self) -> u64 {
        self.size_at(self.root)
    }

    fn size_at(&self, i: u32) -> u64 {
        match self.nodes[i as usize] {
            Node::Leaf(_) => 1,
            Node::Split { lo, hi, .. } => self.size_at(lo) + self.size_at(hi),
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth_at(self.root)
    }

    fn depth_at(&self, i: u32) -> u32 {
        match self.nodes[i as usize] {
            Node::Leaf(_) => 0,
            Node::Split { lo, hi, .. } => 1 + self.depth_at(lo).max(self.depth_at(hi)),
        }
    }

    /// Maximum number of 0-edges on any root-leaf path.
    pub fn zero_depth(&self) -> u32 {
        self.zero_depth_at(self.root)
    }

    fn zero_depth_at(&self, i: u32) -> u32 {
        match self.nodes[i as usize] {
            Node::Leaf(_) => 0,
            Node::Split { lo, hi, .. } => {
                (1 + self.zero_depth_at(lo)).max(self.zero_depth_at(hi))
            }
        }
    }

    /// Variables tested anywhere in the tree (structural, not semantic).
    pub fn vars_used(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Split { var, .. } => Some(*var),
                Node::Leaf(_) => None,
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// One term per 1-leaf; the term's literal count equals the leaf depth.
    pub fn to_terms(&self) -> DisjointTermSum {
        let mut terms = Vec::new();
        let mut path: Vec<(u32, bool)> = Vec::new();
        self.collect_terms(self.root, &mut path, &mut terms);
        DisjointTermSum::new(self.n, terms)
    }

    fn collect_terms(&self, i: u32, path: &mut Vec<(u32, bool)>, out: &mut Vec<Term>) {
        match self.nodes[i as usize] {
            Node::Leaf(true) => {
                let pos = path.iter().filter(|&&(_, b)| b).map(|&(v, _)| v).collect();
                let neg = path.iter().filter(|&&(_, b)| !b).map(|&(v, _)| v).collect();
                out.push(Term::new(pos, neg));
            }
            Node::Leaf(false) => {}
            Node::Split { var, lo, hi } => {
                path.push((var, false));
                self.collect_terms(lo, path, out);
                path.pop();
                path.push((var, true));
                self.collect_terms(hi, path, out);
                path.pop();
            }
        }
    }

    pub fn to_polynomial(&self) -> F2Polynomial {
        self.to_terms().to_polynomial()
    }

    pub fn to_truth_table(&self) -> TruthTable {
        TruthTable::from_fn(self.n, |x| self.eval(x))
    }
}

impl BoolFn for DecisionTree {
    fn n_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Assignment) -> bool {
        let mut i = self.root;
        loop {
            match self.nodes[i as usize] {
                Node::Leaf(b) => return b,
                Node::Split { var, lo, hi } => {
                    i = if x.get(var) { hi } else { lo };
                }
            }
        }
    }
}
