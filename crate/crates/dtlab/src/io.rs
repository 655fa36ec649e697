//! On-disk JSON formats for functions and distributions.
//!
//! Variable indices are 1-based in files (x1 is the first variable) and
//! 0-based in memory. Bitstrings list x1 first. Truth-table bits are a hex
//! string whose least significant bit is f(0…0).

use crate::boolfn::{
    Assignment, BoolFn, DecisionTree, Distribution, ExplicitDist, F2Polynomial, Monomial, Node,
    TruthTable,
};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "repr", rename_all = "lowercase")]
pub enum FunctionFile {
    Tree {
        n: usize,
        root: u32,
        nodes: Vec<NodeSpec>,
    },
    Poly {
        n: usize,
        monomials: Vec<Vec<u32>>,
    },
    Truthtable {
        n: usize,
        bits: String,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum NodeSpec {
    Leaf { leaf: u8 },
    Split { var: u32, lo: u32, hi: u32 },
}

/// A loaded function in whichever representation the file used.
#[derive(Clone, Debug)]
pub enum FunctionRepr {
    Tree(DecisionTree),
    Poly(F2Polynomial),
    Table(TruthTable),
}

impl FunctionRepr {
    pub fn n(&self) -> usize {
        match self {
            FunctionRepr::Tree(t) => t.n(),
            FunctionRepr::Poly(p) => p.n(),
            FunctionRepr::Table(t) => t.n(),
        }
    }

    pub fn as_boolfn(&self) -> &dyn BoolFn {
        match self {
            FunctionRepr::Tree(t) => t,
            FunctionRepr::Poly(p) => p,
            FunctionRepr::Table(t) => t,
        }
    }

    pub fn into_arc(self) -> Arc<dyn BoolFn> {
        match self {
            FunctionRepr::Tree(t) => Arc::new(t),
            FunctionRepr::Poly(p) => Arc::new(p),
            FunctionRepr::Table(t) => Arc::new(t),
        }
    }
}

impl BoolFn for FunctionRepr {
    fn n_vars(&self) -> usize {
        self.n()
    }
    fn eval(&self, x: &Assignment) -> bool {
        self.as_boolfn().eval(x)
    }
}

pub fn function_to_file(f: &FunctionRepr) -> FunctionFile {
    match f {
        FunctionRepr::Tree(t) => FunctionFile::Tree {
            n: t.n(),
            root: t.root(),
            nodes: t
                .nodes()
                .iter()
                .map(|node| match node {
                    Node::Leaf(b) => NodeSpec::Leaf { leaf: *b as u8 },
                    Node::Split { var, lo, hi } => NodeSpec::Split {
                        var: var + 1,
                        lo: *lo,
                        hi: *hi,
                    },
                })
                .collect(),
        },
        FunctionRepr::Poly(p) => FunctionFile::Poly {
            n: p.n(),
            monomials: p
                .monomials()
                .map(|m| m.vars().iter().map(|v| v + 1).collect())
                .collect(),
        },
        FunctionRepr::Table(t) => FunctionFile::Truthtable {
            n: t.n(),
            bits: t.to_hex(),
        },
    }
}

pub fn function_from_file(file: FunctionFile) -> Result<FunctionRepr> {
    match file {
        FunctionFile::Tree { n, root, nodes } => {
            let nodes: Vec<Node> = nodes
                .into_iter()
                .map(|spec| match spec {
                    NodeSpec::Leaf { leaf } => match leaf {
                        0 => Ok(Node::Leaf(false)),
                        1 => Ok(Node::Leaf(true)),
                        other => Err(Error::Malformed(format!("leaf value {other}"))),
                    },
                    NodeSpec::Split { var, lo, hi } => {
                        if var == 0 {
                            return Err(Error::Malformed(
                                "variable indices in files are 1-based".into(),
                            ));
                        }
                        Ok(Node::Split { var: var - 1, lo, hi })
                    }
                })
                .collect::<Result<_>>()?;
            Ok(FunctionRepr::Tree(DecisionTree::from_parts(n, nodes, root)?))
        }
        FunctionFile::Poly { n, monomials } => {
            let mut p = F2Polynomial::zero(n);
            for m in monomials {
                let mut vars = Vec::with_capacity(m.len());
                for v in m {
                    if v == 0 || v as usize > n {
                        return Err(Error::Malformed(format!(
                            "monomial variable x{v} outside 1..={n}"
                        )));
                    }
                    vars.push(v - 1);
                }
                p.toggle_monomial(Monomial::new(vars));
            }
            Ok(FunctionRepr::Poly(p))
        }
        FunctionFile::Truthtable { n, bits } => {
            Ok(FunctionRepr::Table(TruthTable::from_hex(n, &bits)?))
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "dist", rename_all = "lowercase")]
pub enum DistributionFile {
    Uniform,
    Explicit { points: Vec<WeightedPoint> },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct WeightedPoint {
    pub x: String,
    pub p: f64,
}

/// Resolve a distribution file against the arity of the paired function.
pub fn distribution_from_file(file: DistributionFile, n: usize) -> Result<Distribution> {
    match file {
        DistributionFile::Uniform => Ok(Distribution::uniform(n)),
        DistributionFile::Explicit { points } => {
            let pts = points
                .into_iter()
                .map(|wp| Ok((Assignment::from_bitstring(&wp.x)?, wp.p)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Distribution::Explicit(ExplicitDist::new(n, pts)?))
        }
    }
}

pub fn distribution_to_file(dist: &Distribution) -> Result<DistributionFile> {
    match dist {
        Distribution::Uniform { .. } => Ok(DistributionFile::Uniform),
        Distribution::Explicit(d) => Ok(DistributionFile::Explicit {
            points: d
                .points()
                .iter()
                .map(|(x, p)| WeightedPoint {
                    x: x.to_bitstring(),
                    p: *p,
                })
                .collect(),
        }),
        Distribution::Sampler(_) => Err(Error::Unsupported("serializing an opaque sampler")),
    }
}

pub fn load_function(path: &Path) -> Result<FunctionRepr> {
    let text = std::fs::read_to_string(path)?;
    function_from_file(serde_json::from_str(&text)?)
}

pub fn save_function(path: &Path, f: &FunctionRepr, pretty: bool) -> Result<()> {
    let file = function_to_file(f);
    let text = if pretty {
        serde_json::to_string_pretty(&file)?
    } else {
        serde_json::to_string(&file)?
    };
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_distribution(path: &Path, n: usize) -> Result<Distribution> {
    let text = std::fs::read_to_string(path)?;
    distribution_from_file(serde_json::from_str(&text)?, n)
}
