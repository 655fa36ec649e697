use crate::{Error, Result};
use rand::Rng;
use std::fmt;

/// A point of {0,1}^n. Variable indices are 0-based internally; external
/// formats are 1-based (see `io`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn zeros(n: usize) -> Self {
        Assignment {
            bits: vec![false; n],
        }
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// Point number `index` of the cube: bit i of `index` is the value of
    /// variable i. This ordering also defines truth-table indexing.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 64);
        let bits = (0..n).map(|i| (index >> i) & 1 == 1).collect();
        Assignment { bits }
    }

    pub fn set_from_index(&mut self, index: u64) {
        for i in 0..self.bits.len() {
            self.bits[i] = (index >> i) & 1 == 1;
        }
    }

    pub fn index(&self) -> u64 {
        assert!(self.bits.len() <= 64);
        let mut idx = 0u64;
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                idx |= 1 << i;
            }
        }
        idx
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let bits = (0..n).map(|_| rng.gen::<bool>()).collect();
        Assignment { bits }
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, var: u32) -> bool {
        self.bits[var as usize]
    }

    pub fn set(&mut self, var: u32, val: bool) {
        self.bits[var as usize] = val;
    }

    pub fn flip(&mut self, var: u32) {
        self.bits[var as usize] ^= true;
    }

    pub fn xor(&self, other: &Assignment) -> Assignment {
        assert_eq!(self.n(), other.n());
        Assignment {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Indices of the coordinates set to 1.
    pub fn support(&self) -> Vec<u32> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u32))
            .collect()
    }

    pub fn with_zeroed<I: IntoIterator<Item = u32>>(&self, vars: I) -> Assignment {
        let mut out = self.clone();
        for v in vars {
            out.set(v, false);
        }
        out
    }

    pub fn with_restriction(&self, q: &RestrictionSeq) -> Assignment {
        let mut out = self.clone();
        q.apply(&mut out);
        out
    }

    pub fn to_bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Parse "0110…": character i is the value of variable i (1-based x_{i+1}).
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::Malformed(format!(
                        "bitstring may only contain 0/1, got {c:?}"
                    )))
                }
            }
        }
        Ok(Assignment { bits })
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({})", self.to_bitstring())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// An ordered sequence of variable fixings, each variable at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RestrictionSeq {
    pairs: Vec<(u32, bool)>,
}

impl RestrictionSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, bool)>>(pairs: I) -> Result<Self> {
        let mut q = RestrictionSeq::new();
        for (v, b) in pairs {
            q.push(v, b)?;
        }
        Ok(q)
    }

    pub fn push(&mut self, var: u32, val: bool) -> Result<()> {
        if self.fixes(var) {
            return Err(Error::Malformed(format!(
                "variable x{} restricted twice",
                var + 1
            )));
        }
        self.pairs.push((var, val));
        Ok(())
    }

    pub fn fixes(&self, var: u32) -> bool {
        self.pairs.iter().any(|&(v, _)| v == var)
    }

    pub fn value_of(&self, var: u32) -> Option<bool> {
        self.pairs.iter().find(|&&(v, _)| v == var).map(|&(_, b)| b)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn fixed_vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|&(v, _)| v)
    }

    pub fn apply(&self, x: &mut Assignment) {
        for &(v, b) in &self.pairs {
            x.set(v, b);
        }
    }
}
