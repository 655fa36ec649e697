use super::truth_table::TruthTable;
use super::{Assignment, BoolFn, F2Polynomial, Monomial};

/// A conjunction of literals: every variable in `pos` must be 1, every
/// variable in `neg` must be 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pos: Vec<u32>,
    neg: Vec<u32>,
}

impl Term {
    pub fn new(mut pos: Vec<u32>, mut neg: Vec<u32>) -> Self {
        pos.sort_unstable();
        pos.dedup();
        neg.sort_unstable();
        neg.dedup();
        debug_assert!(pos.iter().all(|v| !neg.contains(v)));
        Term { pos, neg }
    }

    pub fn pos(&self) -> &[u32] {
        &self.pos
    }

    pub fn neg(&self) -> &[u32] {
        &self.neg
    }

    pub fn literal_count(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn satisfied_by(&self, x: &Assignment) -> bool {
        self.pos.iter().all(|&v| x.get(v)) && self.neg.iter().all(|&v| !x.get(v))
    }

    /// Two terms are contradictory when no assignment satisfies both, i.e.
    /// some variable appears with opposite polarity.
    pub fn contradicts(&self, other: &Term) -> bool {
        self.pos.iter().any(|v| other.neg.contains(v))
            || self.neg.iter().any(|v| other.pos.contains(v))
    }

    /// XOR expansion: Π pos · Π (x+1 over neg) as a set of monomials.
    fn monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(1 << self.neg.len());
        for mask in 0u64..(1 << self.neg.len()) {
            let mut vars = self.pos.clone();
            for (i, &v) in self.neg.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    vars.push(v);
                }
            }
            out.push(Monomial::new(vars));
        }
        out
    }
}

/// A sum of pairwise-contradictory terms; at most one term fires on any
/// point, so OR and XOR of the terms coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointTermSum {
    n: usize,
    terms: Vec<Term>,
}

impl DisjointTermSum {
    pub fn new(n: usize, terms: Vec<Term>) -> Self {
        DisjointTermSum { n, terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_pairwise_contradictory(&self) -> bool {
        for (i, a) in self.terms.iter().enumerate() {
            for b in &self.terms[i + 1..] {
                if !a.contradicts(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_polynomial(&self) -> F2Polynomial {
        let mut p = F2Polynomial::zero(self.n);
        for t in &self.terms {
            for m in t.monomials() {
                p.toggle_monomial(m);
            }
        }
        p
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut tt = TruthTable::zeros(self.n);
        // Disjointness means each term paints its own subcube.
        for t in &self.terms {
            let fixed: Vec<(u32, bool)> = t
                .pos
                .iter()
                .map(|&v| (v, true))
                .chain(t.neg.iter().map(|&v| (v, false)))
                .collect();
            let free: Vec<u32> = (0..self.n as u32)
                .filter(|v| !fixed.iter().any(|&(w, _)| w == *v))
                .collect();
            let mut x = Assignment::zeros(self.n);
            for &(v, b) in &fixed {
                x.set(v, b);
            }
            for mask in 0u64..(1 << free.len()) {
                for (i, &v) in free.iter().enumerate() {
                    x.set(v, (mask >> i) & 1 == 1);
                }
                tt.set(x.index(), true);
            }
        }
        tt
    }
}

impl BoolFn for DisjointTermSum {
    fn n_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Assignment) -> bool {
        self.terms.iter().any(|t| t.satisfied_by(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradiction_detection() {
        let a = Term::new(vec![0], vec![1]);
        let b = Term::new(vec![1], vec![]);
        let c = Term::new(vec![2], vec![]);
        assert!(a.contradicts(&b));
        assert!(!a.contradicts(&c));
    }

    #[test]
    fn expansion_matches_pointwise() {
        // x1 ∧ ¬x2 ∧ ¬x3 expands to 4 monomials.
        let dts = DisjointTermSum::new(3, vec![Term::new(vec![0], vec![1, 2])]);
        let p = dts.to_polynomial();
        assert_eq!(p.num_monomials(), 4);
        for idx in 0..8 {
            let x = Assignment::from_index(idx, 3);
            assert_eq!(dts.eval(&x), p.eval(&x), "point {idx}");
        }
        assert_eq!(dts.to_truth_table(), p.to_truth_table());
    }
}
