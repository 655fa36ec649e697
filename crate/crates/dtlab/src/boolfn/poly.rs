use super::truth_table::TruthTable;
use super::{Assignment, BoolFn, RestrictionSeq};
use std::collections::BTreeSet;
use std::fmt;

/// A product of distinct variables; the empty product is the constant 1.
/// Ordering is lexicographic on the sorted variable lists, used only to keep
/// set iteration deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        let mut v: Vec<u32> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    /// The constant-1 monomial.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, var: u32) -> bool {
        self.0.binary_search(&var).is_ok()
    }

    pub fn is_sub_of(&self, other: &Monomial) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn without(&self, var: u32) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&v| v != var).collect())
    }

    pub fn union(&self, var: u32) -> Monomial {
        let mut v = self.0.clone();
        v.push(var);
        Monomial::new(v)
    }

    pub fn eval(&self, x: &Assignment) -> bool {
        self.0.iter().all(|&v| x.get(v))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for v in &self.0 {
            write!(f, "x{}", v + 1)?;
        }
        Ok(())
    }
}

/// An inclusive range of monomial sizes for degree filtering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeRange {
    lo: usize,
    hi: usize,
}

impl SizeRange {
    pub fn closed(lo: usize, hi: usize) -> Self {
        SizeRange { lo, hi }
    }

    pub fn up_to(hi: usize) -> Self {
        SizeRange { lo: 0, hi }
    }

    /// The half-open interval (lo, hi].
    pub fn left_open(lo: usize, hi: usize) -> Self {
        SizeRange { lo: lo + 1, hi }
    }

    pub fn contains(&self, size: usize) -> bool {
        self.lo <= size && size <= self.hi
    }
}

/// The unique multilinear XOR-of-monomials form of a boolean function.
/// Uniqueness makes structure semantic: a variable is relevant iff it
/// appears in some monomial, and the degree is the decision-tree depth
/// lower-bound machine.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Polynomial {
    n: usize,
    monomials: BTreeSet<Monomial>,
}

impl F2Polynomial {
    pub fn zero(n: usize) -> Self {
        F2Polynomial {
            n,
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.toggle_monomial(Monomial::one());
        p
    }

    /// Build from monomials with XOR semantics: a monomial appearing an even
    /// number of times cancels.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(n: usize, monomials: I) -> Self {
        let mut p = Self::zero(n);
        for m in monomials {
            p.toggle_monomial(m);
        }
        p
    }

    pub fn parity(n: usize, vars: &[u32]) -> Self {
        Self::from_monomials(n, vars.iter().map(|&v| Monomial::new([v])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn toggle_monomial(&mut self, m: Monomial) {
        debug_assert!(m.vars().iter().all(|&v| (v as usize) < self.n));
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&self, other: &F2Polynomial) -> F2Polynomial {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for m in &other.monomials {
            out.toggle_monomial(m.clone());
        }
        out
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn monomial_set(&self) -> &BTreeSet<Monomial> {
        &self.monomials
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// `Some(value)` when the polynomial is a constant function.
    pub fn is_constant(&self) -> Option<bool> {
        match self.monomials.len() {
            0 => Some(false),
            1 if self.monomials.iter().next().unwrap().is_one() => Some(true),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Variables appearing in some monomial — exactly the relevant variables,
    /// by uniqueness of the representation.
    pub fn support_vars(&self) -> BTreeSet<u32> {
        self.monomials
            .iter()
            .flat_map(|m| m.vars().iter().copied())
            .collect()
    }

    /// Monomials not strictly contained in any other monomial.
    pub fn maximal_monomials(&self) -> Vec<Monomial> {
        self.monomials
            .iter()
            .filter(|m| {
                !self
                    .monomials
                    .iter()
                    .any(|other| *m != other && m.is_sub_of(other))
            })
            .cloned()
            .collect()
    }

    /// Substitute one variable by a constant.
    pub fn restrict(&self, var: u32, val: bool) -> F2Polynomial {
        let mut out = Self::zero(self.n);
        for m in &self.monomials {
            if !m.contains(var) {
                out.toggle_monomial(m.clone());
            } else if val {
                out.toggle_monomial(m.without(var));
            }
            // var -> 0 kills the monomial
        }
        out
    }

    pub fn restrict_seq(&self, q: &RestrictionSeq) -> F2Polynomial {
        let mut out = self.clone();
        for (v, b) in q.iter() {
            out = out.restrict(v, b);
        }
        out
    }

    pub fn restrict_zeroed<I: IntoIterator<Item = u32>>(&self, vars: I) -> F2Polynomial {
        let kill: BTreeSet<u32> = vars.into_iter().collect();
        let mut out = Self::zero(self.n);
        for m in &self.monomials {
            if m.vars().iter().all(|v| !kill.contains(v)) {
                out.toggle_monomial(m.clone());
            }
        }
        out
    }

    /// g(x) = f(x + a): each x_i with a_i = 1 becomes x_i + 1 and the
    /// product re-expands with mod-2 cancellation.
    pub fn shift(&self, a: &Assignment) -> F2Polynomial {
        assert_eq!(a.n(), self.n);
        let mut out = Self::zero(self.n);
        for m in &self.monomials {
            let flipped: Vec<u32> = m.vars().iter().copied().filter(|&v| a.get(v)).collect();
            let kept: Vec<u32> = m.vars().iter().copied().filter(|&v| !a.get(v)).collect();
            for mask in 0u64..(1 << flipped.len()) {
                let mut vars = kept.clone();
                for (i, &v) in flipped.iter().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        vars.push(v);
                    }
                }
                out.toggle_monomial(Monomial::new(vars));
            }
        }
        out
    }

    /// The part of the polynomial whose monomial sizes fall in `range`.
    pub fn part(&self, range: SizeRange) -> F2Polynomial {
        let mut out = Self::zero(self.n);
        for m in &self.monomials {
            if range.contains(m.degree()) {
                out.monomials.insert(m.clone());
            }
        }
        out
    }

    pub fn from_monomial_set(n: usize, set: &BTreeSet<Monomial>) -> Self {
        F2Polynomial {
            n,
            monomials: set.clone(),
        }
    }

    pub fn to_truth_table(&self) -> TruthTable {
        TruthTable::from_anf(self)
    }
}

impl BoolFn for F2Polynomial {
    fn n_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Assignment) -> bool {
        let mut acc = false;
        for m in &self.monomials {
            acc ^= m.eval(x);
        }
        acc
    }
}

impl fmt::Debug for F2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials.iter().map(|m| format!("{m:?}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, mons: &[&[u32]]) -> F2Polynomial {
        F2Polynomial::from_monomials(n, mons.iter().map(|m| Monomial::new(m.iter().copied())))
    }

    #[test]
    fn cancellation() {
        let mut p = F2Polynomial::zero(3);
        p.toggle_monomial(Monomial::new([0, 1]));
        p.toggle_monomial(Monomial::new([0, 1]));
        assert!(p.is_zero());
        assert_eq!(p.is_constant(), Some(false));
    }

    #[test]
    fn restriction_examples() {
        // (x1x2 + x3 + 1) with x2 <- 0 gives x3 + 1.
        let p = poly(3, &[&[0, 1], &[2], &[]]);
        let r = p.restrict(1, false);
        assert_eq!(r, poly(3, &[&[2], &[]]));
        // x2 <- 1 gives x1 + x3 + 1.
        let r1 = p.restrict(1, true);
        assert_eq!(r1, poly(3, &[&[0], &[2], &[]]));
    }

    #[test]
    fn shift_example_and_pointwise_identity() {
        // f = x1x2 shifted by a = (1,0): f(x+a) = (x1+1)x2 = x1x2 + x2.
        let p = poly(2, &[&[0, 1]]);
        let a = Assignment::from_bitstring("10").unwrap();
        let g = p.shift(&a);
        assert_eq!(g, poly(2, &[&[0, 1], &[1]]));
        for idx in 0..4 {
            let x = Assignment::from_index(idx, 2);
            assert_eq!(g.eval(&x), p.eval(&x.xor(&a)));
        }
    }

    #[test]
    fn part_filters_by_size() {
        let p = poly(3, &[&[0, 1], &[0], &[2]]);
        assert_eq!(p.part(SizeRange::closed(1, 1)), poly(3, &[&[0], &[2]]));
        assert_eq!(p.part(SizeRange::left_open(1, 2)), poly(3, &[&[0, 1]]));
        assert_eq!(p.part(SizeRange::up_to(3)), p);
    }

    #[test]
    fn maximal_monomials_example() {
        let p = poly(3, &[&[0, 1], &[0], &[2]]);
        let max: Vec<_> = p.maximal_monomials();
        assert_eq!(max, vec![Monomial::new([0, 1]), Monomial::new([2])]);
    }

    #[test]
    fn support_is_relevance() {
        let p = poly(4, &[&[0, 1], &[1]]);
        let sup: Vec<u32> = p.support_vars().into_iter().collect();
        assert_eq!(sup, vec![0, 1]);
        // x3, x4 really are irrelevant: restriction doesn't change the function.
        for idx in 0..16u64 {
            let x = Assignment::from_index(idx, 4);
            let mut y = x.clone();
            y.flip(2);
            y.flip(3);
            assert_eq!(p.eval(&x), p.eval(&y));
        }
    }
}
