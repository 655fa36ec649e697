use super::{Assignment, BoolFn, F2Polynomial, Monomial};
use crate::{Error, Result};

/// Dense truth table of a function on up to 24 variables (the hard cap is
/// what fits an in-memory bit vector comfortably; enumeration-based callers
/// apply their own caps). Bit `k` is f applied to `Assignment::from_index(k)`,
/// so the least significant bit is f(0…0).
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub const TABLE_VAR_CAP: usize = 24;

impl TruthTable {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= TABLE_VAR_CAP, "truth table over {n} variables");
        let words = vec![0u64; (1usize << n).div_ceil(64)];
        TruthTable { n, words }
    }

    pub fn from_fn<F: FnMut(&Assignment) -> bool>(n: usize, mut f: F) -> Self {
        let mut tt = Self::zeros(n);
        let mut x = Assignment::zeros(n);
        for idx in 0..(1u64 << n) {
            x.set_from_index(idx);
            if f(&x) {
                tt.set(idx, true);
            }
        }
        tt
    }

    pub fn from_boolfn<F: BoolFn + ?Sized>(f: &F) -> Self {
        Self::from_fn(f.n_vars(), |x| f.eval(x))
    }

    /// Inverse Möbius/zeta transform: coefficient bits -> value bits.
    pub fn from_anf(p: &F2Polynomial) -> Self {
        let n = p.n();
        let mut tt = Self::zeros(n);
        for m in p.monomials() {
            let mut mask = 0u64;
            for &v in m.vars() {
                mask |= 1 << v;
            }
            tt.set(mask, tt.get(mask) ^ true);
        }
        for b in 0..n {
            let bit = 1u64 << b;
            for idx in 0..(1u64 << n) {
                if idx & bit != 0 {
                    let low = tt.get(idx ^ bit);
                    if low {
                        tt.set(idx, tt.get(idx) ^ true);
                    }
                }
            }
        }
        tt
    }

    /// Möbius transform: value bits -> the unique XOR-of-monomials form.
    pub fn anf(&self) -> F2Polynomial {
        let mut coeff = self.clone();
        for b in 0..self.n {
            let bit = 1u64 << b;
            for idx in 0..(1u64 << self.n) {
                if idx & bit != 0 {
                    let low = coeff.get(idx ^ bit);
                    if low {
                        coeff.set(idx, coeff.get(idx) ^ true);
                    }
                }
            }
        }
        let mut p = F2Polynomial::zero(self.n);
        for idx in 0..(1u64 << self.n) {
            if coeff.get(idx) {
                let vars = (0..self.n as u32).filter(|&v| (idx >> v) & 1 == 1);
                p.toggle_monomial(Monomial::new(vars));
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, idx: u64) -> bool {
        (self.words[(idx / 64) as usize] >> (idx % 64)) & 1 == 1
    }

    pub fn set(&mut self, idx: u64, val: bool) {
        let w = &mut self.words[(idx / 64) as usize];
        if val {
            *w |= 1 << (idx % 64);
        } else {
            *w &= !(1 << (idx % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() {
            Some(true)
        } else {
            None
        }
    }

    /// Number of points where the two tables disagree.
    pub fn hamming(&self, other: &TruthTable) -> u64 {
        assert_eq!(self.n, other.n);
        let tail = self.len() % 64;
        let mut total = 0u64;
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let mut x = a ^ b;
            if tail != 0 && i == self.words.len() - 1 {
                x &= (1u64 << tail) - 1;
            }
            total += x.count_ones() as u64;
        }
        total
    }

    /// Fix one variable, producing a table over n-1 variables. The remaining
    /// variables keep their relative order.
    pub fn restrict(&self, var: u32, val: bool) -> TruthTable {
        assert!((var as usize) < self.n);
        let mut out = TruthTable::zeros(self.n - 1);
        let low_mask = (1u64 << var) - 1;
        for idx in 0..out.len() {
            let full = (idx & low_mask)
                | ((idx & !low_mask) << 1)
                | ((val as u64) << var);
            out.set(idx, self.get(full));
        }
        out
    }

    /// Hex encoding of the table bits read as one big little-endian bit
    /// string: the last hex digit holds f(0…0) in its least significant bit.
    pub fn to_hex(&self) -> String {
        let digits = (self.len() as usize).div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                let idx = (d * 4 + b) as u64;
                if idx < self.len() && self.get(idx) {
                    nib |= 1 << b;
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: usize, s: &str) -> Result<Self> {
        let mut tt = Self::zeros(n);
        let digits: Vec<char> = s.chars().collect();
        let expect = (tt.len() as usize).div_ceil(4).max(1);
        if digits.len() != expect {
            return Err(Error::Malformed(format!(
                "truth table for n={n} needs {expect} hex digits, got {}",
                digits.len()
            )));
        }
        for (pos, c) in digits.iter().rev().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Error::Malformed(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                let idx = (pos * 4 + b) as u64;
                if idx < tt.len() {
                    tt.set(idx, (nib >> b) & 1 == 1);
                } else if (nib >> b) & 1 == 1 {
                    return Err(Error::Malformed(
                        "hex truth table has bits beyond 2^n".into(),
                    ));
                }
            }
        }
        Ok(tt)
    }
}

impl BoolFn for TruthTable {
    fn n_vars(&self) -> usize {
        self.n
    }

    fn eval(&self, x: &Assignment) -> bool {
        self.get(x.index())
    }
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruthTable(n={}, 0x{})", self.n, self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_8_is_and_of_two() {
        let tt = TruthTable::from_hex(2, "8").unwrap();
        assert!(!tt.get(0b00));
        assert!(!tt.get(0b01));
        assert!(!tt.get(0b10));
        assert!(tt.get(0b11));
        assert_eq!(tt.to_hex(), "8");
        let p = tt.anf();
        assert_eq!(p.num_monomials(), 1);
        assert!(p.contains_monomial(&Monomial::new([0, 1])));
    }

    #[test]
    fn anf_round_trip() {
        let p = F2Polynomial::from_monomials(
            4,
            [
                Monomial::new([0, 2]),
                Monomial::new([1]),
                Monomial::one(),
            ],
        );
        let tt = TruthTable::from_anf(&p);
        // Direct evaluation agrees with the transform.
        for idx in 0..16 {
            let x = Assignment::from_index(idx, 4);
            assert_eq!(tt.get(idx), p.eval(&x));
        }
        assert_eq!(tt.anf(), p);
    }

    #[test]
    fn restrict_matches_pointwise() {
        let p = F2Polynomial::from_monomials(3, [Monomial::new([0, 1]), Monomial::new([2])]);
        let tt = TruthTable::from_anf(&p);
        let r = tt.restrict(1, true);
        // Remaining variables are x1, x3 in order.
        for idx in 0..4u64 {
            let x = Assignment::from_index(idx, 2);
            let mut full = Assignment::zeros(3);
            full.set(0, x.get(0));
            full.set(1, true);
            full.set(2, x.get(1));
            assert_eq!(r.get(idx), p.eval(&full));
        }
    }

    #[test]
    fn hamming_and_hex_round_trip() {
        let a = TruthTable::from_hex(3, "f0").unwrap();
        let b = TruthTable::from_hex(3, "f1").unwrap();
        assert_eq!(a.hamming(&b), 1);
        assert_eq!(TruthTable::from_hex(3, &a.to_hex()).unwrap(), a);
        assert!(TruthTable::from_hex(2, "123").is_err());
    }
}
