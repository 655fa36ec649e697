//! Membership-query primitives over low-degree XOR polynomials.
//!
//! The workhorse fact: a non-constant function of degree at most d differs
//! from its value at 0 on at least a 2^-d fraction of the cube, so
//! ⌈2^d ln(1/δ)⌉ uniform probes find a witness with probability 1-δ. Paired
//! queries turn "f vs f-with-a-block-zeroed" into the same game, and a
//! binary search over the differing coordinates extracts one relevant
//! variable per witness.

use crate::boolfn::{Assignment, F2Polynomial, Monomial, Oracle, SizeRange};
use crate::{Error, Result};
use itertools::Itertools;
use rand::Rng;
use std::collections::BTreeSet;

/// Degree bound and failure budget for a single probe/search primitive.
#[derive(Clone, Copy, Debug)]
pub struct ProbeParams {
    pub degree: u32,
    pub delta: f64,
}

impl ProbeParams {
    pub fn new(degree: u32, delta: f64) -> Self {
        assert!(delta > 0.0 && delta < 1.0, "delta must be in (0,1)");
        ProbeParams { degree, delta }
    }

    /// Splitting the failure budget across `parts` uses of a primitive.
    pub fn split(&self, parts: usize) -> Self {
        ProbeParams {
            degree: self.degree,
            delta: self.delta / parts.max(1) as f64,
        }
    }
}

/// ⌈2^d · ln(1/δ)⌉ — enough uniform points that a non-constant degree-d
/// function reveals itself except with probability δ.
pub fn probe_samples(degree: u32, delta: f64) -> u64 {
    let d = degree.min(62);
    ((1u64 << d) as f64 * (1.0 / delta).ln()).ceil() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constancy {
    Constant(bool),
    /// A point whose value differs from f(0…0).
    Witness(Assignment),
}

/// Decide constancy of a degree-bounded function on the subcube where all
/// coordinates outside `universe` are 0. The caller must pick a universe
/// containing every relevant variable of the probed function; probes draw
/// uniformly on the universe and keep everything else at 0.
pub fn probe_nonconstant<O: Oracle + ?Sized>(
    o: &mut O,
    universe: &[u32],
    p: &ProbeParams,
) -> Result<Constancy> {
    let n = o.n();
    let zero = Assignment::zeros(n);
    let f0 = o.query(&zero)?;
    let m = probe_samples(p.degree, p.delta);
    let mut x = Assignment::zeros(n);
    for _ in 0..m {
        for &v in universe {
            let b = o.rng().gen::<bool>();
            x.set(v, b);
        }
        if o.query(&x)? != f0 {
            return Ok(Constancy::Witness(x));
        }
    }
    Ok(Constancy::Constant(f0))
}

/// Binary search for a coordinate whose flip changes the queried function.
/// `a` and `b` must disagree under `query`; every step keeps a disagreeing
/// pair while halving (lexicographically first half flips first) the set of
/// differing coordinates. Uses at most ⌈log2 |diff|⌉ queries.
pub fn binary_search_flip<Q>(
    mut query: Q,
    a: &Assignment,
    fa: bool,
    b: &Assignment,
) -> Result<u32>
where
    Q: FnMut(&Assignment) -> Result<bool>,
{
    let mut lo = a.clone();
    let mut flo = fa;
    let mut diff: Vec<u32> = (0..a.n() as u32)
        .filter(|&v| a.get(v) != b.get(v))
        .collect();
    assert!(!diff.is_empty(), "binary search needs a differing pair");
    while diff.len() > 1 {
        let half = diff.len() / 2;
        let mut mid = lo.clone();
        for &v in &diff[..half] {
            mid.flip(v);
        }
        let fmid = query(&mid)?;
        if fmid != flo {
            diff.truncate(half);
        } else {
            lo = mid;
            flo = fmid;
            diff.drain(..half);
        }
    }
    Ok(diff[0])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewVar {
    /// The function agrees with its restriction that zeroes everything
    /// outside `known` (whp): no further relevant variable to find.
    AllFound,
    Found(u32),
}

/// One round of relevant-variable discovery: probes g(x) = f(x) +
/// f(x with the unknown block zeroed), which vanishes at 0 and has degree
/// at most `p.degree`; a witness yields a new relevant variable outside
/// `known` by binary search. Each g-query costs two f-queries.
pub fn find_new_relevant_var<O: Oracle + ?Sized>(
    o: &mut O,
    known: &BTreeSet<u32>,
    universe: &[u32],
    p: &ProbeParams,
) -> Result<NewVar> {
    let unknown: Vec<u32> = universe
        .iter()
        .copied()
        .filter(|v| !known.contains(v))
        .collect();
    if unknown.is_empty() {
        return Ok(NewVar::AllFound);
    }
    let n = o.n();
    let m = probe_samples(p.degree, p.delta);
    let mut x = Assignment::zeros(n);
    for _ in 0..m {
        for &v in universe {
            let b = o.rng().gen::<bool>();
            x.set(v, b);
        }
        let fx = o.query(&x)?;
        let x0 = x.with_zeroed(unknown.iter().copied());
        if o.query(&x0)? != fx {
            // x and x0 differ only on unknown coordinates.
            let var = binary_search_flip(|y| o.query(y), &x, fx, &x0)?;
            return Ok(NewVar::Found(var));
        }
    }
    Ok(NewVar::AllFound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelevantVars {
    All(BTreeSet<u32>),
    /// Discovery exceeded the cap: more than `cap` relevant variables.
    MoreThan(usize),
}

/// Accumulate relevant variables until none is found or the cap is passed.
/// Runs at most cap+1 rounds, each with failure budget δ/(cap+1).
pub fn find_relevant_vars<O: Oracle + ?Sized>(
    o: &mut O,
    universe: &[u32],
    cap: usize,
    p: &ProbeParams,
) -> Result<RelevantVars> {
    let per_round = p.split(cap + 1);
    let mut known = BTreeSet::new();
    loop {
        match find_new_relevant_var(o, &known, universe, &per_round)? {
            NewVar::AllFound => return Ok(RelevantVars::All(known)),
            NewVar::Found(v) => {
                known.insert(v);
                if known.len() > cap {
                    return Ok(RelevantVars::MoreThan(cap));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialStep {
    /// G = 1 + Σ_ξ f with M's variables set to ξ is identically zero (whp):
    /// M is a monomial of f contained in no larger one.
    Maximal,
    /// A relevant variable of G; M extended by it is again a sub-monomial
    /// of some monomial of f.
    Extend(u32),
}

/// One growth step of the maximal-monomial search.
///
/// Precondition: M is a sub-monomial of some monomial of f (any relevant
/// variable qualifies as a singleton seed). Writing f = M·g + h with no
/// monomial of h containing M, the probed function G equals g + 1, has
/// degree ≤ d − |M|, and is identically zero exactly when M is maximal.
/// G ≡ 1 would mean the precondition failed; that corner reports Maximal.
/// Each G-query costs 2^|M| f-queries.
pub fn maximal_monomial_step<O: Oracle + ?Sized>(
    o: &mut O,
    m: &Monomial,
    universe: &[u32],
    p: &ProbeParams,
) -> Result<MonomialStep> {
    let n = o.n();
    let k = m.degree() as u32;
    let rest: Vec<u32> = universe
        .iter()
        .copied()
        .filter(|v| !m.contains(*v))
        .collect();
    let g_degree = p.degree.saturating_sub(k);

    let mvars: Vec<u32> = m.vars().to_vec();
    let g_query = |o: &mut O, x: &Assignment| -> Result<bool> {
        let mut acc = true; // the constant 1
        let mut y = x.clone();
        for mask in 0u64..(1 << mvars.len()) {
            for (i, &v) in mvars.iter().enumerate() {
                y.set(v, (mask >> i) & 1 == 1);
            }
            acc ^= o.query(&y)?;
        }
        Ok(acc)
    };

    let zero = Assignment::zeros(n);
    let g0 = g_query(o, &zero)?;
    let samples = probe_samples(g_degree, p.delta);
    let mut x = Assignment::zeros(n);
    for _ in 0..samples {
        for &v in &rest {
            let b = o.rng().gen::<bool>();
            x.set(v, b);
        }
        if g_query(o, &x)? != g0 {
            let var = binary_search_flip(|y| g_query(o, y), &x, !g0, &zero)?;
            return Ok(MonomialStep::Extend(var));
        }
    }
    // No witness: G is constant (whp). G ≡ 0 means maximal; G ≡ 1 is
    // unreachable under the precondition.
    Ok(MonomialStep::Maximal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalMonomial {
    Found(Monomial),
    /// Growth passed `size_cap` variables without reaching maximality.
    TooLarge,
}

/// Grow a maximal monomial of f from a fresh relevant variable. Splits the
/// failure budget over the seed round plus up to size_cap growth steps.
/// If f is constant on the universe the constant-1 monomial is returned;
/// callers that care should check constancy first.
pub fn find_maximal_monomial<O: Oracle + ?Sized>(
    o: &mut O,
    universe: &[u32],
    size_cap: usize,
    p: &ProbeParams,
) -> Result<MaximalMonomial> {
    let per_step = p.split(size_cap + 2);
    let seed = match find_new_relevant_var(o, &BTreeSet::new(), universe, &per_step)? {
        NewVar::Found(v) => v,
        NewVar::AllFound => return Ok(MaximalMonomial::Found(Monomial::one())),
    };
    let mut m = Monomial::new([seed]);
    loop {
        match maximal_monomial_step(o, &m, universe, &per_step)? {
            MonomialStep::Maximal => return Ok(MaximalMonomial::Found(m)),
            MonomialStep::Extend(v) => {
                debug_assert!(!m.contains(v));
                m = m.union(v);
                if m.degree() > size_cap {
                    return Ok(MaximalMonomial::TooLarge);
                }
            }
        }
    }
}

/// Hard cap for exact interpolation (2^v membership queries).
pub const INTERPOLATION_CAP: usize = 24;

/// Recover the exact polynomial of f restricted to the subcube where all
/// variables outside `vars` are 0, by querying all 2^|vars| points and
/// running the Möbius transform over the subset lattice.
pub fn interpolate_poly<O: Oracle + ?Sized>(o: &mut O, vars: &[u32]) -> Result<F2Polynomial> {
    let v = vars.len();
    if v > INTERPOLATION_CAP {
        return Err(Error::EnumerationCap {
            needed: v,
            cap: INTERPOLATION_CAP,
        });
    }
    let n = o.n();
    let mut values = vec![false; 1 << v];
    let mut x = Assignment::zeros(n);
    for mask in 0..(1u64 << v) {
        for (i, &var) in vars.iter().enumerate() {
            x.set(var, (mask >> i) & 1 == 1);
        }
        values[mask as usize] = o.query(&x)?;
    }
    // zeta/Möbius over the subset lattice: coefficient of S is the XOR of
    // values on all subsets of S.
    for b in 0..v {
        for mask in 0..(1usize << v) {
            if mask & (1 << b) != 0 {
                values[mask] ^= values[mask ^ (1 << b)];
            }
        }
    }
    let mut p = F2Polynomial::zero(n);
    for (mask, &coeff) in values.iter().enumerate() {
        if coeff {
            let mvars = (0..v).filter(|i| mask & (1 << i) != 0).map(|i| vars[i]);
            p.toggle_monomial(Monomial::new(mvars));
        }
    }
    Ok(p)
}

/// cd(f): the least number of variables whose zero-substitution makes f
/// constant — equivalently, a minimum hitting set of the non-constant
/// monomials. `witness` is the lexicographically first minimum set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdResult {
    pub value: usize,
    pub witness: Vec<u32>,
}

/// Exhaustive cd, searching subsets by increasing size up to `cap`.
/// Returns None when cd(f) exceeds the cap.
pub fn cd(f: &F2Polynomial, cap: usize) -> Option<CdResult> {
    let targets: Vec<&Monomial> = f.monomials().filter(|m| !m.is_one()).collect();
    if targets.is_empty() {
        return Some(CdResult {
            value: 0,
            witness: vec![],
        });
    }
    let vars: Vec<u32> = f.support_vars().into_iter().collect();
    for k in 1..=cap.min(vars.len()) {
        for combo in vars.iter().copied().combinations(k) {
            let hits_all = targets
                .iter()
                .all(|m| combo.iter().any(|v| m.contains(*v)));
            if hits_all {
                return Some(CdResult {
                    value: k,
                    witness: combo,
                });
            }
        }
    }
    None
}

/// psize(f): the number of non-constant monomials — the sparsity of f or
/// f+1, whichever has no constant term. The witness is the full monomial
/// set, which re-evaluates to the function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsizeResult {
    pub value: usize,
    pub witness: Vec<Monomial>,
}

pub fn psize(f: &F2Polynomial) -> PsizeResult {
    let value = f.monomials().filter(|m| !m.is_one()).count();
    PsizeResult {
        value,
        witness: f.monomials().cloned().collect(),
    }
}

/// Monomials of f whose size lies in the interval.
pub fn low_degree_part(f: &F2Polynomial, range: SizeRange) -> F2Polynomial {
    f.part(range)
}
