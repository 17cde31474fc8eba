//! Incidence algebra of a finite graded poset over `Z[x]`.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("rank is not monotone on {0} <= {1}")]
    RankNotMonotone(usize, usize),
    #[error("relation is not a partial order")]
    NotAPartialOrder,
    #[error("diagonal entry at {0} is not a unit")]
    NotInvertible(usize),
    #[error("degree exceeds rank on interval [{0}, {1}]")]
    DegreeExceedsRank(usize, usize),
    #[error("entry on [{0}, {1}] is not divisible by x - 1")]
    NotDivisible(usize, usize),
    #[error("no KLS solution on [{0}, {1}]")]
    NoSolution(usize, usize),
    #[error("Chow recursion fails on [{0}, {1}]")]
    RecursionMismatch(usize, usize),
}

/// A finite poset with a rank function compatible with the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    le: Vec<Vec<bool>>,
    rank: Vec<i64>,
    ext: Vec<usize>,
}

impl GradedPoset {
    pub fn new(le: Vec<Vec<bool>>, rank: Vec<i64>) -> Result<Self, PosetError> {
        let n = le.len();
        for s in 0..n {
            if !le[s][s] {
                return Err(PosetError::NotAPartialOrder);
            }
            for t in 0..n {
                if s != t && le[s][t] && le[t][s] {
                    return Err(PosetError::NotAPartialOrder);
                }
                if le[s][t] && (0..n).any(|u| le[t][u] && !le[s][u]) {
                    return Err(PosetError::NotAPartialOrder);
                }
                if le[s][t] && rank[s] > rank[t] {
                    return Err(PosetError::RankNotMonotone(s, t));
                }
            }
        }
        let mut ext: Vec<usize> = (0..n).collect();
        ext.sort_by_key(|&s| (rank[s], s));
        // rank ties between comparable elements would break the extension
        let mut pos = vec![0; n];
        for (i, &s) in ext.iter().enumerate() {
            pos[s] = i;
        }
        if (0..n).any(|s| (0..n).any(|t| s != t && le[s][t] && pos[s] > pos[t])) {
            ext = topological(&le);
        }
        Ok(GradedPoset { le, rank, ext })
    }

    /// The chain `0 < 1 < ... < n`.
    pub fn chain(n: usize) -> Self {
        let le = (0..=n).map(|s| (0..=n).map(|t| s <= t).collect()).collect();
        GradedPoset::new(le, (0..=n as i64).collect()).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn le(&self, s: usize, t: usize) -> bool {
        self.le[s][t]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.le
    }

    pub fn rank(&self, s: usize) -> i64 {
        self.rank[s]
    }

    /// `rho_{st}`.
    pub fn rho(&self, s: usize, t: usize) -> usize {
        (self.rank[t] - self.rank[s]) as usize
    }

    /// A linear extension, sorted by `(rank, index)` whenever that is one.
    pub fn linear_extension(&self) -> &[usize] {
        &self.ext
    }

    /// Comparable pairs `s <= t`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &s in &self.ext {
            for &t in &self.ext {
                if self.le[s][t] {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// Covers raise the rank by exactly one.
    pub fn is_graded(&self) -> bool {
        let n = self.len();
        (0..n).all(|s| {
            (0..n).all(|t| {
                let cover = s != t
                    && self.le[s][t]
                    && !(0..n).any(|u| u != s && u != t && self.le[s][u] && self.le[u][t]);
                !cover || self.rank[t] == self.rank[s] + 1
            })
        })
    }

    pub fn zeta(&self) -> IncElem {
        self.filled(|_, _| IntPoly::one())
    }

    pub fn delta(&self) -> IncElem {
        self.filled(|s, t| if s == t { IntPoly::one() } else { IntPoly::zero() })
    }

    /// The element with entry `f(s, t)` on every interval.
    pub fn filled(&self, f: impl Fn(usize, usize) -> IntPoly) -> IncElem {
        let n = self.len();
        let mut e = IncElem::zero(n);
        for (s, t) in self.intervals() {
            e.set(s, t, f(s, t));
        }
        e
    }

    fn between(&self, s: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.ext.iter().copied().filter(move |&w| self.le[s][w] && self.le[w][t])
    }
}

fn topological(le: &[Vec<bool>]) -> Vec<usize> {
    let n = le.len();
    let mut ext: Vec<usize> = (0..n).collect();
    ext.sort_by_key(|&s| ((0..n).filter(|&u| le[u][s]).count(), s));
    ext
}

/// An element of the incidence algebra: a polynomial on each interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncElem {
    n: usize,
    vals: Vec<IntPoly>,
}

impl IncElem {
    pub fn zero(n: usize) -> Self {
        IncElem { n, vals: vec![IntPoly::zero(); n * n] }
    }

    pub fn get(&self, s: usize, t: usize) -> &IntPoly {
        &self.vals[s * self.n + t]
    }

    pub fn set(&mut self, s: usize, t: usize, p: IntPoly) {
        self.vals[s * self.n + t] = p;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn neg(&self) -> IncElem {
        IncElem { n: self.n, vals: self.vals.iter().map(|p| -p).collect() }
    }
}

/// `(ab)_{st} = sum_{s <= w <= t} a_{sw} b_{wt}`.
pub fn multiply(x: &GradedPoset, a: &IncElem, b: &IncElem) -> IncElem {
    let mut out = IncElem::zero(x.len());
    for (s, t) in x.intervals() {
        let mut acc = IntPoly::zero();
        for w in x.between(s, t) {
            acc = &acc + &(a.get(s, w) * b.get(w, t));
        }
        out.set(s, t, acc);
    }
    out
}

/// Two-sided inverse by forward substitution along the linear extension.
pub fn invert(x: &GradedPoset, a: &IncElem) -> Result<IncElem, PosetError> {
    let one = BigInt::one();
    for s in 0..x.len() {
        let d = a.get(s, s);
        if d.degree() != Some(0) || (d.coeff(0) != one && d.coeff(0) != -&one) {
            return Err(PosetError::NotInvertible(s));
        }
    }
    let mut b = IncElem::zero(x.len());
    for &s in x.linear_extension() {
        b.set(s, s, a.get(s, s).clone());
        for &t in x.linear_extension() {
            if s == t || !x.le(s, t) {
                continue;
            }
            let mut acc = IntPoly::zero();
            for w in x.between(s, t).filter(|&w| w != t) {
                acc = &acc + &(b.get(s, w) * a.get(w, t));
            }
            // b_st a_tt = -acc, with a_tt = 1/a_tt
            b.set(s, t, -&(&acc * a.get(t, t)));
        }
    }
    Ok(b)
}

/// `(a^rev)_{st} = x^{rho_st} a_{st}(1/x)`.
pub fn rev(x: &GradedPoset, a: &IncElem) -> Result<IncElem, PosetError> {
    let mut out = IncElem::zero(x.len());
    for (s, t) in x.intervals() {
        let r = a
            .get(s, t)
            .reverse(x.rho(s, t))
            .ok_or(PosetError::DegreeExceedsRank(s, t))?;
        out.set(s, t, r);
    }
    Ok(out)
}

/// Möbius function by its defining recursion, as constant polynomials.
pub fn mobius(x: &GradedPoset) -> IncElem {
    let mut mu = IncElem::zero(x.len());
    for &s in x.linear_extension() {
        mu.set(s, s, IntPoly::one());
        for &t in x.linear_extension() {
            if s == t || !x.le(s, t) {
                continue;
            }
            let mut acc = IntPoly::zero();
            for w in x.between(s, t).filter(|&w| w != t) {
                acc = &acc + mu.get(s, w);
            }
            mu.set(s, t, -&acc);
        }
    }
    mu
}

/// `chi_{st} = sum_{s <= w <= t} mu_{sw} x^{rho_wt}`.
pub fn char_kernel(x: &GradedPoset) -> IncElem {
    let mu = mobius(x);
    x.filled(|s, t| {
        x.between(s, t).fold(IntPoly::zero(), |acc, w| {
            &acc + &(mu.get(s, w) * &IntPoly::monomial(x.rho(w, t)))
        })
    })
}

/// Result of the kernel test, with the first failing interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub is_kernel: bool,
    pub failing: Option<(usize, usize)>,
}

/// `kappa_ss = 1`, `kappa` in `I_rho`, `kappa^{-1} = kappa^rev` and every
/// off-diagonal entry divisible by `x - 1`.
pub fn is_kernel(x: &GradedPoset, k: &IncElem) -> KernelCheck {
    let fail = |s, t| KernelCheck { is_kernel: false, failing: Some((s, t)) };
    for s in 0..x.len() {
        if *k.get(s, s) != IntPoly::one() {
            return fail(s, s);
        }
    }
    let r = match rev(x, k) {
        Ok(r) => r,
        Err(PosetError::DegreeExceedsRank(s, t)) => return fail(s, t),
        Err(_) => unreachable!(),
    };
    let inv = invert(x, k).expect("unit diagonal");
    for (s, t) in x.intervals() {
        if inv.get(s, t) != r.get(s, t) || (s != t && k.get(s, t).div_x_minus_one().is_none()) {
            return fail(s, t);
        }
    }
    KernelCheck { is_kernel: true, failing: None }
}

/// `kappa / (x - 1)` off the diagonal, `-1` on it.
pub fn reduced_kernel(x: &GradedPoset, k: &IncElem) -> Result<IncElem, PosetError> {
    let mut out = IncElem::zero(x.len());
    for (s, t) in x.intervals() {
        let p = if s == t {
            IntPoly::constant(-1)
        } else {
            k.get(s, t).div_x_minus_one().ok_or(PosetError::NotDivisible(s, t))?
        };
        out.set(s, t, p);
    }
    Ok(out)
}

/// `H = -(kappa_bar)^{-1}`, checked against both defining recursions.
pub fn chow_polynomial(x: &GradedPoset, k: &IncElem) -> Result<IncElem, PosetError> {
    let kb = reduced_kernel(x, k)?;
    let h = invert(x, &kb)?.neg();
    for (s, t) in x.intervals() {
        if s == t {
            continue;
        }
        let mut right = IntPoly::zero();
        let mut left = IntPoly::zero();
        for w in x.between(s, t) {
            if w != s {
                right = &right + &(kb.get(s, w) * h.get(w, t));
            }
            if w != t {
                left = &left + &(h.get(s, w) * kb.get(w, t));
            }
        }
        if &right != h.get(s, t) || &left != h.get(s, t) {
            return Err(PosetError::RecursionMismatch(s, t));
        }
    }
    Ok(h)
}

/// Solves `x^rho f(1/x) - f = q` for `deg f < rho / 2`.
fn solve_low(q: &IntPoly, rho: usize) -> Option<IntPoly> {
    let f = IntPoly::new((0..rho.div_ceil(2)).map(|i| q.coeff(rho - i)).collect());
    let check = &f.reverse(rho)? - &f;
    (check == *q).then_some(f)
}

/// Right and left KLS functions: `f^rev = kappa f` and `g^rev = g kappa`.
pub fn kls_functions(x: &GradedPoset, k: &IncElem) -> Result<(IncElem, IncElem), PosetError> {
    let n = x.len();
    let ext = x.linear_extension();
    let mut f = IncElem::zero(n);
    for &s in ext.iter().rev() {
        f.set(s, s, IntPoly::one());
        for &t in ext {
            if s == t || !x.le(s, t) {
                continue;
            }
            let q = x
                .between(s, t)
                .filter(|&w| w != s)
                .fold(IntPoly::zero(), |acc, w| &acc + &(k.get(s, w) * f.get(w, t)));
            f.set(s, t, solve_low(&q, x.rho(s, t)).ok_or(PosetError::NoSolution(s, t))?);
        }
    }
    let mut g = IncElem::zero(n);
    for &t in ext {
        g.set(t, t, IntPoly::one());
        for &s in ext.iter().rev() {
            if s == t || !x.le(s, t) {
                continue;
            }
            let q = x
                .between(s, t)
                .filter(|&w| w != t)
                .fold(IntPoly::zero(), |acc, w| &acc + &(g.get(s, w) * k.get(w, t)));
            g.set(s, t, solve_low(&q, x.rho(s, t)).ok_or(PosetError::NoSolution(s, t))?);
        }
    }
    Ok((f, g))
}
