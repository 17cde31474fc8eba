use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Integer polynomial, coefficient `i` of `x^i`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_ints(&[c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly(c)
    }

    /// `(x - 1)^k`.
    pub fn x_minus_one_pow(k: usize) -> Self {
        let base = IntPoly::from_ints(&[-1, 1]);
        (0..k).fold(IntPoly::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    /// `x^d p(1/x)`; `None` if `deg p > d`.
    pub fn reverse(&self, d: usize) -> Option<Self> {
        if self.degree().is_some_and(|k| k > d) {
            return None;
        }
        Some(IntPoly::new((0..=d).map(|i| self.coeff(d - i)).collect()))
    }

    /// Exact quotient by `x - 1`, or `None` if `p(1) != 0`.
    pub fn div_x_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.0.len();
        let mut q = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for i in (1..n).rev() {
            carry += &self.0[i];
            q[i - 1] = carry.clone();
        }
        if (carry + &self.0[0]).is_zero() {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            match (i, show_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}x")?,
                (1, false) => write!(f, "x")?,
                (_, true) => write!(f, "{mag}x^{i}")?,
                (_, false) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Ascending integer array; coefficients beyond `i64` become strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = self
            .0
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        vals.serialize(s)
    }
}

/// Shape properties of a polynomial read as a degree-`d` sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeFlags {
    pub nonnegative: bool,
    pub palindromic: bool,
    pub unimodal: bool,
    /// Present when palindromic.
    pub gamma: Option<IntPoly>,
    pub gamma_positive: bool,
}

/// `p` is the sequence `p_0, ..., p_d`; palindromic means `p_i = p_{d-i}`.
pub fn shape_checks(p: &IntPoly, d: usize) -> ShapeFlags {
    let seq: Vec<BigInt> = (0..=d.max(p.degree().unwrap_or(0))).map(|i| p.coeff(i)).collect();
    let nonnegative = seq.iter().all(|c| !c.is_negative());
    let palindromic = p.degree().is_none_or(|k| k <= d) && (0..=d).all(|i| p.coeff(i) == p.coeff(d - i));
    let mut unimodal = true;
    let mut falling = false;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            unimodal = false;
        }
    }
    let gamma = if palindromic { gamma_vector(p, d).ok() } else { None };
    let gamma_positive = gamma
        .as_ref()
        .is_some_and(|g| g.coeffs().iter().all(|c| !c.is_negative()));
    ShapeFlags { nonnegative, palindromic, unimodal, gamma, gamma_positive }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial is not palindromic of degree {0}")]
pub struct NotPalindromic(pub usize);

/// Coefficients `gamma_i` with `p = sum gamma_i x^i (x+1)^(d-2i)`.
pub fn gamma_vector(p: &IntPoly, d: usize) -> Result<IntPoly, NotPalindromic> {
    if p.degree().is_some_and(|k| k > d) || (0..=d).any(|i| p.coeff(i) != p.coeff(d - i)) {
        return Err(NotPalindromic(d));
    }
    let x_plus_one = IntPoly::from_ints(&[1, 1]);
    let mut rest = p.clone();
    let mut gamma = Vec::new();
    for i in 0..=d / 2 {
        let g = rest.coeff(i);
        let basis = &IntPoly::monomial(i)
            * &(0..d - 2 * i).fold(IntPoly::one(), |acc, _| &acc * &x_plus_one);
        rest = &rest - &basis.scale(&g);
        gamma.push(g);
    }
    if !rest.is_zero() {
        return Err(NotPalindromic(d));
    }
    Ok(IntPoly::new(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = IntPoly::from_ints(&[1, 4, 1]);
        assert_eq!(p.to_string(), "x^2 + 4x + 1");
        assert_eq!(IntPoly::from_ints(&[0, 0, -4, 1]).to_string(), "x^3 - 4x^2");
        assert_eq!(IntPoly::from_ints(&[0, 0, 0]), IntPoly::zero());
        let q = &IntPoly::from_ints(&[-1, 1]) * &IntPoly::from_ints(&[1, 1]);
        assert_eq!(q, IntPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(IntPoly::x_minus_one_pow(3), IntPoly::from_ints(&[-1, 3, -3, 1]));
    }

    #[test]
    fn reversal_and_division() {
        assert_eq!(IntPoly::one().reverse(3), Some(IntPoly::monomial(3)));
        assert_eq!(IntPoly::from_ints(&[-1, 1]).reverse(1), Some(IntPoly::from_ints(&[1, -1])));
        assert_eq!(IntPoly::monomial(2).reverse(1), None);
        let k = IntPoly::from_ints(&[0, 0, 0, -1, 1]);
        assert_eq!(k.div_x_minus_one(), Some(IntPoly::monomial(3)));
        assert_eq!(IntPoly::from_ints(&[1, 1]).div_x_minus_one(), None);
    }

    #[test]
    fn shapes() {
        let h = shape_checks(&IntPoly::from_ints(&[1, 4, 1]), 2);
        assert!(h.nonnegative && h.palindromic && h.unimodal && h.gamma_positive);
        assert_eq!(h.gamma, Some(IntPoly::from_ints(&[1, 2])));
        let t = shape_checks(&IntPoly::from_ints(&[1, 1, 1]), 2);
        assert!(t.palindromic && t.unimodal && t.nonnegative);
        assert_eq!(t.gamma, Some(IntPoly::from_ints(&[1, -1])));
        assert!(!t.gamma_positive);
        let c = shape_checks(&IntPoly::from_ints(&[0, 0, -4, 1]), 3);
        assert!(!c.nonnegative && !c.palindromic);
        assert!(gamma_vector(&IntPoly::from_ints(&[1, 2]), 1).is_err());
        assert!(!shape_checks(&IntPoly::from_ints(&[2, 1, 2]), 2).unimodal);
    }

    proptest::proptest! {
        #[test]
        fn gamma_expansion_round_trips(g in proptest::collection::vec(-5i64..6, 1..4), extra in 0usize..3) {
            let d = 2 * (g.len() - 1) + extra;
            let x_plus_one = IntPoly::from_ints(&[1, 1]);
            let mut p = IntPoly::zero();
            for (i, &gi) in g.iter().enumerate() {
                let basis = &IntPoly::monomial(i)
                    * &(0..d - 2 * i).fold(IntPoly::one(), |acc, _| &acc * &x_plus_one);
                p = &p + &basis.scale(&BigInt::from(gi));
            }
            let back = gamma_vector(&p, d).unwrap();
            let mut padded = g.clone();
            padded.resize(d / 2 + 1, 0);
            proptest::prop_assert_eq!(back, IntPoly::from_ints(&padded));
        }
    }
}
