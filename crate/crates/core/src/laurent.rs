//! Sparse Laurent polynomials in `x1, ..., xn` with big-integer coefficients.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::quiver::DimVector;

pub type ExponentVector = SmallVec<[i32; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        Self::monomial(rank, &vec_zero(rank), c)
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec_zero(rank);
        e[i] = 1;
        Self::monomial(rank, &e, BigInt::one())
    }

    pub fn monomial(rank: usize, exp: &[i32], c: BigInt) -> Self {
        assert_eq!(exp.len(), rank, "exponent length must equal rank");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentVector::from_slice(exp), c);
        }
        LaurentPoly { rank, terms }
    }

    /// `x^v` for an integer vector `v`.
    pub fn x_pow(rank: usize, v: &[i64]) -> Self {
        let e: Vec<i32> = v.iter().map(|&a| a as i32).collect();
        Self::monomial(rank, &e, BigInt::one())
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: e.len() });
            }
            p.add_term(ExponentVector::from_vec(e), c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&a| a == 0) && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                let e: ExponentVector = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// `self += c * x^shift * other`, used by elimination loops.
    pub fn add_scaled_shifted(&mut self, c: &BigInt, shift: &[i32], other: &Self) {
        for (e, k) in &other.terms {
            let ne: ExponentVector = e.iter().zip(shift.iter()).map(|(a, b)| a + b).collect();
            self.add_term(ne, c * k);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Per-coordinate minimum and maximum exponents over the support.
    pub fn exponent_bounds(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo: Vec<i32> = first.to_vec();
        let mut hi = lo.clone();
        for e in it {
            for (i, &a) in e.iter().enumerate() {
                lo[i] = lo[i].min(a);
                hi[i] = hi[i].max(a);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / b`, or `InexactDivision` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        self.check_rank(b)?;
        if b.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let (alo, ahi) = self.exponent_bounds().unwrap();
        let (blo, bhi) = b.exponent_bounds().unwrap();
        let qlo: Vec<i32> = alo.iter().zip(&blo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i32> = ahi.iter().zip(&bhi).map(|(a, b)| a - b).collect();
        if qlo.iter().zip(&qhi).any(|(l, h)| l > h) {
            return Err(Error::InexactDivision);
        }
        let (be, bc) = b.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero(self.rank);
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let t: Vec<i32> = re.iter().zip(be.iter()).map(|(a, b)| a - b).collect();
            let in_box = t.iter().enumerate().all(|(i, &a)| qlo[i] <= a && a <= qhi[i]);
            if !in_box {
                return Err(Error::InexactDivision);
            }
            let (c, rem) = rc.div_rem(&bc);
            if !rem.is_zero() {
                return Err(Error::InexactDivision);
            }
            r.add_scaled_shifted(&-&c, &t, b);
            q.add_term(ExponentVector::from_vec(t), c);
        }
        Ok(q)
    }

    /// `d_i = -min_i` over the support.
    pub fn denominator_vector(&self) -> Result<DimVector> {
        let (lo, _) = self.exponent_bounds().ok_or(Error::ZeroPolynomial)?;
        Ok(lo.iter().map(|&a| -(a as i64)).collect())
    }

    /// Coefficient of `x^{-d}` where `d` is the denominator vector.
    pub fn numerator_constant_term(&self) -> Result<BigInt> {
        let (lo, _) = self.exponent_bounds().ok_or(Error::ZeroPolynomial)?;
        Ok(self.coeff(&lo))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Parses the canonical text form. Variables `x1..x{rank}`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut p = Self::zero(rank);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'+' => (false, &piece[1..]),
                b'-' => (true, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(alloc::format!("dangling sign in {piece:?}")));
            }
            let mut coef = BigInt::one();
            let mut exp = vec_zero(rank);
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((a, b)) => (a, b.parse::<i32>().map_err(|_| bad(factor))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad(factor))?;
                    if idx == 0 || idx > rank {
                        return Err(Error::Parse(alloc::format!("variable x{idx} outside rank {rank}")));
                    }
                    exp[idx - 1] += pow;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| bad(factor))?;
                    coef *= c;
                }
            }
            if neg {
                coef = -coef;
            }
            p.add_term(ExponentVector::from_vec(exp), coef);
        }
        Ok(p)
    }
}

fn bad(f: &str) -> Error {
    Error::Parse(alloc::format!("bad factor {f:?}"))
}

fn vec_zero(rank: usize) -> Vec<i32> {
    alloc::vec![0; rank]
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &a) in e.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if a == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, a)?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let constant = e.iter().all(|&a| a == 0);
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `p` as `(numerator)/(monomial)` with the monomial `x^{d+}` for the
/// positive part of the denominator vector.
pub fn to_fraction_string(p: &LaurentPoly) -> String {
    let d = match p.denominator_vector() {
        Ok(d) => d,
        Err(_) => return "0".to_string(),
    };
    let pos: Vec<i64> = d.iter().map(|&a| a.max(0)).collect();
    if pos.iter().all(|&a| a == 0) {
        return p.to_string();
    }
    let num = p * &LaurentPoly::x_pow(p.rank(), &pos);
    let den = LaurentPoly::x_pow(p.rank(), &pos);
    alloc::format!("({num})/({den})")
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("rank mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn cancellation_and_sum() {
        assert!((&p("x1", 2) + &p("-x1", 2)).is_zero());
        assert_eq!(&p("x1 + 1", 2) + &p("x2", 2), p("x1 + x2 + 1", 2));
    }

    #[test]
    fn products() {
        let a = p("x1^2*x2^-1 + x2^-1", 2);
        assert_eq!(&a * &p("x2", 2), p("x1^2 + 1", 2));
        assert!((&p("x1", 2) * &p("x1^-1", 2)).is_one());
        assert_eq!(&LaurentPoly::one(2) * &a, a);
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 + 1", 2);
        assert!(a.div_exact(&a).unwrap().is_one());
        assert_eq!(p("x1^2 + x1*x2", 2).div_exact(&p("x1", 2)).unwrap(), p("x1 + x2", 2));
        assert_eq!(p("x1^2 + 1", 2).div_exact(&p("x1 + 1", 2)), Err(Error::InexactDivision));
        assert_eq!(p("3*x1", 2).div_exact(&p("2", 2)), Err(Error::InexactDivision));
    }

    #[test]
    fn denominators() {
        assert_eq!(p("x1", 2).denominator_vector().unwrap(), alloc::vec![-1, 0]);
        assert_eq!(p("x1^2*x2^-1 + x2^-1", 2).denominator_vector().unwrap(), alloc::vec![0, 1]);
        assert_eq!(p("x1*x2^-1 + x2*x1^-1", 2).numerator_constant_term().unwrap(), BigInt::zero());
        assert_eq!(p("x1", 2).numerator_constant_term().unwrap(), BigInt::one());
        assert_eq!(LaurentPoly::zero(2).denominator_vector(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn text_format() {
        let a = p("x2^-1 + x1^2*x2^-1", 2);
        assert_eq!(a.to_string(), "x1^2*x2^-1 + x2^-1");
        assert_eq!(p("-3*x1 + 2 - x2", 2).to_string(), "-3*x1 - x2 + 2");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        assert_eq!(to_fraction_string(&a), "(x1^2 + 1)/(x2)");
    }

    #[test]
    fn rank_mismatch() {
        assert!(matches!(
            LaurentPoly::one(2).checked_add(&LaurentPoly::one(3)),
            Err(Error::RankMismatch { .. })
        ));
    }
}
