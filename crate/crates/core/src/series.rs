//! Integer power series truncated at a fixed degree `D` (everything is exact modulo
//! `t^{D+1}`). Mixing series with different truncations, or reading a coefficient past
//! `D`, panics.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::params::binomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(trunc, 0, BigInt::from(1))
    }

    /// `c t^deg`, or zero when `deg > trunc`.
    pub fn monomial(trunc: usize, deg: usize, c: BigInt) -> Self {
        let mut s = Self::zero(trunc);
        if deg <= trunc {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Coefficients beyond `trunc` are dropped, missing ones are zero.
    pub fn from_coeffs<I, T>(trunc: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(trunc);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        assert!(
            d <= self.trunc(),
            "coefficient t^{d} requested beyond truncation {}",
            self.trunc()
        );
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add_at(&mut self, d: usize, c: &BigInt) {
        if d <= self.trunc() {
            self.coeffs[d] += c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.coeffs.iter().any(Signed::is_negative)
    }

    /// Largest degree with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// First degree where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.check_compatible(other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        let mut out = Self::zero(self.trunc());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d + shift > self.trunc() {
                break;
            }
            out.coeffs[d + shift] = c.clone();
        }
        out
    }

    /// Substitution `t -> t^k`, keeping the truncation.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.trunc());
        for (d, c) in self.coeffs.iter().enumerate() {
            if d * k > self.trunc() {
                break;
            }
            out.coeffs[d * k] = c.clone();
        }
        out
    }

    /// Same series read at a different truncation. Growing the truncation is only
    /// allowed for series known to be polynomials of degree `<= self.trunc()`.
    pub fn retruncate(&self, trunc: usize) -> Self {
        Self::from_coeffs(trunc, self.coeffs.iter().cloned())
    }

    /// Sum of the coefficients (value at `t = 1`, meaningful for polynomials).
    pub fn sum_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            self.trunc(),
            other.trunc(),
            "series truncated at different degrees"
        );
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(t^{})", self.trunc() + 1)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                1 if a == BigInt::from(1) => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == BigInt::from(1) => write!(f, "t^{d}")?,
                _ => write!(f, "{a}t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl AddAssign<&TruncSeries> for TruncSeries {
    fn add_assign(&mut self, rhs: &TruncSeries) {
        self.check_compatible(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&TruncSeries> for TruncSeries {
    fn sub_assign(&mut self, rhs: &TruncSeries) {
        self.check_compatible(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_compatible(rhs);
        let d = self.trunc();
        let mut out = TruncSeries::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

type DenKey = (usize, usize, usize);

fn denominator_cache() -> &'static RwLock<HashMap<DenKey, Arc<TruncSeries>>> {
    static CACHE: OnceLock<RwLock<HashMap<DenKey, Arc<TruncSeries>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Expansion of `1 / (1 - t^k)^e` to degree `trunc`: the coefficient of `t^{km}` is
/// `C(m+e-1, e-1)`. Cached per `(k, e, trunc)`.
pub fn inverse_power_of_one_minus(k: usize, e: usize, trunc: usize) -> Arc<TruncSeries> {
    let key = (k, e, trunc);
    if let Some(s) = denominator_cache().read().unwrap().get(&key) {
        return Arc::clone(s);
    }
    let mut s = TruncSeries::zero(trunc);
    if e == 0 {
        s = TruncSeries::one(trunc);
    } else {
        for m in 0..=trunc / k {
            s.coeffs[k * m] = binomial((m + e - 1) as i64, (e - 1) as i64);
        }
    }
    let s = Arc::new(s);
    denominator_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&s));
    s
}
