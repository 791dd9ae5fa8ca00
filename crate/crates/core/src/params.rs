use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ParamsError;

/// `n = dim F`, the characteristic `p`, and the truncation degree used for series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub n: u32,
    pub p: u32,
    pub trunc: usize,
}

impl Params {
    /// Validated parameters with the default truncation `max(4p(n-1), 40)`.
    pub fn new(n: u32, p: u32) -> Result<Self, ParamsError> {
        Self::with_truncation(n, p, default_truncation(n, p))
    }

    pub fn with_truncation(n: u32, p: u32, trunc: usize) -> Result<Self, ParamsError> {
        check_prime(p)?;
        if n < 1 {
            return Err(ParamsError::TooSmall { n, min: 1 });
        }
        Ok(Params { n, p, trunc })
    }

    /// Top degree `2n(p-1)` of `S/S^p_{>0}S`.
    pub fn top_degree(&self) -> usize {
        2 * self.n as usize * (self.p as usize - 1)
    }
}

/// Checks that `p` is prime.
pub fn check_prime(p: u32) -> Result<u32, ParamsError> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(ParamsError::NotPrime(p))
    }
}

pub fn default_truncation(n: u32, p: u32) -> usize {
    (4 * p as usize * (n.max(1) as usize - 1)).max(40)
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Binomial coefficient as a big integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn pow(base: u32, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}
