//! Characters of `SL_2`-modules in characteristic `p`.
//!
//! A character is a finitely supported Laurent polynomial in the weight variable `z`,
//! with weights measured in units of the fundamental weight. Weyl characters
//! `z^m + z^{m-2} + ... + z^{-m}` are the characters of `∇(m) = S^m V`; tilting
//! characters come from the base-`p` digit expansion `T(u) = ⊗ T(u_i)^{Fr^i}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::CharError;

/// Formal character: weight -> multiplicity. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightChar {
    coeffs: BTreeMap<i64, BigInt>,
}

impl WeightChar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut c = Self::zero();
        for (w, m) in pairs {
            c.add_term(w, &m.into());
        }
        c
    }

    pub fn coeff(&self, weight: i64) -> BigInt {
        self.coeffs.get(&weight).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, weight: i64) -> Option<&BigInt> {
        self.coeffs.get(&weight)
    }

    pub fn add_term(&mut self, weight: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(weight).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&weight);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(w, c)| (*w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dimension: the value at `z = 1`.
    pub fn dimension(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(w, c)| self.coeffs.get(&-w) == Some(c))
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.coeffs.values().any(Signed::is_negative)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeightChar {
            coeffs: self.coeffs.iter().map(|(w, x)| (*w, x * c)).collect(),
        }
    }

    /// Frobenius twist `z -> z^k`.
    pub fn twist(&self, k: i64) -> Self {
        WeightChar {
            coeffs: self.coeffs.iter().map(|(w, c)| (w * k, c.clone())).collect(),
        }
    }

    /// The common parity of all weights, or an error if they disagree.
    pub fn parity(&self) -> Result<Option<i64>, CharError> {
        let mut it = self.coeffs.keys();
        let Some(&first) = it.next() else {
            return Ok(None);
        };
        for &w in it {
            if (w - first).rem_euclid(2) != 0 {
                return Err(CharError::MixedParity(first, w));
            }
        }
        Ok(Some(first.rem_euclid(2)))
    }
}

impl fmt::Debug for WeightChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl AddAssign<&WeightChar> for WeightChar {
    fn add_assign(&mut self, rhs: &WeightChar) {
        for (w, c) in rhs.iter() {
            self.add_term(w, c);
        }
    }
}

impl SubAssign<&WeightChar> for WeightChar {
    fn sub_assign(&mut self, rhs: &WeightChar) {
        for (w, c) in rhs.iter() {
            self.add_term(w, &-c);
        }
    }
}

impl Add for &WeightChar {
    type Output = WeightChar;
    fn add(self, rhs: &WeightChar) -> WeightChar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &WeightChar {
    type Output = WeightChar;
    fn sub(self, rhs: &WeightChar) -> WeightChar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &WeightChar {
    type Output = WeightChar;
    fn mul(self, rhs: &WeightChar) -> WeightChar {
        let mut out = BTreeMap::<i64, BigInt>::new();
        for (a, x) in self.iter() {
            for (b, y) in rhs.iter() {
                *out.entry(a + b).or_default() += x * y;
            }
        }
        out.retain(|_, c| !c.is_zero());
        WeightChar { coeffs: out }
    }
}

/// Multiset of tilting modules: highest weight -> multiplicity.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TiltingMultiset {
    entries: BTreeMap<u64, BigInt>,
}

impl TiltingMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, T)>,
        T: Into<BigInt>,
    {
        let mut s = Self::new();
        for (m, c) in pairs {
            s.add(m, &c.into());
        }
        s
    }

    pub fn add(&mut self, m: u64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&m);
        }
    }

    pub fn mult(&self, m: u64) -> BigInt {
        self.entries.get(&m).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        self.entries.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn character(&self, p: u32) -> WeightChar {
        let mut c = WeightChar::zero();
        for (m, k) in self.iter() {
            c += &tilting_char(p, m).scale(k);
        }
        c
    }

    pub fn dimension(&self, p: u32) -> BigInt {
        self.iter().map(|(m, k)| tilting_dim(p, m) * k).sum()
    }
}

impl fmt::Debug for TiltingMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(m, c)| (format!("T({m})"), c)))
            .finish()
    }
}

/// Character of `∇(m) = S^m V`.
pub fn weyl_char(m: i64) -> Result<WeightChar, CharError> {
    if m < 0 {
        return Err(CharError::NegativeWeight(m));
    }
    Ok(weyl(m as u64))
}

pub(crate) fn weyl(m: u64) -> WeightChar {
    let m = m as i64;
    WeightChar {
        coeffs: (0..=m).map(|i| (m - 2 * i, BigInt::one())).collect(),
    }
}

/// Digit expansion `u = Σ u_i p^i` with `p-1 <= u_i <= 2p-2` for `i < k` and
/// `0 <= u_k < p-1` whenever `k >= 1` (so the expansion is unique).
pub fn tilting_digits(p: u32, u: u64) -> Vec<u64> {
    let p = p as u64;
    if u < p {
        return vec![u];
    }
    let mut digits = Vec::new();
    let mut rest = u;
    while rest >= p - 1 {
        // the unique representative of rest mod p in [p-1, 2p-2]
        let low = p - 1 + (rest + 1) % p;
        digits.push(low);
        rest = (rest - low) / p;
    }
    digits.push(rest);
    digits
}

fn digit_char(p: u64, u: u64) -> WeightChar {
    if u < p {
        weyl(u)
    } else {
        &weyl(u) + &weyl(2 * p - 2 - u)
    }
}

type CharKey = (u32, u64);

fn tilting_cache() -> &'static RwLock<HashMap<CharKey, Arc<WeightChar>>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, Arc<WeightChar>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Character of the tilting module `T(u)`. Memoised per `(p, u)`.
pub fn tilting_char(p: u32, u: u64) -> Arc<WeightChar> {
    if let Some(c) = tilting_cache().read().unwrap().get(&(p, u)) {
        return Arc::clone(c);
    }
    let pp = p as i64;
    let mut acc = WeightChar::from_pairs([(0, 1)]);
    let mut scale = 1i64;
    for d in tilting_digits(p, u) {
        acc = &acc * &digit_char(p as u64, d).twist(scale);
        scale *= pp;
    }
    let acc = Arc::new(acc);
    tilting_cache()
        .write()
        .unwrap()
        .entry((p, u))
        .or_insert_with(|| Arc::clone(&acc));
    acc
}

/// `dim T(u)`: product over digits of `u_i + 1` (small digits) or `2p` (digits in
/// `[p, 2p-2]`).
pub fn tilting_dim(p: u32, u: u64) -> BigInt {
    let p = p as u64;
    tilting_digits(p as u32, u)
        .into_iter()
        .map(|d| BigInt::from(if d < p { d + 1 } else { 2 * p }))
        .product()
}

/// Good-filtration multiplicities `(T(u) : ∇(v))`, all equal to one: `v` runs over
/// `Σ v_j p^j` with `v_j ∈ {u_j, 2p-2-u_j}` below the top digit and `v_k = u_k`.
pub fn nabla_mults(p: u32, u: u64) -> BTreeMap<u64, u32> {
    let pp = p as u64;
    let digits = tilting_digits(p, u);
    let k = digits.len() - 1;
    let mut values = vec![0u64];
    let mut place = 1u64;
    for (j, &d) in digits.iter().enumerate() {
        let choices: Vec<u64> = if j < k && d != 2 * pp - 2 - d {
            vec![d, 2 * pp - 2 - d]
        } else {
            vec![d]
        };
        values = values
            .iter()
            .flat_map(|v| choices.iter().map(move |c| v + c * place))
            .collect();
        place *= pp;
    }
    values.into_iter().map(|v| (v, 1)).collect()
}

/// `L(a) ⊗ L(b)` for `0 <= a, b <= p-1` as a sum of tilting modules.
pub fn tensor_decompose_simples(p: u32, a: i64, b: i64) -> Result<TiltingMultiset, CharError> {
    let top = p as i64 - 1;
    for w in [a, b] {
        if !(0..=top).contains(&w) {
            return Err(CharError::OutOfRange {
                weight: w,
                max: top,
            });
        }
    }
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    let pi = p as i64;
    let mut out = TiltingMultiset::new();
    for q in overline_range(pi, a, b) {
        out.add(q as u64, &BigInt::one());
    }
    if a + b >= pi - 1 {
        let start = if (a + b - pi).rem_euclid(2) == 0 { pi } else { pi - 1 };
        for m in (start..=a + b).step_by(2) {
            out.add(m as u64, &BigInt::one());
        }
    }
    Ok(out)
}

/// Weights `a-b, a-b+2, ...` of the part of `L(a) ⊗ L(b)` that survives in the fusion
/// category (`a >= b`).
pub(crate) fn overline_range(p: i64, a: i64, b: i64) -> impl Iterator<Item = i64> {
    let hi = if a + b < p - 1 { a + b } else { 2 * p - 4 - a - b };
    (a - b..=hi).step_by(2)
}

/// Writes a character as a nonnegative combination of tilting characters.
///
/// Every tilting character has coefficient one at its highest weight, so the
/// multiplicities are forced from the top weight downwards.
pub fn decompose_tilting_char(p: u32, c: &WeightChar) -> Result<TiltingMultiset, CharError> {
    let parity = c.parity()?;
    let mut residual = c.clone();
    let mut out = TiltingMultiset::new();
    let Some(top) = c.max_weight() else {
        return Ok(out);
    };
    let low = parity.unwrap_or(0);
    let mut w = top;
    while w >= low {
        let r = residual.coeff(w);
        if r.is_negative() {
            return Err(CharError::NotTilting {
                weight: w,
                residual: r.to_string(),
            });
        }
        if !r.is_zero() {
            residual -= &tilting_char(p, w as u64).scale(&r);
            out.add(w as u64, &r);
        }
        w -= 2;
    }
    if let Some((w, r)) = residual.iter().next() {
        return Err(CharError::NotTilting {
            weight: w,
            residual: r.to_string(),
        });
    }
    Ok(out)
}
