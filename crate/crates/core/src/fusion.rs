//! The `SL_2` fusion ring at level `p-2`: simples `L(0), ..., L(p-2)`, with the tensor
//! product truncated to the fundamental alcove.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::char_calculus::overline_range;
use crate::error::FusionError;
use crate::series::TruncSeries;

/// `(q, d) -> multiplicity` with `q` an alcove weight and `d` a degree.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SimpleGradedMultiset {
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl SimpleGradedMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), T)>,
        T: Into<BigInt>,
    {
        let mut s = Self::new();
        for (k, c) in pairs {
            s.add(k.0, k.1, &c.into());
        }
        s
    }

    pub fn add(&mut self, q: u32, d: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((q, d)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(q, d));
        }
    }

    pub fn mult(&self, q: u32, d: u32) -> BigInt {
        self.entries.get(&(q, d)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> + '_ {
        self.entries.iter().map(|(k, c)| (*k, c))
    }

    /// Entries for one alcove weight, as `degree -> multiplicity`.
    pub fn row(&self, q: u32) -> BTreeMap<u32, BigInt> {
        self.entries
            .range((q, 0)..=(q, u32::MAX))
            .map(|((_, d), c)| (*d, c.clone()))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Bilinear fusion product, degrees add.
    pub fn fuse(&self, other: &Self, p: u32) -> Self {
        let mut out = Self::new();
        for ((q1, d1), m1) in self.iter() {
            for ((q2, d2), m2) in other.iter() {
                let m = m1 * m2;
                for q in fuse_simples(p, q1, q2) {
                    out.add(q, d1 + d2, &m);
                }
            }
        }
        out
    }
}

impl fmt::Debug for SimpleGradedMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|((q, d), c)| (format!("L({q})t^{d}"), c)))
            .finish()
    }
}

fn fuse_simples(p: u32, a: u32, b: u32) -> impl Iterator<Item = u32> {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    overline_range(p as i64, a as i64, b as i64).map(|q| q as u32)
}

fn check_alcove(p: u32, q: u32) -> Result<(), FusionError> {
    if p < 2 || q > p - 2 {
        return Err(FusionError::OutOfAlcove {
            weight: q,
            max: p.saturating_sub(2),
        });
    }
    Ok(())
}

/// `L(q1) ⊗ L(q2)` in the fusion category (all degrees zero).
pub fn fusion_product(p: u32, q1: u32, q2: u32) -> Result<SimpleGradedMultiset, FusionError> {
    check_alcove(p, q1)?;
    check_alcove(p, q2)?;
    let mut out = SimpleGradedMultiset::new();
    for q in fuse_simples(p, q1, q2) {
        out.add(q, 0, &BigInt::one());
    }
    Ok(out)
}

/// The seed `Σ_{j=0}^{p-2} L(j) t^j`.
pub fn fusion_seed(p: u32) -> SimpleGradedMultiset {
    SimpleGradedMultiset::from_pairs((0..=p - 2).map(|j| ((j, j), 1)))
}

/// `n`-th fusion power of the seed, by iterated binary products.
pub fn graded_fusion_power(p: u32, n: u32) -> SimpleGradedMultiset {
    let seed = fusion_seed(p);
    let mut acc = SimpleGradedMultiset::from_pairs([((0, 0), 1)]);
    for _ in 0..n {
        acc = acc.fuse(&seed, p);
    }
    acc
}

/// `a_0(t)` and `a_{p-2}(t)`: the `q = 0` and `q = p-2` rows of the graded fusion power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APolynomials {
    pub a0: TruncSeries,
    pub a_p2: TruncSeries,
}

impl APolynomials {
    /// `a_0` for even `j`, `a_{p-2}` for odd `j`.
    pub fn for_index(&self, j: u32) -> &TruncSeries {
        if j.is_multiple_of(2) {
            &self.a0
        } else {
            &self.a_p2
        }
    }
}

pub fn a_polynomials(p: u32, n: u32) -> APolynomials {
    let power = graded_fusion_power(p, n);
    let top = (n * (p - 2)) as usize;
    let row = |q: u32| {
        let mut s = TruncSeries::zero(top);
        for (d, c) in power.row(q) {
            s.add_at(d as usize, &c);
        }
        s
    };
    APolynomials {
        a0: row(0),
        a_p2: row(p - 2),
    }
}

/// Fusion multiplicity table `L(a) ⊗ L(b) -> [L(0), ..., L(p-2)]`.
pub fn fusion_table(p: u32) -> Vec<Vec<Vec<u32>>> {
    (0..=p - 2)
        .map(|a| {
            (0..=p - 2)
                .map(|b| {
                    let prod = fusion_product(p, a, b).expect("alcove weights");
                    (0..=p - 2)
                        .map(|q| if prod.mult(q, 0).is_zero() { 0 } else { 1 })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Number of `p`-admissible semistandard two-row tableaux of the given weight with
/// `λ_1 - λ_2 = q`: the boxes carrying each letter must form a skew diagram of width
/// at most `p-2`. Enumerates tableaux, so only for small inputs.
pub fn tableau_count(p: u32, weights: &[u32], q: u32) -> u64 {
    fn walk(p: i64, weights: &[u32], row1: i64, row2: i64, q: i64) -> u64 {
        let Some((&w, rest)) = weights.split_first() else {
            return u64::from(row1 - row2 == q);
        };
        let w = w as i64;
        let mut count = 0;
        // b boxes of this letter go to the second row, under boxes of smaller letters
        for b in 0..=w {
            let new1 = row1 + w - b;
            let new2 = row2 + b;
            if new2 > row1 {
                break;
            }
            if new1 - row2 > p - 2 {
                continue;
            }
            count += walk(p, rest, new1, new2, q);
        }
        count
    }
    if weights.iter().any(|&w| p < 2 || w > p - 2) {
        return 0;
    }
    walk(p as i64, weights, 0, 0, q as i64)
}
