//! Brute-force `dim (S_d)^{G_1}` over `F_p`.
//!
//! A polynomial is `G_1`-invariant iff it has weight `0 mod p` and is killed by
//! `e = Σ x_i ∂/∂y_i` and `f = Σ y_i ∂/∂x_i`. Both operators preserve the degree in each
//! pair `(x_i, y_i)` and move the weight by ±2, so `S_d` splits into blocks indexed by
//! the per-pair degrees and the weight, and each block is eliminated separately.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::HilbertError;
use crate::par;
use crate::params::binomial;

/// Default memory budget for one oracle instance, 64 MiB.
pub const DEFAULT_BUDGET: u128 = 64 << 20;

/// Rough peak memory for `S_d`: one exponent vector plus bookkeeping per monomial.
pub fn estimated_bytes(n: u32, d: usize) -> u128 {
    let monomials = binomial(2 * n as i64 + d as i64 - 1, d as i64);
    let monomials: u128 = monomials.try_into().unwrap_or(u128::MAX);
    monomials.saturating_mul(2 * n as u128 + 16)
}

/// One block of the problem: fixed per-pair degrees and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpKernelProblem {
    pub p: u32,
    pub degrees: Vec<u32>,
    pub weight: i64,
    /// `x`-exponents of the basis monomials, in lexicographic order.
    pub basis: Vec<Vec<u32>>,
}

impl FpKernelProblem {
    /// Sparse rows of `[e; f]`, one per basis monomial, as `(target, coefficient)`.
    /// Targets of `e` and `f` are numbered independently (`f` targets are offset).
    pub fn operator_rows(&self) -> Vec<Vec<(u64, u32)>> {
        let radix: Vec<u64> = self.degrees.iter().map(|&d| d as u64 + 1).collect();
        let offset: u64 = radix.iter().product();
        let encode = |a: &[u32]| a.iter().zip(&radix).fold(0u64, |acc, (&x, &r)| acc * r + x as u64);
        let p = self.p as u64;
        self.basis
            .iter()
            .map(|a| {
                let mut row = Vec::new();
                let mut b = a.clone();
                for i in 0..a.len() {
                    let ey = (self.degrees[i] - a[i]) as u64 % p;
                    if ey != 0 {
                        b[i] += 1;
                        row.push((encode(&b), ey as u32));
                        b[i] -= 1;
                    }
                    let fx = a[i] as u64 % p;
                    if fx != 0 {
                        b[i] -= 1;
                        row.push((offset + encode(&b), fx as u32));
                        b[i] += 1;
                    }
                }
                row.sort_unstable();
                row
            })
            .collect()
    }

    /// Dimension of the joint kernel of `e` and `f` on this block.
    pub fn kernel_dim(&self) -> usize {
        self.basis.len() - rank_mod_p(self.operator_rows(), self.p)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1;
    let (mut base, mut exp) = (a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Rank of a sparse matrix over `F_p` (rows sorted by column).
pub fn rank_mod_p(rows: Vec<Vec<(u64, u32)>>, p: u32) -> usize {
    let p = p as u64;
    let mut pivots: HashMap<u64, Vec<(u64, u64)>> = HashMap::new();
    for row in rows {
        let mut row: Vec<(u64, u64)> = row
            .into_iter()
            .map(|(c, v)| (c, v as u64 % p))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, v)) = row.first() {
            match pivots.get(&lead) {
                Some(piv) => row = axpy(&row, piv, p - v, p),
                None => {
                    let s = inv_mod(v, p);
                    for e in row.iter_mut() {
                        e.1 = e.1 * s % p;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + c·y` over `F_p`, both sparse and sorted.
fn axpy(x: &[(u64, u64)], y: &[(u64, u64)], c: u64, p: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, v) = match (x.get(i), y.get(j)) {
            (Some(&(cx, vx)), Some(&(cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (cx, (vx + c * vy) % p)
            }
            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                i += 1;
                (cx, vx)
            }
            (Some(&(cx, vx)), None) => {
                i += 1;
                (cx, vx)
            }
            (_, Some(&(cy, vy))) => {
                j += 1;
                (cy, c * vy % p)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((col, v));
        }
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            go(rest - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All blocks of weight `0 mod p` for one vector of per-pair degrees.
pub fn blocks_for_degrees(p: u32, degrees: &[u32]) -> Vec<FpKernelProblem> {
    let mut by_weight: std::collections::BTreeMap<i64, Vec<Vec<u32>>> = Default::default();
    let mut a = vec![0u32; degrees.len()];
    loop {
        let w: i64 = a
            .iter()
            .zip(degrees)
            .map(|(&x, &d)| 2 * x as i64 - d as i64)
            .sum();
        if w.rem_euclid(p as i64) == 0 {
            by_weight.entry(w).or_default().push(a.clone());
        }
        // odometer, last coordinate fastest
        let mut i = degrees.len();
        loop {
            if i == 0 {
                return by_weight
                    .into_iter()
                    .map(|(weight, basis)| FpKernelProblem {
                        p,
                        degrees: degrees.to_vec(),
                        weight,
                        basis,
                    })
                    .collect();
            }
            i -= 1;
            if a[i] < degrees[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

/// `dim (S_d)^{G_1}` for `S = k[x_1, y_1, ..., x_n, y_n]` over `F_p`.
pub fn bruteforce_g1_dim(p: u32, n: u32, d: usize, budget: u128) -> Result<BigInt, HilbertError> {
    let attempted = estimated_bytes(n, d);
    if attempted > budget {
        return Err(HilbertError::BudgetExceeded { attempted, budget });
    }
    let degree_vectors = compositions(d as u32, n as usize);
    let dims = par::map_slice(&degree_vectors, |degrees| {
        blocks_for_degrees(p, degrees)
            .iter()
            .map(FpKernelProblem::kernel_dim)
            .sum::<usize>()
    });
    Ok(BigInt::from(dims.into_iter().sum::<usize>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(p: u32, n: u32, d: usize) -> BigInt {
        bruteforce_g1_dim(p, n, d, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn examples() {
        for (p, n) in [(2, 4), (3, 4), (5, 5)] {
            assert_eq!(dim(p, n, 0), BigInt::from(1));
            assert_eq!(dim(p, n, 1), BigInt::from(0));
        }
        assert_eq!(dim(2, 4, 2), BigInt::from(14));
    }

    #[test]
    fn large_p_counts_plain_invariants() {
        // below degree p every weight-zero invariant of e and f is an SL_2-invariant
        assert_eq!(dim(7, 4, 2), BigInt::from(6));
        assert_eq!(dim(7, 4, 4), BigInt::from(20));
        assert_eq!(dim(7, 4, 3), BigInt::from(0));
    }

    #[test]
    fn budget_is_enforced() {
        let err = bruteforce_g1_dim(2, 8, 30, 1 << 20).unwrap_err();
        assert!(matches!(err, HilbertError::BudgetExceeded { budget, .. } if budget == 1 << 20));
    }

    #[test]
    fn rank_small() {
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 1)]];
        assert_eq!(rank_mod_p(rows.clone(), 3), 2);
        assert_eq!(rank_mod_p(vec![vec![(0, 2)], vec![(0, 4)]], 2), 0);
        assert_eq!(compositions(2, 3).len(), 6);
    }
}
