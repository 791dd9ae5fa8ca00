//! Hilbert series of `Hom_R` between the candidate NCR summands
//! `T{0}, ..., T{n-3}, K{1}, ..., K{n-3}`, and the inverse of that matrix.
//!
//! Everything is computed in the large-`p` regime (`T(m) = ∇(m)`), as invariant Euler
//! characteristics, so the matrix does not depend on `p`. The inverse is computed over
//! exact rationals; if the summands form an NCR it should be a polynomial matrix with
//! integer entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::NcrError;
use crate::hilbert::{char_s, GradedWeightChar};
use crate::par;
use crate::params::binomial;
use crate::series::TruncSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Module {
    T(u32),
    K(u32),
}

impl Module {
    pub fn label(&self) -> String {
        match self {
            Module::T(i) => format!("T{{{i}}}"),
            Module::K(j) => format!("K{{{j}}}"),
        }
    }
}

/// `entries[u][v]` is the Hilbert series of `Hom_R(M_u, M_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMatrix {
    pub n: u32,
    pub modules: Vec<Module>,
    pub entries: Vec<Vec<TruncSeries>>,
}

impl HomMatrix {
    pub fn size(&self) -> usize {
        self.modules.len()
    }

    pub fn trunc(&self) -> usize {
        self.entries[0][0].trunc()
    }

    pub fn labels(&self) -> Vec<String> {
        self.modules.iter().map(Module::label).collect()
    }

    pub fn index_of(&self, m: Module) -> Option<usize> {
        self.modules.iter().position(|&x| x == m)
    }

    pub fn entry(&self, u: Module, v: Module) -> &TruncSeries {
        &self.entries[self.index_of(u).expect("module")][self.index_of(v).expect("module")]
    }

    pub fn constant_terms(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|s| s.coeff(0).clone()).collect())
            .collect()
    }
}

pub fn ncr_modules(n: u32) -> Vec<Module> {
    (0..=n - 3)
        .map(Module::T)
        .chain((1..=n - 3).map(Module::K))
        .collect()
}

/// Clebsch-Gordan: `weyl(a) · weyl(b) = Σ weyl(k)`, `k = |a-b|, |a-b|+2, ..., a+b`.
fn clebsch_gordan(a: u64, b: u64) -> impl Iterator<Item = u64> {
    (a.abs_diff(b)..=a + b).step_by(2)
}

struct Engine {
    n: u32,
    s: std::sync::Arc<GradedWeightChar>,
}

impl Engine {
    /// `dim (∇(v) ⊗ S_d)^G`.
    fn cov(&self, v: u64, d: i64) -> BigInt {
        self.s.coeff(d, v as i64) - self.s.coeff(d, v as i64 + 2)
    }

    /// `dim (∇(a) ⊗ ∇(b) ⊗ S_d)^G`.
    fn cov2(&self, a: u64, b: u64, d: i64) -> BigInt {
        clebsch_gordan(a, b).map(|k| self.cov(k, d)).sum()
    }

    /// `dim (∇(a) ⊗ (K_j)_d)^G`.
    fn tk(&self, a: u64, j: u32, d: i64) -> BigInt {
        if d < 0 {
            return BigInt::zero();
        }
        let n = self.n as i64;
        (0..=n - j as i64 - 2)
            .map(|b| {
                let c = binomial(n, j as i64 + 2 + b);
                let v = c * self.cov2(a, b as u64, d - b);
                if b % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    fn hom(&self, u: Module, v: Module, d: i64) -> BigInt {
        let n = self.n;
        match (u, v) {
            (Module::T(i), Module::T(j)) => self.cov2(i as u64, j as u64, d),
            (Module::T(i), Module::K(j)) => self.tk(i as u64, j, d),
            (Module::K(a), Module::T(i)) => self.tk(i as u64, n - a - 2, d - 2),
            (Module::K(i), Module::K(j)) => {
                let n = n as i64;
                (0..=n - i as i64 - 2)
                    .map(|a| {
                        let v = binomial(n, i as i64 + 2 + a) * self.tk(a as u64, j, d + a);
                        if a % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    })
                    .sum()
            }
        }
    }
}

/// The Hom-Hilbert matrix to degree `trunc`. Coefficients are dimensions, so a negative
/// one means the Euler-characteristic conventions are wrong; that is an error.
pub fn hom_hilbert_matrix(n: u32, trunc: usize) -> Result<HomMatrix, NcrError> {
    if n < 4 {
        return Err(NcrError::NTooSmall(n));
    }
    let engine = Engine {
        n,
        s: char_s(n, trunc + n as usize),
    };
    let modules = ncr_modules(n);
    let m = modules.len();
    let flat = par::map_range(0..m * m, |k| {
        let (u, v) = (modules[k / m], modules[k % m]);
        TruncSeries::from_coeffs(trunc, (0..=trunc as i64).map(|d| engine.hom(u, v, d)))
    });
    let entries: Vec<Vec<TruncSeries>> = flat.chunks(m).map(|row| row.to_vec()).collect();
    for (u, row) in entries.iter().enumerate() {
        for (v, s) in row.iter().enumerate() {
            if let Some(degree) = s.coeffs().iter().position(Signed::is_negative) {
                return Err(NcrError::NegativeEntry {
                    row: modules[u].label(),
                    col: modules[v].label(),
                    degree,
                });
            }
        }
    }
    Ok(HomMatrix {
        n,
        modules,
        entries,
    })
}

/// Square matrix of rational truncated series, `coeffs[k][u][v]` = coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeriesMatrix {
    pub coeffs: Vec<Vec<Vec<BigRational>>>,
}

impl RationalSeriesMatrix {
    pub fn size(&self) -> usize {
        self.coeffs[0].len()
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_integer_entries(entries: &[Vec<TruncSeries>]) -> Self {
        let trunc = entries[0][0].trunc();
        let coeffs = (0..=trunc)
            .map(|k| {
                entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| BigRational::from_integer(s.coeff(k).clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RationalSeriesMatrix { coeffs }
    }

    pub fn entry_coeffs(&self, u: usize, v: usize) -> Vec<BigRational> {
        self.coeffs.iter().map(|m| m[u][v].clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().flatten().flatten().all(|c| c.is_integer())
    }

    /// Product modulo `t^{D+1}`.
    pub fn mul(&self, other: &Self) -> Self {
        let (m, trunc) = (self.size(), self.trunc());
        let coeffs = (0..=trunc)
            .map(|k| {
                let mut out = zero_matrix(m);
                for i in 0..=k {
                    add_product(&mut out, &self.coeffs[i], &other.coeffs[k - i]);
                }
                out
            })
            .collect();
        RationalSeriesMatrix { coeffs }
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(k, mat)| {
            mat.iter().enumerate().all(|(u, row)| {
                row.iter().enumerate().all(|(v, c)| {
                    if k == 0 && u == v {
                        c.is_one()
                    } else {
                        c.is_zero()
                    }
                })
            })
        })
    }
}

fn zero_matrix(m: usize) -> Vec<Vec<BigRational>> {
    vec![vec![BigRational::zero(); m]; m]
}

fn add_product(out: &mut [Vec<BigRational>], a: &[Vec<BigRational>], b: &[Vec<BigRational>]) {
    let m = a.len();
    for u in 0..m {
        for w in 0..m {
            if a[u][w].is_zero() {
                continue;
            }
            for v in 0..m {
                if !b[w][v].is_zero() {
                    out[u][v] += &a[u][w] * &b[w][v];
                }
            }
        }
    }
}

fn invert_constant(h0: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>, NcrError> {
    let m = h0.len();
    let mut a: Vec<Vec<BigRational>> = h0.to_vec();
    let mut inv = zero_matrix(m);
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(NcrError::SingularConstantTerm)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &s;
        }
        for x in inv[col].iter_mut() {
            *x *= &s;
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..m {
                let t = &f * &a[col][c];
                a[r][c] -= t;
                let t = &f * &inv[col][c];
                inv[r][c] -= t;
            }
        }
    }
    Ok(inv)
}

/// `H^{-1}` modulo `t^{D+1}`: `G_0 = H_0^{-1}`, `G_k = -H_0^{-1} Σ_{i=1}^k H_i G_{k-i}`.
pub fn invert_truncated_matrix(h: &RationalSeriesMatrix) -> Result<RationalSeriesMatrix, NcrError> {
    let (m, trunc) = (h.size(), h.trunc());
    let g0 = invert_constant(&h.coeffs[0])?;
    let mut g = vec![g0.clone()];
    for k in 1..=trunc {
        // columns are independent
        let cols = par::map_range(0..m, |v| {
            let mut acc = vec![BigRational::zero(); m];
            for i in 1..=k {
                let (hi, gk) = (&h.coeffs[i], &g[k - i]);
                for (w, gw) in gk.iter().enumerate() {
                    if gw[v].is_zero() {
                        continue;
                    }
                    for u in 0..m {
                        if !hi[u][w].is_zero() {
                            acc[u] += &hi[u][w] * &gw[v];
                        }
                    }
                }
            }
            (0..m)
                .map(|u| {
                    -(0..m)
                        .filter(|&w| !g0[u][w].is_zero())
                        .map(|w| &g0[u][w] * &acc[w])
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .collect::<Vec<_>>()
        });
        let mut gk = zero_matrix(m);
        for (v, col) in cols.into_iter().enumerate() {
            for (u, c) in col.into_iter().enumerate() {
                gk[u][v] = c;
            }
        }
        g.push(gk);
    }
    Ok(RationalSeriesMatrix { coeffs: g })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialityReport {
    pub trunc: usize,
    pub guard: usize,
    /// Every entry vanishes in degrees `(D - guard, D]`.
    pub polynomial: bool,
    pub max_degree: Option<usize>,
    pub entry_max_degrees: Vec<Vec<Option<usize>>>,
}

pub fn polynomiality_report(g: &RationalSeriesMatrix, guard: usize) -> PolynomialityReport {
    let (m, trunc) = (g.size(), g.trunc());
    assert!(guard < trunc, "guard {guard} must be below the truncation {trunc}");
    let entry_max_degrees: Vec<Vec<Option<usize>>> = (0..m)
        .map(|u| {
            (0..m)
                .map(|v| (0..=trunc).rev().find(|&k| !g.coeffs[k][u][v].is_zero()))
                .collect()
        })
        .collect();
    let max_degree = entry_max_degrees.iter().flatten().flatten().copied().max();
    PolynomialityReport {
        trunc,
        guard,
        polynomial: max_degree.is_none_or(|d| d <= trunc - guard),
        max_degree,
        entry_max_degrees,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NcrReport {
    pub n: u32,
    pub labels: Vec<String>,
    pub diagonal_constant_terms_one: bool,
    /// Constant term of `(K{1}, K{1})`.
    pub k1_k1_constant: String,
    pub product_is_identity: bool,
    pub integral: bool,
    pub polynomiality: PolynomialityReport,
}

impl NcrReport {
    pub fn ok(&self) -> bool {
        self.diagonal_constant_terms_one
            && self.product_is_identity
            && self.integral
            && self.polynomiality.polynomial
    }
}

pub fn ncr_analysis(n: u32, trunc: usize, guard: usize) -> Result<(HomMatrix, RationalSeriesMatrix, NcrReport), NcrError> {
    let h = hom_hilbert_matrix(n, trunc)?;
    let hq = RationalSeriesMatrix::from_integer_entries(&h.entries);
    let g = invert_truncated_matrix(&hq)?;
    let constants = h.constant_terms();
    let report = NcrReport {
        n,
        labels: h.labels(),
        diagonal_constant_terms_one: (0..h.size()).all(|i| constants[i][i].is_one()),
        k1_k1_constant: h.entry(Module::K(1), Module::K(1)).coeff(0).to_string(),
        product_is_identity: hq.mul(&g).is_identity(),
        integral: g.is_integral(),
        polynomiality: polynomiality_report(&g, guard),
    };
    Ok((h, g, report))
}
