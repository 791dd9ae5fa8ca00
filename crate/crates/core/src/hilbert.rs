//! Hilbert series of everything in sight, and the identities that certify a summand
//! list: the ring-level list must reproduce the Hilbert series of `R`, the
//! invariants-level list must reproduce `dim (S_d)^{G_1}` as computed by
//! [`crate::bruteforce`].
//!
//! Characters of `S = k[x_1, y_1, ..., x_n, y_n]` are built by repeated prefix sums
//! (multiplication by `1/(1 - zt)` and `1/(1 - z^{-1}t)`), never from binomial closed
//! forms, so the closed forms below can be tested against them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bruteforce::bruteforce_g1_dim;
use crate::char_calculus::{nabla_mults, tilting_dim, WeightChar};
use crate::decomposition::{
    decompose_grassmannian, decompose_invariants, duality_violations, summand_inventory,
    Level, SheafKind, SummandList,
};
use crate::error::HilbertError;
use crate::params::{binomial, pow, Params};
use crate::series::{inverse_power_of_one_minus, TruncSeries};

/// Characters of the graded pieces `M_0, ..., M_D` of a graded `SL_2`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedWeightChar {
    degrees: Vec<WeightChar>,
}

impl GradedWeightChar {
    pub fn trunc(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Character in degree `d`; zero for negative `d`.
    pub fn degree(&self, d: i64) -> WeightChar {
        if d < 0 {
            return WeightChar::zero();
        }
        self.get(d as usize).clone()
    }

    pub fn get(&self, d: usize) -> &WeightChar {
        assert!(
            d <= self.trunc(),
            "degree {d} requested beyond truncation {}",
            self.trunc()
        );
        &self.degrees[d]
    }

    /// Multiplicity of weight `w` in degree `d` (zero outside the table).
    pub fn coeff(&self, d: i64, w: i64) -> BigInt {
        if d < 0 || d as usize > self.trunc() {
            return BigInt::zero();
        }
        self.degrees[d as usize].coeff(w)
    }

    pub fn dimensions(&self) -> TruncSeries {
        TruncSeries::from_coeffs(self.trunc(), self.degrees.iter().map(|c| c.dimension()))
    }
}

type CharSCache = RwLock<HashMap<(u32, usize), Arc<GradedWeightChar>>>;

fn char_s_cache() -> &'static CharSCache {
    static CACHE: OnceLock<CharSCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Graded character of `S` up to degree `trunc`.
pub fn char_s(n: u32, trunc: usize) -> Arc<GradedWeightChar> {
    if let Some(c) = char_s_cache().read().unwrap().get(&(n, trunc)) {
        return Arc::clone(c);
    }
    // table[d][w + trunc]
    let width = 2 * trunc + 1;
    let mut table = vec![vec![BigInt::zero(); width]; trunc + 1];
    table[0][trunc] = BigInt::one();
    for step in 0..2 * n {
        let dw: i64 = if step < n { 1 } else { -1 };
        for d in 1..=trunc {
            for w in 0..width {
                let src = w as i64 - dw;
                if (0..width as i64).contains(&src) {
                    let prev = table[d - 1][src as usize].clone();
                    table[d][w] += prev;
                }
            }
        }
    }
    let degrees = table
        .into_iter()
        .map(|row| {
            WeightChar::from_pairs(
                row.into_iter()
                    .enumerate()
                    .map(|(w, c)| (w as i64 - trunc as i64, c)),
            )
        })
        .collect();
    let c = Arc::new(GradedWeightChar { degrees });
    char_s_cache()
        .write()
        .unwrap()
        .entry((n, trunc))
        .or_insert_with(|| Arc::clone(&c));
    c
}

/// `char S_d`.
pub fn char_s_degree(n: u32, d: usize) -> WeightChar {
    char_s(n, d).get(d).clone()
}

/// Dimension of the invariants of a module with good filtration and character `c`:
/// the multiplicity of `∇(0)`, i.e. `c[0] - c[2]`.
pub fn invariant_dim(c: &WeightChar) -> BigInt {
    c.coeff(0) - c.coeff(2)
}

/// `invariant_dim(weyl(i) · c)` for a symmetric `c`, which is `c[i] - c[i+2]`.
pub fn invariant_dim_with_weyl(c: &WeightChar, i: u64) -> BigInt {
    c.coeff(i as i64) - c.coeff(i as i64 + 2)
}

/// Dimension of the `∇(v)`-covariants of `S_d`.
fn covariant_coeff(s: &GradedWeightChar, v: u64, d: i64) -> BigInt {
    s.coeff(d, v as i64) - s.coeff(d, v as i64 + 2)
}

fn check_k_index(n: u32, j: u32) {
    assert!(
        j >= 1 && j + 2 <= n,
        "K_j needs 1 <= j <= n-2, got j = {j}, n = {n}"
    );
}

/// `char (K_j)_d = Σ_i (-1)^i C(n, j+2+i) weyl(i) char S_{d-i}`, read off the
/// resolution of `K_j` by free `S`-modules.
pub fn char_k(n: u32, j: u32, d: usize) -> WeightChar {
    check_k_index(n, j);
    let s = char_s(n, d);
    let mut out = WeightChar::zero();
    for i in 0..=(n - j - 2) as usize {
        if i > d {
            break;
        }
        let c = sign(i) * binomial(n as i64, (j as usize + 2 + i) as i64);
        out += &(&crate::char_calculus::weyl(i as u64) * s.get(d - i)).scale(&c);
    }
    out
}

fn sign(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Hilbert series of `K_j`.
pub fn hs_k(n: u32, j: u32, trunc: usize) -> TruncSeries {
    check_k_index(n, j);
    let s = char_s(n, trunc).dimensions();
    let mut out = TruncSeries::zero(trunc);
    for i in 0..=(n - j - 2) as usize {
        let c = sign(i) * binomial(n as i64, (j as usize + 2 + i) as i64) * BigInt::from(i + 1);
        out += &s.shift(i).scale(&c);
    }
    out
}

/// Numerator of `hs_K` over `(1-t)^{2n}`: `Σ_i (-1)^i (i+1) C(n, j+2+i) t^i`.
pub fn hs_k_numerator(n: u32, j: u32) -> Vec<BigInt> {
    check_k_index(n, j);
    (0..=(n - j - 2) as usize)
        .map(|i| sign(i) * BigInt::from(i + 1) * binomial(n as i64, (j as usize + 2 + i) as i64))
        .collect()
}

/// Hilbert series of `M_j = ⊕_t S^{j+t}V ⊗ S^t F (-t)`.
pub fn hs_m(n: u32, j: u32, trunc: usize) -> TruncSeries {
    TruncSeries::from_coeffs(
        trunc,
        (0..=trunc).map(|d| {
            BigInt::from(j as usize + d + 1) * binomial(n as i64 - 1 + d as i64, d as i64)
        }),
    )
}

/// `hs_M` again, as the Euler characteristic of its free resolution.
pub fn hs_m_euler(n: u32, j: u32, trunc: usize) -> TruncSeries {
    let mut num = TruncSeries::zero(trunc);
    let (n, j) = (n as i64, j as i64);
    for k in 0..=j {
        let c = sign(k as usize) * BigInt::from(j - k + 1) * binomial(n, k);
        num.add_at(k as usize, &c);
    }
    for a in 0..=n - j - 2 {
        let c = sign((j + 1 + a) as usize) * BigInt::from(a + 1) * binomial(n, j + 2 + a);
        num.add_at((j + 2 + a) as usize, &c);
    }
    &num * &inverse_power_of_one_minus(1, 2 * n as usize, trunc)
}

/// Hilbert series of the module of covariants `(∇(v) ⊗ S)^G`.
pub fn hs_covariant(n: u32, v: u64, trunc: usize) -> TruncSeries {
    let s = char_s(n, trunc);
    TruncSeries::from_coeffs(
        trunc,
        (0..=trunc).map(|d| covariant_coeff(&s, v, d as i64)),
    )
}

/// Closed form of [`hs_covariant`]: `h(v, d) - h(v+2, d)` where `h(i, d)` counts the
/// monomials of `x`-degree `q+i` and `y`-degree `q`, `d = 2q + i`.
pub fn hs_covariant_closed(n: u32, v: u64, trunc: usize) -> TruncSeries {
    let n = n as i64;
    let h = |i: i64, d: i64| {
        if d < i || (d - i) % 2 != 0 {
            return BigInt::zero();
        }
        let q = (d - i) / 2;
        binomial(n + q - 1, q) * binomial(n + q + i - 1, q + i)
    };
    TruncSeries::from_coeffs(
        trunc,
        (0..=trunc as i64).map(|d| h(v as i64, d) - h(v as i64 + 2, d)),
    )
}

/// Hilbert series of `T{m} = (T(m) ⊗ S)^G`.
pub fn hs_t_brace(p: u32, n: u32, m: u64, trunc: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(trunc);
    for (v, c) in nabla_mults(p, m) {
        out += &hs_covariant(n, v, trunc).scale(&BigInt::from(c));
    }
    out
}

/// Hilbert series of `K{j} = K_j^G`.
pub fn hs_k_brace(n: u32, j: u32, trunc: usize) -> TruncSeries {
    check_k_index(n, j);
    let s = char_s(n, trunc);
    let mut out = TruncSeries::zero(trunc);
    for d in 0..=trunc as i64 {
        let mut c = BigInt::zero();
        for i in 0..=(n - j - 2) as i64 {
            let b = binomial(n as i64, j as i64 + 2 + i);
            c += sign(i as usize) * b * covariant_coeff(&s, i as u64, d - i);
        }
        out.add_at(d as usize, &c);
    }
    out
}

/// Hilbert series of `R = S^G`.
pub fn hs_ring(n: u32, trunc: usize) -> TruncSeries {
    hs_covariant(n, 0, trunc)
}

/// Hilbert series of the module described by a summand list (invariants or ring level).
pub fn hs_of_summand_list(list: &SummandList, trunc: usize) -> Result<TruncSeries, HilbertError> {
    if list.level == Level::Sheaf {
        return Err(HilbertError::UnsupportedLevel("sheaf".into()));
    }
    let (n, p) = (list.n, list.p);
    let pu = p as usize;
    let mut out = TruncSeries::zero(trunc);
    let mut t_cache: BTreeMap<u64, TruncSeries> = BTreeMap::new();
    let mut k_cache: BTreeMap<u64, TruncSeries> = BTreeMap::new();
    let free = inverse_power_of_one_minus(pu, 2 * n as usize, trunc);
    for (key, mult) in list.iter() {
        if key.shift < 0 || key.shift as usize > trunc {
            continue;
        }
        let shift = key.shift as usize;
        let base = match (list.level, key.kind) {
            (Level::Invariants, SheafKind::T) => free.scale(&tilting_dim(p, key.param)),
            (Level::Invariants, SheafKind::K) => k_cache
                .entry(key.param)
                .or_insert_with(|| hs_k(n, key.param as u32, trunc).substitute_power(pu))
                .clone(),
            (Level::Ring, SheafKind::T) => t_cache
                .entry(key.param)
                .or_insert_with(|| hs_t_brace(p, n, key.param, trunc).substitute_power(pu))
                .clone(),
            (Level::Ring, SheafKind::K) => k_cache
                .entry(key.param)
                .or_insert_with(|| hs_k_brace(n, key.param as u32, trunc).substitute_power(pu))
                .clone(),
            (_, kind) => {
                return Err(HilbertError::UnsupportedLevel(format!(
                    "{} entry in a {} list",
                    kind.as_str(),
                    list.level.as_str()
                )))
            }
        };
        out += &base.shift(shift).scale(mult);
    }
    Ok(out)
}

/// First degree where the ring-level list fails to reproduce the Hilbert series of `R`.
pub fn ring_identity_failure(list: &SummandList, trunc: usize) -> Result<Option<usize>, HilbertError> {
    let lhs = hs_of_summand_list(list, trunc)?;
    Ok(lhs.first_difference(&hs_ring(list.n, trunc)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Character,
    Bruteforce,
    Both,
}

impl std::str::FromStr for Oracle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "character" => Ok(Oracle::Character),
            "bruteforce" => Ok(Oracle::Bruteforce),
            "both" => Ok(Oracle::Both),
            _ => Err(format!("unknown oracle {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub oracle: Oracle,
    /// Memory budget (bytes) for one brute-force instance.
    pub budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle: Oracle::Both,
            budget: crate::bruteforce::DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub first_failing_degree: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub p: u32,
    pub trunc: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn check(name: &str, failing: Option<usize>, detail: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        ok: failing.is_none() && !detail.starts_with("FAILED"),
        first_failing_degree: failing,
        detail,
    }
}

/// Runs the identity suite. Computation errors of the decomposition engine are
/// returned as errors; failed identities are report entries.
pub fn verify_identities(params: &Params, options: VerifyOptions) -> Result<VerifyReport, HilbertError> {
    let (n, p, trunc) = (params.n, params.p, params.trunc);
    let invariants = decompose_invariants(params)?;
    let ring = invariants.relabel(Level::Ring);
    let sheaf = decompose_grassmannian(params)?;
    let mut checks = Vec::new();

    if options.oracle != Oracle::Bruteforce {
        let failing = ring_identity_failure(&ring, trunc)?;
        let detail = match failing {
            None => format!("Hilbert series of R reproduced to degree {trunc}"),
            Some(d) => format!("FAILED: series differ first in degree {d}"),
        };
        checks.push(check("ring_series", failing, detail));
    }

    if options.oracle != Oracle::Character {
        let series = hs_of_summand_list(&invariants, trunc)?;
        let mut failing = None;
        let mut reached = None;
        for d in 0..=trunc {
            match bruteforce_g1_dim(p, n, d, options.budget) {
                Ok(dim) => {
                    if &dim != series.coeff(d) {
                        failing = Some(d);
                        break;
                    }
                    reached = Some(d);
                }
                Err(HilbertError::BudgetExceeded { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        let detail = match (failing, reached) {
            (Some(d), _) => format!("FAILED: brute-force dimension differs in degree {d}"),
            (None, Some(r)) => format!("dim (S_d)^G1 matches for d <= {r}"),
            (None, None) => "no degree fits the budget".into(),
        };
        checks.push(check("bruteforce_g1", failing, detail));
    }

    let inv_rank = invariants.rank_sum();
    let sheaf_rank = sheaf.rank_sum();
    let want_inv = pow(p, 2 * n - 3);
    let want_sheaf = pow(p, 2 * (n - 2));
    let ok = inv_rank == want_inv && sheaf_rank == want_sheaf;
    checks.push(check(
        "rank_sums",
        None,
        format!(
            "{}invariants/ring {inv_rank} (expected {want_inv}), sheaf {sheaf_rank} (expected {want_sheaf})",
            if ok { "" } else { "FAILED: " }
        ),
    ));

    let bad = duality_violations(&invariants);
    checks.push(check(
        "duality",
        None,
        if bad.is_empty() {
            "all summands paired with their duals".into()
        } else {
            format!("FAILED: {}", bad.join("; "))
        },
    ));

    for list in [&invariants, &sheaf] {
        let name = format!("ranges_{}", list.level.as_str());
        let detail = match summand_inventory(list) {
            Ok(inv) if inv.all_realized() => format!(
                "{} distinct summands, all inside the predicted ranges, every predicted summand realized",
                inv.distinct_count
            ),
            Ok(inv) => format!(
                "FAILED: predicted but absent: {}",
                inv.absent()
                    .iter()
                    .map(|k| k.label(list.level))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            Err(e) => format!("FAILED: {e}"),
        };
        checks.push(check(&name, None, detail));
    }

    Ok(VerifyReport {
        n,
        p,
        trunc,
        checks,
    })
}
