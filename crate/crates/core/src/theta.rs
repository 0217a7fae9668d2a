//! Double and single theta polynomials together with their Schur
//! determinant and Pfaffian forms.

use std::collections::HashMap;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::linalg::{det, pfaffian};
use crate::partition::{is_k_strict_parts, partitions_of, KStrictPartition};
use crate::raising::{apply, apply_single, gamma_seq, two_row_ratio, IntSeq, PairSet};
use crate::ring::{c_power, complete_sym_neg, Polynomial};

/// `C(λ)` restricted to pairs with `j ≤ window`.
pub fn pair_set_c(lam: &KStrictPartition, window: usize) -> PairSet {
    let k = lam.k() as i64;
    let mut d = PairSet::new();
    for j in 2..=window {
        for i in 1..j {
            let lhs = (lam.part(i) + lam.part(j)) as i64;
            if lhs > 2 * k + j as i64 - i as i64 {
                d.insert(i, j);
            }
        }
    }
    d
}

/// `β(λ)` of length `len` (entries past `ℓ(λ)` use `λ_j = 0`).
pub fn beta_seq(lam: &KStrictPartition, len: usize) -> IntSeq {
    let d = pair_set_c(lam, len);
    let parts = IntSeq(lam.as_i64()).padded(len);
    gamma_seq(&d, &parts, lam.k())
}

static DOUBLE_CACHE: Lazy<Mutex<HashMap<(usize, Vec<usize>), Polynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `Θ_λ(c|t) = R^λ c^{β(λ)}_λ`.
pub fn theta_double(lam: &KStrictPartition) -> Polynomial {
    let key = (lam.k(), lam.parts().to_vec());
    if let Some(p) = DOUBLE_CACHE.lock().unwrap().get(&key) {
        return p.clone();
    }
    let l = lam.len();
    let d = pair_set_c(lam, l);
    let sub = IntSeq(lam.as_i64());
    let sup = beta_seq(lam, l);
    let val = apply(&d, &sub, &sup);
    DOUBLE_CACHE.lock().unwrap().insert(key, val.clone());
    val
}

/// Validating wrapper over [`theta_double`] for raw parts.
pub fn theta_double_parts(k: usize, parts: &[usize]) -> Result<Polynomial> {
    Ok(theta_double(&KStrictPartition::new(k, parts)?))
}

/// `Θ_λ(c) = R^λ c_λ`.
pub fn theta_single(lam: &KStrictPartition) -> Polynomial {
    let l = lam.len();
    apply_single(&pair_set_c(lam, l), &IntSeq(lam.as_i64()))
}

/// `S^ρ_α(c|t) = det(c^{ρ_i}_{α_i + j - i})`.
pub fn schur_det(alpha: &IntSeq, rho: &IntSeq) -> Result<Polynomial> {
    if alpha.len() != rho.len() {
        return Err(Error::LengthMismatch(alpha.len(), rho.len()));
    }
    let l = alpha.len();
    let m: Vec<Vec<Polynomial>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| c_power(alpha.entry(i) + j as i64 - i as i64, rho.entry(i)))
                .collect()
        })
        .collect();
    det(&m)
}

/// `Q^ρ_α(c|t)`: Pfaffian of the two-row ratios, padded to even size with
/// `α = 0, ρ = 0`.
pub fn schur_pf(alpha: &IntSeq, rho: &IntSeq) -> Result<Polynomial> {
    if alpha.len() != rho.len() {
        return Err(Error::LengthMismatch(alpha.len(), rho.len()));
    }
    let mut a = alpha.0.clone();
    let mut r = rho.0.clone();
    if a.len() % 2 == 1 {
        a.push(0);
        r.push(0);
    }
    Ok(pfaffian(a.len(), |i, j| two_row_ratio(a[i], a[j], r[i], r[j])))
}

/// Schur `S`-polynomial `S_α(c) = det(c_{α_i + j - i})`.
pub fn schur_s(alpha: &[i64]) -> Polynomial {
    let zeros = IntSeq(vec![0; alpha.len()]);
    schur_det(&IntSeq(alpha.to_vec()), &zeros).expect("equal lengths")
}

/// Schur `Q`-polynomial `Q_α(c)`.
pub fn schur_q(alpha: &[i64]) -> Polynomial {
    let zeros = IntSeq(vec![0; alpha.len()]);
    schur_pf(&IntSeq(alpha.to_vec()), &zeros).expect("equal lengths")
}

/// `A_ℓ(λ)`: pairs `i < j ≤ ℓ` outside `C(λ)`.
pub fn pair_set_a(lam: &KStrictPartition) -> Vec<(usize, usize)> {
    let l = lam.len();
    let c = pair_set_c(lam, l);
    (2..=l)
        .flat_map(|j| (1..j).map(move |i| (i, j)))
        .filter(|&(i, j)| !c.contains(i, j))
        .collect()
}

/// The multiset `{Π_{(i,j)∈S} R_ij λ : S ⊆ A_ℓ(λ)}` as vector ↦ multiplicity.
pub fn pf_index_multiset(lam: &KStrictPartition) -> HashMap<Vec<i64>, u64> {
    let mut acc: HashMap<Vec<i64>, u64> = HashMap::new();
    acc.insert(lam.as_i64(), 1);
    for (i, j) in pair_set_a(lam) {
        let mut next = acc.clone();
        for (v, m) in &acc {
            let mut w = v.clone();
            w[i - 1] += 1;
            w[j - 1] -= 1;
            *next.entry(w).or_insert(0) += m;
        }
        acc = next;
    }
    acc
}

/// `Σ_{ν ∈ N} Q^{β(λ)}_ν(c|t)`.
///
/// The sum over `S ⊆ A_ℓ(λ)` is folded into the Pfaffian expansion: when
/// rows `a < b` are paired, every still open pair of `A_ℓ(λ)` meeting `a`
/// or `b` is decided, which fixes `ν_a` and `ν_b`.
pub fn theta_pf_sum(lam: &KStrictPartition) -> Polynomial {
    let l = lam.len();
    let mut base = lam.as_i64();
    let mut beta = beta_seq(lam, l).0;
    if l % 2 == 1 {
        base.push(0);
        beta.push(0);
    }
    let n = base.len();
    let mut in_a = vec![vec![false; n]; n];
    for (i, j) in pair_set_a(lam) {
        in_a[i - 1][j - 1] = true;
    }
    let mut pf = FoldedPf { base, beta, in_a, entries: HashMap::new(), memo: HashMap::new() };
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    pf.eval(full, &vec![0; n])
}

struct FoldedPf {
    base: Vec<i64>,
    beta: Vec<i64>,
    in_a: Vec<Vec<bool>>,
    entries: HashMap<(usize, usize, i64, i64), Polynomial>,
    memo: HashMap<(u32, Vec<i64>), Polynomial>,
}

impl FoldedPf {
    fn entry(&mut self, i: usize, j: usize, p: i64, q: i64) -> Polynomial {
        let (ri, rj) = (self.beta[i], self.beta[j]);
        self.entries
            .entry((i, j, p, q))
            .or_insert_with(|| two_row_ratio(p, q, ri, rj))
            .clone()
    }

    /// Offset changes from the open pairs meeting `a` or `b`, with counts.
    fn choices(&self, a: usize, b: usize, others: u32) -> HashMap<Vec<i64>, u64> {
        let n = self.base.len();
        let mut pairs = Vec::new();
        if self.in_a[a][b] {
            pairs.push((a, b));
        }
        for c in (0..n).filter(|&c| others & (1 << c) != 0) {
            for x in [a, b] {
                let (i, j) = (x.min(c), x.max(c));
                if self.in_a[i][j] {
                    pairs.push((i, j));
                }
            }
        }
        let mut acc: HashMap<Vec<i64>, u64> = HashMap::new();
        acc.insert(vec![0; n], 1);
        for (i, j) in pairs {
            let mut next = acc.clone();
            for (v, m) in &acc {
                let mut w = v.clone();
                w[i] += 1;
                w[j] -= 1;
                *next.entry(w).or_insert(0) += m;
            }
            acc = next;
        }
        acc
    }

    fn eval(&mut self, remaining: u32, off: &[i64]) -> Polynomial {
        if remaining == 0 {
            return Polynomial::one();
        }
        let n = self.base.len();
        let key: Vec<i64> = (0..n).filter(|&i| remaining & (1 << i) != 0).map(|i| off[i]).collect();
        if let Some(v) = self.memo.get(&(remaining, key.clone())) {
            return v.clone();
        }
        let a = remaining.trailing_zeros() as usize;
        let rest = remaining & !(1 << a);
        let mut out = Polynomial::zero();
        let mut bits = rest;
        let mut pos = 0;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let others = rest & !(1 << b);
            let mut grouped: HashMap<(i64, i64), Vec<(Vec<i64>, u64)>> = HashMap::new();
            for (delta, m) in self.choices(a, b, others) {
                let p = self.base[a] + off[a] + delta[a];
                let q = self.base[b] + off[b] + delta[b];
                grouped.entry((p, q)).or_default().push((delta, m));
            }
            let mut grouped: Vec<_> = grouped.into_iter().collect();
            grouped.sort();
            let mut part = Polynomial::zero();
            for ((p, q), mut list) in grouped {
                let e = self.entry(a, b, p, q);
                if e.is_zero() {
                    continue;
                }
                list.sort();
                let mut subs = Polynomial::zero();
                for (delta, m) in list {
                    let next: Vec<i64> = off.iter().zip(&delta).map(|(x, d)| x + d).collect();
                    let sub = self.eval(others, &next);
                    subs.add_scaled(&sub, &(m as i64).into());
                }
                if !subs.is_zero() {
                    part += &(&e * &subs);
                }
            }
            if pos % 2 == 0 {
                out += &part;
            } else {
                out -= &part;
            }
            pos += 1;
        }
        self.memo.insert((remaining, key), out.clone());
        out
    }
}

/// `Π_{(i,j)∈C_ℓ(λ)} (1 - R_ij + R_ij² - ⋯) S^{β(λ)}_λ(c|t)`.
///
/// The series is truncated where the shifted index makes a determinant row
/// vanish: row `j` of `S_α` is zero once `α_j + ℓ - j < 0`.
pub fn theta_det_product(lam: &KStrictPartition) -> Polynomial {
    let l = lam.len();
    let c = pair_set_c(lam, l);
    let beta = beta_seq(lam, l);
    let mut shifts: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut cur = lam.as_i64();
    series_rec(&c, l, l, 1, 1, &mut cur, &mut shifts);
    let mut out = Polynomial::zero();
    for (alpha, sign) in shifts {
        let s = schur_det(&IntSeq(alpha), &beta).expect("equal lengths");
        out += &s.scale(&sign.into());
    }
    out
}

fn series_rec(
    c: &PairSet,
    l: usize,
    col: usize,
    row: usize,
    sign: i64,
    cur: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, i64)>,
) {
    if col <= 1 {
        out.push((cur.clone(), sign));
        return;
    }
    let floor = -((l - col) as i64);
    if row == col {
        if cur[col - 1] >= floor {
            series_rec(c, l, col - 1, 1, sign, cur, out);
        }
        return;
    }
    if !c.contains(row, col) {
        series_rec(c, l, col, row + 1, sign, cur, out);
        return;
    }
    let max_m = (cur[col - 1] - floor).max(0);
    for m in 0..=max_m {
        cur[row - 1] += m;
        cur[col - 1] -= m;
        let s = if m % 2 == 0 { sign } else { -sign };
        series_rec(c, l, col, row + 1, s, cur, out);
        cur[row - 1] -= m;
        cur[col - 1] += m;
    }
}

/// `λ_i + λ_j ≤ 2k + j - i` for all `i < j`.
pub fn is_small_case(lam: &KStrictPartition) -> bool {
    pair_set_c(lam, lam.len()).is_empty()
}

/// Every nonzero part exceeds `k`.
pub fn is_large_case(lam: &KStrictPartition) -> bool {
    lam.parts().iter().all(|&p| p > lam.k())
}

fn h_det<F>(l: usize, entry: F) -> Polynomial
where
    F: Fn(usize, usize) -> Polynomial,
{
    let m: Vec<Vec<Polynomial>> = (1..=l)
        .map(|i| (1..=l).map(|j| entry(i, j)).collect())
        .collect();
    det(&m).expect("square")
}

/// All partitions with at most `l` parts contained in `lam` (zero-padded to
/// length `l`).
fn contained_partitions(lam: &[usize], l: usize) -> Vec<Vec<usize>> {
    let total: usize = lam.iter().sum();
    let mut out = Vec::new();
    for w in 0..=total {
        for p in partitions_of(w, lam.first().copied().unwrap_or(0)) {
            if p.len() <= l && p.iter().zip(lam).all(|(a, b)| a <= b) {
                let mut q = p.clone();
                q.resize(l, 0);
                out.push(q);
            }
        }
    }
    out
}

/// `Σ_{μ⊆λ} S_μ(c) det(h^{k+i-λ_i}_{λ_i-μ_j+j-i}(-t))`.
pub fn factorial_s_rhs(lam: &KStrictPartition) -> Result<Polynomial> {
    if !is_small_case(lam) {
        return Err(Error::Precondition(format!(
            "{lam} needs λ_i+λ_j ≤ 2k+j-i for all i<j"
        )));
    }
    let k = lam.k() as i64;
    let l = lam.len();
    let la = lam.as_i64();
    let mut out = Polynomial::zero();
    for mu in contained_partitions(lam.parts(), l) {
        let mu: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
        let d = h_det(l, |i, j| {
            let (i_, j_) = (i as i64, j as i64);
            complete_sym_neg(la[i - 1] - mu[j - 1] + j_ - i_, k + i_ - la[i - 1])
        });
        if !d.is_zero() {
            out += &(&schur_s(&mu) * &d);
        }
    }
    Ok(out)
}

/// `Σ_μ Q_μ(c) det(h^{k+1-λ_i}_{λ_i-μ_j}(-t))` over strict `μ ⊆ λ` with
/// `μ_i > k` for `i ≤ ℓ(λ)`.
pub fn factorial_q_rhs(lam: &KStrictPartition) -> Result<Polynomial> {
    if !is_large_case(lam) {
        return Err(Error::Precondition(format!("{lam} needs every part > k")));
    }
    let k = lam.k();
    let l = lam.len();
    let la = lam.as_i64();
    let mut out = Polynomial::zero();
    for mu in contained_partitions(lam.parts(), l) {
        if mu.iter().any(|&x| x <= k) || !is_k_strict_parts(&mu, 0) {
            continue;
        }
        let mu: Vec<i64> = mu.iter().map(|&x| x as i64).collect();
        let d = h_det(l, |i, j| {
            complete_sym_neg(la[i - 1] - mu[j - 1], k as i64 + 1 - la[i - 1])
        });
        if !d.is_zero() {
            out += &(&schur_q(&mu) * &d);
        }
    }
    Ok(out)
}
