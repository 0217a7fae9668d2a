//! Signed permutations, the bijection `λ ↔ w_λ`, type A Schubert
//! polynomials and the polynomial `Ω_λ(c|t)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::partition::{k_strict_subpartitions, KStrictPartition};
use crate::raising::{IntSeq, PairSet};
use crate::ring::{Monomial, Polynomial};
use crate::theta::theta_single;

/// An element of `W_n` in window notation `(w_1, …, w_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    w: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(w: Vec<i64>) -> Result<Self> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &x in &w {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::NotSignedPermutation(format!("{w:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { w })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            w: (1..=n as i64).collect(),
        }
    }

    /// The simple reflection `s_i` in `W_n`.
    pub fn simple(i: usize, n: usize) -> Self {
        let mut s = SignedPermutation::identity(n.max(i + 1));
        if i == 0 {
            s.w[0] = -1;
        } else {
            s.w.swap(i - 1, i);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.w.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.w
    }

    /// One-based value `w(i)`, extended by fixed points and `w(-i) = -w(i)`.
    pub fn apply(&self, i: i64) -> i64 {
        let a = i.unsigned_abs() as usize;
        let v = if a == 0 {
            0
        } else if a <= self.w.len() {
            self.w[a - 1]
        } else {
            a as i64
        };
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// Embedding into `W_n` by appending fixed points.
    pub fn extended(&self, n: usize) -> Self {
        let mut w = self.w.clone();
        for x in w.len() + 1..=n {
            w.push(x as i64);
        }
        SignedPermutation { w }
    }

    /// Window with trailing fixed points removed.
    pub fn trimmed(&self) -> Self {
        let mut w = self.w.clone();
        while w.last().is_some_and(|&x| x == w.len() as i64) {
            w.pop();
        }
        SignedPermutation { w }
    }

    /// `(self · other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Self {
        let n = self.rank().max(other.rank());
        SignedPermutation {
            w: (1..=n as i64).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut w = vec![0; self.rank()];
        for (i, &x) in self.w.iter().enumerate() {
            let pos = x.unsigned_abs() as usize - 1;
            w[pos] = if x > 0 { i as i64 + 1 } else { -(i as i64 + 1) };
        }
        SignedPermutation { w }
    }

    /// `ℓ(w) = inv(w) + #{i<j : w_i + w_j < 0} + #{w_i < 0}`.
    pub fn length(&self) -> usize {
        let w = &self.w;
        let n = w.len();
        let mut len = w.iter().filter(|&&x| x < 0).count();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    len += 1;
                }
                if w[i] + w[j] < 0 {
                    len += 1;
                }
            }
        }
        len
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        if i == 0 {
            self.apply(1) < 0
        } else {
            self.apply(i as i64) > self.apply(i as i64 + 1)
        }
    }

    /// `ℓ(s_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse().has_right_descent(i)
    }

    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut out = self.extended(self.rank().max(i + 1));
        if i == 0 {
            out.w[0] = -out.w[0];
        } else {
            out.w.swap(i - 1, i);
        }
        out
    }

    pub fn left_mul_simple(&self, i: usize) -> Self {
        let n = self.rank().max(i + 1);
        SignedPermutation::simple(i, n).compose(&self.extended(n))
    }

    /// No sign changes, i.e. an element of `S_∞`.
    pub fn is_unsigned(&self) -> bool {
        self.w.iter().all(|&x| x > 0)
    }

    /// A reduced word `a_1 … a_p` with `w = s_{a_1} ⋯ s_{a_p}`, obtained by
    /// stripping the smallest right descent each time.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        loop {
            let d = (0..w.rank()).find(|&i| w.has_right_descent(i));
            match d {
                Some(i) => {
                    word.push(i);
                    w = w.right_mul_simple(i);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }

    pub fn from_word(word: &[usize], n: usize) -> Self {
        let mut w = SignedPermutation::identity(n);
        for &i in word {
            w = w.right_mul_simple(i);
        }
        w
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.w.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return SignedPermutation::new(Vec::new());
        }
        let w: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|x| x.trim().parse::<i64>()).collect();
        let w = w.map_err(|_| Error::NotSignedPermutation(s.to_string()))?;
        SignedPermutation::new(w)
    }
}

/// Descent set contained in `{k}`.
pub fn is_k_grassmannian(w: &SignedPermutation, k: usize) -> bool {
    (0..w.rank()).filter(|&i| i != k).all(|i| !w.has_right_descent(i))
}

/// The `k`-Grassmannian element `w_λ` in `W_n`.
pub fn partition_to_w(lam: &KStrictPartition, n: usize) -> Result<SignedPermutation> {
    if !lam.fits_rank(n) {
        return Err(Error::RankTooSmall(format!("{lam} does not fit P({}, {n})", lam.k())));
    }
    let k = lam.k();
    let lk = lam.k_length();
    let negs: Vec<i64> = (1..=lk).map(|i| -((lam.part(i) - k) as i64)).collect();
    let rest: Vec<i64> = (1..=n as i64)
        .filter(|v| !negs.contains(&-v))
        .collect();
    let m = n - k - lk;
    let mut tail = Vec::with_capacity(m);
    for j in 1..=m {
        let part = lam.part(lk + j);
        tail.push(rest[j + k - part - 1]);
    }
    let head: Vec<i64> = rest.iter().copied().filter(|v| !tail.contains(v)).collect();
    let mut w = head;
    w.extend(negs);
    w.extend(tail);
    SignedPermutation::new(w)
}

/// Inverse of [`partition_to_w`].
pub fn grassmannian_to_partition(w: &SignedPermutation, k: usize) -> Result<KStrictPartition> {
    if !is_k_grassmannian(w, k) {
        return Err(Error::NotGrassmannian(format!("{w} for k={k}")));
    }
    let w = w.extended(w.rank().max(k));
    let win = w.window();
    let parts: Vec<usize> = win[k..]
        .iter()
        .map(|&x| {
            if x < 0 {
                k + x.unsigned_abs() as usize
            } else {
                win[..k].iter().filter(|&&p| p > x).count()
            }
        })
        .collect();
    KStrictPartition::new(k, &parts)
}

/// `{(i,j) : w_{k+i} + w_{k+j} < 0}`.
pub fn pair_set_from_w(w: &SignedPermutation, k: usize) -> PairSet {
    let m = w.rank().saturating_sub(k);
    let mut d = PairSet::new();
    for j in 2..=m {
        for i in 1..j {
            if w.apply((k + i) as i64) + w.apply((k + j) as i64) < 0 {
                d.insert(i, j);
            }
        }
    }
    d
}

/// `β_j = w_{k+j} + 1` for negative entries and `w_{k+j}` otherwise.
pub fn beta_from_w(w: &SignedPermutation, k: usize) -> IntSeq {
    let m = w.rank().saturating_sub(k);
    IntSeq(
        (1..=m)
            .map(|j| {
                let x = w.apply((k + j) as i64);
                if x < 0 {
                    x + 1
                } else {
                    x
                }
            })
            .collect(),
    )
}

/// `σ_1|_{w_λ} = 2 Σ_{j ≤ ℓ_k} t_{λ_j - k} + Σ_{j ≤ k} (t_{w_j} - t_j)`.
pub fn localization_sigma1(lam: &KStrictPartition) -> Polynomial {
    let k = lam.k();
    let w = partition_to_w(lam, lam.min_rank()).expect("minimal rank fits");
    let mut out = Polynomial::zero();
    for j in 1..=lam.k_length() {
        out += &Polynomial::t((lam.part(j) - k) as i64).scale(&2.into());
    }
    for j in 1..=k {
        out += &Polynomial::t(w.apply(j as i64));
        out -= &Polynomial::t(j as i64);
    }
    out
}

/// A reduced factorization `u · w_μ = w_λ` with `u ∈ S_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedFactorization {
    pub u: SignedPermutation,
    pub mu: KStrictPartition,
}

/// All reduced factorizations of `w_λ` with left factor in `S_∞`.
pub fn reduced_factorizations(lam: &KStrictPartition) -> Vec<ReducedFactorization> {
    let n = lam.min_rank();
    let wl = partition_to_w(lam, n).expect("minimal rank fits");
    let len = wl.length();
    let mut out = Vec::new();
    for mu in k_strict_subpartitions(lam) {
        let wm = partition_to_w(&mu, n).expect("subpartition fits");
        let u = wl.compose(&wm.inverse());
        if u.is_unsigned() && u.length() + wm.length() == len {
            out.push(ReducedFactorization { u: u.trimmed(), mu });
        }
    }
    out
}

static SCHUBERT_CACHE: Lazy<Mutex<HashMap<Vec<i64>, Polynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `(f - s_i f)/(t_i - t_{i+1})` for `t`-only `f`, `i ≥ 1`.
fn lascoux_divided_difference(f: &Polynomial, i: u32) -> Polynomial {
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        let a = m.t_exp(i);
        let b = m.t_exp(i + 1);
        if a == b {
            continue;
        }
        // t_i^a t_{i+1}^b - t_i^b t_{i+1}^a = ±(t_i - t_{i+1}) Σ t_i^x t_{i+1}^y
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        let mut rest = m.t_exponents().to_vec();
        rest.resize(rest.len().max(i as usize + 1), 0);
        for x in 0..hi - lo {
            let mut e = rest.clone();
            e[i as usize - 1] = hi - 1 - x;
            e[i as usize] = lo + x;
            let mono = Monomial::from_dense(m.c_exponents().to_vec(), e);
            let coeff = if sign > 0 { c.clone() } else { -c };
            out.add_term(mono, &coeff);
        }
    }
    out
}

/// Type A Schubert polynomial `𝔖_u(t)` for `u` without sign changes.
///
/// Computed by descending from the longest element of the smallest
/// symmetric group containing `u`: `𝔖_u = ∂_i 𝔖_{u s_i}` at the first
/// ascent `i` of `u`.
pub fn schubert_poly_a(u: &SignedPermutation) -> Result<Polynomial> {
    if !u.is_unsigned() {
        return Err(Error::Precondition(format!("{u} has sign changes")));
    }
    let u = u.trimmed();
    let n = u.rank();
    Ok(schubert_rec(&u.extended(n).window().to_vec(), n))
}

fn schubert_rec(w: &[i64], n: usize) -> Polynomial {
    let mut key = w.to_vec();
    while key.last().is_some_and(|&x| x == key.len() as i64) {
        key.pop();
    }
    if let Some(p) = SCHUBERT_CACHE.lock().unwrap().get(&key) {
        return p.clone();
    }
    let ascent = (1..n).find(|&i| w[i - 1] < w[i]);
    let val = match ascent {
        None => {
            let exps: Vec<u32> = (1..n).map(|i| (n - i) as u32).collect();
            Polynomial::monomial(Monomial::from_dense(Vec::new(), exps), 1)
        }
        Some(i) => {
            let mut up = w.to_vec();
            up.swap(i - 1, i);
            lascoux_divided_difference(&schubert_rec(&up, n), i as u32)
        }
    };
    SCHUBERT_CACHE.lock().unwrap().insert(key, val.clone());
    val
}

/// `Ω_λ(c|t) = Σ_{u w_μ = w_λ} Θ_μ(c) 𝔖_{u^{-1}}(-t)`.
pub fn omega_poly(lam: &KStrictPartition) -> Polynomial {
    let mut out = Polynomial::zero();
    for f in reduced_factorizations(lam) {
        let s = schubert_poly_a(&f.u.inverse()).expect("unsigned").negate_t();
        out += &(&theta_single(&f.mu) * &s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;
    use crate::partition::k_strict_in_rank;
    use crate::theta::{beta_seq, pair_set_c};
    use std::collections::{HashSet, VecDeque};

    fn lam(k: usize, parts: &[usize]) -> KStrictPartition {
        KStrictPartition::new(k, parts).unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    /// Breadth-first word length in the Cayley graph of `W_n`.
    fn bfs_lengths(n: usize) -> HashMap<SignedPermutation, usize> {
        let mut dist = HashMap::new();
        let id = SignedPermutation::identity(n);
        dist.insert(id.clone(), 0);
        let mut q = VecDeque::from([id]);
        while let Some(w) = q.pop_front() {
            let d = dist[&w];
            for i in 0..n {
                let v = w.right_mul_simple(i);
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), d + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    #[test]
    fn length_matches_cayley_graph() {
        for n in 1..5 {
            let all = bfs_lengths(n);
            assert_eq!(all.len(), (1..=n).product::<usize>() << n);
            for (w, d) in all {
                assert_eq!(w.length(), d, "{w}");
                let alt: i64 = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| w.window()[i] > w.window()[j])
                    .count() as i64
                    - w.window().iter().filter(|&&x| x < 0).sum::<i64>();
                assert_eq!(alt as usize, d);
            }
        }
    }

    #[test]
    fn basic_lengths() {
        assert_eq!(SignedPermutation::identity(4).length(), 0);
        assert_eq!(sp("-1").length(), 1);
        assert_eq!(sp("4,8,-5,-2,-1,3,6,7").length(), 18);
        assert!("1,1".parse::<SignedPermutation>().is_err());
        assert!("0,1".parse::<SignedPermutation>().is_err());
    }

    #[test]
    fn bijection_examples() {
        let l = lam(2, &[7, 4, 3, 2, 1, 1]);
        let w = partition_to_w(&l, 8).unwrap();
        assert_eq!(w, sp("4,8,-5,-2,-1,3,6,7"));
        assert!(is_k_grassmannian(&w, 2));
        assert_eq!(grassmannian_to_partition(&w, 2).unwrap(), l);
        assert_eq!(
            partition_to_w(&KStrictPartition::empty(1), 3).unwrap(),
            SignedPermutation::identity(3)
        );
        assert_eq!(partition_to_w(&lam(1, &[1]), 2).unwrap(), sp("2,1"));
        assert!(partition_to_w(&l, 7).is_err());
        assert!(!is_k_grassmannian(&sp("2,1"), 0));
        assert!(grassmannian_to_partition(&sp("2,1"), 0).is_err());
    }

    #[test]
    fn bijection_roundtrip_and_pair_data() {
        for k in 0..4 {
            for n in k.max(1)..7 {
                if n < k + 1 {
                    continue;
                }
                let mut seen = HashSet::new();
                for l in k_strict_in_rank(k, n) {
                    let w = partition_to_w(&l, n).unwrap();
                    assert!(is_k_grassmannian(&w, k), "{l} {w}");
                    assert_eq!(w.length(), l.weight());
                    assert_eq!(grassmannian_to_partition(&w, k).unwrap(), l);
                    assert!(seen.insert(w.clone()));
                    let m = n - k;
                    assert_eq!(pair_set_from_w(&w, k), pair_set_c(&l, m));
                    let b = beta_from_w(&w, k);
                    assert_eq!(b.0[..l.len()], beta_seq(&l, m).0[..l.len()]);
                }
            }
        }
    }

    #[test]
    fn grassmannian_count_matches_partition_count() {
        // W^(k) ∩ W_n is in bijection with P(k, n)
        for n in 1..5 {
            let all = bfs_lengths(n);
            for k in 0..n {
                let count = all.keys().filter(|w| is_k_grassmannian(w, k)).count();
                assert_eq!(count, k_strict_in_rank(k, n).len(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn reduced_words() {
        let w = sp("4,8,-5,-2,-1,3,6,7");
        let word = w.reduced_word();
        assert_eq!(word.len(), 18);
        assert_eq!(SignedPermutation::from_word(&word, 8), w);
    }

    #[test]
    fn localization_examples() {
        assert!(localization_sigma1(&KStrictPartition::empty(2)).is_zero());
        assert_eq!(
            localization_sigma1(&lam(2, &[7, 4, 3, 2, 1, 1])),
            parse("t[1] + t[2] + t[4] + 2*t[5] + t[8]").unwrap()
        );
        assert_eq!(localization_sigma1(&lam(0, &[1])), parse("2*t[1]").unwrap());
    }

    #[test]
    fn factorization_examples() {
        let e = reduced_factorizations(&KStrictPartition::empty(0));
        assert_eq!(e.len(), 1);
        assert!(e[0].mu.is_empty());
        let f = reduced_factorizations(&lam(1, &[1]));
        let mut mus: Vec<_> = f.iter().map(|x| (x.mu.parts().to_vec(), x.u.to_string())).collect();
        mus.sort();
        assert_eq!(mus, vec![(vec![], "2,1".to_string()), (vec![1], "".to_string())]);
        for k in 0..3 {
            for l in crate::partition::k_strict_up_to(k, 6) {
                for f in reduced_factorizations(&l) {
                    assert_eq!(f.mu.k_length(), l.k_length());
                    assert!(l.contains(&f.mu));
                }
            }
        }
    }

    #[test]
    fn schubert_examples() {
        assert!(schubert_poly_a(&SignedPermutation::identity(3)).unwrap().is_one());
        assert_eq!(schubert_poly_a(&sp("2,1")).unwrap(), parse("t[1]").unwrap());
        assert_eq!(schubert_poly_a(&sp("1,3,2")).unwrap(), parse("t[1] + t[2]").unwrap());
        // s_2 s_1 = (3,1,2) in one-line notation
        let s2s1 = SignedPermutation::simple(2, 3).compose(&SignedPermutation::simple(1, 3));
        assert_eq!(s2s1, sp("3,1,2"));
        assert_eq!(schubert_poly_a(&s2s1).unwrap(), parse("t[1]^2").unwrap());
        assert_eq!(schubert_poly_a(&sp("2,3,1")).unwrap(), parse("t[1]*t[2]").unwrap());
        assert_eq!(
            schubert_poly_a(&sp("1,4,3,2")).unwrap(),
            parse("t[1]^2*t[2] + t[1]^2*t[3] + t[1]*t[2]^2 + t[1]*t[2]*t[3] + t[2]^2*t[3]").unwrap()
        );
        assert!(schubert_poly_a(&sp("-1,2")).is_err());
    }

    #[test]
    fn schubert_descent_relation() {
        // all of S_5: ∂_i 𝔖_u = 𝔖_{u s_i} whenever ℓ(u s_i) < ℓ(u)
        let all = bfs_lengths(5);
        for u in all.keys().filter(|w| w.is_unsigned()) {
            let su = schubert_poly_a(u).unwrap();
            for i in 1..5 {
                if u.has_right_descent(i) {
                    let lower = schubert_poly_a(&u.right_mul_simple(i)).unwrap();
                    assert_eq!(lascoux_divided_difference(&su, i as u32), lower);
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega_poly(&lam(0, &[3, 1])),
            parse("(c[3]*c[1] - 2*c[4]) - (c[2]*c[1] - 2*c[3])*(t[1]+t[2])").unwrap()
        );
        assert!(omega_poly(&KStrictPartition::empty(1)).is_one());
        assert_eq!(omega_poly(&lam(1, &[1])), parse("c[1] - t[1]").unwrap());
    }
}
