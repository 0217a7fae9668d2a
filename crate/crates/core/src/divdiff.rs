//! The action of `W_∞` on `Z[c, t]` and the left divided differences `∂_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::partition::KStrictPartition;
use crate::ring::{Monomial, Polynomial};
use crate::theta::theta_double;
use crate::weyl::{grassmannian_to_partition, is_k_grassmannian, partition_to_w, SignedPermutation};

/// `s_0(c_p) = c_p + 2 Σ_{j=1}^{p} (-t_1)^j c_{p-j}`.
fn s0_image_c(p: u32) -> Polynomial {
    let mut out = Polynomial::c(p as i64);
    for j in 1..=p {
        let sign = if j % 2 == 0 { 2 } else { -2 };
        let t = Monomial::from_sparse(&[(p - j, 1)], &[(1, j)]);
        out.add_term(t, &sign.into());
    }
    out
}

/// The simple reflection `s_i` applied to `f`.
pub fn weyl_act(i: usize, f: &Polynomial) -> Polynomial {
    if i == 0 {
        return s0_act(f);
    }
    let i = i as u32;
    Polynomial::from_terms(f.terms().map(|(m, c)| {
        let mut t = m.t_exponents().to_vec();
        t.resize(t.len().max(i as usize + 1), 0);
        t.swap(i as usize - 1, i as usize);
        (Monomial::from_dense(m.c_exponents().to_vec(), t), c.clone())
    }))
}

fn s0_act(f: &Polynomial) -> Polynomial {
    let mut powers: HashMap<(u32, u32), Polynomial> = HashMap::new();
    let mut out = Polynomial::zero();
    for (cm, tf) in f.split_c() {
        let mut img = Polynomial::one();
        for (p, e) in cm.c_sparse() {
            let pw = powers
                .entry((p, e))
                .or_insert_with(|| s0_image_c(p).pow(e));
            img = &img * pw;
        }
        let flipped = Polynomial::from_terms(tf.terms().map(|(m, c)| {
            if m.t_exp(1) % 2 == 1 {
                (m.clone(), -c)
            } else {
                (m.clone(), c.clone())
            }
        }));
        out += &(&img * &flipped);
    }
    out
}

/// Exact quotient `g / (t_{i+1} - t_i)` by synthetic division in `t_{i+1}`.
///
/// Panics if the remainder is nonzero.
fn div_by_difference(g: &Polynomial, i: u32) -> Polynomial {
    let mut by_deg: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in g.terms() {
        let e = m.t_exp(i + 1);
        let mut t = m.t_exponents().to_vec();
        if e > 0 {
            t[i as usize] = 0;
        }
        by_deg
            .entry(e)
            .or_default()
            .add_term(Monomial::from_dense(m.c_exponents().to_vec(), t), c);
    }
    let Some(&top) = by_deg.keys().next_back() else {
        return Polynomial::zero();
    };
    let x = Monomial::t_var(i);
    let one = 1.into();
    // q_{e-1} = g_e + x q_e, remainder g_0 + x q_0
    let mut q = Polynomial::zero();
    let mut carry = Polynomial::zero();
    for e in (0..=top).rev() {
        let cur = match by_deg.get(&e) {
            Some(ge) => ge + &carry.mul_monomial(&x, &one),
            None => carry.mul_monomial(&x, &one),
        };
        if e == 0 {
            assert!(cur.is_zero(), "division by t_{} - t_{i} left a remainder", i + 1);
            break;
        }
        q += &cur.mul_monomial(&Monomial::from_sparse(&[], &[(i + 1, e - 1)]), &one);
        carry = cur;
    }
    q
}

/// Exact quotient `g / 2t_1`. Panics if some term is not divisible.
fn div_by_2t1(g: &Polynomial) -> Polynomial {
    Polynomial::from_terms(g.terms().map(|(m, c)| {
        let e = m.t_exp(1);
        assert!(e > 0, "division by 2t_1 left a remainder");
        let mut t = m.t_exponents().to_vec();
        t[0] -= 1;
        let half = c.checked_div_exact(2).expect("odd coefficient in division by 2t_1");
        (Monomial::from_dense(m.c_exponents().to_vec(), t), half)
    }))
}

/// `∂_0 f = (f - s_0 f)/2t_1`, `∂_i f = (f - s_i f)/(t_{i+1} - t_i)`.
pub fn divided_diff(i: usize, f: &Polynomial) -> Polynomial {
    let g = f - &weyl_act(i, f);
    if i == 0 {
        div_by_2t1(&g)
    } else {
        div_by_difference(&g, i as u32)
    }
}

/// Applies `∂_{a_1} ∘ ⋯ ∘ ∂_{a_r}` to `f`, so `∂_{a_r}` acts first.
pub fn apply_word(word: &[usize], f: &Polynomial) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &i| divided_diff(i, &acc))
}

/// Position pattern of `±i, ±(i+1)` in `w_λ` at a left descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DescentCase {
    /// `w = (⋯ 1̄ ⋯)`, `i = 0`.
    A,
    /// `w = (⋯ i+1 ⋯ i ⋯)`.
    B,
    /// `w = (⋯ i ⋯ i+1̄ ⋯)`.
    C,
    /// `w = (⋯ i+1̄ ⋯ i ⋯)`.
    D,
}

impl fmt::Display for DescentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DescentCase::A => "a",
            DescentCase::B => "b",
            DescentCase::C => "c",
            DescentCase::D => "d",
        };
        f.write_str(s)
    }
}

/// A covering pair `w_λ = s_i w_μ` with `|μ| = |λ| - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub lambda: KStrictPartition,
    pub mu: KStrictPartition,
    pub i: usize,
    pub case: DescentCase,
}

fn classify(w: &SignedPermutation, i: usize) -> DescentCase {
    if i == 0 {
        return DescentCase::A;
    }
    let pos = |v: i64| w.window().iter().position(|&x| x == v);
    let (a, b) = (i as i64, i as i64 + 1);
    match (pos(a), pos(b), pos(-b)) {
        (Some(pa), Some(pb), _) if pb < pa => DescentCase::B,
        (Some(pa), _, Some(pnb)) if pa < pnb => DescentCase::C,
        _ => DescentCase::D,
    }
}

/// The partition `μ` with `w_λ = s_i w_μ`, if `i` is a left descent of `w_λ`
/// leading to a `k`-Grassmannian element.
pub fn left_descent(lam: &KStrictPartition, i: usize) -> Result<Descent> {
    let k = lam.k();
    let n = lam.min_rank().max(i + 1);
    let w = partition_to_w(lam, n)?;
    let fail = || Error::NotLeftDescent(format!("s_{i} at {lam}"));
    if !w.has_left_descent(i) {
        return Err(fail());
    }
    let v = w.left_mul_simple(i);
    if !is_k_grassmannian(&v, k) {
        return Err(fail());
    }
    let mu = grassmannian_to_partition(&v, k)?;
    if mu.weight() + 1 != lam.weight() {
        return Err(fail());
    }
    Ok(Descent {
        lambda: lam.clone(),
        mu,
        i,
        case: classify(&w, i),
    })
}

/// All left descents of `w_λ` that stay `k`-Grassmannian.
pub fn left_descents(lam: &KStrictPartition) -> Vec<Descent> {
    (0..=lam.min_rank())
        .filter_map(|i| left_descent(lam, i).ok())
        .collect()
}

/// Checks `∂_i Θ_λ(c|t) = Θ_μ(c|t)` in `Z[c, t]` for `w_λ = s_i w_μ`.
pub fn verify_descent(lam: &KStrictPartition, i: usize) -> Result<bool> {
    let d = left_descent(lam, i)?;
    Ok(divided_diff(i, &theta_double(lam)) == theta_double(&d.mu))
}

/// `λ_0 = (n+k, n+k-1, …, 2k+1)`, the partition of the longest
/// `k`-Grassmannian element of `W_n`.
pub fn top_partition(k: usize, n: usize) -> Result<KStrictPartition> {
    if n < k {
        return Err(Error::RankTooSmall(format!("n={n} < k={k}")));
    }
    let parts: Vec<usize> = (2 * k + 1..=n + k).rev().collect();
    KStrictPartition::new(k, &parts)
}

/// Lexicographically smallest reduced word of `v`: repeatedly strip the
/// smallest left descent.
pub fn lex_reduced_word(v: &SignedPermutation) -> Vec<usize> {
    let mut v = v.clone();
    let mut word = Vec::new();
    while let Some(i) = (0..v.rank()).find(|&i| v.has_left_descent(i)) {
        word.push(i);
        v = v.left_mul_simple(i);
    }
    word
}

/// A reduced word of `v` chosen by stripping a uniformly random left
/// descent at each step.
pub fn random_reduced_word<R: Rng>(v: &SignedPermutation, rng: &mut R) -> Vec<usize> {
    let mut v = v.clone();
    let mut word = Vec::new();
    loop {
        let ds: Vec<usize> = (0..v.rank()).filter(|&i| v.has_left_descent(i)).collect();
        if ds.is_empty() {
            break;
        }
        let i = ds[rng.gen_range(0..ds.len())];
        word.push(i);
        v = v.left_mul_simple(i);
    }
    word
}

/// `w_λ w_{λ_0}` in `W_n`.
pub fn top_quotient(lam: &KStrictPartition, n: usize) -> Result<SignedPermutation> {
    if !lam.fits_rank(n) {
        return Err(Error::RankTooSmall(format!("{lam} is not in P({}, {n})", lam.k())));
    }
    let top = top_partition(lam.k(), n)?;
    let w = partition_to_w(lam, n)?;
    let w0 = partition_to_w(&top, n)?;
    Ok(w.compose(&w0))
}

/// `Θ_λ = ∂_{a_1} ∘ ⋯ ∘ ∂_{a_r} Θ_{λ_0}` for the given reduced word of
/// `w_λ w_{λ_0}`.
pub fn theta_from_top_word(lam: &KStrictPartition, n: usize, word: &[usize]) -> Result<Polynomial> {
    let top = top_partition(lam.k(), n)?;
    if word.len() + lam.weight() != top.weight() {
        return Err(Error::Precondition(format!(
            "word of length {} does not connect {lam} to {top}",
            word.len()
        )));
    }
    Ok(apply_word(word, &theta_double(&top)))
}

/// Derives `Θ_λ` from `Θ_{λ_0}` along the lexicographically smallest
/// reduced word of `w_λ w_{λ_0}`.
pub fn theta_from_top(lam: &KStrictPartition, n: usize) -> Result<Polynomial> {
    let v = top_quotient(lam, n)?;
    theta_from_top_word(lam, n, &lex_reduced_word(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;
    use crate::partition::{k_strict_in_rank, k_strict_up_to};
    use crate::ring::c_power;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    fn lam(k: usize, parts: &[usize]) -> KStrictPartition {
        KStrictPartition::new(k, parts).unwrap()
    }

    #[test]
    fn action_examples() {
        assert_eq!(weyl_act(0, &p("c[1]")), p("c[1] - 2*t[1]"));
        assert_eq!(weyl_act(1, &p("t[1]*t[2]")), p("t[1]*t[2]"));
        for q in 1..6 {
            assert_eq!(weyl_act(2, &Polynomial::c(q)), Polynomial::c(q));
        }
        assert_eq!(weyl_act(1, &p("t[1]^2*t[3]")), p("t[2]^2*t[3]"));
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_diff(0, &p("c[1]")), Polynomial::one());
        assert_eq!(divided_diff(1, &p("t[1]")), Polynomial::constant(-1));
        assert_eq!(divided_diff(1, &p("t[1]*t[2]")), Polynomial::zero());
        assert_eq!(divided_diff(0, &theta_double(&lam(0, &[1]))), Polynomial::one());
        assert!(divided_diff(0, &p("c[1] - t[1]")).is_zero());
        for i in 0..4i64 {
            for r in -4..=4i64 {
                for q in 0..6i64 {
                    let expect = if r == i || r == -i {
                        c_power(q - 1, r + 1)
                    } else {
                        Polynomial::zero()
                    };
                    assert_eq!(divided_diff(i as usize, &c_power(q, r)), expect, "i={i} r={r} p={q}");
                }
            }
        }
    }

    #[test]
    fn descent_base_case() {
        let d = left_descent(&lam(0, &[1]), 0).unwrap();
        assert_eq!(d.mu, KStrictPartition::empty(0));
        assert_eq!(d.case, DescentCase::A);
        assert!(verify_descent(&lam(0, &[1]), 0).unwrap());
        assert!(matches!(
            verify_descent(&lam(0, &[1]), 1),
            Err(Error::NotLeftDescent(_))
        ));
        assert!(matches!(
            verify_descent(&KStrictPartition::empty(1), 0),
            Err(Error::NotLeftDescent(_))
        ));
    }

    #[test]
    fn descents_cover_all_cases() {
        let mut seen = std::collections::BTreeSet::new();
        for k in 0..=2 {
            for l in k_strict_up_to(k, 6) {
                for d in left_descents(&l) {
                    assert!(verify_descent(&l, d.i).unwrap(), "{l} s_{}", d.i);
                    seen.insert(d.case);
                }
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn from_top_small_ranks() {
        let top = top_partition(0, 2).unwrap();
        assert_eq!(top.parts(), &[2, 1]);
        assert_eq!(theta_from_top(&top, 2).unwrap(), theta_double(&top));
        for (k, n) in [(0, 2), (0, 3), (1, 3)] {
            for l in k_strict_in_rank(k, n) {
                assert_eq!(theta_from_top(&l, n).unwrap(), theta_double(&l), "{l} n={n}");
            }
        }
        assert_eq!(theta_from_top(&lam(0, &[1]), 2).unwrap(), p("c[1]"));
        assert_eq!(theta_from_top(&lam(1, &[1]), 2).unwrap(), p("c[1] - t[1]"));
        assert!(theta_from_top(&lam(0, &[3]), 2).is_err());
    }

    #[test]
    fn alternative_words_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for l in k_strict_in_rank(1, 3) {
            let v = top_quotient(&l, 3).unwrap();
            let base = theta_from_top(&l, 3).unwrap();
            for _ in 0..3 {
                let word = random_reduced_word(&v, &mut rng);
                assert_eq!(SignedPermutation::from_word(&word, 3), v.extended(3));
                assert_eq!(theta_from_top_word(&l, 3, &word).unwrap(), base);
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (0u32..4, 0u32..4, 1u32..4, 0u32..3, -5i64..6);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let mut f = Polynomial::zero();
            for (cp, ce, ti, te, a) in ts {
                f.add_term(Monomial::from_sparse(&[(cp, ce)], &[(ti, te)]), &a.into());
            }
            f
        })
    }

    proptest! {
        #[test]
        fn involution(f in arb_poly(), i in 0usize..4) {
            prop_assert_eq!(weyl_act(i, &weyl_act(i, &f)), f);
        }

        #[test]
        fn square_vanishes(f in arb_poly(), i in 0usize..4) {
            prop_assert!(divided_diff(i, &divided_diff(i, &f)).is_zero());
        }

        #[test]
        fn leibnitz(f in arb_poly(), g in arb_poly(), i in 0usize..4) {
            let lhs = divided_diff(i, &(&f * &g));
            let rhs = &(&divided_diff(i, &f) * &g) + &(&weyl_act(i, &f) * &divided_diff(i, &g));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
