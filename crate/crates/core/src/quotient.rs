//! Normal forms in `C^(k)[t] = Z[c,t] / I^(k)` and expansions in the
//! `Θ_λ(c|t)` basis.
//!
//! `I^(k)` is generated by `c_p² + 2 Σ_{i=1}^{p} (-1)^i c_{p+i} c_{p-i}` for
//! `p > k`. Rewriting a repeated part `p > k` with this relation moves a
//! monomial strictly up in dominance order at fixed degree, so every
//! monomial reduces to a `Z`-combination of `c_λ` with `λ` k-strict.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde_json::json;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::format::{from_json_value, to_json_value};
use crate::partition::{dominates, KStrictPartition};
use crate::ring::{Monomial, Polynomial};
use crate::theta::theta_double;

/// Finite `Z[t]`-combination indexed by k-strict partitions. Used for both
/// the monomial basis `c_λ` and the theta basis `Θ_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expansion {
    k: usize,
    coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

/// Coordinates in the basis `{c_λ}`.
pub type CNormalForm = Expansion;
/// Coordinates in the basis `{Θ_λ(c|t)}`.
pub type ThetaExpansion = Expansion;

impl Expansion {
    pub fn new(k: usize) -> Self {
        Expansion {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `f · e_λ`; `f` must be free of `c`.
    pub fn add(&mut self, parts: &[usize], f: &Polynomial) {
        debug_assert!(f.is_t_only());
        if f.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(parts.to_vec()).or_default();
        *entry += f;
        if entry.is_zero() {
            self.coeffs.remove(parts);
        }
    }

    pub fn get(&self, parts: &[usize]) -> Polynomial {
        self.coeffs.get(parts).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.coeffs.iter()
    }

    /// Terms ordered by weight, then parts.
    pub fn sorted(&self) -> Vec<(KStrictPartition, Polynomial)> {
        let mut v: Vec<_> = self
            .coeffs
            .iter()
            .map(|(p, f)| (KStrictPartition::new(self.k, p).expect("k-strict key"), f.clone()))
            .collect();
        v.sort_by(|a, b| {
            (a.0.weight(), a.0.parts()).cmp(&(b.0.weight(), b.0.parts()))
        });
        v
    }

    pub fn scaled(&self, f: &Polynomial) -> Expansion {
        let mut out = Expansion::new(self.k);
        for (p, g) in &self.coeffs {
            out.add(p, &(g * f));
        }
        out
    }

    pub fn sub(&self, other: &Expansion) -> Expansion {
        let mut out = self.clone();
        for (p, g) in &other.coeffs {
            out.add(p, &-g);
        }
        out
    }

    /// Keys whose partition lies in `P(k, n)`.
    pub fn truncated(&self, n: usize) -> Expansion {
        let mut out = Expansion::new(self.k);
        for (p, g) in &self.coeffs {
            if KStrictPartition::new(self.k, p)
                .map(|l| l.fits_rank(n))
                .unwrap_or(false)
            {
                out.add(p, g);
            }
        }
        out
    }

    /// `{"basis": …, "k": K, "coeffs": [{"partition": […], "poly": …}]}`.
    pub fn to_json_value(&self, basis: &str) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .sorted()
            .into_iter()
            .map(|(l, f)| json!({"partition": l.parts(), "poly": to_json_value(&f)}))
            .collect();
        json!({"basis": basis, "k": self.k, "coeffs": coeffs})
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Expansion> {
        let bad = |m: &str| Error::Parse {
            pos: 0,
            msg: m.to_string(),
        };
        let k = v["k"].as_u64().ok_or_else(|| bad("missing k"))? as usize;
        let mut out = Expansion::new(k);
        for item in v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))? {
            let parts: Vec<usize> = serde_json::from_value(item["partition"].clone())
                .map_err(|e| bad(&e.to_string()))?;
            let lam = KStrictPartition::new(k, &parts)?;
            out.add(lam.parts(), &from_json_value(&item["poly"])?);
        }
        Ok(out)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let lines: Vec<String> = self
            .sorted()
            .into_iter()
            .map(|(l, g)| format!("{l}: {g}"))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

type Reduced = Arc<BTreeMap<Vec<usize>, Coefficient>>;

static MONOMIAL_CACHE: Lazy<Mutex<HashMap<(usize, Vec<usize>), Reduced>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn sorted_desc(parts: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Image of `Π c_{α_i}` in the k-strict monomial basis, with integer
/// coefficients.
pub fn reduce_monomial(alpha: &[usize], k: usize) -> BTreeMap<Vec<usize>, Coefficient> {
    (*reduce_sorted(&sorted_desc(alpha), k)).clone()
}

fn reduce_sorted(parts: &[usize], k: usize) -> Reduced {
    let key = (k, parts.to_vec());
    if let Some(r) = MONOMIAL_CACHE.lock().unwrap().get(&key) {
        return r.clone();
    }
    let repeated = parts
        .windows(2)
        .find(|w| w[0] == w[1] && w[0] > k)
        .map(|w| w[0]);
    let result = match repeated {
        None => {
            let mut m = BTreeMap::new();
            m.insert(parts.to_vec(), Coefficient::one());
            m
        }
        Some(p) => {
            let pos = parts.iter().position(|&x| x == p).expect("present");
            let mut rest = parts.to_vec();
            rest.drain(pos..pos + 2);
            let mut acc: BTreeMap<Vec<usize>, Coefficient> = BTreeMap::new();
            // c_p² = -2 Σ_{i=1}^{p} (-1)^i c_{p+i} c_{p-i}
            for i in 1..=p {
                let w: i64 = if i % 2 == 0 { -2 } else { 2 };
                let mut next = rest.clone();
                next.push(p + i);
                next.push(p - i);
                let next = sorted_desc(&next);
                assert!(
                    dominates(&next, parts) && next != parts,
                    "rewrite must climb in dominance order"
                );
                for (lam, c) in reduce_sorted(&next, k).iter() {
                    let e = acc.entry(lam.clone()).or_default();
                    *e += &(c * &Coefficient::from(w));
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        }
    };
    let result = Arc::new(result);
    MONOMIAL_CACHE.lock().unwrap().insert(key, result.clone());
    result
}

/// Coordinates of `f` in the basis `{c_λ}` of `C^(k)[t]`.
pub fn normal_form(f: &Polynomial, k: usize) -> CNormalForm {
    let mut out = Expansion::new(k);
    for (cm, tpoly) in f.split_c() {
        let parts = cm.c_partition();
        for (lam, c) in reduce_sorted(&parts, k).iter() {
            out.add(lam, &tpoly.scale(c));
        }
    }
    out
}

/// `Σ f_λ c_λ` as an element of `Z[c, t]`.
pub fn lift(e: &CNormalForm) -> Polynomial {
    let mut out = Polynomial::zero();
    for (p, f) in &e.coeffs {
        out += &f.mul_monomial(&Monomial::from_c_parts(p), &Coefficient::one());
    }
    out
}

/// `Σ f_λ Θ_λ(c|t)` as an element of `Z[c, t]`.
pub fn lift_theta(e: &ThetaExpansion) -> Polynomial {
    let mut out = Polynomial::zero();
    for (p, f) in &e.coeffs {
        let lam = KStrictPartition::new(e.k, p).expect("k-strict key");
        out += &(f * &theta_double(&lam));
    }
    out
}

static THETA_NF_CACHE: Lazy<Mutex<HashMap<(usize, Vec<usize>), Arc<CNormalForm>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Normal form of `Θ_λ(c|t)`, cached.
pub fn theta_normal_form(lam: &KStrictPartition) -> Arc<CNormalForm> {
    let key = (lam.k(), lam.parts().to_vec());
    if let Some(e) = THETA_NF_CACHE.lock().unwrap().get(&key) {
        return e.clone();
    }
    let e = Arc::new(normal_form(&theta_double(lam), lam.k()));
    THETA_NF_CACHE.lock().unwrap().insert(key, e.clone());
    e
}

/// Pivot: maximal weight, then a dominance-minimal key of that weight.
fn pivot(e: &CNormalForm) -> Option<Vec<usize>> {
    let top = e.coeffs.keys().map(|p| p.iter().sum::<usize>()).max()?;
    let candidates: Vec<&Vec<usize>> = e
        .coeffs
        .keys()
        .filter(|p| p.iter().sum::<usize>() == top)
        .collect();
    candidates
        .iter()
        .find(|p| {
            candidates
                .iter()
                .all(|q| q == *p || !dominates(p, q))
        })
        .map(|p| (*p).clone())
}

/// The unique expansion `f ≡ Σ b_λ(t) Θ_λ(c|t)` in `C^(k)[t]`.
pub fn theta_expansion(f: &Polynomial, k: usize) -> ThetaExpansion {
    theta_expansion_of_normal_form(normal_form(f, k))
}

pub fn theta_expansion_of_normal_form(mut rem: CNormalForm) -> ThetaExpansion {
    let k = rem.k;
    let mut out = Expansion::new(k);
    while let Some(lam) = pivot(&rem) {
        let b = rem.get(&lam);
        let l = KStrictPartition::new(k, &lam).expect("k-strict key");
        let th = theta_normal_form(&l);
        debug_assert!(th.get(&lam).is_one());
        rem = rem.sub(&th.scaled(&b));
        assert!(rem.get(&lam).is_zero(), "pivot coefficient must cancel");
        out.add(&lam, &b);
    }
    out
}

pub fn equal_in_quotient(f: &Polynomial, g: &Polynomial, k: usize) -> bool {
    normal_form(&(f - g), k).is_zero()
}

/// Drops every key outside `P(k, n)`.
pub fn finite_truncate(e: &ThetaExpansion, n: usize) -> ThetaExpansion {
    e.truncated(n)
}

/// `Θ_λ · Θ_μ` in the theta basis, optionally projected to `P(k, n)`.
pub fn structure_constants(
    lam: &KStrictPartition,
    mu: &KStrictPartition,
    n: Option<usize>,
) -> Result<ThetaExpansion> {
    if lam.k() != mu.k() {
        return Err(Error::Precondition("partitions must share k".into()));
    }
    let prod = &theta_double(lam) * &theta_double(mu);
    let e = theta_expansion(&prod, lam.k());
    Ok(match n {
        Some(n) => finite_truncate(&e, n),
        None => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;
    use crate::partition::k_strict_up_to;
    use crate::ring::t_sum;
    use crate::weyl::omega_poly;

    fn lam(k: usize, parts: &[usize]) -> KStrictPartition {
        KStrictPartition::new(k, parts).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    #[test]
    fn monomial_examples() {
        let r = reduce_monomial(&[1, 1], 0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[&vec![2]], Coefficient::from(2));
        let r = reduce_monomial(&[2, 2], 1);
        assert_eq!(r.len(), 2);
        assert_eq!(r[&vec![3, 1]], Coefficient::from(2));
        assert_eq!(r[&vec![4]], Coefficient::from(-2));
        let r = reduce_monomial(&[3, 1, 1], 1);
        assert_eq!(r.len(), 1);
        assert!(r[&vec![3, 1, 1]].is_one());
    }

    #[test]
    fn normal_form_examples() {
        let q = &theta_double(&lam(0, &[3, 1])) - &omega_poly(&lam(0, &[3, 1]));
        assert!(normal_form(&q, 0).is_zero());
        assert!(normal_form(&p("(c[1]^2 - 2*c[2])*t[1]*t[2]"), 0).is_zero());
        for k in 0..3 {
            let nf = normal_form(&p("c[3]"), k);
            assert_eq!(nf.len(), 1);
            assert!(nf.get(&[3]).is_one());
        }
    }

    #[test]
    fn equality_examples() {
        assert!(equal_in_quotient(&p("c[1]^2"), &p("2*c[2]"), 0));
        assert!(!equal_in_quotient(&p("c[1]^2"), &p("2*c[2]"), 1));
        let f = p("c[2]*t[1] - c[1]^3");
        assert!(equal_in_quotient(&f, &f, 2));
    }

    #[test]
    fn theta_expansion_examples() {
        let l = lam(1, &[3, 1, 1]);
        let e = theta_expansion(&theta_double(&l), 1);
        assert_eq!(e.len(), 1);
        assert!(e.get(&[3, 1, 1]).is_one());
        for k in 0..4 {
            let e = theta_expansion(&Polynomial::c(1), k);
            assert!(e.get(&[1]).is_one());
            assert_eq!(e.get(&[]), t_sum(k as i64));
            assert_eq!(e.len(), if k == 0 { 1 } else { 2 });
        }
        assert!(theta_expansion(&Polynomial::zero(), 1).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_multiplicative() {
        let f = p("c[2]^2*t[1] + c[1]^3 - c[3]*c[1]*t[2]");
        let g = p("c[2]*c[1] - t[1]*c[1]^2");
        for k in 0..3 {
            let nf = normal_form(&f, k);
            assert_eq!(normal_form(&lift(&nf), k), nf);
            let lhs = normal_form(&(&f * &g), k);
            let rhs = normal_form(&(&lift(&nf) * &lift(&normal_form(&g, k))), k);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn expansion_roundtrip() {
        for k in 0..3 {
            for l in k_strict_up_to(k, 5) {
                let f = &theta_double(&l) * &p("t[1] - 2*t[3]");
                let e = theta_expansion(&f, k);
                assert_eq!(e.len(), 1);
                assert_eq!(lift_theta(&e), f);
            }
        }
    }

    #[test]
    fn truncation_examples() {
        let mut e = Expansion::new(1);
        e.add(&[5], &Polynomial::one()); // p = n + k + 1 with n = 3
        e.add(&[1, 1, 1], &Polynomial::one()); // 1^p with n-k+1 ≤ p ≤ n+k
        e.add(&[2, 1], &Polynomial::t(1));
        let t = finite_truncate(&e, 3);
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&[2, 1]), Polynomial::t(1));
        assert_eq!(finite_truncate(&t, 3), t);
    }

    #[test]
    fn json_roundtrip() {
        let e = theta_expansion(&p("c[1]*c[2] + t[1]*c[1]"), 1);
        let v = e.to_json_value("theta");
        assert_eq!(Expansion::from_json_value(&v).unwrap(), e);
    }

    #[test]
    fn structure_constant_examples() {
        let l = lam(1, &[2, 1]);
        let e = structure_constants(&l, &KStrictPartition::empty(1), None).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.get(&[2, 1]).is_one());
        let one = lam(0, &[1]);
        let e = structure_constants(&one, &one, None).unwrap();
        assert_eq!(e.get(&[2]), Polynomial::constant(2));
        assert_eq!(e.get(&[1]), p("2*t[1]"));
        assert_eq!(e.len(), 2);
    }
}
