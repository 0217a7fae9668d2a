//! The equivariant Chevalley rule for `Θ_1 · Θ_λ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::partition::KStrictPartition;
use crate::quotient::{theta_expansion, ThetaExpansion};
use crate::raising::{apply, IntSeq};
use crate::ring::{t_sum, Polynomial};
use crate::theta::{beta_seq, pair_set_c, theta_double};

/// Classification of a Chevalley term by how `C(μ)` differs from `C(λ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoverKind {
    I,
    IIa,
    IIb,
    IIc,
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverKind::I => "I",
            CoverKind::IIa => "IIa",
            CoverKind::IIb => "IIb",
            CoverKind::IIc => "IIc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyTerm {
    pub mu: KStrictPartition,
    pub multiplicity: u8,
    pub kind: CoverKind,
}

/// `|c - k - 1| + r`; two boxes are k-related when these agree.
fn diagonal(row: usize, col: usize, k: usize) -> i64 {
    (col as i64 - k as i64 - 1).abs() + row as i64
}

/// `[r, c]` and `[r', c']` are k-related.
pub fn k_related(b1: (usize, usize), b2: (usize, usize), k: usize) -> bool {
    diagonal(b1.0, b1.1, k) == diagonal(b2.0, b2.1, k)
}

fn is_partition(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn make(k: usize, v: &[usize]) -> Option<KStrictPartition> {
    if !is_partition(v) {
        return None;
    }
    KStrictPartition::new(k, v).ok()
}

/// Multiplicity `e_{λμ}` for a cover obtained by adding the box `(row, col)`.
///
/// The box must lie strictly right of column `k + 1`; a box in one of the
/// first `k` columns, or in column `k + 1`, has multiplicity one.
fn single_box_multiplicity(lam: &KStrictPartition, row: usize, col: usize) -> u8 {
    let k = lam.k();
    if col <= k + 1 {
        return 1;
    }
    let related_to_bottom = (1..=k).any(|c| {
        let h = lam.column_height(c);
        h > 0 && k_related((row, col), (h, c), k)
    });
    if related_to_bottom {
        1
    } else {
        2
    }
}

fn window_for(p: &KStrictPartition) -> usize {
    p.part(1) + p.len() + 1
}

fn classify(lam: &KStrictPartition, mu: &KStrictPartition, e: u8) -> CoverKind {
    let w = window_for(mu).max(window_for(lam));
    let cl = pair_set_c(lam, w);
    let cm = pair_set_c(mu, w);
    if cl == cm {
        CoverKind::I
    } else if e == 2 {
        CoverKind::IIa
    } else if mu.weight() == lam.weight() + 1 && mu.contains(lam) {
        CoverKind::IIb
    } else {
        CoverKind::IIc
    }
}

/// All `μ` with `λ → μ`, with `e_{λμ}` and type.
pub fn chevalley_covers(lam: &KStrictPartition) -> Vec<ChevalleyTerm> {
    let k = lam.k();
    let parts = lam.parts().to_vec();
    let l = parts.len();
    let mut found: BTreeMap<Vec<usize>, u8> = BTreeMap::new();

    // (i) add one box
    for h in 1..=l + 1 {
        let mut v = parts.clone();
        if h > l {
            v.push(0);
        }
        v[h - 1] += 1;
        let col = v[h - 1];
        if let Some(mu) = make(k, &v) {
            let e = single_box_multiplicity(lam, h, col);
            found.insert(mu.parts().to_vec(), e);
        }
    }

    // (ii) move r boxes from the bottom of a column c0 ≤ k into one row
    for c0 in 1..=k {
        let height = lam.column_height(c0);
        for r in 1..=height {
            let removed: Vec<usize> = (height - r + 1..=height).collect();
            if removed.iter().any(|&i| lam.part(i) != c0) {
                break;
            }
            let mut base = parts.clone();
            for &i in &removed {
                base[i - 1] -= 1;
            }
            for h in 1..=l + 1 {
                let mut v = base.clone();
                if h > l {
                    v.push(0);
                }
                let start = v[h - 1];
                v[h - 1] += r + 1;
                let Some(mu) = make(k, &v) else { continue };
                if mu.parts() == lam.parts() || found.contains_key(mu.parts()) {
                    continue;
                }
                let added: Vec<(usize, usize)> =
                    (start + 1..=start + r + 1).map(|c| (h, c)).collect();
                let related =
                    |b: (usize, usize)| added.iter().any(|&a| k_related(a, b, k));
                if !removed.iter().all(|&i| related((i, c0))) {
                    continue;
                }
                let bottom = mu.column_height(c0);
                if bottom > 0 && !related((bottom, c0)) {
                    continue;
                }
                found.insert(mu.parts().to_vec(), 1);
            }
        }
    }

    let mut out: Vec<ChevalleyTerm> = found
        .into_iter()
        .map(|(p, e)| {
            let mu = KStrictPartition::new(k, &p).expect("k-strict");
            let kind = classify(lam, &mu, e);
            ChevalleyTerm {
                mu,
                multiplicity: e,
                kind,
            }
        })
        .collect();
    out.sort_by(|a, b| a.mu.parts().cmp(b.mu.parts()));
    out
}

/// `Σ_{j=k+1}^{k+ℓ} t_j + Σ_{j≤ℓ_k} t_{λ_j-k} - Σ_{ℓ_k<j≤ℓ} t_{β_j(λ)}`.
///
/// Here `ℓ` counts rows up to the minimal rank `n - k`, zero parts included.
pub fn chevalley_t_coeff(lam: &KStrictPartition) -> Polynomial {
    let k = lam.k();
    let l = lam.len().max(lam.min_rank() - k);
    let lk = lam.k_length();
    let beta = beta_seq(lam, l);
    let mut out = Polynomial::zero();
    for j in k + 1..=k + l {
        out += &Polynomial::t(j as i64);
    }
    for j in 1..=lk {
        out += &Polynomial::t((lam.part(j) - k) as i64);
    }
    for j in lk + 1..=l {
        out -= &Polynomial::t(beta.entry(j));
    }
    out
}

/// Right-hand side of the rule as a theta expansion.
pub fn chevalley_rhs(lam: &KStrictPartition) -> ThetaExpansion {
    let mut e = ThetaExpansion::new(lam.k());
    e.add(lam.parts(), &chevalley_t_coeff(lam));
    for term in chevalley_covers(lam) {
        e.add(term.mu.parts(), &Polynomial::constant(term.multiplicity as i64));
    }
    e
}

#[derive(Clone, Debug)]
pub struct ChevalleyReport {
    pub lambda: KStrictPartition,
    pub pass: bool,
    pub lhs: ThetaExpansion,
    pub rhs: ThetaExpansion,
    pub covers: Vec<ChevalleyTerm>,
}

impl ChevalleyReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let covers: Vec<serde_json::Value> = self
            .covers
            .iter()
            .map(|c| json!({"mu": c.mu.parts(), "e": c.multiplicity, "kind": c.kind.to_string()}))
            .collect();
        json!({
            "lambda": self.lambda.parts(),
            "k": self.lambda.k(),
            "pass": self.pass,
            "lhs": self.lhs.to_json_value("theta"),
            "rhs": self.rhs.to_json_value("theta"),
            "covers": covers,
        })
    }
}

/// Expands `Θ_1 · Θ_λ` algebraically and compares with the rule.
pub fn verify_chevalley(lam: &KStrictPartition) -> ChevalleyReport {
    let k = lam.k();
    let one = KStrictPartition::new(k, &[1]).expect("k-strict");
    let prod = &theta_double(&one) * &theta_double(lam);
    let lhs = theta_expansion(&prod, k);
    let rhs = chevalley_rhs(lam);
    ChevalleyReport {
        lambda: lam.clone(),
        pass: lhs == rhs,
        lhs,
        rhs,
        covers: chevalley_covers(lam),
    }
}

/// `c_1 Θ_λ = (Σ_{j≤k+ℓ} t_j) Θ_λ + Σ_{h=1}^{ℓ+1} R^C c^γ_{λ^h}` in `Z[c,t]`,
/// with `γ = (β_1(λ), …, β_ℓ(λ), k + ℓ)`.
pub fn initial_decomposition_holds(lam: &KStrictPartition) -> bool {
    let k = lam.k();
    let l = lam.len();
    let c = pair_set_c(lam, l);
    let mut gamma = beta_seq(lam, l).0;
    gamma.push((k + l) as i64);
    let gamma = IntSeq(gamma);
    let th = theta_double(lam);
    let lhs = &Polynomial::c(1) * &th;
    let mut rhs = &t_sum((k + l) as i64) * &th;
    let base = IntSeq(lam.as_i64()).padded(l + 1);
    for h in 1..=l + 1 {
        rhs += &apply(&c, &base.plus_unit(h, 1), &gamma);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;
    use crate::partition::k_strict_up_to;
    use crate::weyl::localization_sigma1;

    fn lam(k: usize, parts: &[usize]) -> KStrictPartition {
        KStrictPartition::new(k, parts).unwrap()
    }

    #[test]
    fn relatedness() {
        let k = 3;
        assert!(!k_related((1, k), (2, k + 2), k));
        assert!(k_related((1, k), (1, k + 2), k));
        assert!(k_related((4, 2), (4, 2), k));
    }

    #[test]
    fn empty_partition_covers() {
        for k in 0..4 {
            let c = chevalley_covers(&KStrictPartition::empty(k));
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].mu.parts(), &[1]);
            assert_eq!(c[0].multiplicity, 1);
            assert!(chevalley_t_coeff(&KStrictPartition::empty(k)).is_zero());
        }
    }

    #[test]
    fn worked_example_covers() {
        let l = lam(2, &[7, 4, 3, 2, 1, 1]);
        let got: Vec<(Vec<usize>, u8, CoverKind)> = chevalley_covers(&l)
            .into_iter()
            .map(|t| (t.mu.parts().to_vec(), t.multiplicity, t.kind))
            .collect();
        let mut expected = vec![
            (vec![7, 4, 3, 2, 1, 1, 1], 1, CoverKind::I),
            (vec![7, 4, 3, 2, 2, 1], 1, CoverKind::IIb),
            (vec![7, 5, 3, 2, 1, 1], 2, CoverKind::IIa),
            (vec![7, 6, 3, 1, 1, 1], 1, CoverKind::IIc),
            (vec![8, 4, 3, 2, 1, 1], 2, CoverKind::IIa),
            (vec![10, 4, 3, 2], 1, CoverKind::IIc),
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(
            chevalley_t_coeff(&l),
            parse("t[1] + t[2] + t[4] + 2*t[5] + t[8]").unwrap()
        );
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(chevalley_t_coeff(&lam(0, &[1])), parse("2*t[1]").unwrap());
    }

    #[test]
    fn covers_grow_pair_sets() {
        for k in 0..3 {
            for l in k_strict_up_to(k, 7) {
                let covers = chevalley_covers(&l);
                let mut seen = std::collections::HashSet::new();
                for c in &covers {
                    assert!(seen.insert(c.mu.clone()));
                    assert_eq!(c.mu.weight(), l.weight() + 1);
                    let w = window_for(&c.mu).max(window_for(&l));
                    assert!(pair_set_c(&c.mu, w).is_superset(&pair_set_c(&l, w)));
                    assert_eq!(c.multiplicity == 2, c.kind == CoverKind::IIa);
                }
            }
        }
    }

    #[test]
    fn rule_matches_product_small() {
        for k in 0..3 {
            for l in k_strict_up_to(k, 4) {
                let r = verify_chevalley(&l);
                assert!(r.pass, "k={k} λ={l}\nlhs:\n{}\nrhs:\n{}", r.lhs, r.rhs);
            }
        }
    }

    #[test]
    fn initial_decomposition_small() {
        for k in 0..3 {
            for l in k_strict_up_to(k, 5) {
                assert!(initial_decomposition_holds(&l), "k={k} λ={l}");
            }
        }
    }

    #[test]
    fn coefficient_agrees_with_localization() {
        for k in 0..3 {
            for l in k_strict_up_to(k, 7) {
                assert_eq!(chevalley_t_coeff(&l), localization_sigma1(&l), "k={k} λ={l}");
            }
        }
    }
}
