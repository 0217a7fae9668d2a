//! Raising operators acting on noncommutative monomials `c^γ_α`.
//!
//! `R_ij` adds one to slot `i` and subtracts one from slot `j` of the
//! subscript sequence, leaving the superscripts in place. For a valid set of
//! pairs `D`,
//!
//! ```text
//! R^D = Π_{i<j} (1 - R_ij) · Π_{(i,j) ∈ D} (1 + R_ij)^{-1}
//! ```
//!
//! Per pair this is `1 - R_ij` when `(i,j) ∉ D` and
//! `(1 - R)/(1 + R) = 1 + 2 Σ_{m≥1} (-R)^m` when `(i,j) ∈ D`. The formal
//! series becomes finite once applied: any term leaving a negative subscript
//! vanishes because `c^r_p = 0` for `p < 0`. Pairs whose second index lies
//! beyond the sequence can only lower a zero entry and therefore contribute
//! the identity alone.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::ring::{c_power, Polynomial};

/// A finite-support integer sequence, indexed from one. Entries beyond the
/// stored length read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntSeq(pub Vec<i64>);

impl IntSeq {
    pub fn new(v: Vec<i64>) -> Self {
        IntSeq(v)
    }

    pub fn entry(&self, j: usize) -> i64 {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Pads with zeros (or truncates) to length `l`.
    pub fn padded(&self, l: usize) -> IntSeq {
        let mut v = self.0.clone();
        v.resize(l, 0);
        IntSeq(v)
    }

    /// `R_ij` applied to the sequence (padding as needed).
    pub fn raise(&self, i: usize, j: usize) -> IntSeq {
        let mut v = self.padded(self.len().max(j)).0;
        v[i - 1] += 1;
        v[j - 1] -= 1;
        IntSeq(v)
    }

    pub fn plus_unit(&self, j: usize, r: i64) -> IntSeq {
        let mut v = self.padded(self.len().max(j)).0;
        v[j - 1] += r;
        IntSeq(v)
    }
}

impl From<&[i64]> for IntSeq {
    fn from(v: &[i64]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A finite set of pairs `(i, j)` with `1 ≤ i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PairSet(BTreeSet<(usize, usize)>);

impl PairSet {
    pub fn new() -> Self {
        PairSet::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut s = BTreeSet::new();
        for (i, j) in pairs {
            if i < 1 || i >= j {
                return Err(Error::InvalidPairSet(format!("({i},{j}) is not 1 ≤ i < j")));
            }
            s.insert((i, j));
        }
        Ok(PairSet(s))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(&(i, j))
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(1 <= i && i < j);
        self.0.insert((i, j));
    }

    pub fn with(&self, i: usize, j: usize) -> PairSet {
        let mut d = self.clone();
        d.insert(i, j);
        d
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_superset(&self, other: &PairSet) -> bool {
        self.0.is_superset(&other.0)
    }

    /// Pairs with second index at most `l`.
    pub fn restricted(&self, l: usize) -> PairSet {
        PairSet(self.0.iter().filter(|&&(_, j)| j <= l).copied().collect())
    }

    pub fn difference(&self, other: &PairSet) -> Vec<(usize, usize)> {
        self.0.difference(&other.0).copied().collect()
    }
}

/// Order ideal in `{(i,j) : 1 ≤ i < j}` under the componentwise order.
pub fn is_order_ideal(d: &PairSet) -> bool {
    // Closure under the two covering moves suffices.
    d.iter().all(|&(i, j)| {
        (i == 1 || d.contains(i - 1, j)) && (j == i + 1 || d.contains(i, j - 1))
    })
}

/// Outer corners of `d` with second index at most `window`.
pub fn outer_corners(d: &PairSet, window: usize) -> Result<Vec<(usize, usize)>> {
    if !is_order_ideal(d) {
        return Err(Error::InvalidPairSet("not an order ideal".into()));
    }
    let mut out = Vec::new();
    for j in 2..=window {
        for i in 1..j {
            if !d.contains(i, j) && is_order_ideal(&d.with(i, j)) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// `a_j(D) = #{i < j : (i,j) ∉ D}`.
pub fn a_seq(d: &PairSet, j: usize) -> i64 {
    (1..j).filter(|&i| !d.contains(i, j)).count() as i64
}

/// `γ_j(D, μ) = k + 1 - μ_j + a_j(D)` for `j = 1..len(μ)`.
pub fn gamma_seq(d: &PairSet, mu: &IntSeq, k: usize) -> IntSeq {
    IntSeq(
        (1..=mu.len())
            .map(|j| k as i64 + 1 - mu.entry(j) + a_seq(d, j))
            .collect(),
    )
}

/// Finite expansion of `R^D` against a fixed base sequence: every term is a
/// signed shift whose application to the base stays componentwise
/// nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftExpansion {
    pub terms: Vec<(i128, IntSeq)>,
}

impl ShiftExpansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

type ExpansionKey = (Vec<(usize, usize)>, Vec<i64>);

static EXPANSION_CACHE: Lazy<Mutex<HashMap<ExpansionKey, Arc<ShiftExpansion>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Expands `R^D` on sequences of length `base.len()`, keeping exactly the
/// terms whose result `base + shift` is nonnegative.
///
/// Columns are processed from the last to the second; entry `j` can only be
/// raised by pairs `(j, h)` with `h > j`, which are already fixed when
/// column `j` is visited, so the total lowering of column `j` is bounded by
/// its current value.
pub fn expand_operator(d: &PairSet, base: &IntSeq) -> Arc<ShiftExpansion> {
    let l = base.len();
    let d = d.restricted(l);
    let key: ExpansionKey = (d.iter().copied().collect(), base.0.clone());
    if let Some(e) = EXPANSION_CACHE.lock().unwrap().get(&key) {
        return e.clone();
    }
    let mut acc: HashMap<Vec<i64>, i128> = HashMap::new();
    let mut cur = base.0.clone();
    expand_rec(&d, l, l, 1, 1, &mut cur, &mut acc);
    let mut terms: Vec<(i128, IntSeq)> = acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(fin, c)| {
            let shift: Vec<i64> = fin.iter().zip(&base.0).map(|(f, b)| f - b).collect();
            (c, IntSeq(shift))
        })
        .collect();
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    let e = Arc::new(ShiftExpansion { terms });
    EXPANSION_CACHE.lock().unwrap().insert(key, e.clone());
    e
}

/// `col` is the column being lowered, `row` the next raising row for it.
fn expand_rec(
    d: &PairSet,
    l: usize,
    col: usize,
    row: usize,
    coeff: i128,
    cur: &mut Vec<i64>,
    acc: &mut HashMap<Vec<i64>, i128>,
) {
    if col <= 1 {
        if l == 0 || cur[0] >= 0 {
            *acc.entry(cur.clone()).or_insert(0) += coeff;
        }
        return;
    }
    if row == col {
        // column finished: its final value is cur[col-1], must be ≥ 0
        if cur[col - 1] < 0 {
            return;
        }
        expand_rec(d, l, col - 1, 1, coeff, cur, acc);
        return;
    }
    let avail = cur[col - 1];
    let max_m = if d.contains(row, col) {
        avail.max(0)
    } else {
        avail.clamp(0, 1)
    };
    for m in 0..=max_m {
        let w: i128 = if m == 0 {
            1
        } else if d.contains(row, col) {
            if m % 2 == 0 {
                2
            } else {
                -2
            }
        } else {
            -1
        };
        cur[row - 1] += m;
        cur[col - 1] -= m;
        expand_rec(d, l, col, row + 1, coeff * w, cur, acc);
        cur[row - 1] -= m;
        cur[col - 1] += m;
    }
}

/// `R^D c^{sup}_{sub}` where each final subscript sequence `α` contributes
/// `Π_j factor(j, α_j)`.
pub fn apply_with<F>(d: &PairSet, sub: &IntSeq, factor: F) -> Polynomial
where
    F: Fn(usize, i64) -> Polynomial,
{
    let exp = expand_operator(d, sub);
    let mut finals: Vec<(Vec<i64>, i128)> = exp
        .terms
        .iter()
        .map(|(c, s)| {
            (
                sub.0.iter().zip(&s.0).map(|(a, b)| a + b).collect(),
                *c,
            )
        })
        .collect();
    finals.sort();
    build(&finals, 0, sub.len(), &factor)
}

fn build<F>(terms: &[(Vec<i64>, i128)], pos: usize, l: usize, factor: &F) -> Polynomial
where
    F: Fn(usize, i64) -> Polynomial,
{
    if pos == l {
        let total: i128 = terms.iter().map(|(_, c)| *c).sum();
        return Polynomial::constant(Coefficient::from(total));
    }
    let mut out = Polynomial::zero();
    let mut start = 0;
    while start < terms.len() {
        let v = terms[start].0[pos];
        let mut end = start;
        while end < terms.len() && terms[end].0[pos] == v {
            end += 1;
        }
        let rest = build(&terms[start..end], pos + 1, l, factor);
        if !rest.is_zero() {
            out += &(&factor(pos + 1, v) * &rest);
        }
        start = end;
    }
    out
}

/// `R^D c^{sup}_{sub}` in `Z[c, t]`.
pub fn apply(d: &PairSet, sub: &IntSeq, sup: &IntSeq) -> Polynomial {
    apply_with(d, sub, |j, p| c_power(p, sup.entry(j)))
}

/// `R^D c_{sub}` (all superscripts zero, `t = 0`).
pub fn apply_single(d: &PairSet, sub: &IntSeq) -> Polynomial {
    apply_with(d, sub, |_, p| Polynomial::c(p))
}

/// `T(D, μ) = R^D c^{γ(D, μ)}_μ`.
pub fn t_poly(d: &PairSet, mu: &IntSeq, k: usize) -> Result<Polynomial> {
    if !is_order_ideal(d) {
        return Err(Error::InvalidPairSet("not an order ideal".into()));
    }
    let gamma = gamma_seq(d, mu, k);
    Ok(apply(d, mu, &gamma))
}

/// `(1 - R_12)/(1 + R_12) c^{rp, rq}_{p, q}`.
pub fn two_row_ratio(p: i64, q: i64, rp: i64, rq: i64) -> Polynomial {
    let mut out = &c_power(p, rp) * &c_power(q, rq);
    for m in 1..=q.max(0) {
        let w: i64 = if m % 2 == 0 { 2 } else { -2 };
        let term = &c_power(p + m, rp) * &c_power(q - m, rq);
        out += &term.scale(&w.into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;

    fn ps(pairs: &[(usize, usize)]) -> PairSet {
        PairSet::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn seq(v: &[i64]) -> IntSeq {
        IntSeq(v.to_vec())
    }

    #[test]
    fn order_ideal_examples() {
        assert!(is_order_ideal(&ps(&[])));
        assert!(is_order_ideal(&ps(&[(1, 2)])));
        assert!(!is_order_ideal(&ps(&[(2, 3)])));
        assert!(is_order_ideal(&ps(&[(1, 2), (1, 3), (2, 3)])));
        assert!(!is_order_ideal(&ps(&[(1, 3)])));
    }

    #[test]
    fn outer_corner_examples() {
        assert_eq!(outer_corners(&ps(&[]), 5).unwrap(), vec![(1, 2)]);
        assert_eq!(outer_corners(&ps(&[(1, 2)]), 3).unwrap(), vec![(1, 3)]);
        assert_eq!(
            outer_corners(&ps(&[(1, 2), (1, 3), (2, 3)]), 4).unwrap(),
            vec![(1, 4)]
        );
        assert!(outer_corners(&ps(&[(2, 3)]), 4).is_err());
    }

    #[test]
    fn a_and_gamma() {
        assert_eq!(a_seq(&ps(&[]), 3), 2);
        assert_eq!(a_seq(&ps(&[(1, 2)]), 2), 0);
        let c = ps(&[(1, 2), (1, 3), (1, 4), (2, 3)]);
        assert_eq!(a_seq(&c, 7), 6);
        let lam7 = seq(&[7, 4, 3, 2, 1, 1, 1]);
        assert_eq!(gamma_seq(&c, &lam7, 2), seq(&[-4, -1, 0, 3, 6, 7, 8]));
        assert_eq!(gamma_seq(&ps(&[]), &seq(&[5]), 2), seq(&[-2]));
        assert_eq!(gamma_seq(&ps(&[(1, 2)]), &seq(&[3, 1]), 0), seq(&[-2, 0]));
    }

    #[test]
    fn expansion_examples() {
        let e = expand_operator(&ps(&[]), &seq(&[1, 1]));
        assert_eq!(e.terms, vec![(1, seq(&[0, 0])), (-1, seq(&[1, -1]))]);
        let e = expand_operator(&ps(&[(1, 2)]), &seq(&[3, 1]));
        assert_eq!(e.terms, vec![(1, seq(&[0, 0])), (-2, seq(&[1, -1]))]);
        let e = expand_operator(&ps(&[(1, 2)]), &seq(&[3, 2]));
        assert_eq!(
            e.terms,
            vec![(1, seq(&[0, 0])), (-2, seq(&[1, -1])), (2, seq(&[2, -2]))]
        );
        let e = expand_operator(&ps(&[(1, 2)]), &seq(&[4]));
        assert_eq!(e.terms, vec![(1, seq(&[0]))]);
    }

    #[test]
    fn expansion_results_nonnegative() {
        let d = ps(&[(1, 2), (1, 3), (2, 3), (1, 4)]);
        let base = seq(&[3, 2, 2, 1, 1]);
        for (_, s) in &expand_operator(&d, &base).terms {
            for j in 1..=base.len() {
                assert!(base.entry(j) + s.entry(j) >= 0);
            }
        }
    }

    #[test]
    fn t_poly_examples() {
        // single row: c^{k+1-p}_p
        assert_eq!(
            t_poly(&ps(&[]), &seq(&[4]), 1).unwrap(),
            c_power(4, 1 + 1 - 4)
        );
        let q31 = parse(
            "(c[3] - c[2]*(t[1]+t[2]) + c[1]*t[1]*t[2])*c[1] - 2*(c[4] - c[3]*(t[1]+t[2]) + c[2]*t[1]*t[2])",
        )
        .unwrap();
        assert_eq!(t_poly(&ps(&[(1, 2)]), &seq(&[3, 1]), 0).unwrap(), q31);
        // (1 - R_12) c^{(0,2)}_{(2,1)} = c^0_2 c^2_1 - c^0_3 c^2_0
        let expect = parse("c[1]*c[2] - c[3] - (t[1]+t[2])*c[2]").unwrap();
        assert_eq!(t_poly(&ps(&[]), &seq(&[2, 1]), 1).unwrap(), expect);
    }

    #[test]
    fn window_exactness() {
        let d = ps(&[(1, 2)]);
        let mu = seq(&[3, 1]);
        let sup = seq(&[-2, 0]);
        let base = apply(&d, &mu, &sup);
        for extra in 1..=3 {
            let mut m = mu.0.clone();
            let mut s = sup.0.clone();
            for e in 0..extra {
                m.push(0);
                s.push(5 + e);
            }
            assert_eq!(apply(&d, &IntSeq(m), &IntSeq(s)), base);
        }
    }

    #[test]
    fn two_row_examples() {
        let lhs = two_row_ratio(3, 1, -2, 0);
        let rhs = &(&c_power(3, -2) * &Polynomial::c(1)) - &c_power(4, -2).scale(&2.into());
        assert_eq!(lhs, rhs);
        assert_eq!(two_row_ratio(5, 0, 3, 7), c_power(5, 3));
        assert_eq!(two_row_ratio(1, 1, 0, 0), parse("c[1]^2 - 2*c[2]").unwrap());
    }

    #[test]
    fn two_row_matches_operator() {
        for p in 0..=4 {
            for q in 0..=4 {
                for (rp, rq) in [(0, 0), (-2, 1), (3, -1)] {
                    let op = apply(&ps(&[(1, 2)]), &seq(&[p, q]), &seq(&[rp, rq]));
                    assert_eq!(two_row_ratio(p, q, rp, rq), op, "p={p} q={q}");
                }
            }
        }
    }
}
