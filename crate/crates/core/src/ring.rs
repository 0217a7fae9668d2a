//! The graded ring `Z[c, t]` and the symmetric-function building blocks
//! `e^r_j(t)`, `h^r_j(t)` and `c^r_p`.
//!
//! `c_p` has degree `p`, every `t_i` has degree one. `c_0 = 1` and `c_p = 0`
//! for negative `p` are applied at construction time, so neither is ever
//! stored in a [`Monomial`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Mutex;

use once_cell::sync::Lazy;
use rustc_hash::FxHashMap;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// A monomial in the `c` and `t` variables.
///
/// Exponents are stored densely: `c[0]` is the exponent of `c_1`, `t[0]` the
/// exponent of `t_1`. Trailing zeros are always trimmed, so the derived
/// ordering (degree, then `c`-exponent vector, then `t`-exponent vector) is
/// the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    degree: u32,
    c: Vec<u32>,
    t: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds a monomial from sparse `(index, exponent)` lists. Indices are
    /// one-based; `c_0` factors are dropped.
    pub fn from_sparse(c: &[(u32, u32)], t: &[(u32, u32)]) -> Self {
        let mut cv = Vec::new();
        for &(p, e) in c {
            if p == 0 {
                continue;
            }
            let idx = (p - 1) as usize;
            if cv.len() <= idx {
                cv.resize(idx + 1, 0);
            }
            cv[idx] += e;
        }
        let mut tv = Vec::new();
        for &(i, e) in t {
            assert!(i >= 1, "t-variables are indexed from 1");
            let idx = (i - 1) as usize;
            if tv.len() <= idx {
                tv.resize(idx + 1, 0);
            }
            tv[idx] += e;
        }
        Monomial::from_dense(cv, tv)
    }

    pub fn from_dense(mut c: Vec<u32>, mut t: Vec<u32>) -> Self {
        trim(&mut c);
        trim(&mut t);
        let degree = c
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum::<u32>()
            + t.iter().sum::<u32>();
        Monomial { degree, c, t }
    }

    pub fn c_var(p: u32) -> Self {
        Monomial::from_sparse(&[(p, 1)], &[])
    }

    pub fn t_var(i: u32) -> Self {
        Monomial::from_sparse(&[], &[(i, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree contributed by the `c` variables alone.
    pub fn c_degree(&self) -> u32 {
        self.c
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum()
    }

    pub fn c_exponents(&self) -> &[u32] {
        &self.c
    }

    pub fn t_exponents(&self) -> &[u32] {
        &self.t
    }

    /// Exponent of `c_p` (zero when absent).
    pub fn c_exp(&self, p: u32) -> u32 {
        if p == 0 {
            return 0;
        }
        self.c.get((p - 1) as usize).copied().unwrap_or(0)
    }

    pub fn t_exp(&self, i: u32) -> u32 {
        if i == 0 {
            return 0;
        }
        self.t.get((i - 1) as usize).copied().unwrap_or(0)
    }

    /// Sparse `(p, e)` pairs for the `c` part, increasing in `p`.
    pub fn c_sparse(&self) -> Vec<(u32, u32)> {
        sparse(&self.c)
    }

    pub fn t_sparse(&self) -> Vec<(u32, u32)> {
        sparse(&self.t)
    }

    pub fn has_c(&self) -> bool {
        !self.c.is_empty()
    }

    pub fn has_t(&self) -> bool {
        !self.t.is_empty()
    }

    /// The `c` part read as a partition (parts in weakly decreasing order).
    pub fn c_partition(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for (i, &e) in self.c.iter().enumerate().rev() {
            for _ in 0..e {
                parts.push(i + 1);
            }
        }
        parts
    }

    /// Monomial `c_λ` for a multiset of part sizes (zero parts ignored).
    pub fn from_c_parts(parts: &[usize]) -> Self {
        let pairs: Vec<(u32, u32)> = parts.iter().map(|&p| (p as u32, 1)).collect();
        Monomial::from_sparse(&pairs, &[])
    }

    pub fn c_part(&self) -> Monomial {
        Monomial::from_dense(self.c.clone(), Vec::new())
    }

    pub fn t_part(&self) -> Monomial {
        Monomial::from_dense(Vec::new(), self.t.clone())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            c: add_vec(&self.c, &other.c),
            t: add_vec(&self.t, &other.t),
        }
    }
}

fn sparse(v: &[u32]) -> Vec<(u32, u32)> {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i as u32 + 1, e))
        .collect()
}

fn add_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

/// An element of `Z[c, t]`.
///
/// Terms are kept in a map keyed by [`Monomial`]; zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(v: impl Into<Coefficient>) -> Self {
        Polynomial::monomial(Monomial::one(), v)
    }

    pub fn monomial(m: Monomial, coeff: impl Into<Coefficient>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Polynomial { terms }
    }

    /// The variable `c_p`, with `c_0 = 1` and `c_p = 0` for `p < 0`.
    pub fn c(p: i64) -> Self {
        match p {
            p if p < 0 => Polynomial::zero(),
            0 => Polynomial::one(),
            p => Polynomial::monomial(Monomial::c_var(p as u32), 1),
        }
    }

    /// The variable `t_i`. Negative indices follow the convention
    /// `t_{-i} := t_i`; `t_0` is zero.
    pub fn t(i: i64) -> Self {
        match i {
            0 => Polynomial::zero(),
            i => Polynomial::monomial(Monomial::t_var(i.unsigned_abs() as u32), 1),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coefficient)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| *m == Monomial::one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Maximal graded degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// True when no `c` variable occurs.
    pub fn is_t_only(&self) -> bool {
        self.terms.keys().all(|m| !m.has_c())
    }

    pub fn max_t_index(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.t_exponents().len() as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, k: &Coefficient) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, k: &Coefficient) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * k));
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &Coefficient) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring-homomorphic image under `c_p ↦ c_img(p)`, `t_i ↦ t_img(i)`.
    pub fn map_variables<F, G>(&self, mut c_img: F, mut t_img: G) -> Result<Polynomial>
    where
        F: FnMut(u32) -> Result<Polynomial>,
        G: FnMut(u32) -> Result<Polynomial>,
    {
        let mut c_pows: HashMap<(u32, u32), Polynomial> = HashMap::new();
        let mut t_pows: HashMap<(u32, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, coeff) in &self.terms {
            let mut img = Polynomial::constant(coeff.clone());
            for (p, e) in m.c_sparse() {
                if !c_pows.contains_key(&(p, e)) {
                    let base = c_img(p)?;
                    c_pows.insert((p, e), base.pow(e));
                }
                img = &img * &c_pows[&(p, e)];
            }
            for (i, e) in m.t_sparse() {
                if !t_pows.contains_key(&(i, e)) {
                    let base = t_img(i)?;
                    t_pows.insert((i, e), base.pow(e));
                }
                img = &img * &t_pows[&(i, e)];
            }
            out += &img;
        }
        Ok(out)
    }

    /// Substitutes `t_i ↦ assignment[i]`, leaving `c` untouched.
    pub fn substitute_t(&self, assignment: &HashMap<u32, Polynomial>) -> Result<Polynomial> {
        self.map_variables(
            |p| Ok(Polynomial::c(p as i64)),
            |i| {
                assignment
                    .get(&i)
                    .cloned()
                    .ok_or(Error::UnassignedVariable(format!("t[{i}]")))
            },
        )
    }

    /// `f(c, -t)`: flips the sign of every term of odd `t`-degree.
    pub fn negate_t(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let odd = m.t_exponents().iter().sum::<u32>() % 2 == 1;
                    (m.clone(), if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Specialisation `t = 0`.
    pub fn drop_t(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_t())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by their `c`-monomial: `f = Σ c^a · f_a(t)`.
    pub fn split_c(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.c_part())
                .or_default()
                .add_term(m.t_part(), c);
        }
        out
    }
}

impl From<i64> for Polynomial {
    fn from(v: i64) -> Self {
        Polynomial::constant(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

const PACKED_C: usize = 32;
const PACKED_T: usize = 16;
const PACKED_MAX_EXP: u32 = 127;

/// Exponents of `c_1..c_32, t_1..t_16` as bytes in six words; adding two
/// packed monomials is lane-wise addition while every exponent stays below
/// 128.
type Packed = [u64; 6];

fn pack(m: &Monomial) -> Option<Packed> {
    if m.c.len() > PACKED_C || m.t.len() > PACKED_T {
        return None;
    }
    let mut bytes = [0u8; 48];
    for (slot, &e) in bytes.iter_mut().zip(&m.c) {
        if e > PACKED_MAX_EXP {
            return None;
        }
        *slot = e as u8;
    }
    for (slot, &e) in bytes[PACKED_C..].iter_mut().zip(&m.t) {
        if e > PACKED_MAX_EXP {
            return None;
        }
        *slot = e as u8;
    }
    let mut out = [0u64; 6];
    for (w, chunk) in out.iter_mut().zip(bytes.chunks_exact(8)) {
        *w = u64::from_le_bytes(chunk.try_into().expect("eight bytes"));
    }
    Some(out)
}

fn unpack(p: &Packed) -> Monomial {
    let mut bytes = [0u8; 48];
    for (chunk, w) in bytes.chunks_exact_mut(8).zip(p) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    let c: Vec<u32> = bytes[..PACKED_C].iter().map(|&b| b as u32).collect();
    let t: Vec<u32> = bytes[PACKED_C..].iter().map(|&b| b as u32).collect();
    Monomial::from_dense(c, t)
}

fn packed_terms(p: &Polynomial) -> Option<Vec<(Packed, &Coefficient)>> {
    p.terms.iter().map(|(m, c)| pack(m).map(|k| (k, c))).collect()
}

fn max_exponent(p: &Polynomial) -> u32 {
    p.terms
        .keys()
        .flat_map(|m| m.c.iter().chain(&m.t))
        .copied()
        .max()
        .unwrap_or(0)
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if max_exponent(self) + max_exponent(rhs) <= PACKED_MAX_EXP {
            if let (Some(a), Some(b)) = (packed_terms(self), packed_terms(rhs)) {
                let mut acc: FxHashMap<Packed, Coefficient> = FxHashMap::default();
                acc.reserve(a.len() * b.len());
                for (ka, ca) in &a {
                    for (kb, cb) in &b {
                        let key = std::array::from_fn(|i| ka[i] + kb[i]);
                        let prod = *ca * *cb;
                        acc.entry(key)
                            .and_modify(|c| *c += &prod)
                            .or_insert(prod);
                    }
                }
                return Polynomial {
                    terms: acc
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (unpack(&k), c))
                        .collect(),
                };
            }
        }
        let mut acc: HashMap<Monomial, Coefficient> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::to_text(self))
    }
}

static ELEM_CACHE: Lazy<Mutex<HashMap<(i64, i64), Polynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static COMPLETE_CACHE: Lazy<Mutex<HashMap<(i64, i64), Polynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static C_POWER_CACHE: Lazy<Mutex<HashMap<(i64, i64), Polynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Elementary symmetric polynomial `e_j(t_1, …, t_r)`; zero for `j < 0`
/// or `j > r`.
pub fn elem_sym(j: i64, r: i64) -> Polynomial {
    if j < 0 || r < 0 || j > r {
        return Polynomial::zero();
    }
    if j == 0 {
        return Polynomial::one();
    }
    if let Some(p) = ELEM_CACHE.lock().unwrap().get(&(j, r)) {
        return p.clone();
    }
    // e^r_j = e^{r-1}_j + t_r e^{r-1}_{j-1}
    let val = &elem_sym(j, r - 1) + &(&Polynomial::t(r) * &elem_sym(j - 1, r - 1));
    ELEM_CACHE.lock().unwrap().insert((j, r), val.clone());
    val
}

/// Complete symmetric polynomial `h^r_j(t)`: `h_j(t_1..t_r)` for `r > 0`,
/// `δ_{0j}` for `r = 0`, and `e_j(t_1..t_{-r})` for `r < 0`.
pub fn complete_sym(j: i64, r: i64) -> Polynomial {
    if j < 0 {
        return Polynomial::zero();
    }
    if r < 0 {
        return elem_sym(j, -r);
    }
    if j == 0 {
        return Polynomial::one();
    }
    if r == 0 {
        return Polynomial::zero();
    }
    if let Some(p) = COMPLETE_CACHE.lock().unwrap().get(&(j, r)) {
        return p.clone();
    }
    // h^r_j = h^{r-1}_j + t_r h^r_{j-1}
    let val = &complete_sym(j, r - 1) + &(&Polynomial::t(r) * &complete_sym(j - 1, r));
    COMPLETE_CACHE.lock().unwrap().insert((j, r), val.clone());
    val
}

/// `h^r_j(-t)`.
pub fn complete_sym_neg(j: i64, r: i64) -> Polynomial {
    let h = complete_sym(j, r);
    if j % 2 == 0 {
        h
    } else {
        -h
    }
}

/// `c^r_p = Σ_{j=0}^{p} c_{p-j} h^r_j(-t)`.
pub fn c_power(p: i64, r: i64) -> Polynomial {
    if p < 0 {
        return Polynomial::zero();
    }
    if p == 0 {
        return Polynomial::one();
    }
    if let Some(v) = C_POWER_CACHE.lock().unwrap().get(&(p, r)) {
        return v.clone();
    }
    let mut val = Polynomial::zero();
    for j in 0..=p {
        val += &(&Polynomial::c(p - j) * &complete_sym_neg(j, r));
    }
    C_POWER_CACHE.lock().unwrap().insert((p, r), val.clone());
    val
}

/// `c^r_p` specialised at `t = 0`, i.e. `c_p`.
pub fn c_power_single(p: i64) -> Polynomial {
    Polynomial::c(p)
}

/// `Σ_{j=1}^{n} t_j`.
pub fn t_sum(n: i64) -> Polynomial {
    let mut s = Polynomial::zero();
    for j in 1..=n {
        s += &Polynomial::t(j);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: i64) -> Polynomial {
        Polynomial::c(p)
    }
    fn t(i: i64) -> Polynomial {
        Polynomial::t(i)
    }

    #[test]
    fn addition_examples() {
        assert!((&c(1) + &(-c(1))).is_zero());
        assert_eq!((&c(2) + &(&t(1) * &c(1))).len(), 2);
        assert_eq!(&(&c(1) - &t(1)) + &(&c(1) + &t(1)), c(1).scale(&2.into()));
    }

    #[test]
    fn multiplication_examples() {
        let a = &c(1) - &t(1);
        assert_eq!(&a * &Polynomial::one(), a);
        let b = &c(1) + &t(1);
        assert_eq!(&a * &b, &c(1).pow(2) - &t(1).pow(2));
        let sq = &c(1) * &c(1);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.coefficient(&Monomial::from_sparse(&[(1, 2)], &[])), 1.into());
    }

    #[test]
    fn c_zero_and_negative_conventions() {
        assert!(c(0).is_one());
        assert!(c(-3).is_zero());
        for r in -6..=6 {
            assert!(c_power(-1, r).is_zero());
            assert!(c_power(0, r).is_one());
        }
    }

    #[test]
    fn symmetric_function_examples() {
        assert_eq!(elem_sym(1, 2), &t(1) + &t(2));
        assert!(elem_sym(3, 2).is_zero());
        assert!(elem_sym(0, 0).is_one());
        assert!(elem_sym(2, 0).is_zero());
        assert!(elem_sym(-1, 3).is_zero());
        assert_eq!(complete_sym(2, 1), t(1).pow(2));
        assert_eq!(complete_sym(1, -3), &(&t(1) + &t(2)) + &t(3));
        assert!(complete_sym(5, 0).is_zero());
        assert!(complete_sym(0, 0).is_one());
    }

    #[test]
    fn c_power_examples() {
        // c^2_1 = c_1 - t_1 - t_2
        assert_eq!(c_power(1, 2), &(&c(1) - &t(1)) - &t(2));
        assert!(c_power(0, -7).is_one());
        // c^{-2}_3 = c_3 - c_2(t_1+t_2) + c_1 t_1 t_2
        let expect = &(&c(3) - &(&c(2) * &(&t(1) + &t(2)))) + &(&c(1) * &(&t(1) * &t(2)));
        assert_eq!(c_power(3, -2), expect);
    }

    #[test]
    fn substitution_examples() {
        let f = &t(1) + &t(2);
        let neg: HashMap<u32, Polynomial> = (1..=2).map(|i| (i, -t(i as i64))).collect();
        assert_eq!(f.substitute_t(&neg).unwrap(), -f.clone());
        let g = &c(1) - &t(1);
        let zero: HashMap<u32, Polynomial> = [(1, Polynomial::zero())].into_iter().collect();
        assert_eq!(g.substitute_t(&zero).unwrap(), c(1));
        let h = &t(1) * &t(2);
        let swap: HashMap<u32, Polynomial> = [(1, t(2)), (2, t(1))].into_iter().collect();
        assert_eq!(h.substitute_t(&swap).unwrap(), h);
        let missing: HashMap<u32, Polynomial> = [(1, t(2))].into_iter().collect();
        assert!(matches!(
            h.substitute_t(&missing),
            Err(Error::UnassignedVariable(_))
        ));
    }

    #[test]
    fn negate_t_matches_substitution() {
        let f = &c_power(4, 3) * &c_power(2, -2);
        let neg: HashMap<u32, Polynomial> = (1..=3).map(|i| (i, -t(i as i64))).collect();
        assert_eq!(f.negate_t(), f.substitute_t(&neg).unwrap());
    }

    #[test]
    fn recurrence_positive_superscript() {
        for p in 0..=10 {
            for r in 1..=5 {
                let rhs = &c_power(p, r - 1) - &(&t(r) * &c_power(p - 1, r));
                assert_eq!(c_power(p, r), rhs, "p={p} r={r}");
            }
        }
    }

    #[test]
    fn recurrence_nonpositive_superscript() {
        for p in 0..=10 {
            for r in -5..=0 {
                // t_m := t_{-m} for m < 0
                let rhs = &c_power(p, r - 1) + &(&t(r - 1) * &c_power(p - 1, r));
                assert_eq!(c_power(p, r), rhs, "p={p} r={r}");
            }
        }
    }

    #[test]
    fn generating_series_inverse() {
        // Σ e_j(t) z^j · Σ h_j(-t) z^j = 1, coefficientwise through degree 8
        for r in 0..=5 {
            for d in 0..=8 {
                let mut coeff = Polynomial::zero();
                for j in 0..=d {
                    coeff += &(&elem_sym(j, r) * &complete_sym_neg(d - j, r));
                }
                if d == 0 {
                    assert!(coeff.is_one());
                } else {
                    assert!(coeff.is_zero(), "r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn c_power_homogeneous() {
        for p in 0..=8 {
            for r in -6..=6 {
                let v = c_power(p, r);
                assert!(v.is_homogeneous());
                assert_eq!(v.degree(), Some(p as u32));
            }
        }
    }

    #[test]
    fn canonical_order_is_degree_first() {
        let f = &(&c(3) + &t(1)) + &Polynomial::one();
        let degs: Vec<u32> = f.terms().map(|(m, _)| m.degree()).collect();
        assert_eq!(degs, vec![0, 1, 3]);
    }
}
