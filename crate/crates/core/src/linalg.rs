//! Division-free determinants and Pfaffians over `Z[c, t]`.
//!
//! Both expand along the first remaining row and memoise on the bitmask of
//! columns still available, so an `n × n` input costs `O(2^n · n)`
//! polynomial products.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Polynomial;

/// Determinant of a square matrix given as rows.
pub fn det(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch(bad.len(), n));
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    assert!(n < 32, "matrix too large for bitmask expansion");
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    Ok(det_rec(m, 0, &mut memo))
}

fn det_rec(m: &[Vec<Polynomial>], used: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    let n = m.len();
    let row = used.count_ones() as usize;
    if row == n {
        return Polynomial::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut out = Polynomial::zero();
    let mut free_before = 0;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let minor = det_rec(m, used | (1 << col), memo);
            let term = entry * &minor;
            if free_before % 2 == 0 {
                out += &term;
            } else {
                out -= &term;
            }
        }
        free_before += 1;
    }
    memo.insert(used, out.clone());
    out
}

/// Pfaffian of the antisymmetric matrix determined by `upper(i, j)` for
/// `i < j` (zero-based). `n` must be even.
pub fn pfaffian<F>(n: usize, upper: F) -> Polynomial
where
    F: Fn(usize, usize) -> Polynomial,
{
    assert!(n % 2 == 0, "Pfaffian needs even size");
    assert!(n < 32, "matrix too large for bitmask expansion");
    let mut entries = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate().skip(i + 1) {
            *e = upper(i, j);
        }
    }
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    pf_rec(&entries, full, &mut memo)
}

fn pf_rec(m: &[Vec<Polynomial>], remaining: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    if remaining == 0 {
        return Polynomial::one();
    }
    if let Some(v) = memo.get(&remaining) {
        return v.clone();
    }
    let first = remaining.trailing_zeros() as usize;
    let rest = remaining & !(1 << first);
    let mut out = Polynomial::zero();
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = &m[first][j];
        if !entry.is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            let term = entry * &sub;
            if pos % 2 == 0 {
                out += &term;
            } else {
                out -= &term;
            }
        }
        pos += 1;
    }
    memo.insert(remaining, out.clone());
    out
}
