//! Symmetric polynomials evaluated at a tuple of field elements:
//! elementary and complete functions, Schur functions via Jacobi–Trudi,
//! and the Pragacz–Ratajski `P̃` polynomials via Pfaffians.
//!
//! Everything is generic over [`Scalar`], so the same code evaluates at
//! exact cyclotomic points, at complex floats, or symbolically in the
//! `α_i = ½ e_i` variables of [`AlphaPolynomial`].

mod alpha;

use std::collections::HashMap;

use num_rational::BigRational;

pub use alpha::{alpha_evaluate, ptilde_alpha, AlphaPolynomial};

use crate::error::{Error, Result};
use crate::partitions::StrictPartition;
use crate::scalar::Scalar;

/// The variables `x_1, …, x_m`, all in one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTuple<T> {
    values: Vec<T>,
}

impl<T: Scalar> PointTuple<T> {
    /// Panics on an empty tuple; `m ≥ 1` throughout the engine.
    pub fn new(values: Vec<T>) -> Self {
        assert!(
            !values.is_empty(),
            "a point tuple needs at least one coordinate"
        );
        PointTuple { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn zero(&self) -> T {
        self.values[0].zero_like()
    }

    fn one(&self) -> T {
        self.values[0].one_like()
    }
}

/// `e_0, …, e_m` with a total lookup: indices outside `0..=m` read as zero.
#[derive(Clone, Debug)]
pub struct Elementary<T> {
    values: Vec<T>,
    zero: T,
}

impl<T: Scalar> Elementary<T> {
    /// Wraps a precomputed sequence starting at `e_0`.
    pub fn from_values(values: Vec<T>) -> Self {
        let zero = values[0].zero_like();
        Elementary { values, zero }
    }

    pub fn get(&self, k: i64) -> &T {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.values.get(k))
            .unwrap_or(&self.zero)
    }

    /// Number of variables `m`.
    pub fn arity(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub(crate) fn one(&self) -> T {
        self.zero.one_like()
    }
}

/// Coefficients of `Π (1 + x_i t)`.
pub fn elementary_values<T: Scalar>(p: &PointTuple<T>) -> Vec<T> {
    let mut e = vec![p.one()];
    for x in p.values() {
        let mut next = e.clone();
        next.push(p.zero());
        for k in 1..next.len() {
            next[k] = next[k].plus(&x.times(&e[k - 1]));
        }
        e = next;
    }
    e
}

pub fn elementary<T: Scalar>(p: &PointTuple<T>) -> Elementary<T> {
    Elementary::from_values(elementary_values(p))
}

/// `h_0, …, h_kmax` from `Σ_{i=0}^{k} (-1)^i e_i h_{k-i} = 0`.
pub fn complete_values<T: Scalar>(p: &PointTuple<T>, kmax: usize) -> Vec<T> {
    complete_from_elementary(&elementary(p), kmax)
}

pub fn complete_from_elementary<T: Scalar>(e: &Elementary<T>, kmax: usize) -> Vec<T> {
    let mut h = vec![e.one()];
    for k in 1..=kmax {
        let mut acc = e.get(0).zero_like();
        for i in 1..=k.min(e.arity()) {
            let term = e.get(i as i64).times(&h[k - i]);
            acc = if i % 2 == 1 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        h.push(acc);
    }
    h
}

/// Jacobi–Trudi `det[h_{λ_i + j - i}]` for a weakly decreasing `lambda`
/// with parts at most `m`; trailing zeros are allowed.
pub fn schur_value<T: Scalar>(lambda: &[u32], p: &PointTuple<T>) -> Result<T> {
    let m = p.len() as u32;
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.iter().any(|&x| x > m) {
        return Err(Error::InvalidPartition(format!(
            "{lambda:?} is not in R({m})"
        )));
    }
    let parts: Vec<i64> = lambda
        .iter()
        .filter(|&&x| x > 0)
        .map(|&x| x as i64)
        .collect();
    let l = parts.len();
    if l == 0 {
        return Ok(p.one());
    }
    let kmax = (parts[0] + l as i64 - 1) as usize;
    let h = complete_values(p, kmax);
    let zero = p.zero();
    let matrix: Vec<Vec<T>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let idx = parts[i] + j as i64 - i as i64;
                    if idx < 0 {
                        zero.clone()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix, &p.one()))
}

/// Division-free determinant by Laplace expansion, memoised on the set of
/// columns already used. Fine for the small sizes that occur here.
pub fn determinant<T: Scalar>(matrix: &[Vec<T>], one: &T) -> T {
    fn expand<T: Scalar>(
        m: &[Vec<T>],
        row: usize,
        used: u64,
        memo: &mut HashMap<u64, T>,
        one: &T,
    ) -> T {
        let n = m.len();
        if row == n {
            return one.clone();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = one.zero_like();
        let mut free_before = 0;
        for c in 0..n {
            if used >> c & 1 == 1 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = expand(m, row + 1, used | 1 << c, memo, one);
                let term = m[row][c].times(&minor);
                acc = if free_before % 2 == 0 {
                    acc.plus(&term)
                } else {
                    acc.minus(&term)
                };
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(
        matrix.iter().all(|r| r.len() == matrix.len()),
        "determinant needs a square matrix"
    );
    assert!(matrix.len() < 64);
    expand(matrix, 0, 0, &mut HashMap::new(), one)
}

/// Pfaffian by expansion along the first row. The empty matrix has Pfaffian `one`.
pub fn pfaffian<T: Scalar>(matrix: &[Vec<T>], one: &T) -> Result<T> {
    let r = matrix.len();
    if matrix.iter().any(|row| row.len() != r) {
        return Err(Error::NotSkewSymmetric);
    }
    if r % 2 == 1 {
        return Err(Error::OddDimension(r));
    }
    for i in 0..r {
        for j in i..r {
            if !matrix[i][j].plus(&matrix[j][i]).is_zero() {
                return Err(Error::NotSkewSymmetric);
            }
        }
    }
    fn expand<T: Scalar>(m: &[Vec<T>], idx: &[usize], one: &T) -> T {
        let Some((&first, rest)) = idx.split_first() else {
            return one.clone();
        };
        let mut acc = one.zero_like();
        for (pos, &j) in rest.iter().enumerate() {
            let entry = &m[first][j];
            if entry.is_zero() {
                continue;
            }
            let remaining: Vec<usize> = rest.iter().copied().filter(|&k| k != j).collect();
            let term = entry.times(&expand(m, &remaining, one));
            acc = if pos % 2 == 0 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        acc
    }
    let idx: Vec<usize> = (0..r).collect();
    Ok(expand(matrix, &idx, one))
}

/// `P̃_{(a,b)}`; `b = 0` gives `P̃_{(a)} = ½ e_a` and `a = b = 0` gives 1.
pub fn ptilde_pair<T: Scalar>(a: u32, b: u32, e: &Elementary<T>) -> T {
    let (a, b) = (a as i64, b as i64);
    if b == 0 {
        return if a == 0 {
            e.one()
        } else {
            e.get(a).scale(&half())
        };
    }
    let mut sum = e.get(a).zero_like();
    for k in 1..=b {
        let term = e.get(a + k).times(e.get(b - k));
        sum = if k % 2 == 0 {
            sum.plus(&term)
        } else {
            sum.minus(&term)
        };
    }
    let two = BigRational::from_integer(2.into());
    e.get(a)
        .times(e.get(b))
        .plus(&sum.scale(&two))
        .scale(&BigRational::new(1.into(), 4.into()))
}

pub fn ptilde_pair_value<T: Scalar>(a: u32, b: u32, p: &PointTuple<T>) -> T {
    ptilde_pair(a, b, &elementary(p))
}

/// `P̃_λ` from the elementary values of the point.
pub fn ptilde<T: Scalar>(lambda: &StrictPartition, e: &Elementary<T>) -> Result<T> {
    lambda.check(e.arity() as u32)?;
    let parts = lambda.parts();
    match parts.len() {
        0 => Ok(e.one()),
        1 => Ok(ptilde_pair(parts[0], 0, e)),
        2 => Ok(ptilde_pair(parts[0], parts[1], e)),
        _ => {
            let mut padded = parts.to_vec();
            if padded.len() % 2 == 1 {
                padded.push(0);
            }
            let r = padded.len();
            let zero = e.get(0).zero_like();
            let mut matrix = vec![vec![zero; r]; r];
            for i in 0..r {
                for j in i + 1..r {
                    let v = ptilde_pair(padded[i], padded[j], e);
                    matrix[j][i] = v.negate();
                    matrix[i][j] = v;
                }
            }
            pfaffian(&matrix, &e.one())
        }
    }
}

pub fn ptilde_value<T: Scalar>(lambda: &StrictPartition, p: &PointTuple<T>) -> Result<T> {
    ptilde(lambda, &elementary(p))
}

pub(crate) fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}
