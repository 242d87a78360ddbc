//! The second path to the invariants: traces of multiplication operators
//! in the ring at `q = 1`, weighted by powers of the quantum Euler class.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::element::QuantumElement;
use super::engine::{gw_invariant, GWQuery};
use super::table::{quantum_product, structure_table};
use crate::error::{Error, Result};
use crate::partitions::{all_strict, dual, rho, StrictPartition};

/// Dense square matrix over Q, indexed by the basis in canonical order.
pub type Matrix = Vec<Vec<BigRational>>;

fn identity(size: usize) -> Matrix {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let size = a.len();
    let mut out = vec![vec![BigRational::zero(); size]; size];
    for i in 0..size {
        for k in 0..size {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..size {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn trace(a: &Matrix) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// The `q = 1` ring: one operator per basis class and the Euler class.
#[derive(Debug)]
pub struct QuantumRing {
    n: u32,
    basis: Vec<StrictPartition>,
    index: HashMap<StrictPartition, usize>,
    ops: Vec<Matrix>,
    euler: QuantumElement,
    euler_op: Matrix,
}

impl QuantumRing {
    pub fn build(n: u32) -> Result<Self> {
        let table = structure_table(n)?;
        let basis = all_strict(n - 1);
        let index: HashMap<_, _> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let size = basis.len();
        let mut ops = vec![vec![vec![BigRational::zero(); size]; size]; size];
        for e in table.entries() {
            ops[index[&e.lambda]][index[&e.nu]][index[&e.mu]] +=
                BigRational::from_integer(e.c.clone().into());
        }
        let mut sum = QuantumElement::zero();
        for nu in &basis {
            let nu_dual = dual(nu, n - 1)?;
            sum = sum.add(&quantum_product(
                n,
                &QuantumElement::basis(nu.clone()),
                &QuantumElement::basis(nu_dual),
            )?);
        }
        let euler = sum.at_q_one();
        let mut ring = QuantumRing {
            n,
            basis,
            index,
            ops,
            euler_op: Vec::new(),
            euler: euler.clone(),
        };
        ring.euler_op = ring.operator(&euler)?;
        Ok(ring)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &[StrictPartition] {
        &self.basis
    }

    /// `ℰ = Σ_ν τ_ν ∗ τ_{dual(ν)}` at `q = 1`.
    pub fn euler_class(&self) -> &QuantumElement {
        &self.euler
    }

    pub fn euler_operator(&self) -> &Matrix {
        &self.euler_op
    }

    /// Multiplication by `τ_λ` at `q = 1`; entry `[ν][μ]` is `Σ_d c^{ν,d}_{λμ}`.
    pub fn basis_operator(&self, lambda: &StrictPartition) -> Result<&Matrix> {
        let i = self.index.get(lambda).ok_or_else(|| {
            Error::InvalidPartition(format!("{lambda:?} is not in D({})", self.n - 1))
        })?;
        Ok(&self.ops[*i])
    }

    /// Multiplication by an arbitrary element, with `q` set to 1.
    pub fn operator(&self, x: &QuantumElement) -> Result<Matrix> {
        let size = self.basis.len();
        let mut out = vec![vec![BigRational::zero(); size]; size];
        for (nu, _, c) in x.terms() {
            let op = self.basis_operator(nu)?;
            for (row, src) in out.iter_mut().zip(op) {
                for (o, v) in row.iter_mut().zip(src) {
                    if !v.is_zero() {
                        *o += c * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `tr(ℰ^{g-1} τ_{λ^1} ⋯ τ_{λ^k})` as a rational number.
    pub fn trace_of(&self, g: u32, insertions: &[StrictPartition]) -> Result<BigRational> {
        if g == 0 {
            return Err(Error::GenusTooSmall(0));
        }
        let mut acc = identity(self.basis.len());
        for _ in 1..g {
            acc = mat_mul(&acc, &self.euler_op);
        }
        for lam in insertions {
            acc = mat_mul(&acc, self.basis_operator(lam)?);
        }
        Ok(trace(&acc))
    }
}

/// The shared ring for `n`.
pub fn quantum_ring(n: u32) -> Result<Arc<QuantumRing>> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<QuantumRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return Ok(r.clone());
    }
    let built = Arc::new(QuantumRing::build(n)?);
    Ok(cache.lock().unwrap().entry(n).or_insert(built).clone())
}

pub fn euler_class(n: u32) -> Result<QuantumElement> {
    Ok(quantum_ring(n)?.euler_class().clone())
}

/// The invariant by the trace formula; needs `g ≥ 1`.
pub fn trace_invariant(q: &GWQuery) -> Result<BigUint> {
    q.validate()?;
    if q.g == 0 {
        return Err(Error::GenusTooSmall(0));
    }
    if !q.degree_ok() {
        return Ok(BigUint::default());
    }
    let t = quantum_ring(q.n)?.trace_of(q.g, &q.insertions)?;
    if !t.is_integer() || t.is_negative() {
        return Err(Error::NonIntegralResult(format!("trace {t} for {q:?}")));
    }
    Ok(t.to_integer().to_biguint().expect("checked nonnegative"))
}

/// Compares `⟨λ^1, …⟩_{g,d}` with `⟨ρ^{4s}, λ^1, …⟩_{g,d+sn}`.
pub fn genus_recursion_check(
    n: u32,
    g: u32,
    d: i64,
    insertions: &[StrictPartition],
    s: u32,
) -> Result<bool> {
    let base = GWQuery::new(n, g, d, insertions.to_vec());
    base.validate()?;
    let mut lifted = vec![rho(n - 1); 4 * s as usize];
    lifted.extend_from_slice(insertions);
    let shifted = GWQuery::new(n, g, d + (s * n) as i64, lifted);
    Ok(gw_invariant(&base)? == gw_invariant(&shifted)?)
}
