//! Per-rank evaluation data and the closed genus-g formula.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::index::{eval_points, IndexTuple};
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::partitions::{all_strict, rho, staircase_weight, StrictPartition};
use crate::scalar::FieldScalar;
use crate::symfunc::{elementary, ptilde, schur_value, Elementary, PointTuple};

/// A query `⟨τ_{λ^1}, …, τ_{λ^k}⟩_{g,d}` on `OG(n)_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWQuery {
    pub n: u32,
    pub g: u32,
    pub d: i64,
    pub insertions: Vec<StrictPartition>,
}

impl GWQuery {
    pub fn new(n: u32, g: u32, d: i64, insertions: Vec<StrictPartition>) -> Self {
        GWQuery {
            n,
            g,
            d,
            insertions,
        }
    }

    /// Rejects `n < 2`, `d < 0` and insertions outside `D(n-1)`.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::UnsupportedRank(self.n as i64));
        }
        if self.d < 0 {
            return Err(Error::NegativeDegree(self.d));
        }
        for lam in &self.insertions {
            lam.check(self.n - 1)?;
        }
        Ok(())
    }

    /// The dimension constraint `Σ|λ^i| = ½n(n-1)(1-g) + 2(n-1)d`.
    pub fn degree_ok(&self) -> bool {
        let n = self.n as i64;
        let weight: i64 = self.insertions.iter().map(|l| l.weight() as i64).sum();
        2 * weight == n * (n - 1) * (1 - self.g as i64) + 4 * (n - 1) * self.d
    }
}

/// What the closed formula needs at one point `ζ^J`.
#[derive(Clone, Debug)]
pub struct PointData<T> {
    pub source: IndexTuple,
    pub elementary: Elementary<T>,
    pub s_rho: T,
    pub s_rho_inv: T,
    /// `P̃_λ(ζ^J)` for every basis partition, in [`all_strict`] order.
    pub ptilde: Vec<T>,
}

/// Evaluation data for `OG(n)_0`, generic over the number system.
#[derive(Debug)]
pub struct Engine<T> {
    n: u32,
    basis: Vec<StrictPartition>,
    index: HashMap<StrictPartition, usize>,
    points: Vec<PointData<T>>,
}

impl<T: FieldScalar> Engine<T> {
    /// Builds the engine from the points of `I_{n-1}` in a chosen number system.
    pub fn from_points(n: u32, points: Vec<(IndexTuple, PointTuple<T>)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedRank(n as i64));
        }
        let m = n - 1;
        let basis = all_strict(m);
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let staircase = rho(m);
        let points = points
            .into_par_iter()
            .map(|(source, p)| {
                let e = elementary(&p);
                let s_rho = schur_value(staircase.parts(), &p)?;
                let s_rho_inv = s_rho.try_inv().ok_or(Error::DivisionByZero)?;
                let ptilde = basis
                    .iter()
                    .map(|l| ptilde(l, &e))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PointData {
                    source,
                    elementary: e,
                    s_rho,
                    s_rho_inv,
                    ptilde,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Engine {
            n,
            basis,
            index,
            points,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.n - 1
    }

    /// `D(n-1)` in canonical order.
    pub fn basis(&self) -> &[StrictPartition] {
        &self.basis
    }

    pub fn points(&self) -> &[PointData<T>] {
        &self.points
    }

    pub fn position(&self, lambda: &StrictPartition) -> Result<usize> {
        self.index
            .get(lambda)
            .copied()
            .ok_or_else(|| Error::InvalidPartition(format!("{lambda:?} is not in D({})", self.m())))
    }

    pub fn staircase_position(&self) -> usize {
        self.basis.len() - 1
    }

    /// `S_ρ(ζ^J)^{g-1}` at one point.
    pub fn genus_weight(&self, point: &PointData<T>, g: u32) -> T {
        if g == 0 {
            point.s_rho_inv.clone()
        } else {
            point.s_rho.pow_u(g as u64 - 1)
        }
    }

    /// `Σ_J S_ρ^{g-1} · f(J)`, in parallel.
    pub fn weighted_sum<F>(&self, g: u32, f: F) -> T
    where
        F: Fn(&PointData<T>) -> T + Sync,
    {
        let zero = self.points[0].s_rho.zero_like();
        self.points
            .par_iter()
            .map(|p| self.genus_weight(p, g).times(&f(p)))
            .reduce(|| zero.clone(), |a, b| a.plus(&b))
    }

    /// The closed formula without the degree check: `4^d Σ_J S_ρ^{g-1} Π P̃_{λ^i}`.
    pub fn formula(&self, g: u32, d: u32, insertions: &[usize]) -> T {
        let mut counts = vec![0u64; self.basis.len()];
        for &i in insertions {
            counts[i] += 1;
        }
        let used: Vec<(usize, u64)> = counts
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect();
        let sum = self.weighted_sum(g, |p| {
            let mut acc = p.s_rho.one_like();
            for &(i, c) in &used {
                acc = acc.times(&p.ptilde[i].pow_u(c));
            }
            acc
        });
        sum.scale(&BigRational::from_integer(
            BigUint::from(4u32).pow(d).into(),
        ))
    }

    /// Evaluates a validated query; zero when the degree condition fails.
    pub fn evaluate(&self, q: &GWQuery) -> Result<Option<T>> {
        q.validate()?;
        if q.n != self.n {
            return Err(Error::UnsupportedRank(q.n as i64));
        }
        if !q.degree_ok() {
            return Ok(None);
        }
        let idx = q
            .insertions
            .iter()
            .map(|l| self.position(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(self.formula(q.g, q.d as u32, &idx)))
    }

    /// `½ n (n - 1)`.
    pub fn dimension(&self) -> u32 {
        staircase_weight(self.m())
    }
}

/// Number systems that have a shared, write-once engine cache.
pub trait CachedScalar: FieldScalar + 'static {
    fn engine_cache() -> &'static Mutex<HashMap<u32, Arc<Engine<Self>>>>;
}

impl CachedScalar for CycloNum {
    fn engine_cache() -> &'static Mutex<HashMap<u32, Arc<Engine<Self>>>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Engine<CycloNum>>>>> = OnceLock::new();
        CACHE.get_or_init(Default::default)
    }
}

impl CachedScalar for Complex64 {
    fn engine_cache() -> &'static Mutex<HashMap<u32, Arc<Engine<Self>>>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Engine<Complex64>>>>> = OnceLock::new();
        CACHE.get_or_init(Default::default)
    }
}

fn cached<T, F>(n: u32, build: F) -> Result<Arc<Engine<T>>>
where
    T: CachedScalar,
    F: FnOnce() -> Result<Engine<T>>,
{
    if let Some(e) = T::engine_cache().lock().unwrap().get(&n) {
        return Ok(e.clone());
    }
    // Built outside the lock; a concurrent builder of the same n loses the race harmlessly.
    let built = Arc::new(build()?);
    Ok(T::engine_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(built)
        .clone())
}

/// The shared exact engine for `OG(n)_0`.
pub fn exact_engine(n: u32) -> Result<Arc<Engine<CycloNum>>> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    cached(n, || {
        let points = eval_points(n - 1)
            .into_iter()
            .map(|p| (p.source, p.point))
            .collect();
        Engine::from_points(n, points)
    })
}

/// The shared double-precision engine, built from the complex embeddings
/// of the exact points.
pub fn float_engine(n: u32) -> Result<Arc<Engine<Complex64>>> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    cached(n, || {
        let points = eval_points(n - 1)
            .into_iter()
            .map(|p| {
                let values = p
                    .point
                    .values()
                    .iter()
                    .map(CycloNum::embed_complex)
                    .collect();
                (p.source, PointTuple::new(values))
            })
            .collect();
        Engine::from_points(n, points)
    })
}

/// Reads an exact formula value as a nonnegative integer.
pub fn to_natural(value: &CycloNum, what: &dyn Fn() -> String) -> Result<BigUint> {
    let r = value
        .as_rational()
        .map_err(|_| Error::NonIntegralResult(format!("{} is irrational: {value}", what())))?;
    if !r.is_integer() || r.is_negative() {
        return Err(Error::NonIntegralResult(format!("{} = {r}", what())));
    }
    Ok(r.to_integer().to_biguint().expect("checked nonnegative"))
}

/// `⟨τ_{λ^1}, …⟩_{g,d}` by the closed formula.
pub fn gw_invariant(q: &GWQuery) -> Result<BigUint> {
    q.validate()?;
    let engine = exact_engine(q.n)?;
    match engine.evaluate(q)? {
        None => Ok(BigUint::default()),
        Some(v) => to_natural(&v, &|| format!("{q:?}")),
    }
}

/// The same formula in double precision; the raw complex value.
pub fn gw_invariant_float(q: &GWQuery) -> Result<Complex64> {
    q.validate()?;
    let engine = float_engine(q.n)?;
    Ok(engine.evaluate(q)?.unwrap_or_default())
}

/// Nearest integer to a float formula value, if it is one within `rel_tol`.
pub fn float_to_integer(v: Complex64, rel_tol: f64) -> Option<f64> {
    let nearest = v.re.round();
    let scale = nearest.abs().max(1.0);
    ((v.re - nearest).abs() <= rel_tol * scale && v.im.abs() <= rel_tol * scale).then_some(nearest)
}

/// Relative distance between a float value and an exact integer.
pub fn relative_error(v: Complex64, exact: &BigUint) -> f64 {
    let e = exact.to_f64().unwrap_or(f64::INFINITY);
    (v - Complex64::new(e, 0.0)).norm() / e.abs().max(1.0)
}

/// `⟨τ_λ, τ_μ, τ_{dual(ν)}⟩_{0,d}`, the coefficient of `q^d τ_ν` in `τ_λ ∗ τ_μ`.
pub fn three_point(
    n: u32,
    lambda: &StrictPartition,
    mu: &StrictPartition,
    nu: &StrictPartition,
    d: i64,
) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    let nu_dual = crate::partitions::dual(nu, n - 1)?;
    gw_invariant(&GWQuery::new(
        n,
        0,
        d,
        vec![lambda.clone(), mu.clone(), nu_dual],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn degree_condition_examples() {
        assert!(GWQuery::new(2, 0, 1, vec![sp(&[1]); 3]).degree_ok());
        assert!(GWQuery::new(2, 0, 0, vec![sp(&[1])]).degree_ok());
        assert!(!GWQuery::new(3, 0, 0, vec![sp(&[1])]).degree_ok());
    }

    #[test]
    fn projective_line_and_space() {
        assert_eq!(
            gw_invariant(&GWQuery::new(2, 0, 1, vec![sp(&[1]); 3])).unwrap(),
            1u32.into()
        );
        let q = GWQuery::new(3, 0, 1, vec![sp(&[1]), sp(&[2, 1]), sp(&[2, 1])]);
        assert_eq!(gw_invariant(&q).unwrap(), 1u32.into());
        assert_eq!(
            three_point(3, &sp(&[1]), &sp(&[1]), &sp(&[2]), 0).unwrap(),
            1u32.into()
        );
        assert_eq!(
            three_point(2, &sp(&[1]), &sp(&[]), &sp(&[1]), 0).unwrap(),
            1u32.into()
        );
        assert_eq!(
            three_point(2, &sp(&[1]), &sp(&[1]), &sp(&[]), 1).unwrap(),
            1u32.into()
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            gw_invariant(&GWQuery::new(2, 0, -1, vec![])),
            Err(Error::NegativeDegree(-1))
        );
        assert_eq!(
            gw_invariant(&GWQuery::new(1, 0, 0, vec![])),
            Err(Error::UnsupportedRank(1))
        );
        assert!(matches!(
            gw_invariant(&GWQuery::new(2, 0, 0, vec![sp(&[2])])),
            Err(Error::InvalidPartition(_))
        ));
        assert_eq!(
            gw_invariant(&GWQuery::new(3, 0, 0, vec![sp(&[1])])).unwrap(),
            0u32.into()
        );
    }

    #[test]
    fn staircase_schur_at_m_two() {
        // S_ρ = √2, √-2, -√-2, -√2 on the four points of I_2, in some order.
        let e = exact_engine(3).unwrap();
        let mut squares: Vec<_> = e
            .points()
            .iter()
            .map(|p| (&p.s_rho * &p.s_rho).as_rational().unwrap())
            .collect();
        squares.sort();
        let two = BigRational::from_integer(2.into());
        assert_eq!(squares, vec![-two.clone(), -two.clone(), two.clone(), two]);
    }

    #[test]
    fn float_agrees_on_small_cases() {
        let q = GWQuery::new(3, 0, 1, vec![sp(&[1]), sp(&[2, 1]), sp(&[2, 1])]);
        let v = gw_invariant_float(&q).unwrap();
        assert_eq!(float_to_integer(v, 1e-9), Some(1.0));
        assert!(relative_error(v, &1u32.into()) < 1e-9);
    }
}
