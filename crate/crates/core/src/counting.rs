//! Maximal isotropic subbundle counts `N(g, r, ℓ, e_0)` and the
//! intersection numbers `Ñ` they are assembled from.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::partitions::{rho, StrictPartition};
use crate::quantum::{exact_engine, float_engine, gw_invariant, to_natural, Engine, GWQuery};
use crate::scalar::FieldScalar;
use crate::symfunc::AlphaPolynomial;

pub const COUNT_SCHEMA: &str = "ogq-count/1";

/// `I(n, ℓ, e) = -(n-1)e - ½n(n-1)(g-1-ℓ)`.
pub fn expected_dim(n: i64, ell: i64, e: i64, g: i64) -> i64 {
    let first = -(n - 1) * e - n * (n - 1) * (g - 1 - ell) / 2;
    let second = (1 - n) * e + n * (n - 1) * (ell + 1 - g) / 2;
    assert_eq!(
        first, second,
        "the two forms of the expected dimension disagree"
    );
    first
}

/// `I_t = I - ½ n (n-1) t`.
pub fn expected_dim_t(n: i64, ell: i64, e: i64, g: i64, t: i64) -> i64 {
    expected_dim(n, ell, e, g) - n * (n - 1) * t / 2
}

/// The maximal degree `e_0` of a maximal isotropic subbundle of a general
/// stable bundle of rank `r`, when the parity conditions allow one.
pub fn max_iso_degree(rank: u32, g: i64, ell: i64) -> Result<i64> {
    if rank < 3 {
        return Err(Error::UnsupportedRank(rank as i64));
    }
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let n = (rank / 2) as i64;
    if rank.is_multiple_of(2) {
        let t = n * (g - 1 - ell);
        if t.is_odd() {
            return Err(Error::NotApplicable(format!("n(g-1-l) = {t} is odd")));
        }
        Ok(-t / 2)
    } else {
        if ell.is_odd() {
            return Err(Error::NotApplicable(format!(
                "odd rank needs even l, got l = {ell}"
            )));
        }
        let t = (n + 1) * (g - 1);
        if t.is_odd() {
            return Err(Error::NotApplicable(format!("(n+1)(g-1) = {t} is odd")));
        }
        Ok(-t / 2 + n * ell / 2)
    }
}

/// How `ℓ` was split and which power of two multiplies the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum Decomposition {
    /// `ℓ = 4 m_Q - a`, used when the subsheaf degree is even.
    A {
        #[serde(rename = "mQ")]
        m_q: i64,
        a: u32,
        log2_prefactor: i64,
    },
    /// `ℓ = 4k + 2 - b`, used when `n` and the degree are both odd.
    B { k: i64, b: u32, log2_prefactor: i64 },
}

impl Decomposition {
    pub fn offset(&self) -> u32 {
        match self {
            Decomposition::A { a, .. } => *a,
            Decomposition::B { b, .. } => *b,
        }
    }

    pub fn log2_prefactor(&self) -> i64 {
        match self {
            Decomposition::A { log2_prefactor, .. } | Decomposition::B { log2_prefactor, .. } => {
                *log2_prefactor
            }
        }
    }
}

fn not_covered_text(n: i64, e: i64) -> String {
    format!(
        "no closed formula for n = {n} even with odd degree {e}; \
         known exceptional values: N(g,4,0,1-g) = 2*2^g, N(g,3,0,1-g) = 2^g"
    )
}

/// The `ℓ` split for `Ñ` at subsheaf degree `e`; `log2_prefactor` excludes
/// the doubling used by the counts.
fn split(n: i64, ell: i64, e: i64) -> Result<Decomposition> {
    if e.is_even() {
        let m_q = Integer::div_ceil(&ell, &4);
        Ok(Decomposition::A {
            m_q,
            a: (4 * m_q - ell) as u32,
            log2_prefactor: 2 * m_q * n - e,
        })
    } else if n.is_odd() {
        let k = Integer::div_ceil(&(ell - 2), &4);
        Ok(Decomposition::B {
            k,
            b: (4 * k + 2 - ell) as u32,
            log2_prefactor: (2 * k + 1) * n - e,
        })
    } else {
        Err(Error::NotCovered {
            e0: e,
            diagnostic: not_covered_text(n, e),
        })
    }
}

fn power_of_two(k: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::from(2).pow(k.unsigned_abs() as u32));
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// `Σ_J S_ρ^{g-1} P̃_ρ^a Q(ζ^J)`.
fn staircase_sum<T: FieldScalar>(
    engine: &Engine<T>,
    g: u32,
    a: u32,
    q: Option<&AlphaPolynomial>,
) -> T {
    let top = engine.staircase_position();
    engine.weighted_sum(g, |p| {
        let base = p.ptilde[top].pow_u(a as u64);
        match q {
            Some(q) => base.times(&q.evaluate(&p.elementary)),
            None => base,
        }
    })
}

/// Inputs of `Ñ(Q(α); u)` for a bundle of degree `nℓ` and subsheaves of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NQuery {
    pub g: u32,
    pub n: u32,
    pub ell: i64,
    pub e: i64,
    pub u: u32,
    pub q: AlphaPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NTilde {
    pub value: BigRational,
    pub decomposition: Option<Decomposition>,
    /// Set when the number is zero because of a degree mismatch.
    pub diagnostic: Option<String>,
}

pub fn n_tilde(query: &NQuery) -> Result<NTilde> {
    let NQuery {
        g,
        n,
        ell,
        e,
        u,
        ref q,
    } = *query;
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    let dec = split(n as i64, ell, e)?;
    let target = expected_dim_t(n as i64, ell, e, g as i64, u as i64);
    if q.homogeneous_degree().map(i64::from) != Some(target) {
        let found = q
            .homogeneous_degree()
            .map_or("inhomogeneous or zero".into(), |d| d.to_string());
        return Ok(NTilde {
            value: BigRational::zero(),
            decomposition: None,
            diagnostic: Some(format!(
                "weighted degree of Q is {found}, expected I_{u} = {target}"
            )),
        });
    }
    let engine = exact_engine(n)?;
    let sum = staircase_sum(&engine, g, dec.offset() + u, Some(q));
    let value = sum.as_rational()? * power_of_two(dec.log2_prefactor());
    Ok(NTilde {
        value,
        decomposition: Some(dec),
        diagnostic: None,
    })
}

/// A subbundle count and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub g: i64,
    pub rank: u32,
    pub ell: i64,
    pub e0: Option<i64>,
    pub applicable: bool,
    pub required_w2: Option<u8>,
    pub value: Option<BigUint>,
    pub decomposition: Option<Decomposition>,
    pub notes: Vec<String>,
    pub reason: Option<String>,
}

impl CountReport {
    /// The record for a query that has no count, built from the error that said so.
    pub fn unavailable(g: i64, rank: u32, ell: i64, err: &Error) -> Self {
        let e0 = match err {
            Error::NotCovered { e0, .. } => Some(*e0),
            _ => max_iso_degree(rank, g, ell).ok(),
        };
        CountReport {
            g,
            rank,
            ell,
            e0,
            applicable: false,
            required_w2: e0.map(|e| e.rem_euclid(2) as u8),
            value: None,
            decomposition: None,
            notes: Vec::new(),
            reason: Some(format!("{}: {err}", err.kind())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": COUNT_SCHEMA,
            "g": self.g,
            "rank": self.rank,
            "ell": self.ell,
            "e0": self.e0,
            "applicable": self.applicable,
            "required_w2": self.required_w2,
            "N": self.value.as_ref().map(ToString::to_string),
            "decomposition": self.decomposition,
            "notes": self.notes,
            "reason": self.reason,
        })
    }
}

struct Plan {
    n: i64,
    e0: i64,
    dec: Decomposition,
    log2: i64,
}

/// Chooses the formula for rank `2n` and checks the prefactor against its
/// `√2`-form `n(a+g-1) + 2` (or `n(a+g-1)` for odd offsets).
fn even_plan(g: i64, n: i64, ell: i64) -> Result<Plan> {
    if n < 2 {
        return Err(Error::UnsupportedRank(2 * n));
    }
    let e0 = max_iso_degree(2 * n as u32, g, ell)?;
    let dec = split(n, ell, e0)?;
    let a = dec.offset() as i64;
    let bonus = if a.is_even() { 1 } else { 0 };
    let log2 = dec.log2_prefactor() + bonus;
    if 2 * log2 != n * (a + g - 1) + 2 * bonus {
        return Err(Error::CrossCheckFailed(format!(
            "prefactor exponent {log2} disagrees with n(a+g-1) = {}",
            n * (a + g - 1)
        )));
    }
    Ok(Plan { n, e0, dec, log2 })
}

/// The closed values stated for low ranks, with their hypotheses on `g`.
fn low_rank_note(g: i64, rank: u32, ell: i64, value: &BigUint) -> Option<String> {
    let (exp, holds, hypothesis) = match (rank, ell) {
        (4, 0) => (g + 1, g.is_odd(), "g odd, w2 = 0"),
        (3, 0) => (g, g.is_odd(), "g odd, w2 = 0"),
        (6, 0) | (5, 0) => {
            let exp = if rank == 6 { 2 * g + 1 } else { 2 * g };
            (
                exp,
                g.is_odd(),
                "g = 1 mod 4 with w2 = 0, or g = 3 mod 4 with w2 = 1",
            )
        }
        (6, 1) => (2 * g, g.rem_euclid(4) == 2, "g = 2 mod 4, w2 = 0"),
        _ => return None,
    };
    let expected = BigUint::from(2u32).pow(exp as u32);
    let agrees = if *value == expected {
        "agrees"
    } else {
        "differs"
    };
    Some(if holds {
        format!("closed low-rank value 2^{exp} (under {hypothesis}) {agrees}")
    } else {
        format!("outside the hypotheses ({hypothesis}) of the closed low-rank value 2^{exp}; formula value {agrees} with it")
    })
}

/// `N(g, 2n, ℓ, e_0)`, cross-checked against `Ñ`.
pub fn count_even(g: i64, n: u32, ell: i64) -> Result<CountReport> {
    let plan = even_plan(g, n as i64, ell)?;
    let engine = exact_engine(n)?;
    let sum = staircase_sum(&engine, g as u32, plan.dec.offset(), None);
    let value = to_natural(&sum.scale(&power_of_two(plan.log2)), &|| {
        format!("N({g}, {}, {ell})", 2 * n)
    })?;
    let nt = n_tilde(&NQuery {
        g: g as u32,
        n,
        ell,
        e: plan.e0,
        u: 0,
        q: AlphaPolynomial::one(),
    })?;
    let factor = if ell.is_even() { 2 } else { 1 };
    if nt.value * BigRational::from_integer(factor.into())
        != BigRational::from_integer(value.clone().into())
    {
        return Err(Error::CrossCheckFailed(format!(
            "N({g}, {}, {ell}) = {value} but Ñ disagrees",
            2 * n
        )));
    }
    let mut notes = vec![format!("equals {factor}*Ñ(1; 0) at e = e0")];
    notes.extend(low_rank_note(g, 2 * n, ell, &value));
    Ok(CountReport {
        g,
        rank: 2 * n,
        ell,
        e0: Some(plan.e0),
        applicable: true,
        required_w2: Some(plan.e0.rem_euclid(2) as u8),
        value: Some(value),
        decomposition: Some(plan.dec),
        notes,
        reason: None,
    })
}

/// `N(g, 2n+1, ℓ, e_0) = ½ N(g, 2n+2, ℓ, e_0 + ℓ/2)`.
pub fn count_odd(g: i64, n: u32, ell: i64) -> Result<CountReport> {
    if ell.is_odd() {
        return Err(Error::OddEllUnsupported(ell));
    }
    let e0 = max_iso_degree(2 * n + 1, g, ell)?;
    let e0_even = max_iso_degree(2 * n + 2, g, ell)?;
    if e0 + ell / 2 != e0_even {
        return Err(Error::CrossCheckFailed(format!(
            "e0 = {e0} + l/2 differs from the even-rank {e0_even}"
        )));
    }
    let even = count_even(g, n + 1, ell).map_err(|err| match err {
        Error::NotCovered { diagnostic, .. } => Error::NotCovered { e0, diagnostic },
        other => other,
    })?;
    let twice = even.value.expect("applicable count has a value");
    let (value, rem) = twice.div_rem(&BigUint::from(2u32));
    if !rem.is_zero() {
        return Err(Error::NonIntegralResult(format!(
            "half of N(g, {}, ...) = {twice}",
            2 * n + 2
        )));
    }
    let mut notes = vec![format!(
        "half of N({g}, {}, {ell}, {e0_even}) = {twice}",
        2 * n + 2
    )];
    notes.extend(low_rank_note(g, 2 * n + 1, ell, &value));
    Ok(CountReport {
        g,
        rank: 2 * n + 1,
        ell,
        e0: Some(e0),
        applicable: true,
        required_w2: Some(e0.rem_euclid(2) as u8),
        value: Some(value),
        decomposition: even.decomposition,
        notes,
        reason: None,
    })
}

/// Dispatches on the parity of the rank.
pub fn count(g: i64, rank: u32, ell: i64) -> Result<CountReport> {
    if rank < 3 {
        return Err(Error::UnsupportedRank(rank as i64));
    }
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if rank.is_multiple_of(2) {
        count_even(g, rank / 2, ell)
    } else {
        count_odd(g, rank / 2, ell)
    }
}

/// The count in double precision, without the cross-checks.
pub fn count_float(g: i64, rank: u32, ell: i64) -> Result<Complex64> {
    if rank < 3 {
        return Err(Error::UnsupportedRank(rank as i64));
    }
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let (n_even, half) = if rank.is_multiple_of(2) {
        (rank as i64 / 2, false)
    } else {
        if ell.is_odd() {
            return Err(Error::OddEllUnsupported(ell));
        }
        max_iso_degree(rank, g, ell)?;
        (rank as i64 / 2 + 1, true)
    };
    let plan = even_plan(g, n_even, ell)?;
    let engine = float_engine(plan.n as u32)?;
    let v = staircase_sum(&engine, g as u32, plan.dec.offset(), None) * 2f64.powi(plan.log2 as i32);
    Ok(if half { v / 2.0 } else { v })
}

/// `Ñ(Π P̃_{λ^i}; u)` for the trivial bundle, through the GW invariant it equals.
pub fn trivial_bundle_number(
    g: u32,
    n: u32,
    e: i64,
    u: u32,
    insertions: &[StrictPartition],
) -> Result<BigUint> {
    if e.is_odd() || e > 0 {
        return Err(Error::OddDegreeUnsupported(e));
    }
    if n < 2 {
        return Err(Error::UnsupportedRank(n as i64));
    }
    let mut all = vec![rho(n - 1); u as usize];
    all.extend_from_slice(insertions);
    gw_invariant(&GWQuery::new(n, g, -e / 2, all))
}

/// `Π P̃_{λ^i}(α)`.
pub fn ptilde_product_alpha(insertions: &[StrictPartition], m: u32) -> Result<AlphaPolynomial> {
    let mut q = AlphaPolynomial::one();
    for lam in insertions {
        q = q.mul(&crate::symfunc::ptilde_alpha(lam, m as usize)?);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_of(r: &CountReport) -> u64 {
        r.value
            .as_ref()
            .map(|v| v.to_u64_digits().first().copied().unwrap_or(0))
            .unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(expected_dim(2, 0, -2, 3), 0);
        assert_eq!(expected_dim(3, 0, -6, 5), 0);
        assert_eq!(expected_dim_t(2, 0, -2, 3, 1), -1);
        assert_eq!(expected_dim_t(3, 0, -6, 5, 2), -6);
    }

    #[test]
    fn maximal_degrees() {
        assert_eq!(max_iso_degree(4, 3, 0).unwrap(), -2);
        assert_eq!(max_iso_degree(5, 5, 0).unwrap(), -6);
        assert!(matches!(
            max_iso_degree(6, 4, 0),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(max_iso_degree(2, 3, 0), Err(Error::UnsupportedRank(2)));
        assert_eq!(max_iso_degree(4, 1, 0), Err(Error::GenusTooSmall(1)));
    }

    #[test]
    fn headline_counts() {
        assert_eq!(n_of(&count(3, 4, 0).unwrap()), 16);
        assert_eq!(n_of(&count(5, 6, 0).unwrap()), 2048);
        assert_eq!(n_of(&count(6, 6, 1).unwrap()), 4096);
        assert_eq!(n_of(&count(3, 3, 0).unwrap()), 8);
        assert_eq!(n_of(&count(5, 5, 0).unwrap()), 1024);
    }

    #[test]
    fn not_covered_and_odd_ell() {
        assert!(matches!(
            count(2, 3, 0),
            Err(Error::NotCovered { e0: -1, .. })
        ));
        assert!(matches!(count(4, 4, 0), Err(Error::NotCovered { .. })));
        assert_eq!(count(3, 5, 1), Err(Error::OddEllUnsupported(1)));
    }

    #[test]
    fn n_tilde_examples() {
        let q = |g, n, e| NQuery {
            g,
            n,
            ell: 0,
            e,
            u: 0,
            q: AlphaPolynomial::one(),
        };
        assert_eq!(
            n_tilde(&q(3, 2, -2)).unwrap().value,
            BigRational::from_integer(8.into())
        );
        assert_eq!(
            n_tilde(&q(5, 3, -6)).unwrap().value,
            BigRational::from_integer(1024.into())
        );
        let wrong = NQuery {
            q: AlphaPolynomial::alpha(1),
            ..q(3, 2, -2)
        };
        let r = n_tilde(&wrong).unwrap();
        assert!(r.value.is_zero() && r.diagnostic.is_some());
        assert!(matches!(
            n_tilde(&NQuery {
                e: -1,
                ..q(3, 2, -1)
            }),
            Err(Error::NotCovered { .. })
        ));
    }

    #[test]
    fn bridge_sample() {
        assert_eq!(
            trivial_bundle_number(3, 2, -2, 0, &[]).unwrap(),
            8u32.into()
        );
        assert_eq!(
            trivial_bundle_number(3, 2, -1, 0, &[]),
            Err(Error::OddDegreeUnsupported(-1))
        );
        assert_eq!(
            trivial_bundle_number(3, 2, 2, 0, &[]),
            Err(Error::OddDegreeUnsupported(2))
        );
    }

    #[test]
    fn report_json_shape() {
        let v = count(3, 4, 0).unwrap().to_json();
        assert_eq!(v["schema"], "ogq-count/1");
        assert_eq!(v["N"], "16");
        assert_eq!(v["decomposition"]["variant"], "A");
        let na = CountReport::unavailable(4, 6, 0, &max_iso_degree(6, 4, 0).unwrap_err()).to_json();
        assert_eq!(na["applicable"], false);
        assert!(na["N"].is_null());
    }

    #[test]
    fn float_counts() {
        for (g, r, l, want) in [(3, 4, 0, 16.0), (5, 5, 0, 1024.0), (6, 6, 1, 4096.0)] {
            let v = count_float(g, r, l).unwrap();
            assert!((v.re - want).abs() < 1e-6 * want && v.im.abs() < 1e-6 * want);
        }
    }
}
