//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ω)`, `ω = exp(2πi/N)`, is stored in the power basis
//! `1, ω, …, ω^{φ(N)-1}` of `Q[x]/Φ_N(x)`. Because `Φ_N` is irreducible
//! every nonzero element is invertible.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients of `Φ_N`, lowest degree first.
///
/// Computed by dividing `x^N - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(order: u32) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic order must be positive");
    field(order).modulus.clone()
}

fn compute_cyclotomic(order: u32) -> Vec<BigInt> {
    let n = order as usize;
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::from(-1);
    poly[n] = BigInt::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &field(d).modulus);
        }
    }
    poly
}

/// Quotient of `num` by the monic `den`; the remainder must vanish.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The quotient ring data for one order `N`. Shared by every element at
/// that order.
pub struct CyclotomicField {
    order: u32,
    /// Monic `Φ_N`, lowest degree first; length `φ(N) + 1`.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Euler totient of the order, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

fn field(order: u32) -> Arc<CyclotomicField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return f.clone();
    }
    // Computed outside the lock: the recursion needs the fields of the divisors.
    let modulus = if order == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        compute_cyclotomic(order)
    };
    let built = Arc::new(CyclotomicField { order, modulus });
    cache.lock().unwrap().entry(order).or_insert(built).clone()
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        let coeffs = vec![BigRational::zero(); field.degree()];
        CycloNum { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_integer(order: u32, value: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(order: u32, value: BigRational) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    /// Builds an element from an arbitrary-length polynomial in `ω`,
    /// reducing it modulo `Φ_N`.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Self {
        let field = field(order);
        let coeffs = reduce_rational(&field, poly);
        CycloNum { field, coeffs }
    }

    /// `ω^k` with `ω = exp(2πi/N)`; `k` is taken modulo `N`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(order, poly)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Power-basis coordinates; length `φ(N)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The constant coordinate, provided all the others vanish.
    pub fn as_rational(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational)
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (gcd, s) = poly::ext_gcd(&self.coeffs, &modulus);
        // Φ_N is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(gcd.len(), 1);
        let inv_c = gcd[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_c).collect();
        Ok(Self::from_poly(self.order(), s))
    }

    /// Binary exponentiation; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        Ok(base.pow_unsigned(k.unsigned_abs()))
    }

    pub(crate) fn pow_unsigned(&self, mut k: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates the representative at `exp(2πi/N)` in double precision.
    pub fn embed_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "cyclotomic order mismatch: {} vs {}",
            self.order(),
            other.order()
        );
    }
}

/// Reduces a rational polynomial modulo the monic integer `Φ_N`.
fn reduce_rational(field: &CyclotomicField, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let deg = field.degree();
    for k in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[k]);
        if c.is_zero() {
            continue;
        }
        for (i, m) in field.modulus[..deg].iter().enumerate() {
            poly[k - deg + i] -= &c * m;
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

/// Clears denominators: returns integer numerators and their common denominator.
fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        CycloNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        CycloNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.assert_same_field(rhs);
        let deg = self.field.degree();
        let (a, da) = integer_form(&self.coeffs);
        let (b, db) = integer_form(&rhs.coeffs);
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let modulus = &self.field.modulus;
        for k in (deg..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus[..deg].iter().enumerate() {
                if !m.is_zero() {
                    prod[k - deg + i] -= &c * m;
                }
            }
        }
        let den = da * db;
        let coeffs = prod
            .into_iter()
            .take(deg)
            .map(|c| BigRational::new(c, den.clone()))
            .collect();
        CycloNum {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.order(), self)
    }
}

/// Renders the representative as a polynomial in `w`, e.g. `1/2 - w^3`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "w")?,
                (_, false) => write!(f, "{mag}*w")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense polynomial helpers over `Q`, lowest degree first.
mod poly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigRational::zero());
        }
        p
    }

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let den = trim(den.to_vec());
        let mut rem = trim(num.to_vec());
        let dn = den.len() - 1;
        if rem.len() <= dn {
            return (vec![BigRational::zero()], rem);
        }
        let lead_inv = den[dn].recip();
        let mut quot = vec![BigRational::zero(); rem.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dn.max(1));
        (trim(quot), trim(rem))
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let len = a.len().max(b.len());
        let zero = BigRational::zero();
        trim(
            (0..len)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod f)` and `g = gcd(a, f)`.
    pub(super) fn ext_gcd(
        a: &[BigRational],
        f: &[BigRational],
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = trim(f.to_vec());
        let mut r1 = trim(a.to_vec());
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![num_traits::One::one()];
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}
