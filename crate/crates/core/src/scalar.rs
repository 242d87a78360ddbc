//! The arithmetic the symmetric-function code is generic over.
//!
//! Exact evaluation runs over [`CycloNum`]; the float fast path runs the
//! same code over [`Complex64`]. Constants are built "like" an existing
//! value because a cyclotomic zero needs to know its order.

use std::fmt::Debug;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclotomic::CycloNum;

pub trait Scalar: Clone + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, r: &BigRational) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn scale(&self, r: &BigRational) -> Self {
        self.times(&self.from_rational_like(r))
    }

    fn pow_u(&self, mut k: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

pub trait FieldScalar: Scalar {
    fn try_inv(&self) -> Option<Self>;

    fn pow_i(&self, k: i64) -> Option<Self> {
        if k < 0 {
            Some(self.try_inv()?.pow_u(k.unsigned_abs()))
        } else {
            Some(self.pow_u(k as u64))
        }
    }
}

impl Scalar for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CycloNum::one(self.order())
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        CycloNum::from_rational(self.order(), r.clone())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn scale(&self, r: &BigRational) -> Self {
        CycloNum::scale(self, r)
    }
    fn pow_u(&self, k: u64) -> Self {
        self.pow_unsigned(k)
    }
}

impl FieldScalar for CycloNum {
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl FieldScalar for Complex64 {
    fn try_inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
}
