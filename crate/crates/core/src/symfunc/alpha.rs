//! Polynomials in `α_i := ½ e_i`, the coordinates in which symmetric
//! classes are written as `Q(α_1, …, α_m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{half, ptilde, Elementary, PointTuple};
use crate::error::{Error, Result};
use crate::partitions::StrictPartition;
use crate::scalar::Scalar;

/// Sparse polynomial; keys are exponent vectors `(k_1, k_2, …)` with
/// trailing zeros trimmed, so the same value makes sense for any `m`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlphaPolynomial {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trimmed(mut exps: Vec<u32>) -> Vec<u32> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

impl AlphaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    /// The variable `α_i`, `i ≥ 1`.
    pub fn alpha(i: usize) -> Self {
        assert!(i >= 1, "alpha variables are numbered from 1");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Self::monomial(exps, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(trimmed(exps), c);
        out
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted degree `Σ i·k_i` of one exponent vector.
    pub fn term_degree(exps: &[u32]) -> u32 {
        exps.iter()
            .enumerate()
            .map(|(i, k)| (i as u32 + 1) * k)
            .sum()
    }

    /// The common weighted degree, or `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|k| Self::term_degree(k));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Largest variable index that occurs.
    pub fn max_variable(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let len = ka.len().max(kb.len());
                let exps = (0..len)
                    .map(|i| ka.get(i).unwrap_or(&0) + kb.get(i).unwrap_or(&0))
                    .collect();
                out.add_term(exps, va * vb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Substitutes `α_i = ½ e_i`; variables beyond the arity read as zero.
    pub fn evaluate<T: Scalar>(&self, e: &Elementary<T>) -> T {
        let alphas: Vec<T> = (1..=self.max_variable())
            .map(|i| e.get(i as i64).scale(&half()))
            .collect();
        let mut acc = e.get(0).zero_like();
        for (exps, c) in &self.terms {
            let mut term = e.one().scale(c);
            for (alpha, &k) in alphas.iter().zip(exps) {
                if k > 0 {
                    term = term.times(&alpha.pow_u(k as u64));
                }
            }
            acc = acc.plus(&term);
        }
        acc
    }

    /// Parses sums of terms such as `"2*a2 + a1^2"`, `"-1/2*a1*a3^2"`, `"1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty alpha polynomial".into()));
        }
        let mut out = Self::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            let at_split = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-')
                    && bytes[i - 1] != b'^'
                    && bytes[i - 1] != b'*');
            if at_split {
                out = out.add(&parse_term(&compact[start..i])?);
                start = i;
            }
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<AlphaPolynomial> {
    let bad = || Error::Parse(format!("bad alpha term {term:?}"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = BigRational::one();
    let mut exps: Vec<u32> = Vec::new();
    for factor in body.split('*') {
        if let Some(var) = factor.strip_prefix('a') {
            let (idx, pow) = match var.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad())?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 {
                return Err(bad());
            }
            if exps.len() < idx {
                exps.resize(idx, 0);
            }
            exps[idx - 1] += pow;
        } else {
            let c = BigRational::from_str(factor).map_err(|_| bad())?;
            coeff *= c;
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok(AlphaPolynomial::monomial(exps, coeff))
}

impl FromStr for AlphaPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for AlphaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{k}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlphaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlphaPolynomial({self})")
    }
}

impl Scalar for AlphaPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        Self::constant(r.clone())
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-BigRational::one()))
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.scale(&-BigRational::one())
    }
    fn is_zero(&self) -> bool {
        AlphaPolynomial::is_zero(self)
    }
    fn scale(&self, r: &BigRational) -> Self {
        AlphaPolynomial::scale(self, r)
    }
}

/// Evaluates `Q(α)` at a point.
pub fn alpha_evaluate<T: Scalar>(q: &AlphaPolynomial, p: &PointTuple<T>) -> T {
    q.evaluate(&super::elementary(p))
}

/// `P̃_λ` rewritten as a polynomial in `α_1, …, α_m`.
pub fn ptilde_alpha(lambda: &StrictPartition, m: usize) -> Result<AlphaPolynomial> {
    let two = BigRational::from_integer(2.into());
    let mut e = vec![AlphaPolynomial::one()];
    e.extend((1..=m).map(|i| AlphaPolynomial::alpha(i).scale(&two)));
    ptilde(lambda, &Elementary::from_values(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloNum;
    use crate::partitions::rho;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_display() {
        let p = AlphaPolynomial::parse("2*a2 + a1^2").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.to_string(), "2*a2 + a1^2");
        let r = AlphaPolynomial::parse("a1^2*a3").unwrap();
        assert_eq!(r.homogeneous_degree(), Some(5));
        assert_eq!(AlphaPolynomial::parse("1").unwrap(), AlphaPolynomial::one());
        let n = AlphaPolynomial::parse("-1/2*a1 - a1 + 3*a1").unwrap();
        assert_eq!(n, AlphaPolynomial::alpha(1).scale(&q(3, 2)));
        assert!(AlphaPolynomial::parse("a1 + a2")
            .unwrap()
            .homogeneous_degree()
            .is_none());
        assert!(AlphaPolynomial::parse("a0").is_err());
        assert!(AlphaPolynomial::parse("").is_err());
        assert!(AlphaPolynomial::parse("2*b1").is_err());
        assert_eq!(AlphaPolynomial::parse("a1 - a1").unwrap().to_string(), "0");
    }

    #[test]
    fn evaluate_simple() {
        let ones = PointTuple::new(vec![CycloNum::one(4), CycloNum::one(4)]);
        assert_eq!(
            alpha_evaluate(&AlphaPolynomial::one(), &ones),
            CycloNum::one(4)
        );
        assert_eq!(
            alpha_evaluate(&AlphaPolynomial::alpha(1), &ones),
            CycloNum::one(4)
        );
        // α_3 vanishes on two variables.
        assert!(alpha_evaluate(&AlphaPolynomial::alpha(3), &ones).is_zero());
    }

    #[test]
    fn ptilde_in_alpha_coordinates() {
        assert_eq!(
            ptilde_alpha(&StrictPartition::empty(), 3).unwrap(),
            AlphaPolynomial::one()
        );
        let single = StrictPartition::new(vec![2]).unwrap();
        assert_eq!(ptilde_alpha(&single, 3).unwrap(), AlphaPolynomial::alpha(2));
        // P̃_{(2,1)} = α_2 α_1 - α_3 in three variables and α_2 α_1 in two.
        let p3 = ptilde_alpha(&rho(2), 3).unwrap();
        assert_eq!(p3, AlphaPolynomial::parse("a1*a2 - a3").unwrap());
        assert_eq!(
            ptilde_alpha(&rho(2), 2).unwrap(),
            AlphaPolynomial::parse("a1*a2").unwrap()
        );
        assert_eq!(
            ptilde_alpha(&rho(3), 3).unwrap().homogeneous_degree(),
            Some(6)
        );
    }
}
