//! Formal sums `Σ c q^d τ_ν` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::StrictPartition;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuantumElement {
    terms: BTreeMap<(StrictPartition, u32), BigRational>,
}

impl QuantumElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `τ_ν`.
    pub fn basis(nu: StrictPartition) -> Self {
        Self::term(nu, 0, BigRational::one())
    }

    /// `c q^d τ_ν`.
    pub fn term(nu: StrictPartition, d: u32, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(nu, d, c);
        out
    }

    pub fn add_term(&mut self, nu: StrictPartition, d: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (nu, d);
        let sum = self.terms.remove(&key).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Terms in canonical order: by partition, then by power of `q`.
    pub fn terms(&self) -> impl Iterator<Item = (&StrictPartition, u32, &BigRational)> {
        self.terms.iter().map(|((nu, d), c)| (nu, *d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, nu: &StrictPartition, d: u32) -> BigRational {
        self.terms
            .get(&(nu.clone(), d))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (nu, d, c) in rhs.terms() {
            out.add_term(nu.clone(), d, c.clone());
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = Self::zero();
        for (nu, d, c) in self.terms() {
            out.add_term(nu.clone(), d, c * r);
        }
        out
    }

    /// Multiplies every term by `q^k`.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (nu, d, c) in self.terms() {
            out.add_term(nu.clone(), d + k, c.clone());
        }
        out
    }

    /// Sets `q = 1`, collecting terms with the same class.
    pub fn at_q_one(&self) -> Self {
        let mut out = Self::zero();
        for (nu, _, c) in self.terms() {
            out.add_term(nu.clone(), 0, c.clone());
        }
        out
    }

    /// `|ν| + 2 m d` if every term has the same value.
    pub fn grading(&self, m: u32) -> Option<u32> {
        let mut degrees = self.terms().map(|(nu, d, _)| nu.weight() + 2 * m * d);
        let first = degrees.next()?;
        degrees.all(|x| x == first).then_some(first)
    }

    /// Parses the rendering produced by `Display`, e.g. `"2*q^2*t[1] + t[3]"`.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        if compact.is_empty() {
            return Err(Error::Parse("empty quantum element".into()));
        }
        let mut out = Self::zero();
        let mut depth = 0;
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' | '-' if depth == 0 && i > 0 => {
                    parse_term_into(&compact[start..i], &mut out)?;
                    start = i;
                }
                _ => {}
            }
        }
        parse_term_into(&compact[start..], &mut out)?;
        Ok(out)
    }
}

fn parse_term_into(term: &str, out: &mut QuantumElement) -> Result<()> {
    let bad = || Error::Parse(format!("bad quantum term {term:?}"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-BigRational::one(), &term[1..]),
        Some(b'+') => (BigRational::one(), &term[1..]),
        _ => (BigRational::one(), term),
    };
    let mut coeff = sign;
    let mut d = 0;
    let mut nu = None;
    for factor in body.split('*') {
        if let Some(inner) = factor.strip_prefix("t[").and_then(|f| f.strip_suffix(']')) {
            if nu.is_some() {
                return Err(bad());
            }
            nu = Some(StrictPartition::parse(inner)?);
        } else if factor == "q" {
            d += 1;
        } else if let Some(k) = factor.strip_prefix("q^") {
            d += k.parse::<u32>().map_err(|_| bad())?;
        } else {
            coeff *= BigRational::from_str(factor).map_err(|_| bad())?;
        }
    }
    out.add_term(nu.ok_or_else(bad)?, d, coeff);
    Ok(())
}

impl FromStr for QuantumElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (nu, d, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            match d {
                0 => {}
                1 => write!(f, "q*")?,
                _ => write!(f, "q^{d}*")?,
            }
            write!(f, "t[{nu}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantumElement({self})")
    }
}
