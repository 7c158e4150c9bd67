use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{Cyclotomic, ExactError, Rational};

/// Sparse univariate polynomial in a formal indeterminate `t` with
/// coefficients in `Q(ζ_N)`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycPolynomial {
    order: u32,
    terms: BTreeMap<u64, Cyclotomic>,
}

impl CycPolynomial {
    pub fn zero(order: u32) -> Self {
        CycPolynomial {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Cyclotomic::one(order))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^exp`.
    pub fn monomial(c: Cyclotomic, exp: u64) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        CycPolynomial { order, terms }
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::constant(Cyclotomic::from_integer(order, n))
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(
        order: u32,
        terms: impl IntoIterator<Item = (u64, Cyclotomic)>,
    ) -> Result<Self, ExactError> {
        let mut out = Self::zero(order);
        for (e, c) in terms {
            out = out.checked_add(&Self::monomial(c, e))?;
        }
        Ok(out)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Cyclotomic)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: u64) -> Cyclotomic {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.degree() {
            None => Some(Cyclotomic::zero(self.order)),
            Some(0) => Some(self.terms[&0].clone()),
            Some(_) => None,
        }
    }

    fn common_order(&self, other: &Self) -> Result<u32, ExactError> {
        match (self.order, other.order) {
            (a, b) if a == b => Ok(a),
            (a, 1) => Ok(a),
            (1, b) => Ok(b),
            (a, b) => Err(ExactError::OrderMismatch(a, b)),
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self, ExactError> {
        let order = self.common_order(other)?;
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let updated = match terms.get(&e) {
                Some(a) if negate => a.checked_sub(c)?,
                Some(a) => a.checked_add(c)?,
                None if negate => -c,
                None => c.clone(),
            };
            if updated.is_zero() {
                terms.remove(&e);
            } else {
                terms.insert(e, updated);
            }
        }
        Ok(CycPolynomial { order, terms })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, true)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.common_order(other)?;
        let mut terms: BTreeMap<u64, Cyclotomic> = BTreeMap::new();
        for (&ea, a) in &self.terms {
            for (&eb, b) in &other.terms {
                let p = a.checked_mul(b)?;
                let e = ea.checked_add(eb).ok_or(ExactError::DegreeOverflow)?;
                match terms.remove(&e) {
                    Some(prev) => {
                        let s = prev.checked_add(&p)?;
                        if !s.is_zero() {
                            terms.insert(e, s);
                        }
                    }
                    None => {
                        if !p.is_zero() {
                            terms.insert(e, p);
                        }
                    }
                }
            }
        }
        Ok(CycPolynomial { order, terms })
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self, ExactError> {
        self.checked_mul(&Self::constant(c.clone()))
    }

    /// Polynomial long division over `Q(ζ_N)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactError> {
        let order = self.common_order(divisor)?;
        let (dd, lead) = match divisor.terms.iter().next_back() {
            Some((&e, c)) => (e, c.inverse()?),
            None => return Err(ExactError::DivisionByZero),
        };
        let mut rem = self.clone();
        rem.order = order;
        let mut quot = Self::zero(order);
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.terms[&rd].checked_mul(&lead)?;
            let step = Self::monomial(c, rd - dd);
            rem = rem.checked_sub(&step.checked_mul(divisor)?)?;
            quot = quot.checked_add(&step)?;
        }
        Ok((quot, rem))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ExactError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(ExactError::InexactDivision);
        }
        Ok(q)
    }

    /// Exact value at a rational point; the result lies in `Q(ζ_N)`.
    pub fn eval_rational(&self, t: &Rational) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.order);
        for (&e, c) in &self.terms {
            let p = t.pow(u32::try_from(e).expect("exponent too large for exact evaluation"));
            acc = &acc + &c.scale(&p);
        }
        acc
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&e, c)| c.to_complex() * t.powf(e as f64))
            .sum()
    }

    /// Value at `t = exp(2πiτ)`. Each power is computed from the reduced
    /// angle `frac(τ·e)` so large exponents keep full double precision.
    pub fn eval_unit(&self, tau: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&e, c)| c.to_complex() * unit_power(tau, e))
            .sum()
    }
}

/// `exp(2πi τ e)` with the angle reduced before the trigonometric call.
pub fn unit_power(tau: f64, e: u64) -> Complex64 {
    let frac = (tau.fract() * e as f64).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * frac)
}

impl From<Cyclotomic> for CycPolynomial {
    fn from(c: Cyclotomic) -> Self {
        CycPolynomial::constant(c)
    }
}

impl fmt::Debug for CycPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycPolynomial[{}]({})", self.order, self)
    }
}

impl fmt::Display for CycPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]t")?,
                _ => write!(f, "[{c}]t^{e}")?,
            }
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycPolynomial> for &CycPolynomial {
            type Output = CycPolynomial;
            fn $m(self, rhs: &CycPolynomial) -> CycPolynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &CycPolynomial {
    type Output = CycPolynomial;
    fn neg(self) -> CycPolynomial {
        CycPolynomial {
            order: self.order,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}
