//! The cyclotomic field `Q(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! modulo the N-th cyclotomic polynomial.
//!
//! Elements store integer numerators over one common positive denominator.
//! After every operation the representation is normalized so that the
//! numerators and the denominator share no common factor, which keeps the
//! zero test and equality purely structural.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Integer-coefficient univariate polynomial, coefficients low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{a}x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Returns Φ_N, computed by dividing `x^N - 1` by every Φ_d with `d | N`, `d < N`.
pub fn cyclotomic_polynomial(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    IntPolynomial {
        coeffs: field(n).modulus.clone(),
    }
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = div_monic(&p, &field(d).modulus);
        }
    }
    p
}

/// Exact division by a monic divisor; panics if a remainder is left.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

pub(crate) struct Field {
    phi: usize,
    /// Φ_N, low degree first, monic.
    modulus: Vec<i64>,
    /// `x^k mod Φ_N` for `k < max(2φ-1, N)`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn new(order: u32) -> Field {
        let modulus = if order == 1 {
            vec![-1, 1]
        } else {
            compute_cyclotomic(order)
        };
        let phi = modulus.len() - 1;
        let count = (2 * phi).saturating_sub(1).max(order as usize);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(modulus[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        Field {
            phi,
            modulus,
            powers,
        }
    }

    fn reduce(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        if prod.len() <= phi {
            prod.resize(phi, BigInt::zero());
            return prod;
        }
        let high = prod.split_off(phi);
        for (off, c) in high.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.powers[phi + off];
            for (slot, &r) in prod.iter_mut().zip(row.iter()) {
                if r != 0 {
                    *slot += &c * r;
                }
            }
        }
        prod
    }
}

const SMALL_FIELDS: usize = 1024;

pub(crate) fn field(order: u32) -> &'static Field {
    static SMALL: [OnceLock<Field>; SMALL_FIELDS] = [const { OnceLock::new() }; SMALL_FIELDS];
    static LARGE: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
    assert!(order >= 1, "cyclotomic order must be positive");
    if (order as usize) < SMALL_FIELDS {
        return SMALL[order as usize].get_or_init(|| Field::new(order));
    }
    let map = LARGE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().unwrap().get(&order) {
        return f;
    }
    // built outside the lock: construction recurses into `field` for divisors
    let built: &'static Field = Box::leak(Box::new(Field::new(order)));
    map.lock().unwrap().entry(order).or_insert(built)
}

/// Euler's totient, the degree of Φ_N.
pub fn euler_phi(n: u32) -> usize {
    field(n).phi
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let phi = field(order).phi;
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = n.into();
        z
    }

    pub fn from_rational(order: u32, r: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z
    }

    /// `ζ_N^e`; negative exponents are taken modulo N.
    pub fn root_of_unity(order: u32, e: i64) -> Self {
        let f = field(order);
        let e = e.rem_euclid(order as i64) as usize;
        Cyclotomic {
            order,
            num: f.powers[e].iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// Builds `Σ c_k ζ^k` from coefficients of any length, reducing mod Φ_N.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        let f = field(order);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut prod: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        // fold exponents >= 2φ-1 down using ζ^N = 1 first
        if prod.len() > f.powers.len() {
            let n = order as usize;
            let mut folded = vec![BigInt::zero(); n.max(1)];
            for (k, c) in prod.into_iter().enumerate() {
                folded[k % n] += c;
            }
            prod = folded;
        }
        let mut out = Cyclotomic {
            order,
            num: f.reduce(prod),
            den,
        };
        out.normalize();
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coefficients, length φ(N).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::from_inner(BigRational::new(n.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::from_inner(BigRational::new(
                self.num[0].clone(),
                self.den.clone(),
            )))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den = &self.den / &g;
            for c in &mut self.num {
                *c = &*c / &g;
            }
        }
    }

    fn common_order(&self, other: &Self) -> Result<u32, ExactError> {
        if self.order == other.order || other.order == 1 {
            Ok(self.order)
        } else if self.order == 1 {
            Ok(other.order)
        } else {
            Err(ExactError::OrderMismatch(self.order, other.order))
        }
    }

    fn lift(&self, order: u32) -> std::borrow::Cow<'_, Self> {
        if self.order == order {
            std::borrow::Cow::Borrowed(self)
        } else {
            // only rationals are lifted implicitly
            let mut z = Self::zero(order);
            z.num[0] = self.num[0].clone();
            z.den = self.den.clone();
            std::borrow::Cow::Owned(z)
        }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Result<Self, ExactError> {
        let order = self.common_order(other)?;
        let (a, b) = (self.lift(order), other.lift(order));
        let num: Vec<BigInt> = if a.den == b.den {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| if negate { x - y } else { x + y })
                .collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den {
            a.den.clone()
        } else {
            &a.den * &b.den
        };
        let mut out = Cyclotomic { order, num, den };
        out.normalize();
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.add_signed(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.add_signed(other, true)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.common_order(other)?;
        if self.order == 1 || other.order == 1 {
            let (r, c) = if self.order == 1 && order != 1 {
                (self, other)
            } else {
                (other, self)
            };
            let scalar = &r.num[0];
            let mut out = Cyclotomic {
                order,
                num: c.num.iter().map(|x| x * scalar).collect(),
                den: &c.den * &r.den,
            };
            out.normalize();
            return Ok(out);
        }
        let f = field(order);
        let mut prod = vec![BigInt::zero(); 2 * f.phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = Cyclotomic {
            order,
            num: f.reduce(prod),
            den: &self.den * &other.den,
        };
        out.normalize();
        Ok(out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let f = field(self.order);
        let modulus: QPoly = QPoly::from_ints(&f.modulus);
        let a = QPoly::new(self.coeffs().into_iter().map(Rational::into_inner).collect());
        // invariant: s_i * a ≡ r_i (mod Φ_N)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ_N is irreducible, so the last nonzero remainder is a constant
        debug_assert_eq!(r0.degree(), Some(0));
        let c = r0.0[0].recip();
        let coeffs: Vec<Rational> = s0
            .0
            .into_iter()
            .map(|x| Rational::from_inner(x * &c))
            .collect();
        Ok(Self::from_coeffs(self.order, &coeffs))
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let f = field(self.order);
        let n = self.order as usize;
        let mut acc = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[(n - k % n) % n];
            for (slot, &r) in acc.iter_mut().zip(row) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        let mut out = Cyclotomic {
            order: self.order,
            num: acc,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Re-expresses the element in `Q(ζ_M)` for a multiple M of the order.
    pub fn embed(&self, order: u32) -> Result<Self, ExactError> {
        if !order.is_multiple_of(self.order) {
            return Err(ExactError::OrderMismatch(self.order, order));
        }
        let step = (order / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); (self.num.len() - 1) * step + 1];
        for (k, c) in self.coeffs().into_iter().enumerate() {
            coeffs[k * step] = c;
        }
        Ok(Self::from_coeffs(order, &coeffs))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|x| x * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        out.normalize();
        out
    }

    /// Double-precision image under `ζ ↦ exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Complex64::from_polar(c.to_f64(), 2.0 * PI * k as f64 / n))
            .sum()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        match self.common_order(other) {
            Ok(_) => self.checked_sub(other).map(|d| d.is_zero()).unwrap_or(false),
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = if c.is_integer() {
                c.numer().to_string()
            } else {
                c.to_string()
            };
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.order)?,
                _ => write!(f, "({c})z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics when the two orders are incompatible.
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Dense polynomial over Q used only for the inverse computation.
#[derive(Clone, Debug)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }
    fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }
    fn zero() -> Self {
        QPoly(Vec::new())
    }
    fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.0.len() - 1;
        let lead_inv = d.0[dd].recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), QPoly::new(rem));
        }
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * b;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(q), QPoly::new(rem))
    }
}
