//! Exact field scalars: arbitrary-precision rationals and cyclotomic numbers.
//!
//! A cyclotomic scalar of order `n` is a polynomial of degree < phi(n) in a
//! primitive n-th root of unity, kept reduced modulo the n-th cyclotomic
//! polynomial, so equality is coefficient equality. The field characteristic
//! is always zero. No floating point exists anywhere in this crate.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Declares the ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FieldSpec {
    /// The rational numbers.
    Rational,
    /// The cyclotomic field obtained by adjoining a primitive n-th root of unity.
    Cyclotomic(u32),
}

impl FieldSpec {
    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    /// Parses "p/q" or "p" into a rational scalar of this field.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let r = parse_rational(s)?;
        Ok(Scalar::Rational(r))
    }

    /// A primitive root of unity of the declared order, or an error for the
    /// rational field.
    pub fn root_of_unity(&self) -> Result<Scalar, Error> {
        match self {
            FieldSpec::Rational => Err(Error::Scalar(
                "rational field has no declared root of unity".into(),
            )),
            FieldSpec::Cyclotomic(n) => Ok(Scalar::root_of_unity(*n, 1)),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Scalar("malformed rational".into());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Scalar("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

/// An exact scalar: a rational number or an element of a cyclotomic field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    /// Coefficients of 1, z, ..., z^(phi(order)-1) with z a primitive
    /// `order`-th root of unity; always reduced mod the cyclotomic polynomial.
    Cyclotomic { order: u32, coeffs: Vec<BigRational> },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// z_n^k in the order-n cyclotomic field.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order >= 1);
        let n = order as i64;
        let k = k.rem_euclid(n) as usize;
        let deg = totient(order) as usize;
        let mut coeffs = vec![BigRational::zero(); (order as usize).max(k + 1)];
        coeffs[k] = BigRational::one();
        let coeffs = reduce_mod_cyclotomic(coeffs, order);
        debug_assert!(coeffs.len() <= deg);
        Scalar::normalize(order, coeffs)
    }

    fn normalize(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        let deg = totient(order) as usize;
        coeffs.resize(deg, BigRational::zero());
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return Scalar::Rational(coeffs.swap_remove(0));
        }
        Scalar::Cyclotomic { order, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            // normalized: a cyclotomic with only a constant term would be Rational
            Scalar::Cyclotomic { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic { .. } => None,
        }
    }

    /// Coefficients of this scalar seen inside the order-n cyclotomic field.
    pub fn coefficients_in(&self, order: u32) -> Result<Vec<BigRational>, Error> {
        match self.promote(order)? {
            Scalar::Rational(r) => {
                let mut v = vec![BigRational::zero(); totient(order) as usize];
                v[0] = r;
                Ok(v)
            }
            Scalar::Cyclotomic { coeffs, .. } => Ok(coeffs),
        }
    }

    fn order(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic { order, .. } => *order,
        }
    }

    /// Re-expresses the scalar in the cyclotomic field of order `target`,
    /// which must be a multiple of the current order.
    fn promote(&self, target: u32) -> Result<Scalar, Error> {
        let cur = self.order();
        if !target.is_multiple_of(cur) {
            return Err(Error::Scalar(
                "incompatible cyclotomic orders (not a divisor)".into(),
            ));
        }
        match self {
            Scalar::Rational(r) => {
                if target == 1 {
                    return Ok(self.clone());
                }
                let mut coeffs = vec![BigRational::zero(); totient(target) as usize];
                coeffs[0] = r.clone();
                Ok(Scalar::normalize(target, coeffs))
            }
            Scalar::Cyclotomic { order, coeffs } => {
                if target == *order {
                    return Ok(self.clone());
                }
                let stride = (target / order) as usize;
                let mut raw = vec![BigRational::zero(); coeffs.len() * stride];
                for (i, c) in coeffs.iter().enumerate() {
                    raw[i * stride] = c.clone();
                }
                Ok(Scalar::normalize(target, reduce_mod_cyclotomic(raw, target)))
            }
        }
    }

    fn common_order(&self, other: &Scalar) -> u32 {
        num_integer::lcm(self.order(), other.order())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let n = self.common_order(other);
        if n == 1 {
            if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
                return Scalar::Rational(a + b);
            }
        }
        let a = self.promote(n).expect("lcm order");
        let b = other.promote(n).expect("lcm order");
        let ac = a.raw_coeffs(n);
        let bc = b.raw_coeffs(n);
        let coeffs = ac.iter().zip(bc.iter()).map(|(x, y)| x + y).collect();
        Scalar::normalize(n, coeffs)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic { order, coeffs } => Scalar::Cyclotomic {
                order: *order,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Scalar::Rational(a * b);
        }
        let n = self.common_order(other);
        let a = self.promote(n).expect("lcm order");
        let b = other.promote(n).expect("lcm order");
        let prod = poly_mul(&a.raw_coeffs(n), &b.raw_coeffs(n));
        Scalar::normalize(n, reduce_mod_cyclotomic(prod, n))
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar, Error> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::Scalar("division by zero".into()))
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic { order, coeffs } => {
                let modulus = cyclotomic_polynomial(*order);
                let inv = poly_inverse_mod(coeffs, &modulus)
                    .ok_or_else(|| Error::Scalar("non-invertible cyclotomic".into()))?;
                Ok(Scalar::normalize(*order, reduce_mod_cyclotomic(inv, *order)))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, Error> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b.clone());
            k >>= 1;
        }
        Ok(acc)
    }

    fn raw_coeffs(&self, order: u32) -> Vec<BigRational> {
        match self {
            Scalar::Rational(r) => {
                let mut v = vec![BigRational::zero(); totient(order) as usize];
                v[0] = r.clone();
                v
            }
            Scalar::Cyclotomic { order: o, coeffs } => {
                debug_assert_eq!(*o, order);
                coeffs.clone()
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let n = self.common_order(other);
                let a = self.promote(n).expect("lcm order");
                let b = other.promote(n).expect("lcm order");
                a.raw_coeffs(n) == b.raw_coeffs(n)
            }
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Cyclotomic { order, coeffs } => {
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if i == 0 {
                        write!(f, "{}", Scalar::Rational(c.clone()))?;
                    } else if c.is_one() {
                        write!(f, "z{}^{}", order, i)?;
                    } else {
                        write!(f, "{}*z{}^{}", Scalar::Rational(c.clone()), order, i)?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

/// Serializes a rational as "p/q" (or "p" for integers).
pub fn rational_string(r: &BigRational) -> String {
    Scalar::Rational(r.clone()).to_string()
}

/// Euler totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// ---- polynomial helpers over the rationals (dense, low degree) ----

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Division with remainder; the divisor must be nonzero.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    assert!(!den.is_empty(), "division by zero polynomial");
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &lead;
        quot[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let v = &c * d;
            rem[k + i] -= v;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The n-th cyclotomic polynomial (monic, integer coefficients).
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigRational> {
    assert!(n >= 1);
    // x - 1
    let mut phi1 = vec![-BigRational::one(), BigRational::one()];
    if n == 1 {
        return phi1;
    }
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut den = core::mem::take(&mut phi1);
    for d in 2..n {
        if n.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    let (q, r) = poly_divrem(&num, &den);
    debug_assert!(r.is_empty(), "cyclotomic division must be exact");
    q
}

/// Reduces a raw coefficient vector modulo the n-th cyclotomic polynomial.
fn reduce_mod_cyclotomic(raw: Vec<BigRational>, order: u32) -> Vec<BigRational> {
    let modulus = cyclotomic_polynomial(order);
    let (_, rem) = poly_divrem(&raw, &modulus);
    rem
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, if coprime.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // Maintain r0 = m, r1 = a with Bezout coefficients for a only.
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let qt = poly_mul(&q, &t1);
        let mut t2 = t0.clone();
        t2.resize(t2.len().max(qt.len()), BigRational::zero());
        for (i, c) in qt.iter().enumerate() {
            t2[i] -= c;
        }
        poly_trim(&mut t2);
        r0 = core::mem::replace(&mut r1, r);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None; // gcd not a unit
    }
    let lead = r0[0].clone();
    Some(t0.iter().map(|c| c / &lead).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    #[test]
    fn rational_basics() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::ratio(1, 3);
        assert_eq!(a.add(&b), Scalar::ratio(5, 6));
        assert_eq!(a.mul(&b), Scalar::ratio(1, 6));
        assert_eq!(a.sub(&a), Scalar::zero());
        assert_eq!(a.div(&b).unwrap(), Scalar::ratio(3, 2));
        assert!(Scalar::int(0).is_zero());
        assert!(Scalar::int(1).is_one());
        assert_eq!(format!("{}", Scalar::ratio(-3, 4)), "-3/4");
        assert_eq!(format!("{}", Scalar::int(7)), "7");
    }

    #[test]
    fn parse_rational_strings() {
        let f = FieldSpec::Rational;
        assert_eq!(f.parse("5/10").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(f.parse("-2").unwrap(), Scalar::int(-2));
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_4 = x^2 + 1
        let p4 = cyclotomic_polynomial(4);
        assert_eq!(p4, vec![
            BigRational::one(),
            BigRational::zero(),
            BigRational::one()
        ]);
        // Phi_6 = x^2 - x + 1
        let p6 = cyclotomic_polynomial(6);
        assert_eq!(p6, vec![
            BigRational::one(),
            -BigRational::one(),
            BigRational::one()
        ]);
        assert_eq!(cyclotomic_polynomial(12).len() - 1, totient(12) as usize);
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let i = Scalar::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), Scalar::int(-1));
        assert_eq!(i.pow(4).unwrap(), Scalar::one());
        assert_eq!(i.pow(-1).unwrap(), i.pow(3).unwrap());
    }

    #[test]
    fn zeta_n_to_the_n_is_one() {
        for n in [2u32, 3, 4, 6, 8, 12] {
            let z = Scalar::root_of_unity(n, 1);
            assert_eq!(z.pow(n as i64).unwrap(), Scalar::one(), "order {}", n);
            // inverse is the conjugate power
            assert_eq!(z.mul(&z.inv().unwrap()), Scalar::one());
        }
    }

    #[test]
    fn mixed_order_arithmetic() {
        // z_2 = -1 inside Q(z_4)
        let m1 = Scalar::root_of_unity(2, 1);
        assert_eq!(m1, Scalar::int(-1));
        let i = Scalar::root_of_unity(4, 1);
        let z3 = Scalar::root_of_unity(3, 1);
        // (z_3 * z_4) has order 12; raising to 12 gives 1
        let w = z3.mul(&i);
        assert_eq!(w.pow(12).unwrap(), Scalar::one());
        assert!(w.pow(6).unwrap() != Scalar::one());
    }

    #[test]
    fn cyclotomic_inverse_of_sums() {
        // 1 + z_4 is invertible: (1+i)(1-i)/2 = 1
        let i = Scalar::root_of_unity(4, 1);
        let a = Scalar::one().add(&i);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), Scalar::one());
    }
}
