//! Exact numbers of the form sum c_f p^f, with rational c_f and rational
//! f in [0,1), for a fixed prime p.
//!
//! Powers p^f with distinct f in [0,1) are linearly independent over Q, so a
//! value with an irrational term is never an integer and never zero. Floor and
//! sign are found by refining rational enclosures until they settle.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Exp = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    p: u64,
    terms: BTreeMap<Exp, BigRational>,
}

fn p_power(p: u64, n: i64) -> BigRational {
    let b = num_traits::pow(BigInt::from(p), n.unsigned_abs() as usize);
    if n >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

fn rat_powi(x: &BigRational, n: i64) -> BigRational {
    let m = num_traits::pow(x.clone(), n.unsigned_abs() as usize);
    if n >= 0 {
        m
    } else {
        m.recip()
    }
}

fn exact_root(x: &BigInt, b: u32) -> Option<BigInt> {
    let r = x.nth_root(b);
    (num_traits::pow(r.clone(), b as usize) == *x).then_some(r)
}

impl Value {
    pub fn zero(p: u64) -> Value {
        Value { p, terms: BTreeMap::new() }
    }

    pub fn rational(p: u64, x: BigRational) -> Value {
        let mut v = Value::zero(p);
        v.push(Exp::zero(), x);
        v
    }

    pub fn int(p: u64, n: i64) -> Value {
        Value::rational(p, BigRational::from_integer(n.into()))
    }

    pub fn frac(p: u64, a: i64, b: i64) -> Value {
        Value::rational(p, BigRational::new(a.into(), b.into()))
    }

    /// p^e for any rational e.
    pub fn p_pow(p: u64, e: Exp) -> Value {
        let n = e.floor();
        let mut v = Value::zero(p);
        v.push(e - n, p_power(p, n.to_integer()));
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn push(&mut self, g: Exp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    fn base(&self, o: &Value) -> u64 {
        if self.p != 0 {
            self.p
        } else {
            o.p
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Exp::zero()).cloned(),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|x| x.is_integer()).map(|x| x.to_integer())
    }

    fn monomial(&self) -> Option<(Exp, BigRational)> {
        match self.terms.len() {
            0 => Some((Exp::zero(), BigRational::zero())),
            1 => self.terms.iter().next().map(|(g, c)| (*g, c.clone())),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Value {
        let mut v = Value::zero(self.p);
        for (g, x) in &self.terms {
            v.push(*g, x * c);
        }
        v
    }

    pub fn add(&self, o: &Value) -> Value {
        let mut v = self.clone();
        v.p = self.base(o);
        for (g, c) in &o.terms {
            v.push(*g, c.clone());
        }
        v
    }

    pub fn neg(&self) -> Value {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, o: &Value) -> Value {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Value) -> Value {
        let p = self.base(o);
        let mut v = Value::zero(p);
        for (g1, c1) in &self.terms {
            for (g2, c2) in &o.terms {
                let g = g1 + g2;
                if g >= Exp::one() {
                    v.push(g - 1, c1 * c2 * BigRational::from_integer(p.into()));
                } else {
                    v.push(g, c1 * c2);
                }
            }
        }
        v
    }

    /// Reciprocal; only single-term values have one in this representation.
    pub fn recip(&self) -> Result<Value> {
        let (g, c) = self.monomial().ok_or_else(|| Error::DomainViolation(format!("cannot invert {self}")))?;
        if c.is_zero() {
            return Err(Error::DivByZero);
        }
        let mut v = Value::zero(self.p);
        if g.is_zero() {
            v.push(g, c.recip());
        } else {
            v.push(Exp::one() - g, (c * BigRational::from_integer(self.p.into())).recip());
        }
        Ok(v)
    }

    pub fn div(&self, o: &Value) -> Result<Value> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn powi(&self, n: i64) -> Result<Value> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = Value::int(self.p, 1);
        let mut b = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Rational power. Non-integer exponents need a positive single-term
    /// base whose p-free part is a perfect power.
    pub fn pow(&self, e: &BigRational) -> Result<Value> {
        let bad = || Error::DomainViolation(format!("exponent {e} too large"));
        if e.is_integer() {
            return self.powi(e.to_integer().to_i64().ok_or_else(bad)?);
        }
        let e = Exp::new(e.numer().to_i64().ok_or_else(bad)?, e.denom().to_i64().ok_or_else(bad)?);
        let (g, c) = self.monomial().ok_or_else(|| Error::DomainViolation(format!("fractional power of {self}")))?;
        if !c.is_positive() {
            return Err(Error::DomainViolation(format!("fractional power of {self}")));
        }
        let p = BigInt::from(self.p);
        let (mut num, mut den) = (c.numer().clone(), c.denom().clone());
        let mut k = 0i64;
        while (&num % &p).is_zero() {
            num /= &p;
            k += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            k -= 1;
        }
        let b = *e.denom() as u32;
        let (nr, dr) = match (exact_root(&num, b), exact_root(&den, b)) {
            (Some(a), Some(d)) => (a, d),
            _ => return Err(Error::DomainViolation(format!("{c}^(1/{b}) is not a power of {}", self.p))),
        };
        let coef = rat_powi(&BigRational::new(nr, dr), *e.numer());
        Ok(Value::p_pow(self.p, (Exp::from_integer(k) + g) * e).scale(&coef))
    }

    /// Rational enclosure [lo, hi], each irrational power bracketed within 2^-bits.
    pub fn bounds(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (g, c) in &self.terms {
            if g.is_zero() {
                lo += c;
                hi += c;
                continue;
            }
            let (a, b) = (*g.numer() as u32, *g.denom() as u32);
            let x = num_traits::pow(BigUint::from(self.p), a as usize) << (bits as usize * b as usize);
            let root = BigInt::from(x.nth_root(b));
            let scale = BigInt::one() << bits as usize;
            let l = BigRational::new(root.clone(), scale.clone());
            let h = BigRational::new(root + 1, scale);
            if c.is_negative() {
                lo += c * h;
                hi += c * l;
            } else {
                lo += c * l;
                hi += c * h;
            }
        }
        (lo, hi)
    }

    pub fn signum(&self) -> i32 {
        if let Some(x) = self.as_rational() {
            return if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            };
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.bounds(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn floor(&self) -> BigInt {
        if let Some(x) = self.as_rational() {
            return x.floor().to_integer();
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.bounds(bits);
            let (a, b) = (lo.floor(), hi.floor());
            if a == b {
                return a.to_integer();
            }
            bits *= 2;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    pub fn cmp_value(&self, o: &Value) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(x) = self.as_rational() {
            return x.to_f64().unwrap_or(f64::NAN);
        }
        let (lo, hi) = self.bounds(80);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if g.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}^({g})", self.p)?;
            }
        }
        Ok(())
    }
}
