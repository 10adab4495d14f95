//! Formula AST for family lengths, leading coefficients and density bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::value::Value;
use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::pg::theta;
use crate::tables;
use crate::util::binomial;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Num(i64, i64),
    Var(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Floor(Box<Expr>),
    Ceil(Box<Expr>),
    /// theta(m, q) = (q^m - 1)/(q - 1) at the current q.
    Theta(Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Factorial(Box<Expr>),
    /// Best known l_q(r, R) at the current q.
    EllBar(Box<Expr>, Box<Expr>),
    /// 1 if the condition holds, else 0.
    Ind(Box<Cond>),
    Sum { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    /// First branch whose condition holds.
    Cases(Vec<(Cond, Expr)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cond {
    True,
    Eq(Expr, Expr),
    Le(Expr, Expr),
    Lt(Expr, Expr),
    /// e mod m == k
    Mod(Expr, i64, i64),
    In(Expr, Vec<i64>),
    Not(Box<Cond>),
    All(Vec<Cond>),
    Any(Vec<Cond>),
    /// q = (q')^k for an integer q'.
    PowerOf(Expr),
    /// q = (q')^k with q' prime.
    PrimeRoot(Expr),
    /// A stored optimal [l, l-r]_q R code can have minimum distance 3.
    HasD3(Expr, Expr),
    /// The stored tables have l_q(r, R).
    HasEntry(Expr, Expr),
}

pub type EllFn<'a> = &'a dyn Fn(u64, u32, u32) -> Option<u64>;

#[derive(Clone)]
pub struct Env<'a> {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    vars: BTreeMap<String, BigRational>,
    ell: EllFn<'a>,
}

impl<'a> Env<'a> {
    pub fn new(q: u64, ell: EllFn<'a>) -> Result<Env<'a>> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::DomainViolation(format!("{q} is not a prime power")))?;
        let mut env = Env { q, p, e, vars: BTreeMap::new(), ell };
        env.set("q", q as i64);
        Ok(env)
    }

    pub fn set(&mut self, name: &str, x: i64) {
        self.vars.insert(name.to_string(), BigRational::from_integer(x.into()));
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.vars.get(name).and_then(|x| x.to_integer().to_i64())
    }
}

fn int_of(v: &Value, what: &str) -> Result<i64> {
    v.as_integer()
        .and_then(|x| x.to_i64())
        .ok_or_else(|| Error::NonIntegralResult(format!("{what} = {v}")))
}

fn big(p: u64, x: u128) -> Value {
    Value::rational(p, BigRational::from_integer(BigInt::from(x)))
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<Value> {
        let p = env.p;
        let b = |e: &Expr| e.eval(env);
        let i = |e: &Expr, what: &str| -> Result<i64> { int_of(&e.eval(env)?, what) };
        Ok(match self {
            Expr::Num(a, d) => Value::frac(p, *a, *d),
            Expr::Var(n) => Value::rational(
                p,
                env.vars.get(n).cloned().ok_or_else(|| Error::DomainViolation(format!("unbound variable {n}")))?,
            ),
            Expr::Add(xs) => xs.iter().try_fold(Value::zero(p), |acc, x| Ok::<_, Error>(acc.add(&b(x)?)))?,
            Expr::Mul(xs) => xs.iter().try_fold(Value::int(p, 1), |acc, x| Ok::<_, Error>(acc.mul(&b(x)?)))?,
            Expr::Sub(x, y) => b(x)?.sub(&b(y)?),
            Expr::Div(x, y) => b(x)?.div(&b(y)?)?,
            Expr::Pow(x, y) => {
                let ex = b(y)?
                    .as_rational()
                    .ok_or_else(|| Error::DomainViolation("irrational exponent".into()))?;
                b(x)?.pow(&ex)?
            }
            Expr::Floor(x) => Value::rational(p, BigRational::from_integer(b(x)?.floor())),
            Expr::Ceil(x) => Value::rational(p, BigRational::from_integer(b(x)?.ceil())),
            Expr::Theta(m) => {
                let m = i(m, "theta index")?;
                if m < 0 {
                    return Err(Error::DomainViolation(format!("theta({m})")));
                }
                big(p, theta(m as u32, env.q))
            }
            Expr::Binom(n, k) => {
                let (n, k) = (i(n, "binomial")?, i(k, "binomial")?);
                if n < 0 || k < 0 {
                    Value::zero(p)
                } else {
                    big(p, binomial(n as u64, k as u64))
                }
            }
            Expr::Factorial(n) => {
                let n = i(n, "factorial")?;
                let f = (1..=n.max(0)).fold(BigInt::one(), |acc, j| acc * j);
                Value::rational(p, BigRational::from_integer(f))
            }
            Expr::EllBar(r, radius) => {
                let (r, radius) = (i(r, "codimension")?, i(radius, "radius")?);
                if r < 0 || radius < 1 {
                    return Err(Error::DomainViolation(format!("l({r},{radius})")));
                }
                let n = (env.ell)(env.q, r as u32, radius as u32).ok_or_else(|| {
                    Error::MissingTableEntry(format!("l_{}({r},{radius})", env.q))
                })?;
                big(p, n as u128)
            }
            Expr::Ind(c) => Value::int(p, c.eval(env)? as i64),
            Expr::Sum { var, lo, hi, body } => {
                let (lo, hi) = (i(lo, "sum bound")?, i(hi, "sum bound")?);
                let mut acc = Value::zero(p);
                for j in lo..=hi {
                    let mut inner = env.clone();
                    inner.set(var, j);
                    acc = acc.add(&body.eval(&inner)?);
                }
                acc
            }
            Expr::Cases(arms) => {
                for (c, e) in arms {
                    if c.eval(env)? {
                        return e.eval(env);
                    }
                }
                return Err(Error::DomainViolation("no case applies".into()));
            }
        })
    }
}

impl Cond {
    pub fn eval(&self, env: &Env) -> Result<bool> {
        let i = |e: &Expr| -> Result<i64> { int_of(&e.eval(env)?, "condition operand") };
        let cmp = |x: &Expr, y: &Expr| -> Result<std::cmp::Ordering> { Ok(x.eval(env)?.cmp_value(&y.eval(env)?)) };
        Ok(match self {
            Cond::True => true,
            Cond::Eq(x, y) => cmp(x, y)?.is_eq(),
            Cond::Le(x, y) => cmp(x, y)?.is_le(),
            Cond::Lt(x, y) => cmp(x, y)?.is_lt(),
            Cond::Mod(x, m, k) => i(x)?.rem_euclid(*m) == *k,
            Cond::In(x, set) => set.contains(&i(x)?),
            Cond::Not(c) => !c.eval(env)?,
            Cond::All(cs) => {
                for c in cs {
                    if !c.eval(env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Cond::Any(cs) => {
                for c in cs {
                    if c.eval(env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Cond::PowerOf(k) => {
                let k = i(k)?;
                k >= 1 && env.e as i64 % k == 0
            }
            Cond::PrimeRoot(k) => env.e as i64 == i(k)?,
            Cond::HasD3(r, radius) => tables::has_distance_three(env.q, i(r)? as u32, i(radius)? as u32),
            Cond::HasEntry(r, radius) => tables::ell_bar(env.q, i(r)? as u32, i(radius)? as u32).is_some(),
        })
    }
}

/// Terse constructors used to write the catalog.
pub(crate) mod dsl {
    use super::{Cond, Expr};

    pub fn k(n: i64) -> Expr {
        Expr::Num(n, 1)
    }
    pub fn fr(a: i64, b: i64) -> Expr {
        Expr::Num(a, b)
    }
    pub fn var(s: &str) -> Expr {
        Expr::Var(s.into())
    }
    pub fn q() -> Expr {
        var("q")
    }
    pub fn r() -> Expr {
        var("r")
    }
    pub fn big_r() -> Expr {
        var("R")
    }
    pub fn add(xs: Vec<Expr>) -> Expr {
        Expr::Add(xs)
    }
    pub fn mul(xs: Vec<Expr>) -> Expr {
        Expr::Mul(xs)
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }
    pub fn pw(a: Expr, b: Expr) -> Expr {
        Expr::Pow(Box::new(a), Box::new(b))
    }
    /// q^((r + off)/den)
    pub fn qr(off: i64, den: i64) -> Expr {
        pw(q(), div(add(vec![r(), k(off)]), k(den)))
    }
    /// q^(a/b)
    pub fn qf(a: i64, b: i64) -> Expr {
        pw(q(), fr(a, b))
    }
    pub fn floor(e: Expr) -> Expr {
        Expr::Floor(Box::new(e))
    }
    pub fn ceil(e: Expr) -> Expr {
        Expr::Ceil(Box::new(e))
    }
    pub fn theta(m: Expr) -> Expr {
        Expr::Theta(Box::new(m))
    }
    pub fn binom(n: Expr, m: Expr) -> Expr {
        Expr::Binom(Box::new(n), Box::new(m))
    }
    pub fn fact(n: Expr) -> Expr {
        Expr::Factorial(Box::new(n))
    }
    pub fn ell(r: Expr, radius: i64) -> Expr {
        Expr::EllBar(Box::new(r), Box::new(k(radius)))
    }
    pub fn ind(c: Cond) -> Expr {
        Expr::Ind(Box::new(c))
    }
    pub fn sum(v: &str, lo: Expr, hi: Expr, body: Expr) -> Expr {
        Expr::Sum { var: v.into(), lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
    }
    pub fn cases(arms: Vec<(Cond, Expr)>) -> Expr {
        Expr::Cases(arms)
    }

    pub fn tru() -> Cond {
        Cond::True
    }
    pub fn eq(a: Expr, b: Expr) -> Cond {
        Cond::Eq(a, b)
    }
    pub fn le(a: Expr, b: Expr) -> Cond {
        Cond::Le(a, b)
    }
    pub fn lt(a: Expr, b: Expr) -> Cond {
        Cond::Lt(a, b)
    }
    pub fn ge(a: Expr, b: Expr) -> Cond {
        Cond::Le(b, a)
    }
    pub fn md(e: Expr, m: i64, j: i64) -> Cond {
        Cond::Mod(e, m, j)
    }
    pub fn is(e: Expr, set: &[i64]) -> Cond {
        Cond::In(e, set.to_vec())
    }
    pub fn not(c: Cond) -> Cond {
        Cond::Not(Box::new(c))
    }
    pub fn all(cs: Vec<Cond>) -> Cond {
        Cond::All(cs)
    }
    pub fn any(cs: Vec<Cond>) -> Cond {
        Cond::Any(cs)
    }
    pub fn power_of(e: Expr) -> Cond {
        Cond::PowerOf(e)
    }
    pub fn prime_root(e: Expr) -> Cond {
        Cond::PrimeRoot(e)
    }
    pub fn has_d3(r: i64, radius: i64) -> Cond {
        Cond::HasD3(k(r), k(radius))
    }
    pub fn has_entry(r: i64, radius: i64) -> Cond {
        Cond::HasEntry(k(r), k(radius))
    }
}

#[cfg(test)]
mod tests {
    use super::dsl::*;
    use super::*;

    fn none(_: u64, _: u32, _: u32) -> Option<u64> {
        None
    }

    #[test]
    fn evaluates() {
        let mut env = Env::new(9, &none).unwrap();
        env.set("r", 7);
        // 2 q^((r-2)/2) with r odd and q a square is an integer
        let e = mul(vec![k(2), qr(-2, 2)]);
        assert_eq!(e.eval(&env).unwrap().as_integer(), Some(BigInt::from(486)));
        let s = sum("i", k(1), k(3), binom(k(6), var("i")));
        assert_eq!(s.eval(&env).unwrap().as_integer(), Some(BigInt::from(41)));
        let c = cases(vec![(md(r(), 4, 1), k(0)), (md(r(), 4, 3), k(5))]);
        assert_eq!(c.eval(&env).unwrap().as_integer(), Some(BigInt::from(5)));
        assert!(matches!(ell(k(3), 2).eval(&env), Err(Error::MissingTableEntry(_))));
        assert!(power_of(k(2)).eval(&env).unwrap());
        assert!(!prime_root(k(4)).eval(&env).unwrap());
        assert_eq!(floor(qf(-1, 2)).eval(&env).unwrap().as_integer(), Some(BigInt::from(0)));
    }
}
