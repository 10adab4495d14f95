//! Arithmetic in GF(p^m) with base-p digit encoded elements, plus dense
//! linear algebra over it.
//!
//! An element `v` in `[0, q)` stands for the polynomial `sum c_i T^i` where
//! `c_i` are the base-p digits of `v`. The modulus is the first irreducible
//! monic polynomial of degree m when coefficient vectors are compared
//! constant term first.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_FIELD_CAP: u64 = 1 << 32;
const LOG_TABLE_MAX: u64 = 1 << 20;
const ADD_TABLE_MAX: u64 = 729;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` when `q = p^m` for a prime p.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    (x == 1).then_some((p, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over GF(p), coefficient vectors constant term first.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let inv_lead = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * inv_lead % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = k - db + i;
            r[idx] = (r[idx] + p * p - c * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Irreducibility over GF(p): f has no factor of degree d <= deg/2, checked as
/// gcd(f, T^(p^d) - T) = 1.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        poly_trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        let g = poly_gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u32>,
}

/// A finite field GF(p^m). Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    pub value: u32,
    pub p: u32,
    pub m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_create(p: u64, m: u32) -> Result<FieldSpec> {
    field_create_capped(p, m, DEFAULT_FIELD_CAP)
}

pub fn field_create_capped(p: u64, m: u32, cap: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > cap as u128 || q > DEFAULT_FIELD_CAP as u128 {
        return Err(Error::CapExceeded { what: "field order", value: q, cap: cap as u128 });
    }
    FieldSpec::build(p, m)
}

/// `field_create` from the field order.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, m) = prime_power(q).ok_or(Error::NonPrime(q))?;
    field_create(p, m)
}

impl FieldSpec {
    fn build(p: u64, m: u32) -> Result<FieldSpec> {
        let q = p.pow(m);
        if q > u32::MAX as u64 {
            return Err(Error::CapExceeded { what: "field order", value: q as u128, cap: u32::MAX as u128 });
        }
        let bare = |primitive| Inner {
            p: p as u32,
            m,
            q: q as u32,
            modulus: first_irreducible(p, m).iter().map(|&c| c as u32).collect(),
            primitive,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: Vec::new(),
        };
        let slow = FieldSpec(Arc::new(bare(0)));
        let g = slow.find_primitive();
        let mut inner = bare(g);
        if q <= LOG_TABLE_MAX {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u32;
            for i in 0..n {
                exp[i] = x;
                exp[i + n] = x;
                log[x as usize] = i as u32;
                x = slow.mul_slow(x, g);
            }
            inner.exp = exp;
            inner.log = log;
            inner.neg = (0..q as u32).map(|a| slow.neg_slow(a)).collect();
            if p > 2 && m > 1 && q <= ADD_TABLE_MAX {
                let mut add = vec![0u16; (q * q) as usize];
                for a in 0..q as u32 {
                    for b in 0..q as u32 {
                        add[a as usize * q as usize + b as usize] = slow.add_slow(a, b) as u16;
                    }
                }
                inner.add = add;
            }
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    fn find_primitive(&self) -> u32 {
        let q = self.q() as u64;
        if q == 2 {
            return 1;
        }
        let factors = prime_factors(q - 1);
        (1..q as u32)
            .find(|&g| factors.iter().all(|&l| self.pow_slow(g, (q - 1) / l) != 1))
            .expect("multiplicative group is cyclic")
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn m(&self) -> u32 {
        self.0.m
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Modulus coefficients, constant term first, monic of degree m.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// Smallest-encoded generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.0.primitive
    }

    pub fn elem(&self, value: u64) -> Result<FieldElement> {
        if value >= self.q() as u64 {
            return Err(Error::OutOfRange { value, q: self.q() as u64 });
        }
        Ok(FieldElement { value: value as u32, p: self.p(), m: self.m() })
    }

    fn owns(&self, x: &FieldElement) -> bool {
        x.p == self.p() && x.m == self.m()
    }

    pub fn arith(&self, a: FieldElement, b: FieldElement, op: Op) -> Result<FieldElement> {
        if !self.owns(&a) || !self.owns(&b) {
            return Err(Error::FieldMismatch);
        }
        let v = match op {
            Op::Add => self.add(a.value, b.value),
            Op::Sub => self.sub(a.value, b.value),
            Op::Mul => self.mul(a.value, b.value),
            Op::Div => {
                if b.value == 0 {
                    return Err(Error::DivByZero);
                }
                self.mul(a.value, self.inv(b.value))
            }
        };
        Ok(FieldElement { value: v, ..a })
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let p = self.p();
        (0..self.m())
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &x| acc * self.p() + x)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut scale = 1u32;
        for i in 0..self.m() {
            let d = (a % p + b % p) % p;
            out += d * scale;
            a /= p;
            b /= p;
            if i + 1 < self.m() {
                scale *= p;
            }
        }
        out
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|x| (p - x) % p).collect();
        self.undigits(&d)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.p() as u64;
        let da: Vec<u64> = self.digits(a).into_iter().map(u64::from).collect();
        let db: Vec<u64> = self.digits(b).into_iter().map(u64::from).collect();
        let f: Vec<u64> = self.modulus().iter().map(|&c| c as u64).collect();
        let mut r = poly_mulmod(&da, &db, &f, p);
        r.resize(self.m() as usize, 0);
        let d: Vec<u32> = r.into_iter().map(|x| x as u32).collect();
        self.undigits(&d)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = &self.0;
        if s.p == 2 {
            a ^ b
        } else if s.m == 1 {
            let t = a + b;
            if t >= s.p {
                t - s.p
            } else {
                t
            }
        } else if !s.add.is_empty() {
            s.add[a as usize * s.q as usize + b as usize] as u32
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let s = &self.0;
        if s.p == 2 {
            a
        } else if s.m == 1 {
            if a == 0 {
                0
            } else {
                s.p - a
            }
        } else if !s.neg.is_empty() {
            s.neg[a as usize]
        } else {
            self.neg_slow(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = &self.0;
        if !s.log.is_empty() {
            s.exp[(s.log[a as usize] + s.log[b as usize]) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    /// Multiplicative inverse; panics on zero (use `arith` for a checked path).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let s = &self.0;
        if !s.log.is_empty() {
            let n = s.q - 1;
            let l = s.log[a as usize];
            s.exp[((n - l) % n) as usize]
        } else {
            self.pow_slow(a, s.q as u64 - 2)
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        if b == 0 {
            return Err(Error::DivByZero);
        }
        Ok(self.mul(a, self.inv(b)))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let s = &self.0;
        if !s.log.is_empty() {
            let n = (s.q - 1) as u64;
            let l = s.log[a as usize] as u64;
            s.exp[((l * (e % n)) % n) as usize]
        } else {
            self.pow_slow(a, e)
        }
    }

    /// Discrete logarithm to the base `primitive()`; None for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let s = &self.0;
        if !s.log.is_empty() {
            Some(s.log[a as usize])
        } else {
            let g = self.primitive();
            let mut x = 1;
            (0..s.q - 1).find(|_| {
                let hit = x == a;
                x = self.mul(x, g);
                hit
            })
        }
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p() == 2 || self.log(a).unwrap() % 2 == 0
    }

    /// Returns `log_p(s)` when s is the order of a subfield.
    pub fn subfield_degree(&self, s: u64) -> Result<u32> {
        match prime_power(s) {
            Some((p, k)) if p == self.p() as u64 && self.m() % k == 0 => Ok(k),
            _ => Err(Error::NotSubfieldOrder(s)),
        }
    }

    /// x^s for a subfield order s.
    pub fn frobenius(&self, x: u32, s: u64) -> Result<u32> {
        self.subfield_degree(s)?;
        Ok(self.pow_frob(x, s))
    }

    fn pow_frob(&self, x: u32, s: u64) -> u32 {
        if x == 0 {
            return 0;
        }
        let n = (self.q() - 1) as u64;
        self.pow(x, s % n + if s % n == 0 { n } else { 0 })
    }

    pub fn frobenius_elem(&self, x: FieldElement, s: u64) -> Result<FieldElement> {
        if !self.owns(&x) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { value: self.frobenius(x.value, s)?, ..x })
    }

    /// The element T, a generator of the field over GF(p).
    pub fn generator(&self) -> u32 {
        if self.m() == 1 {
            self.primitive()
        } else {
            self.p()
        }
    }

    /// Elements of the subfield of order s, in encoding order.
    pub fn subfield_elements(&self, s: u64) -> Result<Vec<u32>> {
        self.subfield_degree(s)?;
        Ok((0..self.q()).filter(|&y| self.pow_frob(y, s) == y).collect())
    }
}

fn first_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m);
    // Lexicographic with the constant term most significant.
    for k in 0..count {
        let mut f = vec![0u64; m as usize + 1];
        let mut x = k;
        for i in (0..m as usize).rev() {
            f[i] = x % p;
            x /= p;
        }
        f[m as usize] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The canonical embedding of a subfield into an extension: the generator T
/// of `src` goes to the smallest-encoded root of its modulus in `dst`.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: FieldSpec,
    dst: FieldSpec,
    image: Vec<u32>,
}

impl Embedding {
    pub fn new(src: &FieldSpec, dst: &FieldSpec) -> Result<Embedding> {
        let not_ext = || Error::NotExtension { src: src.q() as u64, dst: dst.q() as u64 };
        if src.p() != dst.p() || dst.m() % src.m() != 0 {
            return Err(not_ext());
        }
        let image: Vec<u32> = if src.m() == 1 || src == dst {
            (0..src.q()).collect()
        } else {
            let f = src.modulus();
            let root = (0..dst.q())
                .find(|&y| f.iter().rev().fold(0u32, |acc, &c| dst.add(dst.mul(acc, y), c)) == 0)
                .ok_or_else(not_ext)?;
            let mut powers = Vec::with_capacity(src.m() as usize);
            let mut x = 1u32;
            for _ in 0..src.m() {
                powers.push(x);
                x = dst.mul(x, root);
            }
            (0..src.q())
                .map(|v| {
                    src.digits(v)
                        .iter()
                        .zip(&powers)
                        .fold(0u32, |acc, (&c, &pw)| dst.add(acc, dst.mul(c, pw)))
                })
                .collect()
        };
        Ok(Embedding { src: src.clone(), dst: dst.clone(), image })
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    pub fn src(&self) -> &FieldSpec {
        &self.src
    }
    pub fn dst(&self) -> &FieldSpec {
        &self.dst
    }

    /// Inverse map on the image; None outside it.
    pub fn preimage(&self, y: u32) -> Option<u32> {
        self.image.iter().position(|&v| v == y).map(|i| i as u32)
    }
}

pub fn subfield_embed(src: &FieldSpec, dst: &FieldSpec, x: FieldElement) -> Result<FieldElement> {
    if !src.owns(&x) {
        return Err(Error::FieldMismatch);
    }
    let e = Embedding::new(src, dst)?;
    dst.elem(e.apply(x.value) as u64)
}

/// Row-major dense matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.q()) {
            return Err(Error::OutOfRange { value: bad as u64, q: field.q() as u64 });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vec<u32>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!("column {j} has length {}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                if x >= field.q() {
                    return Err(Error::OutOfRange { value: x as u64, q: field.q() as u64 });
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copies `block` with its top-left corner at (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        row_reduce(&self.field, &mut rows, self.cols).len()
    }

    /// Coefficients `x` with `M x = v`, or None when v is outside the column span.
    pub fn solve_membership(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug: Vec<Vec<u32>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(v[i]);
                r
            })
            .collect();
        let pivots = row_reduce(f, &mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[i][self.cols];
        }
        Ok(Some(x))
    }
}

/// In-place reduced row echelon form over the first `ncols` columns.
/// Returns pivot columns; rows beyond the rank are left zero at the end.
pub fn row_reduce(f: &FieldSpec, rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let factor = rows[k][c];
                for j in 0..rows[k].len() {
                    let t = f.mul(factor, rows[r][j]);
                    rows[k][j] = f.sub(rows[k][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(f: &FieldSpec, vectors: &[&[u32]]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.to_vec()).collect();
    row_reduce(f, &mut rows, n).len()
}
