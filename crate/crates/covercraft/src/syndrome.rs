//! Packed syndrome vectors for breadth-first closure over F_q^r.
//!
//! A syndrome is stored as r*m base-p digits ("lanes"), each in `bits` bits of
//! a u64, so vector addition is a handful of word operations. The dense index
//! of a syndrome is its base-q integer value sum s_i q^i, which is also the
//! base-p value of the lane sequence.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

pub const DEFAULT_SYNDROME_CAP: u64 = 1 << 28;

const CHUNK_BITS: u32 = 12;

#[derive(Clone, Debug)]
pub struct SyndromeSpace {
    field: FieldSpec,
    r: usize,
    lanes: usize,
    bits: u32,
    p: u64,
    total: u64,
    high: u64,
    bias: u64,
    chunk_lanes: usize,
    // lane-chunk bit pattern -> partial index, one table per chunk position
    to_index: Vec<Vec<u64>>,
    // p^chunk_lanes digits -> bit pattern
    from_digits: Vec<u64>,
    chunk_radix: u64,
}

impl SyndromeSpace {
    pub fn new(field: &FieldSpec, r: usize, cap: u64) -> Result<SyndromeSpace> {
        let q = field.q() as u128;
        let total = q.checked_pow(r as u32).unwrap_or(u128::MAX);
        if total > cap as u128 {
            return Err(Error::CapExceeded { what: "syndrome space q^r", value: total, cap: cap as u128 });
        }
        let p = field.p() as u64;
        let lanes = r * field.m() as usize;
        let bits = if p == 2 { 1 } else { 64 - (p - 1).leading_zeros() + 1 };
        if lanes as u32 * bits > 64 {
            return Err(Error::CapExceeded {
                what: "packed syndrome bits",
                value: (lanes as u32 * bits) as u128,
                cap: 64,
            });
        }
        let lane_mask = (1u64 << bits) - 1;
        let mut high = 0u64;
        let mut bias = 0u64;
        if p != 2 {
            for l in 0..lanes {
                high |= 1 << (l as u32 * bits + bits - 1);
                bias |= ((1u64 << (bits - 1)) - p) << (l as u32 * bits);
            }
        }
        let chunk_lanes = ((CHUNK_BITS / bits) as usize).max(1).min(lanes.max(1));
        let mut to_index = Vec::new();
        let mut from_digits = Vec::new();
        let mut chunk_radix = 1u64;
        if p != 2 {
            chunk_radix = p.pow(chunk_lanes as u32);
            let nchunks = lanes.div_ceil(chunk_lanes);
            for c in 0..nchunks {
                let base = p.pow((c * chunk_lanes) as u32);
                let width = chunk_lanes as u32 * bits;
                let mut t = vec![0u64; 1 << width];
                for (pat, slot) in t.iter_mut().enumerate() {
                    let mut v = 0u64;
                    let mut w = 1u64;
                    for l in 0..chunk_lanes {
                        let d = (pat as u64 >> (l as u32 * bits)) & lane_mask;
                        v += d * w;
                        w *= p;
                    }
                    // Only valid digit patterns are ever looked up; others may
                    // overflow and are irrelevant.
                    *slot = v.wrapping_mul(base);
                }
                to_index.push(t);
            }
            from_digits = (0..chunk_radix)
                .map(|mut v| {
                    let mut pat = 0u64;
                    for l in 0..chunk_lanes {
                        pat |= (v % p) << (l as u32 * bits);
                        v /= p;
                    }
                    pat
                })
                .collect();
        }
        Ok(SyndromeSpace {
            field: field.clone(),
            r,
            lanes,
            bits,
            p,
            total: total as u64,
            high,
            bias,
            chunk_lanes,
            to_index,
            from_digits,
            chunk_radix,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn encode(&self, v: &[u32]) -> u64 {
        debug_assert_eq!(v.len(), self.r);
        let m = self.field.m() as usize;
        let mut out = 0u64;
        for (i, &e) in v.iter().enumerate() {
            let mut e = e as u64;
            for t in 0..m {
                let d = e % self.p;
                e /= self.p;
                out |= d << ((i * m + t) as u32 * self.bits);
            }
        }
        out
    }

    pub fn decode(&self, x: u64) -> Vec<u32> {
        let m = self.field.m() as usize;
        let mask = (1u64 << self.bits) - 1;
        (0..self.r)
            .map(|i| {
                (0..m).rev().fold(0u64, |acc, t| acc * self.p + ((x >> ((i * m + t) as u32 * self.bits)) & mask))
                    as u32
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let s = a + b;
        let t = s + self.bias;
        let over = (t & self.high) >> (self.bits - 1);
        s - over * self.p
    }

    #[inline]
    pub fn index(&self, x: u64) -> u64 {
        if self.p == 2 {
            return x;
        }
        let width = self.chunk_lanes as u32 * self.bits;
        let mask = (1u64 << width) - 1;
        let mut idx = 0u64;
        for (c, t) in self.to_index.iter().enumerate() {
            idx += t[((x >> (c as u32 * width)) & mask) as usize];
        }
        idx
    }

    #[inline]
    pub fn from_index(&self, mut idx: u64) -> u64 {
        if self.p == 2 {
            return idx;
        }
        let width = self.chunk_lanes as u32 * self.bits;
        let mut out = 0u64;
        let mut c = 0;
        while idx > 0 {
            out |= self.from_digits[(idx % self.chunk_radix) as usize] << (c * width);
            idx /= self.chunk_radix;
            c += 1;
        }
        out
    }

    /// Packed a*v.
    pub fn scaled(&self, v: &[u32], a: u32) -> u64 {
        let w: Vec<u32> = v.iter().map(|&x| self.field.mul(a, x)).collect();
        self.encode(&w)
    }

    pub fn lanes(&self) -> usize {
        self.lanes
    }
}

/// Plain bitset over `0..len`.
#[derive(Clone, Debug)]
pub struct Bitset {
    words: Vec<u64>,
    len: u64,
}

impl Bitset {
    pub fn new(len: u64) -> Bitset {
        Bitset { words: vec![0; len.div_ceil(64) as usize], len }
    }
    #[inline]
    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }
    /// Sets bit i; returns true when it was previously clear.
    #[inline]
    pub fn insert(&mut self, i: u64) -> bool {
        let w = &mut self.words[(i >> 6) as usize];
        let b = 1u64 << (i & 63);
        let fresh = *w & b == 0;
        *w |= b;
        fresh
    }
    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
    pub fn len(&self) -> u64 {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }
    pub fn words(&self) -> &[u64] {
        &self.words
    }
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(wi as u64 * 64 + b)
            })
        })
    }
    pub fn first_zero(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i as u64 * 64 + (!w).trailing_zeros() as u64)
            .filter(|&i| i < self.len)
    }
    pub fn zeros(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(|&i| !self.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_create;

    #[test]
    fn packed_addition_matches_field() {
        for (p, m, r) in [(3, 1, 5), (5, 1, 3), (3, 2, 3), (7, 1, 3), (2, 2, 4), (11, 1, 2)] {
            let f = field_create(p, m).unwrap();
            let sp = SyndromeSpace::new(&f, r, 1 << 28).unwrap();
            let q = f.q() as u64;
            for idx in 0..sp.total().min(2000) {
                let x = sp.from_index(idx);
                assert_eq!(sp.index(x), idx);
                let v = sp.decode(x);
                assert_eq!(v.iter().rev().fold(0u64, |a, &e| a * q + e as u64), idx);
                let other = sp.from_index((idx * 7919 + 13) % sp.total());
                let w = sp.decode(other);
                let sum: Vec<u32> = v.iter().zip(&w).map(|(&a, &b)| f.add(a, b)).collect();
                assert_eq!(sp.decode(sp.add(x, other)), sum);
            }
        }
    }
}
