// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Arithmetic in `F_2[x]` and in binary fields `F_2[x]/(p)` with a polynomial basis.
//!
//! Coefficients are packed into `u64` words, little-endian by exponent: bit `i`
//! of word `k` is the coefficient of `x^(64k + i)`. Field elements always carry
//! exactly `ceil(n / 64)` words with every bit at position `>= n` clear.
//!
//! Two text formats are accepted wherever a polynomial or element is read:
//!
//! * polynomial text, terms `1`, `x`, `x^k` joined by `+` in any order, e.g.
//!   `1+x^74+x^233`;
//! * hex, `0x...`, where bit `i` of the integer is the coefficient of `x^i`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
fn get_bit(words: &[u64], i: usize) -> bool {
    words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
}

#[inline]
fn flip_bit(words: &mut [u64], i: usize) {
    words[i / 64] ^= 1u64 << (i % 64);
}

/// Carry-less product of two words as `(low, high)`.
#[inline]
fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut rest = b;
    while rest != 0 {
        let k = rest.trailing_zeros();
        lo ^= a << k;
        if k > 0 {
            hi ^= a >> (64 - k);
        }
        rest &= rest - 1;
    }
    (lo, hi)
}

fn clmul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let (lo, hi) = clmul64(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
    out
}

/// XOR `src << shift` into `dst`, growing `dst` as needed.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let word_shift = shift / 64;
    let bit_shift = shift % 64;
    let needed = src.len() + word_shift + 1;
    if dst.len() < needed {
        dst.resize(needed, 0);
    }
    for (i, &w) in src.iter().enumerate() {
        dst[i + word_shift] ^= w << bit_shift;
        if bit_shift > 0 {
            dst[i + word_shift + 1] ^= w >> (64 - bit_shift);
        }
    }
}

/// A polynomial over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    // Normalized: empty for zero, otherwise the last word is nonzero.
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly::monomial(0)
    }

    pub fn x() -> Self {
        Gf2Poly::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        flip_bit(&mut words, k);
        Gf2Poly { words }
    }

    /// Sum of the given monomials; repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let top = exponents.iter().copied().max().unwrap_or(0);
        let mut words = vec![0u64; top / 64 + 1];
        for &e in exponents {
            flip_bit(&mut words, e);
        }
        Gf2Poly::from_words(words)
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        match self.words.last() {
            None => -1,
            Some(&w) => ((self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize) as i64,
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        get_bit(&self.words, i)
    }

    /// Ascending list of exponents with coefficient 1.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(k * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Gf2Poly::from_words(words)
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        Gf2Poly::from_words(clmul_words(&self.words, &other.words))
    }

    /// Quotient and remainder of long division by `divisor`.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = divisor.degree() as usize;
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; words_for(self.words.len() * 64 + 1)];
        let mut r = Gf2Poly::from_words(rem.clone()).degree();
        while r >= d as i64 {
            let shift = r as usize - d;
            xor_shifted(&mut rem, &divisor.words, shift);
            flip_bit(&mut quot, shift);
            while rem.last() == Some(&0) {
                rem.pop();
            }
            r = Gf2Poly::from_words(rem.clone()).degree();
        }
        Ok((Gf2Poly::from_words(quot), Gf2Poly::from_words(rem)))
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Result<Gf2Poly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = divisor.degree() as usize;
        let mut rem = self.words.clone();
        loop {
            while rem.last() == Some(&0) {
                rem.pop();
            }
            let Some(&top) = rem.last() else { break };
            let r = (rem.len() - 1) * 64 + 63 - top.leading_zeros() as usize;
            if r < d {
                break;
            }
            xor_shifted(&mut rem, &divisor.words, r - d);
        }
        Ok(Gf2Poly::from_words(rem))
    }

    pub fn gcd(a: &Gf2Poly, b: &Gf2Poly) -> Gf2Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Gf2Poly, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        self.mul(other).rem(modulus)
    }

    /// Irreducibility over GF(2).
    ///
    /// A Ben-Or pass rejects polynomials with a small factor early; the verdict
    /// for survivors comes from Rabin's test: `x^(2^n) = x mod q` and
    /// `gcd(x^(2^(n/r)) - x, q) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::InvalidInput("irreducibility of the zero polynomial".into()));
        }
        let n = self.degree() as usize;
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        if !self.coeff(0) {
            return Ok(false);
        }
        let x = Gf2Poly::x();
        // frob[k] = x^(2^k) mod q
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.clone());
        for k in 1..=n {
            let prev: &Gf2Poly = &frob[k - 1];
            let next = prev.mul_mod(prev, self)?;
            frob.push(next);
            if k <= n / 2 && !Gf2Poly::gcd(self, &frob[k].add(&x)).is_one() {
                return Ok(false);
            }
        }
        if frob[n] != x {
            return Ok(false);
        }
        for r in prime_factors(n) {
            if !Gf2Poly::gcd(self, &frob[n / r].add(&x)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::InvalidInput("empty polynomial".into()));
        }
        if text == "0" {
            return Ok(Gf2Poly::zero());
        }
        let mut exponents = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => {
                    let k = t
                        .strip_prefix("x^")
                        .ok_or_else(|| Error::InvalidInput(format!("bad term `{t}`")))?;
                    k.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in `{t}`")))?
                }
            };
            if exponents.contains(&e) {
                return Err(Error::InvalidInput(format!("repeated term x^{e}")));
            }
            exponents.push(e);
        }
        Ok(Gf2Poly::from_exponents(&exponents))
    }
}

struct Modulus {
    poly: Gf2Poly,
    n: usize,
    support: Vec<usize>,
    // support without the leading exponent n
    low_support: Vec<usize>,
    words: usize,
}

/// An irreducible polynomial `p` of degree `n >= 1` with constant term 1,
/// defining the field `F_2[x]/(p)`. Cheap to clone.
#[derive(Clone)]
pub struct IrreduciblePoly(Arc<Modulus>);

impl IrreduciblePoly {
    pub fn new(poly: Gf2Poly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        if poly.degree() < 1 {
            return Err(Error::InvalidInput(format!("{poly} has degree < 1")));
        }
        if !poly.coeff(0) {
            return Err(Error::Reducible(format!("{poly} has no constant term")));
        }
        if !poly.is_irreducible()? {
            return Err(Error::Reducible(poly.to_string()));
        }
        let n = poly.degree() as usize;
        let support = poly.exponents();
        let low_support = support[..support.len() - 1].to_vec();
        Ok(IrreduciblePoly(Arc::new(Modulus {
            poly,
            n,
            support,
            low_support,
            words: words_for(n),
        })))
    }

    pub fn parse(text: &str) -> Result<Self> {
        IrreduciblePoly::new(text.parse()?)
    }

    pub fn from_exponents(exponents: &[usize]) -> Result<Self> {
        IrreduciblePoly::new(Gf2Poly::from_exponents(exponents))
    }

    /// Field dimension `n`.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn poly(&self) -> &Gf2Poly {
        &self.0.poly
    }

    /// Ascending exponents of `p`, e.g. `[0, m, n]` for a trinomial.
    pub fn support(&self) -> &[usize] {
        &self.0.support
    }

    pub fn weight(&self) -> usize {
        self.0.support.len()
    }

    /// Middle exponent `m` if `p = 1 + x^m + x^n`.
    pub fn trinomial_middle(&self) -> Option<usize> {
        match self.0.support.as_slice() {
            [0, m, _] => Some(*m),
            _ => None,
        }
    }

    fn word_count(&self) -> usize {
        self.0.words
    }

    fn elem(&self, words: Vec<u64>) -> FieldElem {
        debug_assert_eq!(words.len(), self.word_count());
        FieldElem {
            words,
            modulus: self.clone(),
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(vec![0; self.word_count()])
    }

    pub fn one(&self) -> FieldElem {
        self.from_poly(&Gf2Poly::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> FieldElem {
        self.from_poly(&Gf2Poly::x())
    }

    /// Reduce an arbitrary polynomial into the field.
    pub fn from_poly(&self, poly: &Gf2Poly) -> FieldElem {
        self.reduce(poly.words().to_vec())
    }

    /// Element with `coeffs[i]` as the coefficient of `x^i`; needs `len <= n`.
    pub fn from_coeffs(&self, coeffs: &[bool]) -> Result<FieldElem> {
        if coeffs.len() > self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        let mut words = vec![0u64; self.word_count()];
        for (i, _) in coeffs.iter().enumerate().filter(|(_, &b)| b) {
            flip_bit(&mut words, i);
        }
        Ok(self.elem(words))
    }

    /// Element from packed words, rejecting bits at positions `>= n`.
    pub fn from_words(&self, words: &[u64]) -> Result<FieldElem> {
        let poly = Gf2Poly::from_words(words.to_vec());
        if poly.degree() >= self.degree() as i64 {
            return Err(Error::InvalidInput(format!(
                "value has degree {} but the field has dimension {}",
                poly.degree(),
                self.degree()
            )));
        }
        let mut w = poly.words;
        w.resize(self.word_count(), 0);
        Ok(self.elem(w))
    }

    /// Element from the `index`-th integer, bit `i` = coefficient of `x^i`.
    pub fn from_index(&self, index: u64) -> Result<FieldElem> {
        self.from_words(&[index])
    }

    pub fn from_hex(&self, text: &str) -> Result<FieldElem> {
        let digits = text
            .trim()
            .strip_prefix("0x")
            .or_else(|| text.trim().strip_prefix("0X"))
            .ok_or_else(|| Error::InvalidInput(format!("`{text}` is not 0x-prefixed hex")))?;
        if digits.is_empty() {
            return Err(Error::InvalidInput(format!("`{text}` has no digits")));
        }
        let mut words = vec![0u64; words_for(digits.len() * 4)];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::InvalidInput(format!("bad hex digit `{ch}` in `{text}`")))?
                as u64;
            let bit = pos * 4;
            words[bit / 64] |= v << (bit % 64);
        }
        self.from_words(&words)
    }

    /// Accepts either `0x...` hex or polynomial text.
    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let t = text.trim();
        if t.starts_with("0x") || t.starts_with("0X") {
            self.from_hex(t)
        } else {
            let poly: Gf2Poly = t.parse()?;
            if poly.degree() >= self.degree() as i64 {
                return Err(Error::InvalidInput(format!("`{t}` has degree >= {}", self.degree())));
            }
            Ok(self.from_poly(&poly))
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let n = self.degree();
        let mut words: Vec<u64> = (0..self.word_count()).map(|_| rng.gen()).collect();
        let spare = self.word_count() * 64 - n;
        if spare > 0 {
            let last = words.len() - 1;
            words[last] &= u64::MAX >> spare;
        }
        self.elem(words)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Every field element in index order; only for `n <= 24`.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElem> + '_> {
        let n = self.degree();
        if n > 24 {
            return Err(Error::Unsupported(format!("enumerating a field of dimension {n}")));
        }
        Ok((0..1u64 << n).map(move |i| self.from_index(i).expect("index below 2^n")))
    }

    /// Shift-and-XOR reduction of a wide product by the sparse support of `p`.
    fn reduce(&self, mut wide: Vec<u64>) -> FieldElem {
        let n = self.degree();
        let words = self.word_count();
        if wide.len() < words {
            wide.resize(words, 0);
        }
        let low = &self.0.low_support;
        for k in (0..wide.len()).rev() {
            while wide[k] != 0 {
                let top = k * 64 + 63 - wide[k].leading_zeros() as usize;
                if top < n {
                    break;
                }
                flip_bit(&mut wide, top);
                for &s in low {
                    flip_bit(&mut wide, top - n + s);
                }
            }
        }
        wide.truncate(words);
        self.elem(wide)
    }
}

impl PartialEq for IrreduciblePoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }
}

impl Eq for IrreduciblePoly {}

impl fmt::Display for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.poly.fmt(f)
    }
}

impl fmt::Debug for IrreduciblePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IrreduciblePoly({})", self.0.poly)
    }
}

/// An element of `F_2[x]/(p)` as a fixed-width coefficient vector.
#[derive(Clone)]
pub struct FieldElem {
    words: Vec<u64>,
    modulus: IrreduciblePoly,
}

impl FieldElem {
    pub fn modulus(&self) -> &IrreduciblePoly {
        &self.modulus
    }

    pub fn degree_bound(&self) -> usize {
        self.modulus.degree()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn coeff(&self, i: usize) -> bool {
        get_bit(&self.words, i)
    }

    /// Exactly `n` coefficients `a_0 .. a_{n-1}`.
    pub fn coeffs(&self) -> Vec<bool> {
        (0..self.degree_bound()).map(|i| self.coeff(i)).collect()
    }

    pub fn to_poly(&self) -> Gf2Poly {
        Gf2Poly::from_words(self.words.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.words[0] == 1 && self.words[1..].iter().all(|&w| w == 0)
    }

    pub fn to_hex(&self) -> String {
        let nibbles = self.words.len() * 16;
        let mut out = String::new();
        for pos in (0..nibbles).rev() {
            let v = (self.words[pos / 16] >> ((pos % 16) * 4)) & 0xf;
            if v != 0 || !out.is_empty() {
                out.push(char::from_digit(v as u32, 16).expect("nibble"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("0x{out}")
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(self.modulus.elem(words))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.modulus.reduce(clmul_words(&self.words, &other.words)))
    }

    pub fn square(&self) -> FieldElem {
        // Spreading bits is cheaper than a general product.
        let mut wide = vec![0u64; self.words.len() * 2];
        for (k, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let i = k * 64 + rest.trailing_zeros() as usize;
                flip_bit(&mut wide, 2 * i);
                rest &= rest - 1;
            }
        }
        self.modulus.reduce(wide)
    }

    /// `self^(2^k)`.
    pub fn frobenius(&self, k: usize) -> FieldElem {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.square();
        }
        out
    }

    /// The unique square root, `a^(2^(n-1))`.
    pub fn sqrt(&self) -> FieldElem {
        self.frobenius(self.degree_bound() - 1)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.modulus.poly().clone();
        let (mut r0, mut r1) = (p, self.to_poly());
        let (mut s0, mut s1) = (Gf2Poly::zero(), Gf2Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.add(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is the gcd, which is 1 for an irreducible modulus.
        debug_assert!(r0.is_one());
        Ok(self.modulus.from_poly(&s0))
    }

    /// Absolute trace `sum_{i<n} a^(2^i)`, always 0 or 1.
    pub fn trace(&self) -> bool {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.degree_bound() {
            cur = cur.square();
            acc = &acc + &cur;
        }
        debug_assert!(acc.words[1..].iter().all(|&w| w == 0) && acc.words[0] <= 1);
        acc.coeff(0)
    }

    /// Half-trace `sum_{i <= (n-1)/2} a^(2^(2i))`, defined for odd `n`.
    pub fn half_trace(&self) -> Result<FieldElem> {
        let n = self.degree_bound();
        if n.is_multiple_of(2) {
            return Err(Error::Unsupported(format!("half-trace needs odd dimension, got {n}")));
        }
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 0..(n - 1) / 2 {
            cur = cur.square().square();
            acc = &acc + &cur;
        }
        Ok(acc)
    }

    /// A root `z` of `z^2 + z = self`, or `None` when the trace is 1.
    ///
    /// Odd `n` uses the half-trace; even `n` falls back to exhaustive search
    /// and is only supported for `n <= 16`.
    pub fn solve_quadratic(&self) -> Result<Option<FieldElem>> {
        let n = self.degree_bound();
        if n % 2 == 1 {
            if self.trace() {
                return Ok(None);
            }
            return Ok(Some(self.half_trace()?));
        }
        if n > 16 {
            return Err(Error::Unsupported(format!(
                "solving z^2 + z = c for even dimension {n} > 16"
            )));
        }
        if self.trace() {
            return Ok(None);
        }
        Ok(self.modulus.elements()?.find(|z| &(&z.square() + z) == self))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words && self.modulus == other.modulus
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Panics if the operands live in different fields; see [`FieldElem::try_add`].
impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.try_add(rhs).expect("field addition across moduli")
    }
}

impl Add for FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: FieldElem) -> FieldElem {
        &self + &rhs
    }
}

/// Panics if the operands live in different fields; see [`FieldElem::try_mul`].
impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("field multiplication across moduli")
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: FieldElem) -> FieldElem {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SEED: u64 = 0x5eed_0001;

    fn f8() -> IrreduciblePoly {
        IrreduciblePoly::parse("1+x+x^3").unwrap()
    }

    /// Schoolbook multiply and long division on plain bit vectors.
    fn oracle_mul(a: &[bool], b: &[bool], p: &[usize]) -> Vec<bool> {
        let n = *p.last().unwrap();
        let mut prod = vec![false; 2 * n];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] ^= ai && bj;
            }
        }
        for top in (n..2 * n).rev() {
            if prod[top] {
                for &s in p {
                    prod[top - n + s] ^= true;
                }
            }
        }
        prod.truncate(n);
        prod
    }

    #[test]
    fn irreducibility_examples() {
        assert!("1+x+x^3".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        assert!(!"1+x^2".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        assert!(!"1+x+x^2+x^3".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        assert!("1+x+x^4".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(!"1+x^2+x^4".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        // x^6 + x^3 + 1 is irreducible, x^6 + x + 1 too; x^6 + x^5 + x^4 + x^2 + 1 is not
        assert!("1+x^3+x^6".parse::<Gf2Poly>().unwrap().is_irreducible().unwrap());
        assert_eq!(
            Gf2Poly::zero().is_irreducible(),
            Err(Error::InvalidInput("irreducibility of the zero polynomial".into()))
        );
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of irreducible polynomials of degree n over GF(2).
        let expected = [0usize, 2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        for (n, &count) in expected.iter().enumerate().skip(1) {
            let found = (0u64..1 << n)
                .map(|low| Gf2Poly::from_words(vec![low | (1 << n)]))
                .filter(|q| q.is_irreducible().unwrap())
                .count();
            assert_eq!(found, count, "degree {n}");
        }
    }

    #[test]
    fn dss_polynomials_are_irreducible() {
        for text in [
            "1+x^3+x^6+x^7+x^163",
            "1+x^74+x^233",
            "1+x^5+x^7+x^12+x^283",
            "1+x^87+x^409",
            "1+x^2+x^5+x^10+x^571",
        ] {
            assert!(IrreduciblePoly::parse(text).is_ok(), "{text}");
        }
    }

    #[test]
    fn parse_and_display() {
        let p: Gf2Poly = "x^233+1+x^74".parse().unwrap();
        assert_eq!(p.to_string(), "1+x^74+x^233");
        assert_eq!(p.degree(), 233);
        assert_eq!(Gf2Poly::zero().degree(), -1);
        assert!("1+y".parse::<Gf2Poly>().is_err());
        assert!("1+x+x".parse::<Gf2Poly>().is_err());
        assert!(matches!(IrreduciblePoly::parse("1+x^2"), Err(Error::Reducible(_))));
    }

    #[test]
    fn hex_round_trip_and_width() {
        let p = IrreduciblePoly::parse("1+x^74+x^233").unwrap();
        let a = p.from_hex("0x1234567890abcdef1234567890abcdef").unwrap();
        assert_eq!(a.to_hex(), "0x1234567890abcdef1234567890abcdef");
        assert_eq!(p.zero().to_hex(), "0x0");
        assert_eq!(f8().from_hex("0x5").unwrap().coeffs(), vec![true, false, true]);
        assert!(f8().from_hex("0x8").is_err());
        assert!(f8().from_hex("12").is_err());
        assert_eq!(f8().parse_elem("1+x^2").unwrap(), f8().from_hex("0x5").unwrap());
    }

    #[test]
    fn addition_examples() {
        let f = f8();
        let a = f.parse_elem("1+x").unwrap();
        let b = f.parse_elem("x+x^2").unwrap();
        assert_eq!(&a + &b, f.parse_elem("1+x^2").unwrap());
        assert!((&a + &a).is_zero());
        assert_eq!(&a + &f.zero(), a);
        let g = IrreduciblePoly::parse("1+x^2+x^5").unwrap();
        assert_eq!(a.try_add(&g.one()), Err(Error::ModulusMismatch));
        assert_eq!(a.try_mul(&g.one()), Err(Error::ModulusMismatch));
    }

    #[test]
    fn multiplication_examples_in_f8() {
        let f = f8();
        let x = f.generator();
        let x2 = f.parse_elem("x^2").unwrap();
        // frozen from `oracle_mul`
        assert_eq!(
            oracle_mul(&x.coeffs(), &x2.coeffs(), &[0, 1, 3]),
            vec![true, true, false]
        );
        assert_eq!(
            oracle_mul(&x2.coeffs(), &x2.coeffs(), &[0, 1, 3]),
            vec![false, true, true]
        );
        assert_eq!(&x * &x2, f.parse_elem("1+x").unwrap());
        assert_eq!(&x2 * &x2, f.parse_elem("x+x^2").unwrap());
        assert_eq!(&x2 * &f.one(), x2);
    }

    #[test]
    fn multiplication_matches_oracle_on_wide_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for text in ["1+x^74+x^233", "1+x^2+x^5+x^10+x^571", "1+x+x^7"] {
            let p = IrreduciblePoly::parse(text).unwrap();
            for _ in 0..20 {
                let a = p.random(&mut rng);
                let b = p.random(&mut rng);
                let expected = oracle_mul(&a.coeffs(), &b.coeffs(), p.support());
                assert_eq!((&a * &b).coeffs(), expected, "seed {SEED:#x}, field {text}");
            }
        }
    }

    #[test]
    fn squaring_x_in_f128() {
        let p = IrreduciblePoly::parse("1+x+x^7").unwrap();
        assert_eq!(p.generator().square(), p.parse_elem("x^2").unwrap());
    }

    #[test]
    fn sqrt_inverts_square_in_f2_233() {
        let p = IrreduciblePoly::parse("1+x^74+x^233").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..100 {
            let a = p.random(&mut rng);
            assert_eq!(a.square().sqrt(), a);
            assert_eq!(a.square(), &a * &a);
        }
    }

    #[test]
    fn inverse_examples() {
        let f = f8();
        assert_eq!(f.one().inverse().unwrap(), f.one());
        assert_eq!(f.zero().inverse(), Err(Error::DivisionByZero));
        for a in f.elements().unwrap().skip(1) {
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn trace_by_sum_of_conjugates() {
        // Oracle: the conjugates of 1 are all 1, so Tr(1) = n mod 2.
        let f = f8();
        assert!(f.one().trace());
        let f16 = IrreduciblePoly::parse("1+x+x^4").unwrap();
        assert!(!f16.one().trace());
        // Exactly half the elements have trace 0.
        let zeros = f16.elements().unwrap().filter(|a| !a.trace()).count();
        assert_eq!(zeros, 8);
    }

    #[test]
    fn quadratic_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let p = IrreduciblePoly::parse("1+x+x^7").unwrap();
        assert_eq!(p.zero().solve_quadratic().unwrap(), Some(p.zero()));
        let mut solved = 0;
        for _ in 0..200 {
            let c = p.random(&mut rng);
            match c.solve_quadratic().unwrap() {
                Some(z) => {
                    assert!(!c.trace());
                    assert_eq!(&z.square() + &z, c);
                    solved += 1;
                }
                None => assert!(c.trace()),
            }
        }
        assert!(solved > 50);
        let even = IrreduciblePoly::parse("1+x+x^4").unwrap();
        for c in even.elements().unwrap() {
            if let Some(z) = c.solve_quadratic().unwrap() {
                assert_eq!(&z.square() + &z, c);
            } else {
                assert!(c.trace());
            }
        }
        let big_even = (1..18)
            .find_map(|m| IrreduciblePoly::from_exponents(&[0, m, 18]).ok())
            .unwrap();
        assert!(matches!(big_even.one().solve_quadratic(), Err(Error::Unsupported(_))));
    }
}
