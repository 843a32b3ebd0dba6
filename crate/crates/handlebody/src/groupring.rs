//! Group rings over `Z` and `Q` with words as basis, and matrices over them.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};
use crate::words::{Alphabet, Word};

pub type Z = BigInt;
pub type Q = BigRational;

/// Scalars used as group-ring coefficients.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn parse(s: &str) -> Option<Self>;
    fn to_q(&self) -> Q;
}

impl Coeff for Z {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn to_q(&self) -> Q {
        Q::from_integer(self.clone())
    }
}

impl Coeff for Q {
    fn from_i64(n: i64) -> Self {
        Q::from_integer(BigInt::from(n))
    }
    fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((a, b)) => {
                let d: BigInt = b.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Q::new(a.trim().parse().ok()?, d))
            }
            None => Some(Q::from_integer(s.trim().parse().ok()?)),
        }
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
}

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Finite formal combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRing<C> {
    terms: BTreeMap<Word, C>,
}

pub type ZG = GroupRing<Z>;
pub type QG = GroupRing<Q>;

impl<C: Coeff> GroupRing<C> {
    pub fn zero() -> Self {
        GroupRing {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::word(Word::one())
    }

    pub fn word(w: Word) -> Self {
        Self::term(C::one(), w)
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Word::one())
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut r = Self::zero();
        r.add_term(c, w);
        r
    }

    pub fn from_terms<I: IntoIterator<Item = (C, Word)>>(it: I) -> Self {
        let mut r = Self::zero();
        for (c, w) in it {
            r.add_term(c, w);
        }
        r
    }

    pub fn add_term(&mut self, c: C, w: Word) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRing {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// The sum of the coefficients.
    pub fn augmentation(&self) -> C {
        self.terms.values().fold(C::zero(), |a, b| a + b.clone())
    }

    /// The antipode `w -> w^-1` extended linearly.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), w.inv())))
    }

    /// Applies a map of the underlying group.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), f(w))))
    }

    pub fn left_mul_word(&self, w: &Word) -> Self {
        self.map_words(|v| w.mul(v))
    }

    pub fn right_mul_word(&self, w: &Word) -> Self {
        self.map_words(|v| v.mul(w))
    }

    pub fn to_q(&self) -> QG {
        QG::from_terms(self.terms.iter().map(|(w, c)| (c.to_q(), w.clone())))
    }

    pub fn format(&self, al: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if w.is_one() {
                s.push_str(&a.to_string());
            } else {
                s.push_str(&format!("{}*{}", a, al.format(w)));
            }
        }
        s
    }

    /// Parses the output of [`GroupRing::format`]; a bare word means
    /// coefficient one.
    pub fn parse(al: &Alphabet, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut r = Self::zero();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = false;
        let cs: Vec<char> = s.chars().collect();
        for (i, &c) in cs.iter().enumerate() {
            let at_term_start = cur.trim().is_empty();
            let after_caret = i > 0 && cs[i - 1] == '^';
            if (c == '+' || c == '-') && !after_caret {
                if at_term_start {
                    if c == '-' {
                        sign = !sign;
                    }
                    continue;
                }
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = c == '-';
                continue;
            }
            cur.push(c);
        }
        if cur.trim().is_empty() {
            return parse_err(format!("dangling sign in '{s}'"));
        }
        pieces.push((sign, cur));
        for (neg, p) in pieces {
            let p = p.trim();
            let (c, w) = match p.split_once('*') {
                Some((c, w)) => {
                    let c = C::parse(c.trim())
                        .ok_or_else(|| Error::Parse(format!("bad coefficient '{c}'")))?;
                    (c, al.parse(w)?)
                }
                None => match C::parse(p) {
                    Some(c) => (c, Word::one()),
                    None => (C::one(), al.parse(p)?),
                },
            };
            r.add_term(if neg { -c } else { c }, w);
        }
        Ok(r)
    }
}

impl<C: Coeff> Add for &GroupRing<C> {
    type Output = GroupRing<C>;
    fn add(self, o: &GroupRing<C>) -> GroupRing<C> {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(c.clone(), w.clone());
        }
        r
    }
}

impl<C: Coeff> Sub for &GroupRing<C> {
    type Output = GroupRing<C>;
    fn sub(self, o: &GroupRing<C>) -> GroupRing<C> {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(-c.clone(), w.clone());
        }
        r
    }
}

impl<C: Coeff> Neg for &GroupRing<C> {
    type Output = GroupRing<C>;
    fn neg(self) -> GroupRing<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Mul for &GroupRing<C> {
    type Output = GroupRing<C>;
    fn mul(self, o: &GroupRing<C>) -> GroupRing<C> {
        let mut r = GroupRing::zero();
        for (w, c) in &self.terms {
            for (v, d) in &o.terms {
                r.add_term(c.clone() * d.clone(), w.mul(v));
            }
        }
        r
    }
}

impl<C: Coeff> std::ops::AddAssign<&GroupRing<C>> for GroupRing<C> {
    fn add_assign(&mut self, o: &GroupRing<C>) {
        for (w, c) in &o.terms {
            self.add_term(c.clone(), w.clone());
        }
    }
}

impl<C: Coeff> std::ops::SubAssign<&GroupRing<C>> for GroupRing<C> {
    fn sub_assign(&mut self, o: &GroupRing<C>) {
        for (w, c) in &o.terms {
            self.add_term(-c.clone(), w.clone());
        }
    }
}

/// Dense matrix over a group ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix<C> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<GroupRing<C>>,
}

impl<C: Coeff> RingMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix {
            rows,
            cols,
            entries: vec![GroupRing::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GroupRing::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> GroupRing<C>>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRing<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRing<C>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = GroupRing::zero();
            for k in 0..self.cols {
                acc += &(self.get(i, k) * o.get(k, j));
            }
            acc
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    /// Transpose with the antipode applied entrywise.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).bar())
    }

    pub fn map_entries<F: FnMut(&GroupRing<C>) -> GroupRing<C>>(&self, mut f: F) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn format(&self, al: &Alphabet) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let es: Vec<String> = (0..self.cols).map(|j| self.get(i, j).format(al)).collect();
                format!("[{}]", es.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(",\n "))
    }
}

/// Laurent polynomial in one variable `t`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    pub terms: BTreeMap<i64, Z>,
}

impl Laurent {
    pub fn add_term(&mut self, e: i64, c: Z) {
        let v = self.terms.remove(&e).unwrap_or_else(Z::zero) + c;
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Laurent {
        let mut l = Laurent::default();
        for (e, c) in it {
            l.add_term(e, Z::from(c));
        }
        l
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            match *e {
                0 => s.push_str(&a.to_string()),
                1 => s.push_str(&format!("{a}*t")),
                _ => s.push_str(&format!("{a}*t^{e}")),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_parse_roundtrip() {
        let al = Alphabet::Free(2);
        let x = ZG::parse(&al, "3*x1 x2 - x1^-1 + 2").unwrap();
        assert_eq!(x.format(&al), "2 - 1*x1^-1 + 3*x1 x2");
        assert_eq!(ZG::parse(&al, &x.format(&al)).unwrap(), x);
        let y = QG::parse(&al, "-1/2*x2^-3").unwrap();
        assert_eq!(y.format(&al), "-1/2*x2^-3");
    }

    #[test]
    fn bar_is_anti_multiplicative() {
        let al = Alphabet::Free(2);
        let x = ZG::parse(&al, "x1 - 2*x2 x1").unwrap();
        let y = ZG::parse(&al, "x2^-1 + 3").unwrap();
        assert_eq!((&x * &y).bar(), &y.bar() * &x.bar());
        assert_eq!(
            (&x * &y).augmentation(),
            x.augmentation() * y.augmentation()
        );
    }
}
