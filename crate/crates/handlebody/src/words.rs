//! Reduced words in free groups, the surface group with its handlebody
//! splitting, endomorphisms given on generators, and a catalog of
//! automorphisms.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, precondition, Error, Result};

/// A freely reduced word.  Letter `k > 0` is the generator with 1-based
/// index `k`, letter `-k` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(Vec<i32>);

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                let c = letter_key(*a).cmp(&letter_key(*b));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    /// The generator with 1-based index `k`.
    pub fn gen(k: usize) -> Word {
        Word(vec![k as i32])
    }

    pub fn letter(l: i32) -> Word {
        assert!(l != 0);
        Word(vec![l])
    }

    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Word {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let n = self.0.len();
        while k < n && k < other.0.len() && self.0[n - 1 - k] == -other.0[k] {
            k += 1;
        }
        let mut v = Vec::with_capacity(n - k + other.0.len() - k);
        v.extend_from_slice(&self.0[..n - k]);
        v.extend_from_slice(&other.0[k..]);
        Word(v)
    }

    pub fn inv(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut out = Word::one();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `by * self * by^-1`
    pub fn conj(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inv())
    }

    /// Image under the homomorphism sending generator `k` to `image(k)`.
    pub fn substitute<F: FnMut(usize) -> Word>(&self, mut image: F) -> Word {
        let mut out = Word::one();
        for &l in &self.0 {
            let w = image(l.unsigned_abs() as usize);
            out = if l > 0 {
                out.mul(&w)
            } else {
                out.mul(&w.inv())
            };
        }
        out
    }

    pub fn exponent_sum(&self, k: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.unsigned_abs() as usize == k)
            .map(|l| l.signum() as i64)
            .sum()
    }

    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }
}

impl fmt::Display for Word {
    /// Plain form without generator names: `[1, -2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Naming context for words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Alphabet {
    /// `a1..ag` are generators `1..g`, `b1..bg` are `g+1..2g`.
    Surface(usize),
    /// `x1..xg`.
    Free(usize),
}

impl Alphabet {
    pub fn rank(&self) -> usize {
        match *self {
            Alphabet::Surface(g) => 2 * g,
            Alphabet::Free(g) => g,
        }
    }

    pub fn genus(&self) -> usize {
        match *self {
            Alphabet::Surface(g) | Alphabet::Free(g) => g,
        }
    }

    pub fn name(&self, k: usize) -> String {
        match *self {
            Alphabet::Surface(g) if k <= g => format!("a{k}"),
            Alphabet::Surface(g) => format!("b{}", k - g),
            Alphabet::Free(_) => format!("x{k}"),
        }
    }

    fn lookup(&self, prefix: char, idx: usize) -> Option<usize> {
        let g = self.genus();
        if idx == 0 || idx > g {
            return None;
        }
        match (*self, prefix) {
            (Alphabet::Surface(_), 'a') => Some(idx),
            (Alphabet::Surface(_), 'b') => Some(g + idx),
            (Alphabet::Free(_), 'x') => Some(idx),
            _ => None,
        }
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let ls = w.letters();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            let e = (j - i) as i64 * ls[i].signum() as i64;
            let name = self.name(ls[i].unsigned_abs() as usize);
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
            i = j;
        }
        parts.join(" ")
    }

    /// Parses `a1 b2^-1 a1^3`; the empty string and `1` give the identity.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        while i < cs.len() {
            let c = cs[i];
            if c.is_whitespace() || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' && (i + 1 == cs.len() || !cs[i + 1].is_ascii_digit()) {
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return parse_err(format!("unexpected '{c}' in word '{s}'"));
            }
            i += 1;
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let idx: usize = cs[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse(format!("missing index after '{c}' in '{s}'")))?;
            let k = self
                .lookup(c, idx)
                .ok_or_else(|| Error::Parse(format!("no generator {c}{idx} in {self:?}")))?;
            let mut e: i64 = 1;
            if i < cs.len() && cs[i] == '^' {
                i += 1;
                let st = i;
                if i < cs.len() && (cs[i] == '-' || cs[i] == '+') {
                    i += 1;
                }
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                e = cs[st..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{s}'")))?;
            }
            let l = if e < 0 { -(k as i32) } else { k as i32 };
            for _ in 0..e.unsigned_abs() {
                letters.push(l);
            }
        }
        Ok(Word::from_letters(letters))
    }
}

pub fn alpha(g: usize, i: usize) -> Word {
    assert!(i >= 1 && i <= g);
    Word::gen(i)
}

pub fn beta(g: usize, j: usize) -> Word {
    assert!(j >= 1 && j <= g);
    Word::gen(g + j)
}

/// The quotient map onto the free group `F`: kills every `a_i`,
/// sends `b_j` to `x_j`.
pub fn varpi(g: usize, w: &Word) -> Word {
    Word::from_letters(w.letters().iter().filter_map(|&l| {
        let k = l.unsigned_abs() as usize;
        (k > g).then(|| (k - g) as i32 * l.signum())
    }))
}

/// The section `x_j -> b_j`.
pub fn lift_f(g: usize, f: &Word) -> Word {
    Word::from_letters(
        f.letters()
            .iter()
            .map(|&l| (l.unsigned_abs() as usize + g) as i32 * l.signum()),
    )
}

/// `b_i^-1 a_i b_i`
pub fn alpha_prime(g: usize, i: usize) -> Word {
    alpha(g, i).conj(&beta(g, i).inv())
}

/// The boundary word `[a_g, b_g^-1] ... [a_1, b_1^-1]`.
pub fn zeta(g: usize) -> Word {
    let mut w = Word::one();
    for i in (1..=g).rev() {
        w = w.mul(&alpha(g, i)).mul(&alpha_prime(g, i).inv());
    }
    w
}

/// Membership in the normal closure of the `a_i`.
pub fn in_a(g: usize, w: &Word) -> bool {
    varpi(g, w).is_one()
}

/// An endomorphism of a free group given by generator images,
/// optionally with the images of its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Endo {
    pub alphabet: Alphabet,
    pub images: Vec<Word>,
    pub inverse: Option<Vec<Word>>,
}

impl Endo {
    pub fn identity(alphabet: Alphabet) -> Endo {
        let imgs: Vec<Word> = (1..=alphabet.rank()).map(Word::gen).collect();
        Endo {
            alphabet,
            images: imgs.clone(),
            inverse: Some(imgs),
        }
    }

    pub fn new(alphabet: Alphabet, images: Vec<Word>, inverse: Option<Vec<Word>>) -> Endo {
        assert_eq!(images.len(), alphabet.rank());
        Endo {
            alphabet,
            images,
            inverse,
        }
    }

    pub fn genus(&self) -> usize {
        self.alphabet.genus()
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(|k| self.images[k - 1].clone())
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Endo) -> Endo {
        assert_eq!(self.alphabet, other.alphabet);
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => {
                let ainv = Endo::new(self.alphabet, a.clone(), None);
                let binv = Endo::new(self.alphabet, b.clone(), None);
                Some(ainv.images.iter().map(|w| binv.apply(w)).collect())
            }
            _ => None,
        };
        Endo {
            alphabet: self.alphabet,
            images,
            inverse,
        }
    }

    pub fn inverse(&self) -> Option<Endo> {
        self.inverse.as_ref().map(|inv| Endo {
            alphabet: self.alphabet,
            images: inv.clone(),
            inverse: Some(self.images.clone()),
        })
    }

    pub fn pow(&self, n: i64) -> Option<Endo> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = Endo::identity(self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| *w == Word::gen(k + 1))
    }

    /// The induced map on `F`; defined when `A` is preserved.
    pub fn induced_f(&self) -> Result<Endo> {
        let g = self.genus();
        let Alphabet::Surface(_) = self.alphabet else {
            return precondition("NOT_SURFACE", "induced map needs a surface endomorphism");
        };
        for i in 1..=g {
            if !in_a(g, &self.images[i - 1]) {
                return precondition("NOT_PRESERVING_A", format!("image of a{i} not in A"));
            }
        }
        let ims = (1..=g).map(|j| varpi(g, &self.images[g + j - 1])).collect();
        let inv = self
            .inverse
            .as_ref()
            .map(|v| (1..=g).map(|j| varpi(g, &v[g + j - 1])).collect());
        Ok(Endo::new(Alphabet::Free(g), ims, inv))
    }

    pub fn format(&self) -> String {
        let a = self.alphabet;
        (1..=a.rank())
            .map(|k| format!("{} -> {}", a.name(k), a.format(&self.images[k - 1])))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Verdict of [`verify_pair_automorphism`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Ok,
    NotAutomorphism,
    NotFixingZeta,
    NotPreservingA,
}

impl Verdict {
    pub fn code(&self) -> &'static str {
        match self {
            Verdict::Ok => "OK",
            Verdict::NotAutomorphism => "NOT_AUTOMORPHISM",
            Verdict::NotFixingZeta => "NOT_FIXING_ZETA",
            Verdict::NotPreservingA => "NOT_PRESERVING_A",
        }
    }
}

/// Checks that `f` is an automorphism of the surface group (using the
/// supplied inverse), fixes the boundary word and preserves `A`.
pub fn verify_pair_automorphism(f: &Endo) -> Verdict {
    let Alphabet::Surface(g) = f.alphabet else {
        return Verdict::NotAutomorphism;
    };
    let Some(inv) = f.inverse() else {
        return Verdict::NotAutomorphism;
    };
    if !f.compose(&inv).is_identity() || !inv.compose(f).is_identity() {
        return Verdict::NotAutomorphism;
    }
    if f.apply(&zeta(g)) != zeta(g) {
        return Verdict::NotFixingZeta;
    }
    if (1..=g).any(|i| !in_a(g, &f.images[i - 1])) {
        return Verdict::NotPreservingA;
    }
    Verdict::Ok
}

/// Named automorphisms of the surface group.
pub mod catalog {
    use super::*;

    fn base(g: usize) -> (Vec<Word>, Vec<Word>) {
        let id: Vec<Word> = (1..=2 * g).map(Word::gen).collect();
        (id.clone(), id)
    }

    fn check_index(g: usize, i: usize) -> Result<()> {
        if i == 0 || i > g {
            return precondition("BAD_INDEX", format!("index {i} outside 1..={g}"));
        }
        Ok(())
    }

    /// Twist along the meridian `a_i`: `b_i -> a_i b_i`.
    pub fn twist_alpha(g: usize, i: usize) -> Result<Endo> {
        check_index(g, i)?;
        let (mut im, mut inv) = base(g);
        im[g + i - 1] = alpha(g, i).mul(&beta(g, i));
        inv[g + i - 1] = alpha(g, i).inv().mul(&beta(g, i));
        Ok(Endo::new(Alphabet::Surface(g), im, Some(inv)))
    }

    /// Twist along the boundary: conjugation by the boundary word.
    pub fn twist_boundary(g: usize) -> Endo {
        let z = zeta(g);
        let im = (1..=2 * g).map(|k| Word::gen(k).conj(&z)).collect();
        let inv = (1..=2 * g).map(|k| Word::gen(k).conj(&z.inv())).collect();
        Endo::new(Alphabet::Surface(g), im, Some(inv))
    }

    fn beta_word(g: usize, x: &Word) -> Result<Word> {
        if x.max_generator() > g {
            return precondition("BAD_INDEX", "conjugating word uses an unknown x generator");
        }
        Ok(lift_f(g, x))
    }

    /// `a_i -> x^-1 a_i^eps x` with `x` a word in the `b_j` (given in `F`).
    pub fn elem_d(g: usize, i: usize, eps: i32, x: &Word) -> Result<Endo> {
        check_index(g, i)?;
        if eps != 1 && eps != -1 {
            return precondition("BAD_EXPONENT", "eps must be 1 or -1");
        }
        let b = beta_word(g, x)?;
        let (mut im, mut inv) = base(g);
        im[i - 1] = alpha(g, i).pow(eps as i64).conj(&b.inv());
        inv[i - 1] = alpha(g, i).conj(&b).pow(eps as i64);
        Ok(Endo::new(Alphabet::Surface(g), im, Some(inv)))
    }

    /// `a_j -> (x^-1 a_i x) a_j` for `i != j`.
    pub fn elem_e(g: usize, i: usize, j: usize, x: &Word) -> Result<Endo> {
        check_index(g, i)?;
        check_index(g, j)?;
        if i == j {
            return precondition("BAD_INDEX", "elem_e needs distinct indices");
        }
        let b = beta_word(g, x)?;
        let (mut im, mut inv) = base(g);
        im[j - 1] = alpha(g, i).conj(&b.inv()).mul(&alpha(g, j));
        inv[j - 1] = alpha(g, i).inv().conj(&b.inv()).mul(&alpha(g, j));
        Ok(Endo::new(Alphabet::Surface(g), im, Some(inv)))
    }

    /// Conjugate of `b_i -> a_s b_i` by `a_s -> b a_s b^-1`; `b` must avoid `a_s`.
    pub fn phi(g: usize, i: usize, s: usize, b: &Word) -> Result<Endo> {
        check_index(g, i)?;
        check_index(g, s)?;
        if b.letters().iter().any(|l| l.unsigned_abs() as usize == s) {
            return precondition("BAD_CONJUGATOR", "conjugating word must avoid a_s");
        }
        if b.max_generator() > 2 * g {
            return precondition("BAD_INDEX", "conjugating word uses an unknown generator");
        }
        let (mut cim, mut cinv) = base(g);
        cim[s - 1] = alpha(g, s).conj(b);
        cinv[s - 1] = alpha(g, s).conj(&b.inv());
        let c = Endo::new(Alphabet::Surface(g), cim, Some(cinv));
        let (mut tim, mut tinv) = base(g);
        tim[g + i - 1] = alpha(g, s).mul(&beta(g, i));
        tinv[g + i - 1] = alpha(g, s).inv().mul(&beta(g, i));
        let t = Endo::new(Alphabet::Surface(g), tim, Some(tinv));
        let cinv = c.inverse().expect("inverse supplied");
        Ok(c.compose(&t).compose(&cinv))
    }

    /// Lift of an automorphism of `F` (acting on the `b_j`, fixing the `a_i`).
    pub fn aut_f_lift(g: usize, sigma: &Endo) -> Result<Endo> {
        if sigma.alphabet != Alphabet::Free(g) {
            return precondition("BAD_ALPHABET", "expected an automorphism of F");
        }
        let Some(sinv) = &sigma.inverse else {
            return precondition("NOT_AUTOMORPHISM", "inverse images of sigma required");
        };
        let (mut im, mut inv) = base(g);
        for j in 1..=g {
            im[g + j - 1] = lift_f(g, &sigma.images[j - 1]);
            inv[g + j - 1] = lift_f(g, &sinv[j - 1]);
        }
        Ok(Endo::new(Alphabet::Surface(g), im, Some(inv)))
    }

    fn handle_commutator(g: usize, i: usize) -> Word {
        alpha(g, i).mul(&alpha_prime(g, i).inv())
    }

    /// Exchanges handles `i` and `i+1`, with the correction that keeps
    /// the boundary word fixed.
    pub fn handle_swap(g: usize, i: usize) -> Result<Endo> {
        check_index(g, i)?;
        check_index(g, i + 1)?;
        let (mut im, mut inv) = base(g);
        let ci = handle_commutator(g, i);
        let cn = handle_commutator(g, i + 1);
        im[i - 1] = alpha(g, i + 1).conj(&ci.inv());
        im[g + i - 1] = beta(g, i + 1).conj(&ci.inv());
        im[i] = alpha(g, i);
        im[g + i] = beta(g, i);
        inv[i - 1] = alpha(g, i + 1);
        inv[g + i - 1] = beta(g, i + 1);
        inv[i] = alpha(g, i).conj(&cn);
        inv[g + i] = beta(g, i).conj(&cn);
        Ok(Endo::new(Alphabet::Surface(g), im, Some(inv)))
    }

    /// The square of the half-rotation of handle `i`; acts on `F` by `x_i -> x_i^-1`.
    pub fn handle_flip(g: usize, i: usize) -> Result<Endo> {
        check_index(g, i)?;
        let ta = twist_alpha(g, i)?;
        let (mut im, mut inv) = base(g);
        im[i - 1] = alpha(g, i).mul(&beta(g, i).inv());
        inv[i - 1] = alpha(g, i).mul(&beta(g, i));
        let tb = Endo::new(Alphabet::Surface(g), im, Some(inv));
        let r = ta.compose(&tb).compose(&ta);
        Ok(r.compose(&r))
    }

    /// Twist along the curve enclosing the consecutive feet `k..=l`, where
    /// the feet are numbered along the boundary word: position `2(g-i)+1`
    /// is `a_i` and position `2(g-i)+2` is the conjugate `b_i^-1 a_i b_i`.
    /// Every such curve bounds a disk, so the twist acts trivially on `F`.
    pub fn twist_block(g: usize, k: usize, l: usize) -> Result<Endo> {
        if k == 0 || k > l || l > 2 * g {
            return precondition(
                "BAD_INDEX",
                format!("block {k}..={l} outside 1..={}", 2 * g),
            );
        }
        let foot = |p: usize| -> Word {
            let i = g - (p - 1) / 2;
            if p % 2 == 1 {
                alpha(g, i)
            } else {
                alpha_prime(g, i).inv()
            }
        };
        let c = (k..=l).fold(Word::one(), |acc, p| acc.mul(&foot(p)));
        let build = |c: &Word| -> Vec<Word> {
            let (mut im, _) = base(g);
            for i in 1..=g {
                let pa = 2 * (g - i) + 1;
                let has_a = (k..=l).contains(&pa);
                let has_b = (k..=l).contains(&(pa + 1));
                if has_a {
                    im[i - 1] = alpha(g, i).conj(c);
                }
                im[g + i - 1] = match (has_a, has_b) {
                    (true, true) => beta(g, i).conj(c),
                    (true, false) => c.mul(&beta(g, i)),
                    (false, true) => beta(g, i).mul(&c.inv()),
                    (false, false) => beta(g, i),
                };
            }
            im
        };
        Ok(Endo::new(
            Alphabet::Surface(g),
            build(&c),
            Some(build(&c.inv())),
        ))
    }

    /// Parses `name(args)` terms joined by `*`, each optionally raised to
    /// an integer power: `twist_alpha(1) * twist_boundary^-1`.
    ///
    /// Names: `id`, `twist_alpha(i)`, `twist_boundary`, `elem_d(i,eps,x-word)`,
    /// `elem_e(i,j,x-word)`, `phi(i,s,word)`, `twist_block(k,l)`,
    /// `handle_swap(i)`, `handle_flip(i)`.
    pub fn parse_product(g: usize, s: &str) -> Result<Endo> {
        let mut out = Endo::identity(Alphabet::Surface(g));
        for term in split_top(s, '*') {
            let term = term.trim();
            if term.is_empty() {
                return parse_err(format!("empty factor in '{s}'"));
            }
            let (body, power) = match term.rfind('^') {
                Some(p)
                    if term[p + 1..].trim().parse::<i64>().is_ok() && !term[p..].contains(')') =>
                {
                    (&term[..p], term[p + 1..].trim().parse::<i64>().unwrap())
                }
                _ => (term, 1),
            };
            let e = named(g, body.trim())?;
            let e = e
                .pow(power)
                .ok_or_else(|| Error::Parse("missing inverse".into()))?;
            out = out.compose(&e);
        }
        Ok(out)
    }

    fn split_top(s: &str, sep: char) -> Vec<String> {
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut out = Vec::new();
        for c in s.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if c == sep && depth == 0 {
                out.push(std::mem::take(&mut cur));
            } else {
                cur.push(c);
            }
        }
        out.push(cur);
        out
    }

    fn named(g: usize, s: &str) -> Result<Endo> {
        let (name, args) = match s.find('(') {
            Some(p) => {
                if !s.ends_with(')') {
                    return parse_err(format!("unbalanced parentheses in '{s}'"));
                }
                (&s[..p], split_top(&s[p + 1..s.len() - 1], ','))
            }
            None => (s, Vec::new()),
        };
        let num = |k: usize| -> Result<i64> {
            args.get(k)
                .and_then(|a| a.trim().parse::<i64>().ok())
                .ok_or_else(|| {
                    Error::Parse(format!("argument {} of {name} must be an integer", k + 1))
                })
        };
        let fw = |k: usize| -> Result<Word> {
            let a = args
                .get(k)
                .ok_or_else(|| Error::Parse(format!("{name} needs {} arguments", k + 1)))?;
            Alphabet::Free(g).parse(a)
        };
        let pw = |k: usize| -> Result<Word> {
            let a = args
                .get(k)
                .ok_or_else(|| Error::Parse(format!("{name} needs {} arguments", k + 1)))?;
            Alphabet::Surface(g).parse(a)
        };
        let idx = |k: usize| -> Result<usize> {
            let v = num(k)?;
            if v < 1 {
                return parse_err(format!("index must be positive in '{s}'"));
            }
            Ok(v as usize)
        };
        match name.trim() {
            "id" => Ok(Endo::identity(Alphabet::Surface(g))),
            "twist_alpha" => twist_alpha(g, idx(0)?),
            "twist_boundary" => Ok(twist_boundary(g)),
            "elem_d" => elem_d(g, idx(0)?, num(1)? as i32, &fw(2)?),
            "elem_e" => elem_e(g, idx(0)?, idx(1)?, &fw(2)?),
            "phi" => phi(g, idx(0)?, idx(1)?, &pw(2)?),
            "twist_block" => twist_block(g, idx(0)?, idx(1)?),
            "handle_swap" => handle_swap(g, idx(0)?),
            "handle_flip" => handle_flip(g, idx(0)?),
            other => parse_err(format!("unknown catalog element '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_order() {
        let w = Word::from_letters([1, 2, -2, -1, 3]);
        assert_eq!(w, Word::gen(3));
        let a = Word::from_letters([1]);
        let ai = Word::from_letters([-1]);
        let b = Word::from_letters([2]);
        assert!(a < ai && ai < b);
        assert!(b < Word::from_letters([1, 1]));
    }

    #[test]
    fn parse_print_roundtrip() {
        let al = Alphabet::Surface(2);
        let w = al.parse("a1 b2^-2 a2^3 b1").unwrap();
        assert_eq!(al.format(&w), "a1 b2^-2 a2^3 b1");
        assert_eq!(al.parse("1").unwrap(), Word::one());
        assert!(al.parse("a3").is_err());
    }

    #[test]
    fn zeta_genus_one() {
        let al = Alphabet::Surface(1);
        assert_eq!(al.format(&zeta(1)), "a1 b1^-1 a1^-1 b1");
        assert_eq!(zeta(2).len(), 8);
        assert!(varpi(3, &zeta(3)).is_one());
    }

    #[test]
    fn catalog_members_verify() {
        for g in 1..=3 {
            assert_eq!(
                verify_pair_automorphism(&catalog::twist_boundary(g)),
                Verdict::Ok
            );
            for i in 1..=g {
                assert_eq!(
                    verify_pair_automorphism(&catalog::twist_alpha(g, i).unwrap()),
                    Verdict::Ok
                );
                assert_eq!(
                    verify_pair_automorphism(&catalog::handle_flip(g, i).unwrap()),
                    Verdict::Ok
                );
                let b = catalog::twist_block(g, 2 * (g - i) + 2, 2 * (g - i) + 2).unwrap();
                assert_eq!(b, catalog::twist_alpha(g, i).unwrap());
                if i < g {
                    assert_eq!(
                        verify_pair_automorphism(&catalog::handle_swap(g, i).unwrap()),
                        Verdict::Ok
                    );
                }
            }
        }
        for k in 1..=6 {
            for l in k..=6 {
                assert_eq!(
                    verify_pair_automorphism(&catalog::twist_block(3, k, l).unwrap()),
                    Verdict::Ok
                );
            }
        }
        assert_eq!(
            catalog::twist_block(2, 1, 4).unwrap().images,
            catalog::twist_boundary(2).images
        );
        let d = catalog::elem_d(2, 1, -1, &Word::gen(2)).unwrap();
        assert_eq!(verify_pair_automorphism(&d), Verdict::NotFixingZeta);
    }

    #[test]
    fn phi_image() {
        let g = 2;
        let b = Alphabet::Surface(g).parse("b2 a1").unwrap();
        let f = catalog::phi(g, 1, 2, &b).unwrap();
        let expect = alpha(g, 2).conj(&b).mul(&beta(g, 1));
        assert_eq!(f.apply(&beta(g, 1)), expect);
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).is_identity());
    }
}
