//! The free `Z[F]`-module on the meridian classes, the tensor algebra and
//! free Lie algebra over it (Lyndon normal form), the diagonal action of
//! `F`, and coinvariants.
//!
//! The tensor and Lyndon machinery is generic in the letter type so it can
//! be reused on abstract alphabets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, precondition, Error, Result};
use crate::groupring::{Coeff, Q, QG};
use crate::words::{Alphabet, Word};

/// Letter types for tensors and Lie elements.
pub trait Sym: Clone + Ord + Hash + Debug {}
impl<T: Clone + Ord + Hash + Debug> Sym for T {}

/// Noncommutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<L: Sym> {
    terms: BTreeMap<Vec<L>, Q>,
}

impl<L: Sym> Default for Tensor<L> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Sym> Tensor<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), Q::one())
    }

    pub fn letter(l: L) -> Self {
        Self::monomial(vec![l], Q::one())
    }

    pub fn monomial(w: Vec<L>, c: Q) -> Self {
        let mut t = Self::zero();
        t.add_term(w, c);
        t
    }

    pub fn add_term(&mut self, w: Vec<L>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[L]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
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

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &Q) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &-Q::one());
        r
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Tensor {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Product, dropping words longer than `max`.
    pub fn mul(&self, o: &Self, max: usize) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            if w.len() > max {
                continue;
            }
            for (v, d) in &o.terms {
                if w.len() + v.len() > max {
                    continue;
                }
                let mut u = Vec::with_capacity(w.len() + v.len());
                u.extend_from_slice(w);
                u.extend_from_slice(v);
                r.add_term(u, c * d);
            }
        }
        r
    }

    pub fn commutator(&self, o: &Self, max: usize) -> Self {
        self.mul(o, max).sub(&o.mul(self, max))
    }

    pub fn truncate(&self, max: usize) -> Self {
        Tensor {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= max)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous(&self, k: usize) -> Self {
        Tensor {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn constant(&self) -> Q {
        self.coeff(&[])
    }

    /// `sum u^n / n!` for `u` without constant term.
    pub fn exp(&self, max: usize) -> Self {
        assert!(
            self.constant().is_zero(),
            "exp needs a series without constant term"
        );
        let mut out = Self::one();
        let mut p = Self::one();
        for n in 1..=max {
            p = p.mul(self, max).scale(&Q::new(1.into(), (n as i64).into()));
            if p.is_zero() {
                break;
            }
            out.add_assign(&p);
        }
        out
    }

    /// `log(1 + u) = sum (-1)^(n+1) u^n / n` for an input `1 + u`.
    pub fn log(&self, max: usize) -> Self {
        assert!(self.constant().is_one(), "log needs constant term 1");
        let mut u = self.clone();
        u.add_term(Vec::new(), -Q::one());
        let mut out = Self::zero();
        let mut p = Self::one();
        for n in 1..=max {
            p = p.mul(&u, max);
            if p.is_zero() {
                break;
            }
            let s = if n % 2 == 1 { Q::one() } else { -Q::one() };
            out.add_scaled(&p, &(s / Q::from_integer((n as i64).into())));
        }
        out
    }

    /// Algebra map determined on letters.
    pub fn substitute<M: Sym, F: FnMut(&L) -> Tensor<M>>(&self, mut f: F, max: usize) -> Tensor<M> {
        let mut cache: BTreeMap<L, Tensor<M>> = BTreeMap::new();
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            let mut acc = Tensor::one();
            for l in w {
                let img = cache.entry(l.clone()).or_insert_with(|| f(l)).clone();
                acc = acc.mul(&img, max);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// Letter relabelling (degree preserving).
    pub fn map_letters<M: Sym, F: FnMut(&L) -> M>(&self, mut f: F) -> Tensor<M> {
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            out.add_term(w.iter().map(&mut f).collect(), c.clone());
        }
        out
    }

    /// Derivation determined on letters.
    pub fn derive<F: FnMut(&L) -> Tensor<L>>(&self, mut f: F, max: usize) -> Tensor<L> {
        let mut cache: BTreeMap<L, Tensor<L>> = BTreeMap::new();
        let mut out = Tensor::zero();
        for (w, c) in &self.terms {
            for k in 0..w.len() {
                if !cache.contains_key(&w[k]) {
                    cache.insert(w[k].clone(), f(&w[k]));
                }
                let img = &cache[&w[k]];
                for (v, d) in &img.terms {
                    if w.len() - 1 + v.len() > max {
                        continue;
                    }
                    let mut u = Vec::with_capacity(w.len() - 1 + v.len());
                    u.extend_from_slice(&w[..k]);
                    u.extend_from_slice(v);
                    u.extend_from_slice(&w[k + 1..]);
                    out.add_term(u, c * d);
                }
            }
        }
        out
    }
}

/// True when `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon<L: Ord>(w: &[L]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| w < &w[k..])
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization<L: Ord>(w: &[L]) -> (&[L], &[L]) {
    assert!(w.len() >= 2);
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (&w[..k], &w[k..]);
        }
    }
    unreachable!("a single letter is Lyndon")
}

/// Expansion of the standard bracketing of a Lyndon word.
pub fn bracketing<L: Sym>(w: &[L]) -> Tensor<L> {
    if w.len() == 1 {
        return Tensor::letter(w[0].clone());
    }
    let (u, v) = standard_factorization(w);
    bracketing(u).commutator(&bracketing(v), usize::MAX)
}

/// Element of the free Lie algebra, stored on the Lyndon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElt<L: Sym> {
    terms: BTreeMap<Vec<L>, Q>,
}

impl<L: Sym> Default for LieElt<L> {
    fn default() -> Self {
        LieElt {
            terms: BTreeMap::new(),
        }
    }
}

impl<L: Sym> LieElt<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(l: L) -> Self {
        Self::letter_scaled(l, Q::one())
    }

    pub fn letter_scaled(l: L, c: Q) -> Self {
        let mut r = Self::zero();
        if !c.is_zero() {
            r.terms.insert(vec![l], c);
        }
        r
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &Q)> {
        self.terms.iter()
    }

    /// Keeps the basis terms whose Lyndon word satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[L]) -> bool) -> Self {
        LieElt {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
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

    pub fn coeff(&self, w: &[L]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, w: Vec<L>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn to_tensor(&self) -> Tensor<L> {
        let mut t = Tensor::zero();
        for (w, c) in &self.terms {
            t.add_scaled(&bracketing(w), c);
        }
        t
    }

    /// Rewrites a tensor on the Lyndon basis; `None` when it is not a Lie
    /// polynomial.
    pub fn from_tensor(t: &Tensor<L>) -> Option<Self> {
        let mut rest = t.clone();
        let mut out = Self::zero();
        while let Some((w, c)) = rest
            .terms
            .iter()
            .next()
            .map(|(w, c)| (w.clone(), c.clone()))
        {
            if !is_lyndon(&w) {
                return None;
            }
            rest.add_scaled(&bracketing(&w), &-c.clone());
            out.terms.insert(w, c);
        }
        Some(out)
    }

    pub fn from_tensor_checked(t: &Tensor<L>) -> Result<Self> {
        Self::from_tensor(t).ok_or_else(|| Error::Internal("tensor is not a Lie polynomial".into()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &Q) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c * s);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &-Q::one());
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LieElt {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.bracket_trunc(o, usize::MAX)
    }

    pub fn bracket_trunc(&self, o: &Self, max: usize) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let t = self.to_tensor().commutator(&o.to_tensor(), max);
        Self::from_tensor(&t).expect("bracket of Lie elements is Lie")
    }

    pub fn homogeneous(&self, k: usize) -> Self {
        LieElt {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max: usize) -> Self {
        LieElt {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= max)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Letter relabelling that is an algebra automorphism of the letters'
    /// span (the Lyndon keys are recomputed).
    pub fn map_letters<M: Sym, F: FnMut(&L) -> M>(&self, f: F) -> LieElt<M> {
        LieElt::from_tensor(&self.to_tensor().map_letters(f)).expect("relabelling preserves Lie")
    }
}

/// A basis element `f * a_i` of the meridian module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub f: Word,
    pub i: usize,
}

impl Ord for Letter {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.i.cmp(&o.i).then_with(|| self.f.cmp(&o.f))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Letter {
    pub fn new(f: Word, i: usize) -> Letter {
        Letter { f, i }
    }

    pub fn a(i: usize) -> Letter {
        Letter { f: Word::one(), i }
    }

    pub fn translate(&self, y: &Word) -> Letter {
        Letter {
            f: y.mul(&self.f),
            i: self.i,
        }
    }

    pub fn format(&self) -> String {
        format!("({} . a{})", fmt_f(&self.f), self.i)
    }
}

pub(crate) fn fmt_f(w: &Word) -> String {
    Alphabet::Free(usize::MAX / 4).format(w)
}

pub type Lie = LieElt<Letter>;
pub type LTensor = Tensor<Letter>;

/// Element of the meridian module as a coefficient vector over `Q[F]`:
/// `sum_i coeffs[i] * a_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AElt {
    pub coeffs: Vec<QG>,
}

impl AElt {
    pub fn zero(g: usize) -> AElt {
        AElt {
            coeffs: vec![QG::zero(); g],
        }
    }

    pub fn from_coeffs(coeffs: Vec<QG>) -> AElt {
        AElt { coeffs }
    }

    pub fn basis(g: usize, i: usize) -> AElt {
        let mut a = AElt::zero(g);
        a.coeffs[i - 1] = QG::one();
        a
    }

    pub fn letter(g: usize, l: &Letter) -> AElt {
        let mut a = AElt::zero(g);
        a.coeffs[l.i - 1] = QG::word(l.f.clone());
        a
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn letters(&self) -> Vec<(Letter, Q)> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (w, q) in c.terms() {
                out.push((Letter::new(w.clone(), k + 1), q.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &AElt) -> AElt {
        AElt {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &AElt) -> AElt {
        AElt {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> AElt {
        AElt {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Left multiplication by a group-ring element.
    pub fn act(&self, r: &QG) -> AElt {
        AElt {
            coeffs: self.coeffs.iter().map(|c| r * c).collect(),
        }
    }

    pub fn act_word(&self, f: &Word) -> AElt {
        AElt {
            coeffs: self.coeffs.iter().map(|c| c.left_mul_word(f)).collect(),
        }
    }

    pub fn to_lie(&self) -> Lie {
        let mut l = Lie::zero();
        for (let_, c) in self.letters() {
            l.add_assign(&Lie::letter_scaled(let_, c));
        }
        l
    }

    pub fn from_lie(g: usize, u: &Lie) -> Result<AElt> {
        let mut a = AElt::zero(g);
        for (w, c) in u.terms() {
            if w.len() != 1 {
                return precondition("NOT_DEGREE_ONE", "Lie element is not of degree one");
            }
            if w[0].i > g {
                return precondition("BAD_INDEX", "letter index exceeds genus");
            }
            a.coeffs[w[0].i - 1].add_term(c.clone(), w[0].f.clone());
        }
        Ok(a)
    }

    pub fn format(&self) -> String {
        format_lie(&self.to_lie())
    }

    pub fn parse(g: usize, s: &str) -> Result<AElt> {
        AElt::from_lie(g, &parse_lie(g, s)?)
    }
}

/// `sum_i (1 - x_i^-1) a_i`
pub fn zeta_class(g: usize) -> AElt {
    let coeffs = (1..=g)
        .map(|i| {
            let mut c = QG::one();
            c.add_term(-Q::one(), Word::gen(i).inv());
            c
        })
        .collect();
    AElt::from_coeffs(coeffs)
}

/// Diagonal action of a group element.
pub fn act_f(f: &Word, u: &Lie) -> Lie {
    if f.is_one() {
        return u.clone();
    }
    u.map_letters(|l| l.translate(f))
}

pub fn act_f_tensor(f: &Word, t: &LTensor) -> LTensor {
    if f.is_one() {
        return t.clone();
    }
    t.map_letters(|l| l.translate(f))
}

/// Linear action of a group-ring element.
pub fn act_ring(r: &QG, u: &Lie) -> Lie {
    let mut out = Lie::zero();
    for (w, c) in r.terms() {
        out.add_scaled(&act_f(w, u), c);
    }
    out
}

fn sorted_multiset(w: &[Letter]) -> Vec<Letter> {
    let mut m = w.to_vec();
    m.sort();
    m
}

/// The translation taking a letter multiset to its canonical orbit
/// representative, and that representative.
fn canonical_translation(m: &[Letter]) -> (Word, Vec<Letter>) {
    let imin = m.iter().map(|l| l.i).min().expect("nonempty multiset");
    let mut best: Option<(Word, Vec<Letter>)> = None;
    let mut seen = BTreeSet::new();
    for l in m.iter().filter(|l| l.i == imin) {
        if !seen.insert(l.f.clone()) {
            continue;
        }
        let y = l.f.inv();
        let mut t: Vec<Letter> = m.iter().map(|x| x.translate(&y)).collect();
        t.sort();
        if best.as_ref().map_or(true, |(_, b)| t < *b) {
            best = Some((y, t));
        }
    }
    best.expect("a letter of minimal index exists")
}

/// Splits `u` as `representative + sum (f_j - 1) w_j`; the representative
/// depends only on the class of `u` modulo the augmentation ideal.
pub fn coinvariant_reduce(u: &Lie) -> (Lie, Vec<(Word, Lie)>) {
    let mut by_multiset: BTreeMap<Vec<Letter>, Lie> = BTreeMap::new();
    for (w, c) in u.terms() {
        let part = by_multiset.entry(sorted_multiset(w)).or_default();
        part.terms.insert(w.clone(), c.clone());
    }
    let mut rep = Lie::zero();
    let mut dec = Vec::new();
    for (m, part) in by_multiset {
        let (t, _) = canonical_translation(&m);
        if t.is_one() {
            rep.add_assign(&part);
            continue;
        }
        let moved = act_f(&t, &part);
        rep.add_assign(&moved);
        dec.push((t.inv(), moved));
    }
    (rep, dec)
}

/// Same as [`coinvariant_reduce`] on tensors; used for membership tests.
pub fn coinvariant_tensor(t: &LTensor) -> LTensor {
    let mut out = LTensor::zero();
    for (w, c) in t.terms() {
        if w.is_empty() {
            out.add_term(Vec::new(), c.clone());
            continue;
        }
        let y = w[0].f.inv();
        out.add_term(w.iter().map(|l| l.translate(&y)).collect(), c.clone());
    }
    out
}

/// Degree-`m` Lyndon words with letters in `support * {a_1..a_g}` whose letter
/// multiset is its own canonical orbit representative.
pub fn module_basis(g: usize, m: usize, support: &[Word]) -> Vec<Lie> {
    let mut letters: Vec<Letter> = Vec::new();
    for i in 1..=g {
        for f in support {
            letters.push(Letter::new(f.clone(), i));
        }
    }
    letters.sort();
    letters.dedup();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(letters: &[Letter], m: usize, cur: &mut Vec<Letter>, out: &mut Vec<Lie>) {
        if cur.len() == m {
            if is_lyndon(cur) {
                let ms = sorted_multiset(cur);
                let (t, _) = canonical_translation(&ms);
                if t.is_one() {
                    let mut l = Lie::zero();
                    l.terms.insert(cur.clone(), Q::one());
                    out.push(l);
                }
            }
            return;
        }
        for l in letters {
            cur.push(l.clone());
            rec(letters, m, cur, out);
            cur.pop();
        }
    }
    rec(&letters, m, &mut cur, &mut out);
    out
}

/// Lyndon words of length `m` over an ordered alphabet.
pub fn lyndon_words<L: Sym>(alphabet: &[L], m: usize) -> Vec<Vec<L>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec<L: Sym>(al: &[L], m: usize, cur: &mut Vec<L>, out: &mut Vec<Vec<L>>) {
        if cur.len() == m {
            if is_lyndon(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for l in al {
            cur.push(l.clone());
            rec(al, m, cur, out);
            cur.pop();
        }
    }
    rec(alphabet, m, &mut cur, &mut out);
    out
}

/// Left-normed Dynkin expansion: a homogeneous Lie element of degree `m`
/// equals `(1/m) sum c_w [..[w_1, w_2], .., w_m]` over its tensor terms.
pub fn dynkin_left_normed<L: Sym>(t: &Tensor<L>) -> Vec<(Q, Vec<L>)> {
    t.terms()
        .map(|(w, c)| (c / Q::from_integer((w.len() as i64).into()), w.clone()))
        .collect()
}

pub fn left_normed<L: Sym>(w: &[L]) -> LieElt<L> {
    let mut acc = LieElt::letter(w[0].clone());
    for l in &w[1..] {
        acc = acc.bracket(&LieElt::letter(l.clone()));
    }
    acc
}

fn format_bracket(w: &[Letter]) -> String {
    if w.len() == 1 {
        return w[0].format();
    }
    let (u, v) = standard_factorization(w);
    format!("[{}, {}]", format_bracket(u), format_bracket(v))
}

fn format_coeff_term(out: &mut String, first: bool, c: &Q, body: &str) {
    let neg = c.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if a.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&format!("{a}*{body}"));
    }
}

/// Text form: degree-major, Lyndon order within a degree, standard bracketing.
pub fn format_lie(u: &Lie) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let mut keys: Vec<(&Vec<Letter>, &Q)> = u.terms().collect();
    keys.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
    let mut s = String::new();
    for (k, (w, c)) in keys.into_iter().enumerate() {
        format_coeff_term(&mut s, k == 0, c, &format_bracket(w));
    }
    s
}

struct LieParser<'a> {
    cs: Vec<char>,
    pos: usize,
    g: usize,
    src: &'a str,
}

impl<'a> LieParser<'a> {
    fn skip(&mut self) {
        while self.pos < self.cs.len() && self.cs[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.cs.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            parse_err(format!(
                "expected '{c}' at offset {} in '{}'",
                self.pos, self.src
            ))
        }
    }

    /// `(f . ai)`, or a bare `ai` for a trivial group part.
    fn letter(&mut self) -> Result<Letter> {
        let bare = self.peek() == Some('a');
        let f = if bare {
            Word::one()
        } else {
            self.expect('(')?;
            let start = self.pos;
            while self.pos < self.cs.len() && self.cs[self.pos] != '.' {
                self.pos += 1;
            }
            let fs: String = self.cs[start..self.pos].iter().collect();
            let f = Alphabet::Free(self.g).parse(fs.trim())?;
            self.expect('.')?;
            f
        };
        self.expect('a')?;
        let st = self.pos;
        while self.pos < self.cs.len() && self.cs[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let i: usize = self.cs[st..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| Error::Parse(format!("missing index in '{}'", self.src)))?;
        if i == 0 || i > self.g {
            return parse_err(format!("a{i} outside genus {}", self.g));
        }
        if !bare {
            self.expect(')')?;
        }
        Ok(Letter::new(f, i))
    }

    fn atom(&mut self) -> Result<LTensor> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.atom()?;
                self.expect(',')?;
                let b = self.atom()?;
                self.expect(']')?;
                Ok(a.commutator(&b, usize::MAX))
            }
            Some('(') | Some('a') => Ok(LTensor::letter(self.letter()?)),
            _ => parse_err(format!(
                "unexpected input at offset {} in '{}'",
                self.pos, self.src
            )),
        }
    }

    fn coeff(&mut self) -> Result<Option<Q>> {
        self.skip();
        let st = self.pos;
        while self.pos < self.cs.len()
            && (self.cs[self.pos].is_ascii_digit() || self.cs[self.pos] == '/')
        {
            self.pos += 1;
        }
        if st == self.pos {
            return Ok(None);
        }
        let s: String = self.cs[st..self.pos].iter().collect();
        let c = Q::parse(&s).ok_or_else(|| Error::Parse(format!("bad coefficient '{s}'")))?;
        self.expect('*')?;
        Ok(Some(c))
    }
}

/// Parses the text form written by [`format_lie`]; any bracketing is accepted.
pub fn parse_lie(g: usize, s: &str) -> Result<Lie> {
    let mut p = LieParser {
        cs: s.chars().collect(),
        pos: 0,
        g,
        src: s,
    };
    if p.peek() == Some('0') && s.trim() == "0" {
        return Ok(Lie::zero());
    }
    let mut total = LTensor::zero();
    let mut first = true;
    loop {
        let mut sign = Q::one();
        match p.peek() {
            None if !first => break,
            Some('+') if !first => p.pos += 1,
            Some('-') => {
                p.pos += 1;
                sign = -sign;
            }
            _ if first => {}
            Some(c) => return parse_err(format!("unexpected '{c}' in '{s}'")),
            None => break,
        }
        first = false;
        let c = p.coeff()?.unwrap_or_else(Q::one);
        let t = p.atom()?;
        total.add_scaled(&t, &(c * sign));
        if p.peek().is_none() {
            break;
        }
    }
    Lie::from_tensor(&total).ok_or_else(|| Error::Parse("not a Lie polynomial".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{q, qf};

    fn a(i: usize) -> Lie {
        Lie::letter(Letter::a(i))
    }

    fn xa(f: &[i32], i: usize) -> Lie {
        Lie::letter(Letter::new(Word::from_letters(f.iter().copied()), i))
    }

    #[test]
    fn lyndon_basics() {
        assert!(is_lyndon(&[1, 2]));
        assert!(!is_lyndon(&[2, 1]));
        assert!(!is_lyndon(&[1, 1]));
        assert!(is_lyndon(&[1, 1, 2]));
        assert!(is_lyndon(&[1, 2, 2]));
        assert_eq!(standard_factorization(&[1, 1, 2]), (&[1][..], &[1, 2][..]));
        assert_eq!(lyndon_words(&[0, 1], 4).len(), 3);
        assert_eq!(lyndon_words(&[0, 1, 2], 3).len(), 8);
    }

    #[test]
    fn bracket_normal_form() {
        assert!(a(1).bracket(&a(1)).is_zero());
        let lhs = a(1).bracket(&a(2)).bracket(&a(1));
        let rhs = a(1).bracket(&a(1).bracket(&a(2))).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn act_is_automorphism() {
        let u = a(1).bracket(&xa(&[2], 2));
        let v = xa(&[-1], 1);
        let f = Word::from_letters([1, 2]);
        assert_eq!(
            act_f(&f, &u.bracket(&v)),
            act_f(&f, &u).bracket(&act_f(&f, &v))
        );
    }

    #[test]
    fn coinvariant_examples() {
        let u = xa(&[1], 1).sub(&a(1));
        let (rep, dec) = coinvariant_reduce(&u);
        assert!(rep.is_zero());
        assert_eq!(dec, vec![(Word::gen(1), a(1))]);
        let u = xa(&[2], 1).bracket(&xa(&[2], 2));
        let (rep, dec) = coinvariant_reduce(&u);
        assert_eq!(rep, a(1).bracket(&a(2)));
        assert_eq!(dec, vec![(Word::gen(2), a(1).bracket(&a(2)))]);
        // both summands are translates of the same orbit up to sign
        let u = a(1).bracket(&xa(&[1], 1)).add(&a(1).bracket(&xa(&[-1], 1)));
        assert!(coinvariant_reduce(&u).0.is_zero());
    }

    #[test]
    fn coinvariant_decomposition_exact() {
        let u = xa(&[1, 2], 2)
            .bracket(&xa(&[-1], 1))
            .add(&xa(&[2], 1).scale(&qf(3, 2)))
            .add(&a(1).bracket(&a(2)).bracket(&xa(&[1], 1)));
        let (rep, dec) = coinvariant_reduce(&u);
        let mut back = rep.clone();
        for (f, w) in &dec {
            back.add_assign(&act_f(f, w).sub(w));
        }
        assert_eq!(back, u);
    }

    #[test]
    fn module_basis_examples() {
        let b1 = module_basis(3, 1, &[Word::one()]);
        assert_eq!(b1, vec![a(1), a(2), a(3)]);
        let sup = [Word::one(), Word::gen(1)];
        let b2 = module_basis(1, 2, &sup);
        assert!(b2.contains(&a(1).bracket(&xa(&[1], 1))));
        assert!(!b2.contains(&xa(&[1], 1).bracket(&xa(&[1, 1], 1))));
        let sup = [Word::one(), Word::gen(1), Word::gen(1).inv()];
        let b2 = module_basis(1, 2, &sup);
        assert_eq!(b2, vec![a(1).bracket(&xa(&[1], 1))]);
    }

    #[test]
    fn text_roundtrip() {
        let u = a(1)
            .bracket(&xa(&[1, -2], 2))
            .scale(&qf(-1, 2))
            .add(&xa(&[2], 1).scale(&q(3)));
        let s = format_lie(&u);
        assert_eq!(s, "3*(x2 . a1) - 1/2*[(1 . a1), (x1 x2^-1 . a2)]");
        assert_eq!(parse_lie(2, &s).unwrap(), u);
        assert!(parse_lie(2, "(1 . a3)").is_err());
    }

    #[test]
    fn exp_log_inverse() {
        let t = a(1).to_tensor().add(&a(1).bracket(&a(2)).to_tensor());
        assert_eq!(t.exp(5).log(5), t.truncate(5));
    }
}
