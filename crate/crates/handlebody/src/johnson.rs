//! Johnson filtration of the handlebody group: degrees, the homomorphisms
//! on the filtration quotients, special derivations and their bracket, and
//! the total logarithm of an expansion-conjugated twist.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::envelope::{EnvElt, Expansion};
use crate::error::{internal, precondition, Result};
use crate::foxcalc::fox_right_word;
use crate::groupring::{Q, Z};
use crate::intersect::{psi_letters, PeelOrder};
use crate::liefree::{
    act_f, coinvariant_reduce, format_lie, standard_factorization, zeta_class, AElt, LTensor,
    Letter, Lie, LieElt, Tensor,
};
use crate::words::{alpha, beta, in_a, varpi, verify_pair_automorphism, Endo, Verdict, Word};

/// A derivation of `F |x Lie(A)` given by its cocycle values `c(x_j)` and
/// its values `h(a_i)`. Components of derivation degree `k` sit in Lie
/// degree `k` for `c` and `k + 1` for `h`; several degrees may coexist.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialDerivation {
    pub g: usize,
    pub c: Vec<Lie>,
    pub h: Vec<Lie>,
}

impl SpecialDerivation {
    pub fn zero(g: usize) -> Self {
        SpecialDerivation {
            g,
            c: vec![Lie::zero(); g],
            h: vec![Lie::zero(); g],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().chain(&self.h).all(|u| u.is_zero())
    }

    fn zip(&self, o: &Self, f: impl Fn(&Lie, &Lie) -> Lie) -> Self {
        SpecialDerivation {
            g: self.g,
            c: self.c.iter().zip(&o.c).map(|(a, b)| f(a, b)).collect(),
            h: self.h.iter().zip(&o.h).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(&Lie, usize) -> Lie) -> Self {
        SpecialDerivation {
            g: self.g,
            c: self.c.iter().map(|u| f(u, 0)).collect(),
            h: self.h.iter().map(|u| f(u, 1)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Q) -> Self {
        self.map(|u, _| u.scale(s))
    }

    /// The component of derivation degree `k`.
    pub fn homogeneous(&self, k: usize) -> Self {
        self.map(|u, shift| u.homogeneous(k + shift))
    }

    /// Drops components of derivation degree above `max`.
    pub fn truncate(&self, max: usize) -> Self {
        self.map(|u, shift| u.truncate(max + shift))
    }

    /// Lowest derivation degree with a nonzero component.
    pub fn min_degree(&self) -> Option<usize> {
        let c = self.c.iter().filter_map(|u| u.min_degree());
        let h = self.h.iter().filter_map(|u| u.min_degree().map(|d| d - 1));
        c.chain(h).min()
    }

    /// The cocycle on an arbitrary word of `F`: `c(fg) = c(f) + f . c(g)`.
    pub fn cocycle(&self, f: &Word) -> Lie {
        let mut out = Lie::zero();
        let mut prefix = Word::one();
        for &l in f.letters() {
            let j = l.unsigned_abs() as usize;
            let step = if l > 0 {
                self.c[j - 1].clone()
            } else {
                act_f(&Word::letter(l), &self.c[j - 1]).neg()
            };
            out.add_assign(&act_f(&prefix, &step));
            prefix = prefix.mul(&Word::letter(l));
        }
        out
    }

    /// Value on `f . a_i`: `f . h(a_i) + [c(f), f . a_i]`, Lie degree at most `max`.
    pub fn on_letter(&self, l: &Letter, max: usize) -> Lie {
        let mut out = act_f(&l.f, &self.h[l.i - 1]);
        out.add_assign(
            &self
                .cocycle(&l.f)
                .bracket_trunc(&Lie::letter(l.clone()), max),
        );
        out.truncate(max)
    }

    pub fn apply_tensor(&self, t: &LTensor, max: usize) -> LTensor {
        self.apply_tensor_cached(t, max, &mut HashMap::new())
    }

    /// As [`Self::apply_tensor`], reusing letter images computed at Lie
    /// degree at most `max` across calls.
    fn apply_tensor_cached(
        &self,
        t: &LTensor,
        max: usize,
        cache: &mut HashMap<Letter, LTensor>,
    ) -> LTensor {
        t.derive(
            |l| {
                cache
                    .entry(l.clone())
                    .or_insert_with(|| self.on_letter(l, max).to_tensor())
                    .clone()
            },
            max,
        )
    }

    /// Extension to `Lie(A)` as a derivation, Lie degree at most `max`.
    pub fn apply(&self, u: &Lie, max: usize) -> Lie {
        Lie::from_tensor(&self.apply_tensor(&u.to_tensor(), max))
            .expect("derivations preserve Lie elements")
    }

    pub fn apply_aelt(&self, a: &AElt, max: usize) -> Lie {
        let mut out = Lie::zero();
        for (l, c) in a.letters() {
            out.add_scaled(&self.on_letter(&l, max), &c);
        }
        out
    }

    /// Value on the boundary class; zero for special derivations.
    pub fn on_zeta(&self, max: usize) -> Lie {
        self.apply_aelt(&zeta_class(self.g), max)
    }

    /// `[d, e]` up to derivation degree `max`.
    pub fn bracket(&self, e: &Self, max: usize) -> Self {
        let d = self;
        let c = (0..self.g)
            .map(|j| {
                let mut t = d.apply(&e.c[j], max);
                t.add_assign(&e.apply(&d.c[j], max).neg());
                t.add_assign(&d.c[j].bracket_trunc(&e.c[j], max).neg());
                t
            })
            .collect();
        let h = (0..self.g)
            .map(|i| d.apply(&e.h[i], max + 1).sub(&e.apply(&d.h[i], max + 1)))
            .collect();
        SpecialDerivation { g: self.g, c, h }
    }
}

impl fmt::Display for SpecialDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, u) in self.c.iter().enumerate() {
            writeln!(f, "x{} -> {}", j + 1, format_lie(u))?;
        }
        for (i, u) in self.h.iter().enumerate() {
            let end = if i + 1 == self.h.len() { "" } else { "\n" };
            write!(f, "a{} -> {}{end}", i + 1, format_lie(u))?;
        }
        Ok(())
    }
}

fn require_h(f: &Endo) -> Result<usize> {
    match verify_pair_automorphism(f) {
        Verdict::Ok => Ok(f.genus()),
        v => precondition(v.code(), "not an element of the handlebody group"),
    }
}

fn in_twist_group(g: usize, f: &Endo) -> bool {
    (1..=g).all(|j| varpi(g, &f.images[g + j - 1]) == Word::gen(j))
}

/// `f(z) z^-1` for generator `z` of the surface group.
fn displacement(f: &Endo, z: &Word) -> Word {
    f.apply(z).mul(&z.inv())
}

fn standard_log(g: usize, w: &Word, n: usize) -> Result<Lie> {
    Expansion::standard(g, n).ell(w)
}

/// Degree-`m` class of `w`, failing with `F_NOT_IN_H_K` when a lower class
/// is nonzero.
fn graded_class(g: usize, w: &Word, m: usize, what: &str, k: usize) -> Result<Lie> {
    if !in_a(g, w) {
        return precondition(
            "F_NOT_IN_H_K",
            format!("{what}: displacement is not in A (degree 0 < {k})"),
        );
    }
    let l = standard_log(g, w, m)?;
    if let Some(d) = l.min_degree() {
        if d < m {
            return precondition(
                "F_NOT_IN_H_K",
                format!("{what}: nonzero class in degree {d} (need {m}, k = {k})"),
            );
        }
    }
    let c = l.homogeneous(m);
    if !c.is_integral() {
        return internal("graded class is not integral");
    }
    Ok(c)
}

/// `tau_k^0` and `tau_k^1` of `f`, packaged as a derivation of degree `k`.
pub fn tau(f: &Endo, k: usize) -> Result<SpecialDerivation> {
    if k == 0 {
        return precondition("BAD_DEGREE", "degree must be at least 1");
    }
    let g = require_h(f)?;
    let c = (1..=g)
        .map(|j| graded_class(g, &displacement(f, &beta(g, j)), k, &format!("b{j}"), k))
        .collect::<Result<Vec<_>>>()?;
    let h = (1..=g)
        .map(|i| {
            graded_class(
                g,
                &displacement(f, &alpha(g, i)),
                k + 1,
                &format!("a{i}"),
                k,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecialDerivation { g, c, h })
}

/// Position of `f` in the Johnson filtration, known up to a truncation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JfDegree {
    Exact(usize),
    /// In every filtration step up to and beyond the bound.
    Above(usize),
}

impl fmt::Display for JfDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JfDegree::Exact(k) => write!(f, "{k}"),
            JfDegree::Above(n) => write!(f, ">{n}"),
        }
    }
}

/// Lowest degree of `log theta(w)` up to `n`. Truncations are raised one
/// at a time since degrees up to the truncation are already exact.
fn lowest(g: usize, w: &Word, n: usize) -> Result<Option<usize>> {
    for d in 1..=n {
        if let Some(m) = standard_log(g, w, d)?.min_degree() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Degree read from the parallels: the least lowest degree of
/// `f(b_j) b_j^-1`, or 0 outside the twist group.
pub fn jf_degree_parallels(f: &Endo, n: usize) -> Result<JfDegree> {
    let g = require_h(f)?;
    if !in_twist_group(g, f) {
        return Ok(JfDegree::Exact(0));
    }
    let mut best: Option<usize> = None;
    for j in 1..=g {
        if let Some(d) = lowest(g, &displacement(f, &beta(g, j)), n)? {
            best = Some(best.map_or(d, |b: usize| b.min(d)));
        }
    }
    Ok(best.map_or(JfDegree::Above(n), JfDegree::Exact))
}

/// Degree read from the action on meridians: one less than the least
/// lowest degree of `f(a) a^-1` over `a = h a_i h^-1` with `h` in
/// `{1, b_j, b_j^-1}`. The conjugates are needed because the action on
/// `A / Gamma_{m+1} A` is not determined by the `a_i` alone.
pub fn jf_degree_meridians(f: &Endo, n: usize) -> Result<JfDegree> {
    let g = require_h(f)?;
    let mut conj = vec![Word::one()];
    for j in 1..=g {
        conj.push(beta(g, j));
        conj.push(beta(g, j).inv());
    }
    let mut best: Option<usize> = None;
    for i in 1..=g {
        for h in &conj {
            let a = alpha(g, i).conj(h);
            if let Some(d) = lowest(g, &displacement(f, &a), n + 1)? {
                best = Some(best.map_or(d - 1, |b: usize| b.min(d - 1)));
            }
        }
    }
    Ok(best.map_or(JfDegree::Above(n), JfDegree::Exact))
}

/// Largest `k <= n` with `f` in the `k`-th filtration step; both readings
/// are computed and must agree.
pub fn jf_degree(f: &Endo, n: usize) -> Result<JfDegree> {
    let p = jf_degree_parallels(f, n)?;
    let m = jf_degree_meridians(f, n)?;
    if p != m {
        return internal(format!(
            "filtration degrees disagree: parallels {p}, meridians {m}"
        ));
    }
    Ok(p)
}

/// Splits a Lie element of degree at least two as `sum [letter, rest]`.
fn split_brackets(w: &Lie) -> Vec<(Letter, Lie)> {
    let mut out: Vec<(Letter, Lie)> = Vec::new();
    for (word, c) in w.to_tensor().terms() {
        if word.len() < 2 {
            continue;
        }
        // [..[w1, w2], .., wm] = -[wm, [..[w1, w2], .., w(m-1)]]
        let s = -(c / Q::from_integer(Z::from(word.len())));
        let rest = crate::liefree::left_normed(&word[..word.len() - 1]).scale(&s);
        out.push((word[word.len() - 1].clone(), rest));
    }
    out
}

/// A lift of `-sum a_i (x) c(x_i)` to `A (x) Lie(A)` with vanishing bracket.
pub fn bracket_trivial_lift(d: &SpecialDerivation) -> Result<Vec<(Letter, Lie)>> {
    let mut lift: Vec<(Letter, Lie)> = (1..=d.g)
        .filter(|i| !d.c[i - 1].is_zero())
        .map(|i| (Letter::a(i), d.c[i - 1].neg()))
        .collect();
    let mut b = Lie::zero();
    for (u, v) in &lift {
        b.add_assign(&Lie::letter(u.clone()).bracket(v));
    }
    let (rep, dec) = coinvariant_reduce(&b);
    if !rep.is_zero() {
        return precondition(
            "NOT_IN_D0",
            "the cocycle fails the coinvariant bracket condition",
        );
    }
    for (f, w) in dec {
        for (s, t) in split_brackets(&w) {
            lift.push((s.translate(&f), act_f(&f, &t).neg()));
            lift.push((s, t));
        }
    }
    Ok(lift)
}

/// The values `h(a_i)` determined by the cocycle part, via the map `Psi`.
pub fn d0_to_d1(d: &SpecialDerivation) -> Result<Vec<Lie>> {
    let lift = bracket_trivial_lift(d)?;
    let mut h = vec![Lie::zero(); d.g];
    for (i, hi) in h.iter_mut().enumerate() {
        let a = Letter::a(i + 1);
        for (u, v) in &lift {
            for ((p, l), c) in psi_letters(u, &a, PeelOrder::LeftFirst).terms() {
                let left = act_f(&p.inv(), v);
                hi.add_scaled(&left.bracket(&Lie::letter(l.clone())), &-c.clone());
            }
        }
    }
    Ok(h)
}

/// The same values by solving `sum (1 - x_i^-1) h_i = sum x_i^-1 [a_i, c(x_i)]`
/// with right Fox derivatives.
pub fn d0_to_d1_fox(d: &SpecialDerivation) -> Result<Vec<Lie>> {
    let mut b = Lie::zero();
    for i in 1..=d.g {
        let t = Lie::letter(Letter::a(i)).bracket(&d.c[i - 1]);
        b.add_assign(&act_f(&Word::gen(i).inv(), &t));
    }
    let (rep, dec) = coinvariant_reduce(&b);
    if !rep.is_zero() {
        return precondition(
            "NOT_IN_D0",
            "the cocycle fails the coinvariant bracket condition",
        );
    }
    // (f - 1) w = sum_i (1 - x_i^-1) x_i right_i(f) w
    let mut h = vec![Lie::zero(); d.g];
    for (f, w) in dec {
        for (i, hi) in h.iter_mut().enumerate() {
            for (y, n) in fox_right_word::<Q>(&f, i + 1).terms() {
                hi.add_scaled(&act_f(&Word::gen(i + 1).mul(y), &w), n);
            }
        }
    }
    Ok(h)
}

/// Completes a cocycle to a derivation through [`d0_to_d1`].
pub fn from_cocycle(g: usize, c: Vec<Lie>) -> Result<SpecialDerivation> {
    let mut d = SpecialDerivation {
        g,
        c,
        h: vec![Lie::zero(); g],
    };
    d.h = d0_to_d1(&d)?;
    Ok(d)
}

/// Substitution of letters by tensors with a per-letter cache.
struct LetterMap<'a> {
    image: Box<dyn Fn(&Letter) -> LTensor + 'a>,
    cache: HashMap<Letter, LTensor>,
    n: usize,
}

impl<'a> LetterMap<'a> {
    fn apply(&mut self, t: &LTensor) -> LTensor {
        let n = self.n;
        let cache = &mut self.cache;
        let image = &self.image;
        t.substitute(
            |l| cache.entry(l.clone()).or_insert_with(|| image(l)).clone(),
            n,
        )
    }
}

/// The automorphism `theta f theta^-1` of the truncated envelope, on
/// generators: tensors `rho(a_i)` and `S_j` with `rho(x_j) = S_j (x) x_j`.
struct Conjugated {
    a: Vec<LTensor>,
    s: Vec<LTensor>,
    n: usize,
}

impl Conjugated {
    fn group(&self, h: &Word) -> EnvElt {
        let mut acc = EnvElt::one(self.n);
        for &l in h.letters() {
            let j = l.unsigned_abs() as usize;
            let e = EnvElt::from_part(self.n, self.s[j - 1].clone(), Word::gen(j));
            let e = if l > 0 {
                e
            } else {
                e.inverse().expect("group-like")
            };
            acc = acc.mul(&e);
        }
        acc
    }

    fn letter(&self, l: &Letter) -> LTensor {
        let a = EnvElt::from_tensor(self.n, self.a[l.i - 1].clone());
        if l.f.is_one() {
            return self.a[l.i - 1].clone();
        }
        let y = self.group(&l.f);
        let yi = y.inverse().expect("group-like");
        y.mul(&a)
            .mul(&yi)
            .tensor_part()
            .expect("conjugate of a tensor")
    }

    fn letter_map(&self) -> LetterMap<'_> {
        LetterMap {
            image: Box::new(move |l| self.letter(l)),
            cache: HashMap::new(),
            n: self.n,
        }
    }
}

fn truncated(theta: &Expansion, n: usize) -> Result<Expansion> {
    if theta.n < n {
        return precondition(
            "TRUNCATION",
            format!("expansion known to degree {}, need {n}", theta.n),
        );
    }
    theta.validate()?;
    Ok(Expansion {
        g: theta.g,
        n,
        ell_alpha: theta.ell_alpha.iter().map(|u| u.truncate(n)).collect(),
        beta_prim: theta.beta_prim.iter().map(|u| u.truncate(n)).collect(),
    })
}

fn conjugated(f: &Endo, theta: &Expansion) -> Result<Conjugated> {
    let (g, n) = (theta.g, theta.n);
    let imgs = theta.generator_images();
    let target_a: Vec<LTensor> = (1..=g)
        .map(|i| theta.ell(&f.apply(&alpha(g, i))).map(|u| u.to_tensor()))
        .collect::<Result<_>>()?;
    let target_b: Vec<LTensor> = (1..=g)
        .map(|j| {
            let e = theta.eval_with(&imgs, &f.apply(&beta(g, j)));
            match e.single() {
                Some((y, t)) if *y == Word::gen(j) => Ok(t.clone()),
                _ => internal("parallel image has the wrong group part"),
            }
        })
        .collect::<Result<_>>()?;
    let higher: Vec<LTensor> = (0..g)
        .map(|i| {
            theta.ell_alpha[i]
                .to_tensor()
                .sub(&Tensor::letter(Letter::a(i + 1)))
        })
        .collect();
    let prims: Vec<LTensor> = theta.beta_prim.iter().map(|u| u.to_tensor()).collect();
    let mut rho = Conjugated {
        a: (1..=g).map(|i| Tensor::letter(Letter::a(i))).collect(),
        s: vec![LTensor::one(); g],
        n,
    };
    for _ in 0..=n {
        let (a, s) = {
            let mut m = rho.letter_map();
            let a: Vec<LTensor> = (0..g)
                .map(|i| target_a[i].sub(&m.apply(&higher[i])))
                .collect();
            let s: Vec<LTensor> = (0..g)
                .map(|j| m.apply(&prims[j]).neg().exp(n).mul(&target_b[j], n))
                .collect();
            (a, s)
        };
        rho.a = a;
        rho.s = s;
    }
    Ok(rho)
}

/// `log (theta f theta^-1)` on generators, derivation degrees `1..=k`.
pub fn varrho(f: &Endo, theta: &Expansion, k: usize) -> Result<SpecialDerivation> {
    let g = require_h(f)?;
    if !in_twist_group(g, f) {
        return precondition("NOT_IN_TWIST_GROUP", "f acts nontrivially on F");
    }
    if theta.g != g {
        return precondition(
            "GENUS_MISMATCH",
            "expansion and automorphism have different genus",
        );
    }
    let n = k + 1;
    let theta = truncated(theta, n)?;
    let rho = conjugated(f, &theta)?;
    Ok(log_of(g, &rho, k))
}

/// `exp(d)` applied to `seed` through the operator `step`, Lie degree at most `max`.
fn exp_series(seed: LTensor, max: usize, mut step: impl FnMut(&LTensor) -> LTensor) -> LTensor {
    let mut out = seed.clone();
    let mut u = seed;
    for p in 1..=max {
        u = step(&u).scale(&(Q::one() / Q::from_integer(Z::from(p))));
        if u.is_zero() {
            break;
        }
        out.add_assign(&u);
    }
    out
}

/// The derivation `D` with `exp(D) = rho`, solved one degree at a time:
/// the degree-`k` part is what `rho` still has after `exp(D_{<k})`.
fn log_of(g: usize, rho: &Conjugated, k: usize) -> SpecialDerivation {
    let n = k + 1;
    let mut d = SpecialDerivation::zero(g);
    for deg in 1..=k {
        let mut next = d.clone();
        let mut cache = HashMap::new();
        let mut cache_c = HashMap::new();
        for i in 0..g {
            let a = Tensor::letter(Letter::a(i + 1));
            let e = exp_series(a, deg + 1, |t| {
                d.apply_tensor_cached(t, deg + 1, &mut cache)
            });
            let r = rho.a[i].sub(&e).homogeneous(deg + 1);
            let r = Lie::from_tensor(&r).expect("homogeneous part of a Lie element");
            next.h[i].add_assign(&r);
        }
        for j in 0..g {
            let cj = d.c[j].to_tensor();
            let e = exp_series(LTensor::one(), deg, |t| {
                let mut v = d.apply_tensor_cached(t, deg, &mut cache_c);
                v.add_assign(&t.mul(&cj, deg));
                v
            });
            let r = rho.s[j].truncate(n).sub(&e).homogeneous(deg);
            let r = Lie::from_tensor(&r).expect("homogeneous part of a Lie element");
            next.c[j].add_assign(&r);
        }
        d = next;
    }
    d
}

/// `log(exp(d) exp(e))` up to derivation degree `max`.
pub fn bch(d: &SpecialDerivation, e: &SpecialDerivation, max: usize) -> SpecialDerivation {
    let x: Tensor<u8> = Tensor::letter(0);
    let y: Tensor<u8> = Tensor::letter(1);
    let z = x.exp(max).mul(&y.exp(max), max).log(max);
    let z = LieElt::<u8>::from_tensor(&z).expect("BCH series is a Lie element");
    let mut memo: HashMap<Vec<u8>, SpecialDerivation> = HashMap::new();
    fn eval(
        w: &[u8],
        d: &SpecialDerivation,
        e: &SpecialDerivation,
        max: usize,
        memo: &mut HashMap<Vec<u8>, SpecialDerivation>,
    ) -> SpecialDerivation {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let v = if w.len() == 1 {
            if w[0] == 0 {
                d.clone()
            } else {
                e.clone()
            }
        } else {
            let (l, r) = standard_factorization(w);
            let (l, r) = (l.to_vec(), r.to_vec());
            let a = eval(&l, d, e, max, memo);
            let b = eval(&r, d, e, max, memo);
            a.bracket(&b, max)
        };
        memo.insert(w.to_vec(), v.clone());
        v
    }
    let mut out = SpecialDerivation::zero(d.g);
    for (w, c) in z.terms() {
        out = out.add(&eval(w, d, e, max, &mut memo).scale(c));
    }
    out.truncate(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liefree::parse_lie;
    use crate::words::catalog;

    #[test]
    fn twist_alpha_tau() {
        let g = 2;
        let f = catalog::twist_alpha(g, 1).unwrap();
        let t = tau(&f, 1).unwrap();
        assert_eq!(t.c[0], Lie::letter(Letter::a(1)));
        assert!(t.c[1].is_zero());
        assert!(t.on_zeta(3).is_zero());
        assert_eq!(d0_to_d1(&t).unwrap(), t.h);
        assert_eq!(d0_to_d1_fox(&t).unwrap(), t.h);
    }

    #[test]
    fn boundary_twist_tau() {
        let g = 2;
        let f = catalog::twist_boundary(g);
        let t = tau(&f, 1).unwrap();
        let z = zeta_class(g).to_lie();
        for j in 1..=g {
            let expect = z.sub(&act_f(&Word::gen(j), &z));
            assert_eq!(t.c[j - 1], expect);
        }
        assert_eq!(d0_to_d1(&t).unwrap(), t.h);
        assert_eq!(d0_to_d1_fox(&t).unwrap(), t.h);
        assert!(t.on_zeta(3).is_zero());
        assert_eq!(jf_degree(&f, 3).unwrap(), JfDegree::Exact(1));
    }

    #[test]
    fn degrees_of_simple_elements() {
        let g = 2;
        let id = Endo::identity(crate::words::Alphabet::Surface(g));
        assert_eq!(jf_degree(&id, 3).unwrap(), JfDegree::Above(3));
        let f = catalog::handle_swap(g, 1).unwrap();
        assert_eq!(jf_degree(&f, 3).unwrap(), JfDegree::Exact(0));
        assert_eq!(tau(&f, 1).unwrap_err().code(), "F_NOT_IN_H_K");
    }

    #[test]
    fn varrho_leading_terms() {
        let g = 2;
        let theta = Expansion::standard(g, 4);
        for f in [
            catalog::twist_alpha(g, 1).unwrap(),
            catalog::twist_boundary(g),
        ] {
            let r = varrho(&f, &theta, 2).unwrap();
            assert_eq!(r.homogeneous(1), tau(&f, 1).unwrap());
            assert!(r.homogeneous(1).on_zeta(2).is_zero());
            let special = crate::envelope::special_construct(g, 3).unwrap();
            let r = varrho(&f, &special, 2).unwrap();
            assert_eq!(r.homogeneous(1), tau(&f, 1).unwrap());
            assert!(r.on_zeta(3).is_zero());
        }
        let id = Endo::identity(crate::words::Alphabet::Surface(g));
        assert!(varrho(&id, &theta, 3).unwrap().is_zero());
    }

    #[test]
    fn bracket_antisymmetric() {
        let g = 2;
        let d = tau(&catalog::twist_alpha(g, 1).unwrap(), 1).unwrap();
        let e = tau(&catalog::twist_boundary(g), 1).unwrap();
        assert!(d.bracket(&d, 3).is_zero());
        let de = d.bracket(&e, 3);
        assert_eq!(de, e.bracket(&d, 3).scale(&-Q::one()));
        assert!(de.on_zeta(4).is_zero());
        let _ = parse_lie(g, "(1 . a1)").unwrap();
    }
}
