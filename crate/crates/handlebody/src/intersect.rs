//! The homotopy intersection form of the surface group, the induced pairing
//! between `Z[F]` and the meridian module, and the maps `Theta` and `Psi`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{internal, precondition, Result};
use crate::foxcalc::{fox_left, fox_left_word, fox_right, kappa_word};
use crate::groupring::{Coeff, GroupRing, RingMatrix, Q, QG};
use crate::liefree::{fmt_f, AElt, Letter};
use crate::words::{alpha, beta, lift_f, varpi, Word};

fn gr<C: Coeff>(terms: &[(i64, Word)]) -> GroupRing<C> {
    GroupRing::from_terms(terms.iter().map(|(c, w)| (C::from_i64(*c), w.clone())))
}

/// `-(x - 1)(y - 1)` for generators `x`, `y`.
fn p_entry<C: Coeff>(x: &Word, y: &Word) -> GroupRing<C> {
    gr(&[
        (-1, x.mul(y)),
        (1, x.clone()),
        (1, y.clone()),
        (-1, Word::one()),
    ])
}

/// Values of the intersection form on pairs of generators, basis order
/// `(a_1..a_g, b_1..b_g)`.
pub fn e_matrix<C: Coeff>(g: usize) -> RingMatrix<C> {
    let gen = |k: usize| -> Word {
        if k < g {
            alpha(g, k + 1)
        } else {
            beta(g, k - g + 1)
        }
    };
    RingMatrix::from_fn(2 * g, 2 * g, |r, c| {
        let (i, j) = (r % g, c % g);
        let (ra, ca) = (r < g, c < g);
        if i < j {
            return GroupRing::zero();
        }
        if i > j {
            return p_entry(&gen(r), &gen(c));
        }
        match (ra, ca) {
            (true, true) => gr(&[(1, alpha(g, i + 1)), (-1, Word::one())]),
            (true, false) => gr(&[(1, alpha(g, i + 1)), (1, beta(g, i + 1)), (-1, Word::one())]),
            (false, true) => gr(&[(-1, Word::one())]),
            (false, false) => gr(&[(1, beta(g, i + 1)), (-1, Word::one())]),
        }
    })
}

/// `eta(x, y) = sum_{i,j} (left_i x) E_ij (right_j y)`.
pub fn eta<C: Coeff>(g: usize, x: &GroupRing<C>, y: &GroupRing<C>) -> GroupRing<C> {
    let e = e_matrix::<C>(g);
    let lx: Vec<GroupRing<C>> = (1..=2 * g).map(|i| fox_left(x, i)).collect();
    let ry: Vec<GroupRing<C>> = (1..=2 * g).map(|j| fox_right(y, j)).collect();
    let mut out = GroupRing::zero();
    for i in 0..2 * g {
        if lx[i].is_zero() {
            continue;
        }
        for j in 0..2 * g {
            if ry[j].is_zero() || e.get(i, j).is_zero() {
                continue;
            }
            out += &(&(&lx[i] * e.get(i, j)) * &ry[j]);
        }
    }
    out
}

/// Lift of a meridian-module element to `Q[pi]`: `f . a_i -> f a_i f^-1`.
fn lift_aelt(g: usize, a: &AElt) -> QG {
    let mut out = QG::zero();
    for (l, c) in a.letters() {
        let f = lift_f(g, &l.f);
        out.add_term(c, alpha(g, l.i).conj(&f));
    }
    out
}

/// The pairing by its closed formula: `<u, sum c_j a_j> = -sum (d u/d x_j) bar(c_j)`.
pub fn pairing_formula(x: &QG, a: &AElt) -> QG {
    let mut out = QG::zero();
    for (j, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out -= &(&fox_left(x, j + 1) * &c.bar());
    }
    out
}

/// The pairing through the intersection form of lifts.
pub fn pairing_via_eta(g: usize, x: &QG, a: &AElt) -> QG {
    let lx = x.map_words(|w| lift_f(g, w));
    eta(g, &lx, &lift_aelt(g, a)).map_words(|w| varpi(g, w))
}

/// `<x, a>` computed both ways; disagreement is an internal error.
pub fn pairing(g: usize, x: &QG, a: &AElt) -> Result<QG> {
    let p = pairing_formula(x, a);
    if p != pairing_via_eta(g, x, a) {
        return internal("pairing routes disagree");
    }
    Ok(p)
}

/// `<x, l>` for a group element and a single letter, closed formula only.
pub(crate) fn pairing_word_letter(x: &Word, l: &Letter) -> QG {
    let d = fox_left_word::<Q>(x, l.i);
    -&d.right_mul_word(&l.f.inv())
}

/// Finite sum in `Q[F] (x) Q[F]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorPair {
    terms: BTreeMap<(Word, Word), Q>,
}

/// Finite sum in `Q[F] (x) A`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorA {
    terms: BTreeMap<(Word, Letter), Q>,
}

macro_rules! sum_impl {
    ($t:ty, $k:ty) => {
        impl $t {
            pub fn zero() -> Self {
                Self::default()
            }
            pub fn add_term(&mut self, k: $k, c: Q) {
                if c.is_zero() {
                    return;
                }
                use std::collections::btree_map::Entry;
                match self.terms.entry(k) {
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
            pub fn terms(&self) -> impl Iterator<Item = (&$k, &Q)> {
                self.terms.iter()
            }
            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }
            pub fn add_assign(&mut self, o: &Self) {
                for (k, c) in &o.terms {
                    self.add_term(k.clone(), c.clone());
                }
            }
            pub fn add_scaled(&mut self, o: &Self, s: &Q) {
                for (k, c) in &o.terms {
                    self.add_term(k.clone(), c * s);
                }
            }
            pub fn sub(&self, o: &Self) -> Self {
                let mut r = self.clone();
                r.add_scaled(o, &-Q::one());
                r
            }
        }
    };
}

sum_impl!(TensorPair, (Word, Word));
sum_impl!(TensorA, (Word, Letter));

fn format_sum<K>(terms: &BTreeMap<K, Q>, show: impl Fn(&K) -> String) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (key, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&show(key));
    }
    s
}

impl TensorPair {
    pub fn format(&self) -> String {
        format_sum(&self.terms, |(l, r)| {
            format!("{} (x) {}", fmt_f(l), fmt_f(r))
        })
    }
}

impl TensorA {
    pub fn format(&self) -> String {
        format_sum(&self.terms, |(l, r)| {
            format!("{} (x) {}", fmt_f(l), r.format())
        })
    }
}

/// `Theta(x, a) = sum n_h h^-1 x (x) h` for `<x, a> = sum n_h h`, extended
/// linearly in `x`.
pub fn theta_pair(x: &QG, a: &AElt) -> TensorPair {
    let mut out = TensorPair::zero();
    for (y, n) in x.terms() {
        let p = pairing_formula(&QG::word(y.clone()), a);
        for (h, m) in p.terms() {
            out.add_term((h.inv().mul(y), h.clone()), n * m);
        }
    }
    out
}

pub(crate) fn theta_word_letter(x: &Word, l: &Letter) -> Vec<(Word, Word, Q)> {
    pairing_word_letter(x, l)
        .terms()
        .map(|(h, m)| (h.inv().mul(x), h.clone(), m.clone()))
        .collect()
}

/// Which argument is stripped of its group part first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PeelOrder {
    LeftFirst,
    RightFirst,
}

/// `Psi` on two letters by peeling one generator at a time.
pub fn psi_letters(l1: &Letter, l2: &Letter, order: PeelOrder) -> TensorA {
    let peel_left = match order {
        PeelOrder::LeftFirst => !l1.f.is_one(),
        PeelOrder::RightFirst => l2.f.is_one() && !l1.f.is_one(),
    };
    if peel_left {
        // Psi(x . a, b) = x Psi(a,b)^l (x) Psi(a,b)^r - Theta(x,b)^r (x) Theta(x,b)^l . a
        let x = Word::letter(l1.f.letters()[0]);
        let rest = Letter::new(x.inv().mul(&l1.f), l1.i);
        let sub = psi_letters(&rest, l2, order);
        let mut out = TensorA::zero();
        for ((u, l), c) in sub.terms() {
            out.add_term((x.mul(u), l.clone()), c.clone());
        }
        for (p, q, n) in theta_word_letter(&x, l2) {
            out.add_term((q, rest.translate(&p)), -n);
        }
        return out;
    }
    if !l2.f.is_one() {
        // Psi(a, y . b) = Psi(a,b)^l y^-1 (x) y . Psi(a,b)^r - bar<y, a> (x) y . b
        let y = Word::letter(l2.f.letters()[0]);
        let rest = Letter::new(y.inv().mul(&l2.f), l2.i);
        let sub = psi_letters(l1, &rest, order);
        let yi = y.inv();
        let mut out = TensorA::zero();
        for ((u, l), c) in sub.terms() {
            out.add_term((u.mul(&yi), l.translate(&y)), c.clone());
        }
        for (k, m) in pairing_word_letter(&y, l1).terms() {
            out.add_term((k.inv(), l2.clone()), -m.clone());
        }
        return out;
    }
    let mut out = TensorA::zero();
    if l1.i == l2.i {
        out.add_term((Word::one(), Letter::a(l1.i)), Q::one());
    }
    out
}

/// `Psi` on two letters from the whole-word forms of the defining rules.
pub fn psi_letters_direct(l1: &Letter, l2: &Letter) -> TensorA {
    let mut base = TensorA::zero();
    let (h, j, i) = (&l2.f, l2.i, l1.i);
    if i == j {
        base.add_term((h.inv(), Letter::new(h.clone(), i)), Q::one());
    }
    for (k, m) in pairing_word_letter(h, &Letter::a(i)).terms() {
        base.add_term((k.inv(), l2.clone()), -m.clone());
    }
    let f = &l1.f;
    let mut out = TensorA::zero();
    for ((u, l), c) in base.terms() {
        out.add_term((f.mul(u), l.clone()), c.clone());
    }
    for (p, q, n) in theta_word_letter(f, l2) {
        out.add_term((q, Letter::new(p, i)), -n);
    }
    out
}

/// `Psi(a, b)`, bilinear.
pub fn psi(a: &AElt, b: &AElt) -> TensorA {
    let mut out = TensorA::zero();
    for (l1, c1) in a.letters() {
        for (l2, c2) in b.letters() {
            out.add_scaled(&psi_letters(&l1, &l2, PeelOrder::LeftFirst), &(&c1 * &c2));
        }
    }
    out
}

/// `Psi([a], [b])` for words of `A` via the intersection form: each group
/// term `x` of `eta(a, b)` is split as (section of its image in `F`) times
/// a word of `A`, giving `varpi(x) (x) [A-part]`.
pub fn psi_oracle(g: usize, a: &Word, b: &Word) -> Result<TensorA> {
    if !varpi(g, a).is_one() || !varpi(g, b).is_one() {
        return precondition("NOT_IN_A", "oracle inputs must be words of A");
    }
    let e = eta::<crate::groupring::Z>(g, &GroupRing::word(a.clone()), &GroupRing::word(b.clone()));
    let mut out = TensorA::zero();
    let mut blocks: BTreeMap<Word, Q> = BTreeMap::new();
    for (x, n) in e.terms() {
        let fx = varpi(g, x);
        let ax = lift_f(g, &fx).inv().mul(x);
        *blocks.entry(fx.clone()).or_insert_with(Q::zero) += n.to_q();
        let k = kappa_word(g, &ax)?;
        for (l, c) in k.letters() {
            out.add_term((fx.clone(), l), c * n.to_q());
        }
    }
    if blocks.values().any(|v| !v.is_zero()) {
        return internal("intersection of words of A is not in the ideal J");
    }
    Ok(out)
}

/// Identity checks over letters, each returning the difference of both
/// sides (zero when the identity holds).
pub mod identities {
    use super::*;

    type Triple = BTreeMap<(Word, Word, Letter), Q>;

    fn add3(t: &mut Triple, k: (Word, Word, Letter), c: Q) {
        if c.is_zero() {
            return;
        }
        let e = t.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            t.remove(&k);
        }
    }

    fn ps(a: &Letter, b: &Letter) -> TensorA {
        psi_letters(a, b, PeelOrder::LeftFirst)
    }

    fn pairing_group(x: &Word, l: &Letter) -> QG {
        pairing_word_letter(x, l)
    }

    /// `Psi(a, [zeta]) - 1 (x) a`.
    pub fn psi_zeta(g: usize, a: &AElt) -> TensorA {
        let mut d = psi(a, &crate::liefree::zeta_class(g));
        for (l, c) in a.letters() {
            d.add_term((Word::one(), l), -c);
        }
        d
    }

    /// `Psi(b, a) - sum bar(h) (x) h . r` over `Psi(a, b) = sum h (x) r`.
    pub fn kind_of_sym(a: &Letter, b: &Letter) -> TensorA {
        let mut d = ps(b, a);
        for ((h, l), c) in ps(a, b).terms() {
            d.add_term((h.inv(), l.translate(h)), -c.clone());
        }
        d
    }

    pub fn pseudo_jacobi(a: &Letter, b: &Letter, c: &Letter) -> Triple {
        let mut d = Triple::new();
        for ((p, l), n) in ps(b, a).terms() {
            for ((p2, l2), m) in ps(l, c).terms() {
                add3(&mut d, (p.clone(), p2.clone(), l2.clone()), n * m);
            }
        }
        for ((p, l), n) in ps(a, c).terms() {
            for ((q, mm), m) in ps(b, l).terms() {
                add3(&mut d, (q.mul(&p.inv()), p.clone(), mm.clone()), -(n * m));
            }
            for (k, m) in pairing_group(p, b).terms() {
                add3(&mut d, (k.inv(), p.clone(), l.clone()), n * m);
            }
        }
        for ((p, l), n) in ps(b, c).terms() {
            for (s, t, m) in theta_word_letter(p, a) {
                add3(&mut d, (t, s, l.clone()), n * &m);
            }
        }
        d
    }

    pub fn pseudo_jacobi_bis(a: &Letter, b: &Letter, c: &Letter) -> Triple {
        let mut d = Triple::new();
        for ((p, l), n) in ps(a, c).terms() {
            for ((q, mm), m) in ps(b, l).terms() {
                add3(&mut d, (p.clone(), q.clone(), mm.clone()), n * m);
            }
            for (k, m) in pairing_group(p, b).terms() {
                add3(&mut d, (p.clone(), k.inv().mul(p), l.clone()), -(n * m));
            }
        }
        for ((p, l), n) in ps(b, a).terms() {
            for ((q, mm), m) in ps(l, c).terms() {
                add3(&mut d, (q.clone(), p.mul(q), mm.clone()), -(n * m));
            }
        }
        for ((p, l), n) in ps(b, c).terms() {
            for (k, m) in pairing_group(p, a).terms() {
                add3(&mut d, (k.inv().mul(p), p.clone(), l.clone()), -(n * m));
            }
        }
        d
    }

    fn split(t: &TensorPair) -> Vec<(Word, Word, Q)> {
        t.terms()
            .map(|((l, r), c)| (l.clone(), r.clone(), c.clone()))
            .collect()
    }

    /// `Theta(xy, a) - Theta(y,a)^l (x) x Theta(y,a)^r - Theta(x,a)^l y (x) Theta(x,a)^r`.
    pub fn theta_left(x: &Word, y: &Word, a: &AElt) -> TensorPair {
        let mut d = theta_pair(&QG::word(x.mul(y)), a);
        for (l, r, c) in split(&theta_pair(&QG::word(y.clone()), a)) {
            d.add_term((l, x.mul(&r)), -c);
        }
        for (l, r, c) in split(&theta_pair(&QG::word(x.clone()), a)) {
            d.add_term((l.mul(y), r), -c);
        }
        d
    }

    /// `Theta(x, f . a) - f Theta^l (x) Theta^r f^-1`.
    pub fn theta_right(x: &Word, f: &Word, a: &AElt) -> TensorPair {
        let mut d = theta_pair(&QG::word(x.clone()), &a.act_word(f));
        for (l, r, c) in split(&theta_pair(&QG::word(x.clone()), a)) {
            d.add_term((f.mul(&l), r.mul(&f.inv())), -c);
        }
        d
    }

    /// `Theta(bar x, a) + bar(Theta^r) (x) bar(Theta^l)`.
    pub fn theta_inversion(x: &Word, a: &AElt) -> TensorPair {
        let mut d = theta_pair(&QG::word(x.inv()), a);
        for (l, r, c) in split(&theta_pair(&QG::word(x.clone()), a)) {
            d.add_term((r.inv(), l.inv()), c);
        }
        d
    }

    /// `eta(u,v) + u bar(eta(v,u)) v + (u-1)(v-1)` for group elements.
    pub fn eta_skew(g: usize, u: &Word, v: &Word) -> crate::groupring::ZG {
        use crate::groupring::ZG;
        let (uu, vv) = (ZG::word(u.clone()), ZG::word(v.clone()));
        let one = ZG::one();
        let mut d = eta(g, &uu, &vv);
        d += &(&(&uu * &eta(g, &vv, &uu).bar()) * &vv);
        d += &(&(&uu - &one) * &(&vv - &one));
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{q, Z, ZG};
    use crate::words::Alphabet;

    #[test]
    fn eta_examples() {
        let g = 2;
        let al = Alphabet::Surface(g);
        let e = eta::<Z>(g, &ZG::word(beta(g, 1)), &ZG::word(alpha(g, 1)));
        assert_eq!(e, ZG::parse(&al, "-1").unwrap());
        let e = eta::<Z>(g, &ZG::word(alpha(g, 1)), &ZG::word(beta(g, 1)));
        assert_eq!(e, ZG::parse(&al, "a1 + b1 - 1").unwrap());
        assert!(eta::<Z>(g, &ZG::one(), &ZG::word(beta(g, 2))).is_zero());
    }

    #[test]
    fn eta_skew_on_words() {
        let g = 2;
        let al = Alphabet::Surface(g);
        let ws = ["a1", "b2 a1^-1", "a2 b1 b1 a1^-1", "b1^-1 a2^-1 b2"];
        for u in ws {
            for v in ws {
                let (u, v) = (al.parse(u).unwrap(), al.parse(v).unwrap());
                assert!(identities::eta_skew(g, &u, &v).is_zero(), "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let g = 2;
        let fal = Alphabet::Free(g);
        let x = QG::parse(&fal, "x1 - 1").unwrap();
        assert_eq!(
            pairing(g, &x, &AElt::basis(g, 1)).unwrap(),
            QG::constant(q(-1))
        );
        let x = QG::parse(&fal, "x1 x2 - 1").unwrap();
        assert_eq!(
            pairing(g, &x, &AElt::basis(g, 2)).unwrap(),
            QG::parse(&fal, "-x1").unwrap()
        );
        assert!(pairing(g, &QG::one(), &AElt::basis(g, 2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn theta_and_psi_examples() {
        let g = 1;
        let t = theta_pair(&QG::word(Word::gen(1)), &AElt::basis(g, 1));
        let mut expect = TensorPair::zero();
        expect.add_term((Word::gen(1), Word::one()), q(-1));
        assert_eq!(t, expect);
        let a1 = Letter::a(1);
        let xa1 = Letter::new(Word::gen(1), 1);
        let p = psi_letters(&xa1, &a1, PeelOrder::LeftFirst);
        let mut expect = TensorA::zero();
        expect.add_term((Word::gen(1), a1.clone()), q(1));
        expect.add_term((Word::one(), xa1.clone()), q(1));
        assert_eq!(p, expect);
    }

    #[test]
    fn oracle_on_generators() {
        let g = 2;
        let p = psi_oracle(g, &alpha(g, 1), &alpha(g, 1)).unwrap();
        let mut expect = TensorA::zero();
        expect.add_term((Word::one(), Letter::a(1)), q(1));
        assert_eq!(p, expect);
        assert!(psi_oracle(g, &alpha(g, 1), &alpha(g, 2)).unwrap().is_zero());
    }

    #[test]
    fn peeling_orders_agree() {
        let fs = [
            Word::one(),
            Word::gen(1),
            Word::from_letters([-2, 1]),
            Word::from_letters([2, 2]),
        ];
        for f in &fs {
            for h in &fs {
                for i in 1..=2 {
                    for j in 1..=2 {
                        let (l1, l2) = (Letter::new(f.clone(), i), Letter::new(h.clone(), j));
                        let a = psi_letters(&l1, &l2, PeelOrder::LeftFirst);
                        assert_eq!(a, psi_letters(&l1, &l2, PeelOrder::RightFirst));
                        assert_eq!(a, psi_letters_direct(&l1, &l2));
                    }
                }
            }
        }
    }
}
