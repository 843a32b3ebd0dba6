//! Fox derivatives, Jacobian matrices of surface-group endomorphisms and
//! their Magnus blocks.

use crate::error::{precondition, Result};
use crate::groupring::{Coeff, GroupRing, RingMatrix, ZG};
use crate::liefree::AElt;
use crate::words::{in_a, varpi, Alphabet, Endo, Word};

/// Left derivative of a word with respect to generator `k` (1-based).
pub fn fox_left_word<C: Coeff>(w: &Word, k: usize) -> GroupRing<C> {
    let mut out = GroupRing::zero();
    let ls = w.letters();
    for (p, &l) in ls.iter().enumerate() {
        if l.unsigned_abs() as usize != k {
            continue;
        }
        if l > 0 {
            out.add_term(C::one(), w.prefix(p));
        } else {
            out.add_term(-C::one(), w.prefix(p + 1));
        }
    }
    out
}

/// Left derivative, extended linearly.
pub fn fox_left<C: Coeff>(u: &GroupRing<C>, k: usize) -> GroupRing<C> {
    let mut out = GroupRing::zero();
    for (w, c) in u.terms() {
        out += &fox_left_word::<C>(w, k).scale(c);
    }
    out
}

/// Right derivative of a word: `w - 1 = sum_k (z_k - 1) * right_k(w)`.
pub fn fox_right_word<C: Coeff>(w: &Word, k: usize) -> GroupRing<C> {
    let mut out = GroupRing::zero();
    let ls = w.letters();
    for (p, &l) in ls.iter().enumerate() {
        if l.unsigned_abs() as usize != k {
            continue;
        }
        if l > 0 {
            out.add_term(C::one(), w.suffix_from(p + 1));
        } else {
            out.add_term(-C::one(), w.suffix_from(p));
        }
    }
    out
}

pub fn fox_right<C: Coeff>(u: &GroupRing<C>, k: usize) -> GroupRing<C> {
    let mut out = GroupRing::zero();
    for (w, c) in u.terms() {
        out += &fox_right_word::<C>(w, k).scale(c);
    }
    out
}

/// Matrix with entry `(i, j)` the antipode of the derivative of the
/// image of generator `j` along generator `i`.
pub fn jacobian(f: &Endo) -> RingMatrix<crate::groupring::Z> {
    let n = f.alphabet.rank();
    RingMatrix::from_fn(n, n, |i, j| {
        fox_left_word::<crate::groupring::Z>(&f.images[j], i + 1).bar()
    })
}

/// The Jacobian pushed to `Z[F]`.
pub fn jacobian_f(f: &Endo) -> RingMatrix<crate::groupring::Z> {
    let g = f.genus();
    jacobian(f).map_entries(|e| e.map_words(|w| varpi(g, w)))
}

/// The four `g x g` blocks of [`jacobian_f`] in the basis order
/// `(a_1..a_g, b_1..b_g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusBlocks {
    /// `a` rows, `a` columns: the action on the module of meridians.
    pub mag10: RingMatrix<crate::groupring::Z>,
    /// `a` rows, `b` columns.
    pub mag: RingMatrix<crate::groupring::Z>,
    /// `b` rows, `a` columns; vanishes when `A` is preserved.
    pub lower_left: RingMatrix<crate::groupring::Z>,
    /// `b` rows, `b` columns: the Jacobian of the induced map on `F`.
    pub mag00: RingMatrix<crate::groupring::Z>,
}

fn require_a_preserving(f: &Endo) -> Result<usize> {
    let Alphabet::Surface(g) = f.alphabet else {
        return precondition(
            "NOT_SURFACE",
            "expected an endomorphism of the surface group",
        );
    };
    for i in 1..=g {
        if !in_a(g, &f.images[i - 1]) {
            return precondition("NOT_PRESERVING_A", format!("image of a{i} is not in A"));
        }
    }
    Ok(g)
}

pub fn magnus_blocks(f: &Endo) -> Result<MagnusBlocks> {
    let g = require_a_preserving(f)?;
    let j = jacobian_f(f);
    Ok(MagnusBlocks {
        mag10: j.block(0, 0, g, g),
        mag: j.block(0, g, g, g),
        lower_left: j.block(g, 0, g, g),
        mag00: j.block(g, g, g, g),
    })
}

/// The Magnus matrix (upper-right block).
pub fn magnus(f: &Endo) -> Result<RingMatrix<crate::groupring::Z>> {
    Ok(magnus_blocks(f)?.mag)
}

/// Class in the meridian module of a word of `A`.
pub fn kappa_word(g: usize, w: &Word) -> Result<AElt> {
    if !in_a(g, w) {
        return precondition("NOT_IN_A", "word is not in the normal closure of the a_i");
    }
    let coeffs = (1..=g)
        .map(|i| {
            fox_left_word::<crate::groupring::Z>(w, i)
                .map_words(|v| varpi(g, v))
                .to_q()
        })
        .collect();
    Ok(AElt::from_coeffs(coeffs))
}

/// Applies an endomorphism of `F` to every entry.
pub fn act_on_matrix(
    sigma: &Endo,
    m: &RingMatrix<crate::groupring::Z>,
) -> RingMatrix<crate::groupring::Z> {
    m.map_entries(|e| e.map_words(|w| sigma.apply(w)))
}

pub fn is_hermitian<C: Coeff>(m: &RingMatrix<C>) -> bool {
    *m == m.dagger()
}

/// Group-ring element from a word-level sum, used by the oracle tests.
pub fn word_sum(ws: &[(i64, Word)]) -> ZG {
    ZG::from_terms(
        ws.iter()
            .map(|(c, w)| (crate::groupring::Z::from(*c), w.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::Z;
    use crate::words::{catalog, Alphabet};

    fn zg(al: &Alphabet, s: &str) -> ZG {
        ZG::parse(al, s).unwrap()
    }

    #[test]
    fn fundamental_formulas() {
        let al = Alphabet::Surface(2);
        for s in ["a1 b2^-1 a1^-2 b1", "b1^3 a2^-1", "a2 b2 a2^-1 b2^-1 a1"] {
            let w = al.parse(s).unwrap();
            let mut left = zg(&al, "1").scale(&Z::from(-1));
            let mut right = left.clone();
            left.add_term(Z::from(1), w.clone());
            right.add_term(Z::from(1), w.clone());
            let mut sl = ZG::zero();
            let mut sr = ZG::zero();
            for k in 1..=4 {
                let zk = &ZG::word(Word::gen(k)) - &ZG::one();
                sl += &(&fox_left_word::<Z>(&w, k) * &zk);
                sr += &(&zk * &fox_right_word::<Z>(&w, k));
            }
            assert_eq!(sl, left);
            assert_eq!(sr, right);
        }
    }

    #[test]
    fn right_derivative_from_left() {
        let al = Alphabet::Surface(2);
        let w = al.parse("a1 b2^-1 a1^-2 b1 a2").unwrap();
        for k in 1..=4 {
            let zinv = Word::gen(k).inv();
            let expect =
                &(&ZG::word(zinv) * &fox_left_word::<Z>(&w, k).bar()) * &ZG::word(w.clone());
            assert_eq!(fox_right_word::<Z>(&w, k), expect);
        }
    }

    #[test]
    fn chain_rule() {
        let g = 2;
        let f = catalog::handle_swap(g, 1).unwrap();
        let h = catalog::twist_alpha(g, 2)
            .unwrap()
            .compose(&catalog::twist_boundary(g));
        let lhs = jacobian(&f.compose(&h));
        let rhs = jacobian(&f).mul(&jacobian(&h).map_entries(|e| e.map_words(|w| f.apply(w))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn twist_alpha_magnus() {
        let f = catalog::twist_alpha(2, 1).unwrap();
        let b = magnus_blocks(&f).unwrap();
        assert_eq!(
            b.mag,
            RingMatrix::from_fn(2, 2, |i, j| if i == 0 && j == 0 {
                ZG::one()
            } else {
                ZG::zero()
            })
        );
        assert!(b.lower_left.is_zero());
    }
}
