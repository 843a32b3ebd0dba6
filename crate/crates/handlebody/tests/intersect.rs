use handlebody::foxcalc::kappa_word;
use handlebody::groupring::{q, QG};
use handlebody::intersect::{identities, pairing, psi, psi_letters, psi_oracle, PeelOrder};
use handlebody::liefree::{AElt, Letter};
use handlebody::words::{alpha, lift_f, Word};
use proptest::prelude::*;

const G: usize = 2;

fn f_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)],
        0..=max_len,
    )
    .prop_map(Word::from_letters)
}

fn letter(max_len: usize) -> impl Strategy<Value = Letter> {
    (f_word(max_len), 1..=G).prop_map(|(f, i)| Letter::new(f, i))
}

fn pi_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![
            Just(1i32),
            Just(-1),
            Just(2),
            Just(-2),
            Just(3),
            Just(-3),
            Just(4),
            Just(-4)
        ],
        0..=max_len,
    )
    .prop_map(Word::from_letters)
}

fn aelt() -> impl Strategy<Value = AElt> {
    prop::collection::vec((letter(2), -2i64..=2), 1..=3).prop_map(|ls| {
        let mut a = AElt::zero(G);
        for (l, c) in ls {
            a.coeffs[l.i - 1].add_term(q(c), l.f);
        }
        a
    })
}

#[test]
fn pairing_matrix_is_minus_identity() {
    for i in 1..=3 {
        for j in 1..=3 {
            let mut x = QG::word(Word::gen(i));
            x.add_term(q(-1), Word::one());
            let p = pairing(3, &x, &AElt::basis(3, j)).unwrap();
            let expect = if i == j {
                QG::constant(q(-1))
            } else {
                QG::zero()
            };
            assert_eq!(p, expect);
        }
    }
}

#[test]
fn oracle_matches_on_short_conjugates() {
    let mut fs = vec![Word::one()];
    for a in [1, -1, 2, -2] {
        fs.push(Word::letter(a));
        for b in [1, -1, 2, -2] {
            if a != -b {
                fs.push(Word::from_letters([a, b]));
            }
        }
    }
    for f in &fs {
        for h in &fs {
            for i in 1..=G {
                for j in 1..=G {
                    let u = alpha(G, i).conj(&lift_f(G, f));
                    let v = alpha(G, j).conj(&lift_f(G, h));
                    let direct = psi_letters(
                        &Letter::new(f.clone(), i),
                        &Letter::new(h.clone(), j),
                        PeelOrder::LeftFirst,
                    );
                    assert_eq!(
                        direct,
                        psi_oracle(G, &u, &v).unwrap(),
                        "{f:?} {i} {h:?} {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_rejects_words_outside_a() {
    let e = psi_oracle(G, &Word::gen(3), &alpha(G, 1)).unwrap_err();
    assert_eq!(e.code(), "NOT_IN_A");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eta_is_skew(u in pi_word(5), v in pi_word(5)) {
        prop_assert!(identities::eta_skew(G, &u, &v).is_zero());
    }

    #[test]
    fn oracle_on_products(u1 in pi_word(3), v1 in pi_word(3), i in 1..=G, j in 1..=G, k in 1..=G) {
        // a product of two conjugated meridians against one
        let a = alpha(G, i).conj(&u1).mul(&alpha(G, k));
        let b = alpha(G, j).conj(&v1);
        let lhs = psi(&kappa_word(G, &a).unwrap(), &kappa_word(G, &b).unwrap());
        prop_assert_eq!(lhs, psi_oracle(G, &a, &b).unwrap());
    }

    #[test]
    fn peeling_is_confluent(a in letter(3), b in letter(3)) {
        prop_assert_eq!(psi_letters(&a, &b, PeelOrder::LeftFirst), psi_letters(&a, &b, PeelOrder::RightFirst));
    }

    #[test]
    fn psi_against_zeta(a in aelt()) {
        prop_assert!(identities::psi_zeta(G, &a).is_zero());
    }

    #[test]
    fn theta_identities(x in f_word(4), y in f_word(4), f in f_word(3), a in aelt()) {
        prop_assert!(identities::theta_left(&x, &y, &a).is_zero());
        prop_assert!(identities::theta_right(&x, &f, &a).is_zero());
        prop_assert!(identities::theta_inversion(&x, &a).is_zero());
    }

    #[test]
    fn psi_symmetry(a in letter(3), b in letter(3)) {
        prop_assert!(identities::kind_of_sym(&a, &b).is_zero());
    }

    #[test]
    fn pseudo_jacobi_pair(a in letter(2), b in letter(2), c in letter(2)) {
        prop_assert!(identities::pseudo_jacobi(&a, &b, &c).is_empty());
        prop_assert!(identities::pseudo_jacobi_bis(&a, &b, &c).is_empty());
    }
}
