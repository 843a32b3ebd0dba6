use handlebody::diagrams::*;
use handlebody::envelope::special_construct;
use handlebody::foxcalc::magnus;
use handlebody::groupring::{qf, Laurent, Q};
use handlebody::johnson::{d0_to_d1, varrho};
use handlebody::liefree::{parse_lie, zeta_class, AElt, Letter, Lie};
use handlebody::words::{alpha, catalog, zeta, Word};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seg(g: usize, c: Q, i: usize, x: Word, j: usize) -> DiagElt {
    eta_tree(g, &[Tree::segment(c, Letter::a(i), x, Letter::a(j))]).unwrap()
}

#[test]
fn random_tree_bracket_matches_derivations() {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..40 {
        let (k, l) = [(1, 1), (1, 2), (2, 2), (3, 1), (1, 3)][round % 5];
        let d = random::tree(&mut rng, g, k, 1, 2);
        let e = random::tree(&mut rng, g, l, 1, 2);
        let ed = eta_tree(g, &[d.clone()]).unwrap();
        let ee = eta_tree(g, &[e.clone()]).unwrap();
        let via_trees = eta_tree(g, &bracket_trees(&[d.clone()], &[e.clone()])).unwrap();
        let dd = ed.to_derivation().unwrap();
        let de = ee.to_derivation().unwrap();
        let via_der = DiagElt::from_derivation(&dd.bracket(&de, k + l));
        assert_eq!(
            via_trees,
            via_der,
            "round {round}\n{}\n{}",
            d.format(),
            e.format()
        );
    }
}

#[test]
fn bracket_on_canonical_forms() {
    let g = 3;
    let s11 = seg(g, Q::one(), 1, Word::one(), 1);
    let s22 = seg(g, Q::one(), 2, Word::one(), 2);
    assert!(tree_bracket(&s11, &s22).unwrap().is_zero());
    let s12 = seg(g, Q::one(), 1, Word::one(), 2);
    let s23 = seg(g, Q::one(), 2, Word::one(), 3);
    let b = tree_bracket(&s12, &s23).unwrap();
    // a single Y tree: Psi(a2, a2) = 1 (x) a2 joins the two segments at a2
    let y = Tree::join(
        Q::one(),
        &Half::Leaf(Letter::a(2)),
        &Half::node(Half::Leaf(Letter::a(1)), Half::Leaf(Letter::a(3))),
    );
    assert_eq!(b, eta_tree(g, &[y]).unwrap());
    assert!(bracket_oracle(&s12, &s23).unwrap());
    let back = tree_bracket(&s23, &s12).unwrap();
    assert_eq!(back, b.scale(&-Q::one()));
}

#[test]
fn jacobi_and_beta_condition() {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let t: Vec<DiagElt> = (0..3)
            .map(|_| eta_tree(g, &[random::tree(&mut rng, g, 1, 1, 1)]).unwrap())
            .collect();
        let j = |a: &DiagElt, b: &DiagElt, c: &DiagElt| {
            tree_bracket(a, &tree_bracket(b, c).unwrap()).unwrap()
        };
        let sum = j(&t[0], &t[1], &t[2])
            .add(&j(&t[1], &t[2], &t[0]))
            .add(&j(&t[2], &t[0], &t[1]));
        assert!(sum.is_zero());
        assert!(tree_bracket(&t[0], &t[1]).unwrap().beta_check());
    }
}

#[test]
fn present_roundtrip() {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in [1, 2, 3, 1, 2, 3] {
        let d = eta_tree(
            g,
            &[
                random::tree(&mut rng, g, k, 1, 1),
                random::tree(&mut rng, g, k, 1, 1),
            ],
        )
        .unwrap();
        assert_eq!(eta_tree(g, &tree_present(&d).unwrap()).unwrap(), d);
    }
    let s12 = seg(3, Q::one(), 1, Word::one(), 2);
    let p = tree_present(&s12).unwrap();
    assert_eq!(eta_tree(3, &p).unwrap(), s12);
    // outside the kernel of the bracket
    let bad = DiagElt {
        g: 2,
        slots: vec![Lie::letter(Letter::a(2)), Lie::zero()],
    };
    assert_eq!(tree_present(&bad).unwrap_err().code(), "BETA_CONDITION");
}

#[test]
fn action_matches_cocycle_completion() {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in [1, 2, 3, 3] {
        let t = random::tree(&mut rng, g, k, 1, 2);
        let d = eta_tree(g, &[t.clone()]).unwrap();
        let h = d0_to_d1(&d.to_derivation().unwrap()).unwrap();
        for i in 1..=g {
            assert_eq!(t.apply_letter(&Letter::a(i)), h[i - 1], "{}", t.format());
        }
        let a = AElt::letter(g, &random::letter(&mut rng, g, 2));
        let via_present = tree_derivation_apply(&d, &a).unwrap();
        let direct = d.to_derivation().unwrap().apply_aelt(&a, k + 1);
        assert_eq!(via_present, direct);
    }
    // a leaf not meeting a, and no beads
    let s22 = seg(g, Q::one(), 2, Word::one(), 2);
    assert!(tree_derivation_apply(&s22, &AElt::basis(g, 1))
        .unwrap()
        .is_zero());
}

#[test]
fn degree_one_values() {
    let g = 3;
    let ta = catalog::twist_alpha(g, 1).unwrap();
    let half = qf(-1, 2);
    let expect = seg(g, half.clone(), 1, Word::one(), 1);
    assert_eq!(tau_d(&ta, 1).unwrap(), expect);
    assert_eq!(disk_twist_tau1(g, &alpha(g, 1)).unwrap(), expect);
    assert_eq!(tau1_from_magnus(&ta).unwrap(), expect);

    let tz = catalog::twist_boundary(g);
    let z = zeta_class(g).to_lie();
    let expect = eta_join(g, &z, &z).scale(&half);
    assert_eq!(tau_d(&tz, 1).unwrap(), expect);
    assert_eq!(disk_twist_tau1(g, &zeta(g)).unwrap(), expect);
    assert_eq!(tree_from_matrix(&magnus(&tz).unwrap()).unwrap(), expect);
}

#[test]
fn mccullough_values() {
    let g = 3;
    let one = Laurent::from_terms([(0, 1)]);
    assert_eq!(
        mccullough_m(&tau_d(&catalog::twist_alpha(g, 1).unwrap(), 1).unwrap()).unwrap(),
        one
    );
    for n in [0i64, 1, 2, -1] {
        let d = disk_twist_tau1(g, &gamma_n_word(g, n)).unwrap();
        let expect = Laurent::from_terms([(0, 2), (n + 1, -1), (-n - 1, -1)]);
        assert_eq!(mccullough_m(&d).unwrap(), expect, "n = {n}");
    }
    assert_eq!(mccullough_m(&DiagElt::zero(g)).unwrap(), Laurent::default());
    let u = disk_twist_tau1(g, &gamma_n_word(g, 1)).unwrap();
    let x1 = Word::gen(1);
    let r: Lie =
        Lie::letter(Letter::new(x1.inv(), 1)).sub(&Lie::letter(Letter::new(Word::gen(2), 1)));
    assert_eq!(u, eta_join(g, &r, &r).scale(&qf(-1, 2)));
}

#[test]
fn ell_n_paths_agree() {
    for n in -1..=2 {
        assert_eq!(
            ell_n_tau1(3, n).unwrap(),
            ell_n_tau1_composite(3, n).unwrap()
        );
    }
    assert_eq!(
        ell_n_tau1(3, 0).unwrap(),
        seg(3, Q::one(), 2, Word::one(), 1)
    );
    assert_eq!(ell_n_tau1(2, 0).unwrap_err().code(), "GENUS_TOO_SMALL");
}

#[test]
fn projection_mod_r() {
    let g = 3;
    assert!(project_mod_r(&seg(g, qf(-1, 2), 1, Word::one(), 1)).is_zero());
    let (m, n) = (1, 2);
    let tau2 = tree_bracket(&ell_n_tau1(g, m).unwrap(), &ell_n_tau1(g, n).unwrap()).unwrap();
    let w = Lie::letter(Letter::new(Word::gen(3).pow(m), 2))
        .bracket(&Lie::letter(Letter::new(Word::gen(3).pow(n), 2)));
    assert_eq!(project_mod_r(&tau2), project_mod_r(&rooted_at_a1(g, &w)));
}

#[test]
fn milnor_square() {
    let g = 3;
    let mu = milnor_mu(g, &BraidWord::parse("t12").unwrap()).unwrap();
    assert_eq!(mu, seg(g, Q::one(), 1, Word::one(), 2));
    let t = braid_tau_d(g, &BraidWord::parse("t12").unwrap()).unwrap();
    assert_eq!(t, seg(g, -Q::one(), 1, Word::one(), 2));
    for w in ["[t12,t23]", "[t12,[t13,t23]]", "[[t12,t13],t13]"] {
        assert!(
            milnor_square_check(g, &BraidWord::parse(w).unwrap()).unwrap(),
            "{w}"
        );
    }
    assert!(BraidWord::parse("[t21,t12]").is_err());
}

#[test]
fn relations_vanish() {
    for (name, trees) in relation_instances(3) {
        assert!(eta_tree(3, &trees).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn text_forms() {
    let s = "(tree -1/2 (node (leaf () 1) (node (bead (x1^2) (leaf (x2) 2)) (leaf () 3))))";
    let t = parse_trees(3, s).unwrap();
    assert_eq!(t[0].format(), s);
    assert!(parse_trees(3, "(tree 1 (node (leaf () 4) (leaf () 1)))").is_err());
    assert!(parse_trees(3, "(tree 1 (node (leaf () 1)").is_err());
    let d = eta_tree(3, &t).unwrap();
    assert_eq!(
        d.slots[0],
        parse_lie(3, "-1/2*[(x1^2 x2 . a2), a3]").unwrap()
    );
}

#[test]
fn kawazumi_kuno_degree_one() {
    let g = 2;
    let theta = special_construct(g, 3).unwrap();
    let k = kk_rhs(&theta, &alpha(g, 1), 1).unwrap();
    let t = varrho(&catalog::twist_alpha(g, 1).unwrap(), &theta, 1).unwrap();
    assert_eq!(k, t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn bracket_antisymmetric(seed in any::<u64>()) {
        let g = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::tree(&mut rng, g, 1, 1, 1);
        let e = random::tree(&mut rng, g, 2, 1, 1);
        let de = eta_tree(g, &bracket_trees(&[d.clone()], &[e.clone()])).unwrap();
        let ed = eta_tree(g, &bracket_trees(&[e], &[d])).unwrap();
        prop_assert_eq!(de, ed.scale(&-Q::one()));
    }

    #[test]
    fn eta_lands_in_kernel(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random::tree(&mut rng, 3, 3, 2, 2);
        prop_assert!(eta_tree(3, &[t]).unwrap().beta_check());
    }
}
