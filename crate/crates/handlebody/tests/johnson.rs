use handlebody::envelope::Expansion;
use handlebody::johnson::{bch, d0_to_d1, d0_to_d1_fox, jf_degree, tau, varrho, JfDegree};
use handlebody::words::{catalog, Endo};
use std::time::Instant;

fn twists(g: usize) -> Vec<(String, Endo)> {
    let mut out = vec![("twist_boundary".to_string(), catalog::twist_boundary(g))];
    for i in 1..=g {
        out.push((
            format!("twist_alpha({i})"),
            catalog::twist_alpha(g, i).unwrap(),
        ));
    }
    for k in 1..=2 * g {
        for l in k..=2 * g {
            out.push((
                format!("twist_block({k},{l})"),
                catalog::twist_block(g, k, l).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn catalog_degrees() {
    let g = 2;
    for (name, f) in twists(g) {
        let d = jf_degree(&f, 3).unwrap();
        println!("{name}: {d}");
    }
    for s in [
        "handle_swap(1)",
        "handle_flip(1)",
        "elem_d(1,1,x2)",
        "elem_e(1,2,x1)",
        "phi(1,1,b2)",
    ] {
        match catalog::parse_product(g, s) {
            Ok(f) => println!("{s}: {:?}", jf_degree(&f, 3)),
            Err(e) => println!("{s}: {e}"),
        }
    }
}

#[test]
fn bch_homomorphism_small() {
    let g = 2;
    let theta = Expansion::standard(g, 4);
    let ts = twists(g);
    let t0 = Instant::now();
    for (a, b) in [(1, 2), (0, 1), (3, 5)] {
        let (f, h) = (&ts[a].1, &ts[b].1);
        let lhs = varrho(&f.compose(h), &theta, 3).unwrap();
        let rhs = bch(
            &varrho(f, &theta, 3).unwrap(),
            &varrho(h, &theta, 3).unwrap(),
            3,
        );
        println!("{} * {}: {}", ts[a].0, ts[b].0, lhs == rhs);
        if lhs != rhs {
            println!("{}\n---\n{}", lhs.sub(&rhs), rhs);
        }
    }
    println!("{:?}", t0.elapsed());
}

#[test]
fn commutator_degree_two() {
    let g = 2;
    let ts = twists(g);
    for a in 0..ts.len() {
        for b in 0..a {
            let (f, h) = (&ts[a].1, &ts[b].1);
            let comm = f
                .compose(h)
                .compose(&f.inverse().unwrap())
                .compose(&h.inverse().unwrap());
            let d = jf_degree(&comm, 3).unwrap();
            let br = tau(f, 1).unwrap().bracket(&tau(h, 1).unwrap(), 2);
            match d {
                JfDegree::Exact(1) => panic!("commutator of twists in degree 1"),
                JfDegree::Exact(2) => {
                    let t = tau(&comm, 2).unwrap();
                    assert_eq!(t, br, "{} {}", ts[a].0, ts[b].0);
                    assert_eq!(d0_to_d1(&t).unwrap(), t.h);
                    assert_eq!(d0_to_d1_fox(&t).unwrap(), t.h);
                }
                _ => assert!(br.is_zero(), "{} {}", ts[a].0, ts[b].0),
            }
        }
    }
}
