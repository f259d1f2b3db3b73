use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use symorb::symmetry::*;
use symorb::{Error, GroupElement, Masses, O2Elem, Perm3, SymmetryGroup, Turn};

fn t(n: i64, d: i64) -> Turn {
    Turn::new(n, d)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Orthogonal matrix from kind and angle.
fn mat(e: &O2Elem) -> [[f64; 2]; 2] {
    let a = TAU * turn_to_f64(e.turn);
    let (co, si) = (a.cos(), a.sin());
    match e.kind {
        O2Kind::Rotation => [[co, -si], [si, co]],
        O2Kind::Reflection => [[co, si], [si, -co]],
    }
}

fn matmul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn close(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() < 1e-12))
}

/// Recover kind and turn from a numerical matrix.
fn recover(m: [[f64; 2]; 2]) -> O2Elem {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let a = m[1][0].atan2(m[0][0]) / TAU;
    let a = a - a.floor();
    // the angles in these tests have denominators dividing 12
    let turn = Turn::new((a * 12.0).round() as i64, 12);
    if det > 0.0 {
        O2Elem::rot(turn)
    } else {
        O2Elem::refl(turn)
    }
}

#[test]
fn o2_examples() {
    let r3 = O2Elem::rot(t(1, 3));
    assert_eq!(r3.compose(&r3), O2Elem::rot(t(2, 3)));
    let f0 = O2Elem::refl(t(0, 1));
    assert!(f0.compose(&f0).is_identity());
    let prod = f0.compose(&r3);
    assert_eq!(prod, recover(matmul(mat(&f0), mat(&r3))));
    assert_eq!(prod, O2Elem::refl(t(2, 3)));
}

#[test]
fn o2_compose_matches_matrices() {
    let mut all = Vec::new();
    for k in 0..12 {
        all.push(O2Elem::rot(t(k, 12)));
        all.push(O2Elem::refl(t(k, 12)));
    }
    for a in &all {
        assert!(close(mat(&a.compose(&a.inverse())), [[1.0, 0.0], [0.0, 1.0]]));
        for b in &all {
            let p = a.compose(b);
            assert!(close(mat(&p), matmul(mat(a), mat(b))), "{a} {b}");
            assert_eq!(p.det(), a.det() * b.det());
            let z = c(0.3, -1.7);
            assert!((p.apply(z) - a.apply(b.apply(z))).norm() < 1e-12);
        }
    }
}

#[test]
fn perm_parse_and_compose() {
    let p12 = Perm3::parse("(12)").unwrap();
    let p123 = Perm3::parse("(123)").unwrap();
    assert_eq!(p123.apply(0), 1);
    assert_eq!(p123.apply(2), 0);
    assert_eq!(p123.order(), 3);
    assert_eq!(p12.compose(&p12), Perm3::identity());
    assert_eq!(p123.compose(&p123.inverse()), Perm3::identity());
    // apply the right factor first
    let q = p12.compose(&p123);
    assert!((0..3).all(|i| q.apply(i) == p12.apply(p123.apply(i))));
    assert!(Perm3::parse("(14)").is_err());
    assert!(Perm3::parse("(11)").is_err());
}

#[test]
fn generator_parsing() {
    let g = GroupElement::parse("tau=rot 1/3 rho=ref 0 sigma=(123)").unwrap();
    assert_eq!(g.tau, O2Elem::rot(t(1, 3)));
    assert_eq!(g.rho, O2Elem::refl(t(0, 1)));
    assert_eq!(GroupElement::parse(&g.to_string()).unwrap(), g);
    assert_eq!(GroupElement::parse("tau=rot 4/3 rho=rot -1/2 sigma=()").unwrap().tau, O2Elem::rot(t(1, 3)));
    let text = "# lagrange\ntau=rot 1/3 rho=rot 0 sigma=(123)\n\ntau=ref 0 rho=ref 0 sigma=(12) # h\n";
    let gens = SymmetryGroup::parse_generators(text).unwrap();
    assert_eq!(SymmetryGroup::generate(&gens, DEFAULT_CAP).unwrap().order(), 6);
    for bad in ["tau=rot 1/3 rho=rot 0", "tau=spin 1 rho=rot 0 sigma=()", "tau=rot 1/0 rho=rot 0 sigma=()", "x=1"] {
        assert!(matches!(GroupElement::parse(bad), Err(Error::Parse(_))), "{bad}");
    }
}

#[test]
fn closure_examples() {
    assert_eq!(SymmetryGroup::generate(&[], 4).unwrap().order(), 1);
    assert_eq!(named_group("lagrange").unwrap().order(), 6);
    assert_eq!(named_group("d12").unwrap().order(), 12);
    let irrational_like = GroupElement::new(O2Elem::rot(t(1, 97)), O2Elem::identity(), Perm3::identity());
    assert!(matches!(SymmetryGroup::generate(&[irrational_like], 64), Err(Error::ClosureOverflow { cap: 64 })));
    assert!(matches!(named_group("nope"), Err(Error::UnknownName(_))));
}

#[test]
fn catalog_orders_and_types() {
    let want = [
        ("trivial", 1, ActionType::Cyclic, vec![1, 1, 1]),
        ("line", 2, ActionType::Brake, vec![1, 1, 1]),
        ("choreo21", 2, ActionType::Cyclic, vec![2, 1]),
        ("isosceles", 2, ActionType::Brake, vec![2, 1]),
        ("hill", 4, ActionType::Dihedral, vec![2, 1]),
        ("choreo3", 3, ActionType::Cyclic, vec![3]),
        ("lagrange", 6, ActionType::Dihedral, vec![3]),
        ("c6", 6, ActionType::Cyclic, vec![3]),
        ("d6", 6, ActionType::Dihedral, vec![3]),
        ("d12", 12, ActionType::Dihedral, vec![3]),
    ];
    for (name, order, ty, dec) in want {
        let g = named_group(name).unwrap();
        assert_eq!(g.order(), order, "{name}");
        assert_eq!(g.action_type(), ty, "{name}");
        let lens: Vec<usize> = g.transitive_decomposition().iter().map(|o| o.len()).collect();
        assert_eq!(lens, dec, "{name}");
        assert_eq!(g.core().order(), 1, "{name}");
        let h = g.validate_hypotheses();
        assert!(h.hh1_joint_kernel_trivial && h.hh3_no_redundant, "{name}");
    }
}

#[test]
fn catalog_group_invariants() {
    for name in NAMES {
        let g = named_group(name).unwrap();
        let els = g.elements();
        assert!(els.iter().any(|e| e.is_identity()));
        for a in els {
            assert!(g.contains(&a.inverse()));
            for b in els {
                let ab = a.compose(b);
                assert!(g.contains(&ab), "{name}");
                assert_eq!(ab.tau.det(), a.tau.det() * b.tau.det());
                assert_eq!(ab.rho.det(), a.rho.det() * b.rho.det());
                assert!(close(mat(&ab.tau), matmul(mat(&a.tau), mat(&b.tau))));
                assert!(close(mat(&ab.rho), matmul(mat(&a.rho), mat(&b.rho))));
            }
        }
        for o in g.transitive_decomposition() {
            assert_eq!(g.order() % o.len(), 0, "{name}");
        }
        let fd = g.fundamental_domain();
        assert_eq!(fd.length(), t(1, g.quotient_order() as i64), "{name}");
    }
}

#[test]
fn hill_contains_its_subgroups() {
    let hill = named_group("hill").unwrap();
    for sub in ["line", "choreo21"] {
        assert!(named_group(sub).unwrap().elements().iter().all(|e| hill.contains(e)), "{sub}");
    }
    // isosceles up to a quarter-period time shift
    let s = O2Elem::rot(t(1, 4));
    for e in named_group("isosceles").unwrap().elements() {
        let moved = GroupElement::new(s.compose(&e.tau).compose(&s.inverse()), e.rho, e.sigma);
        assert!(hill.contains(&moved));
    }
    let c6 = named_group("c6").unwrap();
    let gen = c6.generators()[0];
    assert_eq!(gen.tau, O2Elem::rot(t(1, 6)));
    assert!(gen.rho.is_reflection());
    assert_eq!(gen.sigma, Perm3::parse("(123)").unwrap());
}

#[test]
fn core_of_product_example() {
    let g = named_group("example_bound2").unwrap();
    assert_eq!(g.order(), 12);
    assert_eq!(g.core().order(), 6);
    assert_eq!(named_group("trivial").unwrap().core().order(), 1);
}

#[test]
fn isotropy_and_domains() {
    let line = named_group("line").unwrap();
    assert_eq!(line.time_isotropy(t(0, 1)).order(), 2);
    let fd = line.fundamental_domain();
    assert_eq!((fd.t0, fd.t1), (t(0, 1), t(1, 2)));
    assert!(fd.h0.same_elements(&line) && fd.h1.same_elements(&line));

    let c6 = named_group("c6").unwrap();
    for k in 0..12 {
        assert_eq!(c6.time_isotropy(t(k, 12)).order(), 1);
    }

    let d12 = named_group("d12").unwrap();
    let h = d12.time_isotropy(t(0, 1));
    assert_eq!(h.order(), 2);
    let oracle: Vec<_> = d12.elements().iter().filter(|e| e.tau.apply_time(t(0, 1)) == t(0, 1)).collect();
    assert_eq!(oracle.len(), 2);
    assert!(oracle.iter().all(|e| h.contains(e)));

    let d6 = named_group("d6").unwrap();
    let fd = d6.fundamental_domain();
    assert_eq!(fd.length(), t(1, 6));
    assert_eq!(fd.h0.order(), 2);
    assert_eq!(fd.h1.order(), 2);
    assert!(!fd.h0.same_elements(&fd.h1));

    let fd = SymmetryGroup::trivial().fundamental_domain();
    assert_eq!((fd.t0, fd.t1, fd.h0.order(), fd.h1.order()), (t(0, 1), t(1, 1), 1, 1));
}

#[test]
fn config_action_examples() {
    let x = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)];
    assert_eq!(config_action(&GroupElement::identity(), &x), x);
    let half = GroupElement::new(O2Elem::identity(), O2Elem::rot(t(1, 2)), Perm3::identity());
    let y = config_action(&half, &x);
    assert!((y[0] - c(-1.0, 0.0)).norm() < 1e-15 && (y[1] - c(1.0, 0.0)).norm() < 1e-15);
    let swap = GroupElement::new(O2Elem::identity(), O2Elem::identity(), Perm3::parse("(12)").unwrap());
    let abc = [c(1.0, 2.0), c(3.0, 4.0), c(5.0, 6.0)];
    assert_eq!(config_action(&swap, &abc), [abc[1], abc[0], abc[2]]);
    // (g x)_{sigma i} = rho x_i
    let g = named_group("c6").unwrap().generators()[0];
    let gx = config_action(&g, &abc);
    for i in 0..3 {
        assert!((gx[g.sigma.apply(i)] - g.rho.apply(abc[i])).norm() < 1e-14);
    }
}

#[test]
fn fixed_config_spaces() {
    let m = Masses::unit();
    let iso = named_group("isosceles").unwrap();
    let core_iso = iso.filter(|_| true);
    let gen = GroupElement::new(O2Elem::identity(), O2Elem::refl(t(0, 1)), Perm3::parse("(12)").unwrap());
    let h = SymmetryGroup::generate(&[gen], DEFAULT_CAP).unwrap();
    assert_eq!(h.fixed_config_space(&m).unwrap().len(), 2);
    assert_eq!(SymmetryGroup::trivial().fixed_config_space(&m).unwrap().len(), 4);
    assert_eq!(core_iso.order(), 2);

    let swap = GroupElement::new(O2Elem::identity(), O2Elem::identity(), Perm3::parse("(12)").unwrap());
    let s = SymmetryGroup::generate(&[swap], DEFAULT_CAP).unwrap();
    let basis = s.fixed_config_space(&m).unwrap();
    assert!(!basis.is_empty());
    for b in &basis {
        assert!((b[0] - b[1]).norm() < 1e-12);
    }

    for name in NAMES {
        let g = named_group(name).unwrap();
        let ms = if g.transitive_decomposition().len() == 3 { Masses::new([1.0, 2.0, 3.0]).unwrap() } else { m };
        for b in g.core().fixed_config_space(&ms).unwrap() {
            for e in g.core().elements() {
                let y = config_action(e, &b);
                assert!((0..3).all(|i| (y[i] - b[i]).norm() < 1e-12), "{name}");
            }
        }
        for k in 0..12 {
            for b in g.time_isotropy(t(k, 12)).fixed_config_space(&ms).unwrap() {
                let com: Complex64 = (0..3).map(|i| b[i] * ms[i]).sum();
                assert!(com.norm() < 1e-12, "{name}");
            }
        }
    }
    let lag = named_group("lagrange").unwrap();
    assert!(matches!(lag.fixed_config_space(&Masses::new([1.0, 1.0, 2.0]).unwrap()), Err(Error::IncompatibleMasses)));
}

#[test]
fn hypotheses_report() {
    let red = GroupElement::new(O2Elem::rot(t(1, 2)), O2Elem::identity(), Perm3::identity());
    let g = SymmetryGroup::generate(&[red], DEFAULT_CAP).unwrap();
    assert!(!g.validate_hypotheses().hh3_no_redundant);
    let r = SymmetryGroup::trivial().validate_hypotheses();
    assert!(r.hh1_joint_kernel_trivial && r.hh2_spans_plane && r.hh3_no_redundant);
}

fn arb_o2() -> impl Strategy<Value = O2Elem> {
    (any::<bool>(), 0i64..60, prop::sample::select(vec![1i64, 2, 3, 4, 5, 6, 10, 12])).prop_map(|(refl, n, d)| {
        if refl {
            O2Elem::refl(Turn::new(n, d))
        } else {
            O2Elem::rot(Turn::new(n, d))
        }
    })
}

fn arb_element() -> impl Strategy<Value = GroupElement> {
    (arb_o2(), arb_o2(), prop::sample::select(vec!["()", "(12)", "(13)", "(23)", "(123)", "(132)"]))
        .prop_map(|(a, b, s)| GroupElement::new(a, b, Perm3::parse(s).unwrap()))
}

proptest! {
    #[test]
    fn prop_compose_associative_and_inverse(a in arb_element(), b in arb_element(), c3 in arb_element()) {
        prop_assert_eq!(a.compose(&b).compose(&c3), a.compose(&b.compose(&c3)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn prop_generated_groups_are_closed(a in arb_element(), b in arb_element()) {
        if let Ok(g) = SymmetryGroup::generate(&[a, b], 256) {
            let els = g.elements();
            for x in els {
                prop_assert!(g.contains(&x.inverse()));
                for y in els {
                    prop_assert!(g.contains(&x.compose(y)));
                }
            }
            prop_assert!(g.contains(&a) && g.contains(&b));
        }
    }

    #[test]
    fn prop_config_action_is_a_left_action(a in arb_element(), b in arb_element(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let x = [c(re, im), c(im, 1.0), c(-1.0, re)];
        let lhs = config_action(&a.compose(&b), &x);
        let rhs = config_action(&a, &config_action(&b, &x));
        for i in 0..3 {
            prop_assert!((lhs[i] - rhs[i]).norm() < 1e-12);
        }
    }
}
