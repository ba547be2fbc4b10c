mod common;

use common::{rng, toric_label, toric_labels};
use std::f64::consts::PI;
use std::sync::Arc;
use zcenter::braided::{find_algebra_iso, Ambient};
use zcenter::builtin;
use zcenter::fullcenter::{coequ_lambda_rho, full_center, full_center_checked, is_lagrangian, local_modules, unit_actions, unit_center_algebra};
use zcenter::halfbraid::CenterObject;
use zcenter::ihom::{alpha_induction, ihom_center_bimodule};
use zcenter::linalg::c;
use zcenter::module::{find_module_iso, hom_mod, module_residual, simple_bimodules, tensor_over};
use zcenter::obj::Obj;

#[test]
fn center_of_vec_is_trivial() {
    let cat = builtin::vec_cat();
    let z = cat.drinfeld_center().unwrap();
    assert_eq!(z.rank(), 1);
    assert!((z.dim_sum - 1.0).abs() < 1e-12);
}

#[test]
fn toric_code() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    assert_eq!(z.rank(), 4);
    let mut labels: Vec<&str> = z.simples.iter().map(|s| toric_label(&cat, &s.obj)).collect();
    labels.sort();
    assert_eq!(labels, vec!["1", "e", "f", "m"]);
    for s in &z.simples {
        assert!((s.qdim - 1.0).abs() < 1e-12);
        assert!(cat.beta_residual(&s.obj) < 1e-12);
    }
    let mut t: Vec<f64> = z.t.iter().map(|t| t.re).collect();
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(t.len(), 4);
    assert!((t[0] + 1.0).abs() < 1e-12 && t[1..].iter().all(|v| (v - 1.0).abs() < 1e-12));
    assert!(z.t.iter().all(|t| t.im.abs() < 1e-12));
    assert!(z.s_invertible());
}

#[test]
fn fibonacci_double_twists() {
    // Z(Fib) ≅ Fib ⊠ Fib^rev: twists 1, θ, θ̄, 1 with θ = e^{4πi/5}.
    let cat = builtin::fib();
    let z = cat.drinfeld_center().unwrap();
    assert_eq!(z.rank(), 4);
    let theta = c((4.0 * PI / 5.0).cos(), (4.0 * PI / 5.0).sin());
    let want = [c(1.0, 0.0), c(1.0, 0.0), theta, theta.conj()];
    let mut used = [false; 4];
    for t in &z.t {
        let k = (0..4).find(|&k| !used[k] && (want[k] - t).norm() < 1e-9).expect("unexpected twist");
        used[k] = true;
    }
}

#[test]
fn center_dimension_sum_is_global_dim_squared() {
    for cat in [builtin::vec_cat(), builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let z = cat.drinfeld_center().unwrap();
        let g = cat.global_dim();
        let sum: f64 = z.simples.iter().map(|s| s.qdim * s.qdim).sum();
        assert!((sum - g * g).abs() < 1e-6, "{}", cat.name);
        assert!((z.dim_sum - g * g).abs() < 1e-6);
    }
    let z = builtin::ising().drinfeld_center().unwrap();
    assert_eq!(z.rank(), 9);
    assert!((z.dim_sum - 16.0).abs() < 1e-9);
}

#[test]
fn center_hom_spaces_are_schur() {
    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    for (i, a) in z.simples.iter().enumerate() {
        for (j, b) in z.simples.iter().enumerate() {
            assert_eq!(cat.center_hom(&a.obj, &b.obj).len(), usize::from(i == j));
        }
    }
}

#[test]
fn full_center_of_unit_in_toric_code() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let z1 = full_center_checked(&cat, &z, &unit_center_algebra(&cat), &mut rng(0)).unwrap();
    assert_eq!(z1.algebra.carrier, Obj::new(vec![2, 0]));
    assert_eq!(toric_labels(&cat, &z, &z1.summands), vec!["1", "e"]);
    assert!((cat.fpdim(&z1.algebra.carrier) - 2.0).abs() < 1e-12);
    assert_eq!(z1.end_carrier.as_ref(), Some(&z1.algebra.carrier));
}

#[test]
fn full_center_of_group_algebra_is_magnetic() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let za = full_center_checked(&cat, &z, &builtin::z2_group_algebra(&cat), &mut rng(1)).unwrap();
    assert_eq!(za.algebra.carrier, Obj::new(vec![1, 1]));
    assert_eq!(toric_labels(&cat, &z, &za.summands), vec!["1", "m"]);
    let z1 = full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap();
    assert!(find_algebra_iso(Ambient::Center(&cat, &z), &za.algebra, &z1.algebra, &mut rng(2)).iso.is_none());
}

#[test]
fn full_center_corollaries_hold() {
    for cat in [builtin::vec_cat(), builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let z = cat.drinfeld_center().unwrap();
        let z1 = full_center_checked(&cat, &z, &unit_center_algebra(&cat), &mut rng(3)).unwrap();
        assert!((cat.fpdim(&z1.algebra.carrier) - cat.global_dim()).abs() < 1e-6, "{}", cat.name);
        for r in [z1.commutativity, z1.central, z1.homomorphism, z1.terminality] {
            assert!(r < 1e-8, "{}: {:?}", cat.name, r);
        }
        assert!(z1.unique);
        assert_eq!(z1.end_carrier.as_ref(), Some(&z1.algebra.carrier));
    }
    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    let z1 = full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap();
    assert_eq!(z1.algebra.carrier, Obj::new(vec![3, 0, 1]));
    let zp = full_center_checked(&cat, &z, &builtin::ising_psi_algebra(&cat), &mut rng(4)).unwrap();
    assert!(zp.commutativity < 1e-8 && zp.terminality < 1e-8);
}

#[test]
fn full_center_of_a_sum_is_the_sum_of_full_centers() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let one = unit_center_algebra(&cat);
    let g = builtin::z2_group_algebra(&cat);
    let sum = cat.direct_sum_algebra(&zcenter::algebra::Algebra::trivial(&cat), &g);
    let zs = full_center(&cat, &z, &sum, None).unwrap();
    let z1 = full_center(&cat, &z, &one, None).unwrap();
    let zg = full_center(&cat, &z, &g, None).unwrap();
    let expect = cat.direct_sum_algebra(&z1.algebra, &zg.algebra);
    assert_eq!(zs.algebra.carrier, Obj::new(vec![3, 1]));
    assert!(zs.commutativity < 1e-8);
    let iso = find_algebra_iso(Ambient::Center(&cat, &z), &zs.algebra, &expect, &mut rng(5));
    assert!(iso.iso.is_some());
}

#[test]
fn coequalizer_of_unit_actions() {
    for cat in [builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let z = cat.drinfeld_center().unwrap();
        let z1 = full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap();
        for x in 0..cat.rank() {
            let sx = cat.simple(x);
            let want = cat.unit_obj().scaled(sx.mult[cat.unit]);
            assert_eq!(coequ_lambda_rho(&cat, &z1, &sx), want, "{} {}", cat.name, x);
            let (l, r) = unit_actions(&cat, &z1, &sx);
            assert_eq!(l.dist(&r) < 1e-12, x == cat.unit, "{} {}", cat.name, x);
        }
    }
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let z1 = full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap();
    let x = Obj::new(vec![1, 1]);
    assert_eq!(coequ_lambda_rho(&cat, &z1, &x), cat.unit_obj());
    let (l, r) = unit_actions(&cat, &z1, &Obj::new(vec![3, 0]));
    assert!(l.dist(&r) < 1e-12);
    let (l, r) = unit_actions(&cat, &z1, &x);
    assert!(l.dist(&r) > 1e-3);
}

#[test]
fn local_modules_and_lagrangian_test() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let z1 = Arc::new(full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap().algebra);
    let lm = local_modules(&cat, &z, &z1, &mut rng(6)).unwrap();
    assert_eq!(lm.local.len(), 1);
    let rep = is_lagrangian(&cat, &z, &z1, &mut rng(7)).unwrap();
    assert!(rep.lagrangian && rep.connected && rep.separable);

    let triv = Arc::new(unit_center_algebra(&cat));
    let lm = local_modules(&cat, &z, &triv, &mut rng(8)).unwrap();
    assert_eq!(lm.all.len(), 4);
    assert_eq!(lm.local.len(), 4);
    assert!(!is_lagrangian(&cat, &z, &triv, &mut rng(9)).unwrap().lagrangian);

    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    let z1 = Arc::new(full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap().algebra);
    let rep = is_lagrangian(&cat, &z, &z1, &mut rng(10)).unwrap();
    assert!(rep.lagrangian);
    assert!((rep.fpdim - 4.0).abs() < 1e-9);
    assert!((rep.fpdim - z.dim_sum.sqrt()).abs() < 1e-9);
}

#[test]
fn alpha_induction_is_monoidal() {
    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let objs: Vec<CenterObject> = z.objects();
    let mut r = rng(11);
    for (i, p) in objs.iter().enumerate().step_by(2) {
        for q in objs.iter().skip(i % 3).step_by(3) {
            let (fp, fq) = (alpha_induction(&cat, p, &a), alpha_induction(&cat, q, &a));
            assert!(module_residual(&cat, &fp) < 1e-9);
            let lhs = tensor_over(&cat, &fp, &fq).unwrap().module;
            let rhs = alpha_induction(&cat, &cat.center_tensor(p, q), &a);
            assert_eq!(lhs.carrier, rhs.carrier);
            assert!(find_module_iso(&cat, &lhs, &rhs, &mut r).is_some());
        }
    }
}

#[test]
fn induction_is_left_adjoint_to_center_ihom() {
    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let ws = simple_bimodules(&cat, &a, &a, &mut rng(12)).unwrap();
    for w in &ws {
        let (rw, _) = ihom_center_bimodule(&cat, &z, w);
        for b in z.objects() {
            let left = cat.center_hom(&b, &rw).len();
            let right = hom_mod(&cat, &alpha_induction(&cat, &b, &a), w).len();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn center_ihom_of_regular_bimodule_is_full_center() {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let a = builtin::z2_group_algebra(&cat);
    let arc = Arc::new(a.clone());
    let reg = simple_bimodules(&cat, &arc, &arc, &mut rng(13)).unwrap().remove(0);
    let (rw, summands) = ihom_center_bimodule(&cat, &z, &reg);
    let za = full_center(&cat, &z, &a, None).unwrap();
    assert_eq!(rw.carrier, za.algebra.carrier);
    assert_eq!(toric_labels(&cat, &z, &summands), toric_labels(&cat, &z, &za.summands));
}
