use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use zcenter::algebra::Algebra;
use zcenter::builtin;
use zcenter::module::{
    dual_module, find_module_iso, hom_mod, module_residual, simple_bimodules, simple_modules, tensor_over, tensor_over_cokernel, Module, Side,
};
use zcenter::obj::{hom_dim, Obj};
use zcenter::Category;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn trivial_algebra_passes_every_check() {
    for cat in [builtin::vec_cat(), builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let a = Algebra::trivial(&cat);
        let r = cat.check_algebra(&a);
        assert!(r.pass && r.connected && r.simple && r.unit_unique, "{}: {:?}", cat.name, r);
        assert!(r.associativity < 1e-12 && r.unitality < 1e-12);
    }
}

#[test]
fn group_algebra_separability_witness_is_one_half() {
    let cat = builtin::vecz2();
    let a = builtin::z2_group_algebra(&cat);
    let r = cat.check_algebra(&a);
    assert!(r.pass && r.simple && r.connected, "{:?}", r);
    let (e, res) = cat.separability_witness(&a);
    assert!(res < 1e-12);
    // Solving a·1⊗1 + b·g⊗g central with a + b = 1 by hand gives a = b = 1/2, and likewise on g.
    let nonzero: Vec<f64> = e.to_vec().iter().map(|z| z.norm()).filter(|v| *v > 1e-12).collect();
    assert_eq!(nonzero.len(), 4);
    assert!(nonzero.iter().all(|v| (v - 0.5).abs() < 1e-12));
}

#[test]
fn broken_group_algebra_is_rejected() {
    let cat = builtin::vecz2();
    let a = Algebra::from_data(&cat, &builtin::z2_broken_algebra_data()).unwrap();
    let r = cat.check_algebra(&a);
    assert!(!r.pass);
    assert!(!r.separable);
}

#[test]
fn ising_psi_algebra_is_separable_and_simple() {
    let cat = builtin::ising();
    let r = cat.check_algebra(&builtin::ising_psi_algebra(&cat));
    assert!(r.pass && r.simple && r.connected, "{:?}", r);
}

#[test]
fn modules_over_trivial_algebra_are_the_simples() {
    for cat in [builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let a = Arc::new(Algebra::trivial(&cat));
        let ms = simple_modules(&cat, &a, Side::Right, &mut rng(0)).unwrap();
        let mut carriers: Vec<Obj> = ms.iter().map(|m| m.carrier.clone()).collect();
        carriers.sort_by_key(|o| o.mult.clone());
        let mut want = cat.simples();
        want.sort_by_key(|o| o.mult.clone());
        assert_eq!(carriers, want);
    }
}

#[test]
fn group_algebra_has_one_simple_module() {
    let cat = builtin::vecz2();
    let a = Arc::new(builtin::z2_group_algebra(&cat));
    for side in [Side::Left, Side::Right] {
        let ms = simple_modules(&cat, &a, side, &mut rng(1)).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].carrier, Obj::new(vec![1, 1]));
    }
}

/// Σ (fpdim M / fpdim A)² over simple right A-modules.
fn module_category_dim(cat: &Category, a: &Algebra, ms: &[Module]) -> f64 {
    let fa = cat.fpdim(&a.carrier);
    ms.iter().map(|m| (cat.fpdim(&m.carrier) / fa).powi(2)).sum()
}

#[test]
fn ising_psi_module_category_has_dimension_two() {
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let ms = simple_modules(&cat, &a, Side::Right, &mut rng(2)).unwrap();
    assert_eq!(ms.len(), 3);
    let want = cat.fp_global_dim() / cat.fpdim(&a.carrier);
    assert!((module_category_dim(&cat, &a, &ms) - want).abs() < 1e-9);
    assert!((want - 2.0).abs() < 1e-12);
    for m in &ms {
        assert!(module_residual(&cat, m) < 1e-9);
        assert_eq!(hom_mod(&cat, m, m).len(), 1);
    }
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            if i != j {
                assert!(hom_mod(&cat, &ms[i], &ms[j]).is_empty());
            }
        }
    }
}

#[test]
fn free_modules_decompose_completely() {
    // x⊗A = ⊕ M^{n_M} with n_M = dim Hom_A(M, x⊗A); FP dimensions must add up.
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let ms = simple_modules(&cat, &a, Side::Right, &mut rng(3)).unwrap();
    for x in cat.simples() {
        let free = Module::right_free(&cat, &x, &a);
        let total: f64 = ms.iter().map(|m| hom_mod(&cat, m, &free).len() as f64 * cat.fpdim(&m.carrier)).sum();
        assert!((total - cat.fpdim(&free.carrier)).abs() < 1e-9);
    }
}

#[test]
fn regular_bimodule_is_simple() {
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let bs = simple_bimodules(&cat, &a, &a, &mut rng(4)).unwrap();
    assert_eq!(bs[0].carrier, a.carrier);
    assert_eq!(hom_mod(&cat, &bs[0], &bs[0]).len(), 1);
    for b in &bs[1..] {
        assert!(hom_mod(&cat, &bs[0], b).is_empty());
    }
    // Bimodules are right modules over A^op⊗A, a category of dimension fpdim(C) again.
    let fa = cat.fpdim(&a.carrier);
    let dim: f64 = bs.iter().map(|b| (cat.fpdim(&b.carrier) / fa).powi(2)).sum();
    assert!((dim - cat.fp_global_dim()).abs() < 1e-9);
}

#[test]
fn relative_tensor_two_ways() {
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let bs = simple_bimodules(&cat, &a, &a, &mut rng(5)).unwrap();
    for x in &bs {
        for y in &bs {
            let t = tensor_over(&cat, x, y).unwrap();
            assert_eq!(t.module.carrier, tensor_over_cokernel(&cat, x, y));
            assert!(module_residual(&cat, &t.module) < 1e-9);
            assert!(t.projector.compose(&t.projector).dist(&t.projector) < 1e-9);
        }
    }
    // A is a unit for ⊗_A.
    for x in &bs {
        let t = tensor_over(&cat, &bs[0], x).unwrap();
        assert!(find_module_iso(&cat, &t.module, x, &mut rng(6)).is_some());
    }
}

#[test]
fn relative_tensor_is_associative_up_to_iso() {
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    let bs = simple_bimodules(&cat, &a, &a, &mut rng(7)).unwrap();
    let mut r = rng(8);
    for x in &bs {
        for y in &bs {
            for z in &bs {
                let xy = tensor_over(&cat, x, y).unwrap().module;
                let yz = tensor_over(&cat, y, z).unwrap().module;
                let l = tensor_over(&cat, &xy, z).unwrap().module;
                let rr = tensor_over(&cat, x, &yz).unwrap().module;
                assert_eq!(l.carrier, rr.carrier);
                assert_eq!(hom_mod(&cat, &l, &rr).len(), hom_mod(&cat, &l, &l).len());
                assert!(find_module_iso(&cat, &l, &rr, &mut r).is_some());
            }
        }
    }
}

#[test]
fn tensor_over_trivial_algebra_is_plain_tensor() {
    let cat = builtin::fib();
    let one = Arc::new(Algebra::trivial(&cat));
    let tau = cat.simple(1);
    let x = Module::right_free(&cat, &tau, &one);
    let y = Module::left_free(&cat, &one, &tau);
    let t = tensor_over(&cat, &x, &y).unwrap();
    assert_eq!(t.module.carrier, cat.tensor(&tau, &tau));
}

#[test]
fn fib_tau_is_self_dual_with_zigzag() {
    let cat = builtin::fib();
    assert!(cat.zigzag_residual() < 1e-10);
    let tau = cat.simple(1);
    assert_eq!(cat.dual_obj(&tau), tau);
    let one = Arc::new(Algebra::trivial(&cat));
    let m = Module::right_free(&cat, &tau, &one);
    let d = dual_module(&cat, &m);
    assert_eq!(d.carrier, tau);
    assert!(d.left.is_some() && d.right.is_none());
    assert!(module_residual(&cat, &d) < 1e-10);
}

#[test]
fn dual_of_a_module_over_psi_algebra_is_a_module() {
    let cat = builtin::ising();
    let a = Arc::new(builtin::ising_psi_algebra(&cat));
    for m in simple_modules(&cat, &a, Side::Right, &mut rng(9)).unwrap() {
        let d = dual_module(&cat, &m);
        assert!(module_residual(&cat, &d) < 1e-9);
        let dd = dual_module(&cat, &d);
        assert_eq!(dd.carrier, m.carrier);
        assert!(module_residual(&cat, &dd) < 1e-9);
    }
}

fn arb_ising_obj() -> impl Strategy<Value = Obj> {
    proptest::collection::vec(0usize..3, 3).prop_filter("nonzero", |v| v.iter().any(|&k| k > 0)).prop_map(Obj::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn free_forgetful_adjunction(x in arb_ising_obj(), pick in proptest::collection::vec(0usize..3, 1..3)) {
        // Hom_A(x⊗A, M) ≅ Hom(x, M) for any right module M.
        let cat = builtin::ising();
        let a = Arc::new(builtin::ising_psi_algebra(&cat));
        let ms = simple_modules(&cat, &a, Side::Right, &mut rng(10)).unwrap();
        let parts: Vec<Module> = pick.iter().map(|&k| ms[k % ms.len()].clone()).collect();
        let (m, _) = Module::sum(&cat, &parts);
        let free = Module::right_free(&cat, &x, &a);
        prop_assert_eq!(hom_mod(&cat, &free, &m).len(), hom_dim(&x, &m.carrier));
    }
}
