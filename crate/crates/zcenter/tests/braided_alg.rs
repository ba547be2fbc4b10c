mod common;

use common::{rng, toric_label};
use std::sync::Arc;
use zcenter::algebra::Algebra;
use zcenter::braided::{
    algebra_map_residual, automorphism_group, closedness_check, commutativity_residual, find_algebra_iso, ihom_unit_actions, morita_test,
    offdiagonal_summand, picard_group, pointed_center_morphism, tensor_algebras, tensor_over_commutative, AlgebraOverCommutative, Ambient,
};
use zcenter::builtin;
use zcenter::center::CenterCategory;
use zcenter::formula::{verify_exactalg, verify_main_formula};
use zcenter::fullcenter::{full_center, unit_center_algebra, FullCenter};
use zcenter::halfbraid::CenterObject;
use zcenter::ihom::{ihom_algebra, ihom_center, internal_hom};
use zcenter::module::{tensor_over, Action, Module};
use zcenter::obj::{Mor, Obj};
use zcenter::Category;

fn toric() -> (Category, CenterCategory, FullCenter) {
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let z1 = full_center(&cat, &z, &unit_center_algebra(&cat), None).unwrap();
    (cat, z, z1)
}

fn labels_of(cat: &Category, z: &CenterCategory, o: &CenterObject) -> Vec<&'static str> {
    let mut v = Vec::new();
    for (j, k) in z.multiplicities(cat, o).into_iter().enumerate() {
        for _ in 0..k {
            v.push(toric_label(cat, &z.simples[j].obj));
        }
    }
    v.sort();
    v
}

#[test]
fn tensor_of_commutative_algebras() {
    let (cat, z, z1) = toric();
    let t = tensor_algebras(&cat, &z1.algebra, &z1.algebra);
    assert_eq!(t.carrier, Obj::new(vec![4, 0]));
    assert_eq!(labels_of(&cat, &z, &t.center_object().unwrap()), vec!["1", "1", "e", "e"]);
    assert!(cat.assoc_residual(&t) < 1e-9);
    assert!(cat.unit_residual_alg(&t) < 1e-9);
    assert!(commutativity_residual(&cat, &t) < 1e-9);
}

#[test]
fn tensor_of_algebras_with_mutual_braiding_is_not_commutative() {
    // e and m braid by −1, so Z(1)⊗Z(1⊕g) is associative but not commutative.
    let (cat, z, z1) = toric();
    let zg = full_center(&cat, &z, &builtin::z2_group_algebra(&cat), None).unwrap();
    let t = tensor_algebras(&cat, &z1.algebra, &zg.algebra);
    assert!(cat.assoc_residual(&t) < 1e-9);
    assert!(commutativity_residual(&cat, &t) > 1e-3);
    assert!(commutativity_residual(&cat, &z1.algebra) < 1e-12);
    assert!(commutativity_residual(&cat, &zg.algebra) < 1e-12);
}

#[test]
fn relative_tensor_over_the_unit_full_center() {
    let (cat, z, z1) = toric();
    let za = Arc::new(z1.algebra.clone());
    let u = AlgebraOverCommutative::from_map(&cat, &z1.algebra, &za, &Mor::identity(&z1.algebra.carrier));
    assert!(u.residual(&cat) < 1e-9);
    let r = tensor_over_commutative(&cat, &u, &u).unwrap();
    assert_eq!(r.algebra.carrier, z1.algebra.carrier);
    assert!(r.projection_residual < 1e-9);
    let iso = find_algebra_iso(Ambient::Center(&cat, &z), &r.algebra, &z1.algebra, &mut rng(0));
    assert!(iso.iso.is_some());
}

#[test]
fn relative_tensor_of_magnetic_bimodules() {
    // [1,g]_Z = m⊕f with its two Z(1)-actions; over Z(1) it squares to 1⊕e.
    let (cat, z, z1) = toric();
    let one = Arc::new(Algebra::trivial(&cat));
    let m1 = Module::right_free(&cat, &cat.simple(0), &one);
    let mg = Module::right_free(&cat, &cat.simple(1), &one);
    let ih = ihom_center(&cat, &z, &m1, &mg);
    assert_eq!(labels_of(&cat, &z, &ih.obj), vec!["f", "m"]);
    let (l, r) = ihom_unit_actions(&cat, &z, &z1, &ih).unwrap();
    let za = Arc::new(z1.algebra.clone());
    let w = Module {
        name: "m⊕f".into(),
        carrier: ih.obj.carrier.clone(),
        left: Some(Action { alg: za.clone(), map: l }),
        right: Some(Action { alg: za, map: r }),
        beta: Some(ih.obj.beta.clone()),
    };
    let t = tensor_over(&cat, &w, &w).unwrap();
    assert_eq!(t.module.carrier, Obj::new(vec![2, 0]));
    assert_eq!(labels_of(&cat, &z, &t.module.center_object().unwrap()), vec!["1", "e"]);
}

#[test]
fn automorphisms() {
    let (cat, z, z1) = toric();
    let aut1 = automorphism_group(Ambient::Plain(&cat), &Algebra::trivial(&cat), &mut rng(1));
    assert_eq!(aut1.table.order(), 1);
    let aut = automorphism_group(Ambient::Center(&cat, &z), &z1.algebra, &mut rng(2));
    assert_eq!(aut.table.order(), 2);
    assert!(aut.exhaustive && aut.table.is_group());
    for f in &aut.maps {
        assert!(algebra_map_residual(&cat, &z1.algebra, &z1.algebra, f) < 1e-9);
        assert!(cat.is_center_morphism(&z1.center_object(), &z1.center_object(), f) < 1e-9);
    }
    // The nontrivial one squares to the identity and is not the identity.
    let k = 1 - aut.table.identity;
    let f = &aut.maps[k];
    assert!(f.compose(f).dist(&Mor::identity(&f.src)) < 1e-9);
    assert!(f.dist(&Mor::identity(&f.src)) > 1e-3);
}

#[test]
fn electric_and_magnetic_algebras_are_not_isomorphic() {
    let (cat, z, z1) = toric();
    let zg = full_center(&cat, &z, &builtin::z2_group_algebra(&cat), None).unwrap();
    let s = find_algebra_iso(Ambient::Center(&cat, &z), &z1.algebra, &zg.algebra, &mut rng(3));
    assert!(s.iso.is_none() && s.exhaustive);
    // In C itself both forget to algebras with carrier 2·1 resp. 1⊕g, so carriers already differ.
    assert_ne!(z1.algebra.carrier, zg.algebra.carrier);
}

#[test]
fn picard_groups_match_automorphisms_of_full_centers() {
    let cases: [(Category, usize); 3] = [(builtin::vecz2(), 2), (builtin::fib(), 1), (builtin::ising(), 2)];
    for (cat, order) in cases {
        let z = cat.drinfeld_center().unwrap();
        let p = picard_group(&cat, &z, &Algebra::trivial(&cat), &mut rng(4)).unwrap();
        assert_eq!(p.table.order(), order, "{}", cat.name);
        assert_eq!(p.aut.table.order(), order, "{}", cat.name);
        assert!(p.table.is_group() && p.bijective && p.homomorphism, "{}", cat.name);
        assert!(p.map_residual < 1e-8);
    }
    // Pic(1) in Vec_Z2 is carried by 1 and g.
    let cat = builtin::vecz2();
    let z = cat.drinfeld_center().unwrap();
    let p = picard_group(&cat, &z, &Algebra::trivial(&cat), &mut rng(5)).unwrap();
    let mut carriers: Vec<Obj> = p.bimodules.iter().map(|m| m.carrier.clone()).collect();
    carriers.sort_by_key(|o| o.mult.clone());
    assert_eq!(carriers, vec![cat.simple(1), cat.simple(0)]);
}

#[test]
fn morita_examples() {
    let (cat, z, _) = toric();
    let one = Algebra::trivial(&cat);
    let g = builtin::z2_group_algebra(&cat);
    let r = morita_test(&cat, &z, &one, &one, &mut rng(6)).unwrap();
    assert!(r.equivalent);
    let r = morita_test(&cat, &z, &one, &g, &mut rng(7)).unwrap();
    assert!(!r.equivalent && r.certified);

    let cat = builtin::ising();
    let z = cat.drinfeld_center().unwrap();
    let one_m = Module::right_free(&cat, &cat.simple(1), &Arc::new(Algebra::trivial(&cat)));
    let ss = ihom_algebra(&cat, &internal_hom(&cat, &one_m, &one_m)).unwrap();
    let r = morita_test(&cat, &z, &Algebra::trivial(&cat), &ss, &mut rng(8)).unwrap();
    assert!(r.equivalent);
    let w = r.witness.unwrap();
    assert!(algebra_map_residual(&cat, &r.za.algebra, &r.zb.algebra, &w) < 1e-8);
    assert!(w.inverse().is_some());
}

#[test]
fn morita_is_an_equivalence_relation() {
    for (cat, algs) in [
        (builtin::vecz2(), vec![Algebra::trivial(&builtin::vecz2()), builtin::z2_group_algebra(&builtin::vecz2())]),
        (builtin::ising(), vec![Algebra::trivial(&builtin::ising()), builtin::ising_psi_algebra(&builtin::ising())]),
    ] {
        let z = cat.drinfeld_center().unwrap();
        let mut algs = algs;
        algs.push(cat.direct_sum_algebra(&algs[0], &algs[0]));
        let n = algs.len();
        let mut eq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let r = morita_test(&cat, &z, &algs[i], &algs[j], &mut rng(9)).unwrap();
                assert!(r.certified);
                eq[i][j] = r.equivalent;
            }
        }
        for i in 0..n {
            assert!(eq[i][i]);
            for j in 0..n {
                assert_eq!(eq[i][j], eq[j][i]);
                for k in 0..n {
                    assert!(!(eq[i][j] && eq[j][k]) || eq[i][k]);
                }
            }
        }
    }
}

#[test]
fn pointed_center_of_g_twists_by_the_sign_automorphism() {
    let (cat, z, z1) = toric();
    let p = pointed_center_morphism(&cat, &z, &z1, &cat.simple(1)).unwrap();
    assert_eq!(p.algebra.carrier, z1.algebra.carrier);
    assert!(p.twist_residual < 1e-8 && p.action_residual < 1e-8);
    let id = Mor::identity(&z1.algebra.carrier);
    assert!(p.twist.dist(&id) > 1e-3);
    assert!(p.twist.compose(&p.twist).dist(&id) < 1e-8);
    let aut = automorphism_group(Ambient::Center(&cat, &z), &z1.algebra, &mut rng(10));
    assert!(aut.index_of(&p.twist).is_some());
    let p1 = pointed_center_morphism(&cat, &z, &z1, &cat.unit_obj()).unwrap();
    assert!(p1.twist.dist(&id) < 1e-8);
}

#[test]
fn closedness() {
    let (cat, z, z1) = toric();
    let zo = z1.center_object();
    let id = Mor::identity(&zo.carrier);
    let r = closedness_check(&cat, &z, &z1.algebra, &zo, &id, &zo, &id);
    assert!(r.closed, "{:?}", r);

    let p = pointed_center_morphism(&cat, &z, &z1, &cat.simple(1)).unwrap();
    let (lu, ru) = p.unit_maps(&cat);
    let r = closedness_check(&cat, &z, &p.algebra, &zo, &lu, &zo, &ru);
    assert!(r.closed, "{:?}", r);

    // One-sided: only Z(1)⊠1 maps in, which is too small.
    let one = CenterObject::unit(&cat);
    let r = closedness_check(&cat, &z, &z1.algebra, &zo, &id, &one, &z1.algebra.unit);
    assert!(!r.closed);
}

#[test]
fn offdiagonal_ihoms_are_summands() {
    for cat in [builtin::vecz2(), builtin::ising()] {
        let z = cat.drinfeld_center().unwrap();
        for a in 0..cat.rank() {
            for b in 0..cat.rank() {
                assert!(offdiagonal_summand(&cat, &z, &cat.simple(a), &cat.simple(b)));
            }
        }
    }
}

#[test]
fn main_formula_on_toric_code() {
    let (cat, z, _) = toric();
    let rep = verify_main_formula(&cat, &z, &[], &mut rng(11)).unwrap();
    assert_eq!(rep.cases.len(), 16);
    assert!(rep.pass);
    for c in &rep.cases {
        assert!(c.object_iso);
        assert_eq!(c.lhs_carrier, c.rhs_carrier);
    }
    assert_eq!(rep.cases.iter().filter(|c| c.algebra_iso == Some(true)).count(), 4);
}

#[test]
fn main_formula_on_fib_diagonal() {
    let cat = builtin::fib();
    let z = cat.drinfeld_center().unwrap();
    let rep = verify_main_formula(&cat, &z, &[(1, 1, 1, 1), (0, 1, 1, 0)], &mut rng(12)).unwrap();
    assert!(rep.pass, "{:?}", rep);
    assert_eq!(rep.cases[0].algebra_iso, Some(true));
}

#[test]
fn exactalg() {
    for cat in [builtin::vecz2(), builtin::fib(), builtin::ising()] {
        let z = cat.drinfeld_center().unwrap();
        let rep = verify_exactalg(&cat, &z, &Algebra::trivial(&cat)).unwrap();
        assert!(rep.pass, "{}: {:?}", cat.name, rep);
    }
    let cat = builtin::fib();
    let z = cat.drinfeld_center().unwrap();
    let rep = verify_exactalg(&cat, &z, &Algebra::trivial(&cat)).unwrap();
    let tau = rep.cases.iter().find(|c| c.x == "tau").unwrap();
    assert_eq!(tau.coequalizer, "0");
    let (cat, z, _) = toric();
    let rep = verify_exactalg(&cat, &z, &builtin::z2_group_algebra(&cat)).unwrap();
    assert!(rep.pass && rep.algebra_match);
    let g = rep.cases.iter().find(|c| c.x == "g").unwrap();
    assert_eq!(g.coequalizer, cat.fmt(&Obj::new(vec![1, 1])));
}
