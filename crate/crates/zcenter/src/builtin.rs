//! Shipped example categories in the standard unitary gauge.

use crate::algebra::Algebra;
use crate::category::Category;
use crate::data::{AlgebraData, CategoryData, FEntry, REntry};
use std::f64::consts::PI;

fn cis(t: f64) -> (f64, f64) {
    (t.cos(), t.sin())
}

/// Lists every admissible F entry of a multiplicity-free fusion ring, taking values from `value`
/// (which returns None for "identity").
fn f_entries(
    n: usize,
    fusion: &[(usize, usize, usize, usize)],
    value: impl Fn(usize, usize, usize, usize, usize, usize) -> Option<f64>,
) -> Vec<FEntry> {
    let nn = |a: usize, b: usize, c: usize| fusion.iter().any(|&(x, y, z, m)| (x, y, z) == (a, b, c) && m > 0);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let es: Vec<usize> = (0..n).filter(|&e| nn(a, b, e) && nn(e, c, d)).collect();
                    let fs: Vec<usize> = (0..n).filter(|&f| nn(b, c, f) && nn(a, f, d)).collect();
                    for &e in &es {
                        for &f in &fs {
                            let v = value(a, b, c, d, e, f).unwrap_or(if es.len() == 1 { 1.0 } else { (e == f) as u8 as f64 });
                            out.push((a, b, c, d, e, f, 0, 0, 0, 0, v, 0.0));
                        }
                    }
                }
            }
        }
    }
    out
}

fn r_entries(fusion: &[(usize, usize, usize, usize)], value: impl Fn(usize, usize, usize) -> (f64, f64)) -> Vec<REntry> {
    fusion
        .iter()
        .map(|&(a, b, c, _)| {
            let (re, im) = value(a, b, c);
            (a, b, c, 0, 0, re, im)
        })
        .collect()
}

fn group_fusion(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut f = Vec::new();
    for a in 0..n {
        for b in 0..n {
            f.push((a, b, (a + b) % n, 1));
        }
    }
    f
}

pub fn vec_data() -> CategoryData {
    let fusion = group_fusion(1);
    CategoryData {
        name: Some("Vec".into()),
        simples: vec!["1".into()],
        unit: 0,
        dual: vec![0],
        f: f_entries(1, &fusion, |_, _, _, _, _, _| None),
        r: Some(r_entries(&fusion, |_, _, _| (1.0, 0.0))),
        fusion,
        pivotal: None,
        tolerance: 1e-9,
    }
}

pub fn vecz2_data() -> CategoryData {
    let fusion = group_fusion(2);
    CategoryData {
        name: Some("Vec_Z2".into()),
        simples: vec!["1".into(), "g".into()],
        unit: 0,
        dual: vec![0, 1],
        f: f_entries(2, &fusion, |_, _, _, _, _, _| None),
        r: Some(r_entries(&fusion, |_, _, _| (1.0, 0.0))),
        fusion,
        pivotal: None,
        tolerance: 1e-9,
    }
}

pub fn fib_data() -> CategoryData {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fusion = vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)];
    let f = f_entries(2, &fusion, |a, b, c, d, e, f| {
        if (a, b, c, d) == (1, 1, 1, 1) {
            Some(match (e, f) {
                (0, 0) => 1.0 / phi,
                (0, 1) | (1, 0) => phi.powf(-0.5),
                _ => -1.0 / phi,
            })
        } else {
            None
        }
    });
    let r = r_entries(&fusion, |a, b, c| match (a, b, c) {
        (1, 1, 0) => cis(-4.0 * PI / 5.0),
        (1, 1, 1) => cis(3.0 * PI / 5.0),
        _ => (1.0, 0.0),
    });
    CategoryData {
        name: Some("Fib".into()),
        simples: vec!["1".into(), "tau".into()],
        unit: 0,
        dual: vec![0, 1],
        fusion,
        f,
        r: Some(r),
        pivotal: None,
        tolerance: 1e-9,
    }
}

/// Fib with the sign of the (τ,τ) entry of F^{τττ}_τ flipped.
pub fn fib_corrupted_data() -> CategoryData {
    let mut d = fib_data();
    for t in d.f.iter_mut() {
        if (t.0, t.1, t.2, t.3, t.4, t.5) == (1, 1, 1, 1, 1, 1) {
            t.10 = -t.10;
        }
    }
    d.name = Some("Fib (corrupted)".into());
    d.r = None;
    d
}

pub fn ising_data() -> CategoryData {
    let (one, s, p) = (0usize, 1usize, 2usize);
    let fusion = vec![
        (one, one, one, 1),
        (one, s, s, 1),
        (one, p, p, 1),
        (s, one, s, 1),
        (s, s, one, 1),
        (s, s, p, 1),
        (s, p, s, 1),
        (p, one, p, 1),
        (p, s, s, 1),
        (p, p, one, 1),
    ];
    let h = 0.5f64.sqrt();
    let f = f_entries(3, &fusion, |a, b, c, d, e, f| match (a, b, c, d) {
        (1, 1, 1, 1) => Some(if e == p && f == p { -h } else { h }),
        (1, 2, 1, 2) | (2, 1, 2, 1) => Some(-1.0),
        _ => None,
    });
    let r = r_entries(&fusion, |a, b, c| match (a, b, c) {
        (1, 1, 0) => cis(-PI / 8.0),
        (1, 1, 2) => cis(3.0 * PI / 8.0),
        (1, 2, 1) | (2, 1, 1) => (0.0, -1.0),
        (2, 2, 0) => (-1.0, 0.0),
        _ => (1.0, 0.0),
    });
    CategoryData {
        name: Some("Ising".into()),
        simples: vec!["1".into(), "sigma".into(), "psi".into()],
        unit: 0,
        dual: vec![0, 1, 2],
        fusion,
        f,
        r: Some(r),
        pivotal: None,
        tolerance: 1e-9,
    }
}

pub fn vec_cat() -> Category {
    Category::from_data(&vec_data()).expect("Vec")
}

pub fn vecz2() -> Category {
    Category::from_data(&vecz2_data()).expect("Vec_Z2")
}

pub fn fib() -> Category {
    Category::from_data(&fib_data()).expect("Fib")
}

pub fn ising() -> Category {
    Category::from_data(&ising_data()).expect("Ising")
}

pub fn by_name(name: &str) -> Option<CategoryData> {
    match name {
        "vec" => Some(vec_data()),
        "vecz2" => Some(vecz2_data()),
        "fib" => Some(fib_data()),
        "ising" => Some(ising_data()),
        "fib_corrupted" => Some(fib_corrupted_data()),
        _ => None,
    }
}

/// The trivial algebra 1 over the category stored in `category`.
pub fn trivial_algebra_data(category: &str, rank: usize, unit: usize) -> AlgebraData {
    let mut carrier = vec![0; rank];
    carrier[unit] = 1;
    AlgebraData {
        name: Some("1".into()),
        category: category.into(),
        carrier,
        unit: vec![(0, 1.0, 0.0)],
        mult: vec![(unit, 0, unit, 0, unit, 0, 0, 1.0, 0.0)],
    }
}

/// 1⊕x with x⊗x → 1 of coefficient `square`, for an invertible self-dual simple x.
fn two_element_data(name: &str, category: &str, rank: usize, x: usize, square: f64) -> AlgebraData {
    let mut carrier = vec![0; rank];
    carrier[0] = 1;
    carrier[x] = 1;
    AlgebraData {
        name: Some(name.into()),
        category: category.into(),
        carrier,
        unit: vec![(0, 1.0, 0.0)],
        mult: vec![
            (0, 0, 0, 0, 0, 0, 0, 1.0, 0.0),
            (0, 0, x, 0, x, 0, 0, 1.0, 0.0),
            (x, 0, 0, 0, x, 0, 0, 1.0, 0.0),
            (x, 0, x, 0, 0, 0, 0, square, 0.0),
        ],
    }
}

pub fn z2_group_algebra_data() -> AlgebraData {
    two_element_data("1+g", "vecz2.json", 2, 1, 1.0)
}

/// 1⊕g with g⊗g → 1 switched off.
pub fn z2_broken_algebra_data() -> AlgebraData {
    two_element_data("1+g broken", "vecz2.json", 2, 1, 0.0)
}

pub fn ising_psi_algebra_data() -> AlgebraData {
    two_element_data("1+psi", "ising.json", 3, 2, 1.0)
}

pub fn z2_group_algebra(cat: &Category) -> Algebra {
    Algebra::from_data(cat, &z2_group_algebra_data()).expect("1+g")
}

pub fn ising_psi_algebra(cat: &Category) -> Algebra {
    Algebra::from_data(cat, &ising_psi_algebra_data()).expect("1+psi")
}
