use crate::category::{CatError, Category};
use crate::data::CategoryData;

/// C ⊠ D: simples are pairs (a, b) at index a·|D| + b; all structure multiplies componentwise.
pub fn deligne_product(c: &Category, d: &Category) -> Result<Category, CatError> {
    let (n1, n2) = (c.rank(), d.rank());
    let pair = |a: usize, b: usize| a * n2 + b;
    let mut simples = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            simples.push(if n2 == 1 && d.names[0] == "1" {
                c.names[a].clone()
            } else if n1 == 1 && c.names[0] == "1" {
                d.names[b].clone()
            } else {
                format!("{}⊠{}", c.names[a], d.names[b])
            });
        }
    }
    let mut dual = vec![0; n1 * n2];
    for a in 0..n1 {
        for b in 0..n2 {
            dual[pair(a, b)] = pair(c.dual[a], d.dual[b]);
        }
    }
    let mut fusion = Vec::new();
    for a in 0..n1 * n2 {
        for b in 0..n1 * n2 {
            for e in 0..n1 * n2 {
                let m = c.n(a / n2, b / n2, e / n2) * d.n(a % n2, b % n2, e % n2);
                if m > 0 {
                    fusion.push((a, b, e, m));
                }
            }
        }
    }
    let mut f = Vec::new();
    for a1 in 0..n1 {
        for b1 in 0..n1 {
            for c1 in 0..n1 {
                for d1 in 0..n1 {
                    let Some(m1) = c.f_opt(a1, b1, c1, d1) else { continue };
                    let l1 = c.left_labels(a1, b1, c1, d1);
                    let r1 = c.right_labels(a1, b1, c1, d1);
                    for a2 in 0..n2 {
                        for b2 in 0..n2 {
                            for c2 in 0..n2 {
                                for d2 in 0..n2 {
                                    let Some(m2) = d.f_opt(a2, b2, c2, d2) else { continue };
                                    let l2 = d.left_labels(a2, b2, c2, d2);
                                    let r2 = d.right_labels(a2, b2, c2, d2);
                                    for (i1, &(e1, mu1, nu1)) in l1.iter().enumerate() {
                                        for (j1, &(f1, rho1, s1)) in r1.iter().enumerate() {
                                            for (i2, &(e2, mu2, nu2)) in l2.iter().enumerate() {
                                                for (j2, &(f2, rho2, s2)) in r2.iter().enumerate() {
                                                    let v = m1[(i1, j1)] * m2[(i2, j2)];
                                                    f.push((
                                                        pair(a1, a2),
                                                        pair(b1, b2),
                                                        pair(c1, c2),
                                                        pair(d1, d2),
                                                        pair(e1, e2),
                                                        pair(f1, f2),
                                                        mu1 * d.n(a2, b2, e2) + mu2,
                                                        nu1 * d.n(e2, c2, d2) + nu2,
                                                        rho1 * d.n(b2, c2, f2) + rho2,
                                                        s1 * d.n(a2, f2, d2) + s2,
                                                        v.re,
                                                        v.im,
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let r = if c.has_braiding() && d.has_braiding() {
        let mut r = Vec::new();
        for &(a, b, e, _) in &fusion {
            let (ma, mb) = (c.r(a / n2, b / n2, e / n2).unwrap(), d.r(a % n2, b % n2, e % n2).unwrap());
            for mu1 in 0..ma.nrows() {
                for nu1 in 0..ma.ncols() {
                    for mu2 in 0..mb.nrows() {
                        for nu2 in 0..mb.ncols() {
                            let v = ma[(mu1, nu1)] * mb[(mu2, nu2)];
                            r.push((a, b, e, mu1 * mb.nrows() + mu2, nu1 * mb.ncols() + nu2, v.re, v.im));
                        }
                    }
                }
            }
        }
        Some(r)
    } else {
        None
    };
    let mut pivotal = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            let p = c.pivotal(a) * d.pivotal(b);
            pivotal.push((p.re, p.im));
        }
    }
    let data = CategoryData {
        name: Some(format!("{}⊠{}", c.name, d.name)),
        simples,
        unit: pair(c.unit, d.unit),
        dual,
        fusion,
        f,
        r,
        pivotal: if pivotal.iter().all(|&p| p == (1.0, 0.0)) { None } else { Some(pivotal) },
        tolerance: c.tol.max(d.tol),
    };
    Category::from_data(&data)
}
