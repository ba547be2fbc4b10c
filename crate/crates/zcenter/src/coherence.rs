use crate::category::Category;
use crate::obj::Mor;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Residual>,
    pub pass: bool,
}

impl ValidationReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }
}

impl Category {
    /// Worst |path₁ − path₂| over all pentagons on simple 4-tuples.
    pub fn pentagon_residual(&self) -> f64 {
        let n = self.rank();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (x, y, z, w) = (self.simple(a), self.simple(b), self.simple(c), self.simple(d));
                        let xy = self.tensor(&x, &y);
                        let yz = self.tensor(&y, &z);
                        let zw = self.tensor(&z, &w);
                        let p1 = self.assoc(&x, &y, &zw).compose(&self.assoc(&xy, &z, &w));
                        let p2 = self
                            .id_tensor(&x, &self.assoc(&y, &z, &w))
                            .compose(&self.assoc(&x, &yz, &w))
                            .compose(&self.tensor_id(&self.assoc(&x, &y, &z), &w));
                        worst = worst.max(p1.dist(&p2));
                    }
                }
            }
        }
        worst
    }

    /// Deviation of F^{abc}_d from the identity whenever one of a, b, c is the unit.
    pub fn unit_residual(&self) -> f64 {
        let n = self.rank();
        let u = self.unit;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != u && b != u && c != u {
                        continue;
                    }
                    for d in 0..n {
                        if let Some(f) = self.f_opt(a, b, c, d) {
                            let id = crate::linalg::Mat::identity(f.nrows(), f.ncols());
                            worst = worst.max(crate::linalg::max_abs(&(f - id)));
                        }
                    }
                }
            }
        }
        worst
    }

    /// Both hexagons on all simple triples; None without R-symbols.
    pub fn hexagon_residuals(&self) -> Option<(f64, f64)> {
        if !self.has_braiding() {
            return None;
        }
        let n = self.rank();
        let (mut h1, mut h2) = (0.0f64, 0.0f64);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (self.simple(a), self.simple(b), self.simple(c));
                    let yz = self.tensor(&y, &z);
                    let xy = self.tensor(&x, &y);
                    let l = self.assoc(&y, &z, &x).compose(&self.braid(&x, &yz)).compose(&self.assoc(&x, &y, &z));
                    let r =
                        self.id_tensor(&y, &self.braid(&x, &z)).compose(&self.assoc(&y, &x, &z)).compose(&self.tensor_id(&self.braid(&x, &y), &z));
                    h1 = h1.max(l.dist(&r));
                    let l = self.assoc_inv(&z, &x, &y).compose(&self.braid(&xy, &z)).compose(&self.assoc_inv(&x, &y, &z));
                    let r = self
                        .tensor_id(&self.braid(&x, &z), &y)
                        .compose(&self.assoc_inv(&x, &z, &y))
                        .compose(&self.id_tensor(&x, &self.braid(&y, &z)));
                    h2 = h2.max(l.dist(&r));
                }
            }
        }
        Some((h1, h2))
    }

    /// Both zig-zag identities for every simple.
    pub fn zigzag_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.rank() {
            let x = self.simple(a);
            let xd = self.dual_obj(&x);
            let z1 = self.id_tensor(&x, &self.ev(&x)).compose(&self.assoc(&x, &xd, &x)).compose(&self.tensor_id(&self.coev(&x), &x));
            worst = worst.max(z1.dist(&Mor::identity(&x)));
            let z2 = self.tensor_id(&self.ev(&x), &xd).compose(&self.assoc_inv(&xd, &x, &xd)).compose(&self.id_tensor(&xd, &self.coev(&x)));
            worst = worst.max(z2.dist(&Mor::identity(&xd)));
        }
        worst
    }

    /// Smallest singular value over all F-matrices.
    pub fn f_min_singular(&self) -> f64 {
        let n = self.rank();
        let mut lo = f64::INFINITY;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if let Some(f) = self.f_opt(a, b, c, d) {
                            lo = lo.min(crate::linalg::singular_values(f).iter().cloned().fold(f64::INFINITY, f64::min));
                        }
                    }
                }
            }
        }
        lo
    }

    pub fn validate(&self) -> ValidationReport {
        let tol = self.tol;
        let mut checks = Vec::new();
        let mut push = |name: &str, residual: f64, pass: bool| checks.push(Residual { name: name.into(), residual, pass });
        let p = self.pentagon_residual();
        push("pentagon", p, p < tol);
        let u = self.unit_residual();
        push("unit", u, u < tol);
        let s = self.f_min_singular();
        push("f_min_singular", s, s > tol);
        let z = self.zigzag_residual();
        push("zigzag", z, z < tol);
        let sp = self.spherical_residual();
        push("spherical", sp, sp < 1e-6);
        if let Some((h1, h2)) = self.hexagon_residuals() {
            push("hexagon", h1, h1 < tol);
            push("hexagon_inverse", h2, h2 < tol);
        }
        let pass = checks.iter().all(|c| c.pass);
        ValidationReport { checks, pass }
    }
}
