use crate::category::Category;
use crate::data::AlgebraData;
use crate::halfbraid::CenterObject;
use crate::linalg::c;
use crate::obj::{DirectSum, Mor, Obj};
use crate::solve::{affine_solve, affine_solve_in, kernel};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgError {
    #[error("carrier length {0} does not match the category rank {1}")]
    Carrier(usize, usize),
    #[error("index out of range in {0}")]
    Index(String),
    #[error("algebra is not separable")]
    NotSeparable,
    #[error("{0}")]
    Other(String),
}

/// An algebra (A, u, m). When `beta` is present the algebra lives in the Drinfeld center and u, m
/// are required to intertwine half-braidings.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub carrier: Obj,
    pub unit: Mor,
    pub mult: Mor,
    pub beta: Option<Vec<Mor>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub associativity: f64,
    pub worst_triple: Option<(String, String, String)>,
    pub unitality: f64,
    pub unit_unique: bool,
    pub connected: bool,
    pub separable: bool,
    pub separability_residual: f64,
    pub simple: bool,
    pub center_compatible: Option<f64>,
    pub pass: bool,
}

impl Algebra {
    pub fn trivial(cat: &Category) -> Algebra {
        let one = cat.unit_obj();
        Algebra { name: "1".into(), unit: Mor::identity(&one), mult: Mor::identity(&one), carrier: one, beta: None }
    }

    pub fn from_data(cat: &Category, d: &AlgebraData) -> Result<Algebra, AlgError> {
        let n = cat.rank();
        if d.carrier.len() != n {
            return Err(AlgError::Carrier(d.carrier.len(), n));
        }
        let a = Obj::new(d.carrier.clone());
        let aa = cat.layout(&a, &a);
        let mut mult = Mor::zero(&aa.out, &a);
        for &(x, i, y, j, z, k, mu, re, im) in &d.mult {
            if x >= n || y >= n || z >= n || i >= a.mult[x] || j >= a.mult[y] || k >= a.mult[z] || mu >= cat.n(x, y, z) {
                return Err(AlgError::Index(format!("mult [{},{},{},{},{},{},{}]", x, i, y, j, z, k, mu)));
            }
            mult.blocks[z][(k, aa.idx(cat, z, x, i, y, j, mu))] = c(re, im);
        }
        let mut unit = Mor::zero(&cat.unit_obj(), &a);
        for &(k, re, im) in &d.unit {
            if k >= a.mult[cat.unit] {
                return Err(AlgError::Index(format!("unit [{}]", k)));
            }
            unit.blocks[cat.unit][(k, 0)] = c(re, im);
        }
        Ok(Algebra { name: d.name.clone().unwrap_or_else(|| "A".into()), carrier: a, unit, mult, beta: None })
    }

    pub fn to_data(&self, cat: &Category, category_path: &str) -> AlgebraData {
        let a = &self.carrier;
        let aa = cat.layout(a, a).decode(cat);
        let mut mult = Vec::new();
        for z in 0..cat.rank() {
            let b = &self.mult.blocks[z];
            for k in 0..b.nrows() {
                for col in 0..b.ncols() {
                    let v = b[(k, col)];
                    if v.norm() > 1e-14 {
                        let (x, i, y, j, mu) = aa[z][col];
                        mult.push((x, i, y, j, z, k, mu, v.re, v.im));
                    }
                }
            }
        }
        mult.sort_by(|p, q| (p.0, p.1, p.2, p.3, p.4, p.5, p.6).cmp(&(q.0, q.1, q.2, q.3, q.4, q.5, q.6)));
        let unit = (0..a.mult[cat.unit])
            .filter_map(|k| {
                let v = self.unit.blocks[cat.unit][(k, 0)];
                (v.norm() > 1e-14).then_some((k, v.re, v.im))
            })
            .collect();
        AlgebraData { name: Some(self.name.clone()), category: category_path.into(), carrier: a.mult.clone(), unit, mult }
    }

    pub fn center_object(&self) -> Option<CenterObject> {
        self.beta.as_ref().map(|b| CenterObject { carrier: self.carrier.clone(), beta: b.clone() })
    }

    pub fn with_center(mut self, z: &CenterObject) -> Algebra {
        assert_eq!(z.carrier, self.carrier);
        self.beta = Some(z.beta.clone());
        self
    }

    pub fn in_center(&self) -> bool {
        self.beta.is_some()
    }
}

impl Category {
    pub fn assoc_residual(&self, a: &Algebra) -> f64 {
        let x = &a.carrier;
        let lhs = a.mult.compose(&self.tensor_id(&a.mult, x));
        let rhs = a.mult.compose(&self.id_tensor(x, &a.mult)).compose(&self.assoc(x, x, x));
        lhs.dist(&rhs)
    }

    pub fn unit_residual_alg(&self, a: &Algebra) -> f64 {
        let x = &a.carrier;
        let id = Mor::identity(x);
        let l = a.mult.compose(&self.tensor_id(&a.unit, x));
        let r = a.mult.compose(&self.id_tensor(x, &a.unit));
        l.dist(&id).max(r.dist(&id))
    }

    /// Associativity restricted to simple summands; the worst one.
    fn worst_assoc_triple(&self, a: &Algebra) -> Option<(String, String, String, f64)> {
        let x = &a.carrier;
        let mut copies = Vec::new();
        for s in x.support() {
            for k in 0..x.mult[s] {
                copies.push((s, k));
            }
        }
        let inj = |s: usize, k: usize| {
            let mut m = Mor::zero(&self.simple(s), x);
            m.blocks[s][(k, 0)] = c(1.0, 0.0);
            m
        };
        let mut worst: Option<(String, String, String, f64)> = None;
        for &(p, i) in &copies {
            for &(q, j) in &copies {
                for &(r, k) in &copies {
                    let (ip, iq, ir) = (inj(p, i), inj(q, j), inj(r, k));
                    let pq = self.tensor_mor(&ip, &iq);
                    let lhs = a.mult.compose(&self.tensor_id(&a.mult, x)).compose(&self.tensor_mor(&pq, &ir));
                    let qr = self.tensor_mor(&iq, &ir);
                    let (sp, sq, sr) = (self.simple(p), self.simple(q), self.simple(r));
                    let rhs = a.mult.compose(&self.id_tensor(x, &a.mult)).compose(&self.tensor_mor(&ip, &qr)).compose(&self.assoc(&sp, &sq, &sr));
                    let res = lhs.dist(&rhs);
                    if worst.as_ref().map(|w| res > w.3).unwrap_or(true) {
                        worst = Some((self.names[p].clone(), self.names[q].clone(), self.names[r].clone(), res));
                    }
                }
            }
        }
        worst
    }

    /// Left and right regular actions on A⊗A, as used by bimodule maps A → A⊗A.
    pub fn aa_actions(&self, a: &Algebra) -> (Mor, Mor) {
        let x = &a.carrier;
        let lam = self.tensor_id(&a.mult, x).compose(&self.assoc_inv(x, x, x));
        let rho = self.id_tensor(x, &a.mult).compose(&self.assoc(x, x, x));
        (lam, rho)
    }

    /// Minimum-norm e: A → A⊗A with m∘e = id and e an A-A-bimodule map, with its residual.
    /// For an algebra in the center, e is also required to intertwine half-braidings.
    pub fn separability_witness(&self, a: &Algebra) -> (Mor, f64) {
        let x = &a.carrier;
        let xx = self.tensor(x, x);
        let (lam, rho) = self.aa_actions(a);
        let f = |e: &Mor| {
            let em = e.compose(&a.mult);
            vec![a.mult.compose(e), &lam.compose(&self.id_tensor(x, e)) - &em, &rho.compose(&self.tensor_id(e, x)) - &em]
        };
        let target = [Mor::identity(x), Mor::zero(&xx, &xx), Mor::zero(&xx, &xx)];
        match a.center_object() {
            Some(z) => {
                let basis = self.center_hom(&z, &self.center_tensor(&z, &z));
                affine_solve_in(&basis, x, &xx, f, &target)
            }
            None => affine_solve(x, &xx, f, &target),
        }
    }

    /// Units compatible with the multiplication: returns (dimension of the homogeneous solution space).
    pub fn unit_freedom(&self, a: &Algebra) -> usize {
        let x = &a.carrier;
        kernel(&self.unit_obj(), x, |v| vec![a.mult.compose(&self.tensor_id(v, x)), a.mult.compose(&self.id_tensor(x, v))]).len()
    }

    /// Residual of u and m intertwining half-braidings, for algebras in the center.
    pub fn center_compat_residual(&self, a: &Algebra) -> Option<f64> {
        let z = a.center_object()?;
        let one = CenterObject::unit(self);
        let zz = self.center_tensor(&z, &z);
        let r1 = self.is_center_morphism(&one, &z, &a.unit);
        let r2 = self.is_center_morphism(&zz, &z, &a.mult);
        Some(r1.max(r2))
    }

    pub fn check_algebra(&self, a: &Algebra) -> AlgebraReport {
        let tol = self.tol;
        let associativity = self.assoc_residual(a);
        let worst_triple = if associativity >= tol { self.worst_assoc_triple(a).map(|(p, q, r, _)| (p, q, r)) } else { None };
        let unitality = self.unit_residual_alg(a);
        let unit_unique = self.unit_freedom(a) == 0;
        let connected = a.carrier.mult[self.unit] == 1;
        let (_, separability_residual) = self.separability_witness(a);
        let separable = separability_residual < tol.max(1e-9);
        let simple = if associativity < tol && unitality < tol {
            let bim = crate::module::Module::regular_bimodule(self, a);
            crate::module::hom_mod(self, &bim, &bim).len() == 1
        } else {
            false
        };
        let center_compatible = self.center_compat_residual(a);
        let pass = associativity < tol && unitality < tol && unit_unique && separable && center_compatible.map(|r| r < tol).unwrap_or(true);
        AlgebraReport {
            associativity,
            worst_triple,
            unitality,
            unit_unique,
            connected,
            separable,
            separability_residual,
            simple,
            center_compatible,
            pass,
        }
    }

    /// A ⊕ B with componentwise structure.
    pub fn direct_sum_algebra(&self, a: &Algebra, b: &Algebra) -> Algebra {
        let ds = DirectSum::new(&[a.carrier.clone(), b.carrier.clone()], self.rank());
        let mut unit = Mor::zero(&self.unit_obj(), &ds.obj);
        let mut mult = Mor::zero(&self.tensor(&ds.obj, &ds.obj), &ds.obj);
        for (k, alg) in [a, b].iter().enumerate() {
            unit = &unit + &ds.inj[k].compose(&alg.unit);
            let pp = self.tensor_mor(&ds.proj[k], &ds.proj[k]);
            mult = &mult + &ds.inj[k].compose(&alg.mult).compose(&pp);
        }
        let beta = match (a.center_object(), b.center_object()) {
            (Some(za), Some(zb)) => Some(self.center_sum(&za, &zb).beta),
            _ => None,
        };
        Algebra { name: format!("{}⊕{}", a.name, b.name), carrier: ds.obj, unit, mult, beta }
    }
}
