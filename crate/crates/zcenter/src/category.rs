use crate::data::CategoryData;
use crate::linalg::{c, Mat, C64};
use crate::obj::Obj;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatError {
    #[error("no simples")]
    Empty,
    #[error("index {0} out of range in {1}")]
    Index(usize, String),
    #[error("dual is not an involution at {0}")]
    DualNotInvolution(usize),
    #[error("unit law fails: {0}")]
    UnitLaw(String),
    #[error("duality law fails: N_{{{0},{1}}}^1 = {2}")]
    DualityLaw(usize, usize, usize),
    #[error("fusion ring is not associative at ({0},{1},{2},{3})")]
    FusionAssoc(usize, usize, usize, usize),
    #[error("duplicate entry {0}")]
    Duplicate(String),
    #[error("F entry for inadmissible tuple {0}")]
    Inadmissible(String),
    #[error("missing F entry {0}")]
    MissingF(String),
    #[error("missing R entry {0}")]
    MissingR(String),
    #[error("F^{{{0},{1},{2}}}_{3} is singular")]
    Singular(usize, usize, usize, usize),
    #[error("tolerance must be positive")]
    Tolerance,
}

/// Label of a basis vector of Hom(d, (a⊗b)⊗c) or Hom(d, a⊗(b⊗c)): (intermediate, μ, ν).
pub type TreeLabel = (usize, usize, usize);

/// A validated skeletal fusion category.
#[derive(Clone, Debug)]
pub struct Category {
    pub name: String,
    pub names: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub tol: f64,
    n: usize,
    fusion: Vec<usize>,
    fmat: Vec<Option<Mat>>,
    finv: Vec<Option<Mat>>,
    rmat: Option<Vec<Mat>>,
    pivotal: Vec<C64>,
    kappa: Vec<C64>,
    pub(crate) fp: Vec<f64>,
    data: CategoryData,
}

impl Category {
    pub fn from_data(data: &CategoryData) -> Result<Category, CatError> {
        let n = data.simples.len();
        if n == 0 {
            return Err(CatError::Empty);
        }
        if !(data.tolerance > 0.0) {
            return Err(CatError::Tolerance);
        }
        let chk = |i: usize, what: &str| if i < n { Ok(()) } else { Err(CatError::Index(i, what.to_string())) };
        chk(data.unit, "unit")?;
        if data.dual.len() != n {
            return Err(CatError::Index(data.dual.len(), "dual (length)".into()));
        }
        for (a, &d) in data.dual.iter().enumerate() {
            chk(d, "dual")?;
            if data.dual[d] != a {
                return Err(CatError::DualNotInvolution(a));
            }
        }
        let mut fusion = vec![0usize; n * n * n];
        for &(a, b, cc, m) in &data.fusion {
            for i in [a, b, cc] {
                chk(i, "fusion")?;
            }
            let k = (a * n + b) * n + cc;
            if fusion[k] != 0 {
                return Err(CatError::Duplicate(format!("fusion [{},{},{}]", a, b, cc)));
            }
            fusion[k] = m;
        }
        let nn = |a: usize, b: usize, cc: usize| fusion[(a * n + b) * n + cc];
        let u = data.unit;
        for a in 0..n {
            for b in 0..n {
                let d = (a == b) as usize;
                if nn(u, a, b) != d || nn(a, u, b) != d {
                    return Err(CatError::UnitLaw(format!("{} ⊗ unit", data.simples[a])));
                }
                let want = (b == data.dual[a]) as usize;
                if nn(a, b, u) != want {
                    return Err(CatError::DualityLaw(a, b, nn(a, b, u)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let l: usize = (0..n).map(|e| nn(a, b, e) * nn(e, cc, d)).sum();
                        let r: usize = (0..n).map(|f| nn(b, cc, f) * nn(a, f, d)).sum();
                        if l != r {
                            return Err(CatError::FusionAssoc(a, b, cc, d));
                        }
                    }
                }
            }
        }
        let mut cat = Category {
            name: data.name.clone().unwrap_or_else(|| "unnamed".into()),
            names: data.simples.clone(),
            unit: u,
            dual: data.dual.clone(),
            tol: data.tolerance,
            n,
            fusion,
            fmat: vec![None; n * n * n * n],
            finv: vec![None; n * n * n * n],
            rmat: None,
            pivotal: vec![c(1.0, 0.0); n],
            kappa: vec![c(1.0, 0.0); n],
            fp: vec![],
            data: data.clone(),
        };
        // F matrices.
        let mut index: Vec<HashMap<TreeLabel, usize>> = Vec::with_capacity(n * n * n * n);
        let mut cindex: Vec<HashMap<TreeLabel, usize>> = Vec::with_capacity(n * n * n * n);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let l = cat.left_labels(a, b, cc, d);
                        let r = cat.right_labels(a, b, cc, d);
                        let k = cat.fkey(a, b, cc, d);
                        if !l.is_empty() {
                            cat.fmat[k] = Some(Mat::zeros(l.len(), r.len()));
                        }
                        index.push(l.into_iter().enumerate().map(|(i, t)| (t, i)).collect());
                        cindex.push(r.into_iter().enumerate().map(|(i, t)| (t, i)).collect());
                    }
                }
            }
        }
        let mut seen_map: HashMap<usize, Vec<bool>> = HashMap::new();
        for t in &data.f {
            let (a, b, cc, d, e, f, mu, nu, rho, sg, re, im) = *t;
            for i in [a, b, cc, d, e, f] {
                chk(i, "F")?;
            }
            let k = cat.fkey(a, b, cc, d);
            let desc = format!("[{},{},{},{},{},{},{},{},{},{}]", a, b, cc, d, e, f, mu, nu, rho, sg);
            let (Some(&i), Some(&j)) = (index[k].get(&(e, mu, nu)), cindex[k].get(&(f, rho, sg))) else {
                return Err(CatError::Inadmissible(desc));
            };
            let cols = cindex[k].len();
            let s = seen_map.entry(k).or_insert_with(|| vec![false; index[k].len() * cols]);
            if s[i * cols + j] {
                return Err(CatError::Duplicate(format!("F {}", desc)));
            }
            s[i * cols + j] = true;
            cat.fmat[k].as_mut().unwrap()[(i, j)] = c(re, im);
        }
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let k = cat.fkey(a, b, cc, d);
                        if cat.fmat[k].is_none() {
                            continue;
                        }
                        let rows = cat.left_labels(a, b, cc, d);
                        let cols = cat.right_labels(a, b, cc, d);
                        let s = seen_map.get(&k);
                        for (i, &(e, mu, nu)) in rows.iter().enumerate() {
                            for (j, &(f, rho, sg)) in cols.iter().enumerate() {
                                if !s.map(|s| s[i * cols.len() + j]).unwrap_or(false) {
                                    return Err(CatError::MissingF(format!("[{},{},{},{},{},{},{},{},{},{}]", a, b, cc, d, e, f, mu, nu, rho, sg)));
                                }
                            }
                        }
                        let m = cat.fmat[k].as_ref().unwrap();
                        if crate::linalg::rank(m) < m.nrows() {
                            return Err(CatError::Singular(a, b, cc, d));
                        }
                        cat.finv[k] = Some(m.clone().try_inverse().ok_or(CatError::Singular(a, b, cc, d))?);
                    }
                }
            }
        }
        if let Some(rs) = &data.r {
            let mut rm: Vec<Mat> = (0..n * n * n).map(|k| Mat::zeros(cat.fusion[k], cat.fusion[k])).collect();
            let mut seen_r: HashMap<usize, Vec<bool>> = HashMap::new();
            for &(a, b, cc, mu, nu, re, im) in rs {
                for i in [a, b, cc] {
                    chk(i, "R")?;
                }
                let k = (a * n + b) * n + cc;
                let m = cat.fusion[k];
                let desc = format!("[{},{},{},{},{}]", a, b, cc, mu, nu);
                if mu >= m || nu >= m {
                    return Err(CatError::Inadmissible(format!("R {}", desc)));
                }
                let s = seen_r.entry(k).or_insert_with(|| vec![false; m * m]);
                if s[mu * m + nu] {
                    return Err(CatError::Duplicate(format!("R {}", desc)));
                }
                s[mu * m + nu] = true;
                rm[k][(mu, nu)] = c(re, im);
            }
            for k in 0..n * n * n {
                let m = cat.fusion[k];
                for mu in 0..m {
                    for nu in 0..m {
                        if !seen_r.get(&k).map(|s| s[mu * m + nu]).unwrap_or(false) {
                            let (a, b, cc) = (k / (n * n), (k / n) % n, k % n);
                            return Err(CatError::MissingR(format!("[{},{},{},{},{}]", a, b, cc, mu, nu)));
                        }
                    }
                }
            }
            cat.rmat = Some(rm);
        }
        if let Some(p) = &data.pivotal {
            if p.len() != n {
                return Err(CatError::Index(p.len(), "pivotal (length)".into()));
            }
            cat.pivotal = p.iter().map(|&(re, im)| c(re, im)).collect();
        }
        for a in 0..n {
            let ad = cat.dual[a];
            let f = cat.f(a, ad, a, a);
            let rows = cat.left_labels(a, ad, a, a);
            let cols = cat.right_labels(a, ad, a, a);
            let i = rows.iter().position(|&(e, _, _)| e == u).unwrap();
            let j = cols.iter().position(|&(f, _, _)| f == u).unwrap();
            let v = f[(i, j)];
            if v.norm() < 1e-12 {
                return Err(CatError::Singular(a, ad, a, a));
            }
            cat.kappa[a] = c(1.0, 0.0) / v;
        }
        cat.fp = cat.compute_fpdims();
        Ok(cat)
    }

    pub fn data(&self) -> &CategoryData {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        self.fusion[(a * self.n + b) * self.n + c]
    }

    fn fkey(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    /// Row labels (e, μ, ν) of F^{abc}_d in canonical order.
    pub fn left_labels(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<TreeLabel> {
        let mut out = Vec::new();
        for e in 0..self.n {
            for mu in 0..self.n(a, b, e) {
                for nu in 0..self.n(e, c, d) {
                    out.push((e, mu, nu));
                }
            }
        }
        out
    }

    /// Column labels (f, ρ, σ) of F^{abc}_d in canonical order.
    pub fn right_labels(&self, a: usize, b: usize, c: usize, d: usize) -> Vec<TreeLabel> {
        let mut out = Vec::new();
        for f in 0..self.n {
            for rho in 0..self.n(b, c, f) {
                for sg in 0..self.n(a, f, d) {
                    out.push((f, rho, sg));
                }
            }
        }
        out
    }

    /// F^{abc}_d; panics when Hom(d, a⊗b⊗c) = 0.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize) -> &Mat {
        self.fmat[self.fkey(a, b, c, d)].as_ref().expect("inadmissible F")
    }

    pub fn f_opt(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&Mat> {
        self.fmat[self.fkey(a, b, c, d)].as_ref()
    }

    pub fn f_inv_opt(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&Mat> {
        self.finv[self.fkey(a, b, c, d)].as_ref()
    }

    pub fn has_braiding(&self) -> bool {
        self.rmat.is_some()
    }

    /// R^{ab}_c.
    pub fn r(&self, a: usize, b: usize, c: usize) -> Option<&Mat> {
        self.rmat.as_ref().map(|r| &r[(a * self.n + b) * self.n + c])
    }

    pub fn pivotal(&self, a: usize) -> C64 {
        self.pivotal[a]
    }

    /// Scalar of coev_a: 1 → a⊗a*, given ev_a: a*⊗a → 1 normalized to 1.
    pub fn kappa(&self, a: usize) -> C64 {
        self.kappa[a]
    }

    pub fn unit_obj(&self) -> Obj {
        Obj::simple(self.n, self.unit)
    }

    pub fn simple(&self, a: usize) -> Obj {
        Obj::simple(self.n, a)
    }

    pub fn zero_obj(&self) -> Obj {
        Obj::zero(self.n)
    }

    pub fn simples(&self) -> Vec<Obj> {
        (0..self.n).map(|a| self.simple(a)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn fmt(&self, x: &Obj) -> String {
        x.format(&self.names)
    }
}
