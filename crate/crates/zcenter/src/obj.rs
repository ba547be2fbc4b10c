use crate::linalg::{max_abs, Mat, C64};
use std::ops::{Add, Mul, Sub};

/// A semisimple object, stored as multiplicities of the simples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    pub mult: Vec<usize>,
}

impl Obj {
    pub fn new(mult: Vec<usize>) -> Self {
        Obj { mult }
    }

    pub fn zero(n: usize) -> Self {
        Obj { mult: vec![0; n] }
    }

    pub fn simple(n: usize, a: usize) -> Self {
        let mut mult = vec![0; n];
        mult[a] = 1;
        Obj { mult }
    }

    pub fn rank(&self) -> usize {
        self.mult.len()
    }

    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn sum(&self, other: &Obj) -> Obj {
        Obj::new(self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: usize) -> Obj {
        Obj::new(self.mult.iter().map(|m| m * k).collect())
    }

    /// Simples present, each repeated by multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mult.iter().enumerate().filter(|(_, &m)| m > 0).map(|(a, _)| a)
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(a, &m)| if m == 1 { names[a].clone() } else { format!("{}·{}", m, names[a]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("⊕")
        }
    }
}

/// Dimension of Hom(x, y).
pub fn hom_dim(x: &Obj, y: &Obj) -> usize {
    x.mult.iter().zip(&y.mult).map(|(a, b)| a * b).sum()
}

/// A morphism: one matrix per simple, of shape dst(c) × src(c).
#[derive(Clone, Debug)]
pub struct Mor {
    pub src: Obj,
    pub dst: Obj,
    pub blocks: Vec<Mat>,
}

impl Mor {
    pub fn zero(src: &Obj, dst: &Obj) -> Self {
        let blocks = (0..src.rank()).map(|c| Mat::zeros(dst.mult[c], src.mult[c])).collect();
        Mor { src: src.clone(), dst: dst.clone(), blocks }
    }

    pub fn identity(x: &Obj) -> Self {
        let blocks = x.mult.iter().map(|&m| Mat::identity(m, m)).collect();
        Mor { src: x.clone(), dst: x.clone(), blocks }
    }

    pub fn from_blocks(src: &Obj, dst: &Obj, blocks: Vec<Mat>) -> Self {
        for (c, b) in blocks.iter().enumerate() {
            assert_eq!((b.nrows(), b.ncols()), (dst.mult[c], src.mult[c]), "block shape");
        }
        Mor { src: src.clone(), dst: dst.clone(), blocks }
    }

    /// Morphism with the given coordinates in the elementary basis of Hom(src, dst).
    pub fn from_vec(src: &Obj, dst: &Obj, v: &[C64]) -> Self {
        let mut m = Mor::zero(src, dst);
        let mut k = 0;
        for b in m.blocks.iter_mut() {
            for j in 0..b.ncols() {
                for i in 0..b.nrows() {
                    b[(i, j)] = v[k];
                    k += 1;
                }
            }
        }
        assert_eq!(k, v.len());
        m
    }

    pub fn to_vec(&self) -> Vec<C64> {
        let mut v = Vec::with_capacity(hom_dim(&self.src, &self.dst));
        for b in &self.blocks {
            for j in 0..b.ncols() {
                for i in 0..b.nrows() {
                    v.push(b[(i, j)]);
                }
            }
        }
        v
    }

    pub fn elementary(src: &Obj, dst: &Obj, k: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); hom_dim(src, dst)];
        v[k] = C64::new(1.0, 0.0);
        Mor::from_vec(src, dst, &v)
    }

    pub fn compose(&self, rhs: &Mor) -> Mor {
        assert_eq!(self.src, rhs.dst, "compose: object mismatch");
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect();
        Mor { src: rhs.src.clone(), dst: self.dst.clone(), blocks }
    }

    pub fn scale(&self, s: C64) -> Mor {
        Mor { src: self.src.clone(), dst: self.dst.clone(), blocks: self.blocks.iter().map(|b| b * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(max_abs).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Mor) -> f64 {
        (self - other).max_abs()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() < tol
    }

    /// Blockwise inverse, if every block is square and invertible.
    pub fn inverse(&self) -> Option<Mor> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            if b.nrows() != b.ncols() {
                return None;
            }
            if b.nrows() == 0 {
                blocks.push(b.clone());
                continue;
            }
            if b.nrows() != b.ncols() || crate::linalg::rank(b) < b.nrows() {
                return None;
            }
            blocks.push(b.clone().try_inverse()?);
        }
        Some(Mor { src: self.dst.clone(), dst: self.src.clone(), blocks })
    }

    pub fn adjoint(&self) -> Mor {
        Mor { src: self.dst.clone(), dst: self.src.clone(), blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn trace_blocks(&self) -> Vec<C64> {
        self.blocks.iter().map(|b| b.trace()).collect()
    }

    /// Direct sum of morphisms.
    pub fn oplus(&self, other: &Mor) -> Mor {
        let src = self.src.sum(&other.src);
        let dst = self.dst.sum(&other.dst);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let mut m = Mat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
                m.view_mut((0, 0), a.shape()).copy_from(a);
                m.view_mut(a.shape(), b.shape()).copy_from(b);
                m
            })
            .collect();
        Mor { src, dst, blocks }
    }
}

impl<'a> Add<&'a Mor> for &'a Mor {
    type Output = Mor;
    fn add(self, rhs: &Mor) -> Mor {
        assert!(self.src == rhs.src && self.dst == rhs.dst, "add: shape mismatch");
        Mor { src: self.src.clone(), dst: self.dst.clone(), blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Mor> for &'a Mor {
    type Output = Mor;
    fn sub(self, rhs: &Mor) -> Mor {
        assert!(self.src == rhs.src && self.dst == rhs.dst, "sub: shape mismatch");
        Mor { src: self.src.clone(), dst: self.dst.clone(), blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a Mor> for &'a Mor {
    type Output = Mor;
    fn mul(self, rhs: &Mor) -> Mor {
        self.compose(rhs)
    }
}

/// Linear combination Σ c_i m_i; `like` fixes the shape when the list is empty.
pub fn lin_comb(coeffs: &[C64], mors: &[Mor], src: &Obj, dst: &Obj) -> Mor {
    let mut out = Mor::zero(src, dst);
    for (c, m) in coeffs.iter().zip(mors) {
        for (o, b) in out.blocks.iter_mut().zip(&m.blocks) {
            *o += b * *c;
        }
    }
    out
}

/// Inclusions and projections of a direct sum X_0 ⊕ X_1 ⊕ ….
pub struct DirectSum {
    pub obj: Obj,
    pub inj: Vec<Mor>,
    pub proj: Vec<Mor>,
}

impl DirectSum {
    pub fn new(parts: &[Obj], n: usize) -> Self {
        let mut obj = Obj::zero(n);
        for p in parts {
            obj = obj.sum(p);
        }
        let mut offset = vec![0usize; n];
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for p in parts {
            let mut i = Mor::zero(p, &obj);
            for c in 0..n {
                for k in 0..p.mult[c] {
                    i.blocks[c][(offset[c] + k, k)] = C64::new(1.0, 0.0);
                }
                offset[c] += p.mult[c];
            }
            proj.push(i.adjoint());
            inj.push(i);
        }
        DirectSum { obj, inj, proj }
    }
}
