//! Linear problems posed on hom spaces.

use crate::linalg::{lstsq, null_space, Mat, C64};
use crate::obj::{hom_dim, lin_comb, Mor, Obj};

fn assemble(src: &Obj, dst: &Obj, f: &dyn Fn(&Mor) -> Vec<Mor>) -> Mat {
    let n = hom_dim(src, dst);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for k in 0..n {
        let e = Mor::elementary(src, dst, k);
        let mut v = Vec::new();
        for m in f(&e) {
            v.extend(m.to_vec());
        }
        cols.push(v);
    }
    let rows = cols.first().map(|v| v.len()).unwrap_or(0);
    Mat::from_fn(rows, n, |r, k| cols[k][r])
}

/// Basis of {x ∈ Hom(src, dst) : f(x) = 0} for a linear f.
pub fn kernel(src: &Obj, dst: &Obj, f: impl Fn(&Mor) -> Vec<Mor>) -> Vec<Mor> {
    let n = hom_dim(src, dst);
    if n == 0 {
        return vec![];
    }
    let m = assemble(src, dst, &f);
    let k = null_space(&m);
    (0..k.ncols())
        .map(|j| {
            let v: Vec<C64> = k.column(j).iter().cloned().collect();
            Mor::from_vec(src, dst, &v)
        })
        .collect()
}

/// Minimum-norm x ∈ Hom(src, dst) with f(x) ≈ target, plus the residual.
pub fn affine_solve(src: &Obj, dst: &Obj, f: impl Fn(&Mor) -> Vec<Mor>, target: &[Mor]) -> (Mor, f64) {
    let a = assemble(src, dst, &f);
    let mut b = Vec::new();
    for t in target {
        b.extend(t.to_vec());
    }
    let bm = Mat::from_column_slice(b.len(), 1, &b);
    if a.nrows() == 0 {
        return (Mor::zero(src, dst), 0.0);
    }
    let (x, res) = lstsq(&a, &bm);
    let v: Vec<C64> = x.column(0).iter().cloned().collect();
    (Mor::from_vec(src, dst, &v), res)
}

/// Coordinates of `m` in the span of `basis`, with the residual.
pub fn coords(basis: &[Mor], m: &Mor) -> (Vec<C64>, f64) {
    if basis.is_empty() {
        return (vec![], m.max_abs());
    }
    let rows = hom_dim(&m.src, &m.dst);
    let cols: Vec<Vec<C64>> = basis.iter().map(|b| b.to_vec()).collect();
    let a = Mat::from_fn(rows, basis.len(), |r, k| cols[k][r]);
    let v = m.to_vec();
    let b = Mat::from_column_slice(rows, 1, &v);
    let (x, res) = lstsq(&a, &b);
    (x.column(0).iter().cloned().collect(), res)
}

pub fn combine(coeffs: &[C64], basis: &[Mor], src: &Obj, dst: &Obj) -> Mor {
    lin_comb(coeffs, basis, src, dst)
}

/// Minimum-norm x ∈ span(basis) with f(x) ≈ target, plus the residual.
pub fn affine_solve_in(basis: &[Mor], src: &Obj, dst: &Obj, f: impl Fn(&Mor) -> Vec<Mor>, target: &[Mor]) -> (Mor, f64) {
    let mut b = Vec::new();
    for t in target {
        b.extend(t.to_vec());
    }
    if basis.is_empty() {
        return (Mor::zero(src, dst), b.iter().fold(0.0, |m, z| m.max(z.norm())));
    }
    let cols: Vec<Vec<C64>> = basis.iter().map(|e| f(e).iter().flat_map(|m| m.to_vec()).collect()).collect();
    let a = Mat::from_fn(b.len(), basis.len(), |r, k| cols[k][r]);
    let bm = Mat::from_column_slice(b.len(), 1, &b);
    let (x, res) = lstsq(&a, &bm);
    let v: Vec<C64> = x.column(0).iter().cloned().collect();
    (lin_comb(&v, basis, src, dst), res)
}
