use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;

/// Relative threshold below which a singular value counts as zero.
pub const RANK_TOL: f64 = 1e-6;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

// Singular data is read off Hermitian eigendecompositions of Gram matrices: nalgebra's SVD
// returns inaccurate factors on rank-deficient input, while its Hermitian eigensolver does not.

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
fn herm_eigen(h: &Mat) -> (Vec<f64>, Mat) {
    let n = h.nrows();
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let e = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[j].partial_cmp(&e.eigenvalues[i]).unwrap());
    let vals = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = Mat::from_fn(n, n, |r, k| e.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

/// Squared-singular-value cutoff for a spectrum sorted in descending order.
fn cutoff(vals: &[f64]) -> f64 {
    let top = vals.first().cloned().unwrap_or(0.0).max(1.0);
    RANK_TOL * RANK_TOL * top
}

/// Singular values, descending.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return vec![];
    }
    let g = if m.nrows() >= m.ncols() { m.adjoint() * m } else { m * m.adjoint() };
    herm_eigen(&g).0.into_iter().map(|l| l.max(0.0).sqrt()).collect()
}

/// Orthonormal basis of the kernel, as columns.
pub fn null_space(m: &Mat) -> Mat {
    let n = m.ncols();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return Mat::identity(n, n);
    }
    let (vals, vecs) = herm_eigen(&(m.adjoint() * m));
    let tol = cutoff(&vals);
    let idx: Vec<usize> = (0..n).filter(|&i| vals[i] <= tol).collect();
    Mat::from_fn(n, idx.len(), |r, k| vecs[(r, idx[k])])
}

/// Orthonormal basis of the column space.
pub fn image_basis(m: &Mat) -> Mat {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Mat::zeros(m.nrows(), 0);
    }
    let (vals, vecs) = herm_eigen(&(m * m.adjoint()));
    let tol = cutoff(&vals);
    let idx: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > tol).collect();
    Mat::from_fn(m.nrows(), idx.len(), |r, k| vecs[(r, idx[k])])
}

pub fn rank(m: &Mat) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let g = if m.nrows() >= m.ncols() { m.adjoint() * m } else { m * m.adjoint() };
    let (vals, _) = herm_eigen(&g);
    let tol = cutoff(&vals);
    vals.iter().filter(|&&l| l > tol).count()
}

/// Minimum-norm least-squares solution of `a x = b`, with the residual norm.
pub fn lstsq(a: &Mat, b: &Mat) -> (Mat, f64) {
    if a.ncols() == 0 {
        return (Mat::zeros(0, b.ncols()), max_abs(b));
    }
    if a.nrows() == 0 {
        return (Mat::zeros(a.ncols(), b.ncols()), 0.0);
    }
    let (vals, vecs) = herm_eigen(&(a.adjoint() * a));
    let tol = cutoff(&vals);
    let rhs = a.adjoint() * b;
    let mut x = Mat::zeros(a.ncols(), b.ncols());
    for (i, &l) in vals.iter().enumerate() {
        if l <= tol {
            break;
        }
        let v = vecs.column(i);
        let coef = v.adjoint() * &rhs / c(l, 0.0);
        x += v * coef;
    }
    // One refinement step against the normal-equation rounding.
    let r = b - a * &x;
    let corr_rhs = a.adjoint() * &r;
    for (i, &l) in vals.iter().enumerate() {
        if l <= tol {
            break;
        }
        let v = vecs.column(i);
        let coef = v.adjoint() * &corr_rhs / c(l, 0.0);
        x += v * coef;
    }
    let res = max_abs(&(a * &x - b));
    (x, res)
}

/// Eigenvalues of a square complex matrix.
pub fn eigenvalues(m: &Mat) -> Vec<C64> {
    try_eigenvalues(m).expect("Schur iteration did not converge")
}

/// Eigenvalues with a bounded number of QR sweeps.
pub fn try_eigenvalues(m: &Mat) -> Option<Vec<C64>> {
    if m.nrows() == 0 {
        return Some(vec![]);
    }
    let schur = m.clone().try_schur(f64::EPSILON, 200 * m.nrows().max(4))?;
    let (_, t) = schur.unpack();
    Some((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

pub fn random_c64(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

pub fn random_mat(rng: &mut ChaCha8Rng, r: usize, cols: usize) -> Mat {
    Mat::from_fn(r, cols, |_, _| random_c64(rng))
}

/// Groups values that lie within `tol` of each other; representatives are cluster means.
pub fn cluster(values: &[C64], tol: f64) -> Vec<C64> {
    let mut reps: Vec<(C64, usize)> = Vec::new();
    for &v in values {
        match reps.iter_mut().find(|(r, _)| (*r - v).norm() < tol) {
            Some((r, n)) => {
                *r = (*r * (*n as f64) + v) / ((*n + 1) as f64);
                *n += 1;
            }
            None => reps.push((v, 1)),
        }
    }
    let mut out: Vec<C64> = reps.into_iter().map(|(r, _)| r).collect();
    out.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    out
}

/// Rounds away floating noise so that reports print stably.
pub fn tidy(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}
