//! Splitting of idempotents in a semisimple endomorphism algebra.

use crate::linalg::{cluster, image_basis, random_c64, try_eigenvalues, Mat, C64};
use crate::obj::{lin_comb, Mor, Obj};
use rand_chacha::ChaCha8Rng;

/// Snapping window for eigenvalues of an idempotent.
pub const SNAP: f64 = 1e-6;

fn poly_projector(r: &Mat, lambda: C64, others: &[C64]) -> Mat {
    let n = r.nrows();
    let mut p = Mat::identity(n, n);
    for &mu in others {
        let t = (r - Mat::identity(n, n) * mu) / (lambda - mu);
        p = p * t;
    }
    p
}

fn idempotent_ok(p: &Mor) -> bool {
    for b in &p.blocks {
        if b.nrows() == 0 {
            continue;
        }
        let Some(evs) = try_eigenvalues(b) else { return false };
        for ev in evs {
            if ev.norm() > SNAP && (ev - C64::new(1.0, 0.0)).norm() > SNAP {
                return false;
            }
        }
    }
    p.compose(p).dist(p) < 1e-7
}

/// Spectral idempotents of a random element of span(basis); primitive when the span is an
/// endomorphism algebra and the element is generic. Retries up to eight draws.
pub fn spectral_idempotents(basis: &[Mor], x: &Obj, rng: &mut ChaCha8Rng) -> Option<Vec<Mor>> {
    if x.is_zero() {
        return Some(vec![]);
    }
    for _ in 0..8 {
        let coeffs: Vec<C64> = basis.iter().map(|_| random_c64(rng)).collect();
        let r = lin_comb(&coeffs, basis, x, x);
        let Some(per_block) = r.blocks.iter().map(try_eigenvalues).collect::<Option<Vec<Vec<C64>>>>() else {
            continue;
        };
        let all: Vec<C64> = per_block.iter().flatten().cloned().collect();
        let scale = all.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = 1e-6 * scale;
        let reps = cluster(&all, tol);
        let mut gap = f64::INFINITY;
        for i in 0..reps.len() {
            for j in 0..i {
                gap = gap.min((reps[i] - reps[j]).norm());
            }
        }
        if gap < 1e-4 * scale {
            continue;
        }
        let mut out = Vec::new();
        for &lam in &reps {
            let mut p = Mor::zero(x, x);
            for (k, blk) in r.blocks.iter().enumerate() {
                if blk.nrows() == 0 {
                    continue;
                }
                let here = cluster(&per_block[k], tol);
                if !here.iter().any(|z| (z - lam).norm() < tol) {
                    continue;
                }
                let others: Vec<C64> = here.into_iter().filter(|z| (z - lam).norm() >= tol).collect();
                p.blocks[k] = poly_projector(blk, lam, &others);
            }
            out.push(p);
        }
        let mut sum = Mor::zero(x, x);
        for p in &out {
            sum = &sum + p;
        }
        if sum.dist(&Mor::identity(x)) < 1e-7 && out.iter().all(idempotent_ok) {
            return Some(out);
        }
    }
    None
}

/// Image of an idempotent: ι: S → X and π: X → S with π∘ι = id and ι∘π = p.
pub fn image(p: &Mor) -> (Mor, Mor) {
    let n = p.src.rank();
    let mut iota_blocks = Vec::with_capacity(n);
    let mut pi_blocks = Vec::with_capacity(n);
    let mut mult = vec![0; n];
    for (k, b) in p.blocks.iter().enumerate() {
        let u = image_basis(b);
        mult[k] = u.ncols();
        pi_blocks.push(u.adjoint() * b);
        iota_blocks.push(u);
    }
    let s = Obj::new(mult);
    (Mor::from_blocks(&s, &p.dst, iota_blocks), Mor::from_blocks(&p.src, &s, pi_blocks))
}
