use crate::category::Category;
use crate::linalg::{c, C64};
use crate::obj::Obj;

impl Category {
    /// Quantum dimensions d_a = p_a κ_a of the simples.
    pub fn qdims(&self) -> Vec<C64> {
        (0..self.rank()).map(|a| self.pivotal(a) * self.kappa(a)).collect()
    }

    pub fn qdim(&self, x: &Obj) -> C64 {
        let d = self.qdims();
        x.mult.iter().zip(&d).map(|(&m, &da)| da * m as f64).sum()
    }

    /// Perron–Frobenius dimensions of the simples.
    pub fn fpdims(&self) -> Vec<f64> {
        self.fp.clone()
    }

    pub(crate) fn compute_fpdims(&self) -> Vec<f64> {
        let n = self.rank();
        let mut v = vec![1.0; n];
        for _ in 0..100_000 {
            let mut w = v.clone();
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        w[cc] += self.n(a, b, cc) as f64 * v[b];
                    }
                }
            }
            let s = w[self.unit];
            let w: Vec<f64> = w.iter().map(|x| x / s).collect();
            let delta = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            v = w;
            if delta < 1e-15 {
                break;
            }
        }
        v
    }

    pub fn fpdim(&self, x: &Obj) -> f64 {
        self.fpdims().iter().zip(&x.mult).map(|(d, &m)| d * m as f64).sum()
    }

    /// Σ_a |d_a|² over the simples.
    pub fn global_dim(&self) -> f64 {
        self.qdims().iter().map(|d| d.norm_sqr()).sum()
    }

    pub fn fp_global_dim(&self) -> f64 {
        self.fpdims().iter().map(|d| d * d).sum()
    }

    /// Worst violation of the spherical assumptions: real dimensions, d_a = d_{a*}, and the
    /// character identity d_a d_b = Σ_c N_{ab}^c d_c.
    pub fn spherical_residual(&self) -> f64 {
        let d = self.qdims();
        let n = self.rank();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            worst = worst.max(d[a].im.abs());
            worst = worst.max((d[a] - d[self.dual[a]]).norm());
            for b in 0..n {
                let s: C64 = (0..n).map(|cc| d[cc] * self.n(a, b, cc) as f64).sum();
                worst = worst.max((d[a] * d[b] - s).norm());
            }
        }
        worst.max((d[self.unit] - c(1.0, 0.0)).norm())
    }
}
