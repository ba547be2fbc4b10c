//! Drinfeld center: induced objects, splitting into simples, modular data.

use crate::category::Category;
use crate::halfbraid::CenterObject;
use crate::linalg::{c, Mat, C64};
use crate::module::{split_module, Module};
use crate::obj::{DirectSum, Mor, Obj};
use crate::solve::affine_solve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cmp::Ordering;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CenterError {
    #[error("center is incomplete: sum of squared dimensions {found} but expected {expected}")]
    Incomplete { found: f64, expected: f64 },
    #[error("half-braiding residual {0:e} on an induced object")]
    Induction(f64),
    #[error("{0}")]
    Split(String),
}

#[derive(Clone, Debug)]
pub struct CenterSimple {
    pub name: String,
    pub obj: CenterObject,
    pub qdim: f64,
    pub theta: C64,
    /// Per simple a of C, Σ_c d_c tr(β_a) with the copies of X⊗a and a⊗X matched.
    pub character: Vec<C64>,
}

#[derive(Clone, Debug)]
pub struct CenterCategory {
    pub simples: Vec<CenterSimple>,
    /// Normalized S-matrix.
    pub s: Mat,
    pub t: Vec<C64>,
    pub global_dim: f64,
    pub dim_sum: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterSimpleSummary {
    pub name: String,
    pub carrier: String,
    pub forgetful: Vec<usize>,
    pub qdim: f64,
    pub theta: (f64, f64),
    pub theta_phase: f64,
    /// Half-braiding character on each simple of C.
    pub character: Vec<(f64, f64)>,
}

fn q6(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn phase(z: C64) -> f64 {
    let t = z.arg().rem_euclid(2.0 * PI);
    if (2.0 * PI - t) < 1e-7 {
        0.0
    } else {
        t
    }
}

impl Category {
    /// q: i* → a⊗j* with (id⊗ev_j)∘α∘(q⊗id) = (ev_i⊗id)∘α⁻¹∘(id⊗ι).
    fn induction_mate(&self, i: usize, a: usize, j: usize, iota: &Mor) -> Mor {
        let (si, sa, sj) = (self.simple(i), self.simple(a), self.simple(j));
        let (sid, sjd) = (self.simple(self.dual[i]), self.simple(self.dual[j]));
        let asj = self.tensor(&sa, &sjd);
        let rhs = self.tensor_id(&self.ev(&si), &sa).compose(&self.assoc_inv(&sid, &si, &sa)).compose(&self.id_tensor(&sid, iota));
        let post = self.id_tensor(&sa, &self.ev(&sj)).compose(&self.assoc(&sa, &sjd, &sj));
        let (q, res) = affine_solve(&sid, &asj, |q| vec![post.compose(&self.tensor_id(q, &sj))], &[rhs]);
        debug_assert!(res < 1e-9, "mate residual {}", res);
        q
    }

    /// I(X) = ⊕_i (i*⊗X)⊗i with its canonical half-braiding.
    pub fn induced(&self, x: &Obj) -> CenterObject {
        let n = self.rank();
        let parts: Vec<Obj> = (0..n).map(|i| self.tensor(&self.tensor(&self.simple(self.dual[i]), x), &self.simple(i))).collect();
        let ds = DirectSum::new(&parts, n);
        let w = ds.obj.clone();
        let beta = (0..n)
            .map(|a| {
                let sa = self.simple(a);
                let mut acc = Mor::zero(&self.tensor(&w, &sa), &self.tensor(&sa, &w));
                for i in 0..n {
                    let (si, sid) = (self.simple(i), self.simple(self.dual[i]));
                    let ix = self.tensor(&sid, x);
                    let ia = self.tensor(&si, &sa);
                    let s1 = self.assoc(&ix, &si, &sa);
                    let into = self.tensor_id(&ds.proj[i], &sa);
                    for j in 0..n {
                        let (sj, sjd) = (self.simple(j), self.simple(self.dual[j]));
                        let jx = self.tensor(&sjd, x);
                        for mu in 0..self.n(i, a, j) {
                            let mut iota = Mor::zero(&sj, &ia);
                            iota.blocks[j][(mu, 0)] = c(1.0, 0.0);
                            let pi = iota.adjoint();
                            let q = self.induction_mate(i, a, j, &iota);
                            let comp = self
                                .assoc(&sa, &jx, &sj)
                                .compose(&self.tensor_id(&self.assoc(&sa, &sjd, x), &sj))
                                .compose(&self.tensor_id(&self.tensor_id(&q, x), &sj))
                                .compose(&self.id_tensor(&ix, &pi))
                                .compose(&s1);
                            let t = self.id_tensor(&sa, &ds.inj[j]).compose(&comp).compose(&into);
                            acc = &acc + &t;
                        }
                    }
                }
                acc
            })
            .collect();
        CenterObject { carrier: w, beta }
    }

    /// Permutation-matched trace of β_a, weighted by dimensions: a class function on center objects.
    pub fn beta_character(&self, z: &CenterObject, a: usize) -> C64 {
        let x = &z.carrier;
        let sa = self.simple(a);
        let lxa = self.layout(x, &sa).decode(self);
        let lax = self.layout(&sa, x);
        let d = self.qdims();
        let mut tot = c(0.0, 0.0);
        for cc in 0..self.rank() {
            let blk = &z.beta[a].blocks[cc];
            for (col, &(p, i, _, _, mu)) in lxa[cc].iter().enumerate() {
                let row = lax.idx(self, cc, a, 0, p, i, mu);
                tot += blk[(row, col)] * d[cc];
            }
        }
        tot
    }

    pub fn twist(&self, z: &CenterObject) -> C64 {
        let cz = self.center_braid(z, z);
        self.trace(&cz) / self.qdim(&z.carrier)
    }

    pub fn drinfeld_center(&self) -> Result<CenterCategory, CenterError> {
        self.drinfeld_center_seeded(0x5eed)
    }

    pub fn drinfeld_center_seeded(&self, seed: u64) -> Result<CenterCategory, CenterError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found: Vec<CenterObject> = Vec::new();
        let target = self.global_dim();
        let mut dim_sum = 0.0;
        for x in self.simples() {
            let ind = self.induced(&x);
            let res = self.beta_residual(&ind);
            if res > 1e-8 {
                return Err(CenterError::Induction(res));
            }
            let m = Module { name: "I".into(), carrier: ind.carrier.clone(), left: None, right: None, beta: Some(ind.beta) };
            let parts = split_module(self, &m, &mut rng).map_err(|e| CenterError::Split(e.to_string()))?;
            for p in parts {
                let z = p.module.center_object().unwrap();
                if !found.iter().any(|f| f.carrier == z.carrier && !self.center_hom(f, &z).is_empty()) {
                    dim_sum += self.qdim(&z.carrier).norm_sqr();
                    found.push(z);
                }
            }
            if (dim_sum - target * target).abs() < 1e-6 * target * target {
                break;
            }
        }
        if (dim_sum - target * target).abs() > 1e-6 * target * target {
            return Err(CenterError::Incomplete { found: dim_sum, expected: target * target });
        }
        let mut simples: Vec<CenterSimple> = found
            .into_iter()
            .map(|z| {
                let qdim = self.qdim(&z.carrier).re;
                let theta = self.twist(&z);
                let character = (0..self.rank()).map(|a| self.beta_character(&z, a)).collect();
                CenterSimple { name: String::new(), obj: z, qdim, theta, character }
            })
            .collect();
        simples.sort_by(|p, q| canonical_cmp(p, q));
        for (k, s) in simples.iter_mut().enumerate() {
            s.name = format!("Z{}", k);
        }
        let dd = dim_sum.sqrt();
        let nz = simples.len();
        let mut s = Mat::zeros(nz, nz);
        for i in 0..nz {
            for j in 0..nz {
                let (zi, zj) = (&simples[i].obj, &simples[j].obj);
                let dbl = self.center_braid(zj, zi).compose(&self.center_braid(zi, zj));
                s[(i, j)] = self.trace(&dbl) / dd;
            }
        }
        let t = simples.iter().map(|s| s.theta).collect();
        Ok(CenterCategory { simples, s, t, global_dim: target, dim_sum })
    }
}

fn canonical_cmp(p: &CenterSimple, q: &CenterSimple) -> Ordering {
    let kp = (q6(p.qdim), q6(phase(p.theta)));
    let kq = (q6(q.qdim), q6(phase(q.theta)));
    kp.cmp(&kq).then_with(|| q.obj.carrier.mult.cmp(&p.obj.carrier.mult)).then_with(|| {
        let cp: Vec<(i64, i64)> = p.character.iter().map(|z| (-q6(z.re), -q6(z.im))).collect();
        let cq: Vec<(i64, i64)> = q.character.iter().map(|z| (-q6(z.re), -q6(z.im))).collect();
        cp.cmp(&cq)
    })
}

impl CenterCategory {
    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn objects(&self) -> Vec<CenterObject> {
        self.simples.iter().map(|s| s.obj.clone()).collect()
    }

    pub fn summary(&self, cat: &Category) -> Vec<CenterSimpleSummary> {
        self.simples
            .iter()
            .map(|s| CenterSimpleSummary {
                name: s.name.clone(),
                carrier: cat.fmt(&s.obj.carrier),
                forgetful: s.obj.carrier.mult.clone(),
                qdim: crate::linalg::tidy(s.qdim),
                theta: (crate::linalg::tidy(s.theta.re), crate::linalg::tidy(s.theta.im)),
                theta_phase: crate::linalg::tidy(phase(s.theta)),
                character: s.character.iter().map(|c| (crate::linalg::tidy(c.re), crate::linalg::tidy(c.im))).collect(),
            })
            .collect()
    }

    /// (qdim, T-phase) pairs, sorted.
    pub fn modular_multiset(&self) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = self.simples.iter().map(|s| (s.qdim, phase(s.theta))).collect();
        v.sort_by(|a, b| (q6(a.0), q6(a.1)).cmp(&(q6(b.0), q6(b.1))));
        v
    }

    /// Multiplicity of each center simple in z.
    pub fn multiplicities(&self, cat: &Category, z: &CenterObject) -> Vec<usize> {
        self.simples.iter().map(|s| if s.obj.carrier.is_zero() { 0 } else { cat.center_hom(&s.obj, z).len() }).collect()
    }

    /// Inclusions Z_k → z and projections z → Z_k with π_{k,l}∘ι_{k,l'} = δ_{l,l'}.
    pub fn isotypic(&self, cat: &Category, z: &CenterObject) -> Vec<Vec<(Mor, Mor)>> {
        self.simples
            .iter()
            .map(|s| {
                let ins = cat.center_hom(&s.obj, z);
                if ins.is_empty() {
                    return vec![];
                }
                let outs = cat.center_hom(z, &s.obj);
                let n = ins.len();
                let tot = s.obj.carrier.total() as f64;
                let g = Mat::from_fn(n, n, |l, m| {
                    let p = outs[l].compose(&ins[m]);
                    p.trace_blocks().iter().sum::<C64>() / tot
                });
                let gi = g.try_inverse().expect("pairing on a simple summand is nondegenerate");
                (0..n)
                    .map(|l| {
                        let mut pi = Mor::zero(&z.carrier, &s.obj.carrier);
                        for m in 0..n {
                            pi = &pi + &outs[m].scale(gi[(l, m)]);
                        }
                        (ins[l].clone(), pi)
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of Hom_Z(x, y) assembled from isotypic components, cheaper than a direct solve on
    /// large objects.
    pub fn hom(&self, cat: &Category, x: &CenterObject, y: &CenterObject) -> Vec<Mor> {
        if x.carrier.total() * y.carrier.total() <= 64 {
            return cat.center_hom(x, y);
        }
        let ix = self.isotypic(cat, x);
        let iy = self.isotypic(cat, y);
        let mut out = Vec::new();
        for (cx, cy) in ix.iter().zip(&iy) {
            for (iota, _) in cy {
                for (_, pi) in cx {
                    out.push(iota.compose(pi));
                }
            }
        }
        out
    }

    pub fn format_decomposition(&self, mult: &[usize]) -> String {
        let parts: Vec<String> = mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| if m == 1 { self.simples[k].name.clone() } else { format!("{}·{}", m, self.simples[k].name) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("⊕")
        }
    }

    pub fn s_invertible(&self) -> bool {
        crate::linalg::rank(&self.s) == self.rank()
    }

    /// N_{ij}^k = dim Hom(Z_k, Z_i⊗Z_j).
    pub fn fusion(&self, cat: &Category) -> Vec<Vec<Vec<usize>>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t = cat.center_tensor(&self.simples[i].obj, &self.simples[j].obj);
                        self.multiplicities(cat, &t)
                    })
                    .collect()
            })
            .collect()
    }
}
