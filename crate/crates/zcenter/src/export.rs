//! The category of A-A-bimodules written out as fusion data.

use crate::algebra::{AlgError, Algebra};
use crate::category::Category;
use crate::data::{CategoryData, FEntry};
use crate::linalg::{c, Mat, C64};
use crate::module::{hom_mod, simple_bimodules, tensor_over, Module, RelTensor};
use crate::obj::Mor;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExportError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("associator does not preserve the splitting basis (residual {0:e})")]
    Associator(f64),
    #[error("bimodule {0} has no dual")]
    NoDual(usize),
    #[error("{0}")]
    Other(String),
}

/// Splitting data for M_a ⊗_A M_b: relative tensor plus vertices M_c → Q and their duals.
struct Fused {
    rel: RelTensor,
    /// (c, inclusion M_c → Q, projection Q → M_c)
    vertices: Vec<(usize, Mor, Mor)>,
}

fn scalar_of(end: &Mor) -> C64 {
    let tot = end.src.total().max(1) as f64;
    end.trace_blocks().iter().sum::<C64>() / tot
}

/// Unit norm, first entry above 1e-8 made real and positive.
fn fix_gauge(m: &Mor) -> Mor {
    let v = m.to_vec();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let first = v.iter().find(|z| z.norm() > 1e-8 * n.max(1.0)).cloned().unwrap_or(c(1.0, 0.0));
    let phase = first.conj() / first.norm();
    m.scale(phase / n)
}

/// Projections dual to `ins` inside the span of `outs`.
fn dual_projections(ins: &[Mor], outs: &[Mor]) -> Result<Vec<Mor>, ExportError> {
    let n = ins.len();
    let g = Mat::from_fn(n, n, |l, m| scalar_of(&outs[l].compose(&ins[m])));
    let gi = g.try_inverse().ok_or_else(|| ExportError::Other("degenerate vertex pairing".into()))?;
    Ok((0..n)
        .map(|l| {
            let mut p = Mor::zero(&outs[0].src, &outs[0].dst);
            for m in 0..n {
                p = &p + &outs[m].scale(gi[(l, m)]);
            }
            p
        })
        .collect())
}

fn fuse(cat: &Category, simples: &[Module], a: usize, b: usize, unit: usize, alg: &Algebra) -> Result<Fused, ExportError> {
    let rel = tensor_over(cat, &simples[a], &simples[b])?;
    let q = &rel.module;
    let mut vertices = Vec::new();
    for (cc, mc) in simples.iter().enumerate() {
        let ins: Vec<Mor> = if b == unit && cc == a {
            // π∘(id⊗u): the inverse right unitor.
            vec![rel.pi.compose(&cat.id_tensor(&mc.carrier, &alg.unit))]
        } else if a == unit && cc == b {
            vec![rel.pi.compose(&cat.tensor_id(&alg.unit, &mc.carrier))]
        } else {
            let basis = hom_mod(cat, mc, q);
            orthonormal(&basis).iter().map(fix_gauge).collect()
        };
        if ins.is_empty() {
            continue;
        }
        let outs = hom_mod(cat, q, mc);
        if outs.len() != ins.len() {
            return Err(ExportError::Other(format!("hom dimensions disagree for ({},{};{})", a, b, cc)));
        }
        let outs = dual_projections(&ins, &outs)?;
        for (i, p) in ins.into_iter().zip(outs) {
            vertices.push((cc, i, p));
        }
    }
    Ok(Fused { rel, vertices })
}

/// Gram–Schmidt on flattened morphisms.
fn orthonormal(basis: &[Mor]) -> Vec<Mor> {
    let mut out: Vec<Mor> = Vec::new();
    for b in basis {
        let mut v = b.clone();
        for o in &out {
            let ip: C64 = o.to_vec().iter().zip(v.to_vec()).map(|(x, y)| x.conj() * y).sum();
            v = &v - &o.scale(ip);
        }
        let n = v.to_vec().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-9 {
            out.push(v.scale(c(1.0 / n, 0.0)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DualCategory {
    pub data: CategoryData,
    pub bimodules: Vec<Module>,
    /// Worst failure of α to map the left splitting basis into the span of the right one.
    pub associator_residual: f64,
}

/// _A C_A as category data: simples are the simple bimodules (the regular one first), fusion
/// from relative tensor products, F from the associator of C read off in splitting bases.
pub fn export_dual_category(cat: &Category, a: &Algebra, rng: &mut ChaCha8Rng) -> Result<DualCategory, ExportError> {
    let arc = Arc::new(a.clone());
    let simples = simple_bimodules(cat, &arc, &arc, rng)?;
    let n = simples.len();
    let unit = 0;
    let mut fused: Vec<Vec<Fused>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            row.push(fuse(cat, &simples, x, y, unit, a)?);
        }
        fused.push(row);
    }
    let nmult = |x: usize, y: usize, z: usize| fused[x][y].vertices.iter().filter(|v| v.0 == z).count();
    let vert = |x: usize, y: usize, z: usize, mu: usize| -> &(usize, Mor, Mor) { fused[x][y].vertices.iter().filter(|v| v.0 == z).nth(mu).unwrap() };
    let mut fusion = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = nmult(x, y, z);
                if m > 0 {
                    fusion.push((x, y, z, m));
                }
            }
        }
    }
    let mut dual = vec![usize::MAX; n];
    for x in 0..n {
        dual[x] = (0..n).find(|&y| nmult(x, y, unit) > 0).ok_or(ExportError::NoDual(x))?;
    }
    let mut f_entries: Vec<FEntry> = Vec::new();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (cx, cy, cz) = (&simples[x].carrier, &simples[y].carrier, &simples[z].carrier);
                let xy = cat.tensor(cx, cy);
                let yz = cat.tensor(cy, cz);
                let alpha = cat.assoc(cx, cy, cz);
                for d in 0..n {
                    let mut left = Vec::new();
                    for e in 0..n {
                        for mu in 0..nmult(x, y, e) {
                            for nu in 0..nmult(e, z, d) {
                                let l1 = &vert(x, y, e, mu).1;
                                let (_, l2, _) = vert(e, z, d, nu);
                                let inner = fused[x][y].rel.iota.compose(l1);
                                let v = cat.tensor_id(&inner, cz).compose(&fused[e][z].rel.iota).compose(l2);
                                left.push(((e, mu, nu), cat.tensor_id(&Mor::identity(&xy), cz).compose(&v)));
                            }
                        }
                    }
                    let mut right = Vec::new();
                    for f in 0..n {
                        for rho in 0..nmult(y, z, f) {
                            for sg in 0..nmult(x, f, d) {
                                let p1 = &vert(y, z, f, rho).2;
                                let (_, _, p2) = vert(x, f, d, sg);
                                let outer = p1.compose(&fused[y][z].rel.pi);
                                let w = p2.compose(&fused[x][f].rel.pi).compose(&cat.id_tensor(cx, &outer));
                                let (_, l1, _) = vert(y, z, f, rho);
                                let (_, l2, _) = vert(x, f, d, sg);
                                let inner = fused[y][z].rel.iota.compose(l1);
                                let vr = cat.id_tensor(cx, &inner).compose(&fused[x][f].rel.iota).compose(l2);
                                right.push(((f, rho, sg), w, vr));
                            }
                        }
                    }
                    let _ = &yz;
                    for ((e, mu, nu), vl) in &left {
                        let img = alpha.compose(vl);
                        let mut recon = Mor::zero(&img.src, &img.dst);
                        for ((f, rho, sg), w, vr) in &right {
                            let s = scalar_of(&w.compose(&img));
                            recon = &recon + &vr.scale(s);
                            f_entries.push((x, y, z, d, *e, *f, *mu, *nu, *rho, *sg, clean(s.re), clean(s.im)));
                        }
                        worst = worst.max(recon.dist(&img));
                    }
                }
            }
        }
    }
    if worst > 1e-8 {
        return Err(ExportError::Associator(worst));
    }
    let names: Vec<String> = (0..n).map(|k| format!("M{}", k)).collect();
    let mut data = CategoryData {
        name: Some(format!("bimodules over {}", a.name)),
        simples: names,
        unit,
        dual,
        fusion,
        f: f_entries,
        r: None,
        pivotal: None,
        tolerance: cat.tol,
    };
    // Pivotal phases that make every quantum dimension positive.
    let probe = Category::from_data(&data).map_err(|e| ExportError::Other(e.to_string()))?;
    let piv: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let kap = probe.kappa(k);
            let p = c(kap.norm(), 0.0) / kap;
            (clean(p.re), clean(p.im))
        })
        .collect();
    if piv.iter().any(|&(re, im)| (re - 1.0).abs() > 1e-12 || im.abs() > 1e-12) {
        data.pivotal = Some(piv);
    }
    Ok(DualCategory { data, bimodules: simples, associator_residual: worst })
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

/// Worst mismatch between two (qdim, T-phase) multisets under a greedy nearest matching, with
/// phases compared on the circle. Infinite when the sizes differ.
pub fn multiset_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let dist = |p: (f64, f64), q: (f64, f64)| {
        let dp = (p.1 - q.1).rem_euclid(2.0 * std::f64::consts::PI);
        (p.0 - q.0).abs().max(dp.min(2.0 * std::f64::consts::PI - dp))
    };
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &p in a {
        let (k, d) = (0..b.len()).filter(|&k| !used[k]).map(|k| (k, dist(p, b[k]))).min_by(|x, y| x.1.partial_cmp(&y.1).unwrap()).unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}
