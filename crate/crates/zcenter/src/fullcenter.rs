//! Full centers of algebras, local modules, and the coequalizer of the two unit actions.

use crate::algebra::{AlgError, Algebra};
use crate::category::Category;
use crate::center::CenterCategory;
use crate::halfbraid::CenterObject;
use crate::ihom::{ihom_self_end, IhomError};
use crate::linalg::rank;
use crate::module::{module_residual, simple_center_modules, simple_modules, Module, Side};
use crate::obj::{lin_comb, DirectSum, Mor, Obj};
use crate::solve::{coords, kernel};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FullCenterError {
    #[error("full center is not commutative (residual {0:e})")]
    NotCommutative(f64),
    #[error("multiplication of the full center could not be solved (residual {0:e})")]
    Mult(f64),
    #[error(transparent)]
    End(#[from] IhomError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("lagrangian cross-check failed: {0}")]
    Lagrangian(String),
}

#[derive(Clone, Debug)]
pub struct FullCenter {
    pub algebra: Algebra,
    /// e: Z(A) → A
    pub e: Mor,
    /// Center simple index of each summand.
    pub summands: Vec<usize>,
    pub commutativity: f64,
    /// m∘(e⊗id) − m∘(id⊗e)∘β_A
    pub central: f64,
    /// e∘m_Z − m∘(e⊗e) and e∘u_Z − u
    pub homomorphism: f64,
    /// Worst residual of factoring a central pair (Z_j, ζ) through e; `unique` when e∘− is injective.
    pub terminality: f64,
    pub unique: bool,
    /// Carrier of ∫_{x∈C_A}[x,x] when computed.
    pub end_carrier: Option<Obj>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullCenterSummary {
    pub carrier: String,
    pub decomposition: String,
    pub fpdim: f64,
    pub commutativity: f64,
    pub central: f64,
    pub homomorphism: f64,
    pub terminality: f64,
    pub end_carrier: Option<String>,
}

impl FullCenter {
    pub fn center_object(&self) -> CenterObject {
        self.algebra.center_object().unwrap()
    }

    pub fn summary(&self, cat: &Category, z: &CenterCategory) -> FullCenterSummary {
        let mut mult = vec![0; z.rank()];
        for &j in &self.summands {
            mult[j] += 1;
        }
        FullCenterSummary {
            carrier: cat.fmt(&self.algebra.carrier),
            decomposition: z.format_decomposition(&mult),
            fpdim: crate::linalg::tidy(cat.fpdim(&self.algebra.carrier)),
            commutativity: self.commutativity,
            central: self.central,
            homomorphism: self.homomorphism,
            terminality: self.terminality,
            end_carrier: self.end_carrier.as_ref().map(|o| cat.fmt(o)),
        }
    }
}

/// Maps ζ: F(z) → A with m∘(ζ⊗id) = m∘(id⊗ζ)∘β^z_A.
pub fn central_maps(cat: &Category, z: &CenterObject, a: &Algebra) -> Vec<Mor> {
    let ac = &a.carrier;
    let beta = cat.extend_beta(z, ac);
    kernel(&z.carrier, ac, |g| {
        let l = a.mult.compose(&cat.tensor_id(g, ac));
        let r = a.mult.compose(&cat.id_tensor(ac, g)).compose(&beta);
        vec![&l - &r]
    })
}

fn solve_through(basis: &[Mor], post: &dyn Fn(&Mor) -> Mor, target: &Mor, src: &Obj, dst: &Obj) -> (Mor, f64) {
    let imgs: Vec<Mor> = basis.iter().map(post).collect();
    let (cf, res) = coords(&imgs, target);
    (lin_comb(&cf, basis, src, dst), res)
}

/// Z(A) as the terminal central pair, with the end over C_A as a cross-check when `modules` is given.
pub fn full_center(cat: &Category, z: &CenterCategory, a: &Algebra, modules: Option<&[Module]>) -> Result<FullCenter, FullCenterError> {
    let ac = &a.carrier;
    let mut parts = Vec::new();
    let mut zetas = Vec::new();
    let mut summands = Vec::new();
    for (j, s) in z.simples.iter().enumerate() {
        for zeta in central_maps(cat, &s.obj, a) {
            parts.push(s.obj.clone());
            zetas.push(zeta);
            summands.push(j);
        }
    }
    let (zo, ds): (CenterObject, DirectSum) = cat.center_direct_sum(&parts);
    let zc = zo.carrier.clone();
    let mut e = Mor::zero(&zc, ac);
    for (k, zeta) in zetas.iter().enumerate() {
        e = &e + &zeta.compose(&ds.proj[k]);
    }
    let zz = cat.center_tensor(&zo, &zo);
    let basis = cat.center_hom(&zz, &zo);
    let target = a.mult.compose(&cat.tensor_mor(&e, &e));
    let (mult, r1) = solve_through(&basis, &|b| e.compose(b), &target, &zz.carrier, &zc);
    let one = CenterObject::unit(cat);
    let ubasis = cat.center_hom(&one, &zo);
    let (unit, r2) = solve_through(&ubasis, &|b| e.compose(b), &a.unit, &cat.unit_obj(), &zc);
    let homomorphism = r1.max(r2);
    if homomorphism > 1e-8 {
        return Err(FullCenterError::Mult(homomorphism));
    }
    let braid = cat.center_braid(&zo, &zo);
    let commutativity = mult.compose(&braid).dist(&mult);
    if commutativity > 1e-8 {
        return Err(FullCenterError::NotCommutative(commutativity));
    }
    let beta_a = cat.extend_beta(&zo, ac);
    let central = a.mult.compose(&cat.tensor_id(&e, ac)).dist(&a.mult.compose(&cat.id_tensor(ac, &e)).compose(&beta_a));
    let mut terminality: f64 = 0.0;
    let mut unique = true;
    for s in &z.simples {
        let hz = cat.center_hom(&s.obj, &zo);
        let imgs: Vec<Mor> = hz.iter().map(|h| e.compose(h)).collect();
        if !imgs.is_empty() {
            let cols: Vec<Vec<_>> = imgs.iter().map(|m| m.to_vec()).collect();
            let mat = crate::linalg::Mat::from_fn(cols[0].len(), cols.len(), |r, k| cols[k][r]);
            unique &= rank(&mat) == imgs.len();
        }
        for zeta in central_maps(cat, &s.obj, a) {
            terminality = terminality.max(coords(&imgs, &zeta).1);
        }
    }
    let end_carrier = match modules {
        Some(ms) => Some(ihom_self_end(cat, ms)?.carrier),
        None => None,
    };
    let algebra = Algebra { name: format!("Z({})", a.name), carrier: zc, unit, mult, beta: Some(zo.beta) };
    Ok(FullCenter { algebra, e, summands, commutativity, central, homomorphism, terminality, unique, end_carrier })
}

/// Full center with the end cross-check over simple right A-modules.
pub fn full_center_checked(cat: &Category, z: &CenterCategory, a: &Algebra, rng: &mut ChaCha8Rng) -> Result<FullCenter, FullCenterError> {
    let arc = Arc::new(a.clone());
    let ms = simple_modules(cat, &arc, Side::Right, rng)?;
    full_center(cat, z, a, Some(&ms))
}

/// The trivial algebra 1 viewed in the center.
pub fn unit_center_algebra(cat: &Category) -> Algebra {
    let mut a = Algebra::trivial(cat);
    a.beta = Some(CenterObject::unit(cat).beta);
    a
}

/// ρ∘c_{B,M}∘c_{M,B} − ρ for a right B-module M in the center.
pub fn locality_residual(cat: &Category, m: &Module) -> f64 {
    let r = m.right.as_ref().expect("right module");
    let mz = m.center_object().expect("module in the center");
    let bz = r.alg.center_object().expect("algebra in the center");
    let c1 = cat.extend_beta(&mz, &r.alg.carrier);
    let c2 = cat.extend_beta(&bz, &m.carrier);
    r.map.compose(&c2).compose(&c1).dist(&r.map)
}

#[derive(Clone, Debug)]
pub struct LocalModules {
    pub all: Vec<Module>,
    pub local: Vec<usize>,
}

pub fn local_modules(cat: &Category, z: &CenterCategory, b: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<LocalModules, AlgError> {
    let all = simple_center_modules(cat, b, &z.objects(), rng)?;
    for m in &all {
        debug_assert!(module_residual(cat, m) < 1e-8);
    }
    let local = (0..all.len()).filter(|&k| locality_residual(cat, &all[k]) < 1e-8).collect();
    Ok(LocalModules { all, local })
}

#[derive(Clone, Debug, Serialize)]
pub struct LagrangianReport {
    pub connected: bool,
    pub separable: bool,
    pub simple_modules: usize,
    pub local_modules: usize,
    pub fpdim: f64,
    pub expected_fpdim: f64,
    pub lagrangian: bool,
}

pub fn is_lagrangian(cat: &Category, z: &CenterCategory, b: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<LagrangianReport, FullCenterError> {
    let bz = b.center_object().expect("algebra in the center");
    let connected = cat.center_hom(&CenterObject::unit(cat), &bz).len() == 1;
    let separable = cat.separability_witness(b).1 < 1e-8;
    let lm = local_modules(cat, z, b, rng)?;
    let fpdim = cat.fpdim(&b.carrier);
    let expected_fpdim = cat.fp_global_dim();
    let lagrangian = connected && separable && lm.local.len() == 1;
    let dims_match = (fpdim - expected_fpdim).abs() < 1e-6 * expected_fpdim;
    if lagrangian && !dims_match {
        return Err(FullCenterError::Lagrangian(format!("fpdim {} but global dimension {}", fpdim, expected_fpdim)));
    }
    if connected && separable && dims_match && lm.local.len() != 1 {
        return Err(FullCenterError::Lagrangian(format!("fpdim matches but {} local modules", lm.local.len())));
    }
    Ok(LagrangianReport { connected, separable, simple_modules: lm.all.len(), local_modules: lm.local.len(), fpdim, expected_fpdim, lagrangian })
}

/// λ_x = e⊗id and ρ_x = (id⊗e)∘β_x, both Z(1)⊗x → x.
pub fn unit_actions(cat: &Category, z1: &FullCenter, x: &Obj) -> (Mor, Mor) {
    let zo = z1.center_object();
    let lam = cat.tensor_id(&z1.e, x);
    let rho = cat.id_tensor(x, &z1.e).compose(&cat.extend_beta(&zo, x));
    (lam, rho)
}

/// Coequalizer of λ_x and ρ_x.
pub fn coequ_lambda_rho(cat: &Category, z1: &FullCenter, x: &Obj) -> Obj {
    let (l, r) = unit_actions(cat, z1, x);
    let d = &l - &r;
    Obj::new(d.blocks.iter().map(|b| b.nrows() - rank(b)).collect())
}
