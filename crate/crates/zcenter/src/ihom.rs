//! Internal homs in C and in the Drinfeld center, their algebra structures, and ends.

use crate::algebra::Algebra;
use crate::category::Category;
use crate::center::CenterCategory;
use crate::halfbraid::CenterObject;
use crate::linalg::{c, null_space};
use crate::module::{hom_mod, Action, Module};
use crate::obj::{lin_comb, DirectSum, Mor, Obj};
use crate::solve::{affine_solve, kernel};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IhomError {
    #[error("naturality violation: end carrier {found} but the direct sum over simples is {expected}")]
    Naturality { found: String, expected: String },
    #[error("mate equation has residual {0:e}")]
    Mate(f64),
    #[error("{0}")]
    Other(String),
}

/// [x,y] with ev: [x,y]⊗x → y; `copies[k]` is the simple a and the basis map a⊗x → y of copy k.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub carrier: Obj,
    pub ev: Mor,
    pub x: Module,
    pub y: Module,
}

fn copy_projection(w: &Obj, a: usize, k: usize) -> Mor {
    let n = w.rank();
    let mut p = Mor::zero(w, &Obj::simple(n, a));
    p.blocks[a][(0, k)] = c(1.0, 0.0);
    p
}

/// Mate of h: v⊗x → y along ev: w⊗x → y, with the residual.
pub fn mate(cat: &Category, ev: &Mor, w: &Obj, x: &Obj, v: &Obj, h: &Mor) -> (Mor, f64) {
    let idx = Mor::identity(x);
    affine_solve(v, w, |g| vec![cat.tensor_sparse(g, &idx).apply_right(ev)], std::slice::from_ref(h))
}

impl InternalHom {
    /// Mate of h: v⊗x → y.
    pub fn mate(&self, cat: &Category, v: &Obj, h: &Mor) -> Result<Mor, IhomError> {
        let (g, res) = mate(cat, &self.ev, &self.carrier, &self.x.carrier, v, h);
        if res > 1e-8 {
            return Err(IhomError::Mate(res));
        }
        Ok(g)
    }
}

/// [x,y] for right modules over the same algebra (or plain objects): Hom(a, [x,y]) = Hom_A(a⊗x, y).
pub fn internal_hom(cat: &Category, x: &Module, y: &Module) -> InternalHom {
    let n = cat.rank();
    let mut maps: Vec<Vec<Mor>> = Vec::with_capacity(n);
    for a in 0..n {
        let ax = Module::act(cat, &cat.simple(a), x);
        maps.push(hom_mod(cat, &ax, y));
    }
    let w = Obj::new(maps.iter().map(|m| m.len()).collect());
    let wx = cat.tensor(&w, &x.carrier);
    let mut ev = Mor::zero(&wx, &y.carrier);
    for a in 0..n {
        for (k, f) in maps[a].iter().enumerate() {
            let p = cat.tensor_id(&copy_projection(&w, a, k), &x.carrier);
            ev = &ev + &f.compose(&p);
        }
    }
    InternalHom { carrier: w, ev, x: x.clone(), y: y.clone() }
}

/// (x⊗_A y^R)^L: the carrier predicted by duality.
pub fn internal_hom_by_duality(cat: &Category, x: &Module, y: &Module) -> Result<Obj, crate::algebra::AlgError> {
    let yr = crate::module::dual_module(cat, y);
    let t = crate::module::tensor_over(cat, x, &yr)?;
    Ok(cat.dual_obj(&t.module.carrier))
}

/// Composition [y,z]⊗[x,y] → [x,z].
pub fn compose_map(cat: &Category, yz: &InternalHom, xy: &InternalHom, xz: &InternalHom) -> Result<Mor, IhomError> {
    let (u, v, x) = (&yz.carrier, &xy.carrier, &xy.x.carrier);
    let h = yz.ev.compose(&cat.id_tensor(u, &xy.ev)).compose(&cat.assoc(u, v, x));
    xz.mate(cat, &cat.tensor(u, v), &h)
}

/// [x,x] with multiplication and unit induced by ev.
pub fn ihom_algebra(cat: &Category, ih: &InternalHom) -> Result<Algebra, IhomError> {
    let w = &ih.carrier;
    let mult = compose_map(cat, ih, ih, ih)?;
    let unit = ih.mate(cat, &cat.unit_obj(), &Mor::identity(&ih.x.carrier))?;
    Ok(Algebra { name: format!("[{},{}]", ih.x.name, ih.x.name), carrier: w.clone(), unit, mult, beta: None })
}

/// [x,y] as a [y,y]-[x,x]-bimodule.
pub fn ihom_bimodule(cat: &Category, xy: &InternalHom, xx: &InternalHom, yy: &InternalHom) -> Result<Module, IhomError> {
    let ax = Arc::new(ihom_algebra(cat, xx)?);
    let ay = Arc::new(ihom_algebra(cat, yy)?);
    let left = compose_map(cat, yy, xy, xy)?;
    let right = compose_map(cat, xy, xx, xy)?;
    Ok(Module {
        name: format!("[{},{}]", xy.x.name, xy.y.name),
        carrier: xy.carrier.clone(),
        left: Some(Action { alg: ay, map: left }),
        right: Some(Action { alg: ax, map: right }),
        beta: None,
    })
}

/// Wedge condition for an arrow f: X → Y: F(X,f)∘w_X = F(f,Y)∘w_Y inside F(X,Y).
#[derive(Clone, Debug)]
pub struct EndArrow {
    pub src: usize,
    pub dst: usize,
    pub target: Obj,
    /// F(X,f): F(X,X) → F(X,Y)
    pub post: Mor,
    /// F(f,Y): F(Y,Y) → F(X,Y)
    pub pre: Mor,
}

#[derive(Clone, Debug)]
pub struct EndDiagram {
    /// F(X,X) for each listed object X.
    pub values: Vec<Obj>,
    pub arrows: Vec<EndArrow>,
    /// Indices of the simple objects among the listed ones.
    pub simples: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EndResult {
    pub carrier: Obj,
    /// w_X: E → F(X,X) for each listed object.
    pub wedges: Vec<Mor>,
}

/// The end as the equalizer inside ⊕_X F(X,X); must agree with ⊕ over the simples.
pub fn end_over(cat: &Category, d: &EndDiagram) -> Result<EndResult, IhomError> {
    let n = cat.rank();
    let prod = DirectSum::new(&d.values, n);
    let targets: Vec<Obj> = d.arrows.iter().map(|a| a.target.clone()).collect();
    let tsum = DirectSum::new(&targets, n);
    let mut diff = Mor::zero(&prod.obj, &tsum.obj);
    for (k, a) in d.arrows.iter().enumerate() {
        let t = &a.post.compose(&prod.proj[a.src]) - &a.pre.compose(&prod.proj[a.dst]);
        diff = &diff + &tsum.inj[k].compose(&t);
    }
    let mut mult = vec![0; n];
    let mut blocks = Vec::with_capacity(n);
    for (cc, b) in diff.blocks.iter().enumerate() {
        let k = null_space(b);
        mult[cc] = k.ncols();
        blocks.push(k);
    }
    let e = Obj::new(mult);
    let incl = Mor::from_blocks(&e, &prod.obj, blocks);
    let wedges: Vec<Mor> = prod.proj.iter().map(|p| p.compose(&incl)).collect();
    let mut expected = Obj::zero(n);
    for &s in &d.simples {
        expected = expected.sum(&d.values[s]);
    }
    let simple_wedges: Vec<Mor> = d.simples.iter().map(|&s| wedges[s].clone()).collect();
    let ok = e == expected && {
        let sdir = DirectSum::new(&d.simples.iter().map(|&s| d.values[s].clone()).collect::<Vec<_>>(), n);
        let mut to_sum = Mor::zero(&e, &sdir.obj);
        for (k, w) in simple_wedges.iter().enumerate() {
            to_sum = &to_sum + &sdir.inj[k].compose(w);
        }
        to_sum.inverse().is_some()
    };
    if !ok {
        return Err(IhomError::Naturality { found: cat.fmt(&e), expected: cat.fmt(&expected) });
    }
    Ok(EndResult { carrier: e, wedges })
}

/// The end of x ↦ [x, G(x)] over a list of simple right modules, with pairwise sums and their
/// inclusions and projections as the arrows. `g` sends a module to its image (a right module).
pub fn ihom_end(
    cat: &Category,
    simples: &[Module],
    g: &dyn Fn(&Module) -> Module,
    gmor: &dyn Fn(&Module, &Module, &Mor) -> Mor,
) -> Result<EndResult, IhomError> {
    let mut objs: Vec<Module> = simples.to_vec();
    let mut arrows_spec: Vec<(usize, usize, Mor)> = Vec::new();
    let ns = simples.len();
    for i in 0..ns {
        for j in (i + 1)..ns {
            let (s, ds) = Module::sum(cat, &[simples[i].clone(), simples[j].clone()]);
            let idx = objs.len();
            objs.push(s);
            arrows_spec.push((i, idx, ds.inj[0].clone()));
            arrows_spec.push((j, idx, ds.inj[1].clone()));
            arrows_spec.push((idx, i, ds.proj[0].clone()));
            arrows_spec.push((idx, j, ds.proj[1].clone()));
        }
    }
    let images: Vec<Module> = objs.iter().map(|m| g(m)).collect();
    let diag_homs: Vec<InternalHom> = (0..objs.len()).map(|k| internal_hom(cat, &objs[k], &images[k])).collect();
    let mut arrows = Vec::new();
    for (s, t, f) in arrows_spec {
        // F(X,Y) = [X, G(Y)]
        let xy = internal_hom(cat, &objs[s], &images[t]);
        let gf = gmor(&objs[s], &objs[t], &f);
        let post_h = gf.compose(&diag_homs[s].ev);
        let post = xy.mate(cat, &diag_homs[s].carrier, &post_h)?;
        let pre_h = diag_homs[t].ev.compose(&cat.id_tensor(&diag_homs[t].carrier, &f));
        let pre = xy.mate(cat, &diag_homs[t].carrier, &pre_h)?;
        arrows.push(EndArrow { src: s, dst: t, target: xy.carrier.clone(), post, pre });
    }
    let d = EndDiagram { values: diag_homs.iter().map(|h| h.carrier.clone()).collect(), arrows, simples: (0..ns).collect() };
    end_over(cat, &d)
}

/// ∫_{x ∈ C_A} [x,x] over the given simple right modules.
pub fn ihom_self_end(cat: &Category, simples: &[Module]) -> Result<EndResult, IhomError> {
    ihom_end(cat, simples, &|m| m.clone(), &|_, _, f| f.clone())
}

/// [x,y] in the center: Hom_Z(b, [x,y]) = Hom_A(F(b)⊗x, y).
#[derive(Clone, Debug)]
pub struct CenterIhom {
    pub obj: CenterObject,
    pub ev: Mor,
    pub x: Module,
    pub y: Module,
    /// Center simple index of each summand, in order.
    pub summands: Vec<usize>,
}

impl CenterIhom {
    /// Center morphism v → [x,y] whose mate is h: F(v)⊗x → y.
    pub fn mate(&self, cat: &Category, v: &CenterObject, h: &Mor) -> Result<Mor, IhomError> {
        self.mate_in(cat, &cat.center_hom(v, &self.obj), v, h)
    }

    /// As `mate`, with Hom_Z computed through isotypic components.
    pub fn mate_z(&self, cat: &Category, z: &CenterCategory, v: &CenterObject, h: &Mor) -> Result<Mor, IhomError> {
        self.mate_in(cat, &z.hom(cat, v, &self.obj), v, h)
    }

    fn mate_in(&self, cat: &Category, basis: &[Mor], v: &CenterObject, h: &Mor) -> Result<Mor, IhomError> {
        let xid = Mor::identity(&self.x.carrier);
        let imgs: Vec<Mor> = basis.iter().map(|b| cat.tensor_sparse(b, &xid).apply_right(&self.ev)).collect();
        let (coef, res) = crate::solve::coords(&imgs, h);
        if res > 1e-8 {
            return Err(IhomError::Mate(res));
        }
        Ok(lin_comb(&coef, basis, &v.carrier, &self.obj.carrier))
    }

    pub fn algebra(&self, cat: &Category) -> Result<Algebra, IhomError> {
        self.algebra_with(cat, None)
    }

    pub fn algebra_z(&self, cat: &Category, z: &CenterCategory) -> Result<Algebra, IhomError> {
        self.algebra_with(cat, Some(z))
    }

    fn algebra_with(&self, cat: &Category, z: Option<&CenterCategory>) -> Result<Algebra, IhomError> {
        let w = &self.obj;
        let ww = cat.center_tensor(w, w);
        let (wc, x) = (&w.carrier, &self.x.carrier);
        let h = self.ev.compose(&cat.id_tensor(wc, &self.ev)).compose(&cat.assoc(wc, wc, x));
        let one = CenterObject::unit(cat);
        let (mult, unit) = match z {
            Some(z) => (self.mate_z(cat, z, &ww, &h)?, self.mate_z(cat, z, &one, &Mor::identity(x))?),
            None => (self.mate(cat, &ww, &h)?, self.mate(cat, &one, &Mor::identity(x))?),
        };
        Ok(Algebra { name: format!("[{},{}]_Z", self.x.name, self.y.name), carrier: wc.clone(), unit, mult, beta: Some(w.beta.clone()) })
    }
}

pub fn ihom_center(cat: &Category, z: &CenterCategory, x: &Module, y: &Module) -> CenterIhom {
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut summands = Vec::new();
    for (j, s) in z.simples.iter().enumerate() {
        let bx = Module::act(cat, &s.obj.carrier, x);
        for f in hom_mod(cat, &bx, y) {
            parts.push(s.obj.clone());
            maps.push(f);
            summands.push(j);
        }
    }
    let (obj, ds) = if parts.is_empty() { (CenterObject::zero(cat), DirectSum::new(&[], cat.rank())) } else { cat.center_direct_sum(&parts) };
    let mut ev = Mor::zero(&cat.tensor(&obj.carrier, &x.carrier), &y.carrier);
    for (k, f) in maps.iter().enumerate() {
        ev = &ev + &f.compose(&cat.tensor_id(&ds.proj[k], &x.carrier));
    }
    CenterIhom { obj, ev, x: x.clone(), y: y.clone(), summands }
}

/// φ(z) = z⊗A as an A-A-bimodule: right action (id⊗m)∘α, left action twisted by the half-braiding.
pub fn alpha_induction(cat: &Category, z: &CenterObject, a: &Arc<Algebra>) -> Module {
    let (zc, ac) = (&z.carrier, &a.carrier);
    let right = cat.id_tensor(zc, &a.mult).compose(&cat.assoc(zc, ac, ac));
    let binv = cat.extend_beta_inv(z, ac);
    let left = cat.id_tensor(zc, &a.mult).compose(&cat.assoc(zc, ac, ac)).compose(&cat.tensor_id(&binv, ac)).compose(&cat.assoc_inv(ac, zc, ac));
    Module {
        name: "φ(z)".into(),
        carrier: cat.tensor(zc, ac),
        left: Some(Action { alg: a.clone(), map: left }),
        right: Some(Action { alg: a.clone(), map: right }),
        beta: None,
    }
}

/// Maps g: F(b) → w whose extension ρ_w∘(g⊗id) is a bimodule map φ(b) → w.
pub fn induction_restricted_maps(cat: &Category, b: &CenterObject, w: &Module) -> Vec<Mor> {
    let l = w.left.as_ref().expect("bimodule");
    let r = w.right.as_ref().expect("bimodule");
    let ac = &l.alg.carrier;
    let beta = cat.extend_beta(b, ac);
    kernel(&b.carrier, &w.carrier, |g| {
        let lhs = r.map.compose(&cat.tensor_id(g, ac));
        let rhs = l.map.compose(&cat.id_tensor(ac, g)).compose(&beta);
        vec![&lhs - &rhs]
    })
}

/// [1, w]_{Z(C)} for an A-A-bimodule w: right adjoint of α-induction.
pub fn ihom_center_bimodule(cat: &Category, z: &CenterCategory, w: &Module) -> (CenterObject, Vec<usize>) {
    let mut parts = Vec::new();
    let mut summands = Vec::new();
    for (j, s) in z.simples.iter().enumerate() {
        for _ in 0..induction_restricted_maps(cat, &s.obj, w).len() {
            parts.push(s.obj.clone());
            summands.push(j);
        }
    }
    if parts.is_empty() {
        return (CenterObject::zero(cat), summands);
    }
    (cat.center_direct_sum(&parts).0, summands)
}
