use crate::category::Category;
use crate::linalg::C64;
use crate::obj::{Mor, Obj};
use crate::solve::kernel;
use crate::tensor::Sparse;

/// An object of the Drinfeld center: a carrier with β_a: X⊗a → a⊗X for every simple a.
#[derive(Clone, Debug)]
pub struct CenterObject {
    pub carrier: Obj,
    pub beta: Vec<Mor>,
}

impl CenterObject {
    pub fn unit(cat: &Category) -> CenterObject {
        let beta = (0..cat.rank()).map(|a| Mor::identity(&cat.simple(a))).collect();
        CenterObject { carrier: cat.unit_obj(), beta }
    }

    /// x with the half-braiding c_{x,-} of a braided input.
    pub fn from_braiding(cat: &Category, x: &Obj) -> CenterObject {
        let beta = (0..cat.rank()).map(|a| cat.braid(x, &cat.simple(a))).collect();
        CenterObject { carrier: x.clone(), beta }
    }

    /// x with the half-braiding c^{-1}_{-,x}.
    pub fn from_braiding_rev(cat: &Category, x: &Obj) -> CenterObject {
        let beta = (0..cat.rank()).map(|a| cat.braid(&cat.simple(a), x).inverse().expect("braiding is invertible")).collect();
        CenterObject { carrier: x.clone(), beta }
    }

    pub fn zero(cat: &Category) -> CenterObject {
        let z = cat.zero_obj();
        let beta = (0..cat.rank()).map(|a| Mor::zero(&cat.tensor(&z, &cat.simple(a)), &cat.tensor(&cat.simple(a), &z))).collect();
        CenterObject { carrier: z, beta }
    }
}

impl Category {
    /// β_W: X⊗W → W⊗X (or its inverse W⊗X → X⊗W), assembled copy by copy from β on simples.
    pub fn extend_beta_sparse(&self, x: &Obj, beta: &[Mor], w: &Obj, inverse: bool) -> Sparse {
        let n = self.rank();
        let lxw = self.layout(x, w);
        let lwx = self.layout(w, x);
        let mut entries = vec![Vec::new(); n];
        for a in w.support() {
            let sa = self.simple(a);
            let lxa = self.layout(x, &sa).decode(self);
            let lax = self.layout(&sa, x).decode(self);
            let b = if inverse { beta[a].inverse().expect("half-braiding invertible") } else { beta[a].clone() };
            for c in 0..n {
                let blk = &b.blocks[c];
                for r in 0..blk.nrows() {
                    for s in 0..blk.ncols() {
                        let v = blk[(r, s)];
                        if v == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for k in 0..w.mult[a] {
                            if inverse {
                                let (_, _, p, i, mu) = lax[c][s];
                                let (p2, i2, _, _, nu) = lxa[c][r];
                                let src = lwx.idx(self, c, a, k, p, i, mu);
                                let dst = lxw.idx(self, c, p2, i2, a, k, nu);
                                entries[c].push((dst, src, v));
                            } else {
                                let (p, i, _, _, mu) = lxa[c][s];
                                let (_, _, p2, i2, nu) = lax[c][r];
                                let src = lxw.idx(self, c, p, i, a, k, mu);
                                let dst = lwx.idx(self, c, a, k, p2, i2, nu);
                                entries[c].push((dst, src, v));
                            }
                        }
                    }
                }
            }
        }
        if inverse {
            Sparse { src: lwx.out, dst: lxw.out, entries }
        } else {
            Sparse { src: lxw.out, dst: lwx.out, entries }
        }
    }

    pub fn extend_beta(&self, z: &CenterObject, w: &Obj) -> Mor {
        self.extend_beta_sparse(&z.carrier, &z.beta, w, false).to_dense()
    }

    pub fn extend_beta_inv(&self, z: &CenterObject, w: &Obj) -> Mor {
        self.extend_beta_sparse(&z.carrier, &z.beta, w, true).to_dense()
    }

    /// Braiding of the center: c_{X,Y} = β^X_Y.
    pub fn center_braid(&self, x: &CenterObject, y: &CenterObject) -> Mor {
        self.extend_beta(x, &y.carrier)
    }

    /// (X, β^X) ⊗ (Y, β^Y).
    pub fn center_tensor(&self, x: &CenterObject, y: &CenterObject) -> CenterObject {
        let (xc, yc) = (&x.carrier, &y.carrier);
        let beta = (0..self.rank())
            .map(|a| {
                let sa = self.simple(a);
                let step1 = self.assoc(xc, yc, &sa);
                let step2 = self.id_tensor(xc, &y.beta[a]);
                let step3 = self.assoc_inv(xc, &sa, yc);
                let step4 = self.tensor_id(&x.beta[a], yc);
                let step5 = self.assoc(&sa, xc, yc);
                step5.compose(&step4).compose(&step3).compose(&step2).compose(&step1)
            })
            .collect();
        CenterObject { carrier: self.tensor(xc, yc), beta }
    }

    pub fn center_sum(&self, x: &CenterObject, y: &CenterObject) -> CenterObject {
        self.center_direct_sum(&[x.clone(), y.clone()]).0
    }

    /// ⊕ parts, with the inclusions and projections of the carriers.
    pub fn center_direct_sum(&self, parts: &[CenterObject]) -> (CenterObject, crate::obj::DirectSum) {
        // Blocks of a direct sum interleave per simple; assemble through the inclusions.
        let carriers: Vec<Obj> = parts.iter().map(|p| p.carrier.clone()).collect();
        let ds = crate::obj::DirectSum::new(&carriers, self.rank());
        let beta = (0..self.rank())
            .map(|a| {
                let sa = self.simple(a);
                let mut acc = Mor::zero(&self.tensor(&ds.obj, &sa), &self.tensor(&sa, &ds.obj));
                for (k, z) in parts.iter().enumerate() {
                    let t = self.id_tensor(&sa, &ds.inj[k]).compose(&z.beta[a]).compose(&self.tensor_id(&ds.proj[k], &sa));
                    acc = &acc + &t;
                }
                acc
            })
            .collect();
        (CenterObject { carrier: ds.obj.clone(), beta }, ds)
    }

    /// Restriction of a half-braiding along ι: S → X, π: X → S with π∘ι = id.
    pub fn restrict_beta(&self, z: &CenterObject, iota: &Mor, pi: &Mor) -> CenterObject {
        let beta = (0..self.rank())
            .map(|a| {
                let sa = self.simple(a);
                self.id_tensor(&sa, pi).compose(&z.beta[a]).compose(&self.tensor_id(iota, &sa))
            })
            .collect();
        CenterObject { carrier: iota.src.clone(), beta }
    }

    /// Worst deviation from β_{a⊗b} = (id_a⊗β_b)∘(β_a⊗id_b) (with associators) and β_1 = id.
    pub fn beta_residual(&self, z: &CenterObject) -> f64 {
        let x = &z.carrier;
        let mut worst = z.beta[self.unit].dist(&Mor::identity(x));
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                let (sa, sb) = (self.simple(a), self.simple(b));
                let ab = self.tensor(&sa, &sb);
                let lhs = self.extend_beta(z, &ab);
                let rhs = self
                    .assoc_inv(&sa, &sb, x)
                    .compose(&self.id_tensor(&sa, &z.beta[b]))
                    .compose(&self.assoc(&sa, x, &sb))
                    .compose(&self.tensor_id(&z.beta[a], &sb))
                    .compose(&self.assoc_inv(x, &sa, &sb));
                worst = worst.max(lhs.dist(&rhs));
            }
        }
        worst
    }

    /// Constraint list expressing that f: X → Y intertwines the half-braidings.
    pub fn center_constraint(&self, x: &CenterObject, y: &CenterObject, f: &Mor) -> Vec<Mor> {
        (0..self.rank())
            .map(|a| {
                let sa = self.simple(a);
                let l = self.tensor_sparse(&Mor::identity(&sa), f).apply(&x.beta[a]);
                let r = self.tensor_sparse(f, &Mor::identity(&sa)).apply_right(&y.beta[a]);
                &l - &r
            })
            .collect()
    }

    pub fn center_hom(&self, x: &CenterObject, y: &CenterObject) -> Vec<Mor> {
        kernel(&x.carrier, &y.carrier, |f| self.center_constraint(x, y, f))
    }

    pub fn is_center_morphism(&self, x: &CenterObject, y: &CenterObject, f: &Mor) -> f64 {
        self.center_constraint(x, y, f).iter().map(|m| m.max_abs()).fold(0.0, f64::max)
    }
}
