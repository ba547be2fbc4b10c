use crate::category::Category;
use crate::linalg::{c, C64};
use crate::obj::{Mor, Obj};

/// Index bookkeeping for x⊗y: the copy of c coming from (a, i) ⊗ (b, j) through channel μ
/// sits at `off(c, a, b) + (i * y_b + j) * N_ab^c + μ`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub x: Obj,
    pub y: Obj,
    pub out: Obj,
    n: usize,
    off: Vec<usize>,
}

impl Layout {
    pub fn off(&self, c: usize, a: usize, b: usize) -> usize {
        self.off[(c * self.n + a) * self.n + b]
    }

    pub fn idx(&self, cat: &Category, c: usize, a: usize, i: usize, b: usize, j: usize, mu: usize) -> usize {
        self.off(c, a, b) + (i * self.y.mult[b] + j) * cat.n(a, b, c) + mu
    }

    /// For each block c, the tuple (a, i, b, j, μ) behind every index.
    pub fn decode(&self, cat: &Category) -> Vec<Vec<(usize, usize, usize, usize, usize)>> {
        let n = self.n;
        let mut out: Vec<Vec<(usize, usize, usize, usize, usize)>> = (0..n).map(|c| Vec::with_capacity(self.out.mult[c])).collect();
        for (c, o) in out.iter_mut().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let m = cat.n(a, b, c);
                    for i in 0..self.x.mult[a] {
                        for j in 0..self.y.mult[b] {
                            for mu in 0..m {
                                o.push((a, i, b, j, mu));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// A morphism stored as per-block coordinate lists.
#[derive(Clone, Debug)]
pub struct Sparse {
    pub src: Obj,
    pub dst: Obj,
    pub entries: Vec<Vec<(usize, usize, C64)>>,
}

impl Sparse {
    pub fn to_dense(&self) -> Mor {
        let mut m = Mor::zero(&self.src, &self.dst);
        for (k, es) in self.entries.iter().enumerate() {
            for &(r, col, v) in es {
                m.blocks[k][(r, col)] += v;
            }
        }
        m
    }

    /// self ∘ h
    pub fn apply(&self, h: &Mor) -> Mor {
        assert_eq!(h.dst, self.src, "sparse apply: object mismatch");
        let mut out = Mor::zero(&h.src, &self.dst);
        for (k, es) in self.entries.iter().enumerate() {
            let hb = &h.blocks[k];
            let ob = &mut out.blocks[k];
            for &(r, col, v) in es {
                for j in 0..hb.ncols() {
                    ob[(r, j)] += v * hb[(col, j)];
                }
            }
        }
        out
    }

    /// h ∘ self
    pub fn apply_right(&self, h: &Mor) -> Mor {
        assert_eq!(h.src, self.dst, "sparse apply_right: object mismatch");
        let mut out = Mor::zero(&self.src, &h.dst);
        for (k, es) in self.entries.iter().enumerate() {
            let hb = &h.blocks[k];
            let ob = &mut out.blocks[k];
            for &(r, col, v) in es {
                for i in 0..hb.nrows() {
                    ob[(i, col)] += hb[(i, r)] * v;
                }
            }
        }
        out
    }
}

impl Category {
    pub fn layout(&self, x: &Obj, y: &Obj) -> Layout {
        let n = self.rank();
        let mut off = vec![0usize; n * n * n];
        let mut out = vec![0usize; n];
        for cc in 0..n {
            let mut acc = 0;
            for a in 0..n {
                for b in 0..n {
                    off[(cc * n + a) * n + b] = acc;
                    acc += x.mult[a] * y.mult[b] * self.n(a, b, cc);
                }
            }
            out[cc] = acc;
        }
        Layout { x: x.clone(), y: y.clone(), out: Obj::new(out), n, off }
    }

    pub fn tensor(&self, x: &Obj, y: &Obj) -> Obj {
        let n = self.rank();
        let mut out = vec![0usize; n];
        for a in x.support() {
            for b in y.support() {
                for (cc, o) in out.iter_mut().enumerate() {
                    *o += x.mult[a] * y.mult[b] * self.n(a, b, cc);
                }
            }
        }
        Obj::new(out)
    }

    pub fn tensor_sparse(&self, f: &Mor, g: &Mor) -> Sparse {
        let n = self.rank();
        let ls = self.layout(&f.src, &g.src);
        let ld = self.layout(&f.dst, &g.dst);
        let mut entries = vec![Vec::new(); n];
        for a in 0..n {
            let fa = &f.blocks[a];
            if fa.nrows() == 0 || fa.ncols() == 0 {
                continue;
            }
            for b in 0..n {
                let gb = &g.blocks[b];
                if gb.nrows() == 0 || gb.ncols() == 0 {
                    continue;
                }
                for cc in 0..n {
                    let nabc = self.n(a, b, cc);
                    if nabc == 0 {
                        continue;
                    }
                    for i2 in 0..fa.nrows() {
                        for i in 0..fa.ncols() {
                            let fv = fa[(i2, i)];
                            if fv == c(0.0, 0.0) {
                                continue;
                            }
                            for j2 in 0..gb.nrows() {
                                for j in 0..gb.ncols() {
                                    let v = fv * gb[(j2, j)];
                                    if v == c(0.0, 0.0) {
                                        continue;
                                    }
                                    for mu in 0..nabc {
                                        entries[cc].push((ld.idx(self, cc, a, i2, b, j2, mu), ls.idx(self, cc, a, i, b, j, mu), v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Sparse { src: ls.out, dst: ld.out, entries }
    }

    /// f ⊗ g
    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Mor {
        self.tensor_sparse(f, g).to_dense()
    }

    pub fn id_tensor(&self, x: &Obj, g: &Mor) -> Mor {
        self.tensor_mor(&Mor::identity(x), g)
    }

    pub fn tensor_id(&self, f: &Mor, y: &Obj) -> Mor {
        self.tensor_mor(f, &Mor::identity(y))
    }

    fn assoc_entries(&self, x: &Obj, y: &Obj, z: &Obj, inverse: bool) -> Sparse {
        let n = self.rank();
        let xy = self.layout(x, y);
        let xy_z = self.layout(&xy.out, z);
        let yz = self.layout(y, z);
        let x_yz = self.layout(x, &yz.out);
        let mut entries = vec![Vec::new(); n];
        for a in x.support() {
            for b in y.support() {
                for cc in z.support() {
                    for d in 0..n {
                        let fm = if inverse { self.f_inv_opt(a, b, cc, d) } else { self.f_opt(a, b, cc, d) };
                        let Some(fm) = fm else { continue };
                        let rows = self.left_labels(a, b, cc, d);
                        let cols = self.right_labels(a, b, cc, d);
                        for (li, &(e, mu, nu)) in rows.iter().enumerate() {
                            for (ri, &(f, rho, sg)) in cols.iter().enumerate() {
                                let v = if inverse { fm[(ri, li)] } else { fm[(li, ri)] };
                                if v == c(0.0, 0.0) {
                                    continue;
                                }
                                for i in 0..x.mult[a] {
                                    for j in 0..y.mult[b] {
                                        for k in 0..z.mult[cc] {
                                            let s1 = xy.idx(self, e, a, i, b, j, mu);
                                            let left = xy_z.idx(self, d, e, s1, cc, k, nu);
                                            let t1 = yz.idx(self, f, b, j, cc, k, rho);
                                            let right = x_yz.idx(self, d, a, i, f, t1, sg);
                                            if inverse {
                                                entries[d].push((left, right, v));
                                            } else {
                                                entries[d].push((right, left, v));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if inverse {
            Sparse { src: x_yz.out, dst: xy_z.out, entries }
        } else {
            Sparse { src: xy_z.out, dst: x_yz.out, entries }
        }
    }

    /// α_{x,y,z}: (x⊗y)⊗z → x⊗(y⊗z), sparse.
    pub fn assoc_sparse(&self, x: &Obj, y: &Obj, z: &Obj) -> Sparse {
        self.assoc_entries(x, y, z, false)
    }

    pub fn assoc_inv_sparse(&self, x: &Obj, y: &Obj, z: &Obj) -> Sparse {
        self.assoc_entries(x, y, z, true)
    }

    pub fn assoc(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor {
        self.assoc_sparse(x, y, z).to_dense()
    }

    pub fn assoc_inv(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor {
        self.assoc_inv_sparse(x, y, z).to_dense()
    }

    /// Braiding c_{x,y}: x⊗y → y⊗x built from R-symbols.
    pub fn braid_sparse(&self, x: &Obj, y: &Obj) -> Sparse {
        let n = self.rank();
        let ls = self.layout(x, y);
        let ld = self.layout(y, x);
        let mut entries = vec![Vec::new(); n];
        for a in x.support() {
            for b in y.support() {
                for cc in 0..n {
                    let m = self.n(a, b, cc);
                    if m == 0 {
                        continue;
                    }
                    let r = self.r(a, b, cc).expect("braiding requires R-symbols");
                    for i in 0..x.mult[a] {
                        for j in 0..y.mult[b] {
                            for mu in 0..m {
                                for nu in 0..m {
                                    let v = r[(mu, nu)];
                                    if v != c(0.0, 0.0) {
                                        entries[cc].push((ld.idx(self, cc, b, j, a, i, nu), ls.idx(self, cc, a, i, b, j, mu), v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Sparse { src: ls.out, dst: ld.out, entries }
    }

    pub fn braid(&self, x: &Obj, y: &Obj) -> Mor {
        self.braid_sparse(x, y).to_dense()
    }

    pub fn dual_obj(&self, x: &Obj) -> Obj {
        let mut m = vec![0; self.rank()];
        for a in 0..self.rank() {
            m[self.dual[a]] += x.mult[a];
        }
        Obj::new(m)
    }

    /// ev_x: x*⊗x → 1, pairing each copy of a* with the matching copy of a.
    pub fn ev(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(&xd, x);
        let u = self.unit;
        let mut m = Mor::zero(&l.out, &self.unit_obj());
        for a in x.support() {
            let ad = self.dual[a];
            for i in 0..x.mult[a] {
                m.blocks[u][(0, l.idx(self, u, ad, i, a, i, 0))] = c(1.0, 0.0);
            }
        }
        m
    }

    /// coev_x: 1 → x⊗x*.
    pub fn coev(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(x, &xd);
        let u = self.unit;
        let mut m = Mor::zero(&self.unit_obj(), &l.out);
        for a in x.support() {
            let ad = self.dual[a];
            for i in 0..x.mult[a] {
                m.blocks[u][(l.idx(self, u, a, i, ad, i, 0), 0)] = self.kappa(a);
            }
        }
        m
    }

    /// ev'_x: x⊗x* → 1 (the evaluation of x* viewed from the other side).
    pub fn ev_r(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(x, &xd);
        let u = self.unit;
        let mut m = Mor::zero(&l.out, &self.unit_obj());
        for a in x.support() {
            let ad = self.dual[a];
            for i in 0..x.mult[a] {
                m.blocks[u][(0, l.idx(self, u, a, i, ad, i, 0))] = c(1.0, 0.0);
            }
        }
        m
    }

    /// coev'_x: 1 → x*⊗x.
    pub fn coev_r(&self, x: &Obj) -> Mor {
        let xd = self.dual_obj(x);
        let l = self.layout(&xd, x);
        let u = self.unit;
        let mut m = Mor::zero(&self.unit_obj(), &l.out);
        for a in x.support() {
            let ad = self.dual[a];
            for i in 0..x.mult[a] {
                m.blocks[u][(l.idx(self, u, ad, i, a, i, 0), 0)] = self.kappa(ad);
            }
        }
        m
    }

    /// Quantum trace Σ_c d_c Tr(f_c).
    pub fn trace(&self, f: &Mor) -> C64 {
        let d = self.qdims();
        f.blocks.iter().enumerate().map(|(k, b)| d[k] * b.trace()).sum()
    }
}
