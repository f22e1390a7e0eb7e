//! Formal kernels over the cokernel layer.  An object is an arrow `g` of
//! the presented-arrow category; it stands for the kernel of `g`.  The
//! result is abelian: kernels come from one gluing, cokernels from two.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::fp::{FpCat, FpHomData, FpMor, FpOb};
use crate::catcore::{Cat, Mor, Object};
use crate::exactalg::{Elem, FpModule, Matrix, Subquotient};
use crate::{Error, Result};

/// An arrow `window: F -> G` one level down; the object is the part of
/// `F` that `window` kills.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbOb {
    pub window: FpMor,
}

impl AbOb {
    pub fn carrier(&self) -> &FpOb {
        &self.window.dom
    }

    pub fn constraint_target(&self) -> &FpOb {
        &self.window.cod
    }
}

/// Carried by an arrow between the carriers, compatible with both
/// windows up to the usual factorizations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbMor {
    pub dom: AbOb,
    pub cod: AbOb,
    pub rep: FpMor,
}

/// Hom data: the lower-level hom of the carriers and the subquotient of
/// it cut out by window compatibility.
pub struct AbHomData {
    pub carrier_hom: Arc<FpHomData>,
    pub sq: Subquotient,
}

impl AbHomData {
    pub fn module(&self) -> &FpModule {
        &self.sq.module
    }
}

/// Every window object is the quotient of a plain kernel window `top`
/// by the image of `step`; `onto` is the quotient arrow.
struct KernelCover {
    top: AbOb,
    step: AbMor,
    onto: AbMor,
}

/// A tensor product remembered together with the arrow settling it from
/// the covering tensor; arrows between tensors travel up there.
struct TensorSlot {
    ob: AbOb,
    settle: AbMor,
}

type HomKey = (AbOb, AbOb);

pub struct AbCat {
    fp: FpCat,
    homs: Mutex<HashMap<HomKey, Arc<AbHomData>>>,
    covers: Mutex<HashMap<AbOb, Arc<KernelCover>>>,
    tensors: Mutex<HashMap<HomKey, Arc<TensorSlot>>>,
}

impl AbCat {
    pub fn new(base: &Cat) -> AbCat {
        AbCat {
            fp: FpCat::new(base),
            homs: Mutex::new(HashMap::new()),
            covers: Mutex::new(HashMap::new()),
            tensors: Mutex::new(HashMap::new()),
        }
    }

    pub fn fp(&self) -> &FpCat {
        &self.fp
    }

    pub fn base(&self) -> &Cat {
        self.fp.base()
    }

    // ----- objects -----

    /// a presented object, embedded with no constraint
    pub fn from_fp(&self, x: &FpOb) -> Result<AbOb> {
        Ok(AbOb { window: self.fp.zero_mor(x, &self.fp.zero_ob())? })
    }

    /// base objects land here through both completion steps
    pub fn iota(&self, x: &Object) -> Result<AbOb> {
        self.from_fp(&self.fp.from_base(x)?)
    }

    pub fn zero_ob(&self) -> AbOb {
        let z = self.fp.zero_ob();
        AbOb { window: self.fp.zero_mor(&z, &z).expect("empty map") }
    }

    pub fn unit_ob(&self) -> Result<AbOb> {
        self.iota(&self.base().unit())
    }

    pub fn biprod(&self, x: &AbOb, y: &AbOb) -> Result<AbOb> {
        Ok(AbOb { window: self.fp.block_diag(&x.window, &y.window)? })
    }

    pub fn is_zero_ob(&self, x: &AbOb) -> Result<bool> {
        let id = self.id(x)?;
        self.is_zero_mor(&id)
    }

    // ----- homs -----

    pub fn hom(&self, x: &AbOb, y: &AbOb) -> Result<Arc<AbHomData>> {
        let key = (x.clone(), y.clone());
        if let Some(h) = self.homs.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.hom_uncached(x, y)?);
        self.homs.lock().unwrap().insert(key, h.clone());
        Ok(h)
    }

    fn hom_uncached(&self, x: &AbOb, y: &AbOb) -> Result<AbHomData> {
        let f = x.carrier();
        let f2 = y.carrier();
        let g2 = y.constraint_target();
        let carrier_hom = self.fp.hom(f, f2)?;
        // pushing a carrier arrow into y's constraint must be explained by
        // something through x's constraint
        let constraint = self.fp.post_with(f, &y.window)?;
        let explain = self.fp.pre_with(&x.window, g2)?;
        let hom_fg2 = self.fp.hom(f, g2)?;
        let allowed = explain.mat.vstack(&hom_fg2.module().relations)?;
        // arrows through x's constraint target die
        let kill = self.fp.pre_with(&x.window, f2)?;
        let trivial = kill.mat.vstack(&carrier_hom.module().relations)?;
        let sq = Subquotient::present(&constraint.mat, &allowed, &trivial)?;
        Ok(AbHomData { carrier_hom, sq })
    }

    pub fn coords_of(&self, m: &AbMor) -> Result<Vec<Elem>> {
        let h = self.hom(&m.dom, &m.cod)?;
        let lower = self.fp.coords_of(&m.rep)?;
        match h.sq.express(&lower)? {
            Some(c) => Ok(h.module().canon_elem(&c)),
            None => Err(Error::InvalidInstance("stored rep fails its own hom".into())),
        }
    }

    pub fn mor_from_coords(
        &self,
        x: &AbOb,
        y: &AbOb,
        h: &AbHomData,
        coords: &[Elem],
    ) -> Result<AbMor> {
        let lower = h.sq.realize(coords);
        let rep = self.fp.mor_from_coords(x.carrier(), y.carrier(), &h.carrier_hom, &lower)?;
        Ok(AbMor { dom: x.clone(), cod: y.clone(), rep })
    }

    // ----- morphisms -----

    pub fn mor(&self, dom: &AbOb, cod: &AbOb, rep: FpMor) -> Result<AbMor> {
        if rep.dom != *dom.carrier() || rep.cod != *cod.carrier() {
            return Err(Error::EndpointMismatch("rep endpoints vs carriers".into()));
        }
        let h = self.hom(dom, cod)?;
        let lower = self.fp.coords_of(&rep)?;
        if h.sq.express(&lower)?.is_none() {
            return Err(Error::InvalidArgument(
                "arrow is not compatible with the windows".into(),
            ));
        }
        Ok(AbMor { dom: dom.clone(), cod: cod.clone(), rep })
    }

    fn mk(&self, dom: &AbOb, cod: &AbOb, rep: FpMor) -> AbMor {
        debug_assert_eq!(rep.dom, *dom.carrier());
        debug_assert_eq!(rep.cod, *cod.carrier());
        AbMor { dom: dom.clone(), cod: cod.clone(), rep }
    }

    /// arrows between embedded base objects
    pub fn iota_mor(&self, f: &Mor) -> Result<AbMor> {
        let dom = self.iota(&f.dom)?;
        let cod = self.iota(&f.cod)?;
        let rep = self.fp.mor(dom.carrier(), cod.carrier(), f.clone())?;
        Ok(self.mk(&dom, &cod, rep))
    }

    pub fn id(&self, x: &AbOb) -> Result<AbMor> {
        Ok(self.mk(x, x, self.fp.id(x.carrier())?))
    }

    pub fn zero_mor(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        Ok(self.mk(x, y, self.fp.zero_mor(x.carrier(), y.carrier())?))
    }

    pub fn compose(&self, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        if f.cod != g.dom {
            return Err(Error::EndpointMismatch("composition".into()));
        }
        Ok(self.mk(&f.dom, &g.cod, self.fp.compose(&f.rep, &g.rep)?))
    }

    pub fn add(&self, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::EndpointMismatch("sum".into()));
        }
        Ok(self.mk(&f.dom, &f.cod, self.fp.add(&f.rep, &g.rep)?))
    }

    pub fn neg(&self, f: &AbMor) -> AbMor {
        self.mk(&f.dom, &f.cod, self.fp.neg(&f.rep))
    }

    pub fn sub(&self, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        self.add(f, &self.neg(g))
    }

    pub fn smul(&self, c: &Elem, f: &AbMor) -> AbMor {
        self.mk(&f.dom, &f.cod, self.fp.smul(c, &f.rep))
    }

    pub fn is_zero_mor(&self, f: &AbMor) -> Result<bool> {
        let h = self.hom(&f.dom, &f.cod)?;
        let c = self.coords_of(f)?;
        Ok(h.module().elem_is_zero(&c))
    }

    pub fn mor_eq(&self, f: &AbMor, g: &AbMor) -> Result<bool> {
        if f.dom != g.dom || f.cod != g.cod {
            return Ok(false);
        }
        let h = self.hom(&f.dom, &f.cod)?;
        Ok(h.module().elem_eq(&self.coords_of(f)?, &self.coords_of(g)?))
    }

    // ----- biproduct structure maps -----

    pub fn inj1(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let s = self.biprod(x, y)?;
        Ok(self.mk(x, &s, self.fp.inj1(x.carrier(), y.carrier())?))
    }

    pub fn inj2(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let s = self.biprod(x, y)?;
        Ok(self.mk(y, &s, self.fp.inj2(x.carrier(), y.carrier())?))
    }

    pub fn proj1(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let s = self.biprod(x, y)?;
        Ok(self.mk(&s, x, self.fp.proj1(x.carrier(), y.carrier())?))
    }

    pub fn proj2(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let s = self.biprod(x, y)?;
        Ok(self.mk(&s, y, self.fp.proj2(x.carrier(), y.carrier())?))
    }

    // ----- kernels -----

    /// The kernel narrows the carrier by the incoming arrow as well; its
    /// inclusion is carried by the identity.
    pub fn kernel(&self, m: &AbMor) -> Result<(AbOb, AbMor)> {
        let g = &m.dom.window;
        let narrowed = self.fp.pair(g, &m.rep)?;
        let k = AbOb { window: narrowed };
        let incl = self.mk(&k, &m.dom, self.fp.id(m.dom.carrier())?);
        Ok((k, incl))
    }

    /// factor `n` through a kernel inclusion, for `n` killed by the map
    /// the kernel came from
    pub fn kernel_factor(&self, k: &AbOb, n: &AbMor) -> Result<AbMor> {
        self.mor(&n.dom, k, n.rep.clone())
    }

    // ----- cokernels -----

    /// Two lower-level cokernels: one absorbs the image, the second
    /// absorbs what the target window already kills.
    pub fn cokernel(&self, m: &AbMor) -> Result<(AbOb, AbMor)> {
        let g = &m.dom.window;
        let g2 = &m.cod.window;
        let f2 = m.cod.carrier();
        let delta = self.fp.pair(&m.rep, &self.fp.neg(g))?;
        let (z, rho) = self.fp.cokernel(&delta)?;
        let p = self.fp.compose(&self.fp.inj1(f2, m.dom.constraint_target())?, &rho)?;
        let gamma = self.fp.pair(&p, &self.fp.neg(g2))?;
        let (_, sigma) = self.fp.cokernel(&gamma)?;
        let q = self.fp.compose(&self.fp.inj1(&z, m.cod.constraint_target())?, &sigma)?;
        let coker = AbOb { window: q };
        let proj = self.mk(&m.cod, &coker, p);
        Ok((coker, proj))
    }

    /// factor `n` through a cokernel projection `proj` of `m`
    pub fn cokernel_factor(&self, m: &AbMor, proj: &AbMor, n: &AbMor) -> Result<AbMor> {
        if n.dom != m.cod {
            return Err(Error::EndpointMismatch("cokernel factoring".into()));
        }
        // find the witness that n kills m: rep(m);rep(n) = window;chi
        let t = self.fp.compose(&m.rep, &n.rep)?;
        let g = &m.dom.window;
        let wf = n.cod.carrier();
        let hom_fw = self.fp.hom(m.dom.carrier(), wf)?;
        let through = self.fp.pre_with(g, wf)?;
        let rels = &hom_fw.module().relations;
        let stacked = if rels.rows == 0 {
            through.mat.clone()
        } else {
            through.mat.vstack(rels)?
        };
        let target = Matrix::row_vector(self.base().ring(), self.fp.coords_of(&t)?);
        let sol = crate::exactalg::solve_left(&stacked, &target)?.ok_or_else(|| {
            Error::InvalidArgument("composite does not vanish on the image".into())
        })?;
        let chi_coords: Vec<Elem> = sol.row(0)[..through.dom.gens].to_vec();
        let hom_gw = self.fp.hom(&g.cod, wf)?;
        let chi = self.fp.mor_from_coords(&g.cod, wf, &hom_gw, &chi_coords)?;
        // glue to a map off the first lower cokernel, then validate
        let glued = self.fp.copair(&n.rep, &chi)?;
        let delta = self.fp.pair(&m.rep, &self.fp.neg(g))?;
        let (_, rho) = self.fp.cokernel(&delta)?;
        let mu = self.fp.cokernel_factor(&rho, &glued)?;
        self.mor(&proj.cod, &n.cod, mu)
    }

    // ----- derived structure -----

    pub fn is_mono(&self, m: &AbMor) -> Result<bool> {
        let (k, _) = self.kernel(m)?;
        self.is_zero_ob(&k)
    }

    pub fn is_epi(&self, m: &AbMor) -> Result<bool> {
        let (q, _) = self.cokernel(m)?;
        self.is_zero_ob(&q)
    }

    pub fn is_iso(&self, m: &AbMor) -> Result<bool> {
        Ok(self.is_mono(m)? && self.is_epi(m)?)
    }

    /// epi onto the image followed by the inclusion, multiplying back to `m`
    pub fn image_factorization(&self, m: &AbMor) -> Result<(AbOb, AbMor, AbMor)> {
        let (_, proj) = self.cokernel(m)?;
        let (im, incl) = self.kernel(&proj)?;
        let onto = self.kernel_factor(&im, m)?;
        Ok((im, onto, incl))
    }

    // ----- tensor structure -----
    //
    // On plain kernel windows (no relations on either end of the window)
    // the componentwise formula below is the whole story.  A general
    // object is the quotient of such a window by a swept-in image, and
    // tensoring must preserve that quotient, so the general product is
    // forced: tensor the covers, quotient by the tensored sweeps.

    fn plain_window(x: &AbOb) -> bool {
        x.window.dom.pres.dom.is_empty() && x.window.cod.pres.dom.is_empty()
    }

    /// the object cut out of a base arrow's domain by that arrow
    fn kernel_window(&self, v: &Mor) -> Result<AbOb> {
        let dom = self.fp.from_base(&v.dom)?;
        let cod = self.fp.from_base(&v.cod)?;
        Ok(AbOb { window: self.fp.mor(&dom, &cod, v.clone())? })
    }

    /// the factorization a valid window promises: sigma carrying the
    /// domain relations into the target relations under the window
    fn window_witness(&self, x: &AbOb) -> Result<Mor> {
        let base = self.base();
        let a = &x.carrier().pres;
        let b = &x.constraint_target().pres;
        if a.dom.is_empty() || b.dom.is_empty() {
            return base.zero_mor(&a.dom, &b.dom);
        }
        let need = base.compose(a, &x.window.rep)?;
        let (sig, tgt, post) =
            base.map_on_hom((&a.dom, &b.dom), (&a.dom, &b.cod), |m| base.compose(m, b))?;
        let rels = &tgt.module.relations;
        let stacked = if rels.rows == 0 { post.mat.clone() } else { post.mat.vstack(rels)? };
        let target = Matrix::row_vector(base.ring(), base.mor_to_flat(&tgt, &need));
        let sol = crate::exactalg::solve_left(&stacked, &target)?.ok_or_else(|| {
            Error::InvalidInstance("window fails its own factorization".into())
        })?;
        let coords: Vec<Elem> = sol.row(0)[..sig.module.gens].to_vec();
        base.mor_from_flat(&sig, &coords)
    }

    fn cover(&self, x: &AbOb) -> Result<Arc<KernelCover>> {
        if let Some(c) = self.covers.lock().unwrap().get(x) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.cover_uncached(x)?);
        self.covers.lock().unwrap().insert(x.clone(), c.clone());
        Ok(c)
    }

    fn cover_uncached(&self, x: &AbOb) -> Result<KernelCover> {
        let base = self.base();
        let a = &x.carrier().pres;
        let b = &x.constraint_target().pres;
        let r = &x.window.rep;
        let sigma = self.window_witness(x)?;
        // top collects carrier points sent into the target relations;
        // rel sweeps in the relation sources on both sides
        let top = self.kernel_window(&base.copair(r, &base.neg(b))?)?;
        let rel = self.kernel_window(&base.copair(&base.zero_mor(&a.dom, &b.cod)?, b)?)?;
        let block = base.copair(
            &base.pair(a, &sigma)?,
            &base.pair(&base.zero_mor(&b.dom, &a.cod)?, &base.id(&b.dom)?)?,
        )?;
        let step = self.mor(&rel, &top, self.fp.mor(rel.carrier(), top.carrier(), block)?)?;
        let down = base.copair(&base.id(&a.cod)?, &base.zero_mor(&b.dom, &a.cod)?)?;
        let onto = self.mor(&top, x, self.fp.mor(top.carrier(), x.carrier(), down)?)?;
        Ok(KernelCover { top, step, onto })
    }

    fn win_tensor_ob(&self, x: &AbOb, y: &AbOb) -> Result<AbOb> {
        let t1 = self.fp.tensor_mor(&x.window, &self.fp.id(y.carrier())?)?;
        let t2 = self.fp.tensor_mor(&self.fp.id(x.carrier())?, &y.window)?;
        Ok(AbOb { window: self.fp.pair(&t1, &t2)? })
    }

    fn win_tensor_mor(&self, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        let dom = self.win_tensor_ob(&f.dom, &g.dom)?;
        let cod = self.win_tensor_ob(&f.cod, &g.cod)?;
        Ok(self.mk(&dom, &cod, self.fp.tensor_mor(&f.rep, &g.rep)?))
    }

    fn win_symmetry(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let dom = self.win_tensor_ob(x, y)?;
        let cod = self.win_tensor_ob(y, x)?;
        self.mor(&dom, &cod, self.fp.symmetry(x.carrier(), y.carrier())?)
    }

    fn tensor_slot(&self, x: &AbOb, y: &AbOb) -> Result<Arc<TensorSlot>> {
        let key = (x.clone(), y.clone());
        if let Some(s) = self.tensors.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.tensor_slot_uncached(x, y)?);
        self.tensors.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn tensor_slot_uncached(&self, x: &AbOb, y: &AbOb) -> Result<TensorSlot> {
        let cx = self.cover(x)?;
        let cy = self.cover(y)?;
        let mid = self.win_tensor_ob(&cx.top, &cy.top)?;
        // keep the unit literal, and keep plain kernels in their own shape
        let unit = self.unit_ob()?;
        if *x == unit && mid == cy.top {
            return Ok(TensorSlot { ob: y.clone(), settle: cy.onto.clone() });
        }
        if *y == unit && mid == cx.top {
            return Ok(TensorSlot { ob: x.clone(), settle: cx.onto.clone() });
        }
        if Self::plain_window(x) && Self::plain_window(y) {
            return Ok(TensorSlot { ob: mid.clone(), settle: self.id(&mid)? });
        }
        let left = self.win_tensor_mor(&cx.step, &self.id(&cy.top)?)?;
        let right = self.win_tensor_mor(&self.id(&cx.top)?, &cy.step)?;
        let src = self.biprod(&left.dom, &right.dom)?;
        let glued = self.mor(&src, &mid, self.fp.copair(&left.rep, &right.rep)?)?;
        let (ob0, settle0) = self.cokernel(&glued)?;
        let (ob, down) = self.shrink_ob(&ob0)?;
        let settle = self.compose(&settle0, &down)?;
        Ok(TensorSlot { ob, settle })
    }

    /// Re-present an object on pruned carriers; quotients of tensored
    /// covers arrive loaded with pinned generators, and every later hom
    /// computation pays for them.  The returned arrow is the iso onto
    /// the pruned presentation.
    fn shrink_ob(&self, x: &AbOb) -> Result<(AbOb, AbMor)> {
        let (_, zdown, zup) = self.fp.shrink(x.carrier())?;
        let (_, wdown, _) = self.fp.shrink(x.constraint_target())?;
        // the window is conjugated by the passage isos, so the square
        // defining validity commutes by construction
        let window = self.fp.compose(&self.fp.compose(&zup, &x.window)?, &wdown)?;
        let small = AbOb { window };
        if small == *x {
            return Ok((small, self.id(x)?));
        }
        let down = self.mk(x, &small, zdown);
        Ok((small, down))
    }

    pub fn tensor_ob(&self, x: &AbOb, y: &AbOb) -> Result<AbOb> {
        Ok(self.tensor_slot(x, y)?.ob.clone())
    }

    pub fn tensor_mor(&self, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        let dd = self.tensor_slot(&f.dom, &g.dom)?;
        let cd = self.tensor_slot(&f.cod, &g.cod)?;
        let mid = self.win_tensor_mor(&self.cover_lift(f)?, &self.cover_lift(g)?)?;
        self.push_through(&dd.settle, &self.compose(&mid, &cd.settle)?)
    }

    pub fn symmetry(&self, x: &AbOb, y: &AbOb) -> Result<AbMor> {
        let dd = self.tensor_slot(x, y)?;
        let cd = self.tensor_slot(y, x)?;
        let braid = self.win_symmetry(&self.cover(x)?.top, &self.cover(y)?.top)?;
        self.push_through(&dd.settle, &self.compose(&braid, &cd.settle)?)
    }

    /// transport an arrow up to the covering kernel windows
    fn cover_lift(&self, f: &AbMor) -> Result<AbMor> {
        let cd = self.cover(&f.dom)?;
        let cc = self.cover(&f.cod)?;
        self.pull_through(&cc.onto, &self.compose(&cd.onto, f)?)
    }

    /// solve `u;p = t`; covers admit such lifts from plain windows
    fn pull_through(&self, p: &AbMor, t: &AbMor) -> Result<AbMor> {
        if p.cod != t.cod {
            return Err(Error::EndpointMismatch("pulling through a cover".into()));
        }
        self.solve_factor(&t.dom, &p.dom, t, |u| self.compose(u, p))
    }

    /// solve `p;u = t` for a quotient arrow `p` whose kernel dies in `t`
    fn push_through(&self, p: &AbMor, t: &AbMor) -> Result<AbMor> {
        if p.dom != t.dom {
            return Err(Error::EndpointMismatch("pushing through a quotient".into()));
        }
        self.solve_factor(&p.cod, &t.cod, t, |u| self.compose(p, u))
    }

    fn solve_factor<F>(&self, from: &AbOb, to: &AbOb, t: &AbMor, side: F) -> Result<AbMor>
    where
        F: Fn(&AbMor) -> Result<AbMor>,
    {
        let ring = self.base().ring();
        let hu = self.hom(from, to)?;
        let ht = self.hom(&t.dom, &t.cod)?;
        let n = hu.module().gens;
        let mut rows = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = vec![ring.zero(); n];
            c[k] = ring.one();
            let gen = self.mor_from_coords(from, to, &hu, &c)?;
            rows.push(self.coords_of(&side(&gen)?)?);
        }
        let mat = if rows.is_empty() {
            Matrix::zero(ring.clone(), 0, ht.module().gens)
        } else {
            Matrix::from_rows(ring.clone(), rows)?
        };
        let rels = &ht.module().relations;
        let stacked = if rels.rows == 0 { mat } else { mat.vstack(rels)? };
        let target = Matrix::row_vector(ring, self.coords_of(t)?);
        let sol = crate::exactalg::solve_left(&stacked, &target)?.ok_or_else(|| {
            Error::InvalidArgument("no factorization across the cover".into())
        })?;
        let coords: Vec<Elem> = sol.row(0)[..n].to_vec();
        self.mor_from_coords(from, to, &hu, &coords)
    }

    /// kernel of tensoring a monomorphism by an object; nonzero values
    /// witness failure of flatness
    pub fn flatness_obstruction(&self, m: &AbMor, by: &AbOb) -> Result<AbOb> {
        if !self.is_mono(m)? {
            return Err(Error::NotMono("obstruction asks for a monomorphism".into()));
        }
        let spread = self.tensor_mor(&self.id(by)?, m)?;
        let (k, _) = self.kernel(&spread)?;
        Ok(k)
    }

    /// every object sits inside a quotient of an embedded base object
    pub fn subquotient_witness(&self, x: &AbOb) -> Result<SubquotientWitness> {
        let f = x.carrier().clone();
        let ambient = f.carrier().clone();
        let free = self.fp.from_base(&ambient)?;
        let mid = self.from_fp(&f)?;
        // quotient part: carried by the identity off the free presentation
        let reduce = self.fp.mor(&free, &f, self.base().id(&ambient)?)?;
        let onto = self.mk(&self.iota(&ambient)?, &mid, reduce);
        // subobject part: forget the window
        let into = self.mk(x, &mid, self.fp.id(x.carrier())?);
        Ok(SubquotientWitness { generator: ambient, mid, onto, into })
    }
}

/// An exhibition of an object as a subobject of a quotient of an
/// embedded base object.
pub struct SubquotientWitness {
    pub generator: Object,
    pub mid: AbOb,
    pub onto: AbMor,
    pub into: AbMor,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::matrix_cat::{matrix_cat, mor_from_matrix, rank_object};
    use crate::exactalg::Ring;

    fn scalar_mor(ab: &AbCat, n: i64) -> AbMor {
        let base = ab.base();
        let m = mor_from_matrix(base, &Matrix::from_i64(base.ring(), 1, 1, &[n])).unwrap();
        ab.iota_mor(&m).unwrap()
    }

    #[test]
    fn embedding_is_fully_faithful_on_free_objects() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let x = ab.iota(&rank_object(2)).unwrap();
        let y = ab.iota(&rank_object(3)).unwrap();
        let h = ab.hom(&x, &y).unwrap();
        let inv = h.module().invariants().unwrap();
        assert_eq!(inv, vec![base.ring().zero(); 6]);
    }

    #[test]
    fn homs_with_zero_object_vanish() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let x = ab.iota(&rank_object(2)).unwrap();
        let z = ab.zero_ob();
        assert!(ab.hom(&x, &z).unwrap().module().is_zero_module());
        assert!(ab.hom(&z, &x).unwrap().module().is_zero_module());
        assert!(ab.is_zero_ob(&z).unwrap());
    }

    #[test]
    fn kernel_and_cokernel_of_identity_vanish() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let x = ab.iota(&rank_object(2)).unwrap();
        let id = ab.id(&x).unwrap();
        let (k, _) = ab.kernel(&id).unwrap();
        let (q, _) = ab.cokernel(&id).unwrap();
        assert!(ab.is_zero_ob(&k).unwrap());
        assert!(ab.is_zero_ob(&q).unwrap());
        assert!(ab.is_iso(&id).unwrap());
    }

    #[test]
    fn doubling_on_integers_has_torsion_cokernel() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        // doubling picks up a formal kernel here, so it is not mono
        assert!(!ab.is_mono(&two).unwrap());
        assert!(!ab.is_epi(&two).unwrap());
        let (q, pi) = ab.cokernel(&two).unwrap();
        assert!(!ab.is_zero_ob(&q).unwrap());
        assert!(ab.is_epi(&pi).unwrap());
        // composite dies and global sections match the residue module
        assert!(ab.is_zero_mor(&ab.compose(&two, &pi).unwrap()).unwrap());
        let unit = ab.unit_ob().unwrap();
        let sections = ab.hom(&unit, &q).unwrap();
        assert_eq!(sections.module().size().unwrap(), Some(2));
        // the formal kernel has no sections yet carries nontrivial endomorphisms
        let (k, incl) = ab.kernel(&two).unwrap();
        assert!(!ab.is_zero_ob(&k).unwrap());
        assert!(ab.is_mono(&incl).unwrap());
        assert!(ab.hom(&unit, &k).unwrap().module().is_zero_module());
        assert_eq!(ab.hom(&k, &k).unwrap().module().size().unwrap(), Some(2));
    }

    #[test]
    fn cokernel_universal_property_for_doubling() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (_, pi) = ab.cokernel(&two).unwrap();
        // reduce the free generator into the 2-torsion presentation
        let fp = ab.fp();
        let tors = FpOb {
            pres: mor_from_matrix(&base, &Matrix::from_i64(base.ring(), 1, 1, &[2])).unwrap(),
        };
        let target = ab.from_fp(&tors).unwrap();
        let red = fp
            .mor(
                ab.unit_ob().unwrap().carrier(),
                &tors,
                base.id(&rank_object(1)).unwrap(),
            )
            .unwrap();
        let n = ab.mor(&two.cod, &target, red).unwrap();
        assert!(ab.is_zero_mor(&ab.compose(&two, &n).unwrap()).unwrap());
        let u = ab.cokernel_factor(&two, &pi, &n).unwrap();
        assert!(ab.mor_eq(&ab.compose(&pi, &u).unwrap(), &n).unwrap());
    }

    #[test]
    fn kernel_of_row_vector_over_f2() {
        let base = matrix_cat(Ring::zmod(2).unwrap());
        let ab = AbCat::new(&base);
        let row =
            mor_from_matrix(&base, &Matrix::from_i64(base.ring(), 2, 1, &[1, 1])).unwrap();
        let m = ab.iota_mor(&row).unwrap();
        assert!(ab.is_epi(&m).unwrap());
        let (k, incl) = ab.kernel(&m).unwrap();
        assert!(ab.is_mono(&incl).unwrap());
        assert!(!ab.is_zero_ob(&k).unwrap());
        // one-dimensional kernel: sections and endomorphisms both F2
        let unit = ab.unit_ob().unwrap();
        assert_eq!(ab.hom(&unit, &k).unwrap().module().size().unwrap(), Some(2));
        assert_eq!(ab.hom(&k, &k).unwrap().module().size().unwrap(), Some(2));
    }

    #[test]
    fn image_factorization_of_doubling() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (im, onto, incl) = ab.image_factorization(&two).unwrap();
        assert!(ab.is_epi(&onto).unwrap());
        assert!(ab.is_mono(&incl).unwrap());
        assert!(ab.mor_eq(&ab.compose(&onto, &incl).unwrap(), &two).unwrap());
        // doubling is not mono here, so the epi part is a proper quotient
        assert!(!ab.is_iso(&onto).unwrap());
        let unit = ab.unit_ob().unwrap();
        let sections = ab.hom(&unit, &im).unwrap();
        assert_eq!(sections.module().invariants().unwrap(), vec![base.ring().zero()]);
        // a split mono factors with an invertible epi part
        let x = ab.iota(&rank_object(1)).unwrap();
        let j = ab.inj1(&x, &x).unwrap();
        assert!(ab.is_mono(&j).unwrap());
        let (_, onto2, incl2) = ab.image_factorization(&j).unwrap();
        assert!(ab.is_iso(&onto2).unwrap());
        assert!(ab.is_mono(&incl2).unwrap());
    }

    #[test]
    fn torsion_tensor_torsion_over_z4() {
        let base = matrix_cat(Ring::zmod(4).unwrap());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (q, pi) = ab.cokernel(&two).unwrap();
        let t = ab.tensor_ob(&q, &q).unwrap();
        let unit = ab.unit_ob().unwrap();
        assert_eq!(ab.hom(&unit, &t).unwrap().module().size().unwrap(), Some(2));
        assert_eq!(ab.hom(&t, &t).unwrap().module().size().unwrap(), Some(2));
        // the quotient is idempotent for the tensor: 1 (x) pi hits everything
        // and kills nothing that survives in the product
        let fold = ab.tensor_mor(&ab.id(&q).unwrap(), &pi).unwrap();
        assert!(ab.is_iso(&fold).unwrap());
    }

    #[test]
    fn tensor_right_exactness_on_doubling_over_z4() {
        let base = matrix_cat(Ring::zmod(4).unwrap());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (q, pi) = ab.cokernel(&two).unwrap();
        let spread = ab.tensor_mor(&ab.id(&q).unwrap(), &two).unwrap();
        let (qq, pp) = ab.cokernel(&spread).unwrap();
        let after = ab.tensor_mor(&ab.id(&q).unwrap(), &pi).unwrap();
        assert!(ab.is_zero_mor(&ab.compose(&spread, &after).unwrap()).unwrap());
        let u = ab.cokernel_factor(&spread, &pp, &after).unwrap();
        assert!(ab.is_iso(&u).unwrap());
        let unit = ab.unit_ob().unwrap();
        assert_eq!(ab.hom(&unit, &qq).unwrap().module().size().unwrap(), Some(2));
    }

    #[test]
    fn flatness_obstruction_detects_torsion_over_z4() {
        let base = matrix_cat(Ring::zmod(4).unwrap());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (q, pi) = ab.cokernel(&two).unwrap();
        // doubling is not mono, so asking for its obstruction is refused
        assert!(matches!(
            ab.flatness_obstruction(&two, &q),
            Err(Error::NotMono(_))
        ));
        // reducing out of the quotient looks injective pointwise but is
        // not mono here: the whole phantom kernel of pi maps into it
        let reduce = ab.cokernel_factor(&two, &pi, &two).unwrap();
        assert!(!ab.is_mono(&reduce).unwrap());
        assert!(matches!(
            ab.flatness_obstruction(&reduce, &q),
            Err(Error::NotMono(_))
        ));
        // the 2-torsion inclusion is mono, yet tensoring with the
        // quotient kills it: a unit-sized obstruction survives
        let (k, incl) = ab.kernel(&two).unwrap();
        assert!(!ab.is_zero_ob(&k).unwrap());
        assert!(ab.is_mono(&incl).unwrap());
        let ob = ab.flatness_obstruction(&incl, &q).unwrap();
        assert!(!ab.is_zero_ob(&ob).unwrap());
        let unit = ab.unit_ob().unwrap();
        assert_eq!(ab.hom(&unit, &ob).unwrap().module().size().unwrap(), Some(2));
        // against the unit nothing happens
        let ob0 = ab.flatness_obstruction(&incl, &unit).unwrap();
        assert!(ab.is_zero_ob(&ob0).unwrap());
        // left exactness fails where it must: tensoring the non-mono map
        let spread = ab.tensor_mor(&ab.id(&q).unwrap(), &two).unwrap();
        let (bad, _) = ab.kernel(&spread).unwrap();
        assert_eq!(ab.hom(&unit, &bad).unwrap().module().size().unwrap(), Some(2));
    }

    #[test]
    fn subquotient_witness_roundtrip() {
        let base = matrix_cat(Ring::integers());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (q, _) = ab.cokernel(&two).unwrap();
        let w = ab.subquotient_witness(&q).unwrap();
        assert!(ab.is_epi(&w.onto).unwrap());
        assert!(ab.is_mono(&w.into).unwrap());
        // iota objects witness themselves up to iso
        let x = ab.iota(&rank_object(2)).unwrap();
        let wx = ab.subquotient_witness(&x).unwrap();
        assert!(ab.is_iso(&wx.into).unwrap());
        assert!(ab.is_iso(&wx.onto).unwrap());
    }

    #[test]
    fn tensor_unit_strict_and_symmetry_involutive() {
        let base = matrix_cat(Ring::zmod(4).unwrap());
        let ab = AbCat::new(&base);
        let two = scalar_mor(&ab, 2);
        let (q, _) = ab.cokernel(&two).unwrap();
        let unit = ab.unit_ob().unwrap();
        assert_eq!(ab.tensor_ob(&q, &unit).unwrap(), q);
        assert_eq!(ab.tensor_ob(&unit, &q).unwrap(), q);
        // the embedding is strictly multiplicative on plain objects
        let a2 = ab.iota(&rank_object(2)).unwrap();
        let a3 = ab.iota(&rank_object(3)).unwrap();
        assert_eq!(ab.tensor_ob(&a2, &a3).unwrap(), ab.iota(&rank_object(6)).unwrap());
        let s = ab.symmetry(&q, &q).unwrap();
        let twice = ab.compose(&s, &s).unwrap();
        let idt = ab.id(&ab.tensor_ob(&q, &q).unwrap()).unwrap();
        assert!(ab.mor_eq(&twice, &idt).unwrap());
    }
}
