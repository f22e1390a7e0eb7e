//! Additive symmetric tensor categories with finitely presented hom
//! modules.
//!
//! An object is a formal biproduct of atoms; a morphism is a block grid
//! of coordinate rows, one row per atom pair, relative to that pair's
//! presented hom module.  Instances supply the atom-level structure and
//! everything object-level (biproduct assembly, tensor distribution,
//! symmetry, duals, traces) is derived here once.

pub mod karoubi;
pub mod matrix_cat;
pub mod partition;
pub mod quotient;
pub mod rep;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::exactalg::{solve_left, Elem, FpModule, Matrix, ModMap, Ring};
use crate::{Error, Result};

pub use karoubi::IdemAtom;
pub use rep::{Group, RepData};

/// Indecomposable-as-presented building block of an object.  Equality is
/// structural, so separately computed tensor atoms coincide exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// the rank-one object of a free matrix category
    MatUnit,
    /// an explicit finite group representation
    Rep(Arc<RepData>),
    /// a partition-diagram object on this many points
    Points(u32),
    /// an image object of an idempotent in a base category
    Idem(Arc<IdemAtom>),
}

/// Formal biproduct of atoms; the empty vector is the zero object.
pub type Object = Vec<Atom>;

/// Block grid of coordinate rows: `blocks[i][j]` lives in the presented
/// hom module of `(dom[i], cod[j])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub dom: Object,
    pub cod: Object,
    pub blocks: Vec<Vec<Vec<Elem>>>,
}

/// Atom-level structure an instance must provide.  All object-level
/// operations are derived in [`Cat`].
pub trait TensorCat: Send + Sync {
    fn ring(&self) -> Ring;
    fn label(&self) -> String;
    fn unit_atom(&self) -> Atom;
    /// generating atoms exposed to object pools
    fn base_atoms(&self) -> Vec<Atom>;
    fn atom_label(&self, a: &Atom) -> String;
    fn validate_atom(&self, a: &Atom) -> Result<()>;
    /// presented module of morphisms between two atoms
    fn hom(&self, a: &Atom, b: &Atom) -> Result<FpModule>;
    fn id_coords(&self, a: &Atom) -> Result<Vec<Elem>>;
    fn compose_coords(
        &self,
        a: &Atom,
        b: &Atom,
        c: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>>;
    /// atoms are closed under tensor, which keeps the product strictly
    /// associative and strictly unital
    fn tensor_atom(&self, a: &Atom, b: &Atom) -> Result<Atom>;
    fn tensor_coords(
        &self,
        a1: &Atom,
        b1: &Atom,
        a2: &Atom,
        b2: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>>;
    /// the braiding on a pair of atoms, in the coordinates of
    /// `hom(a tensor b, b tensor a)`
    fn symmetry_coords(&self, a: &Atom, b: &Atom) -> Result<Vec<Elem>>;
    fn dual_atom(&self, a: &Atom) -> Result<Atom>;
    /// pairing `dual(a) tensor a -> unit`
    fn ev_coords(&self, a: &Atom) -> Result<Vec<Elem>>;
    /// copairing `unit -> a tensor dual(a)`
    fn coev_coords(&self, a: &Atom) -> Result<Vec<Elem>>;
    /// wrapper categories downcast through this to reach their internals
    fn as_any(&self) -> &dyn std::any::Any;
}

type HomKey = (Atom, Atom);

/// An instance together with shared hom caches and every derived
/// object-level operation.
#[derive(Clone)]
pub struct Cat {
    inner: Arc<dyn TensorCat>,
    hom_cache: Arc<Mutex<HashMap<HomKey, Arc<FpModule>>>>,
}

impl Cat {
    pub fn new(inner: Arc<dyn TensorCat>) -> Self {
        Cat { inner, hom_cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn ring(&self) -> Ring {
        self.inner.ring()
    }

    /// The underlying instance, for wrapper categories that delegate
    /// atom-level coordinates.
    pub fn instance(&self) -> &Arc<dyn TensorCat> {
        &self.inner
    }

    pub fn label(&self) -> String {
        self.inner.label()
    }

    pub fn base_atoms(&self) -> Vec<Atom> {
        self.inner.base_atoms()
    }

    pub fn atom_label(&self, a: &Atom) -> String {
        self.inner.atom_label(a)
    }

    pub fn unit(&self) -> Object {
        vec![self.inner.unit_atom()]
    }

    pub fn zero_object(&self) -> Object {
        Vec::new()
    }

    pub fn object_label(&self, x: &Object) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter().map(|a| self.atom_label(a)).collect::<Vec<_>>().join(" (+) ")
    }

    pub fn atom_hom(&self, a: &Atom, b: &Atom) -> Result<Arc<FpModule>> {
        let key = (a.clone(), b.clone());
        if let Some(m) = self.hom_cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.inner.hom(a, b)?);
        self.hom_cache.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    // ----- morphism construction -----

    pub fn zero_mor(&self, dom: &Object, cod: &Object) -> Result<Mor> {
        let mut blocks = Vec::with_capacity(dom.len());
        for a in dom {
            let mut row = Vec::with_capacity(cod.len());
            for b in cod {
                let h = self.atom_hom(a, b)?;
                row.push(vec![self.ring().zero(); h.gens]);
            }
            blocks.push(row);
        }
        Ok(Mor { dom: dom.clone(), cod: cod.clone(), blocks })
    }

    pub fn id(&self, x: &Object) -> Result<Mor> {
        let mut m = self.zero_mor(x, x)?;
        for (i, a) in x.iter().enumerate() {
            m.blocks[i][i] = self.inner.id_coords(a)?;
        }
        Ok(m)
    }

    /// Injection of the `k`-th atom summand.
    pub fn inj(&self, x: &Object, k: usize) -> Result<Mor> {
        let mut m = self.zero_mor(&vec![x[k].clone()], x)?;
        m.blocks[0][k] = self.inner.id_coords(&x[k])?;
        Ok(m)
    }

    /// Projection onto the `k`-th atom summand.
    pub fn proj(&self, x: &Object, k: usize) -> Result<Mor> {
        let mut m = self.zero_mor(x, &vec![x[k].clone()])?;
        m.blocks[k][0] = self.inner.id_coords(&x[k])?;
        Ok(m)
    }

    pub fn add(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::EndpointMismatch("morphism addition".into()));
        }
        let ring = self.ring();
        let mut out = f.clone();
        for i in 0..f.blocks.len() {
            for j in 0..f.blocks[i].len() {
                for (x, y) in out.blocks[i][j].iter_mut().zip(&g.blocks[i][j]) {
                    *x = ring.add(x, y);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self, f: &Mor) -> Mor {
        let ring = self.ring();
        let mut out = f.clone();
        for row in out.blocks.iter_mut() {
            for cell in row.iter_mut() {
                for x in cell.iter_mut() {
                    *x = ring.neg(x);
                }
            }
        }
        out
    }

    pub fn sub(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        self.add(f, &self.neg(g))
    }

    pub fn smul(&self, c: &Elem, f: &Mor) -> Mor {
        let ring = self.ring();
        let mut out = f.clone();
        for row in out.blocks.iter_mut() {
            for cell in row.iter_mut() {
                for x in cell.iter_mut() {
                    *x = ring.mul(c, x);
                }
            }
        }
        out
    }

    /// `f` then `g`.
    /// `<f, g>`: shared domain, concatenated codomains.
    pub fn pair(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        if f.dom != g.dom {
            return Err(Error::EndpointMismatch("pair domains differ".into()));
        }
        let mut cod = f.cod.clone();
        cod.extend(g.cod.iter().cloned());
        let mut blocks = Vec::with_capacity(f.dom.len());
        for i in 0..f.dom.len() {
            let mut row = f.blocks[i].clone();
            row.extend(g.blocks[i].iter().cloned());
            blocks.push(row);
        }
        Ok(Mor { dom: f.dom.clone(), cod, blocks })
    }

    /// `[f; g]`: concatenated domains, shared codomain.
    pub fn copair(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        if f.cod != g.cod {
            return Err(Error::EndpointMismatch("copair codomains differ".into()));
        }
        let mut dom = f.dom.clone();
        dom.extend(g.dom.iter().cloned());
        let mut blocks = f.blocks.clone();
        blocks.extend(g.blocks.iter().cloned());
        Ok(Mor { dom, cod: f.cod.clone(), blocks })
    }

    /// `f (+) g` acting summand-wise on concatenated endpoints.
    pub fn block_diag(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        let top = self.pair(f, &self.zero_mor(&f.dom, &g.cod)?)?;
        let bot = self.pair(&self.zero_mor(&g.dom, &f.cod)?, g)?;
        self.copair(&top, &bot)
    }

    pub fn compose(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        if f.cod != g.dom {
            return Err(Error::EndpointMismatch(format!(
                "composition through {} vs {}",
                self.object_label(&f.cod),
                self.object_label(&g.dom)
            )));
        }
        let ring = self.ring();
        let mut out = self.zero_mor(&f.dom, &g.cod)?;
        for (i, a) in f.dom.iter().enumerate() {
            for (k, c) in g.cod.iter().enumerate() {
                let mut acc = out.blocks[i][k].clone();
                for (j, b) in f.cod.iter().enumerate() {
                    let term =
                        self.inner.compose_coords(a, b, c, &f.blocks[i][j], &g.blocks[j][k])?;
                    for (x, y) in acc.iter_mut().zip(&term) {
                        *x = ring.add(x, y);
                    }
                }
                out.blocks[i][k] = acc;
            }
        }
        Ok(out)
    }

    pub fn is_zero_mor(&self, f: &Mor) -> Result<bool> {
        for (i, a) in f.dom.iter().enumerate() {
            for (j, b) in f.cod.iter().enumerate() {
                let h = self.atom_hom(a, b)?;
                if !h.elem_is_zero(&f.blocks[i][j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn mor_eq(&self, f: &Mor, g: &Mor) -> Result<bool> {
        if f.dom != g.dom || f.cod != g.cod {
            return Ok(false);
        }
        self.is_zero_mor(&self.sub(f, g)?)
    }

    /// Canonical coordinates blockwise; equal morphisms get identical
    /// canonical forms, which also makes raw hashing sound.
    pub fn mor_canon(&self, f: &Mor) -> Result<Mor> {
        let mut out = f.clone();
        for (i, a) in f.dom.iter().enumerate() {
            for (j, b) in f.cod.iter().enumerate() {
                let h = self.atom_hom(a, b)?;
                out.blocks[i][j] = h.canon_elem(&f.blocks[i][j]);
            }
        }
        Ok(out)
    }

    // ----- tensor structure -----

    pub fn tensor_ob(&self, x: &Object, y: &Object) -> Result<Object> {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for a in x {
            for b in y {
                out.push(self.inner.tensor_atom(a, b)?);
            }
        }
        Ok(out)
    }

    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        let dom = self.tensor_ob(&f.dom, &g.dom)?;
        let cod = self.tensor_ob(&f.cod, &g.cod)?;
        let mut out = self.zero_mor(&dom, &cod)?;
        let (nd2, nc2) = (g.dom.len(), g.cod.len());
        for (i1, a1) in f.dom.iter().enumerate() {
            for (j1, b1) in f.cod.iter().enumerate() {
                for (i2, a2) in g.dom.iter().enumerate() {
                    for (j2, b2) in g.cod.iter().enumerate() {
                        let coords = self.inner.tensor_coords(
                            a1,
                            b1,
                            a2,
                            b2,
                            &f.blocks[i1][j1],
                            &g.blocks[i2][j2],
                        )?;
                        out.blocks[i1 * nd2 + i2][j1 * nc2 + j2] = coords;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The braiding `x tensor y -> y tensor x`.
    pub fn symmetry(&self, x: &Object, y: &Object) -> Result<Mor> {
        let dom = self.tensor_ob(x, y)?;
        let cod = self.tensor_ob(y, x)?;
        let mut out = self.zero_mor(&dom, &cod)?;
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out.blocks[i * y.len() + j][j * x.len() + i] =
                    self.inner.symmetry_coords(a, b)?;
            }
        }
        Ok(out)
    }

    // ----- duality -----

    pub fn dual_ob(&self, x: &Object) -> Result<Object> {
        x.iter().map(|a| self.inner.dual_atom(a)).collect()
    }

    /// `dual(x) tensor x -> unit`, pairing matching summands.
    pub fn ev(&self, x: &Object) -> Result<Mor> {
        let dx = self.dual_ob(x)?;
        let dom = self.tensor_ob(&dx, x)?;
        let mut out = self.zero_mor(&dom, &self.unit())?;
        for (i, a) in x.iter().enumerate() {
            out.blocks[i * x.len() + i][0] = self.inner.ev_coords(a)?;
        }
        Ok(out)
    }

    /// `unit -> x tensor dual(x)`.
    pub fn coev(&self, x: &Object) -> Result<Mor> {
        let dx = self.dual_ob(x)?;
        let cod = self.tensor_ob(x, &dx)?;
        let mut out = self.zero_mor(&self.unit(), &cod)?;
        for (i, a) in x.iter().enumerate() {
            out.blocks[0][i * x.len() + i] = self.inner.coev_coords(a)?;
        }
        Ok(out)
    }

    /// Transpose along the duality: `dual(cod) -> dual(dom)` built from
    /// evaluation and coevaluation alone.
    pub fn dual_mor(&self, f: &Mor) -> Result<Mor> {
        let dx = self.dual_ob(&f.dom)?;
        let dy = self.dual_ob(&f.cod)?;
        let idy = self.id(&dy)?;
        let idx = self.id(&dx)?;
        // dual(cod) = dual(cod) (x) unit -> dual(cod) (x) dom (x) dual(dom)
        let step1 = self.tensor_mor(&idy, &self.coev(&f.dom)?)?;
        // apply f in the middle
        let step2 = self.tensor_mor(&idy, &self.tensor_mor(f, &idx)?)?;
        // pair off: dual(cod) (x) cod (x) dual(dom) -> dual(dom)
        let step3 = self.tensor_mor(&self.ev(&f.cod)?, &idx)?;
        self.compose(&self.compose(&step1, &step2)?, &step3)
    }

    /// Categorical trace of an endomorphism as a unit endomorphism.
    pub fn trace_mor(&self, f: &Mor) -> Result<Mor> {
        if f.dom != f.cod {
            return Err(Error::EndpointMismatch("trace of a non-endomorphism".into()));
        }
        let x = &f.dom;
        let dx = self.dual_ob(x)?;
        let idd = self.id(&dx)?;
        let m1 = self.coev(x)?;
        let m2 = self.tensor_mor(f, &idd)?;
        let m3 = self.symmetry(x, &dx)?;
        let m4 = self.ev(x)?;
        let t = self.compose(&self.compose(&self.compose(&m1, &m2)?, &m3)?, &m4)?;
        Ok(t)
    }

    /// Scalar coefficient of a unit endomorphism against the unit identity.
    pub fn scalar_of(&self, m: &Mor) -> Result<Elem> {
        let u = self.unit();
        if m.dom != u || m.cod != u {
            return Err(Error::EndpointMismatch("scalar of a non-unit morphism".into()));
        }
        let h = self.atom_hom(&u[0], &u[0])?;
        let ring = self.ring();
        let idc = self.inner.id_coords(&u[0])?;
        let mut rows = vec![idc];
        for k in 0..h.relations.rows {
            rows.push(h.relations.row(k));
        }
        let a = Matrix::from_rows(ring.clone(), rows)?;
        let b = Matrix::row_vector(ring.clone(), m.blocks[0][0].clone());
        match solve_left(&a, &b)? {
            Some(x) => Ok(x.at(0, 0).clone()),
            None => Err(Error::InvalidInstance(
                "unit endomorphism is not a multiple of the identity".into(),
            )),
        }
    }

    pub fn trace(&self, f: &Mor) -> Result<Elem> {
        let t = self.trace_mor(f)?;
        self.scalar_of(&t)
    }

    // ----- flat hom presentations -----

    /// The whole hom module of an object pair as one presentation, with
    /// block offsets into the flat generator list.
    pub fn hom_flat(&self, x: &Object, y: &Object) -> Result<FlatHom> {
        let ring = self.ring();
        let mut offsets = vec![vec![0usize; y.len()]; x.len()];
        let mut lens = vec![vec![0usize; y.len()]; x.len()];
        let mut total = FpModule::free(ring, 0);
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                let h = self.atom_hom(a, b)?;
                offsets[i][j] = total.gens;
                lens[i][j] = h.gens;
                total = total.direct_sum(&h)?;
            }
        }
        Ok(FlatHom { dom: x.clone(), cod: y.clone(), module: total, offsets, lens })
    }

    pub fn mor_to_flat(&self, fh: &FlatHom, f: &Mor) -> Vec<Elem> {
        let mut out = vec![self.ring().zero(); fh.module.gens];
        for i in 0..f.blocks.len() {
            for j in 0..f.blocks[i].len() {
                let off = fh.offsets[i][j];
                for (k, e) in f.blocks[i][j].iter().enumerate() {
                    out[off + k] = e.clone();
                }
            }
        }
        out
    }

    pub fn mor_from_flat(&self, fh: &FlatHom, coords: &[Elem]) -> Result<Mor> {
        let mut m = self.zero_mor(&fh.dom, &fh.cod)?;
        for i in 0..fh.dom.len() {
            for j in 0..fh.cod.len() {
                let off = fh.offsets[i][j];
                let len = fh.lens[i][j];
                m.blocks[i][j] = coords[off..off + len].to_vec();
            }
        }
        Ok(m)
    }

    /// A linear operation on morphisms as a map of flat hom modules,
    /// built from its values on flat generators.
    pub fn map_on_hom<F>(
        &self,
        dom_pair: (&Object, &Object),
        cod_pair: (&Object, &Object),
        op: F,
    ) -> Result<(FlatHom, FlatHom, ModMap)>
    where
        F: Fn(&Mor) -> Result<Mor>,
    {
        let fh_dom = self.hom_flat(dom_pair.0, dom_pair.1)?;
        let fh_cod = self.hom_flat(cod_pair.0, cod_pair.1)?;
        let ring = self.ring();
        let mut rows = Vec::with_capacity(fh_dom.module.gens);
        for g in 0..fh_dom.module.gens {
            let mut coords = vec![ring.zero(); fh_dom.module.gens];
            coords[g] = ring.one();
            let gen = self.mor_from_flat(&fh_dom, &coords)?;
            let img = op(&gen)?;
            if img.dom != *cod_pair.0 || img.cod != *cod_pair.1 {
                return Err(Error::EndpointMismatch("map_on_hom image endpoints".into()));
            }
            rows.push(self.mor_to_flat(&fh_cod, &img));
        }
        let mat = if rows.is_empty() {
            Matrix::zero(ring, 0, fh_cod.module.gens)
        } else {
            Matrix::from_rows(ring, rows)?
        };
        let map = ModMap::new(fh_dom.module.clone(), fh_cod.module.clone(), mat)?;
        Ok((fh_dom, fh_cod, map))
    }
}

/// Flat presentation of an object pair's hom module.
#[derive(Clone, Debug)]
pub struct FlatHom {
    pub dom: Object,
    pub cod: Object,
    pub module: FpModule,
    pub offsets: Vec<Vec<usize>>,
    pub lens: Vec<Vec<usize>>,
}
