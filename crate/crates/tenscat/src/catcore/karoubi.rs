//! Idempotent splitting: atoms are pairs of a base object and an
//! idempotent endomorphism, morphisms are base morphisms absorbed by the
//! idempotents on both sides.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Atom, Cat, FlatHom, Mor, Object, TensorCat};
use crate::exactalg::{solve_left, Elem, FpModule, Matrix, Ring};
use crate::{Error, Result};

/// Image object of an idempotent; the stored morphism is kept in
/// canonical coordinates so that structural equality is sound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdemAtom {
    pub object: Object,
    pub idem: Mor,
}

struct KHom {
    module: FpModule,
    /// rows lift hom generators to flat base coordinates
    lifts: Matrix,
    flat: FlatHom,
}

pub struct KaroubiCat {
    base: Cat,
    homs: Mutex<HashMap<(Atom, Atom), Arc<KHom>>>,
}

pub fn karoubi_cat(base: &Cat) -> Cat {
    Cat::new(Arc::new(KaroubiCat { base: base.clone(), homs: Mutex::new(HashMap::new()) }))
}

/// Validate idempotency and wrap as an atom of the split category.
pub fn karoubi_atom(base: &Cat, object: &Object, idem: &Mor) -> Result<Atom> {
    if idem.dom != *object || idem.cod != *object {
        return Err(Error::EndpointMismatch("idempotent endpoints".into()));
    }
    let sq = base.compose(idem, idem)?;
    if !base.mor_eq(&sq, idem)? {
        return Err(Error::NotIdempotent(format!(
            "endomorphism of {} does not square to itself",
            base.object_label(object)
        )));
    }
    let canon = base.mor_canon(idem)?;
    Ok(Atom::Idem(Arc::new(IdemAtom { object: object.clone(), idem: canon })))
}

/// A base object embedded with identity idempotents, atom by atom.
pub fn embed_object(base: &Cat, x: &Object) -> Result<Object> {
    x.iter()
        .map(|a| {
            let ob = vec![a.clone()];
            let id = base.id(&ob)?;
            karoubi_atom(base, &ob, &id)
        })
        .collect()
}

/// A base morphism between embedded objects.
pub fn embed_mor(kcat: &Cat, base: &Cat, f: &Mor) -> Result<Mor> {
    let dom = embed_object(base, &f.dom)?;
    let cod = embed_object(base, &f.cod)?;
    let inner = kcat.instance();
    let mut out = kcat.zero_mor(&dom, &cod)?;
    for (i, da) in dom.iter().enumerate() {
        for (j, ca) in cod.iter().enumerate() {
            // single-block base morphism between the underlying atoms
            let bsrc = vec![f.dom[i].clone()];
            let btgt = vec![f.cod[j].clone()];
            let mut cell = base.zero_mor(&bsrc, &btgt)?;
            cell.blocks[0][0] = f.blocks[i][j].clone();
            let k = kcat_inner(inner)?;
            out.blocks[i][j] = k.express(da, ca, &cell)?;
        }
    }
    Ok(out)
}

fn kcat_inner(inner: &Arc<dyn TensorCat>) -> Result<&KaroubiCat> {
    inner
        .as_any()
        .downcast_ref::<KaroubiCat>()
        .ok_or_else(|| Error::InvalidInstance("expected a split category".into()))
}

/// Split an idempotent endomorphism inside the splitting: the image
/// atom with its inclusion and projection.  `compose(incl, proj)` is
/// the identity of the part and `compose(proj, incl)` recovers `e`.
pub fn split_idempotent(kcat: &Cat, e: &Mor) -> Result<(Atom, Mor, Mor)> {
    if e.dom != e.cod {
        return Err(Error::EndpointMismatch("idempotent endpoints".into()));
    }
    let sq = kcat.compose(e, e)?;
    if !kcat.mor_eq(&sq, e)? {
        return Err(Error::NotIdempotent("splitting a non-idempotent".into()));
    }
    let inner = kcat_inner(kcat.instance())?;
    let base = inner.base().clone();
    let x = &e.dom;
    // flatten the whole object down to one base object
    let mut flat: Object = Vec::new();
    let mut offs = Vec::new();
    for a in x {
        let ia = inner.as_idem(a)?;
        offs.push(flat.len());
        flat.extend(ia.object.iter().cloned());
    }
    // base grid of e; entries are already absorbed representatives
    let mut eb = base.zero_mor(&flat, &flat)?;
    for (i, a) in x.iter().enumerate() {
        for (j, b) in x.iter().enumerate() {
            let cell = inner.realize(a, b, &e.blocks[i][j])?;
            for (r, row) in cell.blocks.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    eb.blocks[offs[i] + r][offs[j] + c] = v.clone();
                }
            }
        }
    }
    let atom = karoubi_atom(&base, &flat, &eb)?;
    let part: Object = vec![atom.clone()];
    let mut incl = kcat.zero_mor(&part, x)?;
    let mut proj = kcat.zero_mor(x, &part)?;
    for (i, a) in x.iter().enumerate() {
        let ia = inner.as_idem(a)?;
        let pr = block_proj(&base, &flat, offs[i], &ia.object)?;
        let inj = block_inj(&base, &flat, offs[i], &ia.object)?;
        incl.blocks[0][i] = inner.express(&atom, a, &base.compose(&eb, &pr)?)?;
        proj.blocks[i][0] = inner.express(a, &atom, &base.compose(&inj, &eb)?)?;
    }
    Ok((atom, incl, proj))
}

fn block_proj(base: &Cat, whole: &Object, off: usize, part: &Object) -> Result<Mor> {
    let mut m = base.zero_mor(whole, part)?;
    let idp = base.id(part)?;
    for c in 0..part.len() {
        m.blocks[off + c][c] = idp.blocks[c][c].clone();
    }
    Ok(m)
}

fn block_inj(base: &Cat, whole: &Object, off: usize, part: &Object) -> Result<Mor> {
    let mut m = base.zero_mor(part, whole)?;
    let idp = base.id(part)?;
    for c in 0..part.len() {
        m.blocks[c][off + c] = idp.blocks[c][c].clone();
    }
    Ok(m)
}

impl KaroubiCat {
    pub fn base(&self) -> &Cat {
        &self.base
    }

    fn as_idem<'a>(&self, a: &'a Atom) -> Result<&'a Arc<IdemAtom>> {
        match a {
            Atom::Idem(i) => Ok(i),
            other => Err(Error::InvalidInstance(format!(
                "split category got foreign atom {other:?}"
            ))),
        }
    }

    fn khom(&self, a: &Atom, b: &Atom) -> Result<Arc<KHom>> {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.lock().unwrap().get(&key) {
            return Ok(h.clone());
        }
        let (ia, ib) = (self.as_idem(a)?, self.as_idem(b)?);
        let ring = self.base.ring();
        let (fh, _, lmap) = self.base.map_on_hom(
            (&ia.object, &ib.object),
            (&ia.object, &ib.object),
            |f| self.base.compose(&ia.idem, f),
        )?;
        let (_, _, rmap) = self.base.map_on_hom(
            (&ia.object, &ib.object),
            (&ia.object, &ib.object),
            |f| self.base.compose(f, &ib.idem),
        )?;
        let eye = Matrix::identity(ring.clone(), fh.module.gens);
        let both = lmap.mat.sub(&eye)?.hstack(&rmap.mat.sub(&eye)?)?;
        let cod = fh.module.direct_sum(&fh.module)?;
        let map = crate::exactalg::ModMap::new(fh.module.clone(), cod, both)?;
        let (module, incl) = map.kernel()?;
        let h = Arc::new(KHom { module, lifts: incl.mat, flat: fh });
        self.homs.lock().unwrap().insert(key, h.clone());
        Ok(h)
    }

    fn realize(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
        let h = self.khom(a, b)?;
        let ring = self.base.ring();
        let mut flat = vec![ring.zero(); h.flat.module.gens];
        for (k, c) in coords.iter().enumerate() {
            for j in 0..flat.len() {
                let t = ring.mul(c, h.lifts.at(k, j));
                flat[j] = ring.add(&flat[j], &t);
            }
        }
        self.base.mor_from_flat(&h.flat, &flat)
    }

    fn express(&self, a: &Atom, b: &Atom, m: &Mor) -> Result<Vec<Elem>> {
        let h = self.khom(a, b)?;
        let ring = self.base.ring();
        let flat = self.base.mor_to_flat(&h.flat, m);
        if h.module.gens == 0 {
            if h.flat.module.elem_is_zero(&flat) {
                return Ok(Vec::new());
            }
            return Err(Error::InvalidInstance("morphism misses the split hom".into()));
        }
        let stacked = if h.flat.module.relations.rows == 0 {
            h.lifts.clone()
        } else {
            h.lifts.vstack(&h.flat.module.relations)?
        };
        let target = Matrix::row_vector(ring, flat);
        match solve_left(&stacked, &target)? {
            Some(x) => Ok(x.row(0)[..h.module.gens].to_vec()),
            None => Err(Error::InvalidInstance("morphism misses the split hom".into())),
        }
    }
}

impl TensorCat for KaroubiCat {
    fn ring(&self) -> Ring {
        self.base.ring()
    }

    fn label(&self) -> String {
        format!("split({})", self.base.label())
    }

    fn unit_atom(&self) -> Atom {
        let u = self.base.unit();
        let id = self.base.id(&u).expect("unit identity");
        let canon = self.base.mor_canon(&id).expect("canonical identity");
        Atom::Idem(Arc::new(IdemAtom { object: u, idem: canon }))
    }

    fn base_atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for a in self.base.base_atoms() {
            let ob = vec![a];
            if let Ok(id) = self.base.id(&ob) {
                if let Ok(canon) = self.base.mor_canon(&id) {
                    out.push(Atom::Idem(Arc::new(IdemAtom { object: ob, idem: canon })));
                }
            }
        }
        out
    }

    fn atom_label(&self, a: &Atom) -> String {
        match a {
            Atom::Idem(i) => format!("im[{}]", self.base.object_label(&i.object)),
            _ => "?".into(),
        }
    }

    fn validate_atom(&self, a: &Atom) -> Result<()> {
        let ia = self.as_idem(a)?;
        let sq = self.base.compose(&ia.idem, &ia.idem)?;
        if !self.base.mor_eq(&sq, &ia.idem)? {
            return Err(Error::NotIdempotent("stored atom is not idempotent".into()));
        }
        Ok(())
    }

    fn hom(&self, a: &Atom, b: &Atom) -> Result<FpModule> {
        Ok(self.khom(a, b)?.module.clone())
    }

    fn id_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ia = self.as_idem(a)?.clone();
        self.express(a, a, &ia.idem)
    }

    fn compose_coords(
        &self,
        a: &Atom,
        b: &Atom,
        c: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        let mf = self.realize(a, b, f)?;
        let mg = self.realize(b, c, g)?;
        let prod = self.base.compose(&mf, &mg)?;
        self.express(a, c, &prod)
    }

    fn tensor_atom(&self, a: &Atom, b: &Atom) -> Result<Atom> {
        let (ia, ib) = (self.as_idem(a)?, self.as_idem(b)?);
        let object = self.base.tensor_ob(&ia.object, &ib.object)?;
        let idem = self.base.tensor_mor(&ia.idem, &ib.idem)?;
        let canon = self.base.mor_canon(&idem)?;
        Ok(Atom::Idem(Arc::new(IdemAtom { object, idem: canon })))
    }

    fn tensor_coords(
        &self,
        a1: &Atom,
        b1: &Atom,
        a2: &Atom,
        b2: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        let mf = self.realize(a1, b1, f)?;
        let mg = self.realize(a2, b2, g)?;
        let prod = self.base.tensor_mor(&mf, &mg)?;
        let ta = self.tensor_atom(a1, a2)?;
        let tb = self.tensor_atom(b1, b2)?;
        self.express(&ta, &tb, &prod)
    }

    fn symmetry_coords(&self, a: &Atom, b: &Atom) -> Result<Vec<Elem>> {
        let (ia, ib) = (self.as_idem(a)?, self.as_idem(b)?);
        let s = self.base.symmetry(&ia.object, &ib.object)?;
        let right = self.base.tensor_mor(&ib.idem, &ia.idem)?;
        let rep = self.base.compose(&s, &right)?;
        let ta = self.tensor_atom(a, b)?;
        let tb = self.tensor_atom(b, a)?;
        self.express(&ta, &tb, &rep)
    }

    fn dual_atom(&self, a: &Atom) -> Result<Atom> {
        let ia = self.as_idem(a)?;
        let object = self.base.dual_ob(&ia.object)?;
        let idem = self.base.dual_mor(&ia.idem)?;
        let canon = self.base.mor_canon(&idem)?;
        Ok(Atom::Idem(Arc::new(IdemAtom { object, idem: canon })))
    }

    fn ev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ia = self.as_idem(a)?;
        let da = self.dual_atom(a)?;
        let ida = self.as_idem(&da)?.clone();
        let pre = self.base.tensor_mor(&ida.idem, &ia.idem)?;
        let rep = self.base.compose(&pre, &self.base.ev(&ia.object)?)?;
        let dom = self.tensor_atom(&da, a)?;
        self.express(&dom, &self.unit_atom(), &rep)
    }

    fn coev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ia = self.as_idem(a)?;
        let da = self.dual_atom(a)?;
        let ida = self.as_idem(&da)?.clone();
        let post = self.base.tensor_mor(&ia.idem, &ida.idem)?;
        let rep = self.base.compose(&self.base.coev(&ia.object)?, &post)?;
        let cod = self.tensor_atom(a, &da)?;
        self.express(&self.unit_atom(), &cod, &rep)
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

#[cfg(test)]
mod tests {
    use super::super::matrix_cat::{matrix_cat, mor_from_matrix, rank_object};
    use super::*;

    fn z6_split_pieces() -> (Cat, Cat, Atom, Atom) {
        let r = Ring::zmod(6).unwrap();
        let base = matrix_cat(r.clone());
        let kc = karoubi_cat(&base);
        let one = rank_object(1);
        let e3 = mor_from_matrix(&base, &Matrix::from_i64(r.clone(), 1, 1, &[3])).unwrap();
        let e4 = mor_from_matrix(&base, &Matrix::from_i64(r.clone(), 1, 1, &[4])).unwrap();
        let a3 = karoubi_atom(&base, &one, &e3).unwrap();
        let a4 = karoubi_atom(&base, &one, &e4).unwrap();
        (base, kc, a3, a4)
    }

    #[test]
    fn split_homs_have_the_right_sizes() {
        let (_, kc, a3, a4) = z6_split_pieces();
        // 3 Z/6 3 = {0, 3} and 4 Z/6 4 = {0, 2, 4}
        assert_eq!(kc.atom_hom(&a3, &a3).unwrap().size().unwrap(), Some(2));
        assert_eq!(kc.atom_hom(&a4, &a4).unwrap().size().unwrap(), Some(3));
        // cross homs are zero: 3 Z/6 4 = {0}
        assert_eq!(kc.atom_hom(&a3, &a4).unwrap().size().unwrap(), Some(1));
    }

    #[test]
    fn identities_compose_in_split_category() {
        let (_, kc, a3, _) = z6_split_pieces();
        let x = vec![a3];
        let id = kc.id(&x).unwrap();
        let id2 = kc.compose(&id, &id).unwrap();
        assert!(kc.mor_eq(&id2, &id).unwrap());
        assert!(!kc.is_zero_mor(&id).unwrap());
    }

    #[test]
    fn trace_of_split_identity_is_the_idempotent_trace() {
        let (_, kc, a3, a4) = z6_split_pieces();
        let r = Ring::zmod(6).unwrap();
        let id3 = kc.id(&vec![a3]).unwrap();
        assert_eq!(kc.trace(&id3).unwrap(), r.from_i64(3));
        let id4 = kc.id(&vec![a4]).unwrap();
        assert_eq!(kc.trace(&id4).unwrap(), r.from_i64(4));
    }

    #[test]
    fn tensor_of_split_atoms_multiplies_idempotents() {
        let (_, kc, a3, a4) = z6_split_pieces();
        let t33 = kc.tensor_ob(&vec![a3.clone()], &vec![a3.clone()]).unwrap();
        assert_eq!(t33, vec![a3.clone()]);
        // 3 * 4 = 0 mod 6: the product object has only zero endomorphisms
        let t34 = kc.tensor_ob(&vec![a3], &vec![a4]).unwrap();
        let h = kc.atom_hom(&t34[0], &t34[0]).unwrap();
        assert_eq!(h.size().unwrap(), Some(1));
    }

    #[test]
    fn embedding_preserves_composition() {
        let r = Ring::zmod(6).unwrap();
        let base = matrix_cat(r.clone());
        let kc = karoubi_cat(&base);
        let a = Matrix::from_i64(r.clone(), 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(r.clone(), 2, 2, &[0, 1, 5, 2]);
        let fa = mor_from_matrix(&base, &a).unwrap();
        let fb = mor_from_matrix(&base, &b).unwrap();
        let ea = embed_mor(&kc, &base, &fa).unwrap();
        let eb = embed_mor(&kc, &base, &fb).unwrap();
        let lhs = kc.compose(&ea, &eb).unwrap();
        let rhs = embed_mor(&kc, &base, &base.compose(&fa, &fb).unwrap()).unwrap();
        assert!(kc.mor_eq(&lhs, &rhs).unwrap());
    }

    #[test]
    fn split_triangles() {
        let (_, kc, a3, _) = z6_split_pieces();
        let x = vec![a3];
        let idx = kc.id(&x).unwrap();
        let left = kc
            .compose(
                &kc.tensor_mor(&kc.coev(&x).unwrap(), &idx).unwrap(),
                &kc.tensor_mor(&idx, &kc.ev(&x).unwrap()).unwrap(),
            )
            .unwrap();
        assert!(kc.mor_eq(&left, &idx).unwrap());
    }

    #[test]
    fn non_idempotent_rejected() {
        let r = Ring::zmod(6).unwrap();
        let base = matrix_cat(r.clone());
        let one = rank_object(1);
        let m2 = mor_from_matrix(&base, &Matrix::from_i64(r.clone(), 1, 1, &[2])).unwrap();
        assert!(matches!(
            karoubi_atom(&base, &one, &m2),
            Err(Error::NotIdempotent(_))
        ));
    }
}
