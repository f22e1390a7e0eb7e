//! Additive tensor functors between instances, and their lift to the
//! two formal layers.  A functor is presented atom by atom; object and
//! morphism images are assembled here once, so the lifted functor is
//! exact by construction: windows map to windows.

use std::sync::Arc;

use super::ab::{AbCat, AbMor, AbOb};
use super::fp::{FpMor, FpOb};
use crate::catcore::karoubi::{embed_mor, embed_object, karoubi_cat, KaroubiCat};
use crate::catcore::quotient::QuotientCat;
use crate::catcore::{Atom, Cat, Mor, Object};
use crate::exactalg::Elem;
use crate::{Error, Result};

/// An additive functor, given by atom images and the effect on a single
/// block of hom coordinates.
pub trait AddFunctor: Send + Sync {
    fn src(&self) -> &Cat;
    fn dst(&self) -> &Cat;
    fn label(&self) -> String;
    fn atom_image(&self, a: &Atom) -> Result<Object>;
    /// image of the morphism with coordinates `coords` in `hom(a, b)`
    fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor>;

    fn ob(&self, x: &Object) -> Result<Object> {
        let mut out = Vec::new();
        for a in x {
            out.extend(self.atom_image(a)?);
        }
        Ok(out)
    }

    /// Blockwise image; rows over the domain atoms are pasted with
    /// pairings, so additivity is automatic.
    fn mor(&self, f: &Mor) -> Result<Mor> {
        let dst = self.dst();
        let cod = self.ob(&f.cod)?;
        let mut out: Option<Mor> = None;
        for (i, a) in f.dom.iter().enumerate() {
            let mut row: Option<Mor> = None;
            for (j, b) in f.cod.iter().enumerate() {
                let cell = self.block_image(a, b, &f.blocks[i][j])?;
                row = Some(match row {
                    None => cell,
                    Some(r) => dst.pair(&r, &cell)?,
                });
            }
            let row = match row {
                Some(r) => r,
                None => dst.zero_mor(&self.atom_image(a)?, &cod)?,
            };
            out = Some(match out {
                None => row,
                Some(o) => dst.copair(&o, &row)?,
            });
        }
        match out {
            Some(o) => Ok(o),
            None => dst.zero_mor(&Vec::new(), &cod),
        }
    }
}

/// Strict monoidality over the generating atoms: unit to unit, tensor
/// images equal on the nose, braiding preserved.
pub fn check_monoidal(f: &dyn AddFunctor) -> Result<()> {
    let src = f.src();
    let dst = f.dst();
    if f.ob(&src.unit())? != dst.unit() {
        return Err(Error::NotMonoidal(format!("{}: unit image", f.label())));
    }
    let mut atoms = src.base_atoms();
    let u = src.instance().unit_atom();
    if !atoms.contains(&u) {
        atoms.push(u);
    }
    for a in &atoms {
        for b in &atoms {
            let oa = vec![a.clone()];
            let ob = vec![b.clone()];
            let lhs = f.ob(&src.tensor_ob(&oa, &ob)?)?;
            let rhs = dst.tensor_ob(&f.atom_image(a)?, &f.atom_image(b)?)?;
            if lhs != rhs {
                return Err(Error::NotMonoidal(format!(
                    "{}: tensor of {} and {}",
                    f.label(),
                    src.atom_label(a),
                    src.atom_label(b)
                )));
            }
            let swapped = f.mor(&src.symmetry(&oa, &ob)?)?;
            let direct = dst.symmetry(&f.ob(&oa)?, &f.ob(&ob)?)?;
            if !dst.mor_eq(&swapped, &direct)? {
                return Err(Error::NotMonoidal(format!(
                    "{}: braiding at {} and {}",
                    f.label(),
                    src.atom_label(a),
                    src.atom_label(b)
                )));
            }
        }
    }
    Ok(())
}

/// Does nothing; a baseline for law checks.
pub struct IdFunctor {
    cat: Cat,
}

impl IdFunctor {
    pub fn new(cat: &Cat) -> IdFunctor {
        IdFunctor { cat: cat.clone() }
    }
}

impl AddFunctor for IdFunctor {
    fn src(&self) -> &Cat {
        &self.cat
    }

    fn dst(&self) -> &Cat {
        &self.cat
    }

    fn label(&self) -> String {
        format!("id[{}]", self.cat.label())
    }

    fn atom_image(&self, a: &Atom) -> Result<Object> {
        Ok(vec![a.clone()])
    }

    fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
        Ok(single_block(a, b, coords))
    }
}

fn single_block(a: &Atom, b: &Atom, coords: &[Elem]) -> Mor {
    Mor {
        dom: vec![a.clone()],
        cod: vec![b.clone()],
        blocks: vec![vec![coords.to_vec()]],
    }
}

/// Projection onto an additive quotient.  Atoms and coordinates pass
/// through untouched; only the relations grow.
pub struct QuotientProj {
    base: Cat,
    quot: Cat,
}

impl QuotientProj {
    pub fn new(base: &Cat, quot: &Cat) -> Result<QuotientProj> {
        let inner = quot
            .instance()
            .as_any()
            .downcast_ref::<QuotientCat>()
            .ok_or_else(|| Error::InvalidInstance("target is not a quotient".into()))?;
        if !Arc::ptr_eq(inner.base().instance(), base.instance()) {
            return Err(Error::InvalidInstance(
                "quotient does not cover the given source".into(),
            ));
        }
        Ok(QuotientProj { base: base.clone(), quot: quot.clone() })
    }
}

impl AddFunctor for QuotientProj {
    fn src(&self) -> &Cat {
        &self.base
    }

    fn dst(&self) -> &Cat {
        &self.quot
    }

    fn label(&self) -> String {
        format!("onto {}", self.quot.label())
    }

    fn atom_image(&self, a: &Atom) -> Result<Object> {
        Ok(vec![a.clone()])
    }

    fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
        Ok(single_block(a, b, coords))
    }
}

/// Full embedding into the idempotent splitting.
pub struct SplitEmbed {
    base: Cat,
    split: Cat,
}

impl SplitEmbed {
    pub fn new(base: &Cat) -> SplitEmbed {
        SplitEmbed { base: base.clone(), split: karoubi_cat(base) }
    }

    /// Reuse an existing splitting instead of building a fresh one.
    pub fn over(base: &Cat, split: &Cat) -> Result<SplitEmbed> {
        let inner = split
            .instance()
            .as_any()
            .downcast_ref::<KaroubiCat>()
            .ok_or_else(|| Error::InvalidInstance("target is not a splitting".into()))?;
        if !Arc::ptr_eq(inner.base().instance(), base.instance()) {
            return Err(Error::InvalidInstance(
                "splitting does not cover the given source".into(),
            ));
        }
        Ok(SplitEmbed { base: base.clone(), split: split.clone() })
    }
}

impl AddFunctor for SplitEmbed {
    fn src(&self) -> &Cat {
        &self.base
    }

    fn dst(&self) -> &Cat {
        &self.split
    }

    fn label(&self) -> String {
        format!("into {}", self.split.label())
    }

    fn atom_image(&self, a: &Atom) -> Result<Object> {
        embed_object(&self.base, &vec![a.clone()])
    }

    fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
        embed_mor(&self.split, &self.base, &single_block(a, b, coords))
    }
}

/// Entrywise coefficient change between matrix instances along the
/// canonical ring surjection, when there is one.
pub struct CoefficientChange {
    src: Cat,
    dst: Cat,
}

impl CoefficientChange {
    pub fn new(src: &Cat, dst: &Cat) -> Result<CoefficientChange> {
        for c in [src, dst] {
            if c.instance().unit_atom() != Atom::MatUnit
                || c.base_atoms() != vec![Atom::MatUnit]
            {
                return Err(Error::InvalidInstance(
                    "coefficient change needs matrix instances".into(),
                ));
            }
        }
        let (r, s) = (src.ring(), dst.ring());
        let ok = match (r.kind_name(), s.kind_name()) {
            _ if r == s => true,
            ("integers", "zmod") => true,
            ("zmod", "zmod") => {
                // the source modulus must die in the target
                let mu = r.cover_modulus().expect("modulus of a residue ring");
                s.is_zero(&s.reduce(&mu))
            }
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "no canonical coefficient map {r} -> {s}"
            )));
        }
        Ok(CoefficientChange { src: src.clone(), dst: dst.clone() })
    }

    fn convert(&self, e: &Elem) -> Elem {
        let r = self.src.ring();
        let s = self.dst.ring();
        if r == s {
            e.clone()
        } else {
            s.reduce(&r.lift(e))
        }
    }
}

impl AddFunctor for CoefficientChange {
    fn src(&self) -> &Cat {
        &self.src
    }

    fn dst(&self) -> &Cat {
        &self.dst
    }

    fn label(&self) -> String {
        format!("{} -> {}", self.src.label(), self.dst.label())
    }

    fn atom_image(&self, a: &Atom) -> Result<Object> {
        Ok(vec![a.clone()])
    }

    fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
        let mapped: Vec<Elem> = coords.iter().map(|e| self.convert(e)).collect();
        Ok(single_block(a, b, &mapped))
    }
}

/// A base functor applied to the formal layers.  Presentations, windows
/// and representatives all map levelwise, so kernels and cokernels are
/// carried to kernels and cokernels.
pub struct AbMap {
    f: Arc<dyn AddFunctor>,
    src: AbCat,
    dst: AbCat,
}

impl AbMap {
    pub fn new(f: Arc<dyn AddFunctor>) -> AbMap {
        let src = AbCat::new(f.src());
        let dst = AbCat::new(f.dst());
        AbMap { f, src, dst }
    }

    pub fn functor(&self) -> &dyn AddFunctor {
        self.f.as_ref()
    }

    pub fn src(&self) -> &AbCat {
        &self.src
    }

    pub fn dst(&self) -> &AbCat {
        &self.dst
    }

    pub fn fp_ob(&self, x: &FpOb) -> Result<FpOb> {
        Ok(FpOb { pres: self.f.mor(&x.pres)? })
    }

    pub fn fp_mor(&self, m: &FpMor) -> Result<FpMor> {
        self.dst.fp().mor(
            &self.fp_ob(&m.dom)?,
            &self.fp_ob(&m.cod)?,
            self.f.mor(&m.rep)?,
        )
    }

    pub fn ob(&self, x: &AbOb) -> Result<AbOb> {
        Ok(AbOb { window: self.fp_mor(&x.window)? })
    }

    pub fn mor(&self, m: &AbMor) -> Result<AbMor> {
        self.dst.mor(&self.ob(&m.dom)?, &self.ob(&m.cod)?, self.fp_mor(&m.rep)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::matrix_cat::{matrix_cat, mor_from_matrix, rank_object};
    use crate::catcore::quotient::{additive_quotient, ScalarIdeal};
    use crate::exactalg::{Matrix, Ring};

    fn sample(c: &Cat, rows: usize, cols: usize, entries: &[i64]) -> Mor {
        mor_from_matrix(c, &Matrix::from_i64(c.ring(), rows, cols, entries)).unwrap()
    }

    #[test]
    fn identity_functor_laws() {
        let c = matrix_cat(Ring::integers());
        let f = IdFunctor::new(&c);
        check_monoidal(&f).unwrap();
        let m = sample(&c, 2, 2, &[1, 2, 3, 4]);
        let n = sample(&c, 2, 1, &[5, 6]);
        let lhs = f.mor(&c.compose(&m, &n).unwrap()).unwrap();
        let rhs = c.compose(&f.mor(&m).unwrap(), &f.mor(&n).unwrap()).unwrap();
        assert!(c.mor_eq(&lhs, &rhs).unwrap());
        let i3 = c.id(&rank_object(3)).unwrap();
        assert_eq!(f.mor(&i3).unwrap(), i3);
    }

    #[test]
    fn coefficient_change_reduces_entries() {
        let zc = matrix_cat(Ring::integers());
        let fc = matrix_cat(Ring::zmod(2).unwrap());
        let f = CoefficientChange::new(&zc, &fc).unwrap();
        check_monoidal(&f).unwrap();
        assert!(fc.is_zero_mor(&f.mor(&sample(&zc, 1, 1, &[2])).unwrap()).unwrap());
        let a = sample(&zc, 2, 2, &[1, 2, 3, 4]);
        let b = sample(&zc, 2, 2, &[5, 6, 7, 8]);
        let lhs = f.mor(&zc.compose(&a, &b).unwrap()).unwrap();
        let rhs = fc.compose(&f.mor(&a).unwrap(), &f.mor(&b).unwrap()).unwrap();
        assert!(fc.mor_eq(&lhs, &rhs).unwrap());
        // residue rings only map when the modulus divides
        let f3 = matrix_cat(Ring::zmod(3).unwrap());
        assert!(CoefficientChange::new(&fc, &f3).is_err());
        assert!(CoefficientChange::new(
            &matrix_cat(Ring::zmod(6).unwrap()),
            &matrix_cat(Ring::zmod(3).unwrap())
        )
        .is_ok());
    }

    #[test]
    fn quotient_projection_kills_the_ideal() {
        let c = matrix_cat(Ring::integers());
        let q = additive_quotient(&c, Arc::new(ScalarIdeal { scalar: c.ring().from_i64(2) }));
        let f = QuotientProj::new(&c, &q).unwrap();
        check_monoidal(&f).unwrap();
        assert!(q.is_zero_mor(&f.mor(&sample(&c, 1, 1, &[4])).unwrap()).unwrap());
        assert!(!q.is_zero_mor(&f.mor(&sample(&c, 1, 1, &[3])).unwrap()).unwrap());
        // a quotient of some other category is rejected
        let other = matrix_cat(Ring::integers());
        assert!(QuotientProj::new(&other, &q).is_err());
    }

    #[test]
    fn split_embedding_is_monoidal_and_functorial() {
        let c = matrix_cat(Ring::zmod(6).unwrap());
        let f = SplitEmbed::new(&c);
        check_monoidal(&f).unwrap();
        let k = f.dst().clone();
        let m = sample(&c, 2, 2, &[1, 2, 3, 4]);
        let n = sample(&c, 2, 2, &[5, 0, 1, 2]);
        let lhs = f.mor(&c.compose(&m, &n).unwrap()).unwrap();
        let rhs = k.compose(&f.mor(&m).unwrap(), &f.mor(&n).unwrap()).unwrap();
        assert!(k.mor_eq(&lhs, &rhs).unwrap());
        let two = rank_object(2);
        let li = f.mor(&c.id(&two).unwrap()).unwrap();
        let ri = k.id(&f.ob(&two).unwrap()).unwrap();
        assert!(k.mor_eq(&li, &ri).unwrap());
    }

    struct Doubler {
        cat: Cat,
    }

    impl AddFunctor for Doubler {
        fn src(&self) -> &Cat {
            &self.cat
        }

        fn dst(&self) -> &Cat {
            &self.cat
        }

        fn label(&self) -> String {
            "double".into()
        }

        fn atom_image(&self, a: &Atom) -> Result<Object> {
            Ok(vec![a.clone(), a.clone()])
        }

        fn block_image(&self, a: &Atom, b: &Atom, coords: &[Elem]) -> Result<Mor> {
            let cell = single_block(a, b, coords);
            self.cat.block_diag(&cell, &cell)
        }
    }

    #[test]
    fn doubling_is_additive_but_not_monoidal() {
        let c = matrix_cat(Ring::integers());
        let f = Doubler { cat: c.clone() };
        let a = sample(&c, 2, 2, &[1, 2, 3, 4]);
        let b = sample(&c, 2, 2, &[5, 6, 7, 8]);
        let lhs = f.mor(&c.add(&a, &b).unwrap()).unwrap();
        let rhs = c.add(&f.mor(&a).unwrap(), &f.mor(&b).unwrap()).unwrap();
        assert!(c.mor_eq(&lhs, &rhs).unwrap());
        assert!(matches!(check_monoidal(&f), Err(Error::NotMonoidal(_))));
    }

    #[test]
    fn lifted_functor_preserves_kernels_and_cokernels() {
        let zc = matrix_cat(Ring::integers());
        let fc = matrix_cat(Ring::zmod(2).unwrap());
        let lift = AbMap::new(Arc::new(CoefficientChange::new(&zc, &fc).unwrap()));
        let src = lift.src();
        let dst = lift.dst();
        let two = src.iota_mor(&sample(&zc, 1, 1, &[2])).unwrap();
        let (_, incl) = src.kernel(&two).unwrap();
        let (_, pi) = src.cokernel(&two).unwrap();
        let im = lift.mor(&two).unwrap();
        // doubling dies mod 2, so its kernel downstairs is everything
        assert!(dst.is_zero_mor(&im).unwrap());
        let (k2, _) = dst.kernel(&im).unwrap();
        assert!(!dst.is_zero_ob(&k2).unwrap());
        // both comparison maps are isomorphisms
        let v = dst.kernel_factor(&k2, &lift.mor(&incl).unwrap()).unwrap();
        assert!(dst.is_iso(&v).unwrap());
        let (_, pi2) = dst.cokernel(&im).unwrap();
        let u = dst.cokernel_factor(&im, &pi2, &lift.mor(&pi).unwrap()).unwrap();
        assert!(dst.is_iso(&u).unwrap());
    }
}
