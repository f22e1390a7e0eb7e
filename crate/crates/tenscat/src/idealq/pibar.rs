//! Descent of the split-quotient functor through both completion
//! layers.  Presented objects land on instance-level cokernels,
//! windowed objects on instance-level kernels; morphisms travel by
//! include, map, project.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::split::{cokernel, kernel, Splitting};
use super::ToSplit;
use crate::catcore::{Cat, Mor, Object};
use crate::freydab::ab::{AbCat, AbMor, AbOb};
use crate::freydab::fp::{FpMor, FpOb};
use crate::freydab::functor::AddFunctor;
use crate::Result;

pub struct PiBar {
    ab: AbCat,
    f: ToSplit,
    fp_cache: Mutex<HashMap<FpOb, Arc<Splitting>>>,
    ab_cache: Mutex<HashMap<AbOb, Arc<Splitting>>>,
}

impl PiBar {
    pub fn new(base: &Cat) -> Result<PiBar> {
        Ok(PiBar {
            ab: AbCat::new(base),
            f: ToSplit::new(base)?,
            fp_cache: Mutex::new(HashMap::new()),
            ab_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn completion(&self) -> &AbCat {
        &self.ab
    }

    /// the split quotient everything lands in
    pub fn target(&self) -> &Cat {
        self.f.dst()
    }

    pub fn base_functor(&self) -> &ToSplit {
        &self.f
    }

    fn fp_image(&self, x: &FpOb) -> Result<Arc<Splitting>> {
        if let Some(s) = self.fp_cache.lock().unwrap().get(x) {
            return Ok(s.clone());
        }
        let s = Arc::new(cokernel(self.target(), &self.f.mor(&x.pres)?)?);
        self.fp_cache.lock().unwrap().insert(x.clone(), s.clone());
        Ok(s)
    }

    /// image of a presented object: the cokernel summand of its
    /// presentation's image
    pub fn fp_ob(&self, x: &FpOb) -> Result<Object> {
        Ok(self.fp_image(x)?.part.clone())
    }

    /// image of a presented arrow; well defined because the inclusion
    /// kills nothing and the projection kills exactly the presentation
    pub fn fp_mor(&self, m: &FpMor) -> Result<Mor> {
        let dx = self.fp_image(&m.dom)?;
        let dy = self.fp_image(&m.cod)?;
        let rep = self.f.mor(&m.rep)?;
        let s = self.target();
        s.compose(&s.compose(&dx.incl, &rep)?, &dy.proj)
    }

    fn ab_image(&self, x: &AbOb) -> Result<Arc<Splitting>> {
        if let Some(s) = self.ab_cache.lock().unwrap().get(x) {
            return Ok(s.clone());
        }
        let s = Arc::new(kernel(self.target(), &self.fp_mor(&x.window)?)?);
        self.ab_cache.lock().unwrap().insert(x.clone(), s.clone());
        Ok(s)
    }

    /// image of a windowed object: the kernel summand of its window's
    /// image
    pub fn ob(&self, x: &AbOb) -> Result<Object> {
        Ok(self.ab_image(x)?.part.clone())
    }

    pub fn mor(&self, m: &AbMor) -> Result<Mor> {
        let dx = self.ab_image(&m.dom)?;
        let dy = self.ab_image(&m.cod)?;
        let rep = self.fp_mor(&m.rep)?;
        let s = self.target();
        s.compose(&s.compose(&dx.incl, &rep)?, &dy.proj)
    }

    /// For an embedded base object, the pair of maps identifying its
    /// image with the plain image of the base object: out of the
    /// summand into the ambient carrier image, and back.  The two
    /// composites are the respective identities.
    pub fn iota_embed(&self, x: &Object) -> Result<(Mor, Mor)> {
        let emb = self.ab.iota(x)?;
        let ks = self.ab_image(&emb)?;
        let cs = self.fp_image(emb.carrier())?;
        let s = self.target();
        let out = s.compose(&ks.incl, &cs.incl)?;
        let back = s.compose(&cs.proj, &ks.proj)?;
        Ok((out, back))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::matrix_cat::{matrix_cat, mor_from_matrix};
    use crate::catcore::rep::{rep_cat, Group, RepData};
    use crate::catcore::Atom;
    use crate::exactalg::{Matrix, Ring};

    fn z6_pi() -> PiBar {
        PiBar::new(&matrix_cat(Ring::zmod(6).unwrap())).unwrap()
    }

    #[test]
    fn base_generators_descend_unchanged() {
        let pi = z6_pi();
        let c = pi.completion().base().clone();
        let s = pi.target();
        let x = vec![Atom::MatUnit, Atom::MatUnit];
        let (out, back) = pi.iota_embed(&x).unwrap();
        assert!(s.mor_eq(&s.compose(&out, &back).unwrap(), &s.id(&out.dom).unwrap()).unwrap());
        assert!(s.mor_eq(&s.compose(&back, &out).unwrap(), &s.id(&out.cod).unwrap()).unwrap());
        // a base arrow transported by the functor equals its direct image,
        // conjugated by the identification
        let f = mor_from_matrix(&c, &Matrix::from_i64(c.ring(), 2, 2, &[1, 2, 3, 4])).unwrap();
        let lifted = pi.mor(&pi.completion().iota_mor(&f).unwrap()).unwrap();
        let direct = pi.base_functor().mor(&f).unwrap();
        let conj = s.compose(&s.compose(&out, &direct).unwrap(), &back).unwrap();
        assert!(s.mor_eq(&lifted, &conj).unwrap());
    }

    #[test]
    fn functor_laws_on_completion_samples() {
        let pi = z6_pi();
        let ab = pi.completion();
        let c = ab.base().clone();
        let s = pi.target();
        let two = ab
            .iota_mor(&mor_from_matrix(&c, &Matrix::from_i64(c.ring(), 1, 1, &[2])).unwrap())
            .unwrap();
        let (q, proj) = ab.cokernel(&two).unwrap();
        let (k, incl) = ab.kernel(&proj).unwrap();
        // identities, composites, additivity
        assert!(s.mor_eq(&pi.mor(&ab.id(&q).unwrap()).unwrap(), &s.id(&pi.ob(&q).unwrap()).unwrap()).unwrap());
        let pk = pi.mor(&incl).unwrap();
        let pp = pi.mor(&proj).unwrap();
        let both = s.compose(&pk, &pp).unwrap();
        let direct = pi.mor(&ab.compose(&incl, &proj).unwrap()).unwrap();
        assert!(s.mor_eq(&both, &direct).unwrap());
        let sum = ab.add(&incl, &incl).unwrap();
        assert!(s.mor_eq(&pi.mor(&sum).unwrap(), &s.add(&pk, &pk).unwrap()).unwrap());
        let _ = k;
    }

    #[test]
    fn doubling_cokernel_over_z6_survives_as_a_summand() {
        let pi = z6_pi();
        let ab = pi.completion();
        let c = ab.base().clone();
        let s = pi.target();
        let two = ab
            .iota_mor(&mor_from_matrix(&c, &Matrix::from_i64(c.ring(), 1, 1, &[2])).unwrap())
            .unwrap();
        let (q, proj) = ab.cokernel(&two).unwrap();
        // the formal cokernel of doubling is the two-torsion part; its image
        // in the split quotient is a nonzero summand with two endomorphisms
        let qs = pi.ob(&q).unwrap();
        assert!(!s.is_zero_mor(&s.id(&qs).unwrap()).unwrap());
        let ends = s.hom_flat(&qs, &qs).unwrap();
        assert_eq!(ends.module.size().unwrap(), Some(2));
        // the projection descends to a split epi
        let p = pi.mor(&proj).unwrap();
        assert!(super::super::is_epi(s, &p).unwrap());
        assert!(!super::super::is_mono(s, &p).unwrap());
    }

    #[test]
    fn exactness_on_a_kernel_cokernel_pair() {
        let pi = z6_pi();
        let ab = pi.completion();
        let c = ab.base().clone();
        let s = pi.target();
        let three = ab
            .iota_mor(&mor_from_matrix(&c, &Matrix::from_i64(c.ring(), 1, 1, &[3])).unwrap())
            .unwrap();
        let (_, proj) = ab.cokernel(&three).unwrap();
        let (_, incl) = ab.kernel(&proj).unwrap();
        // image of the kernel inclusion is the kernel of the image
        let pi_incl = pi.mor(&incl).unwrap();
        let pi_proj = pi.mor(&proj).unwrap();
        assert!(s.is_zero_mor(&s.compose(&pi_incl, &pi_proj).unwrap()).unwrap());
        let ker_image = super::super::kernel(s, &pi_proj).unwrap();
        let im = super::super::image(s, &pi_incl).unwrap().0;
        let ei = s.compose(&im.proj, &im.incl).unwrap();
        let ek = s.compose(&ker_image.proj, &ker_image.incl).unwrap();
        // same image: each projection absorbs into the other
        assert!(s.mor_eq(&s.compose(&ei, &ek).unwrap(), &ei).unwrap());
        assert!(s.mor_eq(&s.compose(&ek, &ei).unwrap(), &ek).unwrap());
    }

    #[test]
    fn modular_regular_object_dies_downstairs() {
        let g = Group::cyclic(2).unwrap();
        let f2 = Ring::zmod(2).unwrap();
        let reg = RepData::regular(g.clone(), &f2);
        let c = rep_cat(f2, g, vec![reg.clone()]).unwrap();
        let pi = PiBar::new(&c).unwrap();
        let ab = pi.completion();
        let s = pi.target();
        let p = ab.iota(&vec![Atom::Rep(reg)]).unwrap();
        let image = pi.ob(&p).unwrap();
        assert!(s.is_zero_mor(&s.id(&image).unwrap()).unwrap());
        let unit = ab.unit_ob().unwrap();
        let uimage = pi.ob(&unit).unwrap();
        assert!(!s.is_zero_mor(&s.id(&uimage).unwrap()).unwrap());
    }
}
