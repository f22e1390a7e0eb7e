//! Instance-level exactness.  In a category where every morphism has a
//! weak inverse and idempotents split, kernels and cokernels can be
//! read off as split summands; no completion is needed.

use crate::catcore::karoubi::split_idempotent;
use crate::catcore::{Cat, Mor, Object};
use crate::exactalg::{solve_left, Matrix};
use crate::{Error, Result};

/// A split summand: `compose(incl, proj)` is the identity of the part
/// and `compose(proj, incl)` is the idempotent being realized.
#[derive(Clone)]
pub struct Splitting {
    pub part: Object,
    pub incl: Mor,
    pub proj: Mor,
}

/// Solve `f;g;f = f`, then normalize so that `g;f;g = g` as well.
/// Fails with `NotSplit` when the linear system has no solution.
pub fn weak_inverse(c: &Cat, f: &Mor) -> Result<Mor> {
    let (src, dst, op) = c.map_on_hom(
        (&f.cod, &f.dom),
        (&f.dom, &f.cod),
        |g| c.compose(&c.compose(f, g)?, f),
    )?;
    let ring = c.ring();
    let target = Matrix::row_vector(ring, c.mor_to_flat(&dst, f));
    let stacked = if dst.module.relations.rows == 0 {
        op.mat.clone()
    } else {
        op.mat.vstack(&dst.module.relations)?
    };
    let sol = solve_left(&stacked, &target)?.ok_or_else(|| {
        Error::NotSplit(format!(
            "no weak inverse for a morphism {} -> {}",
            c.object_label(&f.dom),
            c.object_label(&f.cod)
        ))
    })?;
    let g = c.mor_from_flat(&src, &sol.row(0)[..src.module.gens])?;
    c.compose(&c.compose(&g, f)?, &g)
}

/// The kernel as the summand cut out by `id - f;g`.
pub fn kernel(c: &Cat, f: &Mor) -> Result<Splitting> {
    let g = weak_inverse(c, f)?;
    let e = c.sub(&c.id(&f.dom)?, &c.compose(f, &g)?)?;
    let (atom, incl, proj) = split_idempotent(c, &e)?;
    Ok(Splitting { part: vec![atom], incl, proj })
}

/// The cokernel as the summand cut out by `id - g;f` on the target.
pub fn cokernel(c: &Cat, f: &Mor) -> Result<Splitting> {
    let g = weak_inverse(c, f)?;
    let e = c.sub(&c.id(&f.cod)?, &c.compose(&g, f)?)?;
    let (atom, incl, proj) = split_idempotent(c, &e)?;
    Ok(Splitting { part: vec![atom], incl, proj })
}

/// The summand of the target that `f` reaches, with the epi onto it;
/// the splitting's inclusion completes the factorization.
pub fn image(c: &Cat, f: &Mor) -> Result<(Splitting, Mor)> {
    let g = weak_inverse(c, f)?;
    let e = c.compose(&g, f)?;
    let (atom, incl, proj) = split_idempotent(c, &e)?;
    let s = Splitting { part: vec![atom], incl, proj };
    let onto = c.compose(f, &s.proj)?;
    Ok((s, onto))
}

pub fn is_mono(c: &Cat, f: &Mor) -> Result<bool> {
    c.is_zero_mor(&kernel(c, f)?.incl)
}

pub fn is_epi(c: &Cat, f: &Mor) -> Result<bool> {
    c.is_zero_mor(&cokernel(c, f)?.proj)
}

pub fn is_iso(c: &Cat, f: &Mor) -> Result<bool> {
    Ok(is_mono(c, f)? && is_epi(c, f)?)
}

/// The two-sided inverse; a weak inverse of an isomorphism already is one.
pub fn inverse(c: &Cat, f: &Mor) -> Result<Mor> {
    let g = weak_inverse(c, f)?;
    let into = c.compose(f, &g)?;
    let back = c.compose(&g, f)?;
    if !c.mor_eq(&into, &c.id(&f.dom)?)? || !c.mor_eq(&back, &c.id(&f.cod)?)? {
        return Err(Error::NotSplit("morphism is not invertible".into()));
    }
    Ok(g)
}

/// For `n` with `n;f = 0`, the factoring of `n` through the kernel.
pub fn kernel_factor(c: &Cat, k: &Splitting, n: &Mor) -> Result<Mor> {
    c.compose(n, &k.proj)
}

/// For `n` with `f;n = 0`, the factoring of `n` through the cokernel.
pub fn cokernel_factor(c: &Cat, q: &Splitting, n: &Mor) -> Result<Mor> {
    c.compose(&q.incl, n)
}

/// Data of a split subobject of the unit: its idempotent scalar, the
/// retraction, the complementary summand, and the multiplication
/// isomorphism of the subobject with itself.
pub struct UnitSplit {
    pub idem: Mor,
    pub retract: Mor,
    pub complement: Splitting,
    pub fuse: Mor,
}

/// Split a mono into the unit: recover the idempotent scalar whose
/// image it is, the complement, and the iso `U (x) U -> U`.
pub fn split_unit_subobject(c: &Cat, u: &Mor) -> Result<UnitSplit> {
    if u.cod != c.unit() {
        return Err(Error::EndpointMismatch("subobject of the unit expected".into()));
    }
    if !is_mono(c, u)? {
        return Err(Error::NotMono("unit subobject".into()));
    }
    let g = weak_inverse(c, u)?;
    let e = c.compose(&g, u)?;
    let comp = c.sub(&c.id(&c.unit())?, &e)?;
    let (atom, incl, proj) = split_idempotent(c, &comp)?;
    let fuse = c.compose(&c.tensor_mor(u, u)?, &g)?;
    if !is_iso(c, &fuse)? {
        return Err(Error::InvalidInstance(
            "unit subobject does not absorb itself".into(),
        ));
    }
    Ok(UnitSplit {
        idem: e,
        retract: g,
        complement: Splitting { part: vec![atom], incl, proj },
        fuse,
    })
}

/// Split an object along an idempotent scalar: the summand where it
/// acts as the identity and the one where it vanishes.
pub fn decompose_object(c: &Cat, e: &Mor, x: &Object) -> Result<(Splitting, Splitting)> {
    if e.dom != c.unit() || e.cod != c.unit() {
        return Err(Error::EndpointMismatch("scalar idempotent expected".into()));
    }
    let sq = c.compose(e, e)?;
    if !c.mor_eq(&sq, e)? {
        return Err(Error::NotIdempotent("scalar does not square to itself".into()));
    }
    let ex = c.tensor_mor(e, &c.id(x)?)?;
    let (a1, i1, p1) = split_idempotent(c, &ex)?;
    let co = c.sub(&c.id(x)?, &ex)?;
    let (a2, i2, p2) = split_idempotent(c, &co)?;
    Ok((
        Splitting { part: vec![a1], incl: i1, proj: p1 },
        Splitting { part: vec![a2], incl: i2, proj: p2 },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::karoubi::{embed_mor, karoubi_cat};
    use crate::catcore::matrix_cat::{matrix_cat, mor_from_matrix};
    use crate::exactalg::Ring;

    fn embedded(c: &Cat, k: &Cat, rows: usize, cols: usize, entries: &[i64]) -> Mor {
        let m = mor_from_matrix(c, &Matrix::from_i64(c.ring(), rows, cols, entries)).unwrap();
        embed_mor(k, c, &m).unwrap()
    }

    #[test]
    fn weak_inverse_over_a_field() {
        let c = matrix_cat(Ring::rationals());
        let k = karoubi_cat(&c);
        let f = embedded(&c, &k, 2, 2, &[1, 2, 2, 4]);
        let g = weak_inverse(&k, &f).unwrap();
        let back = k.compose(&k.compose(&f, &g).unwrap(), &f).unwrap();
        assert!(k.mor_eq(&back, &f).unwrap());
        let there = k.compose(&k.compose(&g, &f).unwrap(), &g).unwrap();
        assert!(k.mor_eq(&there, &g).unwrap());
    }

    #[test]
    fn rank_one_map_splits_into_kernel_and_image() {
        let c = matrix_cat(Ring::rationals());
        let k = karoubi_cat(&c);
        // rank one 2x2 map: kernel and cokernel are both one-dimensional
        let f = embedded(&c, &k, 2, 2, &[1, 2, 2, 4]);
        let ker = kernel(&k, &f).unwrap();
        assert!(k.is_zero_mor(&k.compose(&ker.incl, &f).unwrap()).unwrap());
        assert!(k
            .mor_eq(&k.compose(&ker.incl, &ker.proj).unwrap(), &k.id(&ker.part).unwrap())
            .unwrap());
        let cok = cokernel(&k, &f).unwrap();
        assert!(k.is_zero_mor(&k.compose(&f, &cok.proj).unwrap()).unwrap());
        // one-dimensional pieces: endomorphism modules are the field
        assert_eq!(k.hom_flat(&ker.part, &ker.part).unwrap().module.gens, 1);
        assert_eq!(k.hom_flat(&cok.part, &cok.part).unwrap().module.gens, 1);
        let (im, onto) = image(&k, &f).unwrap();
        assert!(k.mor_eq(&k.compose(&onto, &im.incl).unwrap(), &f).unwrap());
        assert!(is_epi(&k, &onto).unwrap());
        assert!(is_mono(&k, &im.incl).unwrap());
    }

    #[test]
    fn weak_inverse_refused_over_the_integers() {
        let c = matrix_cat(Ring::integers());
        let k = karoubi_cat(&c);
        let f = embedded(&c, &k, 1, 1, &[2]);
        assert!(matches!(weak_inverse(&k, &f), Err(Error::NotSplit(_))));
    }

    #[test]
    fn unit_subobject_of_z6_splits() {
        let c = matrix_cat(Ring::zmod(6).unwrap());
        let k = karoubi_cat(&c);
        // the summand cut out by the idempotent 3, included into the unit
        let e3 = embedded(&c, &k, 1, 1, &[3]);
        let (part, incl, _) = split_idempotent(&k, &e3).unwrap();
        assert!(is_mono(&k, &incl).unwrap());
        let us = split_unit_subobject(&k, &incl).unwrap();
        // the recovered idempotent is 3 again
        assert!(k.mor_eq(&us.idem, &e3).unwrap());
        // complement endomorphisms: 4*(Z/6)*4 has three elements
        assert_eq!(
            k.atom_hom(&us.complement.part[0], &us.complement.part[0])
                .unwrap()
                .size()
                .unwrap(),
            Some(3)
        );
        assert_eq!(k.atom_hom(&part, &part).unwrap().size().unwrap(), Some(2));
    }

    #[test]
    fn central_decomposition_of_z6() {
        let c = matrix_cat(Ring::zmod(6).unwrap());
        let k = karoubi_cat(&c);
        let e3 = embedded(&c, &k, 1, 1, &[3]);
        let x = k.unit();
        let (s1, s2) = decompose_object(&k, &e3, &x).unwrap();
        // the two idempotent composites add back to the identity
        let back = k
            .add(
                &k.compose(&s1.proj, &s1.incl).unwrap(),
                &k.compose(&s2.proj, &s2.incl).unwrap(),
            )
            .unwrap();
        assert!(k.mor_eq(&back, &k.id(&x).unwrap()).unwrap());
        assert_eq!(k.atom_hom(&s1.part[0], &s1.part[0]).unwrap().size().unwrap(), Some(2));
        assert_eq!(k.atom_hom(&s2.part[0], &s2.part[0]).unwrap().size().unwrap(), Some(3));
    }
}
