//! The ideal of morphisms the trace pairing cannot see, quotients by
//! it, the split quotient, and the functor onto it.

pub mod pibar;
pub mod split;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::catcore::karoubi::karoubi_cat;
use crate::catcore::quotient::{additive_quotient, IdealRows};
use crate::catcore::{Atom, Cat, Mor, Object};
use crate::exactalg::{left_nullspace, solve_left, Matrix};
use crate::freydab::functor::{AddFunctor, QuotientProj, SplitEmbed};
use crate::{Error, Result};

pub use pibar::PiBar;
pub use split::{
    cokernel, cokernel_factor, decompose_object, image, inverse, is_epi, is_iso, is_mono,
    kernel, kernel_factor, split_unit_subobject, weak_inverse, Splitting, UnitSplit,
};

/// Rows spanning `{f : tr(f;g) = 0 for all g}` in each hom module.
/// Over a field of scalars this is the radical of the trace pairing;
/// otherwise it is the kernel of the pairing matrix, which callers may
/// want to flag.
pub struct TraceNull {
    cache: Mutex<HashMap<(Atom, Atom), Matrix>>,
}

pub fn trace_null() -> Arc<TraceNull> {
    Arc::new(TraceNull { cache: Mutex::new(HashMap::new()) })
}

/// Whether the scalar endomorphisms of the unit form the base field,
/// so that the pairing kernel really is a bilinear-form radical.
pub fn scalars_form_field(base: &Cat) -> Result<bool> {
    if !base.ring().is_field() {
        return Ok(false);
    }
    let u = base.instance().unit_atom();
    let h = base.atom_hom(&u, &u)?;
    Ok(h.invariants()? == vec![base.ring().zero()])
}

fn basis_mor(base: &Cat, a: &Atom, b: &Atom, i: usize, gens: usize) -> Mor {
    let ring = base.ring();
    let mut coords = vec![ring.zero(); gens];
    coords[i] = ring.one();
    Mor { dom: vec![a.clone()], cod: vec![b.clone()], blocks: vec![vec![coords]] }
}

impl IdealRows for TraceNull {
    fn label(&self) -> String {
        "null".into()
    }

    fn rows(&self, base: &Cat, a: &Atom, b: &Atom) -> Result<Matrix> {
        let key = (a.clone(), b.clone());
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let ring = base.ring();
        let hab = base.atom_hom(a, b)?;
        let hba = base.atom_hom(b, a)?;
        let mut pairing = Matrix::zero(ring.clone(), hab.gens, hba.gens);
        for i in 0..hab.gens {
            let f = basis_mor(base, a, b, i, hab.gens);
            for j in 0..hba.gens {
                let g = basis_mor(base, b, a, j, hba.gens);
                let t = base.trace(&base.compose(&f, &g)?)?;
                pairing.set(i, j, t);
            }
        }
        let ns = left_nullspace(&pairing)?;
        // cover-lifted solving can emit rows that reduce to zero
        let kept: Vec<usize> = (0..ns.rows)
            .filter(|&r| ns.row(r).iter().any(|e| !ring.is_zero(e)))
            .collect();
        let rows = Matrix::from_fn(ring.clone(), kept.len(), ns.cols, |i, j| {
            ns.at(kept[i], j).clone()
        });
        self.cache.lock().unwrap().insert(key, rows.clone());
        Ok(rows)
    }
}

/// Quotient by the trace-null ideal.
pub fn null_quotient(base: &Cat) -> Cat {
    additive_quotient(base, trace_null())
}

/// Kill the trace-null ideal, then split idempotents.
pub fn split_quotient(base: &Cat) -> Cat {
    karoubi_cat(&null_quotient(base))
}

/// Blockwise membership of a morphism in an ideal, relations included.
pub fn in_ideal(base: &Cat, ideal: &dyn IdealRows, f: &Mor) -> Result<bool> {
    let ring = base.ring();
    for (i, a) in f.dom.iter().enumerate() {
        for (j, b) in f.cod.iter().enumerate() {
            let h = base.atom_hom(a, b)?;
            if h.gens == 0 {
                continue;
            }
            let rows = ideal.rows(base, a, b)?;
            let stacked = if h.relations.rows == 0 {
                rows
            } else if rows.rows == 0 {
                h.relations.clone()
            } else {
                rows.vstack(&h.relations)?
            };
            if stacked.rows == 0 {
                if !h.elem_is_zero(&f.blocks[i][j]) {
                    return Ok(false);
                }
                continue;
            }
            let target = Matrix::row_vector(ring.clone(), f.blocks[i][j].clone());
            if solve_left(&stacked, &target)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn pool_atoms(base: &Cat) -> Vec<Atom> {
    let mut atoms = base.base_atoms();
    let u = base.instance().unit_atom();
    if !atoms.contains(&u) {
        atoms.push(u);
    }
    atoms
}

/// Composition absorption of an ideal over the generating atoms, from
/// both sides.  Quadratic in generator counts; meant for desk sizes.
pub fn check_compose_absorbing(base: &Cat, ideal: &dyn IdealRows) -> Result<()> {
    let atoms = pool_atoms(base);
    for a in &atoms {
        for b in &atoms {
            let rows = ideal.rows(base, a, b)?;
            if rows.rows == 0 {
                continue;
            }
            for c0 in &atoms {
                let hbc = base.atom_hom(b, c0)?;
                let hca = base.atom_hom(c0, a)?;
                for r in 0..rows.rows {
                    let n = Mor {
                        dom: vec![a.clone()],
                        cod: vec![b.clone()],
                        blocks: vec![vec![rows.row(r)]],
                    };
                    for k in 0..hbc.gens {
                        let g = basis_mor(base, b, c0, k, hbc.gens);
                        if !in_ideal(base, ideal, &base.compose(&n, &g)?)? {
                            return Err(Error::IdealNotAbsorbing(format!(
                                "post-composition at {}, {}, {}",
                                base.atom_label(a),
                                base.atom_label(b),
                                base.atom_label(c0)
                            )));
                        }
                    }
                    for k in 0..hca.gens {
                        let g = basis_mor(base, c0, a, k, hca.gens);
                        if !in_ideal(base, ideal, &base.compose(&g, &n)?)? {
                            return Err(Error::IdealNotAbsorbing(format!(
                                "pre-composition at {}, {}, {}",
                                base.atom_label(c0),
                                base.atom_label(a),
                                base.atom_label(b)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Tensor absorption against identities over the generating atoms.
pub fn check_tensor_absorbing(base: &Cat, ideal: &dyn IdealRows) -> Result<()> {
    let atoms = pool_atoms(base);
    for a in &atoms {
        for b in &atoms {
            let rows = ideal.rows(base, a, b)?;
            if rows.rows == 0 {
                continue;
            }
            for x in &atoms {
                let idx = base.id(&vec![x.clone()])?;
                for r in 0..rows.rows {
                    let n = Mor {
                        dom: vec![a.clone()],
                        cod: vec![b.clone()],
                        blocks: vec![vec![rows.row(r)]],
                    };
                    let right = base.tensor_mor(&n, &idx)?;
                    let left = base.tensor_mor(&idx, &n)?;
                    if !in_ideal(base, ideal, &right)? || !in_ideal(base, ideal, &left)? {
                        return Err(Error::IdealNotAbsorbing(format!(
                            "tensor at {}, {} with {}",
                            base.atom_label(a),
                            base.atom_label(b),
                            base.atom_label(x)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Least `n <= nmax` with the n-fold tensor power of `f` zero; `None`
/// is inconclusive, not a negative certificate.
pub fn tensor_nilpotent_bounded(c: &Cat, f: &Mor, nmax: u32) -> Result<Option<u32>> {
    if nmax == 0 {
        return Err(Error::InvalidArgument("power bound must be positive".into()));
    }
    let mut p = f.clone();
    for n in 1..=nmax {
        if c.is_zero_mor(&p)? {
            return Ok(Some(n));
        }
        if n < nmax {
            p = c.tensor_mor(&p, f)?;
        }
    }
    Ok(None)
}

/// The functor onto the split quotient: pass to the quotient, then
/// embed into the splitting.
pub struct ToSplit {
    through: QuotientProj,
    embed: SplitEmbed,
}

impl ToSplit {
    pub fn new(base: &Cat) -> Result<ToSplit> {
        let quot = null_quotient(base);
        let through = QuotientProj::new(base, &quot)?;
        let embed = SplitEmbed::new(&quot);
        Ok(ToSplit { through, embed })
    }

    /// The intermediate quotient, before idempotents are split.
    pub fn quotient(&self) -> &Cat {
        self.through.dst()
    }
}

impl AddFunctor for ToSplit {
    fn src(&self) -> &Cat {
        self.through.src()
    }

    fn dst(&self) -> &Cat {
        self.embed.dst()
    }

    fn label(&self) -> String {
        format!("onto {}", self.embed.dst().label())
    }

    fn atom_image(&self, a: &Atom) -> Result<Object> {
        self.embed.atom_image(a)
    }

    fn block_image(&self, a: &Atom, b: &Atom, coords: &[crate::exactalg::Elem]) -> Result<Mor> {
        self.embed.block_image(a, b, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::matrix_cat::{matrix_cat, mor_from_matrix, rank_object};
    use crate::catcore::rep::{rep_cat, Group, RepData};
    use crate::exactalg::{Elem, Ring};

    #[test]
    fn null_ideal_vanishes_for_matrix_categories() {
        for ring in [Ring::integers(), Ring::zmod(6).unwrap(), Ring::rationals()] {
            let c = matrix_cat(ring);
            let ideal = trace_null();
            let rows = ideal.rows(&c, &Atom::MatUnit, &Atom::MatUnit).unwrap();
            assert_eq!(rows.rows, 0);
        }
    }

    #[test]
    fn null_ideal_of_modular_regular_representation() {
        let g = Group::cyclic(2).unwrap();
        let f2 = Ring::zmod(2).unwrap();
        let reg = RepData::regular(g.clone(), &f2);
        let c = rep_cat(f2, g, vec![reg.clone()]).unwrap();
        let ideal = trace_null();
        let p = Atom::Rep(reg);
        let u = c.instance().unit_atom();
        // the regular object has even dimension: every trace dies on it
        let hp = c.atom_hom(&p, &p).unwrap();
        let rows = ideal.rows(&c, &p, &p).unwrap();
        assert_eq!(hp.gens, 2);
        assert_eq!(rows.rows, hp.gens);
        // the unit survives
        assert_eq!(ideal.rows(&c, &u, &u).unwrap().rows, 0);
        check_compose_absorbing(&c, ideal.as_ref()).unwrap();
        check_tensor_absorbing(&c, ideal.as_ref()).unwrap();
        // in the quotient, endomorphisms of the regular object vanish
        let q = null_quotient(&c);
        assert!(q.is_zero_mor(&q.id(&vec![p.clone()]).unwrap()).unwrap());
        assert!(!q.is_zero_mor(&q.id(&vec![u.clone()]).unwrap()).unwrap());
    }

    #[test]
    fn scalar_field_detection() {
        assert!(scalars_form_field(&matrix_cat(Ring::rationals())).unwrap());
        assert!(scalars_form_field(&matrix_cat(Ring::zmod(5).unwrap())).unwrap());
        assert!(!scalars_form_field(&matrix_cat(Ring::integers())).unwrap());
        assert!(!scalars_form_field(&matrix_cat(Ring::zmod(6).unwrap())).unwrap());
    }

    #[test]
    fn membership_separates_the_ideal() {
        let g = Group::cyclic(2).unwrap();
        let f2 = Ring::zmod(2).unwrap();
        let reg = RepData::regular(g.clone(), &f2);
        let c = rep_cat(f2.clone(), g, vec![reg.clone()]).unwrap();
        let ideal = trace_null();
        let p = Atom::Rep(reg);
        assert!(in_ideal(&c, ideal.as_ref(), &c.id(&vec![p]).unwrap()).unwrap());
        let u = c.unit();
        assert!(!in_ideal(&c, ideal.as_ref(), &c.id(&u).unwrap()).unwrap());
    }

    #[test]
    fn tensor_power_vanishing() {
        let f3 = Ring::zmod(3).unwrap();
        let dual = Ring::poly_quotient(f3.clone(), &[f3.zero(), f3.zero(), f3.one()]).unwrap();
        let c = matrix_cat(dual.clone());
        let e = dual.canon(Elem::Pol(vec![f3.zero(), f3.one()])).unwrap();
        let f = mor_from_matrix(&c, &Matrix::from_fn(dual, 1, 1, |_, _| e.clone())).unwrap();
        assert_eq!(tensor_nilpotent_bounded(&c, &f, 4).unwrap(), Some(2));
        let zero = c.zero_mor(&rank_object(1), &rank_object(1)).unwrap();
        assert_eq!(tensor_nilpotent_bounded(&c, &zero, 4).unwrap(), Some(1));
        let id = c.id(&rank_object(1)).unwrap();
        assert_eq!(tensor_nilpotent_bounded(&c, &id, 3).unwrap(), None);
        assert!(tensor_nilpotent_bounded(&c, &id, 0).is_err());
    }

    #[test]
    fn split_quotient_kills_the_regular_object() {
        let g = Group::cyclic(2).unwrap();
        let f2 = Ring::zmod(2).unwrap();
        let reg = RepData::regular(g.clone(), &f2);
        let c = rep_cat(f2, g, vec![reg.clone()]).unwrap();
        let s = split_quotient(&c);
        let f = ToSplit::new(&c).unwrap();
        assert_eq!(f.dst().label(), s.label());
        let p = f.atom_image(&Atom::Rep(reg)).unwrap();
        // the image of the regular object is a zero summand
        let idp = f.dst().id(&p).unwrap();
        assert!(f.dst().is_zero_mor(&idp).unwrap());
        let u = f.dst().unit();
        assert!(!f.dst().is_zero_mor(&f.dst().id(&u).unwrap()).unwrap());
    }
}
