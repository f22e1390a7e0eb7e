//! The free additive category on one tensor-invertible rank-one object
//! over a commutative ring: objects are finite ranks, morphisms are
//! matrices, tensor is multiplication of ranks.

use std::sync::Arc;

use super::{Atom, Cat, Mor, Object, TensorCat};
use crate::exactalg::{Elem, FpModule, Matrix, Ring};
use crate::{Error, Result};

pub struct MatrixCat {
    ring: Ring,
}

pub fn matrix_cat(ring: Ring) -> Cat {
    Cat::new(Arc::new(MatrixCat { ring }))
}

impl MatrixCat {
    fn check(&self, a: &Atom) -> Result<()> {
        match a {
            Atom::MatUnit => Ok(()),
            other => Err(Error::InvalidInstance(format!(
                "matrix category got foreign atom {other:?}"
            ))),
        }
    }
}

impl TensorCat for MatrixCat {
    fn ring(&self) -> Ring {
        self.ring.clone()
    }

    fn label(&self) -> String {
        format!("matrix({})", self.ring)
    }

    fn unit_atom(&self) -> Atom {
        Atom::MatUnit
    }

    fn base_atoms(&self) -> Vec<Atom> {
        vec![Atom::MatUnit]
    }

    fn atom_label(&self, _a: &Atom) -> String {
        "1".into()
    }

    fn validate_atom(&self, a: &Atom) -> Result<()> {
        self.check(a)
    }

    fn hom(&self, a: &Atom, b: &Atom) -> Result<FpModule> {
        self.check(a)?;
        self.check(b)?;
        Ok(FpModule::free(self.ring.clone(), 1))
    }

    fn id_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        self.check(a)?;
        Ok(vec![self.ring.one()])
    }

    fn compose_coords(
        &self,
        _a: &Atom,
        _b: &Atom,
        _c: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        Ok(vec![self.ring.mul(&f[0], &g[0])])
    }

    fn tensor_atom(&self, a: &Atom, b: &Atom) -> Result<Atom> {
        self.check(a)?;
        self.check(b)?;
        Ok(Atom::MatUnit)
    }

    fn tensor_coords(
        &self,
        _a1: &Atom,
        _b1: &Atom,
        _a2: &Atom,
        _b2: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        Ok(vec![self.ring.mul(&f[0], &g[0])])
    }

    fn symmetry_coords(&self, a: &Atom, b: &Atom) -> Result<Vec<Elem>> {
        self.check(a)?;
        self.check(b)?;
        Ok(vec![self.ring.one()])
    }

    fn dual_atom(&self, a: &Atom) -> Result<Atom> {
        self.check(a)?;
        Ok(Atom::MatUnit)
    }

    fn ev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        self.check(a)?;
        Ok(vec![self.ring.one()])
    }

    fn coev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        self.check(a)?;
        Ok(vec![self.ring.one()])
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }
}

/// Rank-`n` object.
pub fn rank_object(n: usize) -> Object {
    vec![Atom::MatUnit; n]
}

/// A matrix as a morphism between rank objects, rows indexing the domain.
pub fn mor_from_matrix(cat: &Cat, m: &Matrix) -> Result<Mor> {
    let dom = rank_object(m.rows);
    let cod = rank_object(m.cols);
    let mut f = cat.zero_mor(&dom, &cod)?;
    for i in 0..m.rows {
        for j in 0..m.cols {
            f.blocks[i][j] = vec![m.at(i, j).clone()];
        }
    }
    Ok(f)
}

pub fn matrix_from_mor(cat: &Cat, f: &Mor) -> Matrix {
    Matrix::from_fn(cat.ring(), f.dom.len(), f.cod.len(), |i, j| f.blocks[i][j][0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_matrix_product() {
        let r = Ring::zmod(6).unwrap();
        let cat = matrix_cat(r.clone());
        let a = Matrix::from_i64(r.clone(), 2, 3, &[1, 2, 3, 4, 5, 0]);
        let b = Matrix::from_i64(r.clone(), 3, 2, &[1, 0, 0, 1, 2, 2]);
        let fa = mor_from_matrix(&cat, &a).unwrap();
        let fb = mor_from_matrix(&cat, &b).unwrap();
        let fc = cat.compose(&fa, &fb).unwrap();
        assert_eq!(matrix_from_mor(&cat, &fc), a.mul(&b).unwrap());
    }

    #[test]
    fn trace_is_matrix_trace() {
        let r = Ring::zmod(6).unwrap();
        let cat = matrix_cat(r.clone());
        let a = Matrix::from_i64(r.clone(), 3, 3, &[1, 2, 3, 4, 5, 0, 1, 1, 2]);
        let f = mor_from_matrix(&cat, &a).unwrap();
        assert_eq!(cat.trace(&f).unwrap(), r.from_i64(1 + 5 + 2));
        let id = cat.id(&rank_object(4)).unwrap();
        assert_eq!(cat.trace(&id).unwrap(), r.from_i64(4));
    }

    #[test]
    fn dual_transposes() {
        let r = Ring::integers();
        let cat = matrix_cat(r.clone());
        let a = Matrix::from_i64(r.clone(), 2, 3, &[1, 2, 3, 4, 5, 6]);
        let f = mor_from_matrix(&cat, &a).unwrap();
        let fd = cat.dual_mor(&f).unwrap();
        assert_eq!(matrix_from_mor(&cat, &fd), a.transpose());
    }

    #[test]
    fn symmetry_squares_to_identity() {
        let r = Ring::integers();
        let cat = matrix_cat(r.clone());
        let x = rank_object(2);
        let y = rank_object(3);
        let s = cat.symmetry(&x, &y).unwrap();
        let s2 = cat.symmetry(&y, &x).unwrap();
        let round = cat.compose(&s, &s2).unwrap();
        let id = cat.id(&cat.tensor_ob(&x, &y).unwrap()).unwrap();
        assert!(cat.mor_eq(&round, &id).unwrap());
    }

    #[test]
    fn tensor_is_kronecker() {
        let r = Ring::integers();
        let cat = matrix_cat(r.clone());
        let a = Matrix::from_i64(r.clone(), 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(r.clone(), 1, 2, &[5, 6]);
        let t = cat
            .tensor_mor(
                &mor_from_matrix(&cat, &a).unwrap(),
                &mor_from_matrix(&cat, &b).unwrap(),
            )
            .unwrap();
        assert_eq!(matrix_from_mor(&cat, &t), a.kronecker(&b));
    }

    #[test]
    fn triangle_identities() {
        let r = Ring::integers();
        let cat = matrix_cat(r.clone());
        let x = rank_object(3);
        let idx = cat.id(&x).unwrap();
        let dx = cat.dual_ob(&x).unwrap();
        let iddx = cat.id(&dx).unwrap();
        // (1 (x) ev) o (coev (x) 1) = 1
        let left = cat
            .compose(
                &cat.tensor_mor(&cat.coev(&x).unwrap(), &idx).unwrap(),
                &cat.tensor_mor(&idx, &cat.ev(&x).unwrap()).unwrap(),
            )
            .unwrap();
        assert!(cat.mor_eq(&left, &idx).unwrap());
        // (ev (x) 1) o (1 (x) coev) = 1 on the dual
        let right = cat
            .compose(
                &cat.tensor_mor(&iddx, &cat.coev(&x).unwrap()).unwrap(),
                &cat.tensor_mor(&cat.ev(&x).unwrap(), &iddx).unwrap(),
            )
            .unwrap();
        assert!(cat.mor_eq(&right, &iddx).unwrap());
    }
}
